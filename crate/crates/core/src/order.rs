//! Drawing orders: degrees of freedom per vertex, construction by valence
//! peeling, and the dimension of the deformation space.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{reducing_pair, ConstrainedTriangulation};

/// A constraint that pins down a vertex, with its first two vertices under
/// the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relevant {
    pub constraint: usize,
    pub first_two: [usize; 2],
}

/// Corner-first vertex order with the freedom `alpha` of each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingOrder {
    /// Vertex indices, starting `p, q, s, r`.
    pub sequence: Vec<usize>,
    /// Indexed by vertex.
    pub alpha: Vec<u8>,
    /// Indexed by vertex; empty for corners.
    pub relevant: Vec<Vec<Relevant>>,
}

impl DrawingOrder {
    /// Sum of all alphas.
    pub fn dimension(&self) -> usize {
        self.alpha.iter().map(|&a| a as usize).sum()
    }

    pub fn sequence_names(&self, ct: &ConstrainedTriangulation) -> Vec<String> {
        self.sequence
            .iter()
            .map(|&v| ct.vertex_name(v).to_string())
            .collect()
    }
}

fn corner_prefix(ct: &ConstrainedTriangulation) -> [usize; 4] {
    let [p, q, r, s] = ct.corners();
    [p, q, s, r]
}

/// Compute alphas for an arbitrary corner-first order.
pub fn compute_alpha(ct: &ConstrainedTriangulation, sequence: &[usize]) -> Result<DrawingOrder> {
    let n = ct.num_vertices();
    let distinct: BTreeSet<usize> = sequence.iter().copied().collect();
    if sequence.len() != n || distinct.len() != n || distinct.iter().any(|&v| v >= n) {
        return Err(Error::SchemaError {
            path: "order".into(),
            msg: "sequence must list every vertex exactly once".into(),
        });
    }
    let prefix = corner_prefix(ct);
    if let Some(k) = (0..4).find(|&k| sequence[k] != prefix[k]) {
        return Err(Error::NotDrawingOrder(ct.vertex_name(sequence[k]).to_string()));
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in sequence.iter().enumerate() {
        pos[v] = i;
    }
    let mut alpha = vec![0u8; n];
    let mut relevant = vec![Vec::new(); n];
    for &c in &prefix[..3] {
        alpha[c] = 2;
    }
    for &v in &sequence[4..] {
        let mut rel = Vec::new();
        for (ci, c) in ct.constraints().iter().enumerate() {
            if !c.contains(v) {
                continue;
            }
            let mut earlier: Vec<usize> = c
                .vertices
                .iter()
                .copied()
                .filter(|&w| pos[w] <= pos[v])
                .collect();
            if earlier.len() >= 3 {
                earlier.sort_by_key(|&w| pos[w]);
                rel.push(Relevant {
                    constraint: ci,
                    first_two: [earlier[0], earlier[1]],
                });
            }
        }
        if rel.len() > 2 {
            return Err(Error::NotDrawingOrder(ct.vertex_name(v).to_string()));
        }
        alpha[v] = 2 - rel.len() as u8;
        relevant[v] = rel;
    }
    Ok(DrawingOrder {
        sequence: sequence.to_vec(),
        alpha,
        relevant,
    })
}

/// Compute alphas for an order given by vertex names.
pub fn compute_alpha_named(ct: &ConstrainedTriangulation, names: &[&str]) -> Result<DrawingOrder> {
    let seq = names
        .iter()
        .map(|n| ct.vertex_index(n).ok_or_else(|| Error::UnknownVertex(n.to_string())))
        .collect::<Result<Vec<_>>>()?;
    compute_alpha(ct, &seq)
}

/// Peel interior vertices of valence below 6 from the 1-skeleton until
/// none remain. Returns the sets `R_1, R_2, ...`, each sorted by name.
pub fn peeling_sets(ct: &ConstrainedTriangulation) -> Result<Vec<Vec<usize>>> {
    let mut nbrs = ct.neighbors();
    let mut remaining: BTreeSet<usize> = ct.interior_vertices().into_iter().collect();
    let mut sets = Vec::new();
    while !remaining.is_empty() {
        let mut r: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&v| nbrs[v].len() < 6)
            .collect();
        if r.is_empty() {
            return Err(Error::PeelingStuck);
        }
        r.sort_by(|&a, &b| ct.vertex_name(a).cmp(ct.vertex_name(b)));
        for &v in &r {
            remaining.remove(&v);
            for w in std::mem::take(&mut nbrs[v]) {
                nbrs[w].remove(&v);
            }
        }
        sets.push(r);
    }
    Ok(sets)
}

/// Drawing order from valence peeling: corners, then later-peeled sets
/// before earlier ones.
pub fn find_drawing_order(ct: &ConstrainedTriangulation) -> Result<DrawingOrder> {
    if let Some((i, j)) = reducing_pair(ct) {
        let ids = ct.constraint_ids();
        return Err(Error::Reducible(ids[i].join(","), ids[j].join(",")));
    }
    let sets = peeling_sets(ct)?;
    let mut seq: Vec<usize> = corner_prefix(ct).to_vec();
    for r in sets.iter().rev() {
        seq.extend(r);
    }
    compute_alpha(ct, &seq)
}

/// Dimension of the deformation space: the sum of alphas of a drawing order.
pub fn deformation_dimension(ct: &ConstrainedTriangulation) -> Result<usize> {
    Ok(find_drawing_order(ct)?.dimension())
}

/// Six for the corners, two per other vertex, minus one per constraint
/// vertex beyond the second. Agrees with [`deformation_dimension`] when no
/// constraint contains three corners.
pub fn heuristic_dimension(ct: &ConstrainedTriangulation) -> i64 {
    let interior = ct.num_vertices() as i64 - 4;
    let excess: i64 = ct
        .constraints()
        .iter()
        .map(|c| c.vertices.len() as i64 - 2)
        .sum();
    6 + 2 * interior - excess
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alpha_of(ct: &ConstrainedTriangulation, o: &DrawingOrder, v: &str) -> u8 {
        o.alpha[ct.vertex_index(v).unwrap()]
    }

    #[test]
    fn ace_alphas_both_orders() {
        let ct = corpus::ace();
        let uv = compute_alpha_named(&ct, &["p", "q", "s", "r", "u", "v"]).unwrap();
        assert_eq!((alpha_of(&ct, &uv, "u"), alpha_of(&ct, &uv, "v")), (1, 0));
        let vu = compute_alpha_named(&ct, &["p", "q", "s", "r", "v", "u"]).unwrap();
        assert_eq!((alpha_of(&ct, &vu, "v"), alpha_of(&ct, &vu, "u")), (1, 0));
        let v = ct.vertex_index("v").unwrap();
        let rel: Vec<Vec<String>> = vu.relevant[v]
            .iter()
            .map(|r| ct.constraint_vertex_names(r.constraint))
            .collect();
        assert_eq!(rel, [["r", "s", "v"]]);
        let u = ct.vertex_index("u").unwrap();
        let mut rel: Vec<Vec<String>> = vu.relevant[u]
            .iter()
            .map(|r| ct.constraint_vertex_names(r.constraint))
            .collect();
        rel.sort();
        assert_eq!(rel, [["p", "s", "u"], ["q", "u", "v"]]);
    }

    #[test]
    fn first_two_follow_the_order() {
        let ct = corpus::ace();
        let o = compute_alpha_named(&ct, &["p", "q", "s", "r", "u", "v"]).unwrap();
        let u = ct.vertex_index("u").unwrap();
        let names = |r: &Relevant| r.first_two.map(|w| ct.vertex_name(w).to_string());
        assert_eq!(o.relevant[u].len(), 1);
        assert_eq!(names(&o.relevant[u][0]), ["p", "s"]);
        let v = ct.vertex_index("v").unwrap();
        let mut pairs: Vec<[String; 2]> = o.relevant[v].iter().map(names).collect();
        pairs.sort();
        assert_eq!(pairs, [["q", "u"], ["s", "r"]].map(|p| p.map(String::from)));
    }

    #[test]
    fn corner_rule_and_negative_alpha() {
        let ct = corpus::diag2();
        let bad = compute_alpha_named(&ct, &["p", "q", "r", "s", "u", "v"]);
        assert!(matches!(bad, Err(Error::NotDrawingOrder(v)) if v == "r"));
        let owned = |c: &[&str]| c.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let ct = ct
            .with_constraints(&[owned(&["A"]), owned(&["B"]), owned(&["D"])])
            .unwrap();
        let o = compute_alpha_named(&ct, &["p", "q", "s", "r", "v", "u"]);
        assert!(matches!(o, Err(Error::NotDrawingOrder(v)) if v == "u"));
    }

    #[test]
    fn peeling_examples() {
        let d1 = corpus::diag1();
        let o = find_drawing_order(&d1).unwrap();
        assert_eq!(o.sequence_names(&d1), ["p", "q", "s", "r", "u"]);
        assert_eq!(alpha_of(&d1, &o, "u"), 2);
        let d2 = corpus::diag2();
        assert_eq!(peeling_sets(&d2).unwrap().len(), 1);
        let o = find_drawing_order(&d2).unwrap();
        assert_eq!(o.sequence_names(&d2), ["p", "q", "s", "r", "u", "v"]);
        let ace = corpus::ace();
        let o = find_drawing_order(&ace).unwrap();
        assert_eq!(o.sequence_names(&ace), ["p", "q", "s", "r", "u", "v"]);
        assert_eq!((alpha_of(&ace, &o, "u"), alpha_of(&ace, &o, "v")), (1, 0));
        assert!(matches!(
            find_drawing_order(&corpus::be_split()),
            Err(Error::Reducible(..))
        ));
    }

    #[test]
    fn dimensions() {
        assert_eq!(deformation_dimension(&corpus::diag1()).unwrap(), 8);
        assert_eq!(deformation_dimension(&corpus::diag2()).unwrap(), 10);
        assert_eq!(deformation_dimension(&corpus::ace()).unwrap(), 7);
        assert_eq!(deformation_dimension(&corpus::nonpositive()).unwrap(), 10);
        for name in ["diag1", "diag2", "diag3", "ace", "be-merged", "nonpositive"] {
            let ct = corpus::get(name).unwrap();
            assert_eq!(
                deformation_dimension(&ct).unwrap() as i64,
                heuristic_dimension(&ct),
                "{name}"
            );
        }
    }

    /// Random corner-first orders that are drawing orders.
    fn random_orders(ct: &ConstrainedTriangulation, seed: u64, want: usize) -> Vec<DrawingOrder> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        let mut interior = ct.interior_vertices();
        for _ in 0..200 {
            if out.len() == want {
                break;
            }
            interior.shuffle(&mut rng);
            let mut seq = corner_prefix(ct).to_vec();
            seq.extend(&interior);
            if let Ok(o) = compute_alpha(ct, &seq) {
                out.push(o);
            }
        }
        out
    }

    #[test]
    fn dimension_is_order_independent() {
        for name in corpus::names() {
            let ct = corpus::get(name).unwrap();
            let Ok(d) = deformation_dimension(&ct) else { continue };
            let orders = random_orders(&ct, 7, 5);
            assert!(!orders.is_empty(), "{name}");
            for o in orders {
                assert_eq!(o.dimension(), d, "{name}");
            }
        }
    }

    #[test]
    fn honest_orders_are_all_free() {
        let ct = corpus::diagonal(4);
        for o in random_orders(&ct, 3, 10) {
            for v in ct.interior_vertices() {
                assert_eq!(o.alpha[v], 2);
            }
        }
        assert_eq!(random_orders(&ct, 3, 10).len(), 10);
    }

    #[test]
    fn peeling_never_stuck_on_random_triangulations() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for k in 0..200 {
            let ct = corpus::random_triangulation(&mut rng, 1 + k % 25, 3 * (k % 25));
            assert!(crate::model::validate_ct(&ct).ok);
            let sets = peeling_sets(&ct).unwrap();
            assert!(!sets.is_empty());
            assert!(find_drawing_order(&ct).is_ok());
        }
    }
}
