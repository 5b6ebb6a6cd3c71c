//! Rational parameterization of the drawings of a constrained
//! triangulation, area functions, and classification of drawings.

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{triangle_area, triangle_area_rf, vars, MultiPoly, QPoint, RationalFunction, Vars};
use crate::error::{Error, Result};
use crate::model::ConstrainedTriangulation;
use crate::order::{find_drawing_order, DrawingOrder};

pub type RfPoint = (RationalFunction, RationalFunction);

/// Coordinates of every vertex as rational functions of the parameters.
#[derive(Clone, Debug)]
pub struct Parameterization {
    pub params: Vars,
    /// Indexed by vertex.
    pub coords: Vec<RfPoint>,
    pub fixed_corners: bool,
    pub order: DrawingOrder,
    /// Parameter indices introduced by each vertex, indexed by vertex.
    pub blocks: Vec<Vec<usize>>,
}

impl Parameterization {
    /// Distinct non-constant denominators of the coordinates.
    pub fn denominators(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = Vec::new();
        for (x, y) in &self.coords {
            for d in [x.denominator(), y.denominator()] {
                if !d.is_constant() && !out.contains(d) {
                    out.push(d.clone());
                }
            }
        }
        out
    }
}

/// Conditions a drawing satisfies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DrawingFlags {
    pub is_drawing: bool,
    pub is_generic: bool,
    pub is_life_preserving: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    /// Indexed by vertex.
    pub points: Vec<QPoint>,
    /// Parameter values that produced the drawing.
    pub params: Vec<BigRational>,
    pub flags: DrawingFlags,
}

/// Living triangle ids with their area functions.
#[derive(Clone, Debug)]
pub struct AreaSystem {
    pub ids: Vec<String>,
    pub w: Vec<RationalFunction>,
    pub sigma: RationalFunction,
}

fn rf_const(v: &Vars, n: i64) -> RationalFunction {
    RationalFunction::constant(v, BigRational::from_integer(n.into()))
}

fn rf_var(v: &Vars, i: usize) -> RationalFunction {
    RationalFunction::from_poly(MultiPoly::var(v, i))
}

fn cross_rf(a: &RfPoint, b: &RfPoint) -> RationalFunction {
    &(&a.0 * &b.1) - &(&a.1 * &b.0)
}

fn sub_rf(a: &RfPoint, b: &RfPoint) -> RfPoint {
    (&a.0 - &b.0, &a.1 - &b.1)
}

/// Build the parameterization attached to a drawing order. Free corners
/// use parameters `xp, yp, xq, yq, xs, ys`; other vertices use `w1, w2, ...`
/// in order.
pub fn build_parameterization(
    ct: &ConstrainedTriangulation,
    order: &DrawingOrder,
    fixed_corners: bool,
) -> Result<Parameterization> {
    let [p, q, r, s] = ct.corners();
    let mut names: Vec<String> = Vec::new();
    let mut blocks = vec![Vec::new(); ct.num_vertices()];
    if !fixed_corners {
        for c in [p, q, s] {
            let n = ct.vertex_name(c);
            blocks[c] = vec![names.len(), names.len() + 1];
            names.push(format!("x{n}"));
            names.push(format!("y{n}"));
        }
    }
    let mut k = 0;
    for &v in &order.sequence[4..] {
        for _ in 0..order.alpha[v] {
            k += 1;
            blocks[v].push(names.len());
            names.push(format!("w{k}"));
        }
    }
    let pv = vars(&names);
    let mut coords: Vec<Option<RfPoint>> = vec![None; ct.num_vertices()];
    if fixed_corners {
        coords[p] = Some((rf_const(&pv, 0), rf_const(&pv, 0)));
        coords[q] = Some((rf_const(&pv, 1), rf_const(&pv, 0)));
        coords[r] = Some((rf_const(&pv, 1), rf_const(&pv, 1)));
        coords[s] = Some((rf_const(&pv, 0), rf_const(&pv, 1)));
    } else {
        for c in [p, q, s] {
            coords[c] = Some((rf_var(&pv, blocks[c][0]), rf_var(&pv, blocks[c][1])));
        }
        let (gp, gq, gs) = (coords[p].clone().unwrap(), coords[q].clone().unwrap(), coords[s].clone().unwrap());
        coords[r] = Some((&(&gq.0 + &gs.0) - &gp.0, &(&gq.1 + &gs.1) - &gp.1));
    }
    for &v in &order.sequence[4..] {
        let rel = &order.relevant[v];
        let g = |w: usize| coords[w].clone().expect("earlier vertex placed");
        let point = match rel.len() {
            0 => (rf_var(&pv, blocks[v][0]), rf_var(&pv, blocks[v][1])),
            1 => {
                let [y, z] = rel[0].first_two;
                let (gy, gz) = (g(y), g(z));
                let x = rf_var(&pv, blocks[v][0]);
                let one_minus = &rf_const(&pv, 1) - &x;
                (&(&x * &gy.0) + &(&one_minus * &gz.0), &(&x * &gy.1) + &(&one_minus * &gz.1))
            }
            _ => {
                let [a1, b1] = rel[0].first_two;
                let [a2, b2] = rel[1].first_two;
                let (a1, b1, a2, b2) = (g(a1), g(b1), g(a2), g(b2));
                let d1 = sub_rf(&b1, &a1);
                let d2 = sub_rf(&b2, &a2);
                let den = cross_rf(&d1, &d2);
                if den.is_zero() {
                    return Err(Error::IdenticallyParallel(ct.vertex_name(v).to_string()));
                }
                let t = &cross_rf(&sub_rf(&a2, &a1), &d2) / &den;
                (&a1.0 + &(&t * &d1.0), &a1.1 + &(&t * &d1.1))
            }
        };
        coords[v] = Some(point);
    }
    Ok(Parameterization {
        params: pv,
        coords: coords.into_iter().map(Option::unwrap).collect(),
        fixed_corners,
        order: order.clone(),
        blocks,
    })
}

/// Area functions of the living triangles.
pub fn area_system(ct: &ConstrainedTriangulation, par: &Parameterization) -> AreaSystem {
    let mut ids = Vec::new();
    let mut w = Vec::new();
    let mut sigma = rf_const(&par.params, 0);
    for t in ct.living() {
        let tri = &ct.triangles()[t];
        let [a, b, c] = tri.verts.map(|v| &par.coords[v]);
        let area = triangle_area_rf(a, b, c);
        sigma = &sigma + &area;
        ids.push(tri.id.clone());
        w.push(area);
    }
    AreaSystem { ids, w, sigma }
}

/// Evaluate the parameterization at rational parameter values.
pub fn evaluate_drawing(
    ct: &ConstrainedTriangulation,
    par: &Parameterization,
    values: &[BigRational],
) -> Result<Drawing> {
    assert_eq!(values.len(), par.params.len(), "one value per parameter");
    let mut points = vec![(BigRational::zero(), BigRational::zero()); ct.num_vertices()];
    for &v in &par.order.sequence {
        let (x, y) = &par.coords[v];
        match (x.eval(values), y.eval(values)) {
            (Some(a), Some(b)) => points[v] = (a, b),
            _ => return Err(Error::DenominatorVanishes(ct.vertex_name(v).to_string())),
        }
    }
    let flags = check_drawing(ct, &points);
    Ok(Drawing {
        points,
        params: values.to_vec(),
        flags,
    })
}

fn collinear(a: &QPoint, b: &QPoint, c: &QPoint) -> bool {
    triangle_area(a, b, c).is_zero()
}

/// Two distinct points of a constraint, if its image is not a single point.
fn spanning_pair<'a>(pts: &[&'a QPoint]) -> Option<(&'a QPoint, &'a QPoint)> {
    let a = pts[0];
    pts.iter().find(|b| **b != a).map(|b| (a, *b))
}

/// Classify a map from vertices to the plane.
pub fn check_drawing(ct: &ConstrainedTriangulation, points: &[QPoint]) -> DrawingFlags {
    let cons: Vec<Vec<&QPoint>> = ct
        .constraints()
        .iter()
        .map(|c| c.vertices.iter().map(|&v| &points[v]).collect())
        .collect();
    // (1) constraints collinear
    let c1 = cons.iter().all(|pts| match spanning_pair(pts) {
        None => true,
        Some((a, b)) => pts.iter().all(|c| collinear(a, b, c)),
    });
    // (2) parallelogram
    let [p, q, r, s] = ct.corners().map(|c| &points[c]);
    let c2 = &p.0 + &r.0 == &q.0 + &s.0 && &p.1 + &r.1 == &q.1 + &s.1;
    // (3) non-degenerate parallelogram
    let c3 = !collinear(p, q, s);
    // (4) living triangles non-degenerate
    let c4 = ct.living().iter().all(|&t| {
        let [a, b, c] = ct.triangles()[t].verts.map(|v| &points[v]);
        !collinear(a, b, c)
    });
    let is_drawing = c1 && c2;
    let is_life_preserving = is_drawing && c3 && c4;
    // (5) injective
    let mut sorted: Vec<&QPoint> = points.iter().collect();
    sorted.sort();
    let c5 = sorted.windows(2).all(|w| w[0] != w[1]);
    // (6) intersecting constraints on distinct lines
    let cs = ct.constraints();
    let c6 = c5
        && (0..cs.len()).all(|i| {
            (i + 1..cs.len()).all(|j| {
                if !cs[i].vertices.iter().any(|&v| cs[j].contains(v)) {
                    return true;
                }
                match spanning_pair(&cons[i]) {
                    None => false,
                    Some((a, b)) => cons[j].iter().any(|c| !collinear(a, b, c)),
                }
            })
        });
    DrawingFlags {
        is_drawing,
        is_generic: is_life_preserving && c5 && c6,
        is_life_preserving,
    }
}

/// Number of sampling attempts before giving up.
pub const SAMPLE_ATTEMPTS: usize = 1000;

/// First generic drawing found by sampling parameters from a rational grid,
/// using the peeling drawing order and fixed corners.
pub fn sample_generic_drawing(ct: &ConstrainedTriangulation, seed: u64) -> Result<Drawing> {
    let order = find_drawing_order(ct)?;
    let par = build_parameterization(ct, &order, true)?;
    sample_with(ct, &par, seed)
}

/// Sample grid values `n / 2^k` with `|n| <= bound`, `k <= 4`.
fn grid_value<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    let n = rng.gen_range(-bound..=bound);
    let k = rng.gen_range(0..=4u32);
    BigRational::new(n.into(), (1i64 << k).into())
}

/// First generic drawing of a given parameterization found by sampling.
pub fn sample_with(ct: &ConstrainedTriangulation, par: &Parameterization, seed: u64) -> Result<Drawing> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound = 8i64;
    for attempt in 0..SAMPLE_ATTEMPTS {
        if attempt > 0 && attempt % 100 == 0 {
            bound *= 2;
        }
        let values: Vec<BigRational> = (0..par.params.len()).map(|_| grid_value(&mut rng, bound)).collect();
        if let Ok(d) = evaluate_drawing(ct, par, &values) {
            if d.flags.is_generic {
                return Ok(d);
            }
        }
    }
    Err(Error::DrawabilityUndecided(SAMPLE_ATTEMPTS))
}

/// Parameter values whose image is the given drawing.
pub fn recover_parameters(par: &Parameterization, points: &[QPoint]) -> Option<Vec<BigRational>> {
    let mut values = vec![BigRational::zero(); par.params.len()];
    if !par.fixed_corners {
        for (v, block) in par.blocks.iter().enumerate().take(points.len()) {
            if par.order.sequence[..4].contains(&v) && block.len() == 2 {
                values[block[0]] = points[v].0.clone();
                values[block[1]] = points[v].1.clone();
            }
        }
    }
    for &v in &par.order.sequence[4..] {
        let block = &par.blocks[v];
        match block.len() {
            2 => {
                values[block[0]] = points[v].0.clone();
                values[block[1]] = points[v].1.clone();
            }
            1 => {
                let [y, z] = par.order.relevant[v][0].first_two;
                let (py, pz, pv) = (&points[y], &points[z], &points[v]);
                let w = if py.0 != pz.0 {
                    (&pv.0 - &pz.0) / (&py.0 - &pz.0)
                } else if py.1 != pz.1 {
                    (&pv.1 - &pz.1) / (&py.1 - &pz.1)
                } else {
                    return None;
                };
                values[block[0]] = w;
            }
            _ => {}
        }
    }
    Some(values)
}

/// Signed areas of the living triangles of a drawing.
pub fn drawing_areas(ct: &ConstrainedTriangulation, points: &[QPoint]) -> Vec<BigRational> {
    ct.living()
        .iter()
        .map(|&t| {
            let [a, b, c] = ct.triangles()[t].verts.map(|v| &points[v]);
            triangle_area(a, b, c)
        })
        .collect()
}

/// Whether every living triangle has positive area.
pub fn all_positive(areas: &[BigRational]) -> bool {
    areas.iter().all(|a| *a > BigRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::order::compute_alpha_named;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rf(par: &Parameterization, s: &str) -> RationalFunction {
        let (n, d) = s.split_once(" / ").unwrap_or((s, "1"));
        RationalFunction::new(
            MultiPoly::parse(n, &par.params).unwrap(),
            MultiPoly::parse(d, &par.params).unwrap(),
        )
    }

    fn ace_par() -> (ConstrainedTriangulation, Parameterization) {
        let ct = corpus::ace();
        let o = compute_alpha_named(&ct, &["p", "q", "s", "r", "u", "v"]).unwrap();
        let par = build_parameterization(&ct, &o, true).unwrap();
        (ct, par)
    }

    #[test]
    fn ace_coordinates_and_areas() {
        let (ct, par) = ace_par();
        assert_eq!(&*par.params, ["w1"]);
        let u = ct.vertex_index("u").unwrap();
        let v = ct.vertex_index("v").unwrap();
        assert_eq!(par.coords[u], (rf(&par, "0"), rf(&par, "1 - w1")));
        assert_eq!(par.coords[v], (rf(&par, "w1 / w1 - 1"), rf(&par, "1")));
        let a = area_system(&ct, &par);
        assert_eq!(a.ids, ["A", "C", "E"]);
        assert_eq!(a.w[0], rf(&par, "1/2 - 1/2*w1"));
        assert_eq!(a.w[1], rf(&par, "1 / 2 - 2*w1"));
        assert_eq!(a.w[2], rf(&par, "w1^2 / 2*w1 - 2"));
        assert_eq!(a.sigma, rf(&par, "1"));
        assert_eq!(par.denominators().len(), 1);
    }

    #[test]
    fn ace_evaluation() {
        let (ct, par) = ace_par();
        let d = evaluate_drawing(&ct, &par, &[q(1, 2)]).unwrap();
        let u = ct.vertex_index("u").unwrap();
        let v = ct.vertex_index("v").unwrap();
        assert_eq!(d.points[u], (q(0, 1), q(1, 2)));
        assert_eq!(d.points[v], (q(-1, 1), q(1, 1)));
        assert_eq!(drawing_areas(&ct, &d.points), [q(1, 4), q(1, 1), q(-1, 4)]);
        assert!(matches!(
            evaluate_drawing(&ct, &par, &[q(1, 1)]),
            Err(Error::DenominatorVanishes(v)) if v == "v"
        ));
    }

    #[test]
    fn diag_area_functions() {
        let ct = corpus::diag1();
        let par = build_parameterization(&ct, &find_drawing_order(&ct).unwrap(), true).unwrap();
        assert_eq!(&*par.params, ["w1", "w2"]);
        let a = area_system(&ct, &par);
        let want = ["1/2*w2", "-1/2*w1 + 1/2", "-1/2*w2 + 1/2", "1/2*w1"];
        for (w, s) in a.w.iter().zip(want) {
            assert_eq!(w, &rf(&par, s));
        }
        let d = evaluate_drawing(&ct, &par, &[q(1, 3), q(1, 2)]).unwrap();
        assert!(d.flags.is_generic);

        let ct = corpus::diag2();
        let par = build_parameterization(&ct, &find_drawing_order(&ct).unwrap(), true).unwrap();
        let a = area_system(&ct, &par);
        // u = (w1, w2), v = (w3, w4)
        let two_b = &a.w[1] * &rf(&par, "2");
        assert_eq!(two_b, rf(&par, "w3*w2 - w1*w4 - w2 + w4"));
    }

    #[test]
    fn free_corners_parallelogram_and_homogeneity() {
        for name in corpus::names() {
            let ct = corpus::get(name).unwrap();
            let Ok(o) = find_drawing_order(&ct) else { continue };
            let Ok(par) = build_parameterization(&ct, &o, false) else { continue };
            let [p, q, r, s] = ct.corners().map(|c| &par.coords[c]);
            assert!((&(&p.0 + &r.0) - &(&q.0 + &s.0)).is_zero());
            assert!((&(&p.1 + &r.1) - &(&q.1 + &s.1)).is_zero());
        }
        let ct = corpus::diag2();
        let par = build_parameterization(&ct, &find_drawing_order(&ct).unwrap(), false).unwrap();
        let a = area_system(&ct, &par);
        let mut names: Vec<String> = par.params.to_vec();
        names.push("lambda".into());
        let big = vars(&names);
        let lambda = MultiPoly::named(&big, "lambda");
        let images: Vec<MultiPoly> = (0..par.params.len())
            .map(|i| &lambda * &MultiPoly::var(&big, i))
            .collect();
        for z in &a.w {
            let z = z.as_poly().unwrap();
            assert!(z.is_homogeneous() && z.degree() == 2);
            let lifted = z.with_vars(&big).unwrap();
            assert_eq!(z.compose(&images), &lambda.pow(2) * &lifted);
        }
    }

    #[test]
    fn identities_hold_symbolically() {
        for name in corpus::names() {
            let ct = corpus::get(name).unwrap();
            let Ok(o) = find_drawing_order(&ct) else { continue };
            for fixed in [true, false] {
                let Ok(par) = build_parameterization(&ct, &o, fixed) else { continue };
                for (ci, c) in ct.constraints().iter().enumerate() {
                    let corners = c.vertices.iter().filter(|&&v| ct.is_corner(v)).count();
                    if corners >= 3 {
                        continue;
                    }
                    let pts: Vec<&RfPoint> = c.vertices.iter().map(|&v| &par.coords[v]).collect();
                    for k in 2..pts.len() {
                        let det = triangle_area_rf(pts[0], pts[1], pts[k]);
                        assert!(det.is_zero(), "{name} constraint {ci}");
                    }
                }
                let pinned = ct
                    .constraints()
                    .iter()
                    .any(|c| c.vertices.iter().filter(|&&v| ct.is_corner(v)).count() >= 3);
                if fixed && !pinned {
                    assert_eq!(area_system(&ct, &par).sigma, rf_const(&par.params, 1), "{name}");
                }
            }
        }
    }

    #[test]
    fn check_drawing_examples() {
        let ct = corpus::diag1();
        let zero = vec![(q(0, 1), q(0, 1)); 5];
        let f = check_drawing(&ct, &zero);
        assert!(f.is_drawing && !f.is_generic);
        let mut pts = vec![(q(0, 1), q(0, 1)), (q(1, 1), q(0, 1)), (q(1, 1), q(1, 1)), (q(0, 1), q(1, 1))];
        pts.push((q(1, 2), q(0, 1)));
        let f = check_drawing(&ct, &pts);
        assert!(f.is_drawing && !f.is_life_preserving);
        let ct = corpus::diag2();
        let f = check_drawing(&ct, &corpus::diag2_points());
        assert!(f.is_generic);
    }

    #[test]
    fn sampling() {
        let ct = corpus::diag1();
        assert!(sample_generic_drawing(&ct, 0).unwrap().flags.is_generic);
        let ace = corpus::ace();
        let d = sample_generic_drawing(&ace, 42).unwrap();
        let areas = drawing_areas(&ace, &d.points);
        assert!(!all_positive(&areas));
        // E is negative exactly when w1 < 1, and C otherwise
        for seed in 0..20 {
            let d = sample_generic_drawing(&ace, seed).unwrap();
            let areas = drawing_areas(&ace, &d.points);
            assert_eq!(areas[2] < BigRational::zero(), d.params[0] < q(1, 1));
            assert_eq!(areas[1] < BigRational::zero(), d.params[0] > q(1, 1));
        }
        assert_eq!(sample_generic_drawing(&ace, 42).unwrap(), d);
        assert!(matches!(
            sample_generic_drawing(&corpus::trianglicide(), 1),
            Err(Error::DrawabilityUndecided(_))
        ));
    }

    #[test]
    fn round_trip_and_injectivity() {
        for name in ["diag1", "diag2", "diag3", "ace", "be-merged", "nonpositive"] {
            let ct = corpus::get(name).unwrap();
            let o = find_drawing_order(&ct).unwrap();
            for fixed in [true, false] {
                let par = build_parameterization(&ct, &o, fixed).unwrap();
                let mut seen: Vec<Drawing> = Vec::new();
                for seed in 0..10 {
                    let d = sample_with(&ct, &par, seed).unwrap();
                    let back = recover_parameters(&par, &d.points).unwrap();
                    assert_eq!(back, d.params, "{name}");
                    assert_eq!(evaluate_drawing(&ct, &par, &back).unwrap().points, d.points);
                    for e in &seen {
                        if e.params != d.params {
                            assert_ne!(e.points, d.points, "{name}");
                        }
                    }
                    seen.push(d);
                }
            }
        }
    }

    #[test]
    fn affine_maps_scale_areas() {
        let ct = corpus::diag2();
        let d = sample_generic_drawing(&ct, 5).unwrap();
        let (a, b, c, e) = (q(2, 1), q(-1, 3), q(5, 7), q(1, 2));
        let delta = &a * &e - &b * &c;
        let moved: Vec<QPoint> = d
            .points
            .iter()
            .map(|(x, y)| (&a * x + &b * y + q(3, 1), &c * x + &e * y - q(1, 5)))
            .collect();
        let before = drawing_areas(&ct, &d.points);
        let after = drawing_areas(&ct, &moved);
        for (x, y) in before.iter().zip(&after) {
            assert_eq!(&(x * &delta), y);
        }
    }
}
