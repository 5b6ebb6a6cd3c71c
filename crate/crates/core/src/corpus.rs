//! Built-in example triangulations and dissections.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::Rng;

use crate::algebra::QPoint;
use crate::error::{Error, Result};
use crate::model::{ConstrainedTriangulation, GeneralizedDissection, OrientedTriangle};

const CORNERS: [&str; 4] = ["p", "q", "r", "s"];

/// Names accepted by [`get`].
pub fn names() -> &'static [&'static str] {
    &[
        "diag1",
        "diag2",
        "diag3",
        "ace",
        "be-merged",
        "be-split",
        "trianglicide",
        "nonpositive",
        "3int",
    ]
}

pub fn get(name: &str) -> Result<ConstrainedTriangulation> {
    Ok(match name {
        "diag1" => diag1(),
        "diag2" => diag2(),
        "diag3" => diagonal(3),
        "ace" => ace(),
        "be-merged" => be_merged(),
        "be-split" => be_split(),
        "trianglicide" => trianglicide(),
        "nonpositive" => nonpositive(),
        "3int" => three_int(),
        _ => return Err(Error::UnknownCorpusEntry(name.to_string())),
    })
}

/// Square cut into four triangles through one interior vertex.
pub fn diag1() -> ConstrainedTriangulation {
    ConstrainedTriangulation::build(
        "diag1",
        &["p", "q", "r", "s", "u"],
        CORNERS,
        &[
            ("A", ["p", "q", "u"]),
            ("B", ["q", "r", "u"]),
            ("C", ["r", "s", "u"]),
            ("D", ["s", "p", "u"]),
        ],
        &[],
    )
    .unwrap()
}

/// Six triangles with two interior vertices `u, v`.
pub fn diag2() -> ConstrainedTriangulation {
    ConstrainedTriangulation::build(
        "diag2",
        &["p", "q", "r", "s", "u", "v"],
        CORNERS,
        &[
            ("A", ["p", "q", "u"]),
            ("B", ["q", "v", "u"]),
            ("C", ["q", "r", "v"]),
            ("D", ["s", "p", "u"]),
            ("E", ["s", "u", "v"]),
            ("F", ["r", "s", "v"]),
        ],
        &[],
    )
    .unwrap()
}

/// Honest triangulation with interior vertices `u1..un` on a path from
/// near `p` to near `r`, every one adjacent to both `q` and `s`.
pub fn diagonal(n: usize) -> ConstrainedTriangulation {
    assert!(n >= 1);
    let mut vertices: Vec<String> = CORNERS.iter().map(|s| s.to_string()).collect();
    let u = |j: usize| format!("u{j}");
    vertices.extend((1..=n).map(u));
    let mut tris = vec![OrientedTriangle::new("A1", ["p", "q", &u(1)])];
    for j in 2..=n {
        tris.push(OrientedTriangle::new(&format!("A{j}"), ["q", &u(j), &u(j - 1)]));
    }
    tris.push(OrientedTriangle::new(&format!("A{}", n + 1), ["q", "r", &u(n)]));
    tris.push(OrientedTriangle::new("B1", ["s", "p", &u(1)]));
    for j in 2..=n {
        tris.push(OrientedTriangle::new(&format!("B{j}"), ["s", &u(j - 1), &u(j)]));
    }
    tris.push(OrientedTriangle::new(&format!("B{}", n + 1), ["r", "s", &u(n)]));
    let corners = CORNERS.map(str::to_string);
    ConstrainedTriangulation::new(&format!("diag{n}"), &vertices, &corners, &tris, &[]).unwrap()
}

fn diag2_with(name: &str, constraints: &[&[&str]]) -> ConstrainedTriangulation {
    let owned: Vec<Vec<String>> = constraints
        .iter()
        .map(|c| c.iter().map(|s| s.to_string()).collect())
        .collect();
    let mut ct = diag2().with_constraints(&owned).unwrap();
    ct.set_name(name);
    ct
}

/// `diag2` with `B`, `D` and `F` each made dead on its own.
pub fn ace() -> ConstrainedTriangulation {
    diag2_with("ace", &[&["B"], &["D"], &["F"]])
}

/// `diag2` with the quadrilateral `B ∪ E` collapsed onto one segment.
pub fn be_merged() -> ConstrainedTriangulation {
    diag2_with("be-merged", &[&["B", "E"]])
}

/// `diag2` with `B` and `E` as separate constraints sharing edge `uv`.
pub fn be_split() -> ConstrainedTriangulation {
    diag2_with("be-split", &[&["B"], &["E"]])
}

/// `diag2` with every triangle in one constraint.
pub fn trianglicide() -> ConstrainedTriangulation {
    diag2_with("trianglicide", &[&["A", "B", "C", "D", "E", "F"]])
}

/// Midpoint `m1..m4` on each side, the four side slivers dead, and the
/// remaining hexagon-like region cut into six living triangles.
pub fn nonpositive() -> ConstrainedTriangulation {
    ConstrainedTriangulation::build(
        "nonpositive",
        &["p", "q", "r", "s", "m1", "m2", "m3", "m4"],
        CORNERS,
        &[
            ("A", ["p", "m1", "m4"]),
            ("B", ["q", "m2", "m1"]),
            ("C", ["r", "m3", "m2"]),
            ("D", ["s", "m4", "m3"]),
            ("E", ["m1", "m2", "m4"]),
            ("F", ["m2", "m3", "m4"]),
            ("K1", ["p", "q", "m1"]),
            ("K2", ["q", "r", "m2"]),
            ("K3", ["r", "s", "m3"]),
            ("K4", ["s", "p", "m4"]),
        ],
        &[&["K1"], &["K2"], &["K3"], &["K4"]],
    )
    .unwrap()
}

/// Eight triangles around three interior vertices `u` (near `p`), `v`
/// (near `q, r`) and `w` (near `r, s`), with a central triangle `H`.
pub fn three_int() -> ConstrainedTriangulation {
    ConstrainedTriangulation::build(
        "3int",
        &["p", "q", "r", "s", "u", "v", "w"],
        CORNERS,
        &[
            ("A", ["q", "r", "v"]),
            ("B", ["r", "w", "v"]),
            ("C", ["r", "s", "w"]),
            ("D", ["s", "u", "w"]),
            ("E", ["s", "p", "u"]),
            ("F", ["p", "q", "u"]),
            ("G", ["q", "v", "u"]),
            ("H", ["u", "v", "w"]),
        ],
        &[],
    )
    .unwrap()
}

/// `diag1` with a tetrahedron glued to the interior vertex: not a disk.
pub fn pinned_sphere() -> ConstrainedTriangulation {
    ConstrainedTriangulation::build(
        "pinned-sphere",
        &["p", "q", "r", "s", "u", "a", "b", "c"],
        CORNERS,
        &[
            ("A", ["p", "q", "u"]),
            ("B", ["q", "r", "u"]),
            ("C", ["r", "s", "u"]),
            ("D", ["s", "p", "u"]),
            ("T1", ["u", "a", "b"]),
            ("T2", ["u", "b", "c"]),
            ("T3", ["u", "c", "a"]),
            ("T4", ["a", "c", "b"]),
        ],
        &[],
    )
    .unwrap()
}

/// Random honest triangulation of the square: split the two-triangle
/// square by inserting `interior` vertices into random triangles, then try
/// `flips` random edge flips.
pub fn random_triangulation<R: Rng>(rng: &mut R, interior: usize, flips: usize) -> ConstrainedTriangulation {
    // vertices 0..4 are p q r s
    let mut tris: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 3]];
    for k in 0..interior {
        let v = 4 + k;
        let t = tris.swap_remove(rng.gen_range(0..tris.len()));
        tris.extend([[t[0], t[1], v], [t[1], t[2], v], [t[2], t[0], v]]);
    }
    for _ in 0..flips {
        let i = rng.gen_range(0..tris.len());
        let e = rng.gen_range(0..3);
        let (a, b, c) = (tris[i][e], tris[i][(e + 1) % 3], tris[i][(e + 2) % 3]);
        // neighbor across edge ab traverses it as b -> a
        let Some((j, d)) = tris.iter().enumerate().find_map(|(j, t)| {
            (0..3)
                .find(|&f| t[f] == b && t[(f + 1) % 3] == a)
                .map(|f| (j, t[(f + 2) % 3]))
        }) else {
            continue;
        };
        let edges: BTreeSet<(usize, usize)> = tris
            .iter()
            .flat_map(|t| (0..3).map(move |f| (t[f].min(t[(f + 1) % 3]), t[f].max(t[(f + 1) % 3]))))
            .collect();
        if edges.contains(&(c.min(d), c.max(d))) {
            continue;
        }
        tris[i] = [c, a, d];
        tris[j] = [d, b, c];
    }
    let mut names: Vec<String> = CORNERS.iter().map(|s| s.to_string()).collect();
    names.extend((0..interior).map(|k| format!("x{}", k + 1)));
    let ts: Vec<OrientedTriangle> = tris
        .iter()
        .enumerate()
        .map(|(i, t)| OrientedTriangle {
            id: format!("T{}", i + 1),
            verts: t.map(|v| names[v].clone()),
        })
        .collect();
    let corners = CORNERS.map(str::to_string);
    ConstrainedTriangulation::new("random", &names, &corners, &ts, &[]).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pt(x: (i64, i64), y: (i64, i64)) -> QPoint {
    (q(x.0, x.1), q(y.0, y.1))
}

fn owned(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Drawing of `ace` with a negatively oriented living triangle.
pub fn ace_generalized() -> GeneralizedDissection {
    GeneralizedDissection {
        name: "ace".into(),
        vertices: owned(&["p", "q", "r", "s", "u", "v"]),
        points: vec![
            pt((0, 1), (0, 1)),
            pt((1, 1), (0, 1)),
            pt((1, 1), (1, 1)),
            pt((0, 1), (1, 1)),
            pt((0, 1), (1, 2)),
            pt((-1, 1), (1, 1)),
        ],
        corners: CORNERS.map(str::to_string),
        triangles: vec![
            OrientedTriangle::new("A", ["p", "q", "u"]),
            OrientedTriangle::new("C", ["q", "r", "v"]),
            OrientedTriangle::new("E", ["s", "u", "v"]),
        ],
        constraints: vec![
            owned(&["q", "v", "u"]),
            owned(&["s", "p", "u"]),
            owned(&["r", "s", "v"]),
        ],
    }
}

/// Points of a classical dissection with the combinatorics of `diag2`.
pub fn diag2_points() -> Vec<QPoint> {
    vec![
        pt((0, 1), (0, 1)),
        pt((1, 1), (0, 1)),
        pt((1, 1), (1, 1)),
        pt((0, 1), (1, 1)),
        pt((1, 4), (1, 4)),
        pt((1, 2), (1, 2)),
    ]
}

/// Classical dissection where `B ∪ E` is split by the segment from `q` to
/// `s` through `u` and `v`.
pub fn be_dissection() -> (Vec<String>, Vec<QPoint>, Vec<OrientedTriangle>) {
    let ct = diag2();
    (
        owned(&["p", "q", "r", "s", "u", "v"]),
        vec![
            pt((0, 1), (0, 1)),
            pt((1, 1), (0, 1)),
            pt((1, 1), (1, 1)),
            pt((0, 1), (1, 1)),
            pt((2, 3), (1, 3)),
            pt((1, 3), (2, 3)),
        ],
        ct.oriented_triangles()
            .into_iter()
            .filter(|t| t.id != "B" && t.id != "E")
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generalized_to_ct, living_triangles, validate_ct, FanChoice};

    #[test]
    fn diagonal_two_is_diag2_up_to_names() {
        let d = diagonal(2);
        let e = diag2();
        let shape = |ct: &ConstrainedTriangulation| -> Vec<[String; 3]> {
            ct.oriented_triangles()
                .into_iter()
                .map(|t| t.verts.map(|v| v.replace("u1", "u").replace("u2", "v")))
                .collect()
        };
        let mut a = shape(&d);
        let mut b = shape(&e);
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(living_triangles(&d), ["A1", "A2", "A3", "B1", "B2", "B3"]);
    }

    #[test]
    fn every_entry_validates() {
        for n in names() {
            let ct = get(n).unwrap();
            let rep = validate_ct(&ct);
            assert!(rep.ok, "{n}: {:?}", rep.violations);
        }
        for n in 1..6 {
            assert!(validate_ct(&diagonal(n)).ok);
        }
        assert!(matches!(get("nope"), Err(Error::UnknownCorpusEntry(_))));
        assert!(!validate_ct(&pinned_sphere()).ok);
    }

    #[test]
    fn ace_drawing_fans_to_ace() {
        let gd = ace_generalized();
        gd.validate().unwrap();
        let ct = generalized_to_ct(&gd, &FanChoice::LeastVertex).unwrap();
        assert_eq!(living_triangles(&ct), ["A", "C", "E"]);
        assert_eq!(ct.constraints().len(), 3);
    }

    #[test]
    fn be_dissection_gives_one_constraint() {
        use crate::model::dissection_to_generalized;
        let (v, p, t) = be_dissection();
        let gd = dissection_to_generalized("be", &v, &p, &t).unwrap();
        assert_eq!(gd.constraints.len(), 1);
        let c = &gd.constraints[0];
        let k = c.iter().position(|x| x == "q").unwrap();
        let rot: Vec<&str> = (0..4).map(|i| c[(k + i) % 4].as_str()).collect();
        assert_eq!(rot, ["q", "v", "s", "u"]);
        let ct = generalized_to_ct(&gd, &FanChoice::Roots(vec!["u".into()])).unwrap();
        let dead: Vec<[String; 3]> = ct.constraints()[0]
            .triangles
            .iter()
            .map(|&i| ct.triangles()[i].verts.map(|v| ct.vertex_name(v).to_string()))
            .collect();
        assert_eq!(dead, [["u", "q", "v"], ["u", "v", "s"]].map(|t| t.map(String::from)));
    }
}
