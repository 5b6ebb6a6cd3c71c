//! Classical and generalized dissections, and their conversion into
//! constrained triangulations.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::complex::check_disk;
use super::{ConstrainedTriangulation, OrientedTriangle};
use crate::algebra::{triangle_area, QPoint};
use crate::error::{Error, Result};

/// Oriented triangles plus totally degenerate constraint polygons, drawn
/// with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedDissection {
    pub name: String,
    pub vertices: Vec<String>,
    pub points: Vec<QPoint>,
    /// `p, q, r, s`.
    pub corners: [String; 4],
    pub triangles: Vec<OrientedTriangle>,
    /// Cyclically ordered vertex lists, oriented like the triangles.
    pub constraints: Vec<Vec<String>>,
}

/// How to triangulate poofagons with more than three vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum FanChoice {
    /// Fan from the lexicographically least vertex name.
    #[default]
    LeastVertex,
    /// Fan root per constraint, by vertex name.
    Roots(Vec<String>),
}

fn cross(o: &QPoint, a: &QPoint, b: &QPoint) -> BigRational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

impl GeneralizedDissection {
    fn index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn point(&self, name: &str) -> Result<&QPoint> {
        Ok(&self.points[self.index(name)?])
    }

    /// Check the definition: non-degenerate triangles, collinear
    /// constraints pairwise sharing at most one vertex, corners forming a
    /// parallelogram, and a disk-shaped 2-complex with boundary p, q, r, s.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::NotAGeneralizedDissection(m));
        if self.points.len() != self.vertices.len() {
            return bad("every vertex needs a point".into());
        }
        for t in &self.triangles {
            let [a, b, c] = [&t.verts[0], &t.verts[1], &t.verts[2]].map(|v| self.point(v));
            if triangle_area(a?, b?, c?).is_zero() {
                return bad(format!("triangle {} is degenerate", t.id));
            }
        }
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        for (ci, c) in self.constraints.iter().enumerate() {
            if c.len() < 3 {
                return bad(format!("constraint {ci} has fewer than 3 vertices"));
            }
            let pts: Vec<&QPoint> = c.iter().map(|v| self.point(v)).collect::<Result<_>>()?;
            for k in 2..pts.len() {
                if !cross(pts[0], pts[1], pts[k]).is_zero() {
                    return bad(format!("constraint {ci} is not collinear"));
                }
            }
            let s: BTreeSet<usize> = c.iter().map(|v| self.index(v)).collect::<Result<_>>()?;
            if s.len() != c.len() {
                return bad(format!("constraint {ci} repeats a vertex"));
            }
            for (cj, other) in sets.iter().enumerate() {
                if other.intersection(&s).count() > 1 {
                    return bad(format!("constraints {cj} and {ci} share two or more vertices"));
                }
            }
            sets.push(s);
        }
        let [p, q, r, s] = [0, 1, 2, 3].map(|k| self.point(&self.corners[k]));
        let (p, q, r, s) = (p?, q?, r?, s?);
        if &p.0 + &r.0 != &q.0 + &s.0 || &p.1 + &r.1 != &q.1 + &s.1 || cross(p, q, s).is_zero() {
            return bad("corners do not form a non-degenerate parallelogram".into());
        }
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for t in &self.triangles {
            cells.push(t.verts.iter().map(|v| self.index(v)).collect::<Result<_>>()?);
        }
        for c in &self.constraints {
            cells.push(c.iter().map(|v| self.index(v)).collect::<Result<_>>()?);
        }
        let disk = check_disk(self.vertices.len(), &cells);
        if !disk.is_disk() {
            return bad(format!("2-complex is not a disk: {:?}", disk.problems));
        }
        let corners: Vec<usize> = self.corners.iter().map(|c| self.index(c)).collect::<Result<_>>()?;
        let i = disk.boundary.iter().position(|&b| b == corners[0]);
        let ok = disk.boundary.len() == 4
            && i.is_some_and(|i| (1..4).all(|k| disk.boundary[(i + k) % 4] == corners[k]));
        if !ok {
            return bad("boundary is not the cycle p, q, r, s".into());
        }
        Ok(())
    }
}

/// Line through two distinct points, as a hashable key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum LineKey {
    Sloped(BigRational, BigRational),
    Vertical(BigRational),
}

fn line_key(a: &QPoint, b: &QPoint) -> LineKey {
    if a.0 == b.0 {
        LineKey::Vertical(a.0.clone())
    } else {
        let slope = (&b.1 - &a.1) / (&b.0 - &a.0);
        let icept = &a.1 - &slope * &a.0;
        LineKey::Sloped(slope, icept)
    }
}

fn on_line(key: &LineKey, p: &QPoint) -> bool {
    match key {
        LineKey::Vertical(x) => &p.0 == x,
        LineKey::Sloped(m, c) => p.1 == m * &p.0 + c,
    }
}

/// Position along the line.
fn along(key: &LineKey, p: &QPoint) -> BigRational {
    match key {
        LineKey::Vertical(_) => p.1.clone(),
        LineKey::Sloped(..) => p.0.clone(),
    }
}

/// Strictly inside the segment `ab`.
fn strictly_between(a: &QPoint, b: &QPoint, v: &QPoint) -> bool {
    if !cross(a, b, v).is_zero() {
        return false;
    }
    let dot = (&v.0 - &a.0) * (&b.0 - &a.0) + (&v.1 - &a.1) * (&b.1 - &a.1);
    let len = (&b.0 - &a.0) * (&b.0 - &a.0) + (&b.1 - &a.1) * (&b.1 - &a.1);
    dot.is_positive() && dot < len
}

/// Interiors of two positively oriented triangles are disjoint iff some
/// edge direction separates them.
fn interiors_disjoint(t1: &[QPoint; 3], t2: &[QPoint; 3]) -> bool {
    for (tri, other) in [(t1, t2), (t2, t1)] {
        for k in 0..3 {
            let a = &tri[k];
            let b = &tri[(k + 1) % 3];
            // other lies entirely on the closed right side of edge ab
            if other.iter().all(|p| !cross(a, b, p).is_positive()) {
                return true;
            }
        }
    }
    false
}

/// Build the generalized dissection of a classical dissection of a square.
/// Triangles must be counterclockwise; corners are read off the bounding
/// box. Constraints are the maximal segments with at least three vertices,
/// split at vertices that are not T-junctions along them.
pub fn dissection_to_generalized(
    name: &str,
    vertices: &[String],
    points: &[QPoint],
    triangles: &[OrientedTriangle],
) -> Result<GeneralizedDissection> {
    let bad = |m: String| Err(Error::NotADissection(m));
    if vertices.len() != points.len() {
        return bad("every vertex needs a point".into());
    }
    let idx = |n: &str| {
        vertices
            .iter()
            .position(|v| v == n)
            .ok_or_else(|| Error::UnknownVertex(n.to_string()))
    };
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for t in triangles {
        tris.push([idx(&t.verts[0])?, idx(&t.verts[1])?, idx(&t.verts[2])?]);
    }
    let pt = |i: usize| &points[i];
    let area = |t: &[usize; 3]| triangle_area(pt(t[0]), pt(t[1]), pt(t[2]));
    for (t, tri) in triangles.iter().zip(&tris) {
        if !area(tri).is_positive() {
            return bad(format!("triangle {} is not counterclockwise", t.id));
        }
    }
    if points.is_empty() {
        return bad("no points".into());
    }
    let min_x = points.iter().map(|p| &p.0).min().unwrap().clone();
    let max_x = points.iter().map(|p| &p.0).max().unwrap().clone();
    let min_y = points.iter().map(|p| &p.1).min().unwrap().clone();
    let max_y = points.iter().map(|p| &p.1).max().unwrap().clone();
    if &max_x - &min_x != &max_y - &min_y || max_x == min_x {
        return bad("bounding box is not a square".into());
    }
    let corner_pts = [
        (min_x.clone(), min_y.clone()),
        (max_x.clone(), min_y.clone()),
        (max_x.clone(), max_y.clone()),
        (min_x.clone(), max_y.clone()),
    ];
    let mut corners: Vec<String> = Vec::new();
    for c in &corner_pts {
        match points.iter().position(|p| p == c) {
            Some(i) => corners.push(vertices[i].clone()),
            None => return bad("a corner of the square is not a vertex".into()),
        }
    }
    let total: BigRational = tris.iter().map(area).sum();
    if total != (&max_x - &min_x) * (&max_y - &min_y) {
        return bad(format!("triangle areas sum to {total}, not the square's area"));
    }
    for i in 0..tris.len() {
        for j in i + 1..tris.len() {
            let a = tris[i].map(|v| pt(v).clone());
            let b = tris[j].map(|v| pt(v).clone());
            if !interiors_disjoint(&a, &b) {
                return bad(format!(
                    "triangles {} and {} overlap",
                    triangles[i].id, triangles[j].id
                ));
            }
        }
    }
    let used: BTreeSet<usize> = tris.iter().flatten().copied().collect();
    if used.len() != vertices.len() {
        return bad("a point is not a vertex of any triangle".into());
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return bad(format!("vertices {} and {} coincide", vertices[i], vertices[j]));
            }
        }
    }

    // group triangle edges by supporting line
    let mut lines: BTreeMap<LineKey, Vec<(usize, usize)>> = BTreeMap::new();
    for t in &tris {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            lines
                .entry(line_key(pt(a), pt(b)))
                .or_default()
                .push((a, b));
        }
    }
    let box_sides = [
        LineKey::Sloped(BigRational::zero(), min_y.clone()),
        LineKey::Sloped(BigRational::zero(), max_y.clone()),
        LineKey::Vertical(min_x.clone()),
        LineKey::Vertical(max_x.clone()),
    ];

    let mut constraints: Vec<Vec<String>> = Vec::new();
    for (key, edges) in &lines {
        // vertices that are T-junctions along this line
        let mut junction: BTreeSet<usize> = BTreeSet::new();
        for &(a, b) in edges {
            for v in 0..points.len() {
                if v != a && v != b && strictly_between(pt(a), pt(b), pt(v)) {
                    junction.insert(v);
                }
            }
        }
        let on_box_side = box_sides.contains(key);
        let mut on: Vec<usize> = (0..points.len()).filter(|&v| on_line(key, pt(v))).collect();
        on.sort_by(|&a, &b| along(key, pt(a)).cmp(&along(key, pt(b))));
        let covered = |a: usize, b: usize| {
            let (ta, tb) = (along(key, pt(a)), along(key, pt(b)));
            edges.iter().any(|&(x, y)| {
                let (tx, ty) = (along(key, pt(x)), along(key, pt(y)));
                let (lo, hi) = if tx <= ty { (tx, ty) } else { (ty, tx) };
                lo <= ta && tb <= hi
            })
        };
        let mut runs: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        for (k, &v) in on.iter().enumerate() {
            if cur.is_empty() {
                cur.push(v);
                continue;
            }
            let prev = *cur.last().unwrap();
            if !covered(prev, v) {
                runs.push(std::mem::take(&mut cur));
                cur.push(v);
                continue;
            }
            cur.push(v);
            let interior = k + 1 < on.len() && covered(v, on[k + 1]);
            if interior && !(junction.contains(&v) || on_box_side) {
                runs.push(std::mem::take(&mut cur));
                cur.push(v);
            }
        }
        runs.push(cur);
        for run in runs.into_iter().filter(|r| r.len() >= 3) {
            constraints.push(cyclic_order(&run, &tris, points, key, &vertices.to_vec()));
        }
    }

    let gd = GeneralizedDissection {
        name: name.to_string(),
        vertices: vertices.to_vec(),
        points: points.to_vec(),
        corners: [
            corners[0].clone(),
            corners[1].clone(),
            corners[2].clone(),
            corners[3].clone(),
        ],
        triangles: triangles.to_vec(),
        constraints,
    };
    gd.validate().map_err(|e| Error::NotADissection(e.to_string()))?;
    Ok(gd)
}

/// Order a maximal segment's vertices as the boundary of its poofagon:
/// start, vertices on the right side ascending, end, left side descending.
fn cyclic_order(
    run: &[usize],
    tris: &[[usize; 3]],
    points: &[QPoint],
    key: &LineKey,
    names: &[String],
) -> Vec<String> {
    let a = run[0];
    let b = *run.last().unwrap();
    let side = |v: usize| -> bool {
        // third vertex of a triangle at v with an edge along the line
        for t in tris {
            if let Some(k) = t.iter().position(|&x| x == v) {
                let others = [t[(k + 1) % 3], t[(k + 2) % 3]];
                for (i, &o) in others.iter().enumerate() {
                    if on_line(key, &points[o]) {
                        let third = others[1 - i];
                        return cross(&points[a], &points[b], &points[third]).is_positive();
                    }
                }
            }
        }
        true
    };
    let inner = &run[1..run.len() - 1];
    let mut out = vec![names[a].clone()];
    out.extend(inner.iter().filter(|&&v| !side(v)).map(|&v| names[v].clone()));
    out.push(names[b].clone());
    out.extend(
        inner
            .iter()
            .rev()
            .filter(|&&v| side(v))
            .map(|&v| names[v].clone()),
    );
    out
}

/// Triangulate every poofagon by a fan and return the constrained
/// triangulation. Living triangles keep their ids and come first; dead ones
/// are named `K1, K2, ...` (skipping names already in use).
pub fn generalized_to_ct(gd: &GeneralizedDissection, fan: &FanChoice) -> Result<ConstrainedTriangulation> {
    gd.validate()?;
    let mut used: BTreeSet<String> = gd.triangles.iter().map(|t| t.id.clone()).collect();
    used.extend(gd.vertices.iter().cloned());
    let mut counter = 0;
    let mut fresh = || loop {
        counter += 1;
        let id = format!("K{counter}");
        if !used.contains(&id) {
            used.insert(id.clone());
            return id;
        }
    };
    let mut triangles = gd.triangles.clone();
    let mut constraints = Vec::new();
    for (ci, cycle) in gd.constraints.iter().enumerate() {
        let root = match fan {
            FanChoice::LeastVertex => cycle.iter().min().unwrap().clone(),
            FanChoice::Roots(r) => r
                .get(ci)
                .cloned()
                .unwrap_or_else(|| cycle.iter().min().unwrap().clone()),
        };
        let k = cycle
            .iter()
            .position(|v| *v == root)
            .ok_or_else(|| Error::UnknownVertex(root.clone()))?;
        let rot: Vec<&String> = (0..cycle.len()).map(|i| &cycle[(k + i) % cycle.len()]).collect();
        let mut ids = Vec::new();
        for i in 1..rot.len() - 1 {
            let id = fresh();
            triangles.push(OrientedTriangle {
                id: id.clone(),
                verts: [rot[0].clone(), rot[i].clone(), rot[i + 1].clone()],
            });
            ids.push(id);
        }
        constraints.push(ids);
    }
    ConstrainedTriangulation::new(&gd.name, &gd.vertices, &gd.corners, &triangles, &constraints)
}
