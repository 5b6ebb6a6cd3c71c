//! Constrained triangulations and generalized dissections.

pub mod complex;
pub mod dissection;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use complex::{check_disk, DiskProblem};

pub use dissection::{
    dissection_to_generalized, generalized_to_ct, FanChoice, GeneralizedDissection,
};

/// Oriented triangle; the vertex triple matters up to rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedTriangle {
    pub id: String,
    pub verts: [String; 3],
}

impl OrientedTriangle {
    pub fn new(id: &str, verts: [&str; 3]) -> Self {
        OrientedTriangle {
            id: id.to_string(),
            verts: verts.map(str::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub id: String,
    pub verts: [usize; 3],
}

/// A collinearity constraint: a set of dead triangles and the vertex set it
/// spans (sorted by vertex index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub triangles: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl Constraint {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// An oriented simplicial disk with corners `p, q, r, s` and collinearity
/// constraints. Vertices and triangles are addressed by index internally;
/// names are kept for I/O.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstrainedTriangulation {
    name: String,
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    corners: [usize; 4],
    triangles: Vec<Triangle>,
    constraints: Vec<Constraint>,
}

impl ConstrainedTriangulation {
    /// Build from names. Constraints are given as lists of triangle ids.
    /// Only structural checks happen here; see [`validate_ct`] for the
    /// topological ones.
    pub fn new(
        name: &str,
        vertices: &[String],
        corners: &[String; 4],
        triangles: &[OrientedTriangle],
        constraints: &[Vec<String>],
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::SchemaError {
                    path: format!("vertices[{i}]"),
                    msg: "empty vertex id".into(),
                });
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let lookup = |v: &String| index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.clone()));
        let mut cs = [0usize; 4];
        for (k, c) in corners.iter().enumerate() {
            cs[k] = lookup(c)?;
        }
        if cs.iter().collect::<BTreeSet<_>>().len() != 4 {
            return Err(Error::SchemaError {
                path: "corners".into(),
                msg: "corners must be four distinct vertices".into(),
            });
        }
        let mut tindex: HashMap<&str, usize> = HashMap::new();
        let mut tris = Vec::with_capacity(triangles.len());
        for (i, t) in triangles.iter().enumerate() {
            if tindex.insert(t.id.as_str(), i).is_some() {
                return Err(Error::DuplicateId(t.id.clone()));
            }
            let verts = [lookup(&t.verts[0])?, lookup(&t.verts[1])?, lookup(&t.verts[2])?];
            if verts[0] == verts[1] || verts[1] == verts[2] || verts[0] == verts[2] {
                return Err(Error::DegenerateTriangle(t.id.clone()));
            }
            tris.push(Triangle {
                id: t.id.clone(),
                verts,
            });
        }
        let mut cons = Vec::with_capacity(constraints.len());
        for (ci, c) in constraints.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::SchemaError {
                    path: format!("constraints[{ci}].triangles"),
                    msg: "empty constraint".into(),
                });
            }
            let mut ts = Vec::with_capacity(c.len());
            for id in c {
                let t = *tindex
                    .get(id.as_str())
                    .ok_or_else(|| Error::UnknownTriangle(id.clone()))?;
                if ts.contains(&t) {
                    return Err(Error::DuplicateId(id.clone()));
                }
                ts.push(t);
            }
            let vs: BTreeSet<usize> = ts.iter().flat_map(|&t| tris[t].verts).collect();
            cons.push(Constraint {
                triangles: ts,
                vertices: vs.into_iter().collect(),
            });
        }
        Ok(ConstrainedTriangulation {
            name: name.to_string(),
            vertices: vertices.to_vec(),
            index,
            corners: cs,
            triangles: tris,
            constraints: cons,
        })
    }

    /// Convenience constructor from string slices.
    pub fn build(
        name: &str,
        vertices: &[&str],
        corners: [&str; 4],
        triangles: &[(&str, [&str; 3])],
        constraints: &[&[&str]],
    ) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let cs = corners.map(str::to_string);
        let ts: Vec<OrientedTriangle> = triangles
            .iter()
            .map(|(id, v)| OrientedTriangle::new(id, *v))
            .collect();
        let cons: Vec<Vec<String>> = constraints
            .iter()
            .map(|c| c.iter().map(|s| s.to_string()).collect())
            .collect();
        Self::new(name, &vs, &cs, &ts, &cons)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Corner indices in the order `p, q, r, s`.
    pub fn corners(&self) -> [usize; 4] {
        self.corners
    }

    pub fn is_corner(&self, v: usize) -> bool {
        self.corners.contains(&v)
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn triangle_index(&self, id: &str) -> Option<usize> {
        self.triangles.iter().position(|t| t.id == id)
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_honest(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Non-corner vertices in input order.
    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices())
            .filter(|v| !self.is_corner(*v))
            .collect()
    }

    /// Undirected edges of the 1-skeleton, as sorted pairs.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut e = BTreeSet::new();
        for t in &self.triangles {
            for k in 0..3 {
                let a = t.verts[k];
                let b = t.verts[(k + 1) % 3];
                e.insert((a.min(b), a.max(b)));
            }
        }
        e
    }

    pub fn neighbors(&self) -> Vec<BTreeSet<usize>> {
        let mut n = vec![BTreeSet::new(); self.num_vertices()];
        for (a, b) in self.edges() {
            n[a].insert(b);
            n[b].insert(a);
        }
        n
    }

    /// Indices of living triangles, in input order.
    pub fn living(&self) -> Vec<usize> {
        (0..self.triangles.len())
            .filter(|&t| {
                let vs = self.triangles[t].verts;
                !self
                    .constraints
                    .iter()
                    .any(|c| vs.iter().all(|&v| c.contains(v)))
            })
            .collect()
    }

    /// The same complex with a different constraint list.
    pub fn with_constraints(&self, constraints: &[Vec<String>]) -> Result<Self> {
        let ts: Vec<OrientedTriangle> = self
            .triangles
            .iter()
            .map(|t| OrientedTriangle {
                id: t.id.clone(),
                verts: t.verts.map(|v| self.vertices[v].clone()),
            })
            .collect();
        let cs = self.corners.map(|c| self.vertices[c].clone());
        Self::new(&self.name, &self.vertices, &cs, &ts, constraints)
    }

    /// Oriented triangles with vertex names.
    pub fn oriented_triangles(&self) -> Vec<OrientedTriangle> {
        self.triangles
            .iter()
            .map(|t| OrientedTriangle {
                id: t.id.clone(),
                verts: t.verts.map(|v| self.vertices[v].clone()),
            })
            .collect()
    }

    /// Constraints as lists of triangle ids.
    pub fn constraint_ids(&self) -> Vec<Vec<String>> {
        self.constraints
            .iter()
            .map(|c| {
                c.triangles
                    .iter()
                    .map(|&t| self.triangles[t].id.clone())
                    .collect()
            })
            .collect()
    }

    pub fn constraint_vertex_names(&self, c: usize) -> Vec<String> {
        self.constraints[c]
            .vertices
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect()
    }
}

/// Ids of the living triangles, in input order.
pub fn living_triangles(ct: &ConstrainedTriangulation) -> Vec<String> {
    ct.living()
        .into_iter()
        .map(|t| ct.triangles[t].id.clone())
        .collect()
}

/// Every pair of constraints shares at most one vertex.
pub fn is_combinatorially_irreducible(ct: &ConstrainedTriangulation) -> bool {
    reducing_pair(ct).is_none()
}

/// First pair of constraints sharing two or more vertices.
pub fn reducing_pair(ct: &ConstrainedTriangulation) -> Option<(usize, usize)> {
    let cs = &ct.constraints;
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let shared = cs[i]
                .vertices
                .iter()
                .filter(|v| cs[j].contains(**v))
                .count();
            if shared >= 2 {
                return Some((i, j));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotADisk(String),
    OrientationMismatch(String, String),
    NonContiguousConstraint(usize),
    OverlappingConstraints {
        first: usize,
        second: usize,
        triangle: String,
    },
    ConstraintTooSmall(usize),
    CornersNotOnBoundary,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotADisk(why) => write!(f, "non-disk: {why}"),
            Violation::OrientationMismatch(a, b) => write!(f, "orientation mismatch on edge {a}{b}"),
            Violation::NonContiguousConstraint(c) => write!(f, "non-contiguous constraint {c}"),
            Violation::OverlappingConstraints {
                first,
                second,
                triangle,
            } => write!(
                f,
                "overlapping constraint triangle sets: constraints {first} and {second} both contain {triangle}"
            ),
            Violation::ConstraintTooSmall(c) => write!(f, "constraint {c} has fewer than 3 vertices"),
            Violation::CornersNotOnBoundary => write!(f, "corners not on boundary in order p, q, r, s"),
        }
    }
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::NotADisk(_) => "non-disk",
            Violation::OrientationMismatch(..) => "orientation mismatch",
            Violation::NonContiguousConstraint(_) => "non-contiguous constraint",
            Violation::OverlappingConstraints { .. } => "overlapping constraint triangle sets",
            Violation::ConstraintTooSmall(_) => "constraint too small",
            Violation::CornersNotOnBoundary => "corners not on boundary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// V - E + F counting the outer face.
    pub euler: i64,
}

impl ValidationReport {
    pub fn into_result(self) -> Result<()> {
        if self.ok {
            Ok(())
        } else {
            Err(Error::InvalidTriangulation(
                self.violations.iter().map(|v| v.to_string()).collect(),
            ))
        }
    }
}

/// Check every invariant of a constrained triangulation and report each
/// violation found.
pub fn validate_ct(ct: &ConstrainedTriangulation) -> ValidationReport {
    let mut violations = Vec::new();
    let cells: Vec<Vec<usize>> = ct.triangles.iter().map(|t| t.verts.to_vec()).collect();
    let disk = check_disk(ct.num_vertices(), &cells);
    let name = |v: usize| ct.vertices.get(v).cloned().unwrap_or_default();
    for p in &disk.problems {
        violations.push(match p {
            DiskProblem::OrientationMismatch(a, b) => Violation::OrientationMismatch(name(*a), name(*b)),
            DiskProblem::RepeatedVertexInCell(c) => {
                Violation::NotADisk(format!("triangle {} repeats a vertex", ct.triangles[*c].id))
            }
            DiskProblem::NonManifoldEdge(a, b) => {
                Violation::NotADisk(format!("edge {}{} has three or more triangles", name(*a), name(*b)))
            }
            DiskProblem::UnusedVertex(v) => Violation::NotADisk(format!("vertex {} is in no triangle", name(*v))),
            DiskProblem::BoundaryNotCycle => Violation::NotADisk("boundary is not a single cycle".into()),
            DiskProblem::EulerCharacteristic(chi) => {
                Violation::NotADisk(format!("Euler characteristic {chi}, expected 1"))
            }
            DiskProblem::BadLink(v) => Violation::NotADisk(format!("link of {} is not a disk", name(*v))),
        });
    }
    if disk.boundary.len() == 4 {
        let pos = |v: usize| disk.boundary.iter().position(|&b| b == v);
        let [p, q, r, s] = ct.corners;
        let ok = match pos(p) {
            Some(i) => (1..4).all(|k| disk.boundary[(i + k) % 4] == [q, r, s][k - 1]),
            None => false,
        };
        if !ok {
            violations.push(Violation::CornersNotOnBoundary);
        }
    } else if disk.problems.is_empty() {
        violations.push(Violation::CornersNotOnBoundary);
    }

    // constraints
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (ci, c) in ct.constraints.iter().enumerate() {
        for &t in &c.triangles {
            if let Some(&prev) = owner.get(&t) {
                violations.push(Violation::OverlappingConstraints {
                    first: prev,
                    second: ci,
                    triangle: ct.triangles[t].id.clone(),
                });
            } else {
                owner.insert(t, ci);
            }
        }
        if c.vertices.len() < 3 {
            violations.push(Violation::ConstraintTooSmall(ci));
        }
        if !is_contiguous(ct, &c.triangles) {
            violations.push(Violation::NonContiguousConstraint(ci));
        }
    }
    ValidationReport {
        ok: violations.is_empty(),
        violations,
        euler: disk.vertices as i64 - disk.edges as i64 + disk.faces as i64 + 1,
    }
}

fn is_contiguous(ct: &ConstrainedTriangulation, ts: &[usize]) -> bool {
    if ts.is_empty() {
        return false;
    }
    let share_edge = |a: usize, b: usize| {
        let va = ct.triangles[a].verts;
        let vb = ct.triangles[b].verts;
        va.iter().filter(|v| vb.contains(v)).count() >= 2
    };
    let mut seen = vec![false; ts.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..ts.len() {
            if !seen[j] && share_edge(ts[i], ts[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}
