//! Recognition of oriented 2-complexes homeomorphic to a disk.
//!
//! Cells are oriented polygons given as vertex cycles (triangles, or longer
//! cycles for poofagons).

use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiskProblem {
    RepeatedVertexInCell(usize),
    /// Two cells traverse the edge in the same direction.
    OrientationMismatch(usize, usize),
    /// Edge used by three or more cells.
    NonManifoldEdge(usize, usize),
    UnusedVertex(usize),
    /// Boundary edges do not form one simple cycle.
    BoundaryNotCycle,
    /// V - E + F differs from 1.
    EulerCharacteristic(i64),
    /// The cells around this vertex are not a single fan.
    BadLink(usize),
}

#[derive(Clone, Debug, Default)]
pub struct DiskCheck {
    /// Boundary cycle in the direction induced by the cell orientation.
    pub boundary: Vec<usize>,
    pub problems: Vec<DiskProblem>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl DiskCheck {
    pub fn is_disk(&self) -> bool {
        self.problems.is_empty()
    }
}

pub fn check_disk(nverts: usize, cells: &[Vec<usize>]) -> DiskCheck {
    let mut out = DiskCheck {
        vertices: nverts,
        faces: cells.len(),
        ..DiskCheck::default()
    };
    // directed edge -> number of cells using it
    let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut used = vec![false; nverts];
    for (ci, cell) in cells.iter().enumerate() {
        let distinct: BTreeSet<usize> = cell.iter().copied().collect();
        if distinct.len() != cell.len() || cell.len() < 3 {
            out.problems.push(DiskProblem::RepeatedVertexInCell(ci));
            continue;
        }
        for k in 0..cell.len() {
            let a = cell[k];
            let b = cell[(k + 1) % cell.len()];
            used[a] = true;
            *directed.entry((a, b)).or_default() += 1;
        }
    }
    for (v, &u) in used.iter().enumerate() {
        if !u {
            out.problems.push(DiskProblem::UnusedVertex(v));
        }
    }

    let mut undirected: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut boundary_next: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&(a, b), &n) in &directed {
        let key = (a.min(b), a.max(b));
        if !undirected.insert(key) {
            continue;
        }
        let fwd = n;
        let back = directed.get(&(b, a)).copied().unwrap_or(0);
        if fwd + back > 2 {
            out.problems.push(DiskProblem::NonManifoldEdge(key.0, key.1));
        } else if fwd == 2 || back == 2 {
            out.problems.push(DiskProblem::OrientationMismatch(key.0, key.1));
        } else if fwd + back == 1 {
            let (s, t) = if fwd == 1 { (a, b) } else { (b, a) };
            boundary_next.entry(s).or_default().push(t);
        }
    }
    out.edges = undirected.len();

    // boundary must be one simple directed cycle
    let boundary_ok = boundary_next.values().all(|v| v.len() == 1) && !boundary_next.is_empty();
    if boundary_ok {
        let start = *boundary_next.keys().next().unwrap();
        let mut cycle = vec![start];
        let mut cur = boundary_next[&start][0];
        while cur != start && cycle.len() <= boundary_next.len() {
            cycle.push(cur);
            cur = match boundary_next.get(&cur) {
                Some(n) => n[0],
                None => break,
            };
        }
        if cur == start && cycle.len() == boundary_next.len() {
            out.boundary = cycle;
        } else {
            out.problems.push(DiskProblem::BoundaryNotCycle);
        }
    } else {
        out.problems.push(DiskProblem::BoundaryNotCycle);
    }

    let chi = nverts as i64 - out.edges as i64 + cells.len() as i64;
    if chi != 1 {
        out.problems.push(DiskProblem::EulerCharacteristic(chi));
    }

    // vertex links
    let on_boundary: BTreeSet<usize> = out.boundary.iter().copied().collect();
    let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nverts];
    for cell in cells {
        let n = cell.len();
        for k in 0..n {
            let v = cell[k];
            let next = cell[(k + 1) % n];
            let prev = cell[(k + n - 1) % n];
            if v < nverts {
                links[v].push((next, prev));
            }
        }
    }
    for (v, arcs) in links.iter().enumerate() {
        if arcs.is_empty() {
            continue;
        }
        if !link_is_fan(arcs, on_boundary.contains(&v)) {
            out.problems.push(DiskProblem::BadLink(v));
        }
    }
    out
}

/// Arcs must form one directed path (boundary vertex) or one directed cycle
/// (interior vertex).
fn link_is_fan(arcs: &[(usize, usize)], boundary: bool) -> bool {
    let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
    let mut indeg: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in arcs {
        if succ.insert(a, b).is_some() {
            return false;
        }
        *indeg.entry(b).or_default() += 1;
        indeg.entry(a).or_default();
    }
    if indeg.values().any(|&d| d > 1) {
        return false;
    }
    let starts: Vec<usize> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&v, _)| v)
        .collect();
    let start = match (boundary, starts.len()) {
        (true, 1) => starts[0],
        (false, 0) => arcs[0].0,
        _ => return false,
    };
    let mut seen = 0;
    let mut cur = start;
    while let Some(&n) = succ.get(&cur) {
        seen += 1;
        cur = n;
        if cur == start || seen > arcs.len() {
            break;
        }
    }
    seen == arcs.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    // p q r s u = 0 1 2 3 4
    fn diag1() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4]]
    }

    #[test]
    fn square_with_center_is_disk() {
        let c = check_disk(5, &diag1());
        assert!(c.is_disk(), "{:?}", c.problems);
        assert_eq!(c.boundary, vec![0, 1, 2, 3]);
        assert_eq!(c.vertices as i64 - c.edges as i64 + c.faces as i64 + 1, 2);
    }

    #[test]
    fn flipped_triangle_is_orientation_mismatch() {
        let mut cells = diag1();
        cells[1] = vec![1, 4, 2];
        let c = check_disk(5, &cells);
        assert!(c
            .problems
            .iter()
            .any(|p| matches!(p, DiskProblem::OrientationMismatch(..))));
    }

    #[test]
    fn pinned_sphere_fails() {
        // tetrahedron a b c glued to u
        let mut cells = diag1();
        cells.extend([vec![4, 5, 6], vec![4, 6, 7], vec![4, 7, 5], vec![5, 7, 6]]);
        let c = check_disk(8, &cells);
        assert!(c.problems.contains(&DiskProblem::EulerCharacteristic(2)));
        assert!(c.problems.contains(&DiskProblem::BadLink(4)));
    }

    #[test]
    fn polygon_cells() {
        // square split into a triangle and a quadrilateral-shaped cell
        // p q r s m=4 on pq: cells (p,m,s) (m,q,r,s)
        let c = check_disk(5, &[vec![0, 4, 3], vec![4, 1, 2, 3]]);
        assert!(c.is_disk(), "{:?}", c.problems);
        assert_eq!(c.boundary, vec![0, 4, 1, 2, 3]);
    }
}
