//! The edge-path metric on the 1-skeleton, geodesics, and convex subcomplexes.
//!
//! Distances are combinatorial: the length of a shortest edge path between
//! vertices. For NPC complexes this is the restriction of the piecewise-ℓ¹
//! metric to the 0-skeleton, and geodesity of an edge path is detected by
//! hyperplane crossings: a path is geodesic exactly when it crosses no
//! hyperplane twice.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, CubeComplex};
use crate::error::MetricError;
use crate::hyperplanes::hyperplanes;

/// An edge path: a start vertex and a sequence of directed edge steps
/// `(1-cell, reversed)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    pub start: CellId,
    pub steps: Vec<(CellId, bool)>,
}

impl EdgePath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Checks the steps concatenate and returns the final vertex.
    pub fn end(&self, x: &CubeComplex) -> Result<CellId, MetricError> {
        let mut at = self.start;
        if at.dim != 0 || !x.contains(at) {
            return Err(MetricError::UnknownCell(at.to_string()));
        }
        for (i, &(e, rev)) in self.steps.iter().enumerate() {
            if e.dim != 1 || !x.contains(e) {
                return Err(MetricError::UnknownCell(e.to_string()));
            }
            let (tail, head) = x.endpoints(e);
            let (from, to) = if rev { (head, tail) } else { (tail, head) };
            if from != at {
                return Err(MetricError::BadPath(format!(
                    "step {i} starts at {} but the path is at {}",
                    x.name(from),
                    x.name(at)
                )));
            }
            at = to;
        }
        Ok(at)
    }
}

/// Directed edge steps out of each vertex: `out[v] = [(edge, reversed, head)]`.
fn adjacency(x: &CubeComplex) -> Vec<Vec<(CellId, bool, CellId)>> {
    let mut out: Vec<Vec<(CellId, bool, CellId)>> = vec![Vec::new(); x.cell_count(0)];
    for e in x.cells(1) {
        let (a, b) = x.endpoints(e);
        out[a.idx].push((e, false, b));
        out[b.idx].push((e, true, a));
    }
    out
}

/// BFS distances from `v` to every vertex (`None` for other components).
pub fn distances_from(x: &CubeComplex, v: CellId) -> Vec<Option<usize>> {
    let out = adjacency(x);
    let mut dist = vec![None; x.cell_count(0)];
    dist[v.idx] = Some(0);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u.idx].unwrap();
        for &(_, _, w) in &out[u.idx] {
            if dist[w.idx].is_none() {
                dist[w.idx] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Edge-path distance between two vertices.
pub fn distance(x: &CubeComplex, a: CellId, b: CellId) -> Result<usize, MetricError> {
    for v in [a, b] {
        if v.dim != 0 || !x.contains(v) {
            return Err(MetricError::UnknownCell(v.to_string()));
        }
    }
    distances_from(x, a)[b.idx]
        .ok_or_else(|| MetricError::Disconnected(x.name(a).to_string(), x.name(b).to_string()))
}

/// One shortest edge path between two vertices.
pub fn shortest_path(x: &CubeComplex, a: CellId, b: CellId) -> Result<EdgePath, MetricError> {
    for v in [a, b] {
        if v.dim != 0 || !x.contains(v) {
            return Err(MetricError::UnknownCell(v.to_string()));
        }
    }
    let out = adjacency(x);
    let mut prev: Vec<Option<(CellId, bool, CellId)>> = vec![None; x.cell_count(0)];
    let mut seen = vec![false; x.cell_count(0)];
    seen[a.idx] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &(e, rev, w) in &out[u.idx] {
            if !seen[w.idx] {
                seen[w.idx] = true;
                prev[w.idx] = Some((e, rev, u));
                queue.push_back(w);
            }
        }
    }
    if !seen[b.idx] {
        return Err(MetricError::Disconnected(
            x.name(a).to_string(),
            x.name(b).to_string(),
        ));
    }
    let mut steps = Vec::new();
    let mut at = b;
    while at != a {
        let (e, rev, from) = prev[at.idx].unwrap();
        steps.push((e, rev));
        at = from;
    }
    steps.reverse();
    Ok(EdgePath { start: a, steps })
}

/// Number of connected components of the 1-skeleton (isolated vertices count).
pub fn connected_components(x: &CubeComplex) -> usize {
    let out = adjacency(x);
    let mut seen = vec![false; x.cell_count(0)];
    let mut components = 0;
    for v in 0..seen.len() {
        if seen[v] {
            continue;
        }
        components += 1;
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(u) = queue.pop_front() {
            for &(_, _, w) in &out[u] {
                if !seen[w.idx] {
                    seen[w.idx] = true;
                    queue.push_back(w.idx);
                }
            }
        }
    }
    components
}

/// Whether an edge path is a geodesic, i.e. realizes the distance between its
/// endpoints.
pub fn is_geodesic(x: &CubeComplex, path: &EdgePath) -> Result<bool, MetricError> {
    let end = path.end(x)?;
    Ok(distance(x, path.start, end)? == path.len())
}

/// Checks geodesity by hyperplane crossings: a path in an NPC complex is
/// geodesic exactly when no hyperplane is crossed twice. Returns the list of
/// hyperplane indices crossed more than once (empty = geodesic).
pub fn repeated_hyperplane_crossings(
    x: &CubeComplex,
    path: &EdgePath,
) -> Result<Vec<usize>, MetricError> {
    path.end(x)?;
    let hps = hyperplanes(x);
    let mut dual = vec![usize::MAX; x.cell_count(1)];
    for (h, hp) in hps.iter().enumerate() {
        for e in hp.dual_edges(x) {
            dual[e.idx] = h;
        }
    }
    let mut count: HashMap<usize, usize> = HashMap::new();
    for &(e, _) in &path.steps {
        *count.entry(dual[e.idx]).or_insert(0) += 1;
    }
    let mut repeats: Vec<usize> = count
        .into_iter()
        .filter(|&(_, n)| n > 1)
        .map(|(h, _)| h)
        .collect();
    repeats.sort_unstable();
    Ok(repeats)
}

/// A subcomplex given by a set of cells of the ambient complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subcomplex {
    pub cells: BTreeSet<CellId>,
}

impl Subcomplex {
    pub fn new(cells: impl IntoIterator<Item = CellId>) -> Self {
        Subcomplex {
            cells: cells.into_iter().collect(),
        }
    }

    /// The face closure of a cell set (always a subcomplex).
    pub fn closure(x: &CubeComplex, cells: impl IntoIterator<Item = CellId>) -> Self {
        let mut set: BTreeSet<CellId> = BTreeSet::new();
        let mut stack: Vec<CellId> = cells.into_iter().collect();
        while let Some(c) = stack.pop() {
            if !set.insert(c) {
                continue;
            }
            for coord in 0..c.dim {
                for side in 0..2u8 {
                    stack.push(x.facet(c, coord, side).cell);
                }
            }
        }
        Subcomplex { cells: set }
    }

    pub fn contains(&self, c: CellId) -> bool {
        self.cells.contains(&c)
    }

    /// Verifies closure under taking facets.
    pub fn validate(&self, x: &CubeComplex) -> Result<(), MetricError> {
        for &c in &self.cells {
            if !x.contains(c) {
                return Err(MetricError::UnknownCell(c.to_string()));
            }
            for coord in 0..c.dim {
                for side in 0..2u8 {
                    if !self.contains(x.facet(c, coord, side).cell) {
                        return Err(MetricError::NotSubcomplex(x.name(c).to_string()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Which convexity test to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConvexityMode {
    /// Fullness plus corner closure: if all edges of a cube corner at a vertex
    /// lie in the subcomplex, the cube does too. Correct for CAT(0) ambient
    /// complexes.
    CornerClosure,
    /// Fullness plus containment of every geodesic between subcomplex
    /// vertices, checked by brute-force enumeration.
    Geodesics,
}

/// Outcome of a convexity check, with a witness when the answer is no.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub mode: ConvexityMode,
    pub convex: bool,
    /// A cube all of whose boundary cells are present but which is missing
    /// itself (fullness failure), or whose corner edges are present
    /// (corner-closure failure).
    pub missing_cube: Option<CellId>,
    /// A geodesic leaving the subcomplex (geodesic mode only).
    pub escaping_geodesic: Option<EdgePath>,
}

/// Whether the subcomplex is full: every cube of the ambient complex all of
/// whose facets lie in the subcomplex is itself in the subcomplex.
fn fullness_failure(x: &CubeComplex, y: &Subcomplex) -> Option<CellId> {
    for d in 1..=x.dim() {
        for c in x.cells(d) {
            if y.contains(c) {
                continue;
            }
            let all_in = (0..d)
                .all(|coord| (0..2u8).all(|side| y.contains(x.facet(c, coord, side).cell)));
            if all_in {
                return Some(c);
            }
        }
    }
    None
}

/// A corner-closure failure: a cube with a corner at a subcomplex vertex all
/// of whose corner edges lie in the subcomplex, yet the cube is absent.
fn corner_failure(x: &CubeComplex, y: &Subcomplex) -> Option<CellId> {
    for d in 2..=x.dim() {
        for c in x.cells(d) {
            if y.contains(c) {
                continue;
            }
            for corner in 0..(1u32 << d) {
                let v = x.corner_vertex(c, corner);
                if !y.contains(v) {
                    continue;
                }
                let edges_in = (0..d).all(|i| {
                    let constraints: Vec<(usize, u8)> = (0..d)
                        .filter(|&j| j != i)
                        .map(|j| (j, ((corner >> j) & 1) as u8))
                        .collect();
                    y.contains(x.resolve_face(c, &constraints).0)
                });
                if edges_in {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Enumerates all geodesics between two vertices (lengths from BFS layers)
/// and reports one that leaves the vertex/edge set of `y`, if any.
fn escaping_geodesic(
    x: &CubeComplex,
    y: &Subcomplex,
    a: CellId,
    b: CellId,
) -> Option<EdgePath> {
    let dist_b = distances_from(x, b);
    let d = dist_b[a.idx]?;
    let out = adjacency(x);
    // DFS over the geodesic DAG: from u at distance k, steps to w with
    // dist_b[w] = k - 1.
    let mut stack: Vec<(CellId, Vec<(CellId, bool)>)> = vec![(a, Vec::new())];
    while let Some((u, steps)) = stack.pop() {
        if u == b {
            let inside = y.contains(a)
                && steps.iter().all(|&(e, _)| y.contains(e))
                && y.contains(b);
            if !inside {
                return Some(EdgePath { start: a, steps });
            }
            continue;
        }
        let k = d - steps.len();
        for &(e, rev, w) in &out[u.idx] {
            if dist_b[w.idx] == Some(k - 1) {
                let mut s = steps.clone();
                s.push((e, rev));
                stack.push((w, s));
            }
        }
    }
    None
}

/// Convexity check for a subcomplex of a connected complex.
pub fn is_convex(
    x: &CubeComplex,
    y: &Subcomplex,
    mode: ConvexityMode,
) -> Result<ConvexityReport, MetricError> {
    y.validate(x)?;
    if let Some(c) = fullness_failure(x, y) {
        return Ok(ConvexityReport {
            mode,
            convex: false,
            missing_cube: Some(c),
            escaping_geodesic: None,
        });
    }
    match mode {
        ConvexityMode::CornerClosure => {
            let missing = corner_failure(x, y);
            Ok(ConvexityReport {
                mode,
                convex: missing.is_none(),
                missing_cube: missing,
                escaping_geodesic: None,
            })
        }
        ConvexityMode::Geodesics => {
            let verts: Vec<CellId> = y.cells.iter().copied().filter(|c| c.dim == 0).collect();
            for (i, &a) in verts.iter().enumerate() {
                for &b in &verts[i + 1..] {
                    if let Some(path) = escaping_geodesic(x, y, a, b) {
                        return Ok(ConvexityReport {
                            mode,
                            convex: false,
                            missing_cube: None,
                            escaping_geodesic: Some(path),
                        });
                    }
                }
            }
            Ok(ConvexityReport {
                mode,
                convex: true,
                missing_cube: None,
                escaping_geodesic: None,
            })
        }
    }
}

/// Vertex set within distance `r` of `v` (for convex-hull experiments).
pub fn ball(x: &CubeComplex, v: CellId, r: usize) -> HashSet<CellId> {
    distances_from(x, v)
        .iter()
        .enumerate()
        .filter(|(_, d)| d.map_or(false, |d| d <= r))
        .map(|(idx, _)| CellId::new(0, idx))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{free_cube, subdivide, torus_complex};

    #[test]
    fn distances_on_a_subdivided_square() {
        // 3x3 vertex grid; opposite corners are 4 apart
        let x = subdivide(&free_cube(2).unwrap()).unwrap();
        let a = x.cell_by_name("c00@.").unwrap();
        let b = x.cell_by_name("c11@.").unwrap();
        assert_eq!(distance(&x, a, b).unwrap(), 4);
        let p = shortest_path(&x, a, b).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.end(&x).unwrap(), b);
        assert!(is_geodesic(&x, &p).unwrap());
    }

    #[test]
    fn torus_loop_is_not_geodesic() {
        let x = torus_complex(2).unwrap();
        let v = CellId::new(0, 0);
        let e = CellId::new(1, 0);
        let path = EdgePath {
            start: v,
            steps: vec![(e, false), (e, false)],
        };
        assert_eq!(path.end(&x).unwrap(), v);
        assert!(!is_geodesic(&x, &path).unwrap());
        assert_eq!(
            repeated_hyperplane_crossings(&x, &path).unwrap().len(),
            1
        );
    }

    #[test]
    fn closure_is_a_subcomplex() {
        let x = free_cube(2).unwrap();
        let top = CellId::new(2, 0);
        let y = Subcomplex::closure(&x, [top]);
        assert_eq!(y.cells.len(), x.total_cells());
        assert!(y.validate(&x).is_ok());
        let bad = Subcomplex::new([top]);
        assert!(bad.validate(&x).is_err());
    }

    #[test]
    fn full_square_is_convex_boundary_is_not_full() {
        let x = free_cube(2).unwrap();
        let all = Subcomplex::closure(&x, x.all_cells());
        for mode in [ConvexityMode::CornerClosure, ConvexityMode::Geodesics] {
            let r = is_convex(&x, &all, mode).unwrap();
            assert!(r.convex, "{mode:?}");
        }
        // boundary of the square: all cells except the 2-cell
        let boundary = Subcomplex::new(x.all_cells().filter(|c| c.dim < 2));
        let r = is_convex(&x, &boundary, ConvexityMode::CornerClosure).unwrap();
        assert!(!r.convex);
        assert_eq!(r.missing_cube, Some(CellId::new(2, 0)));
    }

    #[test]
    fn l_shape_with_full_boundary_is_not_full() {
        // 2x2 grid of squares = subdivided square; removing one square while
        // keeping its whole boundary leaves a non-full subcomplex, which both
        // modes reject immediately.
        let x = subdivide(&free_cube(2).unwrap()).unwrap();
        let dropped = x.cell_by_name("c**@uu").unwrap();
        let y = Subcomplex::new(x.all_cells().filter(|&c| c != dropped));
        for mode in [ConvexityMode::CornerClosure, ConvexityMode::Geodesics] {
            let r = is_convex(&x, &y, mode).unwrap();
            assert!(!r.convex);
            assert_eq!(r.missing_cube, Some(dropped));
        }
    }

    #[test]
    fn geodesic_mode_catches_escaping_paths() {
        // two opposite corner vertices of the grid: full (no cube has all its
        // boundary present) and trivially corner-closed, yet every geodesic
        // between them leaves the pair
        let x = subdivide(&free_cube(2).unwrap()).unwrap();
        let a = x.cell_by_name("c00@.").unwrap();
        let b = x.cell_by_name("c11@.").unwrap();
        let y = Subcomplex::new([a, b]);
        let r = is_convex(&x, &y, ConvexityMode::CornerClosure).unwrap();
        assert!(r.convex, "corner closure cannot see disconnected escapes");
        let r2 = is_convex(&x, &y, ConvexityMode::Geodesics).unwrap();
        assert!(!r2.convex);
        let path = r2.escaping_geodesic.unwrap();
        assert_eq!(path.len(), 4);
        assert!(is_geodesic(&x, &path).unwrap());
    }

    #[test]
    fn two_tori_have_two_components() {
        let t = torus_complex(2).unwrap();
        assert_eq!(connected_components(&t), 1);
    }
}
