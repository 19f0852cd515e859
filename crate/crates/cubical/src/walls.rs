//! Finite wall spaces and the Sageev dual construction.
//!
//! A wall on a finite point set is an ordered bipartition into two nonempty
//! halves. Vertices of the dual complex are orientations — one chosen half
//! per wall, pairwise intersecting; edges flip a single wall, and an n-cube
//! is filled whenever its (n−1)-skeleton is present, which for this model
//! means all 2^n orientations obtained by freeing n walls are vertices.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, CubeComplex, FacetGluing, GluingPresentation};
use crate::error::WallError;
use crate::perm::SignedPermutation;

/// Default cap on the number of walls (vertex enumeration is exponential).
pub const DEFAULT_WALL_CAP: usize = 16;

/// Reads `CUBICAL_WALL_CAP` from the environment, falling back to the default.
pub fn wall_cap() -> usize {
    std::env::var("CUBICAL_WALL_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_WALL_CAP)
}

/// A wall: an ordered bipartition of the point set, stored as bitmasks over
/// the point indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    pub left: u64,
    pub right: u64,
}

/// A finite wall space: named points and a list of walls.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallSpace {
    pub points: Vec<String>,
    pub walls: Vec<Wall>,
}

/// A validation failure, with the offending wall and point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WallWitness {
    /// A point in both halves or in neither.
    NotAPartition { wall: usize, point: usize },
    /// A wall with an empty half separates nothing.
    EmptyHalf { wall: usize, side: u8 },
}

impl WallSpace {
    pub fn new(points: Vec<String>) -> Self {
        assert!(points.len() <= 64, "point sets are limited to 64 elements");
        WallSpace {
            points,
            walls: Vec::new(),
        }
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    fn universe(&self) -> u64 {
        if self.points.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.points.len()) - 1
        }
    }

    /// Adds the wall splitting `left` (point indices) from the rest.
    pub fn add_wall(&mut self, left: impl IntoIterator<Item = usize>) {
        let mut mask = 0u64;
        for p in left {
            assert!(p < self.points.len());
            mask |= 1 << p;
        }
        self.walls.push(Wall {
            left: mask,
            right: self.universe() & !mask,
        });
    }

    /// Checks the partition conditions of every wall.
    pub fn validate(&self) -> Result<(), WallWitness> {
        let all = self.universe();
        for (i, w) in self.walls.iter().enumerate() {
            if w.left & w.right != 0 {
                let point = (w.left & w.right).trailing_zeros() as usize;
                return Err(WallWitness::NotAPartition { wall: i, point });
            }
            if w.left | w.right != all {
                let point = (all & !(w.left | w.right)).trailing_zeros() as usize;
                return Err(WallWitness::NotAPartition { wall: i, point });
            }
            if w.left == 0 {
                return Err(WallWitness::EmptyHalf { wall: i, side: 0 });
            }
            if w.right == 0 {
                return Err(WallWitness::EmptyHalf { wall: i, side: 1 });
            }
        }
        Ok(())
    }

    /// Whether walls `i` and `j` cross: all four quadrant intersections are
    /// nonempty.
    pub fn cross(&self, i: usize, j: usize) -> Result<bool, WallError> {
        for k in [i, j] {
            if k >= self.walls.len() {
                return Err(WallError::IndexOutOfRange(k));
            }
        }
        let (a, b) = (self.walls[i], self.walls[j]);
        Ok(a.left & b.left != 0
            && a.left & b.right != 0
            && a.right & b.left != 0
            && a.right & b.right != 0)
    }

    /// Number of walls separating `p` from `q`.
    pub fn separation_count(&self, p: usize, q: usize) -> Result<usize, WallError> {
        for k in [p, q] {
            if k >= self.points.len() {
                return Err(WallError::UnknownPoint(k.to_string()));
            }
        }
        Ok(self
            .walls
            .iter()
            .filter(|w| (w.left >> p & 1) != (w.left >> q & 1))
            .count())
    }

    /// The wall list with duplicate bipartitions removed (both orderings
    /// count as the same wall); returns the deduplicated space and the number
    /// of duplicates dropped.
    pub fn deduplicated(&self) -> (WallSpace, usize) {
        let mut seen: BTreeSet<(u64, u64)> = BTreeSet::new();
        let mut walls = Vec::new();
        for w in &self.walls {
            let key = (w.left.min(w.right), w.left.max(w.right));
            if seen.insert(key) {
                walls.push(*w);
            }
        }
        let dropped = self.walls.len() - walls.len();
        (
            WallSpace {
                points: self.points.clone(),
                walls,
            },
            dropped,
        )
    }
}

/// An orientation: the chosen half per wall, as a bitmask (`bit i` set = the
/// right half of wall `i`).
pub type Orientation = u64;

/// The Sageev dual of a wall space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualComplex {
    pub complex: CubeComplex,
    /// Orientation of each dual vertex, indexed by vertex id.
    pub orientations: Vec<Orientation>,
    /// `wall_of_hyperplane[h] = wall index` for each hyperplane of the dual,
    /// indexed in [`crate::hyperplanes::hyperplanes`] order.
    pub wall_of_hyperplane: Vec<usize>,
    /// Number of duplicate walls dropped before construction.
    pub duplicates_dropped: usize,
}

impl DualComplex {
    pub fn vertex_of(&self, o: Orientation) -> Option<CellId> {
        self.orientations
            .iter()
            .position(|&p| p == o)
            .map(|idx| CellId::new(0, idx))
    }
}

fn half(w: &Wall, bit: u64) -> u64 {
    if bit == 0 {
        w.left
    } else {
        w.right
    }
}

/// Builds the Sageev dual complex.
pub fn dual(ws: &WallSpace) -> Result<DualComplex, WallError> {
    if let Err(w) = ws.validate() {
        return Err(WallError::InvalidWall(
            match w {
                WallWitness::NotAPartition { wall, .. } => wall,
                WallWitness::EmptyHalf { wall, .. } => wall,
            },
            format!("{w:?}"),
        ));
    }
    let (ws, duplicates_dropped) = ws.deduplicated();
    let cap = wall_cap();
    if ws.walls.len() > cap {
        return Err(WallError::WallCapExceeded {
            walls: ws.walls.len(),
            cap,
        });
    }
    let n = ws.walls.len();

    // enumerate consistent orientations by backtracking wall by wall
    let mut vertices: Vec<Orientation> = Vec::new();
    let mut stack: Vec<(usize, Orientation)> = vec![(0, 0)];
    while let Some((k, o)) = stack.pop() {
        if k == n {
            vertices.push(o);
            continue;
        }
        'bits: for bit in [0u64, 1] {
            let h = half(&ws.walls[k], bit);
            for j in 0..k {
                if half(&ws.walls[j], o >> j & 1) & h == 0 {
                    continue 'bits;
                }
            }
            stack.push((k + 1, o | (bit << k)));
        }
    }
    vertices.sort_unstable();
    let vertex_index: HashMap<Orientation, usize> =
        vertices.iter().enumerate().map(|(i, &o)| (o, i)).collect();

    // cubes: (base orientation with the free bits cleared to their canonical
    // value, set F of free walls) such that every combination is a vertex.
    // Canonical base: free bits set to 0. Enumerate by growing F.
    let mut cubes_by_dim: Vec<Vec<(Orientation, u64)>> = vec![Vec::new()];
    cubes_by_dim[0] = vertices.iter().map(|&o| (o, 0u64)).collect();
    loop {
        let last = cubes_by_dim.last().unwrap();
        let mut next: BTreeSet<(Orientation, u64)> = BTreeSet::new();
        for &(base, free) in last {
            let max_free = 64 - free.leading_zeros() as usize;
            let start = if free == 0 { 0 } else { max_free };
            for w in start..n {
                if free >> w & 1 == 1 || base >> w & 1 == 1 {
                    continue;
                }
                let nf = free | (1 << w);
                // all 2^{|nf|} combinations must be vertices; it suffices to
                // check the new combinations (with bit w set), since the rest
                // came from `last`
                let bits: Vec<usize> = (0..n).filter(|&b| nf >> b & 1 == 1).collect();
                let ok = (0..(1u64 << (bits.len() - 1))).all(|m| {
                    let mut o = base | (1 << w);
                    for (t, &b) in bits.iter().filter(|&&b| b != w).enumerate() {
                        if m >> t & 1 == 1 {
                            o |= 1 << b;
                        }
                    }
                    vertex_index.contains_key(&o)
                });
                if ok {
                    next.insert((base, nf));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        cubes_by_dim.push(next.into_iter().collect());
    }

    // names: dimension 0 uses the orientation bits; higher cells base+free
    let orient_name = |o: Orientation| -> String {
        (0..n)
            .map(|i| if o >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    };
    let cube_name = |base: Orientation, free: u64| -> String {
        if free == 0 {
            format!("v{}", orient_name(base))
        } else {
            let f: Vec<String> = (0..n)
                .filter(|&b| free >> b & 1 == 1)
                .map(|b| format!("W{b}"))
                .collect();
            format!("c{}+{}", orient_name(base), f.join("+"))
        }
    };

    let mut cubes: Vec<(String, usize)> = Vec::new();
    let mut gluings: Vec<FacetGluing> = Vec::new();
    for (d, cells) in cubes_by_dim.iter().enumerate() {
        for &(base, free) in cells {
            cubes.push((cube_name(base, free), d));
            let bits: Vec<usize> = (0..n).filter(|&b| free >> b & 1 == 1).collect();
            for (coord, &b) in bits.iter().enumerate() {
                for side in 0..2u8 {
                    let fbase = base | ((side as u64) << b);
                    gluings.push(FacetGluing {
                        source: cube_name(base, free),
                        coord,
                        side,
                        target: cube_name(fbase, free & !(1 << b)),
                        correspondence: SignedPermutation::identity(d - 1),
                    });
                }
            }
        }
    }
    let complex = GluingPresentation { cubes, gluings }
        .compile()
        .map_err(|e| WallError::Malformed(e.to_string()))?;

    // wall <-> hyperplane table: each edge (1-cell) flips exactly one wall;
    // hyperplanes inherit it
    let hps = crate::hyperplanes::hyperplanes(&complex);
    let mut wall_of_hyperplane = Vec::with_capacity(hps.len());
    for hp in &hps {
        let mut walls_of: BTreeSet<usize> = BTreeSet::new();
        for e in hp.dual_edges(&complex) {
            // edge name c<base>+W<b>
            let nm = complex.name(e);
            let b: usize = nm.rsplit_once("+W").unwrap().1.parse().unwrap();
            walls_of.insert(b);
        }
        debug_assert_eq!(walls_of.len(), 1, "hyperplane spans one wall");
        wall_of_hyperplane.push(*walls_of.iter().next().unwrap());
    }

    // connectivity is a theorem for finite wall spaces; assert it
    debug_assert_eq!(crate::metric::connected_components(&complex), 1);

    Ok(DualComplex {
        complex,
        orientations: vertices,
        wall_of_hyperplane,
        duplicates_dropped,
    })
}

/// The orientation choosing, for each wall, the half containing `x`, and its
/// vertex in the dual.
pub fn principal_vertex(ws: &WallSpace, d: &DualComplex, x: usize) -> Result<CellId, WallError> {
    if x >= ws.points.len() {
        return Err(WallError::UnknownPoint(x.to_string()));
    }
    let (ws, _) = ws.deduplicated();
    let mut o: Orientation = 0;
    for (i, w) in ws.walls.iter().enumerate() {
        if w.right >> x & 1 == 1 {
            o |= 1 << i;
        }
    }
    d.vertex_of(o)
        .ok_or_else(|| WallError::Malformed("principal orientation is not a vertex".into()))
}

/// The automorphism of the dual induced by a wall-preserving permutation of
/// the points, as the permutation of dual vertex indices.
pub fn induced_automorphism(
    ws: &WallSpace,
    d: &DualComplex,
    pi: &[usize],
) -> Result<Vec<usize>, WallError> {
    let n = ws.points.len();
    if pi.len() != n {
        return Err(WallError::Malformed(format!(
            "permutation has length {}, expected {n}",
            pi.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in pi {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(WallError::Malformed(
                "not a permutation of the point set".into(),
            ));
        }
    }
    let (ws, _) = ws.deduplicated();
    let apply = |mask: u64| -> u64 {
        let mut out = 0u64;
        for p in 0..n {
            if mask >> p & 1 == 1 {
                out |= 1 << pi[p];
            }
        }
        out
    };
    // image of each wall: the wall whose bipartition matches the pushed pair
    // (in either order, recording whether the halves swapped)
    let mut wall_image: Vec<(usize, bool)> = Vec::with_capacity(ws.walls.len());
    for (i, w) in ws.walls.iter().enumerate() {
        let (l, r) = (apply(w.left), apply(w.right));
        let img = ws.walls.iter().position(|u| u.left == l && u.right == r);
        let swapped = ws.walls.iter().position(|u| u.left == r && u.right == l);
        match (img, swapped) {
            (Some(j), _) => wall_image.push((j, false)),
            (None, Some(j)) => wall_image.push((j, true)),
            (None, None) => return Err(WallError::NotWallPreserving(i)),
        }
    }
    let mut vertex_image = Vec::with_capacity(d.orientations.len());
    for &o in &d.orientations {
        let mut img: Orientation = 0;
        for (i, &(j, swapped)) in wall_image.iter().enumerate() {
            let bit = (o >> i & 1) ^ u64::from(swapped);
            img |= bit << j;
        }
        let idx = d
            .orientations
            .iter()
            .position(|&p| p == img)
            .ok_or_else(|| WallError::Malformed("image orientation is not a vertex".into()))?;
        vertex_image.push(idx);
    }
    Ok(vertex_image)
}

/// A convenience builder for the dihedral-group wall space on 2n chamber
/// points with n diameter walls.
pub fn dihedral_wall_space(n: usize) -> WallSpace {
    let mut ws = WallSpace::new((0..2 * n).map(|i| format!("c{i}")).collect());
    for k in 0..n {
        ws.add_wall((0..n).map(|t| (k + t) % (2 * n)));
    }
    ws
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperplanes::{hyperplanes, is_special};
    use crate::metric::distance;

    fn line3() -> WallSpace {
        // 3 points on a line, 2 parallel (non-crossing) walls
        let mut ws = WallSpace::new(vec!["p".into(), "q".into(), "r".into()]);
        ws.add_wall([0]);
        ws.add_wall([0, 1]);
        ws
    }

    fn three_crossing() -> WallSpace {
        // 3 concurrent lines, 6 sector points, walls split 3/3
        let mut ws = WallSpace::new((0..6).map(|i| format!("s{i}")).collect());
        for k in 0..3 {
            ws.add_wall((0..3).map(|t| (k + t) % 6));
        }
        ws
    }

    #[test]
    fn validation_catches_bad_walls() {
        let mut ws = WallSpace::new(vec!["a".into(), "b".into()]);
        ws.add_wall([0]);
        assert!(ws.validate().is_ok());
        ws.walls.push(Wall { left: 0b11, right: 0b10 });
        assert!(matches!(
            ws.validate(),
            Err(WallWitness::NotAPartition { wall: 1, point: 1 })
        ));
        ws.walls[1] = Wall { left: 0b11, right: 0 };
        assert!(matches!(
            ws.validate(),
            Err(WallWitness::EmptyHalf { wall: 1, side: 1 })
        ));
        assert!(WallSpace::new(vec!["a".into()]).validate().is_ok());
    }

    #[test]
    fn crossing_on_small_configurations() {
        let mut nested = WallSpace::new((0..4).map(|i| format!("p{i}")).collect());
        nested.add_wall([0]);
        nested.add_wall([0, 1]);
        assert!(!nested.cross(0, 1).unwrap());
        assert!(nested.cross(0, 2).is_err());

        let d3 = dihedral_wall_space(3);
        assert!(d3.validate().is_ok());
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(d3.cross(i, j).unwrap());
            }
        }

        let mut dup = WallSpace::new((0..4).map(|i| format!("p{i}")).collect());
        dup.add_wall([0, 1]);
        dup.add_wall([0, 1]);
        assert!(!dup.cross(0, 1).unwrap());
    }

    #[test]
    fn separation_counts_in_dihedral_space() {
        let d3 = dihedral_wall_space(3);
        assert_eq!(d3.separation_count(2, 2).unwrap(), 0);
        assert_eq!(d3.separation_count(0, 1).unwrap(), 1);
        assert_eq!(d3.separation_count(0, 3).unwrap(), 3);
    }

    #[test]
    fn dual_of_nested_walls_is_a_path() {
        let d = dual(&line3()).unwrap();
        assert_eq!(d.complex.counts(), vec![3, 2]);
        assert_eq!(d.complex.euler_characteristic(), 1); // a tree
        assert_eq!(d.wall_of_hyperplane.len(), 2);
    }

    #[test]
    fn dual_of_three_crossing_walls_is_a_3_cube() {
        let d = dual(&three_crossing()).unwrap();
        assert_eq!(d.complex.counts(), vec![8, 12, 6, 1]);
        let d3 = dual(&dihedral_wall_space(3)).unwrap();
        assert_eq!(d3.complex.counts(), vec![8, 12, 6, 1]);
    }

    #[test]
    fn principal_vertices_of_dihedral_space() {
        let ws = dihedral_wall_space(3);
        let d = dual(&ws).unwrap();
        let principal: BTreeSet<CellId> = (0..6)
            .map(|x| principal_vertex(&ws, &d, x).unwrap())
            .collect();
        assert_eq!(principal.len(), 6);
        assert_eq!(d.complex.cell_count(0), 8);
    }

    #[test]
    fn distances_match_separation_counts() {
        for ws in [line3(), three_crossing(), dihedral_wall_space(3)] {
            let d = dual(&ws).unwrap();
            for p in 0..ws.points.len() {
                for q in 0..ws.points.len() {
                    let vp = principal_vertex(&ws, &d, p).unwrap();
                    let vq = principal_vertex(&ws, &d, q).unwrap();
                    assert_eq!(
                        distance(&d.complex, vp, vq).unwrap(),
                        ws.separation_count(p, q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn duals_are_npc_and_special() {
        for ws in [line3(), three_crossing(), dihedral_wall_space(3)] {
            let d = dual(&ws).unwrap();
            assert!(crate::curvature::is_npc(&d.complex).npc);
            assert!(is_special(&d.complex).unwrap().is_special());
            assert_eq!(
                hyperplanes(&d.complex).len(),
                d.wall_of_hyperplane.len()
            );
        }
    }

    #[test]
    fn duplicate_walls_are_dropped() {
        let mut ws = line3();
        ws.walls.push(ws.walls[0]);
        let d = dual(&ws).unwrap();
        assert_eq!(d.duplicates_dropped, 1);
        assert_eq!(d.complex.counts(), vec![3, 2]);
    }

    #[test]
    fn rotation_induces_an_order_three_automorphism() {
        let ws = dihedral_wall_space(3);
        let d = dual(&ws).unwrap();
        // rotate chambers by two steps (120 degrees)
        let pi: Vec<usize> = (0..6).map(|i| (i + 2) % 6).collect();
        let a = induced_automorphism(&ws, &d, &pi).unwrap();
        // order 3 and fixed-point structure: permutes the 6 principal
        // vertices in two 3-cycles, fixes the 2 non-principal ones
        let mut twice = vec![0; a.len()];
        let mut thrice = vec![0; a.len()];
        for v in 0..a.len() {
            twice[v] = a[a[v]];
        }
        for v in 0..a.len() {
            thrice[v] = a[twice[v]];
        }
        assert!(thrice.iter().enumerate().all(|(v, &w)| v == w));
        assert_ne!(a, (0..a.len()).collect::<Vec<_>>());
        assert_eq!(a.iter().enumerate().filter(|&(v, &w)| v == w).count(), 2);

        // edges are preserved
        for e in d.complex.cells(1) {
            let (u, w) = d.complex.endpoints(e);
            let du = distance(&d.complex, CellId::new(0, a[u.idx]), CellId::new(0, a[w.idx]));
            assert_eq!(du.unwrap(), 1);
        }
    }

    #[test]
    fn non_preserving_permutation_is_rejected() {
        let ws = dihedral_wall_space(3);
        let d = dual(&ws).unwrap();
        let pi = vec![1, 0, 2, 3, 4, 5];
        assert!(matches!(
            induced_automorphism(&ws, &d, &pi),
            Err(WallError::NotWallPreserving(_))
        ));
    }
}
