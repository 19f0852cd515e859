//! Finite cube complexes presented by gluing data.
//!
//! A complex is described by a list of abstract cubes together with one gluing
//! per codimension-1 facet: the facet of an `n`-cube is identified with a
//! declared `(n-1)`-cube via a signed permutation of coordinates. Compiling
//! checks that iterated facet restrictions commute (the cubical identity), so
//! every face of every cube resolves to a unique declared cell. Cells carry no
//! geometry; everything downstream is combinatorial.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::ComplexError;
use crate::perm::SignedPermutation;

/// Default cap on cube dimension; corner and clique enumerations grow as 2^n.
pub const DEFAULT_DIM_CAP: usize = 6;

/// Reads `CUBICAL_DIM_CAP` from the environment, falling back to the default.
pub fn dim_cap() -> usize {
    std::env::var("CUBICAL_DIM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

/// A cell of a compiled complex: `(dimension, dense index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId {
    pub dim: usize,
    pub idx: usize,
}

impl CellId {
    pub fn new(dim: usize, idx: usize) -> Self {
        CellId { dim, idx }
    }
}

impl std::fmt::Display for CellId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.dim, self.idx)
    }
}

/// One facet identification: `(source, coord, side)` is glued to `target`
/// under `correspondence`, which maps the facet's canonical coordinates
/// (source coordinates minus `coord`, in order) to the target's coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetGluing {
    pub source: String,
    /// 0-based coordinate index.
    pub coord: usize,
    pub side: u8,
    pub target: String,
    pub correspondence: SignedPermutation,
}

/// Abstract cubes plus facet gluings; the input to [`compile`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GluingPresentation {
    /// `(id, dimension)` per cube, in declaration order.
    pub cubes: Vec<(String, usize)>,
    pub gluings: Vec<FacetGluing>,
}

impl GluingPresentation {
    pub fn compile(&self) -> Result<CubeComplex, ComplexError> {
        compile_with_cap(self, dim_cap())
    }

    pub fn compile_with_cap(&self, cap: usize) -> Result<CubeComplex, ComplexError> {
        compile_with_cap(self, cap)
    }
}

/// A facet of a cell: the glued cell and the coordinate correspondence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub cell: CellId,
    pub corr: SignedPermutation,
}

/// A compiled cube complex. Immutable after [`compile`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubeComplex {
    names: Vec<Vec<String>>,
    /// `facets[dim][idx][coord][side]`, present for every cell of dim >= 1.
    facets: Vec<Vec<Vec<[Facet; 2]>>>,
}

fn compile_with_cap(pres: &GluingPresentation, cap: usize) -> Result<CubeComplex, ComplexError> {
    let mut by_dim: Vec<Vec<String>> = Vec::new();
    let mut index: HashMap<&str, CellId> = HashMap::new();
    for (name, dim) in &pres.cubes {
        if *dim > cap {
            return Err(ComplexError::DimensionCapExceeded { dim: *dim, cap });
        }
        while by_dim.len() <= *dim {
            by_dim.push(Vec::new());
        }
        let id = CellId::new(*dim, by_dim[*dim].len());
        if index.insert(name.as_str(), id).is_some() {
            return Err(ComplexError::Malformed(format!("duplicate cube id {name}")));
        }
        by_dim[*dim].push(name.clone());
    }

    let mut facets: Vec<Vec<Vec<Option<[Option<Facet>; 2]>>>> = by_dim
        .iter()
        .enumerate()
        .map(|(d, cells)| {
            cells
                .iter()
                .map(|_| (0..d).map(|_| Some([None, None])).collect())
                .collect()
        })
        .collect();

    for g in &pres.gluings {
        let src = *index
            .get(g.source.as_str())
            .ok_or_else(|| ComplexError::UnknownCube(g.source.clone()))?;
        let dst = *index
            .get(g.target.as_str())
            .ok_or_else(|| ComplexError::UnknownCube(g.target.clone()))?;
        if src.dim == 0 || g.coord >= src.dim || g.side > 1 {
            return Err(ComplexError::Malformed(format!(
                "gluing of {} names facet (coord {}, side {}) outside its dimension {}",
                g.source, g.coord, g.side, src.dim
            )));
        }
        if dst.dim + 1 != src.dim {
            return Err(ComplexError::DimensionMismatch {
                cube: g.source.clone(),
                dim: src.dim,
                target: g.target.clone(),
                target_dim: dst.dim,
            });
        }
        if g.correspondence.size() != src.dim - 1 {
            return Err(ComplexError::BadPermutation { size: src.dim - 1 });
        }
        let slot = &mut facets[src.dim][src.idx][g.coord].as_mut().unwrap()[g.side as usize];
        if slot.is_some() {
            return Err(ComplexError::DuplicateGluing {
                cube: g.source.clone(),
                coord: g.coord,
                side: g.side,
            });
        }
        *slot = Some(Facet {
            cell: dst,
            corr: g.correspondence.clone(),
        });
    }

    // every facet of every positive-dimensional cube must be glued
    let mut table: Vec<Vec<Vec<[Facet; 2]>>> = Vec::new();
    for (d, cells) in facets.into_iter().enumerate() {
        let mut dim_cells = Vec::new();
        for (idx, coords) in cells.into_iter().enumerate() {
            let mut cell_facets = Vec::new();
            for (coord, pair) in coords.into_iter().enumerate() {
                let [a, b] = pair.unwrap();
                let name = || by_dim[d][idx].clone();
                let a = a.ok_or_else(|| ComplexError::MissingGluing {
                    cube: name(),
                    coord,
                    side: 0,
                })?;
                let b = b.ok_or_else(|| ComplexError::MissingGluing {
                    cube: name(),
                    coord,
                    side: 1,
                })?;
                cell_facets.push([a, b]);
            }
            dim_cells.push(cell_facets);
        }
        table.push(dim_cells);
    }

    let complex = CubeComplex {
        names: by_dim,
        facets: table,
    };
    complex.check_cubical_identity()?;
    Ok(complex)
}

impl CubeComplex {
    /// Cell counts per dimension, lowest first.
    pub fn counts(&self) -> Vec<usize> {
        self.facets.iter().map(|v| v.len()).collect()
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.facets.get(dim).map_or(0, |v| v.len())
    }

    pub fn dim(&self) -> usize {
        self.facets.len().saturating_sub(1)
    }

    pub fn total_cells(&self) -> usize {
        self.facets.iter().map(|v| v.len()).sum()
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cell_count(dim)).map(move |idx| CellId::new(dim, idx))
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..=self.dim()).flat_map(move |d| self.cells(d))
    }

    pub fn contains(&self, c: CellId) -> bool {
        c.idx < self.cell_count(c.dim)
    }

    pub fn name(&self, c: CellId) -> &str {
        &self.names[c.dim][c.idx]
    }

    pub fn cell_by_name(&self, name: &str) -> Option<CellId> {
        for (d, cells) in self.names.iter().enumerate() {
            if let Some(idx) = cells.iter().position(|n| n == name) {
                return Some(CellId::new(d, idx));
            }
        }
        None
    }

    pub fn facet(&self, c: CellId, coord: usize, side: u8) -> &Facet {
        &self.facets[c.dim][c.idx][coord][side as usize]
    }

    /// Resolves the face of `c` fixing the given `(coord, side)` constraints.
    ///
    /// Returns the declared cell the face is identified with and the signed
    /// permutation from the face's canonical coordinates (free coordinates of
    /// `c` in increasing order) to the cell's coordinates. Constraints are
    /// applied lowest coordinate first; the compile-time identity check makes
    /// the route irrelevant.
    pub fn resolve_face(&self, c: CellId, constraints: &[(usize, u8)]) -> (CellId, SignedPermutation) {
        let mut state: Vec<Option<(usize, bool)>> = (0..c.dim).map(|i| Some((i, false))).collect();
        let mut cur = c;
        let mut sorted: Vec<(usize, u8)> = constraints.to_vec();
        sorted.sort_unstable();
        for &(coord, side) in &sorted {
            cur = self.restrict(cur, &mut state, coord, side);
        }
        let images: Vec<(usize, bool)> = state.into_iter().flatten().collect();
        (cur, SignedPermutation::new(images).unwrap())
    }

    /// One restriction step on a face-resolution state vector.
    ///
    /// `state[orig]` holds the slot (and flip) of original coordinate `orig`
    /// in `cur`, or `None` if already fixed.
    fn restrict(
        &self,
        cur: CellId,
        state: &mut Vec<Option<(usize, bool)>>,
        orig_coord: usize,
        side: u8,
    ) -> CellId {
        let (slot, flip) = state[orig_coord].expect("coordinate fixed twice");
        let s = if flip { 1 - side } else { side };
        let f = self.facet(cur, slot, s);
        for entry in state.iter_mut() {
            if let Some((u, g)) = *entry {
                if u == slot {
                    continue;
                }
                let pos = if u > slot { u - 1 } else { u };
                let (w, h) = f.corr.image(pos);
                *entry = Some((w, g ^ h));
            }
        }
        state[orig_coord] = None;
        f.cell
    }

    /// The 0-cell identified with corner `corner` (bitmask over coordinates).
    pub fn corner_vertex(&self, c: CellId, corner: u32) -> CellId {
        if c.dim == 0 {
            return c;
        }
        let constraints: Vec<(usize, u8)> =
            (0..c.dim).map(|i| (i, ((corner >> i) & 1) as u8)).collect();
        self.resolve_face(c, &constraints).0
    }

    /// Endpoint 0-cells of a 1-cell, sides 0 and 1.
    pub fn endpoints(&self, e: CellId) -> (CellId, CellId) {
        debug_assert_eq!(e.dim, 1);
        (self.facet(e, 0, 0).cell, self.facet(e, 0, 1).cell)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// The subcomplex of all cells of dimension <= k.
    pub fn skeleton(&self, k: usize) -> CubeComplex {
        CubeComplex {
            names: self.names.iter().take(k + 1).cloned().collect(),
            facets: self.facets.iter().take(k + 1).cloned().collect(),
        }
    }

    /// Structural equality ignoring cell names.
    pub fn same_cell_structure(&self, other: &CubeComplex) -> bool {
        self.facets == other.facets
    }

    /// Exports the complex back to a presentation (canonical cell names).
    pub fn to_presentation(&self) -> GluingPresentation {
        let mut cubes = Vec::new();
        let mut gluings = Vec::new();
        for d in 0..=self.dim() {
            for c in self.cells(d) {
                cubes.push((self.name(c).to_string(), d));
                for coord in 0..d {
                    for side in 0..2u8 {
                        let f = self.facet(c, coord, side);
                        gluings.push(FacetGluing {
                            source: self.name(c).to_string(),
                            coord,
                            side,
                            target: self.name(f.cell).to_string(),
                            correspondence: f.corr.clone(),
                        });
                    }
                }
            }
        }
        GluingPresentation { cubes, gluings }
    }

    /// Verifies that restricting coordinate `i` then `j` agrees with the
    /// opposite order, for every cube and every coordinate pair.
    fn check_cubical_identity(&self) -> Result<(), ComplexError> {
        for d in 2..=self.dim() {
            for c in self.cells(d) {
                for i in 0..d {
                    for j in (i + 1)..d {
                        for si in 0..2u8 {
                            for sj in 0..2u8 {
                                let a = self.two_step(c, i, si, j, sj);
                                let b = self.two_step(c, j, sj, i, si);
                                if a != b {
                                    return Err(ComplexError::InconsistentCorners {
                                        cube: self.name(c).to_string(),
                                        i,
                                        j,
                                        side_i: si,
                                        side_j: sj,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn two_step(
        &self,
        c: CellId,
        first: usize,
        side_first: u8,
        second: usize,
        side_second: u8,
    ) -> (CellId, Vec<(usize, bool)>) {
        let mut state: Vec<Option<(usize, bool)>> = (0..c.dim).map(|i| Some((i, false))).collect();
        let mut cur = c;
        cur = self.restrict(cur, &mut state, first, side_first);
        cur = self.restrict(cur, &mut state, second, side_second);
        (cur, state.into_iter().flatten().collect())
    }

    /// The combinatorial link of a 0-cell.
    ///
    /// Link vertices are directed-edge ends at `v`; the k-simplices are the
    /// corners of (k+1)-cubes identified to `v`, each carrying its ordered
    /// list of vertex slots. Slots may repeat: that is exactly a witness of a
    /// non-simplicial link.
    pub fn link(&self, v: CellId) -> Result<LinkComplex, ComplexError> {
        if v.dim != 0 || !self.contains(v) {
            return Err(ComplexError::UnknownCell(v.to_string()));
        }
        let mut vertices = Vec::new();
        let mut vertex_index: HashMap<(CellId, u8), usize> = HashMap::new();
        for e in self.cells(1) {
            let (a, b) = self.endpoints(e);
            for (end, cell) in [(0u8, a), (1u8, b)] {
                if cell == v {
                    vertex_index.insert((e, end), vertices.len());
                    vertices.push((e, end));
                }
            }
        }

        let mut simplices: Vec<Vec<LinkSimplex>> = vec![Vec::new(); self.dim().max(1)];
        for d in 2..=self.dim() {
            for c in self.cells(d) {
                for corner in 0..(1u32 << d) {
                    if self.corner_vertex(c, corner) != v {
                        continue;
                    }
                    let mut slots = Vec::with_capacity(d);
                    for i in 0..d {
                        let constraints: Vec<(usize, u8)> = (0..d)
                            .filter(|&j| j != i)
                            .map(|j| (j, ((corner >> j) & 1) as u8))
                            .collect();
                        let (e, sigma) = self.resolve_face(c, &constraints);
                        let bit = ((corner >> i) & 1) as u8;
                        let (_, flip) = sigma.image(0);
                        let end = if flip { 1 - bit } else { bit };
                        slots.push(vertex_index[&(e, end)]);
                    }
                    simplices[d - 2].push(LinkSimplex {
                        cube: c,
                        corner,
                        vertices: slots,
                    });
                }
            }
        }

        Ok(LinkComplex {
            base: v,
            vertices,
            simplices,
        })
    }
}

/// A k-simplex of a link: a corner of a (k+1)-cube at the base vertex,
/// with its ordered vertex slots (indices into [`LinkComplex::vertices`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSimplex {
    pub cube: CellId,
    pub corner: u32,
    pub vertices: Vec<usize>,
}

/// The combinatorial link of a vertex. Not assumed simplicial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkComplex {
    pub base: CellId,
    /// Directed-edge ends at the base vertex: `(1-cell, end)`.
    pub vertices: Vec<(CellId, u8)>,
    /// `simplices[k-1]` holds the k-simplices, k >= 1.
    simplices: Vec<Vec<LinkSimplex>>,
}

impl LinkComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Dimension of the largest simplex present (0 for an edgeless link).
    pub fn dim(&self) -> usize {
        self.simplices
            .iter()
            .enumerate()
            .rev()
            .find(|(_, s)| !s.is_empty())
            .map_or(0, |(i, _)| i + 1)
    }

    /// The k-simplices, k >= 1.
    pub fn simplices(&self, k: usize) -> &[LinkSimplex] {
        assert!(k >= 1);
        self.simplices.get(k - 1).map_or(&[], |v| v.as_slice())
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = (usize, &LinkSimplex)> {
        self.simplices
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.iter().map(move |s| (i + 1, s)))
    }

    pub fn total_simplex_count(&self) -> usize {
        self.simplices.iter().map(|v| v.len()).sum()
    }

    /// Edges of the link 1-skeleton as unordered slot pairs (with multiplicity;
    /// a pair `(u, u)` is a loop).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices(1)
            .iter()
            .map(|s| {
                let (a, b) = (s.vertices[0], s.vertices[1]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// Adjacency in the link 1-skeleton (distinct slots joined by a 1-simplex).
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v
            && self
                .edges()
                .iter()
                .any(|&(a, b)| (a, b) == (u.min(v), u.max(v)))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::perm::SignedPermutation;

    /// One square, opposite sides identified: the torus of the figures.
    pub(crate) fn torus_presentation() -> GluingPresentation {
        let id1 = SignedPermutation::identity(1);
        let id0 = SignedPermutation::identity(0);
        GluingPresentation {
            cubes: vec![
                ("s".into(), 2),
                ("a".into(), 1),
                ("b".into(), 1),
                ("v".into(), 0),
            ],
            gluings: vec![
                FacetGluing {
                    source: "s".into(),
                    coord: 0,
                    side: 0,
                    target: "a".into(),
                    correspondence: id1.clone(),
                },
                FacetGluing {
                    source: "s".into(),
                    coord: 0,
                    side: 1,
                    target: "a".into(),
                    correspondence: id1.clone(),
                },
                FacetGluing {
                    source: "s".into(),
                    coord: 1,
                    side: 0,
                    target: "b".into(),
                    correspondence: id1.clone(),
                },
                FacetGluing {
                    source: "s".into(),
                    coord: 1,
                    side: 1,
                    target: "b".into(),
                    correspondence: id1,
                },
                FacetGluing {
                    source: "a".into(),
                    coord: 0,
                    side: 0,
                    target: "v".into(),
                    correspondence: id0.clone(),
                },
                FacetGluing {
                    source: "a".into(),
                    coord: 0,
                    side: 1,
                    target: "v".into(),
                    correspondence: id0.clone(),
                },
                FacetGluing {
                    source: "b".into(),
                    coord: 0,
                    side: 0,
                    target: "v".into(),
                    correspondence: id0.clone(),
                },
                FacetGluing {
                    source: "b".into(),
                    coord: 0,
                    side: 1,
                    target: "v".into(),
                    correspondence: id0,
                },
            ],
        }
    }

    #[test]
    fn torus_compiles_to_expected_counts() {
        let x = torus_presentation().compile().unwrap();
        assert_eq!(x.counts(), vec![1, 2, 1]);
        assert_eq!(x.euler_characteristic(), 0);
    }

    #[test]
    fn unglued_facet_is_an_error() {
        let mut p = torus_presentation();
        p.gluings.remove(1); // drop (s, coord 0, side 1)
        match p.compile() {
            Err(ComplexError::MissingGluing { cube, coord, side }) => {
                assert_eq!(cube, "s");
                assert_eq!((coord, side), (0, 1));
            }
            other => panic!("expected MissingGluing, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let mut p = torus_presentation();
        p.gluings[0].target = "v".into();
        assert!(matches!(
            p.compile(),
            Err(ComplexError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn torus_link_is_a_4_cycle() {
        let x = torus_presentation().compile().unwrap();
        let v = CellId::new(0, 0);
        let link = x.link(v).unwrap();
        assert_eq!(link.vertex_count(), 4);
        assert_eq!(link.simplices(1).len(), 4);
        assert_eq!(link.total_simplex_count(), 4);
        // each link vertex has exactly two distinct neighbors: a 4-cycle
        for u in 0..4 {
            let deg = link
                .edges()
                .iter()
                .filter(|&&(a, b)| a == u || b == u)
                .count();
            assert_eq!(deg, 2);
        }
    }

    #[test]
    fn isolated_vertex_has_empty_link() {
        let p = GluingPresentation {
            cubes: vec![("v".into(), 0)],
            gluings: vec![],
        };
        let x = p.compile().unwrap();
        let link = x.link(CellId::new(0, 0)).unwrap();
        assert_eq!(link.vertex_count(), 0);
        assert_eq!(link.total_simplex_count(), 0);
    }

    #[test]
    fn skeleton_of_torus() {
        let x = torus_presentation().compile().unwrap();
        let sk1 = x.skeleton(1);
        assert_eq!(sk1.counts(), vec![1, 2]);
        let sk0 = x.skeleton(0);
        assert_eq!(sk0.counts(), vec![1]);
        // k >= dim returns the complex itself
        assert!(x.skeleton(5).same_cell_structure(&x));
    }

    #[test]
    fn resolve_face_commutes_on_torus() {
        let x = torus_presentation().compile().unwrap();
        let s = CellId::new(2, 0);
        let (c1, p1) = x.resolve_face(s, &[(0, 0), (1, 1)]);
        let (c2, p2) = x.resolve_face(s, &[(1, 1), (0, 0)]);
        assert_eq!(c1, c2);
        assert_eq!(p1, p2);
        assert_eq!(c1.dim, 0);
    }

    #[test]
    fn roundtrip_through_presentation() {
        let x = torus_presentation().compile().unwrap();
        let y = x.to_presentation().compile().unwrap();
        assert!(x.same_cell_structure(&y));
    }
}
