//! Combinatorial cubical maps and their local properties.
//!
//! A cubical map sends k-cells to k-cells with a signed-permutation
//! correspondence and commutes with facet gluings. On top of validation this
//! module implements the two local checks the theory runs on: the
//! local-isometry condition (local injectivity plus reflection of square
//! corners) and the covering condition (link isomorphisms at every vertex,
//! onto the whole target).

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, CubeComplex, LinkComplex};
use crate::error::MapError;
use crate::perm::SignedPermutation;

/// A dimension-preserving cellular map between compiled complexes.
///
/// The map owns copies of its source and target; complexes are small and
/// immutable, so sharing is by clone.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicalMap {
    source: CubeComplex,
    target: CubeComplex,
    /// `assign[dim][idx]` is the image cell and coordinate correspondence.
    assign: Vec<Vec<(CellId, SignedPermutation)>>,
}

/// Why a map fails validation or one of the local checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum MapWitness {
    /// Facet commutation fails on `cell` at `(coord, side)`.
    FacetMismatch { cell: CellId, coord: usize, side: u8 },
    /// Two distinct link vertices at `vertex` (edge ends) share an image.
    NotLocallyInjective {
        vertex: CellId,
        edges: [(CellId, u8); 2],
    },
    /// Edge pair at `vertex` whose images span a square corner while the
    /// originals do not.
    MissingSquareCorner {
        vertex: CellId,
        edges: [(CellId, u8); 2],
    },
    /// The induced link map at `vertex` is not an isomorphism.
    LinkNotIsomorphic { vertex: CellId },
    /// A target cell with no preimage.
    NotSurjective { cell: CellId },
}

impl CubicalMap {
    pub fn new(
        source: CubeComplex,
        target: CubeComplex,
        assign: Vec<Vec<(CellId, SignedPermutation)>>,
    ) -> Result<Self, MapError> {
        for (d, cells) in assign.iter().enumerate() {
            if cells.len() != source.cell_count(d) {
                return Err(MapError::MissingAssignment(format!("dimension {d}")));
            }
            for (idx, (img, corr)) in cells.iter().enumerate() {
                if !target.contains(*img) {
                    return Err(MapError::DanglingCell(img.to_string()));
                }
                if img.dim != d || corr.size() != d {
                    return Err(MapError::DimensionChanged {
                        cell: CellId::new(d, idx).to_string(),
                        from: d,
                        to: img.dim,
                    });
                }
            }
        }
        if assign.len() <= source.dim() {
            return Err(MapError::MissingAssignment(format!(
                "dimension {}",
                source.dim()
            )));
        }
        Ok(CubicalMap {
            source,
            target,
            assign,
        })
    }

    pub fn identity(x: &CubeComplex) -> Self {
        let assign = (0..=x.dim())
            .map(|d| {
                x.cells(d)
                    .map(|c| (c, SignedPermutation::identity(d)))
                    .collect()
            })
            .collect();
        CubicalMap {
            source: x.clone(),
            target: x.clone(),
            assign,
        }
    }

    pub fn source(&self) -> &CubeComplex {
        &self.source
    }

    pub fn target(&self) -> &CubeComplex {
        &self.target
    }

    pub fn image(&self, c: CellId) -> (CellId, &SignedPermutation) {
        let (cell, corr) = &self.assign[c.dim][c.idx];
        (*cell, corr)
    }

    pub fn image_cell(&self, c: CellId) -> CellId {
        self.assign[c.dim][c.idx].0
    }

    /// Checks facet commutation on every cell: the image of a facet is the
    /// corresponding facet of the image.
    pub fn validate(&self) -> Result<(), MapWitness> {
        for d in 1..=self.source.dim() {
            for c in self.source.cells(d) {
                let (img, corr) = self.image(c);
                for coord in 0..d {
                    for side in 0..2u8 {
                        let src_facet = self.source.facet(c, coord, side);
                        let (f_img, f_corr) = self.image(src_facet.cell);
                        // route through the source: facet coords -> f -> f_img
                        let via_source = src_facet.corr.then(f_corr);

                        // route through the target: facet coords -> image facet
                        let (t_coord, t_side) = corr.image_side(coord, side);
                        let tgt_facet = self.target.facet(img, t_coord, t_side);
                        let mut images = Vec::with_capacity(d.saturating_sub(1));
                        for j in (0..d).filter(|&j| j != coord) {
                            let (u, f1) = corr.image(j);
                            let pos = if u > t_coord { u - 1 } else { u };
                            let (w, f2) = tgt_facet.corr.image(pos);
                            images.push((w, f1 ^ f2));
                        }
                        let via_target = SignedPermutation::new(images).unwrap();

                        if tgt_facet.cell != f_img || via_target != via_source {
                            return Err(MapWitness::FacetMismatch {
                                cell: c,
                                coord,
                                side,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Image of a link vertex (directed edge end) under the map.
    fn link_vertex_image(&self, v: (CellId, u8)) -> (CellId, u8) {
        let (e, end) = v;
        let (img, corr) = self.image(e);
        let (_, flipped_end) = corr.image_side(0, end);
        (img, flipped_end)
    }

    /// The paper's local-isometry condition: the induced map on each link's
    /// vertex set is injective, and any edge pair whose images span a square
    /// corner already spans one in the source.
    pub fn is_local_isometry(&self) -> Result<(), MapWitness> {
        self.validate()?;
        for y in self.source.cells(0) {
            let link = self.source.link(y).expect("vertex of source");
            let target_link = self
                .target
                .link(self.image_cell(y))
                .expect("vertex of target");
            let images: Vec<(CellId, u8)> = link
                .vertices
                .iter()
                .map(|&v| self.link_vertex_image(v))
                .collect();

            let target_index: HashMap<(CellId, u8), usize> = target_link
                .vertices
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, i))
                .collect();

            for a in 0..link.vertex_count() {
                for b in (a + 1)..link.vertex_count() {
                    if images[a] == images[b] {
                        return Err(MapWitness::NotLocallyInjective {
                            vertex: y,
                            edges: [link.vertices[a], link.vertices[b]],
                        });
                    }
                    let (ia, ib) = (target_index[&images[a]], target_index[&images[b]]);
                    if target_link.adjacent(ia, ib) && !link.adjacent(a, b) {
                        return Err(MapWitness::MissingSquareCorner {
                            vertex: y,
                            edges: [link.vertices[a], link.vertices[b]],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Covering check: every vertex link maps isomorphically onto the link of
    /// the image, and every target cell is hit.
    pub fn is_covering(&self) -> Result<(), MapWitness> {
        self.validate()?;
        for y in self.source.cells(0) {
            let link = self.source.link(y).expect("vertex of source");
            let target_link = self
                .target
                .link(self.image_cell(y))
                .expect("vertex of target");
            if !self.link_isomorphic(&link, &target_link) {
                return Err(MapWitness::LinkNotIsomorphic { vertex: y });
            }
        }
        let mut hit: HashSet<CellId> = HashSet::new();
        for d in 0..=self.source.dim() {
            for c in self.source.cells(d) {
                hit.insert(self.image_cell(c));
            }
        }
        for c in self.target.all_cells() {
            if !hit.contains(&c) {
                return Err(MapWitness::NotSurjective { cell: c });
            }
        }
        Ok(())
    }

    fn link_isomorphic(&self, link: &LinkComplex, target_link: &LinkComplex) -> bool {
        if link.vertex_count() != target_link.vertex_count() {
            return false;
        }
        let images: Vec<(CellId, u8)> = link
            .vertices
            .iter()
            .map(|&v| self.link_vertex_image(v))
            .collect();
        let distinct: HashSet<_> = images.iter().collect();
        if distinct.len() != images.len() {
            return false;
        }
        let target_index: HashMap<(CellId, u8), usize> = target_link
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        if !images.iter().all(|v| target_index.contains_key(v)) {
            return false;
        }
        // simplex multisets must correspond dimension by dimension
        let max_dim = link.dim().max(target_link.dim());
        for k in 1..=max_dim {
            let mut source_sets: Vec<Vec<usize>> = link
                .simplices(k)
                .iter()
                .map(|s| {
                    let mut v: Vec<usize> = s
                        .vertices
                        .iter()
                        .map(|&slot| target_index[&images[slot]])
                        .collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            let mut target_sets: Vec<Vec<usize>> = target_link
                .simplices(k)
                .iter()
                .map(|s| {
                    let mut v = s.vertices.clone();
                    v.sort_unstable();
                    v
                })
                .collect();
            source_sets.sort();
            target_sets.sort();
            if source_sets != target_sets {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::torus_presentation;

    #[test]
    fn identity_validates_and_covers() {
        let x = torus_presentation().compile().unwrap();
        let id = CubicalMap::identity(&x);
        assert!(id.validate().is_ok());
        assert!(id.is_local_isometry().is_ok());
        assert!(id.is_covering().is_ok());
    }

    #[test]
    fn broken_square_assignment_fails_validation() {
        let x = torus_presentation().compile().unwrap();
        let mut m = CubicalMap::identity(&x);
        // swap the images of the two edges: the square's facets no longer match
        m.assign[1].swap(0, 1);
        assert!(matches!(
            m.validate(),
            Err(MapWitness::FacetMismatch { .. })
        ));
    }
}
