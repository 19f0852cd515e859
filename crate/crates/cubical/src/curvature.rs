//! The combinatorial nonpositive-curvature test: every vertex link must be a
//! flag simplicial complex.
//!
//! A link is simplicial when no simplex repeats a vertex or duplicates
//! another simplex on the same vertex set, and flag when every clique in its
//! 1-skeleton spans a simplex. In dimension 2 the flag condition reduces to
//! the 1-skeleton having no cycles shorter than 4, which is cross-checked via
//! girth.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, CubeComplex, LinkComplex};

/// Why a link fails to be simplicial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimplicialityFailure {
    /// A simplex visiting the same link vertex twice (e.g. the corner of a
    /// square both of whose edges at the corner are the same edge-end).
    RepeatedVertex { cube: CellId, corner: u32 },
    /// Two distinct simplices on the same vertex set.
    DoubledSimplex {
        cubes: [CellId; 2],
        corners: [u32; 2],
    },
}

/// Why a simplicial link fails to be flag: a clique in the 1-skeleton that
/// spans no simplex. Size-2 cliques cannot occur (an edge is a 1-simplex), so
/// witnesses have >= 3 vertices; a 3-vertex witness is a short cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagFailure {
    pub clique: Vec<usize>,
}

/// The NPC verdict for one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    pub vertex: CellId,
    pub simplicial: Option<SimplicialityFailure>,
    pub flag: Option<FlagFailure>,
}

impl VertexReport {
    pub fn ok(&self) -> bool {
        self.simplicial.is_none() && self.flag.is_none()
    }
}

/// The NPC verdict for a complex: per-vertex reports plus the summary bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpcReport {
    pub npc: bool,
    pub failures: Vec<VertexReport>,
}

/// Finds a simpliciality failure in a link, if any.
pub fn simpliciality_failure(link: &LinkComplex) -> Option<SimplicialityFailure> {
    for (_, s) in link.all_simplices() {
        let distinct: BTreeSet<usize> = s.vertices.iter().copied().collect();
        if distinct.len() != s.vertices.len() {
            return Some(SimplicialityFailure::RepeatedVertex {
                cube: s.cube,
                corner: s.corner,
            });
        }
    }
    for k in 1..=link.dim() {
        let sims = link.simplices(k);
        for (i, a) in sims.iter().enumerate() {
            let sa: BTreeSet<usize> = a.vertices.iter().copied().collect();
            for b in &sims[i + 1..] {
                let sb: BTreeSet<usize> = b.vertices.iter().copied().collect();
                if sa == sb {
                    return Some(SimplicialityFailure::DoubledSimplex {
                        cubes: [a.cube, b.cube],
                        corners: [a.corner, b.corner],
                    });
                }
            }
        }
    }
    None
}

/// Finds a clique of the 1-skeleton spanning no simplex, if any. Assumes the
/// link is simplicial.
pub fn flag_failure(link: &LinkComplex) -> Option<FlagFailure> {
    let n = link.vertex_count();
    let filled: Vec<BTreeSet<BTreeSet<usize>>> = (0..=link.dim())
        .map(|k| {
            if k == 0 {
                (0..n).map(|v| BTreeSet::from([v])).collect()
            } else {
                link.simplices(k)
                    .iter()
                    .map(|s| s.vertices.iter().copied().collect())
                    .collect()
            }
        })
        .collect();
    // grow cliques by size; a minimal non-filled clique has all proper
    // subsets filled, so it suffices to extend filled cliques by one vertex
    let mut current: Vec<BTreeSet<usize>> = filled.get(1).map_or_else(Vec::new, |s| {
        s.iter().cloned().collect()
    });
    let mut size = 2;
    while !current.is_empty() {
        let mut next = Vec::new();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for clique in &current {
            let &last = clique.iter().next_back().unwrap();
            for v in (last + 1)..n {
                if clique.iter().all(|&u| link.adjacent(u, v)) {
                    let mut bigger = clique.clone();
                    bigger.insert(v);
                    if !seen.insert(bigger.clone()) {
                        continue;
                    }
                    let is_filled = filled
                        .get(size)
                        .map_or(false, |f| f.contains(&bigger));
                    if !is_filled {
                        return Some(FlagFailure {
                            clique: bigger.into_iter().collect(),
                        });
                    }
                    next.push(bigger);
                }
            }
        }
        current = next;
        size += 1;
    }
    None
}

/// Length of a shortest cycle in the link 1-skeleton, if any. Loops count as
/// 1-cycles and doubled edges as 2-cycles.
pub fn link_girth(link: &LinkComplex) -> Option<usize> {
    let edges = link.edges();
    if edges.iter().any(|&(a, b)| a == b) {
        return Some(1);
    }
    let mut simple: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &e in &edges {
        if !simple.insert(e) {
            return Some(2);
        }
    }
    let n = link.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &simple {
        adj[a].push(b);
        adj[b].push(a);
    }
    // BFS from every vertex; a non-tree edge closing at depths d1, d2 gives a
    // cycle of length d1 + d2 + 1
    let mut best: Option<usize> = None;
    for start in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let cycle = dist[u] + dist[w] + 1;
                    if best.map_or(true, |b| cycle < b) {
                        best = Some(cycle);
                    }
                }
            }
        }
    }
    best
}

/// Checks the NPC condition vertex by vertex, collecting every failure.
pub fn is_npc(x: &CubeComplex) -> NpcReport {
    let mut failures = Vec::new();
    for v in x.cells(0) {
        let link = x.link(v).expect("vertex of x");
        let simplicial = simpliciality_failure(&link);
        let flag = if simplicial.is_none() {
            flag_failure(&link)
        } else {
            None
        };
        if simplicial.is_some() || flag.is_some() {
            failures.push(VertexReport {
                vertex: v,
                simplicial,
                flag,
            });
        }
    }
    NpcReport {
        npc: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::GluingPresentation;
    use crate::constructions::{
        free_cube, klein_bottle, salvetti, surface_complex, torus_complex, wedge_of_circles,
        SimplicialGraph, SquareComplex, WordEdge,
    };
    use crate::perm::SignedPermutation;

    #[test]
    fn tori_and_surfaces_are_npc() {
        for x in [
            torus_complex(1).unwrap(),
            torus_complex(2).unwrap(),
            torus_complex(3).unwrap(),
            surface_complex(1, true).unwrap(),
            surface_complex(2, true).unwrap(),
            surface_complex(3, true).unwrap(),
            surface_complex(2, false).unwrap(),
            klein_bottle(),
            wedge_of_circles(3),
            free_cube(3).unwrap(),
        ] {
            let r = is_npc(&x);
            assert!(r.npc, "{:?}", r.failures);
        }
    }

    #[test]
    fn salvetti_is_npc() {
        for g in [
            SimplicialGraph::path(4),
            SimplicialGraph::cycle(5),
            SimplicialGraph::complete(4),
        ] {
            assert!(is_npc(&salvetti(&g).unwrap()).npc);
        }
    }

    /// A sphere-like gluing: two squares sharing their four boundary edges in
    /// pairs produces 3-cycles in the links.
    fn pillowcase() -> crate::complex::CubeComplex {
        let sc = SquareComplex {
            vertices: vec!["p".into(), "q".into()],
            edges: vec![
                ("a".into(), "p".into(), "q".into()),
                ("b".into(), "q".into(), "p".into()),
            ],
            squares: vec![
                (
                    "f".into(),
                    [
                        WordEdge::fwd("a"),
                        WordEdge::fwd("b"),
                        WordEdge::fwd("a"),
                        WordEdge::fwd("b"),
                    ],
                ),
            ],
        };
        sc.compile().unwrap()
    }

    #[test]
    fn short_link_cycles_violate_npc() {
        let x = pillowcase();
        let r = is_npc(&x);
        assert!(!r.npc);
        // each vertex link is a doubled edge: a 2-cycle, and two 1-simplices
        // on the same vertex pair
        let link = x.link(crate::complex::CellId::new(0, 0)).unwrap();
        assert_eq!(link_girth(&link), Some(2));
        assert!(matches!(
            simpliciality_failure(&link),
            Some(SimplicialityFailure::DoubledSimplex { .. })
        ));
    }

    #[test]
    fn flag_matches_girth_for_square_complexes() {
        for x in [
            torus_complex(2).unwrap(),
            surface_complex(2, true).unwrap(),
            klein_bottle(),
            pillowcase(),
            salvetti(&SimplicialGraph::cycle(5)).unwrap(),
        ] {
            assert!(x.dim() <= 2);
            for v in x.cells(0) {
                let link = x.link(v).unwrap();
                if simpliciality_failure(&link).is_some() {
                    continue;
                }
                let flag_ok = flag_failure(&link).is_none();
                let girth_ok = link_girth(&link).map_or(true, |g| g >= 4);
                assert_eq!(flag_ok, girth_ok, "at {}", x.name(v));
            }
        }
    }

    #[test]
    fn surface_links_have_girth_at_least_four() {
        let s = surface_complex(2, true).unwrap();
        for v in s.cells(0) {
            let link = s.link(v).unwrap();
            assert!(link_girth(&link).unwrap() >= 4);
        }
    }

    #[test]
    fn loop_square_link_is_not_simplicial() {
        // one square with all four sides the same loop edge
        use crate::complex::FacetGluing;
        let id1 = SignedPermutation::identity(1);
        let id0 = SignedPermutation::identity(0);
        let mut gluings = Vec::new();
        for coord in 0..2 {
            for side in 0..2u8 {
                gluings.push(FacetGluing {
                    source: "s".into(),
                    coord,
                    side,
                    target: "a".into(),
                    correspondence: id1.clone(),
                });
            }
        }
        for side in 0..2u8 {
            gluings.push(FacetGluing {
                source: "a".into(),
                coord: 0,
                side,
                target: "v".into(),
                correspondence: id0.clone(),
            });
        }
        let x = GluingPresentation {
            cubes: vec![("s".into(), 2), ("a".into(), 1), ("v".into(), 0)],
            gluings,
        }
        .compile()
        .unwrap();
        let r = is_npc(&x);
        assert!(!r.npc);
        let link = x.link(crate::complex::CellId::new(0, 0)).unwrap();
        assert!(matches!(
            simpliciality_failure(&link),
            Some(SimplicialityFailure::RepeatedVertex { .. })
        ));
    }
}
