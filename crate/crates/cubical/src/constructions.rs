//! Builders for the standard zoo: products, cubical subdivisions, squared
//! surfaces, tori, Salvetti complexes of right-angled Artin groups, and
//! finite covers of one-vertex complexes.
//!
//! Everything is produced as a [`GluingPresentation`] and compiled through the
//! checked path, so the cubical identity is verified on every construction.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::{dim_cap, CellId, CubeComplex, FacetGluing, GluingPresentation};
use crate::error::{ComplexError, CoverError};
use crate::maps::CubicalMap;
use crate::perm::SignedPermutation;

/// A finite simplicial graph: no loops, no parallel edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialGraph {
    pub vertices: Vec<String>,
    /// Unordered pairs of vertex indices, smaller first.
    pub edges: BTreeSet<(usize, usize)>,
}

impl SimplicialGraph {
    pub fn new(vertices: Vec<String>) -> Self {
        SimplicialGraph {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "simplicial graphs have no loops");
        assert!(a < self.vertices.len() && b < self.vertices.len());
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Complete graph K_n with labels `x1..xn`.
    pub fn complete(n: usize) -> Self {
        let mut g = SimplicialGraph::new((1..=n).map(|i| format!("x{i}")).collect());
        for a in 0..n {
            for b in (a + 1)..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// Edgeless graph on n vertices.
    pub fn edgeless(n: usize) -> Self {
        SimplicialGraph::new((1..=n).map(|i| format!("x{i}")).collect())
    }

    /// Path graph P_n (n vertices, n-1 edges).
    pub fn path(n: usize) -> Self {
        let mut g = SimplicialGraph::edgeless(n);
        for a in 0..n.saturating_sub(1) {
            g.add_edge(a, a + 1);
        }
        g
    }

    /// Cycle graph C_n, n >= 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = SimplicialGraph::edgeless(n);
        for a in 0..n {
            g.add_edge(a, (a + 1) % n);
        }
        g
    }

    /// Maximal cliques via Bron-Kerbosch with pivoting.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        let mut r = Vec::new();
        let p: BTreeSet<usize> = (0..n).collect();
        let x = BTreeSet::new();
        self.bron_kerbosch(&mut r, p, x, &mut out);
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.adjacent(u, v)).count())
            .unwrap();
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !self.adjacent(pivot, v))
            .collect();
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&u| self.adjacent(u, v)).collect();
            let nx = x.iter().copied().filter(|&u| self.adjacent(u, v)).collect();
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }

    /// All nonempty cliques: maximal cliques closed under taking subsets.
    pub fn all_cliques(&self) -> Vec<Vec<usize>> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for m in self.maximal_cliques() {
            let k = m.len();
            for mask in 1u32..(1 << k) {
                let sub: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| m[i]).collect();
                set.insert(sub);
            }
        }
        set.into_iter().collect()
    }

    pub fn clique_number(&self) -> usize {
        self.maximal_cliques()
            .iter()
            .map(|c| c.len())
            .max()
            .unwrap_or(0)
    }
}

/// A single 0-cube.
pub fn point() -> CubeComplex {
    GluingPresentation {
        cubes: vec![("v".into(), 0)],
        gluings: vec![],
    }
    .compile()
    .expect("point compiles")
}

/// One vertex, one loop edge.
pub fn circle() -> CubeComplex {
    wedge_of_circles(1)
}

/// One vertex, n loop edges.
pub fn wedge_of_circles(n: usize) -> CubeComplex {
    let mut cubes = vec![("v".to_string(), 0)];
    let mut gluings = Vec::new();
    for i in 0..n {
        let e = format!("e{i}");
        cubes.push((e.clone(), 1));
        for side in 0..2u8 {
            gluings.push(FacetGluing {
                source: e.clone(),
                coord: 0,
                side,
                target: "v".into(),
                correspondence: SignedPermutation::identity(0),
            });
        }
    }
    GluingPresentation { cubes, gluings }
        .compile()
        .expect("wedge compiles")
}

/// The full face lattice of a single n-cube with free boundary: all faces
/// are distinct cells.
pub fn free_cube(n: usize) -> Result<CubeComplex, ComplexError> {
    if n > dim_cap() {
        return Err(ComplexError::DimensionCapExceeded { dim: n, cap: dim_cap() });
    }
    // pattern entry per coordinate: 0 = free, 1 = fixed at 0, 2 = fixed at 1
    let mut patterns: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..n {
        patterns = patterns
            .into_iter()
            .flat_map(|p| {
                (0..3u8).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    let name = |p: &[u8]| {
        let s: String = p
            .iter()
            .map(|&v| match v {
                0 => '*',
                1 => '0',
                _ => '1',
            })
            .collect();
        format!("c{s}")
    };
    let mut cubes = Vec::new();
    let mut gluings = Vec::new();
    for p in &patterns {
        let d = p.iter().filter(|&&v| v == 0).count();
        cubes.push((name(p), d));
        let free: Vec<usize> = (0..n).filter(|&i| p[i] == 0).collect();
        for (pos, &i) in free.iter().enumerate() {
            for side in 0..2u8 {
                let mut q = p.clone();
                q[i] = 1 + side;
                gluings.push(FacetGluing {
                    source: name(p),
                    coord: pos,
                    side,
                    target: name(&q),
                    correspondence: SignedPermutation::identity(d - 1),
                });
            }
        }
    }
    GluingPresentation { cubes, gluings }.compile()
}

/// The n-torus: one n-cube with opposite facets identified. Cells are in
/// bijection with coordinate subsets.
pub fn torus_complex(n: usize) -> Result<CubeComplex, ComplexError> {
    if n > dim_cap() {
        return Err(ComplexError::DimensionCapExceeded { dim: n, cap: dim_cap() });
    }
    let name = |mask: u32| format!("T{mask:0n$b}", n = n.max(1));
    let mut cubes = Vec::new();
    let mut gluings = Vec::new();
    for mask in 0..(1u32 << n) {
        let d = mask.count_ones() as usize;
        cubes.push((name(mask), d));
        let coords: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        for (pos, &i) in coords.iter().enumerate() {
            for side in 0..2u8 {
                gluings.push(FacetGluing {
                    source: name(mask),
                    coord: pos,
                    side,
                    target: name(mask & !(1 << i)),
                    correspondence: SignedPermutation::identity(d - 1),
                });
            }
        }
    }
    // sort so counts are by dimension in declaration order
    cubes.sort_by_key(|(_, d)| *d);
    GluingPresentation { cubes, gluings }.compile()
}

/// Product complex: cells are pairs of cells, facet maps act one factor at a
/// time.
pub fn product(x: &CubeComplex, y: &CubeComplex) -> Result<CubeComplex, ComplexError> {
    let cap = dim_cap();
    if x.dim() + y.dim() > cap {
        return Err(ComplexError::DimensionCapExceeded {
            dim: x.dim() + y.dim(),
            cap,
        });
    }
    let name = |a: CellId, b: CellId| format!("{}*{}", x.name(a), y.name(b));
    let mut cubes = Vec::new();
    let mut gluings = Vec::new();
    for k in 0..=(x.dim() + y.dim()) {
        for i in 0..=k.min(x.dim()) {
            let j = k - i;
            if j > y.dim() {
                continue;
            }
            for a in x.cells(i) {
                for b in y.cells(j) {
                    cubes.push((name(a, b), k));
                    for t in 0..i {
                        for side in 0..2u8 {
                            let f = x.facet(a, t, side);
                            let mut images: Vec<(usize, bool)> =
                                f.corr.iter().collect();
                            for r in 0..j {
                                images.push((i - 1 + r, false));
                            }
                            gluings.push(FacetGluing {
                                source: name(a, b),
                                coord: t,
                                side,
                                target: name(f.cell, b),
                                correspondence: SignedPermutation::new(images).unwrap(),
                            });
                        }
                    }
                    for t in 0..j {
                        for side in 0..2u8 {
                            let f = y.facet(b, t, side);
                            let mut images: Vec<(usize, bool)> =
                                (0..i).map(|q| (q, false)).collect();
                            for (u, flip) in f.corr.iter() {
                                images.push((i + u, flip));
                            }
                            gluings.push(FacetGluing {
                                source: name(a, b),
                                coord: i + t,
                                side,
                                target: name(a, f.cell),
                                correspondence: SignedPermutation::new(images).unwrap(),
                            });
                        }
                    }
                }
            }
        }
    }
    GluingPresentation { cubes, gluings }.compile()
}

/// Cubical subdivision: every n-cube is cut at 1/2 along each coordinate,
/// producing 2^n n-cubes. Cells of the subdivision are pairs of an original
/// cell and a choice of half or midpoint per coordinate.
pub fn subdivide(x: &CubeComplex) -> Result<CubeComplex, ComplexError> {
    // choice per coordinate: 0 = lower half, 1 = midpoint, 2 = upper half
    const LOWER: u8 = 0;
    const MID: u8 = 1;
    const UPPER: u8 = 2;
    let name = |c: CellId, t: &[u8]| {
        let s: String = t
            .iter()
            .map(|&v| match v {
                LOWER => 'l',
                MID => 'm',
                _ => 'u',
            })
            .collect();
        format!("{}@{}", x.name(c), if s.is_empty() { ".".into() } else { s })
    };
    let mirror = |v: u8| match v {
        LOWER => UPPER,
        UPPER => LOWER,
        m => m,
    };

    let mut cubes = Vec::new();
    let mut gluings = Vec::new();
    for d in 0..=x.dim() {
        for c in x.cells(d) {
            let mut choices: Vec<Vec<u8>> = vec![vec![]];
            for _ in 0..d {
                choices = choices
                    .into_iter()
                    .flat_map(|t| {
                        (0..3u8).map(move |v| {
                            let mut s = t.clone();
                            s.push(v);
                            s
                        })
                    })
                    .collect();
            }
            for t in &choices {
                let free: Vec<usize> = (0..d).filter(|&i| t[i] != MID).collect();
                let k = free.len();
                cubes.push((name(c, t), k));
                for (pos, &i) in free.iter().enumerate() {
                    for side in 0..2u8 {
                        let inner = (t[i] == LOWER && side == 1) || (t[i] == UPPER && side == 0);
                        if inner {
                            let mut s = t.clone();
                            s[i] = MID;
                            gluings.push(FacetGluing {
                                source: name(c, t),
                                coord: pos,
                                side,
                                target: name(c, &s),
                                correspondence: SignedPermutation::identity(k - 1),
                            });
                        } else {
                            let eps = if t[i] == LOWER { 0 } else { 1 };
                            let f = x.facet(c, i, eps);
                            // push the choice vector through the facet correspondence
                            let mut s = vec![MID; d.saturating_sub(1)];
                            for j in (0..d).filter(|&j| j != i) {
                                let pj = if j > i { j - 1 } else { j };
                                let (u, flip) = f.corr.image(pj);
                                s[u] = if flip { mirror(t[j]) } else { t[j] };
                            }
                            let target_free: Vec<usize> =
                                (0..d.saturating_sub(1)).filter(|&u| s[u] != MID).collect();
                            let mut images = Vec::with_capacity(k - 1);
                            for &j in free.iter().filter(|&&j| j != i) {
                                let pj = if j > i { j - 1 } else { j };
                                let (u, flip) = f.corr.image(pj);
                                let slot = target_free.iter().position(|&w| w == u).unwrap();
                                images.push((slot, flip));
                            }
                            gluings.push(FacetGluing {
                                source: name(c, t),
                                coord: pos,
                                side,
                                target: name(f.cell, &s),
                                correspondence: SignedPermutation::new(images).unwrap(),
                            });
                        }
                    }
                }
            }
        }
    }
    cubes.sort_by_key(|(_, d)| *d);
    GluingPresentation { cubes, gluings }.compile()
}

/// A directed edge reference in a square boundary word; `reversed` traverses
/// the edge from its head to its tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordEdge {
    pub edge: String,
    pub reversed: bool,
}

impl WordEdge {
    pub fn fwd(edge: &str) -> Self {
        WordEdge {
            edge: edge.into(),
            reversed: false,
        }
    }
    pub fn rev(edge: &str) -> Self {
        WordEdge {
            edge: edge.into(),
            reversed: true,
        }
    }
}

/// Convenience input for complexes of dimension <= 2: vertices, directed
/// edges, and squares given by length-4 boundary words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareComplex {
    pub vertices: Vec<String>,
    /// `(id, tail, head)`.
    pub edges: Vec<(String, String, String)>,
    /// `(id, boundary word)`: the word runs corner (0,0) -> (1,0) -> (1,1)
    /// -> (0,1) -> (0,0).
    pub squares: Vec<(String, [WordEdge; 4])>,
}

impl SquareComplex {
    pub fn to_presentation(&self) -> Result<GluingPresentation, ComplexError> {
        let mut cubes: Vec<(String, usize)> = Vec::new();
        let mut gluings = Vec::new();
        let vset: BTreeSet<&String> = self.vertices.iter().collect();
        for v in &self.vertices {
            cubes.push((v.clone(), 0));
        }
        let mut edge_ends: HashMap<&str, (&str, &str)> = HashMap::new();
        for (id, tail, head) in &self.edges {
            for v in [tail, head] {
                if !vset.contains(v) {
                    return Err(ComplexError::UnknownCube(v.clone()));
                }
            }
            cubes.push((id.clone(), 1));
            edge_ends.insert(id, (tail, head));
            for (side, v) in [(0u8, tail), (1u8, head)] {
                gluings.push(FacetGluing {
                    source: id.clone(),
                    coord: 0,
                    side,
                    target: v.clone(),
                    correspondence: SignedPermutation::identity(0),
                });
            }
        }
        let endpoints = |w: &WordEdge| -> Result<(String, String), ComplexError> {
            let (tail, head) = edge_ends
                .get(w.edge.as_str())
                .ok_or_else(|| ComplexError::UnknownCube(w.edge.clone()))?;
            if w.reversed {
                Ok((head.to_string(), tail.to_string()))
            } else {
                Ok((tail.to_string(), head.to_string()))
            }
        };
        for (id, word) in &self.squares {
            cubes.push((id.clone(), 2));
            let ends: Vec<(String, String)> =
                word.iter().map(&endpoints).collect::<Result<_, _>>()?;
            for i in 0..4 {
                if ends[i].1 != ends[(i + 1) % 4].0 {
                    return Err(ComplexError::Malformed(format!(
                        "square {id}: word is not a closed edge path at position {i}"
                    )));
                }
            }
            // sides of the square: (fixed coord, side, word position, flip)
            let placements = [
                (1usize, 0u8, 0usize, false),
                (0, 1, 1, false),
                (1, 1, 2, true),
                (0, 0, 3, true),
            ];
            for (coord, side, wpos, canon_rev) in placements {
                let w = &word[wpos];
                let flip = w.reversed != canon_rev;
                gluings.push(FacetGluing {
                    source: id.clone(),
                    coord,
                    side,
                    target: w.edge.clone(),
                    correspondence: SignedPermutation::new(vec![(0, flip)]).unwrap(),
                });
            }
        }
        Ok(GluingPresentation { cubes, gluings })
    }

    pub fn compile(&self) -> Result<CubeComplex, ComplexError> {
        self.to_presentation()?.compile()
    }
}

/// The squared polygon cubulation of a closed surface: a central vertex, a
/// midpoint on each polygon side, and one square per polygon corner sector.
///
/// Orientable genus g >= 1 uses the 4g-gon word `[a1,b1]...[ag,bg]`;
/// non-orientable genus g >= 2 uses the 2g-gon word `a1 a1 ... ag ag`.
pub fn surface_complex(genus: usize, orientable: bool) -> Result<CubeComplex, ComplexError> {
    if genus == 0 || (!orientable && genus < 2) {
        return Err(ComplexError::UnsupportedGenus(genus));
    }
    let sides = if orientable { 4 * genus } else { 2 * genus };
    // pair index and whether this side is the second (identified) occurrence
    let mut pair_of = vec![(0usize, false); sides];
    let mut pairs = 0;
    if orientable {
        for t in 0..genus {
            pair_of[4 * t] = (pairs, false);
            pair_of[4 * t + 2] = (pairs, true);
            pairs += 1;
            pair_of[4 * t + 1] = (pairs, false);
            pair_of[4 * t + 3] = (pairs, true);
            pairs += 1;
        }
    } else {
        for t in 0..genus {
            pair_of[2 * t] = (pairs, false);
            pair_of[2 * t + 1] = (pairs, true);
            pairs += 1;
        }
    }

    let mut sc = SquareComplex::default();
    sc.vertices.push("x".into());
    sc.vertices.push("v".into());
    for p in 0..pairs {
        sc.vertices.push(format!("y{p}"));
    }
    for (i, &(p, _)) in pair_of.iter().enumerate() {
        sc.edges
            .push((format!("s{i}"), "x".into(), format!("y{p}")));
    }
    for p in 0..pairs {
        // first and second halves of the identified polygon side
        sc.edges
            .push((format!("h{p}a"), "v".into(), format!("y{p}")));
        sc.edges
            .push((format!("h{p}b"), format!("y{p}"), "v".into()));
    }
    // half-edge of side i leaving its midpoint (h_i^1) and entering it (h_i^0)
    let half_out = |i: usize| -> WordEdge {
        let (p, second) = pair_of[i];
        if second && orientable {
            WordEdge::rev(&format!("h{p}a"))
        } else {
            WordEdge::fwd(&format!("h{p}b"))
        }
    };
    let half_in = |i: usize| -> WordEdge {
        let (p, second) = pair_of[i];
        if second && orientable {
            WordEdge::rev(&format!("h{p}b"))
        } else {
            WordEdge::fwd(&format!("h{p}a"))
        }
    };
    for k in 0..sides {
        let next = (k + 1) % sides;
        sc.squares.push((
            format!("q{k}"),
            [
                WordEdge::fwd(&format!("s{k}")),
                half_out(k),
                half_in(next),
                WordEdge::rev(&format!("s{next}")),
            ],
        ));
    }
    sc.compile()
}

/// The usual one-square Klein bottle: one side pair identified with a
/// reversal. Not NPC-pathological but its reversed hyperplane is one-sided.
pub fn klein_bottle() -> CubeComplex {
    let sc = SquareComplex {
        vertices: vec!["v".into()],
        edges: vec![
            ("a".into(), "v".into(), "v".into()),
            ("b".into(), "v".into(), "v".into()),
        ],
        // Boundary word a b a b^{-1}: going around, edge a appears twice with
        // the same direction, which is the orientation-reversing gluing.
        squares: vec![(
            "q".into(),
            [
                WordEdge::fwd("a"),
                WordEdge::fwd("b"),
                WordEdge::fwd("a"),
                WordEdge::rev("b"),
            ],
        )],
    };
    sc.compile().expect("klein bottle compiles")
}

/// A degree-d cover of a one-vertex complex, given by a permutation of the
/// sheets for every 1-cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationAssignment {
    pub degree: usize,
    /// `perms[edge index] = image vector`, a bijection on `0..degree`.
    pub perms: Vec<Vec<usize>>,
}

impl PermutationAssignment {
    pub fn identity(degree: usize, edges: usize) -> Self {
        PermutationAssignment {
            degree,
            perms: vec![(0..degree).collect(); edges],
        }
    }

    fn apply(&self, edge: usize, sheet: usize, forward: bool) -> usize {
        if forward {
            self.perms[edge][sheet]
        } else {
            self.perms[edge].iter().position(|&s| s == sheet).unwrap()
        }
    }
}

/// Directed boundary word of a 2-cell: the four edge-faces around the square,
/// as `(1-cell, traversed forward)`.
pub fn square_boundary_word(x: &CubeComplex, q: CellId) -> Vec<(CellId, bool)> {
    debug_assert_eq!(q.dim, 2);
    // (fixed coord, side, free coord, increasing?)
    let legs = [
        (1usize, 0u8, false),
        (0, 1, false),
        (1, 1, true),
        (0, 0, true),
    ];
    legs.iter()
        .map(|&(coord, side, decreasing)| {
            let f = x.facet(q, coord, side);
            let (_, flip) = f.corr.image(0);
            (f.cell, flip == decreasing)
        })
        .collect()
}

/// Builds the degree-d cover of a one-vertex complex routed by `rho`, together
/// with the covering map.
///
/// Requires every square's boundary permutation product to be trivial, which
/// makes sheet transport path-independent inside every cube.
pub fn one_vertex_cover(
    x: &CubeComplex,
    rho: &PermutationAssignment,
) -> Result<(CubeComplex, CubicalMap), CoverError> {
    if x.cell_count(0) != 1 {
        return Err(CoverError::NotOneVertex(x.cell_count(0)));
    }
    if rho.perms.len() != x.cell_count(1) {
        return Err(CoverError::MissingEdge(format!(
            "expected {} edge permutations, got {}",
            x.cell_count(1),
            rho.perms.len()
        )));
    }
    let d = rho.degree;
    for (e, p) in rho.perms.iter().enumerate() {
        let mut seen = vec![false; d];
        if p.len() != d || p.iter().any(|&s| s >= d || std::mem::replace(&mut seen[s], true)) {
            return Err(CoverError::Complex(ComplexError::Malformed(format!(
                "edge {} permutation is not a bijection on 0..{d}",
                x.name(CellId::new(1, e))
            ))));
        }
    }
    for q in x.cells(2) {
        for start in 0..d {
            let mut s = start;
            for (e, forward) in square_boundary_word(x, q) {
                s = rho.apply(e.idx, s, forward);
            }
            if s != start {
                return Err(CoverError::SquareRelationViolated {
                    square: x.name(q).to_string(),
                });
            }
        }
    }

    // sheet transport from corner 0 to `corner` of cube c
    let transport = |c: CellId, corner: u32, mut sheet: usize| -> usize {
        let mut cur = 0u32;
        for j in 0..c.dim {
            if corner >> j & 1 == 1 {
                let constraints: Vec<(usize, u8)> = (0..c.dim)
                    .filter(|&k| k != j)
                    .map(|k| (k, (cur >> k & 1) as u8))
                    .collect();
                let (e, sigma) = x.resolve_face(c, &constraints);
                let (_, flip) = sigma.image(0);
                sheet = rho.apply(e.idx, sheet, !flip);
                cur |= 1 << j;
            }
        }
        sheet
    };

    let name = |c: CellId, s: usize| format!("{}#{s}", x.name(c));
    let mut cubes = Vec::new();
    let mut gluings = Vec::new();
    for dim in 0..=x.dim() {
        for c in x.cells(dim) {
            for s in 0..d {
                cubes.push((name(c, s), dim));
                for coord in 0..dim {
                    for side in 0..2u8 {
                        let f = x.facet(c, coord, side);
                        let mut corner = (side as u32) << coord;
                        for j in (0..dim).filter(|&j| j != coord) {
                            let pos = if j > coord { j - 1 } else { j };
                            let (_, flip) = f.corr.image(pos);
                            if flip {
                                corner |= 1 << j;
                            }
                        }
                        let sheet = transport(c, corner, s);
                        gluings.push(FacetGluing {
                            source: name(c, s),
                            coord,
                            side,
                            target: name(f.cell, sheet),
                            correspondence: f.corr.clone(),
                        });
                    }
                }
            }
        }
    }
    let cover = GluingPresentation { cubes, gluings }.compile()?;
    let assign = (0..=cover.dim())
        .map(|dim| {
            cover
                .cells(dim)
                .map(|c| {
                    let base_name = cover.name(c).rsplit_once('#').unwrap().0.to_string();
                    let base = x.cell_by_name(&base_name).unwrap();
                    (base, SignedPermutation::identity(dim))
                })
                .collect()
        })
        .collect();
    let map = CubicalMap::new(cover.clone(), x.clone(), assign).expect("cover map is well-formed");
    Ok((cover, map))
}

/// The Salvetti complex of a right-angled Artin group: one vertex, a loop per
/// graph vertex, and a k-torus cube per k-clique.
pub fn salvetti(graph: &SimplicialGraph) -> Result<CubeComplex, ComplexError> {
    let cap = dim_cap();
    let cliques = graph.all_cliques();
    if let Some(c) = cliques.iter().find(|c| c.len() > cap) {
        return Err(ComplexError::DimensionCapExceeded { dim: c.len(), cap });
    }
    let name = |c: &[usize]| {
        if c.is_empty() {
            "w".to_string()
        } else {
            c.iter()
                .map(|&v| graph.vertices[v].clone())
                .collect::<Vec<_>>()
                .join("_")
        }
    };
    let mut cubes = vec![("w".to_string(), 0)];
    let mut gluings = Vec::new();
    for c in &cliques {
        cubes.push((name(c), c.len()));
        for pos in 0..c.len() {
            let sub: Vec<usize> = c
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pos)
                .map(|(_, &v)| v)
                .collect();
            for side in 0..2u8 {
                gluings.push(FacetGluing {
                    source: name(c),
                    coord: pos,
                    side,
                    target: name(&sub),
                    correspondence: SignedPermutation::identity(c.len() - 1),
                });
            }
        }
    }
    cubes.sort_by_key(|(_, d)| *d);
    GluingPresentation { cubes, gluings }.compile()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_counts() {
        assert_eq!(torus_complex(1).unwrap().counts(), vec![1, 1]);
        assert_eq!(torus_complex(2).unwrap().counts(), vec![1, 2, 1]);
        assert_eq!(torus_complex(3).unwrap().counts(), vec![1, 3, 3, 1]);
        for n in 1..=3 {
            assert_eq!(torus_complex(n).unwrap().euler_characteristic(), 0);
        }
    }

    #[test]
    fn product_of_circles_is_a_torus() {
        let c = circle();
        let t = product(&c, &c).unwrap();
        assert_eq!(t.counts(), vec![1, 2, 1]);
        let t3 = product(&torus_complex(2).unwrap(), &c).unwrap();
        assert_eq!(t3.counts(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn product_with_point_is_identity_on_counts() {
        let t = torus_complex(2).unwrap();
        let p = product(&t, &point()).unwrap();
        assert_eq!(p.counts(), t.counts());
    }

    #[test]
    fn product_cell_polynomial_multiplies() {
        let a = surface_complex(1, true).unwrap();
        let b = circle();
        let p = product(&a, &b).unwrap();
        // coefficient of z^k in the product of count polynomials
        let (ca, cb) = (a.counts(), b.counts());
        for k in 0..p.counts().len() {
            let expect: usize = (0..=k)
                .map(|i| ca.get(i).copied().unwrap_or(0) * cb.get(k - i).copied().unwrap_or(0))
                .sum();
            assert_eq!(p.counts()[k], expect);
        }
    }

    #[test]
    fn subdivision_counts() {
        let sq = free_cube(2).unwrap();
        let sub = subdivide(&sq).unwrap();
        assert_eq!(sub.counts(), vec![9, 12, 4]);

        let t = torus_complex(2).unwrap();
        let st = subdivide(&t).unwrap();
        assert_eq!(st.counts(), vec![4, 8, 4]);
        assert_eq!(st.euler_characteristic(), t.euler_characteristic());

        let edge = free_cube(1).unwrap();
        let se = subdivide(&edge).unwrap();
        assert_eq!(se.counts(), vec![3, 2]);
    }

    #[test]
    fn surface_complex_counts_and_euler() {
        let s2 = surface_complex(2, true).unwrap();
        assert_eq!(s2.counts(), vec![6, 16, 8]);
        assert_eq!(s2.euler_characteristic(), -2);
        let s1 = surface_complex(1, true).unwrap();
        assert_eq!(s1.euler_characteristic(), 0);
        assert_eq!(s1.cell_count(2), 4);
        let n2 = surface_complex(2, false).unwrap();
        assert_eq!(n2.euler_characteristic(), 0);
        assert!(surface_complex(0, true).is_err());
        assert!(surface_complex(1, false).is_err());
    }

    #[test]
    fn surface_link_lengths() {
        let s2 = surface_complex(2, true).unwrap();
        let mut lengths = Vec::new();
        for v in s2.cells(0) {
            let link = s2.link(v).unwrap();
            assert_eq!(link.vertex_count(), link.simplices(1).len()); // cycles
            lengths.push(link.vertex_count());
        }
        lengths.sort_unstable();
        assert_eq!(lengths, vec![4, 4, 4, 4, 8, 8]);
    }

    #[test]
    fn salvetti_cells_match_cliques() {
        let free2 = salvetti(&SimplicialGraph::edgeless(2)).unwrap();
        assert_eq!(free2.counts(), vec![1, 2]);
        let z2 = salvetti(&SimplicialGraph::complete(2)).unwrap();
        assert_eq!(z2.counts(), vec![1, 2, 1]);
        let k3 = salvetti(&SimplicialGraph::complete(3)).unwrap();
        assert_eq!(k3.counts(), vec![1, 3, 3, 1]);
        assert!(k3.same_cell_structure(&torus_complex(3).unwrap()));

        let p3 = salvetti(&SimplicialGraph::path(3)).unwrap();
        assert_eq!(p3.counts(), vec![1, 3, 2]);
        let c5 = salvetti(&SimplicialGraph::cycle(5)).unwrap();
        assert_eq!(c5.counts(), vec![1, 5, 5]);
    }

    #[test]
    fn clique_enumeration() {
        let g = SimplicialGraph::cycle(5);
        let maximal = g.maximal_cliques();
        assert_eq!(maximal.len(), 5);
        assert!(maximal.iter().all(|c| c.len() == 2));
        assert_eq!(g.all_cliques().len(), 10);
        assert_eq!(SimplicialGraph::complete(4).clique_number(), 4);
    }

    #[test]
    fn figure_eight_double_cover() {
        let w = wedge_of_circles(2);
        let rho = PermutationAssignment {
            degree: 2,
            perms: vec![vec![1, 0], vec![0, 1]],
        };
        let (cover, map) = one_vertex_cover(&w, &rho).unwrap();
        assert_eq!(cover.counts(), vec![2, 4]);
        assert!(map.is_covering().is_ok());
    }

    #[test]
    fn torus_double_cover_is_a_torus() {
        let t = torus_complex(2).unwrap();
        let rho = PermutationAssignment {
            degree: 2,
            perms: vec![vec![1, 0], vec![0, 1]],
        };
        let (cover, map) = one_vertex_cover(&t, &rho).unwrap();
        assert_eq!(cover.counts(), vec![2, 4, 2]);
        assert_eq!(cover.euler_characteristic(), 0);
        assert!(map.is_covering().is_ok());
    }

    #[test]
    fn non_commuting_square_relation_is_rejected() {
        let t = torus_complex(2).unwrap();
        let rho = PermutationAssignment {
            degree: 3,
            perms: vec![vec![1, 0, 2], vec![0, 2, 1]],
        };
        assert!(matches!(
            one_vertex_cover(&t, &rho),
            Err(CoverError::SquareRelationViolated { .. })
        ));
    }

    #[test]
    fn trivial_assignment_gives_disconnected_cover() {
        let t = torus_complex(2).unwrap();
        let rho = PermutationAssignment::identity(2, 2);
        let (cover, map) = one_vertex_cover(&t, &rho).unwrap();
        assert_eq!(cover.counts(), vec![2, 4, 2]);
        assert!(map.is_covering().is_ok());
        assert_eq!(crate::metric::connected_components(&cover), 2);
    }
}
