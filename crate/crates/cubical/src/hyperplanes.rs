//! Hyperplanes of a cube complex: parallelism classes of midcubes, their
//! carriers, and the combinatorial pathologies whose absence defines a
//! special complex.
//!
//! A midcube of an n-cube is the slice fixing one coordinate at 1/2. Two
//! midcubes are parallel when a facet gluing carries one to the other; a
//! hyperplane is an equivalence class under the transitive closure. Dual to a
//! hyperplane is the set of edges it cuts. The pathologies tracked here are
//! one-sidedness, self-crossing, self-osculation (direct or indirect), and
//! inter-osculation between two hyperplanes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, CubeComplex, FacetGluing, GluingPresentation};
use crate::error::ComplexError;
use crate::maps::CubicalMap;
use crate::perm::SignedPermutation;
use crate::unionfind::UnionFind;

/// A midcube: a cell of dimension >= 1 together with the coordinate its
/// defining slice fixes at the midpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Midcube {
    pub cell: CellId,
    pub coord: usize,
}

/// One hyperplane: its midcubes, dual edges, and sidedness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub midcubes: BTreeSet<Midcube>,
    /// Whether a coherent transverse orientation exists.
    pub two_sided: bool,
}

impl Hyperplane {
    /// The 1-cells dual to this hyperplane (midcubes of edges).
    pub fn dual_edges(&self, _x: &CubeComplex) -> Vec<CellId> {
        self.midcubes
            .iter()
            .filter(|m| m.cell.dim == 1)
            .map(|m| m.cell)
            .collect()
    }
}

fn midcube_table(x: &CubeComplex) -> (Vec<Midcube>, HashMap<Midcube, usize>) {
    let mut list = Vec::new();
    let mut index = HashMap::new();
    for d in 1..=x.dim() {
        for c in x.cells(d) {
            for coord in 0..d {
                let m = Midcube { cell: c, coord };
                index.insert(m, list.len());
                list.push(m);
            }
        }
    }
    (list, index)
}

/// Computes all hyperplanes with sidedness.
///
/// Parallelism: the midcube `(c, i)` meets the facet `(c, j, s)` for every
/// `j != i`, and continues there as the midcube of the glued cell at the image
/// coordinate of `i`. Sidedness is tracked on an orientation double: each
/// midcube has two co-orientations, and crossing a facet composes with the
/// flip bit of the correspondence at `i`. A class is one-sided exactly when
/// the two co-orientations of some midcube are identified.
pub fn hyperplanes(x: &CubeComplex) -> Vec<Hyperplane> {
    let (list, index) = midcube_table(x);
    let n = list.len();
    let mut uf = UnionFind::new(n);
    // doubled union-find: node 2*m + o is midcube m with co-orientation o
    let mut ouf = UnionFind::new(2 * n);
    for (m_idx, m) in list.iter().enumerate() {
        let d = m.cell.dim;
        for j in (0..d).filter(|&j| j != m.coord) {
            for side in 0..2u8 {
                let f = x.facet(m.cell, j, side);
                let pos = if m.coord > j { m.coord - 1 } else { m.coord };
                let (u, flip) = f.corr.image(pos);
                let t_idx = index[&Midcube {
                    cell: f.cell,
                    coord: u,
                }];
                uf.union(m_idx, t_idx);
                let o = usize::from(flip);
                ouf.union(2 * m_idx, 2 * t_idx + o);
                ouf.union(2 * m_idx + 1, 2 * t_idx + 1 - o);
            }
        }
    }
    let mut classes: BTreeMap<usize, Hyperplane> = BTreeMap::new();
    for (m_idx, m) in list.iter().enumerate() {
        let root = uf.find(m_idx);
        let entry = classes.entry(root).or_insert_with(|| Hyperplane {
            midcubes: BTreeSet::new(),
            two_sided: true,
        });
        entry.midcubes.insert(*m);
        if ouf.same(2 * m_idx, 2 * m_idx + 1) {
            entry.two_sided = false;
        }
    }
    classes.into_values().collect()
}

/// A co-oriented dual edge of a hyperplane: the edge together with the side
/// the orientation points to (`1` = toward side 1 of the edge).
fn oriented_dual_edges(x: &CubeComplex, hp: &Hyperplane) -> Vec<(CellId, u8)> {
    // propagate a reference co-orientation through the doubled union-find,
    // restricted to this class; recompute locally for simplicity
    let (list, index) = midcube_table(x);
    let n = list.len();
    let mut ouf = UnionFind::new(2 * n);
    for (m_idx, m) in list.iter().enumerate() {
        let d = m.cell.dim;
        for j in (0..d).filter(|&j| j != m.coord) {
            for side in 0..2u8 {
                let f = x.facet(m.cell, j, side);
                let pos = if m.coord > j { m.coord - 1 } else { m.coord };
                let (u, flip) = f.corr.image(pos);
                let t_idx = index[&Midcube {
                    cell: f.cell,
                    coord: u,
                }];
                let o = usize::from(flip);
                ouf.union(2 * m_idx, 2 * t_idx + o);
                ouf.union(2 * m_idx + 1, 2 * t_idx + 1 - o);
            }
        }
    }
    let reference = index[hp.midcubes.iter().next().expect("nonempty class")];
    let ref_root = ouf.find(2 * reference);
    let mut out = Vec::new();
    for m in &hp.midcubes {
        if m.cell.dim != 1 {
            continue;
        }
        let m_idx = index[m];
        let o: u8 = if ouf.find(2 * m_idx) == ref_root { 1 } else { 0 };
        out.push((m.cell, o));
        if !hp.two_sided {
            out.push((m.cell, 1 - o));
        }
    }
    out
}

/// The four specialness pathologies of a complex, with witnesses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialnessReport {
    /// Hyperplane indices (into [`hyperplanes`]) without a coherent
    /// transverse orientation.
    pub one_sided: Vec<usize>,
    /// Hyperplanes with two midcubes in a single cube; the witness cube.
    pub self_crossing: Vec<(usize, CellId)>,
    /// Hyperplanes with two distinct co-oriented dual edges sharing their
    /// initial or their terminal vertex; the witness vertex.
    pub self_osculating: Vec<(usize, CellId)>,
    /// Pairs of hyperplanes that both cross and osculate; the witness vertex
    /// where they osculate.
    pub inter_osculating: Vec<(usize, usize, CellId)>,
}

impl SpecialnessReport {
    pub fn is_special(&self) -> bool {
        self.one_sided.is_empty()
            && self.self_crossing.is_empty()
            && self.self_osculating.is_empty()
            && self.inter_osculating.is_empty()
    }
}

/// Computes the specialness pathologies of the given complex. The verdict is
/// only meaningful for NPC complexes; see [`is_special`].
pub fn pathologies(x: &CubeComplex) -> SpecialnessReport {
    let hps = hyperplanes(x);
    let mut report = SpecialnessReport::default();

    for (h, hp) in hps.iter().enumerate() {
        if !hp.two_sided {
            report.one_sided.push(h);
        }
        // self-crossing: two midcubes of the class in one cell
        let mut per_cell: BTreeMap<CellId, usize> = BTreeMap::new();
        for m in &hp.midcubes {
            *per_cell.entry(m.cell).or_insert(0) += 1;
        }
        if let Some((&cell, _)) = per_cell.iter().find(|&(_, &k)| k >= 2) {
            report.self_crossing.push((h, cell));
        }
    }

    // co-oriented dual edges as directed edges: `(edge, tail end, head end)`
    // with the vertex and the link end index at each role; osculation = two
    // distinct directed duals sharing a tail or sharing a head without
    // spanning a square corner there
    #[derive(Clone, Copy)]
    struct Directed {
        edge: CellId,
        tail: CellId,
        head: CellId,
        /// endpoint side (0/1) of `edge` playing the tail role
        tail_end: u8,
    }
    let directed: Vec<Vec<Directed>> = hps
        .iter()
        .map(|hp| {
            oriented_dual_edges(x, hp)
                .into_iter()
                .map(|(e, o)| {
                    let (a, b) = x.endpoints(e);
                    if o == 1 {
                        Directed { edge: e, tail: a, head: b, tail_end: 0 }
                    } else {
                        Directed { edge: e, tail: b, head: a, tail_end: 1 }
                    }
                })
                .collect()
        })
        .collect();

    // for "not adjacent in the link" checks: squares at a vertex as pairs of
    // link vertices
    let links: Vec<_> = x
        .cells(0)
        .map(|v| x.link(v).expect("vertex exists"))
        .collect();
    let slot = |v: CellId, e: CellId, end: u8| -> usize {
        links[v.idx]
            .vertices
            .iter()
            .position(|&p| p == (e, end))
            .expect("edge end lies at v")
    };

    for (h, duals) in directed.iter().enumerate() {
        'pairs: for (i, d1) in duals.iter().enumerate() {
            for d2 in &duals[i + 1..] {
                // shared role: both tails or both heads
                let candidates = [
                    (d1.tail, d2.tail, d1.tail_end, d2.tail_end),
                    (d1.head, d2.head, 1 - d1.tail_end, 1 - d2.tail_end),
                ];
                for (v1, v2, end1, end2) in candidates {
                    if v1 != v2 {
                        continue;
                    }
                    // identical slots mean the same edge-end, not an
                    // osculation; adjacency in the link means the two duals
                    // span a square corner at v
                    let s1 = slot(v1, d1.edge, end1);
                    let s2 = slot(v1, d2.edge, end2);
                    if s1 != s2 && !links[v1.idx].adjacent(s1, s2) {
                        report.self_osculating.push((h, v1));
                        break 'pairs;
                    }
                }
            }
        }
    }

    // inter-osculation: hyperplanes that cross somewhere and osculate elsewhere
    let crossing = crossing_pairs(x, &hps);
    for h1 in 0..hps.len() {
        for h2 in (h1 + 1)..hps.len() {
            if !crossing.contains(&(h1, h2)) {
                continue;
            }
            'search: for d1 in &directed[h1] {
                for d2 in &directed[h2] {
                    // any shared vertex, in any role, without a common square
                    let ends1 = [(d1.tail, d1.tail_end), (d1.head, 1 - d1.tail_end)];
                    let ends2 = [(d2.tail, d2.tail_end), (d2.head, 1 - d2.tail_end)];
                    for (v1, end1) in ends1 {
                        for (v2, end2) in ends2 {
                            if v1 != v2 {
                                continue;
                            }
                            let s1 = slot(v1, d1.edge, end1);
                            let s2 = slot(v1, d2.edge, end2);
                            if s1 != s2 && !links[v1.idx].adjacent(s1, s2) {
                                report.inter_osculating.push((h1, h2, v1));
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

fn crossing_pairs(x: &CubeComplex, hps: &[Hyperplane]) -> BTreeSet<(usize, usize)> {
    let mut hp_of: HashMap<Midcube, usize> = HashMap::new();
    for (h, hp) in hps.iter().enumerate() {
        for &m in &hp.midcubes {
            hp_of.insert(m, h);
        }
    }
    let mut out = BTreeSet::new();
    for d in 2..=x.dim() {
        for c in x.cells(d) {
            for i in 0..d {
                for j in (i + 1)..d {
                    let a = hp_of[&Midcube { cell: c, coord: i }];
                    let b = hp_of[&Midcube { cell: c, coord: j }];
                    if a != b {
                        out.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
    }
    out
}

/// The crossing graph: one vertex per hyperplane, an edge when two
/// hyperplanes have midcubes in a common cube.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingGraph {
    pub hyperplanes: usize,
    pub edges: BTreeSet<(usize, usize)>,
    /// Hyperplanes that cross themselves (a loop in the incidence graph).
    pub self_crossing: BTreeSet<usize>,
}

pub fn crossing_graph(x: &CubeComplex) -> CrossingGraph {
    let hps = hyperplanes(x);
    let mut hp_of: HashMap<Midcube, usize> = HashMap::new();
    for (h, hp) in hps.iter().enumerate() {
        for &m in &hp.midcubes {
            hp_of.insert(m, h);
        }
    }
    let mut edges = BTreeSet::new();
    let mut self_crossing = BTreeSet::new();
    for d in 2..=x.dim() {
        for c in x.cells(d) {
            for i in 0..d {
                for j in (i + 1)..d {
                    let a = hp_of[&Midcube { cell: c, coord: i }];
                    let b = hp_of[&Midcube { cell: c, coord: j }];
                    if a == b {
                        self_crossing.insert(a);
                    } else {
                        edges.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
    }
    CrossingGraph {
        hyperplanes: hps.len(),
        edges,
        self_crossing,
    }
}

/// Whether an NPC complex is special (no pathologies). Errors when the
/// complex is not NPC, since the notion is only defined there.
pub fn is_special(x: &CubeComplex) -> Result<SpecialnessReport, ComplexError> {
    let npc = crate::curvature::is_npc(x);
    if !npc.npc {
        return Err(ComplexError::Malformed(
            "specialness is only defined for nonpositively curved complexes".into(),
        ));
    }
    Ok(pathologies(x))
}
/// Cells of the carrier, as cells of the ambient complex decorated with how
/// they meet the hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum CarrierCell {
    /// A cube of the ambient complex crossed by the hyperplane, carrying the
    /// midcube `(cell, coord)`.
    Thick(CellId, usize),
    /// A cell of the carrier disjoint from the hyperplane, tagged with the
    /// side it sits on (0/1) relative to a fixed co-orientation; the tag is 2
    /// when the hyperplane is one-sided and the sides are identified.
    Side(CellId, u8),
}

/// The carrier of a hyperplane: the union of the closed cubes it crosses,
/// with the two sides kept apart, together with the natural map back to the
/// ambient complex.
///
/// For two-sided hyperplanes in an NPC complex this map is a local isometry.
pub fn carrier(
    x: &CubeComplex,
    hp: &Hyperplane,
) -> Result<(CubeComplex, CubicalMap), ComplexError> {
    // Cubes of the carrier are the Thick cells, one per midcube of the class;
    // the faces of Thick(c, i) at coordinate i are Side cells, and its other
    // faces carry the continued midcube, hence stay Thick. A cube of x can
    // appear both as a Thick and as a Side cell, and a Side cell can appear
    // on both sides of a two-sided hyperplane, so Side cells keep a side tag
    // propagated through the co-orientation. Facets of Side(c, t) are simply
    // Side(facet of c, t).
    let in_class: std::collections::BTreeSet<Midcube> = hp.midcubes.iter().copied().collect();
    let (list, index) = midcube_table(x);
    let n = list.len();
    let mut ouf = UnionFind::new(2 * n);
    for (m_idx, m) in list.iter().enumerate() {
        let d = m.cell.dim;
        for j in (0..d).filter(|&j| j != m.coord) {
            for side in 0..2u8 {
                let f = x.facet(m.cell, j, side);
                let pos = if m.coord > j { m.coord - 1 } else { m.coord };
                let (u, flip) = f.corr.image(pos);
                let t_idx = index[&Midcube {
                    cell: f.cell,
                    coord: u,
                }];
                let o = usize::from(flip);
                ouf.union(2 * m_idx, 2 * t_idx + o);
                ouf.union(2 * m_idx + 1, 2 * t_idx + 1 - o);
            }
        }
    }
    let reference = index[in_class.iter().next().expect("nonempty class")];
    let ref_root = ouf.find(2 * reference);
    // orientation = 0 when the midcube's positive side agrees with the
    // reference co-orientation
    let orient: Vec<u8> = (0..n)
        .map(|m_idx| u8::from(ouf.find(2 * m_idx) != ref_root))
        .collect();
    let side_tag = |m: &Midcube, s: u8| -> u8 {
        if hp.two_sided {
            s ^ orient[index[m]]
        } else {
            2
        }
    };

    let mut cells: BTreeSet<CarrierCell> = BTreeSet::new();
    for m in &in_class {
        cells.insert(CarrierCell::Thick(m.cell, m.coord));
    }
    // seed Side cells from the wall-parallel facets of Thick cells, then close
    let mut queue: Vec<CarrierCell> = Vec::new();
    for m in &in_class {
        for s in 0..2u8 {
            let f = x.facet(m.cell, m.coord, s);
            let sc = CarrierCell::Side(f.cell, side_tag(m, s));
            if cells.insert(sc) {
                queue.push(sc);
            }
        }
    }
    while let Some(sc) = queue.pop() {
        let CarrierCell::Side(c, t) = sc else { unreachable!() };
        for j in 0..c.dim {
            for s in 0..2u8 {
                let f = x.facet(c, j, s);
                let next = CarrierCell::Side(f.cell, t);
                if cells.insert(next) {
                    queue.push(next);
                }
            }
        }
    }

    let cc_dim = |cc: &CarrierCell| -> usize {
        match *cc {
            CarrierCell::Thick(c, _) | CarrierCell::Side(c, _) => c.dim,
        }
    };
    let cc_name = |cc: &CarrierCell| -> String {
        match *cc {
            CarrierCell::Thick(c, i) => format!("N[{}|{}]", x.name(c), i),
            CarrierCell::Side(c, t) => format!("S[{}|{}]", x.name(c), t),
        }
    };

    let mut cubes: Vec<(String, usize)> = Vec::new();
    let mut gluings: Vec<FacetGluing> = Vec::new();
    for cc in &cells {
        cubes.push((cc_name(cc), cc_dim(cc)));
        match *cc {
            CarrierCell::Thick(c, i) => {
                let m = Midcube { cell: c, coord: i };
                for j in 0..c.dim {
                    for s in 0..2u8 {
                        let f = x.facet(c, j, s);
                        let target = if j == i {
                            cc_name(&CarrierCell::Side(f.cell, side_tag(&m, s)))
                        } else {
                            let pos = if i > j { i - 1 } else { i };
                            let (u, _) = f.corr.image(pos);
                            cc_name(&CarrierCell::Thick(f.cell, u))
                        };
                        gluings.push(FacetGluing {
                            source: cc_name(cc),
                            coord: j,
                            side: s,
                            target,
                            correspondence: f.corr.clone(),
                        });
                    }
                }
            }
            CarrierCell::Side(c, t) => {
                for j in 0..c.dim {
                    for s in 0..2u8 {
                        let f = x.facet(c, j, s);
                        gluings.push(FacetGluing {
                            source: cc_name(cc),
                            coord: j,
                            side: s,
                            target: cc_name(&CarrierCell::Side(f.cell, t)),
                            correspondence: f.corr.clone(),
                        });
                    }
                }
            }
        }
    }
    let carrier = GluingPresentation { cubes, gluings }.compile()?;
    let assign = (0..=carrier.dim())
        .map(|d| {
            carrier
                .cells(d)
                .map(|cc| {
                    let nm = carrier.name(cc);
                    // names look like K[base|tag]
                    let inner = &nm[2..nm.len() - 1];
                    let base = inner.rsplit_once('|').unwrap().0;
                    (
                        x.cell_by_name(base).expect("carrier cell over x"),
                        SignedPermutation::identity(d),
                    )
                })
                .collect()
        })
        .collect();
    let map = CubicalMap::new(carrier.clone(), x.clone(), assign)
        .expect("carrier map is well-formed");
    Ok((carrier, map))
}

/// A labelled embedding target for special complexes: the clique complex of
/// the crossing graph, realized as a Salvetti complex, together with the
/// label (hyperplane and direction) of every edge of `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SalvettiTarget {
    pub complex: CubeComplex,
    /// For each edge of `x`: (hyperplane index, co-orientation along the
    /// edge: true = from side 0 to side 1).
    pub edge_labels: Vec<(usize, bool)>,
    pub graph: crate::constructions::SimplicialGraph,
}

/// The canonical local isometry from a special complex to the Salvetti
/// complex of its crossing graph, given by hyperplane labels.
pub fn special_to_salvetti(x: &CubeComplex) -> Result<(SalvettiTarget, CubicalMap), ComplexError> {
    let report = is_special(x)?;
    if !report.is_special() {
        return Err(ComplexError::Malformed(
            "complex is not special; no canonical Salvetti target".into(),
        ));
    }
    let hps = hyperplanes(x);
    let cg = crossing_graph(x);
    let mut graph = crate::constructions::SimplicialGraph::new(
        (0..hps.len()).map(|h| format!("x{}", h + 1)).collect(),
    );
    for &(a, b) in &cg.edges {
        graph.add_edge(a, b);
    }
    let salv = crate::constructions::salvetti(&graph)?;

    // edge labels: hyperplane + co-orientation via the orientation double
    let mut hp_of_edge = vec![(usize::MAX, false); x.cell_count(1)];
    for (h, hp) in hps.iter().enumerate() {
        for (e, o) in oriented_dual_edges(x, hp) {
            // o == 1 means the co-orientation points toward side 1
            hp_of_edge[e.idx] = (h, o == 1);
        }
    }

    // assign: vertex -> the unique vertex w; edge e -> loop of its hyperplane
    // with flip when the co-orientation runs against the edge; square and
    // higher: the clique cube of the involved hyperplanes, coords matched up.
    let w = salv.cell_by_name("w").unwrap();
    let loop_of: Vec<CellId> = (0..hps.len())
        .map(|h| salv.cell_by_name(&format!("x{}", h + 1)).unwrap())
        .collect();
    let clique_cell = |hs: &[usize]| -> CellId {
        let name = hs
            .iter()
            .map(|&h| format!("x{}", h + 1))
            .collect::<Vec<_>>()
            .join("_");
        salv.cell_by_name(&name).expect("clique cube exists")
    };

    let mut hp_of: HashMap<Midcube, usize> = HashMap::new();
    for (h, hp) in hps.iter().enumerate() {
        for &m in &hp.midcubes {
            hp_of.insert(m, h);
        }
    }

    let mut assign: Vec<Vec<(CellId, SignedPermutation)>> = Vec::new();
    assign.push(x.cells(0).map(|_| (w, SignedPermutation::identity(0))).collect());
    if x.dim() >= 1 {
        assign.push(
            x.cells(1)
                .map(|e| {
                    let (h, fwd) = hp_of_edge[e.idx];
                    (
                        loop_of[h],
                        SignedPermutation::new(vec![(0, !fwd)]).unwrap(),
                    )
                })
                .collect(),
        );
    }
    for d in 2..=x.dim() {
        let mut row = Vec::new();
        for c in x.cells(d) {
            let hs: Vec<usize> = (0..d)
                .map(|i| hp_of[&Midcube { cell: c, coord: i }])
                .collect();
            let mut sorted: Vec<usize> = hs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            debug_assert_eq!(sorted.len(), d, "specialness excludes self-crossing");
            let target = clique_cell(&sorted);
            // coord i of c goes to the slot of its hyperplane in the sorted
            // clique; flip when the edge-level co-orientation disagrees with
            // increasing coordinate i. Determine via the edge at corner 0.
            let images: Vec<(usize, bool)> = (0..d)
                .map(|i| {
                    let slot = sorted.iter().position(|&h| h == hs[i]).unwrap();
                    let constraints: Vec<(usize, u8)> =
                        (0..d).filter(|&j| j != i).map(|j| (j, 0)).collect();
                    let (e, sigma) = x.resolve_face(c, &constraints);
                    let (_, flip) = sigma.image(0);
                    let (_, fwd) = hp_of_edge[e.idx];
                    // increasing coord i traverses e forward iff !flip
                    (slot, !(fwd == !flip))
                })
                .collect();
            row.push((target, SignedPermutation::new(images).unwrap()));
        }
        assign.push(row);
    }
    let map = CubicalMap::new(x.clone(), salv.clone(), assign)
        .expect("label map is well-formed");
    let target = SalvettiTarget {
        complex: salv,
        edge_labels: hp_of_edge,
        graph,
    };
    Ok((target, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        klein_bottle, salvetti, surface_complex, torus_complex, SimplicialGraph,
    };

    #[test]
    fn torus_has_n_hyperplanes() {
        for n in 1..=3 {
            let t = torus_complex(n).unwrap();
            let hps = hyperplanes(&t);
            assert_eq!(hps.len(), n);
            assert!(hps.iter().all(|h| h.two_sided));
        }
    }

    #[test]
    fn torus_hyperplanes_cross_pairwise() {
        let t = torus_complex(3).unwrap();
        let cg = crossing_graph(&t);
        assert_eq!(cg.hyperplanes, 3);
        assert_eq!(cg.edges.len(), 3);
        assert!(cg.self_crossing.is_empty());
    }

    #[test]
    fn klein_bottle_has_a_one_sided_hyperplane() {
        let k = klein_bottle();
        let hps = hyperplanes(&k);
        assert_eq!(hps.len(), 2);
        let sided: Vec<bool> = hps.iter().map(|h| h.two_sided).collect();
        assert_eq!(sided.iter().filter(|&&s| !s).count(), 1);
        let report = pathologies(&k);
        assert_eq!(report.one_sided.len(), 1);
    }

    #[test]
    fn torus_is_special() {
        for n in 1..=3 {
            let t = torus_complex(n).unwrap();
            assert!(is_special(&t).unwrap().is_special());
        }
    }

    #[test]
    fn squared_surface_self_osculates_at_the_center() {
        // In the squared 4g-gon cubulation two hyperplanes run through
        // opposite spokes of the central vertex with consistent
        // co-orientation, so this particular cubulation is not special.
        let s = surface_complex(2, true).unwrap();
        let report = is_special(&s).unwrap();
        assert!(report.one_sided.is_empty());
        assert!(report.self_crossing.is_empty());
        assert_eq!(report.self_osculating.len(), 2);
        let center = s.cell_by_name("x").unwrap();
        assert!(report.self_osculating.iter().all(|&(_, v)| v == center));
    }

    #[test]
    fn salvetti_complexes_are_special() {
        for g in [
            SimplicialGraph::edgeless(2),
            SimplicialGraph::path(3),
            SimplicialGraph::cycle(5),
            SimplicialGraph::complete(3),
        ] {
            let s = salvetti(&g).unwrap();
            assert!(is_special(&s).unwrap().is_special());
        }
    }

    #[test]
    fn graphs_are_special() {
        // each hyperplane of a graph is a single edge midpoint with one dual
        // edge, so no pathology can occur
        let w = crate::constructions::wedge_of_circles(2);
        let report = pathologies(&w);
        assert_eq!(hyperplanes(&w).len(), 2);
        assert!(report.is_special());
    }

    #[test]
    fn torus_carrier_is_an_annulus() {
        let t = torus_complex(2).unwrap();
        let hps = hyperplanes(&t);
        let (n, map) = carrier(&t, &hps[0]).unwrap();
        assert_eq!(n.counts(), vec![2, 3, 1]);
        assert_eq!(n.euler_characteristic(), 0);
        assert!(map.validate().is_ok());
        assert!(map.is_local_isometry().is_ok());
    }

    #[test]
    fn surface_carriers_are_locally_isometric(){
        let s = surface_complex(2, true).unwrap();
        for hp in hyperplanes(&s) {
            let (_, map) = carrier(&s, &hp).unwrap();
            assert!(map.validate().is_ok());
            assert!(map.is_local_isometry().is_ok());
        }
    }

    #[test]
    fn special_complex_maps_to_salvetti() {
        for x in [
            torus_complex(2).unwrap(),
            torus_complex(3).unwrap(),
            salvetti(&SimplicialGraph::cycle(5)).unwrap(),
            salvetti(&SimplicialGraph::path(3)).unwrap(),
        ] {
            let (target, map) = special_to_salvetti(&x).unwrap();
            assert!(map.validate().is_ok(), "{:?}", map.validate());
            assert!(map.is_local_isometry().is_ok());
            assert_eq!(target.complex.cell_count(0), 1);
        }
    }

    #[test]
    fn non_special_complex_has_no_salvetti_map() {
        // the Klein bottle is NPC but has a one-sided hyperplane
        assert!(special_to_salvetti(&klein_bottle()).is_err());
    }

    #[test]
    fn graph_maps_to_salvetti_of_a_free_group() {
        let w = crate::constructions::wedge_of_circles(2);
        let (target, map) = special_to_salvetti(&w).unwrap();
        assert_eq!(target.complex.counts(), vec![1, 2]);
        assert!(map.validate().is_ok());
        assert!(map.is_local_isometry().is_ok());
    }
}
