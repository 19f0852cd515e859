//! Text formats for the toolkit's objects, plus DOT export.
//!
//! All formats are line-oriented: `#` starts a comment, blank lines are
//! ignored, and a line ending in `:` opens a section whose items occupy the
//! following lines (short sections may also put their items inline after the
//! colon).  Signed permutations use one-based signed list notation, e.g.
//! `(2,-1,3)` sends coordinate 1 to 2, coordinate 2 to 1 reversed, and fixes
//! coordinate 3.
//!
//! Formats:
//! - gluing presentations: `cubes:` lines `id dim`; `gluings:` lines
//!   `src coord side -> dst (perm)`;
//! - square complexes: `vertices:` names; `edges:` lines `id tail head`;
//!   `squares:` lines `id w1 w2 w3 w4` with `~` marking a reversed edge;
//! - simplicial graphs: `vertices: a b c` / `edges: a-b b-c`;
//! - wall spaces: `points: a b c` then `wall: {a,b} | {c}` lines;
//! - permutation assignments: `degree d` then `edge: (1 2)(3)` cycle lines;
//! - edge paths: `path: e1 ~e2 e3`;
//! - cubical maps: `map:` lines `src -> dst (perm)`;
//! - presentations: `gens: a b` / `rels: abAB` (uppercase = inverse).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{CubeComplex, FacetGluing, GluingPresentation};
use crate::constructions::{PermutationAssignment, SimplicialGraph, SquareComplex, WordEdge};
use crate::error::{ComplexError, CoverError, GroupError, MapError, MetricError, WallError};
use crate::groups::{word_from_str, word_to_str, CayleyGraphBall, Presentation};
use crate::hyperplanes::hyperplanes;
use crate::maps::CubicalMap;
use crate::metric::EdgePath;
use crate::perm::SignedPermutation;
use crate::walls::WallSpace;

/// Errors raised while reading the text formats.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error(transparent)]
    Complex(#[from] ComplexError),

    #[error(transparent)]
    Cover(#[from] CoverError),

    #[error(transparent)]
    Map(#[from] MapError),

    #[error(transparent)]
    Metric(#[from] MetricError),

    #[error(transparent)]
    Wall(#[from] WallError),

    #[error(transparent)]
    Group(#[from] GroupError),
}

fn syntax(line: usize, message: impl Into<String>) -> IoError {
    IoError::Syntax {
        line: line + 1,
        message: message.into(),
    }
}

/// Split a document into `(section name, item lines)` pairs; each item line
/// carries its 0-based line number.
fn sections(text: &str) -> Result<Vec<(String, Vec<(usize, String)>)>, IoError> {
    let mut out: Vec<(String, Vec<(usize, String)>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((head, rest)) = line.split_once(':') {
            let head = head.trim();
            if !head.contains(char::is_whitespace) {
                out.push((head.to_string(), Vec::new()));
                let rest = rest.trim();
                if !rest.is_empty() {
                    out.last_mut().unwrap().1.push((ln, rest.to_string()));
                }
                continue;
            }
        }
        match out.last_mut() {
            Some((_, items)) => items.push((ln, line.to_string())),
            None => return Err(syntax(ln, "content before any section header")),
        }
    }
    Ok(out)
}

/// Parse `(2,-1,3)`; `()` is the empty permutation.
pub fn parse_perm(text: &str) -> Result<SignedPermutation, ComplexError> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| ComplexError::Malformed(format!("permutation {text} is not bracketed")))?;
    let mut images = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: i64 = part
            .parse()
            .map_err(|_| ComplexError::Malformed(format!("bad permutation entry {part}")))?;
        if v == 0 {
            return Err(ComplexError::Malformed("permutation entries are one-based".into()));
        }
        images.push(((v.unsigned_abs() as usize) - 1, v < 0));
    }
    SignedPermutation::new(images)
}

/// Parse the gluing-presentation format.
pub fn parse_gluing_presentation(text: &str) -> Result<GluingPresentation, IoError> {
    let mut p = GluingPresentation::default();
    for (name, items) in sections(text)? {
        match name.as_str() {
            "cubes" => {
                for (ln, item) in items {
                    let mut tok = item.split_whitespace();
                    let (Some(id), Some(dim), None) = (tok.next(), tok.next(), tok.next()) else {
                        return Err(syntax(ln, "expected `id dim`"));
                    };
                    let dim = dim
                        .parse()
                        .map_err(|_| syntax(ln, format!("bad dimension {dim}")))?;
                    p.cubes.push((id.to_string(), dim));
                }
            }
            "gluings" => {
                for (ln, item) in items {
                    let (lhs, rhs) = item
                        .split_once("->")
                        .ok_or_else(|| syntax(ln, "expected `src coord side -> dst (perm)`"))?;
                    let mut tok = lhs.split_whitespace();
                    let (Some(src), Some(coord), Some(side), None) =
                        (tok.next(), tok.next(), tok.next(), tok.next())
                    else {
                        return Err(syntax(ln, "expected `src coord side` before ->"));
                    };
                    let mut tok = rhs.split_whitespace();
                    let (Some(dst), Some(perm), None) = (tok.next(), tok.next(), tok.next()) else {
                        return Err(syntax(ln, "expected `dst (perm)` after ->"));
                    };
                    p.gluings.push(FacetGluing {
                        source: src.to_string(),
                        coord: coord
                            .parse()
                            .map_err(|_| syntax(ln, format!("bad coordinate {coord}")))?,
                        side: match side {
                            "0" => 0,
                            "1" => 1,
                            other => return Err(syntax(ln, format!("bad side {other}"))),
                        },
                        target: dst.to_string(),
                        correspondence: parse_perm(perm)?,
                    });
                }
            }
            other => return Err(syntax(0, format!("unknown section {other}"))),
        }
    }
    Ok(p)
}

/// Write the gluing-presentation format; parses back to an equal value.
pub fn write_gluing_presentation(p: &GluingPresentation) -> String {
    let mut out = String::from("cubes:\n");
    for (id, dim) in &p.cubes {
        out.push_str(&format!("  {id} {dim}\n"));
    }
    out.push_str("gluings:\n");
    for g in &p.gluings {
        out.push_str(&format!(
            "  {} {} {} -> {} {}\n",
            g.source, g.coord, g.side, g.target, g.correspondence
        ));
    }
    out
}

/// Parse the dimension-≤2 convenience format into a [`SquareComplex`].
pub fn parse_square_complex(text: &str) -> Result<SquareComplex, IoError> {
    let mut sc = SquareComplex {
        vertices: Vec::new(),
        edges: Vec::new(),
        squares: Vec::new(),
    };
    for (name, items) in sections(text)? {
        match name.as_str() {
            "vertices" => {
                for (_, item) in items {
                    sc.vertices.extend(item.split_whitespace().map(String::from));
                }
            }
            "edges" => {
                for (ln, item) in items {
                    let tok: Vec<&str> = item.split_whitespace().collect();
                    let [id, tail, head] = tok.as_slice() else {
                        return Err(syntax(ln, "expected `id tail head`"));
                    };
                    sc.edges
                        .push((id.to_string(), tail.to_string(), head.to_string()));
                }
            }
            "squares" => {
                for (ln, item) in items {
                    let tok: Vec<&str> = item.split_whitespace().collect();
                    let [id, w0, w1, w2, w3] = tok.as_slice() else {
                        return Err(syntax(ln, "expected `id w1 w2 w3 w4`"));
                    };
                    let word = [w0, w1, w2, w3].map(|w| match w.strip_prefix('~') {
                        Some(e) => WordEdge::rev(e),
                        None => WordEdge::fwd(w),
                    });
                    sc.squares.push((id.to_string(), word));
                }
            }
            other => return Err(syntax(0, format!("unknown section {other}"))),
        }
    }
    Ok(sc)
}

/// Write the square-complex convenience format.
pub fn write_square_complex(sc: &SquareComplex) -> String {
    let mut out = format!("vertices: {}\n", sc.vertices.join(" "));
    out.push_str("edges:\n");
    for (id, tail, head) in &sc.edges {
        out.push_str(&format!("  {id} {tail} {head}\n"));
    }
    out.push_str("squares:\n");
    for (id, word) in &sc.squares {
        let w: Vec<String> = word
            .iter()
            .map(|e| {
                if e.reversed {
                    format!("~{}", e.edge)
                } else {
                    e.edge.clone()
                }
            })
            .collect();
        out.push_str(&format!("  {id} {}\n", w.join(" ")));
    }
    out
}

/// Parse either complex format: a document containing a `vertices` section is
/// read as a square complex, otherwise as a gluing presentation.
pub fn parse_complex(text: &str) -> Result<GluingPresentation, IoError> {
    if sections(text)?.iter().any(|(n, _)| n == "vertices") {
        Ok(parse_square_complex(text)?.to_presentation()?)
    } else {
        parse_gluing_presentation(text)
    }
}

/// Parse `vertices: a b c` / `edges: a-b b-c`.
pub fn parse_graph(text: &str) -> Result<SimplicialGraph, IoError> {
    let mut vertices = Vec::new();
    let mut edge_items = Vec::new();
    for (name, items) in sections(text)? {
        match name.as_str() {
            "vertices" => {
                for (_, item) in items {
                    vertices.extend(item.split_whitespace().map(String::from));
                }
            }
            "edges" => edge_items.extend(items),
            other => return Err(syntax(0, format!("unknown section {other}"))),
        }
    }
    let mut g = SimplicialGraph::new(vertices);
    for (ln, item) in edge_items {
        for pair in item.split_whitespace() {
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| syntax(ln, format!("expected `a-b`, got {pair}")))?;
            let ia = g
                .vertex_index(a.trim())
                .ok_or_else(|| syntax(ln, format!("unknown vertex {a}")))?;
            let ib = g
                .vertex_index(b.trim())
                .ok_or_else(|| syntax(ln, format!("unknown vertex {b}")))?;
            if ia == ib {
                return Err(syntax(ln, format!("loop at vertex {a}")));
            }
            g.add_edge(ia, ib);
        }
    }
    Ok(g)
}

/// Write the simplicial-graph format.
pub fn write_graph(g: &SimplicialGraph) -> String {
    let edges: Vec<String> = g
        .edges
        .iter()
        .map(|&(a, b)| format!("{}-{}", g.vertices[a], g.vertices[b]))
        .collect();
    format!(
        "vertices: {}\nedges: {}\n",
        g.vertices.join(" "),
        edges.join(" ")
    )
}

/// Parse `points: a b c` plus `wall: {a,b} | {c}` lines; both halves must
/// partition the point set.
pub fn parse_wall_space(text: &str) -> Result<WallSpace, IoError> {
    let mut points = Vec::new();
    let mut wall_items = Vec::new();
    for (name, items) in sections(text)? {
        match name.as_str() {
            "points" => {
                for (_, item) in items {
                    points.extend(item.split_whitespace().map(String::from));
                }
            }
            "wall" => wall_items.extend(items),
            other => return Err(syntax(0, format!("unknown section {other}"))),
        }
    }
    if points.len() > 64 {
        return Err(IoError::Wall(WallError::Malformed(format!(
            "{} points exceed the 64-point limit",
            points.len()
        ))));
    }
    let mut ws = WallSpace::new(points);
    for (ln, item) in wall_items {
        let (left, right) = item
            .split_once('|')
            .ok_or_else(|| syntax(ln, "expected `{..} | {..}`"))?;
        let half = |s: &str| -> Result<BTreeSet<usize>, IoError> {
            let inner = s
                .trim()
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| syntax(ln, format!("half {s} is not braced")))?;
            inner
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    ws.point_index(t)
                        .ok_or_else(|| IoError::Wall(WallError::UnknownPoint(t.to_string())))
                })
                .collect()
        };
        let l = half(left)?;
        let r = half(right)?;
        if l.intersection(&r).next().is_some() || l.len() + r.len() != ws.points.len() {
            return Err(syntax(ln, "wall halves do not partition the points"));
        }
        ws.add_wall(l);
    }
    Ok(ws)
}

/// Write the wall-space format.
pub fn write_wall_space(ws: &WallSpace) -> String {
    let mut out = format!("points: {}\n", ws.points.join(" "));
    for w in &ws.walls {
        let half = |mask: u64| -> String {
            let names: Vec<&str> = (0..ws.points.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| ws.points[i].as_str())
                .collect();
            format!("{{{}}}", names.join(","))
        };
        out.push_str(&format!("wall: {} | {}\n", half(w.left), half(w.right)));
    }
    out
}

/// Parse `degree d` plus `edge: (1 2)(3)` cycle-notation lines (one-based;
/// omitted points are fixed, `id` denotes the identity).  `edge_names` fixes
/// the edge order of the base complex.
pub fn parse_assignment(
    text: &str,
    edge_names: &[String],
) -> Result<PermutationAssignment, IoError> {
    let secs = sections(text)?;
    let degree_items: Vec<&(usize, String)> = secs
        .iter()
        .filter(|(n, _)| n == "degree")
        .flat_map(|(_, i)| i)
        .collect();
    let [(ln, d)] = degree_items.as_slice() else {
        return Err(syntax(0, "expected exactly one `degree:` entry"));
    };
    let degree: usize = d
        .trim()
        .parse()
        .map_err(|_| syntax(*ln, format!("bad degree {d}")))?;
    if degree == 0 {
        return Err(syntax(*ln, "degree must be positive"));
    }
    let mut a = PermutationAssignment::identity(degree, edge_names.len());
    for (name, items) in &secs {
        if name == "degree" {
            continue;
        }
        let slot = edge_names
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| IoError::Cover(CoverError::MissingEdge(name.clone())))?;
        for (ln, item) in items {
            let item = item.trim();
            if item == "id" {
                continue;
            }
            for cycle in item.split(')').filter(|c| !c.trim().is_empty()) {
                let cycle = cycle
                    .trim()
                    .strip_prefix('(')
                    .ok_or_else(|| syntax(*ln, format!("bad cycle {cycle}")))?;
                let entries: Vec<usize> = cycle
                    .split([' ', ','])
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .ok()
                            .filter(|&v| (1..=degree).contains(&v))
                            .map(|v| v - 1)
                            .ok_or_else(|| syntax(*ln, format!("bad cycle entry {t}")))
                    })
                    .collect::<Result<_, _>>()?;
                for (k, &s) in entries.iter().enumerate() {
                    a.perms[slot][s] = entries[(k + 1) % entries.len()];
                }
            }
        }
        let mut seen = vec![false; degree];
        for &img in &a.perms[slot] {
            seen[img] = true;
        }
        if seen.contains(&false) {
            return Err(IoError::Complex(ComplexError::Malformed(format!(
                "cycles for edge {name} do not define a permutation"
            ))));
        }
    }
    Ok(a)
}

/// Parse `path: e1 ~e2 e3` against a complex; the start vertex is the tail of
/// the first (possibly reversed) edge.
pub fn parse_edge_path(x: &CubeComplex, text: &str) -> Result<EdgePath, IoError> {
    let secs = sections(text)?;
    let items: Vec<&(usize, String)> = secs
        .iter()
        .filter(|(n, _)| n == "path")
        .flat_map(|(_, i)| i)
        .collect();
    if items.is_empty() {
        return Err(syntax(0, "expected a `path:` section"));
    }
    let mut steps = Vec::new();
    for (ln, item) in items {
        for tok in item.split_whitespace() {
            let (name, reversed) = match tok.strip_prefix('~') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let cell = x
                .cell_by_name(name)
                .filter(|c| c.dim == 1)
                .ok_or_else(|| syntax(*ln, format!("unknown edge {name}")))?;
            steps.push((cell, reversed));
        }
    }
    let &(first, rev) = steps
        .first()
        .ok_or_else(|| IoError::Metric(MetricError::BadPath("empty path".into())))?;
    let (tail, head) = x.endpoints(first);
    Ok(EdgePath {
        start: if rev { head } else { tail },
        steps,
    })
}

/// Parse a `map:` section of `src -> dst (perm)` lines into a [`CubicalMap`].
pub fn parse_map(
    source: CubeComplex,
    target: CubeComplex,
    text: &str,
) -> Result<CubicalMap, IoError> {
    let mut assign: Vec<Vec<Option<(crate::complex::CellId, SignedPermutation)>>> = (0..=source
        .dim())
        .map(|d| vec![None; source.cell_count(d)])
        .collect();
    for (name, items) in sections(text)? {
        if name != "map" {
            return Err(syntax(0, format!("unknown section {name}")));
        }
        for (ln, item) in items {
            let (lhs, rhs) = item
                .split_once("->")
                .ok_or_else(|| syntax(ln, "expected `src -> dst (perm)`"))?;
            let src = source
                .cell_by_name(lhs.trim())
                .ok_or_else(|| IoError::Map(MapError::DanglingCell(lhs.trim().to_string())))?;
            let mut tok = rhs.split_whitespace();
            let (Some(dst), Some(perm), None) = (tok.next(), tok.next(), tok.next()) else {
                return Err(syntax(ln, "expected `dst (perm)` after ->"));
            };
            let dst = target
                .cell_by_name(dst)
                .ok_or_else(|| IoError::Map(MapError::DanglingCell(dst.to_string())))?;
            assign[src.dim][src.idx] = Some((dst, parse_perm(perm)?));
        }
    }
    let mut full = Vec::with_capacity(assign.len());
    for (d, cells) in assign.into_iter().enumerate() {
        let mut dim = Vec::with_capacity(cells.len());
        for (idx, c) in cells.into_iter().enumerate() {
            dim.push(c.ok_or_else(|| {
                IoError::Map(MapError::MissingAssignment(
                    source.name(crate::complex::CellId::new(d, idx)).to_string(),
                ))
            })?);
        }
        full.push(dim);
    }
    Ok(CubicalMap::new(source, target, full)?)
}

/// Write a cubical map in the `map:` format.
pub fn write_map(m: &CubicalMap) -> String {
    let mut out = String::from("map:\n");
    for c in m.source().all_cells() {
        let (img, corr) = m.image(c);
        out.push_str(&format!(
            "  {} -> {} {}\n",
            m.source().name(c),
            m.target().name(img),
            corr
        ));
    }
    out
}

/// Parse `gens: a b` / `rels: abAB ...` (uppercase = inverse).
pub fn parse_presentation(text: &str) -> Result<Presentation, IoError> {
    let mut gens: Vec<String> = Vec::new();
    let mut rel_items = Vec::new();
    for (name, items) in sections(text)? {
        match name.as_str() {
            "gens" => {
                for (_, item) in items {
                    gens.extend(item.split_whitespace().map(String::from));
                }
            }
            "rels" => rel_items.extend(items),
            other => return Err(syntax(0, format!("unknown section {other}"))),
        }
    }
    let mut rels = Vec::new();
    for (_, item) in rel_items {
        for word in item.split_whitespace() {
            rels.push(word_from_str(&gens, word)?);
        }
    }
    Ok(Presentation::new(gens, rels)?)
}

/// Write the presentation format.
pub fn write_presentation(p: &Presentation) -> String {
    let rels: Vec<String> = p
        .relators
        .iter()
        .map(|r| word_to_str(&p.generators, r))
        .collect();
    format!(
        "gens: {}\nrels: {}\n",
        p.generators.join(" "),
        rels.join(" ")
    )
}

const DOT_PALETTE: [&str; 10] = [
    "red", "blue", "forestgreen", "orange", "purple", "brown", "deeppink", "teal", "gold", "gray",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// DOT export of the 1-skeleton, with edges colored by hyperplane class.
pub fn complex_to_dot(x: &CubeComplex) -> String {
    let classes = hyperplanes(x);
    let mut class_of = vec![0usize; x.cell_count(1)];
    for (h, hp) in classes.iter().enumerate() {
        for e in hp.dual_edges(x) {
            class_of[e.idx] = h;
        }
    }
    let mut out = String::from("graph {\n");
    for v in x.cells(0) {
        out.push_str(&format!("  {};\n", quote(x.name(v))));
    }
    for e in x.cells(1) {
        let (tail, head) = x.endpoints(e);
        let color = DOT_PALETTE[class_of[e.idx] % DOT_PALETTE.len()];
        out.push_str(&format!(
            "  {} -- {} [label={}, color={}];\n",
            quote(x.name(tail)),
            quote(x.name(head)),
            quote(x.name(e)),
            color
        ));
    }
    out.push_str("}\n");
    out
}

/// DOT export of a simplicial graph.
pub fn graph_to_dot(g: &SimplicialGraph) -> String {
    let mut out = String::from("graph {\n");
    for v in &g.vertices {
        out.push_str(&format!("  {};\n", quote(v)));
    }
    for &(a, b) in &g.edges {
        out.push_str(&format!(
            "  {} -- {};\n",
            quote(&g.vertices[a]),
            quote(&g.vertices[b])
        ));
    }
    out.push_str("}\n");
    out
}

/// DOT export of a Cayley-graph ball with generator labels on the edges.
pub fn ball_to_dot(ball: &CayleyGraphBall) -> String {
    let gens = ball.spec.generator_names();
    let label = |w: &[i32]| -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            word_to_str(&gens, w)
        }
    };
    let mut out = String::from("digraph {\n");
    for w in &ball.vertices {
        out.push_str(&format!("  {};\n", quote(&label(w))));
    }
    for &(from, to, s) in &ball.edges {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(&label(&ball.vertices[from])),
            quote(&label(&ball.vertices[to])),
            quote(&word_to_str(&gens, &[s]))
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{surface_complex, torus_complex};

    #[test]
    fn gluing_presentation_round_trips() {
        for p in [
            torus_complex(2).unwrap().to_presentation(),
            torus_complex(3).unwrap().to_presentation(),
            surface_complex(2, true).unwrap().to_presentation(),
        ] {
            let text = write_gluing_presentation(&p);
            let back = parse_gluing_presentation(&text).unwrap();
            assert_eq!(back, p);
            assert!(back.compile().is_ok());
        }
    }

    #[test]
    fn square_complex_round_trips_and_compiles() {
        let text = "\
# the torus as one square
vertices: v
edges:
  a v v
  b v v
squares:
  q a b ~a ~b
";
        let sc = parse_square_complex(text).unwrap();
        let x = sc.to_presentation().unwrap().compile().unwrap();
        assert_eq!(x.counts(), vec![1, 2, 1]);
        let again = parse_square_complex(&write_square_complex(&sc)).unwrap();
        assert_eq!(again, sc);
        // parse_complex dispatches on the `vertices` section.
        assert!(parse_complex(text).unwrap().compile().is_ok());
    }

    #[test]
    fn graph_format_round_trips() {
        let g = parse_graph("vertices: a b c\nedges: a-b b-c\n").unwrap();
        assert_eq!(g.vertices.len(), 3);
        assert_eq!(g.edges.len(), 2);
        assert!(g.adjacent(0, 1) && g.adjacent(1, 2) && !g.adjacent(0, 2));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert!(parse_graph("vertices: a\nedges: a-b\n").is_err());
    }

    #[test]
    fn wall_space_format_round_trips() {
        let text = "points: a b c d\nwall: {a,b} | {c,d}\nwall: {a} | {b,c,d}\n";
        let ws = parse_wall_space(text).unwrap();
        assert_eq!(ws.walls.len(), 2);
        assert!(ws.validate().is_ok());
        assert_eq!(parse_wall_space(&write_wall_space(&ws)).unwrap(), ws);
        // Non-partition halves are rejected.
        assert!(parse_wall_space("points: a b\nwall: {a} | {a,b}\n").is_err());
        assert!(parse_wall_space("points: a b\nwall: {a} | {}\n").is_err());
    }

    #[test]
    fn assignment_cycles_parse() {
        let edges = vec!["a".to_string(), "b".to_string()];
        let a = parse_assignment("degree: 3\na: (1 2 3)\nb: id\n", &edges).unwrap();
        assert_eq!(a.degree, 3);
        assert_eq!(a.perms[0], vec![1, 2, 0]);
        assert_eq!(a.perms[1], vec![0, 1, 2]);
        assert!(parse_assignment("degree: 2\nc: (1 2)\n", &edges).is_err());
    }

    #[test]
    fn edge_path_parses_against_complex() {
        let x = torus_complex(2).unwrap();
        let path = parse_edge_path(&x, "path: T01 ~T10 T01\n").unwrap();
        assert_eq!(path.steps.len(), 3);
        assert_eq!(path.start, x.cell_by_name("T00").unwrap());
        assert!(parse_edge_path(&x, "path: nope\n").is_err());
    }

    #[test]
    fn map_format_round_trips() {
        let x = torus_complex(2).unwrap();
        let m = CubicalMap::identity(&x);
        let text = write_map(&m);
        let back = parse_map(x.clone(), x.clone(), &text).unwrap();
        assert!(back.validate().is_ok());
        assert_eq!(
            back.image_cell(crate::complex::CellId::new(2, 0)),
            crate::complex::CellId::new(2, 0)
        );
        // A missing assignment is reported by cell name.
        assert!(parse_map(x.clone(), x, "map:\n  T0 -> T0 ()\n").is_err());
    }

    #[test]
    fn presentation_format_round_trips() {
        let p = parse_presentation("gens: a b\nrels: abAB\n").unwrap();
        assert_eq!(p.generators, vec!["a", "b"]);
        assert_eq!(p.relators, vec![vec![1, 2, -1, -2]]);
        assert_eq!(parse_presentation(&write_presentation(&p)).unwrap(), p);
    }

    #[test]
    fn dot_exports_are_well_formed() {
        let x = torus_complex(2).unwrap();
        let dot = complex_to_dot(&x);
        assert!(dot.starts_with("graph {"));
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert!(dot.contains("color=red") && dot.contains("color=blue"));

        let ball = crate::groups::cayley_ball(crate::groups::GroupSpec::Free(1), 1).unwrap();
        let bdot = ball_to_dot(&ball);
        assert!(bdot.starts_with("digraph {"));
        assert!(bdot.contains("label=\"a\"") && bdot.contains("label=\"A\""));
    }
}
