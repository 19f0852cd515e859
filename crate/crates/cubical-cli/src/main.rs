//! Command-line front end for the cube-complex toolkit.
//!
//! Exit codes: 0 = success / verdict true, 1 = verdict false, 2 = input
//! error.  `--format json` emits a versioned JSON report on stdout; the
//! default text format is line-oriented and human-readable.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubical::complex::CubeComplex;
use cubical::constructions::{
    one_vertex_cover, product, salvetti, subdivide, surface_complex, torus_complex,
    SimplicialGraph,
};
use cubical::curvature::is_npc;
use cubical::groups::{
    cayley_ball, delta_estimate, pieces, small_cancellation, symmetrize, word_to_str,
    CayleyGraphBall, GroupSpec,
};
use cubical::hyperplanes::{
    carrier, crossing_graph, hyperplanes, pathologies, special_to_salvetti,
};
use cubical::io::{
    ball_to_dot, complex_to_dot, graph_to_dot, parse_assignment, parse_complex, parse_edge_path,
    parse_graph, parse_presentation, parse_wall_space, write_gluing_presentation, write_graph,
};
use cubical::metric::{is_convex, is_geodesic, ConvexityMode, Subcomplex};
use cubical::walls::dual;

const SCHEMA: &str = "cubical.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Corner,
    Geodesic,
}

#[derive(Parser)]
#[command(
    name = "cubical",
    about = "Combinatorial non-positively curved cube complexes: checks, constructions, exports"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a complex file and report its cell counts.
    Compile { file: String },
    /// Check non-positive curvature (flag links) of a complex.
    Npc { file: String },
    /// List the hyperplanes of a complex.
    Hyperplanes { file: String },
    /// Check specialness and report hyperplane pathologies.
    Special { file: String },
    /// Build the carrier of one hyperplane and check its inclusion map.
    Carrier {
        file: String,
        /// Hyperplane index.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Emit the hyperplane crossing graph.
    CrossingGraph { file: String },
    /// Build the canonical local isometry to a Salvetti complex.
    ToSalvetti { file: String },
    /// Build the Salvetti complex of a simplicial graph.
    Salvetti { graph: String },
    /// Build the squared cubulation of a closed surface.
    Surface {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        nonorientable: bool,
    },
    /// Build the one-cube n-torus.
    Torus {
        #[arg(long)]
        dim: usize,
    },
    /// Build the product of two complexes.
    Product { file1: String, file2: String },
    /// Cubically subdivide a complex.
    Subdivide { file: String },
    /// Build a finite cover of a one-vertex complex from a permutation
    /// assignment.
    Cover { file: String, assignment: String },
    /// Build the Sageev dual of a wall space.
    Dual { file: String },
    /// Check whether an edge path is geodesic.
    Geodesic { file: String, path: String },
    /// Check convexity of the full subcomplex spanned by the given cells.
    Convex {
        file: String,
        /// Comma-separated cell names; the subcomplex is their closure.
        #[arg(long, value_delimiter = ',')]
        cells: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Corner)]
        mode: Mode,
    },
    /// Compute pieces and the C'(1/n) and C(n) conditions of a presentation.
    Smallcancel {
        file: String,
        #[arg(long)]
        n: usize,
    },
    /// Build a Cayley-graph ball of a free group or RAAG.
    Cayley {
        /// Rank of a free group.
        #[arg(long, conflicts_with = "raag")]
        free: Option<usize>,
        /// Graph file of a right-angled Artin group.
        #[arg(long)]
        raag: Option<String>,
        #[arg(long)]
        radius: usize,
        /// Emit the ball as DOT with generator edge labels.
        #[arg(long)]
        dot: bool,
    },
    /// Estimate the thin-triangle constant on a Cayley-graph ball.
    Delta {
        #[arg(long, conflicts_with = "raag")]
        free: Option<usize>,
        #[arg(long)]
        raag: Option<String>,
        #[arg(long)]
        radius: usize,
    },
    /// Export a complex's 1-skeleton (or a graph file) to DOT.
    ExportDot {
        file: String,
        /// Export the crossing graph instead of the 1-skeleton.
        #[arg(long)]
        crossing: bool,
    },
}

/// An input error: message printed to stderr, exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read(path: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
}

fn load_complex(path: &str) -> Result<CubeComplex, InputError> {
    Ok(parse_complex(&read(path)?)?.compile()?)
}

struct Report {
    command: &'static str,
    text: String,
    json: Value,
    exit: u8,
}

impl Report {
    fn emit(self, format: Format) -> ExitCode {
        use std::io::Write;
        // Ignore write failures (e.g. a closed pipe) instead of panicking.
        let mut out = std::io::stdout().lock();
        let _ = match format {
            Format::Text => write!(out, "{}", self.text),
            Format::Json => {
                let mut v = self.json;
                v["schema"] = json!(SCHEMA);
                v["command"] = json!(self.command);
                writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap())
            }
        };
        ExitCode::from(self.exit)
    }
}

fn cell_names(x: &CubeComplex, cells: impl IntoIterator<Item = cubical::complex::CellId>) -> Vec<String> {
    cells.into_iter().map(|c| x.name(c).to_string()).collect()
}

fn complex_report(command: &'static str, x: &CubeComplex) -> Report {
    Report {
        command,
        text: write_gluing_presentation(&x.to_presentation()),
        json: json!({
            "counts": x.counts(),
            "euler_characteristic": x.euler_characteristic(),
            "presentation": x.to_presentation(),
        }),
        exit: 0,
    }
}

fn group_spec(free: Option<usize>, raag: &Option<String>) -> Result<GroupSpec, InputError> {
    match (free, raag) {
        (Some(k), None) => Ok(GroupSpec::Free(k)),
        (None, Some(path)) => Ok(GroupSpec::Raag(parse_graph(&read(path)?)?)),
        _ => Err(InputError("specify exactly one of --free and --raag".into())),
    }
}

fn ball_of(free: Option<usize>, raag: &Option<String>, radius: usize) -> Result<CayleyGraphBall, InputError> {
    Ok(cayley_ball(group_spec(free, raag)?, radius)?)
}

fn crossing_to_graph(x: &CubeComplex) -> SimplicialGraph {
    let cg = crossing_graph(x);
    let mut g = SimplicialGraph::new((0..cg.hyperplanes).map(|h| format!("H{h}")).collect());
    for &(a, b) in &cg.edges {
        g.add_edge(a, b);
    }
    g
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    Ok(match &cli.command {
        Command::Compile { file } => {
            let x = load_complex(file)?;
            Report {
                command: "compile",
                text: format!(
                    "cells per dimension: {:?}\neuler characteristic: {}\n",
                    x.counts(),
                    x.euler_characteristic()
                ),
                json: json!({
                    "counts": x.counts(),
                    "euler_characteristic": x.euler_characteristic(),
                }),
                exit: 0,
            }
        }
        Command::Npc { file } => {
            let x = load_complex(file)?;
            let report = is_npc(&x);
            let mut text = format!("npc: {}\n", report.npc);
            let mut failures = Vec::new();
            for f in &report.failures {
                text.push_str(&format!(
                    "vertex {}: {}\n",
                    x.name(f.vertex),
                    match (&f.simplicial, &f.flag) {
                        (Some(s), _) => format!("link not simplicial: {s:?}"),
                        (None, Some(fl)) => format!("empty clique not filled: {:?}", fl.clique),
                        _ => "ok".into(),
                    }
                ));
                failures.push(json!({
                    "vertex": x.name(f.vertex),
                    "simplicial": f.simplicial.as_ref().map(|s| format!("{s:?}")),
                    "flag": f.flag.as_ref().map(|fl| format!("{:?}", fl.clique)),
                }));
            }
            Report {
                command: "npc",
                text,
                json: json!({ "npc": report.npc, "failures": failures }),
                exit: u8::from(!report.npc),
            }
        }
        Command::Hyperplanes { file } => {
            let x = load_complex(file)?;
            let hps = hyperplanes(&x);
            let mut text = format!("hyperplanes: {}\n", hps.len());
            let mut list = Vec::new();
            for (h, hp) in hps.iter().enumerate() {
                let edges = cell_names(&x, hp.dual_edges(&x));
                text.push_str(&format!(
                    "H{h}: {}, dual edges: {}\n",
                    if hp.two_sided { "two-sided" } else { "one-sided" },
                    edges.join(" ")
                ));
                list.push(json!({ "two_sided": hp.two_sided, "dual_edges": edges }));
            }
            Report {
                command: "hyperplanes",
                text,
                json: json!({ "count": hps.len(), "hyperplanes": list }),
                exit: 0,
            }
        }
        Command::Special { file } => {
            let x = load_complex(file)?;
            let npc = is_npc(&x);
            if !npc.npc {
                return Ok(Report {
                    command: "special",
                    text: "special: false (complex is not non-positively curved)\n".into(),
                    json: json!({ "special": false, "npc": false }),
                    exit: 1,
                });
            }
            let report = pathologies(&x);
            let special = report.is_special();
            let mut text = format!("special: {special}\n");
            if !report.one_sided.is_empty() {
                text.push_str(&format!("one-sided hyperplanes: {:?}\n", report.one_sided));
            }
            for (h, c) in &report.self_crossing {
                text.push_str(&format!("H{h} crosses itself in cube {}\n", x.name(*c)));
            }
            for (h, v) in &report.self_osculating {
                text.push_str(&format!("H{h} self-osculates at vertex {}\n", x.name(*v)));
            }
            for (h1, h2, v) in &report.inter_osculating {
                text.push_str(&format!(
                    "H{h1} and H{h2} inter-osculate at vertex {}\n",
                    x.name(*v)
                ));
            }
            Report {
                command: "special",
                text,
                json: json!({
                    "special": special,
                    "npc": true,
                    "one_sided": report.one_sided,
                    "self_crossing": report.self_crossing.iter()
                        .map(|(h, c)| json!([h, x.name(*c)])).collect::<Vec<_>>(),
                    "self_osculating": report.self_osculating.iter()
                        .map(|(h, v)| json!([h, x.name(*v)])).collect::<Vec<_>>(),
                    "inter_osculating": report.inter_osculating.iter()
                        .map(|(a, b, v)| json!([a, b, x.name(*v)])).collect::<Vec<_>>(),
                }),
                exit: u8::from(!special),
            }
        }
        Command::Carrier { file, index } => {
            let x = load_complex(file)?;
            let hps = hyperplanes(&x);
            let hp = hps
                .get(*index)
                .ok_or_else(|| InputError(format!("hyperplane index {index} out of range")))?;
            let (n, inclusion) = carrier(&x, hp)?;
            let local_isometry = inclusion.is_local_isometry().is_ok();
            Report {
                command: "carrier",
                text: format!(
                    "carrier cells per dimension: {:?}\nlocal isometry: {local_isometry}\n",
                    n.counts()
                ),
                json: json!({
                    "hyperplane": index,
                    "counts": n.counts(),
                    "local_isometry": local_isometry,
                    "presentation": n.to_presentation(),
                }),
                exit: 0,
            }
        }
        Command::CrossingGraph { file } => {
            let x = load_complex(file)?;
            let cg = crossing_graph(&x);
            let g = crossing_to_graph(&x);
            Report {
                command: "crossing-graph",
                text: write_graph(&g),
                json: json!({
                    "hyperplanes": cg.hyperplanes,
                    "edges": cg.edges,
                    "self_crossing": cg.self_crossing,
                }),
                exit: 0,
            }
        }
        Command::ToSalvetti { file } => {
            let x = load_complex(file)?;
            match special_to_salvetti(&x) {
                Ok((target, map)) => {
                    let local_isometry = map.is_local_isometry().is_ok();
                    Report {
                        command: "to-salvetti",
                        text: format!(
                            "crossing graph:\n{}local isometry to its Salvetti complex: {local_isometry}\n",
                            write_graph(&target.graph)
                        ),
                        json: json!({
                            "exists": true,
                            "graph": { "vertices": target.graph.vertices,
                                       "edges": target.graph.edges },
                            "local_isometry": local_isometry,
                        }),
                        exit: 0,
                    }
                }
                Err(e) => Report {
                    command: "to-salvetti",
                    text: format!("no Salvetti target: {e}\n"),
                    json: json!({ "exists": false, "reason": e.to_string() }),
                    exit: 1,
                },
            }
        }
        Command::Salvetti { graph } => {
            let g = parse_graph(&read(graph)?)?;
            complex_report("salvetti", &salvetti(&g)?)
        }
        Command::Surface {
            genus,
            nonorientable,
        } => complex_report("surface", &surface_complex(*genus, !nonorientable)?),
        Command::Torus { dim } => complex_report("torus", &torus_complex(*dim)?),
        Command::Product { file1, file2 } => {
            let x = load_complex(file1)?;
            let y = load_complex(file2)?;
            complex_report("product", &product(&x, &y)?)
        }
        Command::Subdivide { file } => {
            let x = load_complex(file)?;
            complex_report("subdivide", &subdivide(&x)?)
        }
        Command::Cover { file, assignment } => {
            let x = load_complex(file)?;
            let edge_names: Vec<String> =
                x.cells(1).map(|e| x.name(e).to_string()).collect();
            let rho = parse_assignment(&read(assignment)?, &edge_names)?;
            let (cover, map) = one_vertex_cover(&x, &rho)?;
            let covering = map.is_covering().is_ok();
            Report {
                command: "cover",
                text: format!(
                    "{}covering map: {covering}\n",
                    write_gluing_presentation(&cover.to_presentation())
                ),
                json: json!({
                    "degree": rho.degree,
                    "counts": cover.counts(),
                    "covering": covering,
                    "presentation": cover.to_presentation(),
                }),
                exit: 0,
            }
        }
        Command::Dual { file } => {
            let ws = parse_wall_space(&read(file)?)?;
            let d = dual(&ws)?;
            let x = &d.complex;
            let vertex_table: Vec<Value> = x
                .cells(0)
                .map(|v| {
                    let o = d.orientations[v.idx];
                    json!({
                        "vertex": x.name(v),
                        "right_halves": (0..ws.walls.len() - d.duplicates_dropped)
                            .filter(|w| o >> w & 1 == 1).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Report {
                command: "dual",
                text: format!(
                    "{}# duplicates dropped: {}\n",
                    write_gluing_presentation(&x.to_presentation()),
                    d.duplicates_dropped
                ),
                json: json!({
                    "counts": x.counts(),
                    "duplicates_dropped": d.duplicates_dropped,
                    "wall_of_hyperplane": d.wall_of_hyperplane,
                    "vertex_table": vertex_table,
                    "presentation": x.to_presentation(),
                }),
                exit: 0,
            }
        }
        Command::Geodesic { file, path } => {
            let x = load_complex(file)?;
            let p = parse_edge_path(&x, &read(path)?)?;
            let geodesic = is_geodesic(&x, &p)?;
            Report {
                command: "geodesic",
                text: format!("geodesic: {geodesic}\n"),
                json: json!({ "length": p.steps.len(), "geodesic": geodesic }),
                exit: u8::from(!geodesic),
            }
        }
        Command::Convex { file, cells, mode } => {
            let x = load_complex(file)?;
            let ids = cells
                .iter()
                .map(|n| {
                    x.cell_by_name(n)
                        .ok_or_else(|| InputError(format!("unknown cell {n}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let y = Subcomplex::closure(&x, ids);
            let mode = match mode {
                Mode::Corner => ConvexityMode::CornerClosure,
                Mode::Geodesic => ConvexityMode::Geodesics,
            };
            let report = is_convex(&x, &y, mode)?;
            let mut text = format!("convex: {}\n", report.convex);
            if let Some(c) = report.missing_cube {
                text.push_str(&format!("missing cube: {}\n", x.name(c)));
            }
            if let Some(p) = &report.escaping_geodesic {
                let steps: Vec<String> = p
                    .steps
                    .iter()
                    .map(|(e, r)| format!("{}{}", if *r { "~" } else { "" }, x.name(*e)))
                    .collect();
                text.push_str(&format!("escaping geodesic: {}\n", steps.join(" ")));
            }
            Report {
                command: "convex",
                text,
                json: json!({
                    "convex": report.convex,
                    "missing_cube": report.missing_cube.map(|c| x.name(c).to_string()),
                    "escaping_geodesic": report.escaping_geodesic.as_ref().map(|p| {
                        p.steps.iter()
                            .map(|(e, r)| format!("{}{}", if *r { "~" } else { "" }, x.name(*e)))
                            .collect::<Vec<_>>()
                    }),
                }),
                exit: u8::from(!report.convex),
            }
        }
        Command::Smallcancel { file, n } => {
            let p = parse_presentation(&read(file)?)?;
            let sym = symmetrize(&p)?;
            let (max_piece, witness) = pieces(&sym);
            let (cprime, c) = small_cancellation(&p, *n)?;
            let witness_words = witness.map(|(a, b)| {
                (
                    word_to_str(&p.generators, &a),
                    word_to_str(&p.generators, &b),
                )
            });
            let mut text = format!(
                "symmetrized relators: {}\nmax piece length: {max_piece}\n",
                sym.words.len()
            );
            if let Some((a, b)) = &witness_words {
                text.push_str(&format!("witness pair: {a} {b}\n"));
            }
            text.push_str(&format!("C'(1/{n}): {cprime}\nC({n}): {c}\n"));
            Report {
                command: "smallcancel",
                text,
                json: json!({
                    "n": n,
                    "symmetrized_count": sym.words.len(),
                    "max_piece": max_piece,
                    "witness": witness_words,
                    "cprime": cprime,
                    "c": c,
                }),
                exit: u8::from(!cprime),
            }
        }
        Command::Cayley {
            free,
            raag,
            radius,
            dot,
        } => {
            let ball = ball_of(*free, raag, *radius)?;
            let gens = ball.spec.generator_names();
            let text = if *dot {
                ball_to_dot(&ball)
            } else {
                format!(
                    "vertices: {}\nedges: {}\n",
                    ball.vertices.len(),
                    ball.edges.len()
                )
            };
            Report {
                command: "cayley",
                text,
                json: json!({
                    "radius": radius,
                    "vertex_count": ball.vertices.len(),
                    "edge_count": ball.edges.len(),
                    "vertices": ball.vertices.iter()
                        .map(|w| word_to_str(&gens, w)).collect::<Vec<_>>(),
                }),
                exit: 0,
            }
        }
        Command::Delta { free, raag, radius } => {
            let ball = ball_of(*free, raag, *radius)?;
            let delta = delta_estimate(&ball)?;
            Report {
                command: "delta",
                text: format!("delta lower bound: {delta}\n"),
                json: json!({ "radius": radius, "delta_lower_bound": delta }),
                exit: 0,
            }
        }
        Command::ExportDot { file, crossing } => {
            let text = read(file)?;
            let dot = if *crossing {
                graph_to_dot(&crossing_to_graph(&parse_complex(&text)?.compile()?))
            } else if let Ok(g) = parse_graph(&text) {
                graph_to_dot(&g)
            } else {
                complex_to_dot(&parse_complex(&text)?.compile()?)
            };
            Report {
                command: "export-dot",
                text: dot.clone(),
                json: json!({ "dot": dot }),
                exit: 0,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => report.emit(cli.format),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
