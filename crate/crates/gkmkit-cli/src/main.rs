//! `gkmkit` — build, validate and query GKM graphs and tuples of
//! piecewise exponential functions, with canonical JSON on both ends.
//!
//! Exit codes: 0 success, 2 domain error (bad graph, non-member input,
//! invalid fan, ...), 1 I/O or schema error.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use gkmkit::builders::{
    build_group_embedding, build_rook_embedding, build_schubert, build_toric, cartan_of_type,
    Fan, RootDatum,
};
use gkmkit::gkm_graph::GkmGraph;
use gkmkit::io;
use gkmkit::pe_ring::{
    clear_denominators, failing_edges, invariant_basis, member, member_sequential, restrict_tuple,
    truncated_basis, PeTuple, SupportBox,
};
use gkmkit::Error;

#[derive(Parser)]
#[command(name = "gkmkit", version, about = "GKM graphs and piecewise exponential functions")]
struct Cli {
    /// Write the JSON result to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print a human-readable summary instead of JSON on stdout
    #[arg(long, global = true)]
    pretty: bool,

    #[arg(long, global = true, value_enum, default_value_t = LogLevel::Warn)]
    log_level: LogLevel,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum LogLevel {
    Off,
    Warn,
    Info,
    Debug,
}

#[derive(Subcommand)]
enum Command {
    /// Build the GKM graph of a smooth complete toric variety from its fan
    BuildToric(BuildToric),
    /// Build the Bruhat GKM graph of a Schubert variety
    BuildSchubert(BuildSchubert),
    /// Build the GKM graph of the rook monoid embedding P(M_n)
    BuildRook(BuildRook),
    /// Build a projective group embedding graph from an embedding datum
    BuildEmbedding(BuildEmbedding),
    /// Validate a graph file and report counts and edge directions
    Validate(Validate),
    /// Test whether a tuple satisfies every edge congruence
    Member(MemberArgs),
    /// List the edges whose congruence a tuple violates
    FailingEdges(MemberArgs),
    /// Basis of the box-truncated lattice of piecewise exponential tuples
    Basis(Basis),
    /// Basis of the action-invariant part of the truncated lattice
    Invariants(Invariants),
    /// Partition a graph by primitive edge direction
    CsPartition(GraphOnly),
    /// Product of two GKM graphs over the direct sum of their lattices
    Product(Product),
    /// Scale a tuple into membership and report the denominator used
    ClearDenominators(MemberArgs),
    /// Restrict a graph (and optionally a tuple) to a vertex subset
    Restrict(Restrict),
    /// Run randomized internal consistency checks
    SelfTest(SelfTest),
}

#[derive(Args)]
struct BuildToric {
    /// Fan file (JSON: {rank, rays, cones})
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    fan: Option<PathBuf>,
    /// Built-in fan: p1, p2 or p1xp1
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args)]
struct BuildSchubert {
    /// Cartan type, e.g. A2, B2, G2
    #[arg(long = "type")]
    cartan_type: String,
    /// Reduced word for the top element, 1-based simple reflection
    /// indices separated by commas; empty string for the identity
    #[arg(long, default_value = "")]
    word: String,
}

#[derive(Args)]
struct BuildRook {
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct BuildEmbedding {
    /// Embedding datum file
    #[arg(long)]
    datum: PathBuf,
}

#[derive(Args)]
struct Validate {
    graph: PathBuf,
}

#[derive(Args)]
struct GraphOnly {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct MemberArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    tuple: PathBuf,
    /// Force the sequential edge scan
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct Basis {
    #[arg(long)]
    graph: PathBuf,
    /// Exponent box, per-coordinate `lo:hi` ranges separated by commas;
    /// a single range broadcasts to every coordinate
    #[arg(long = "box", allow_hyphen_values = true)]
    boxx: String,
}

#[derive(Args)]
struct Invariants {
    #[arg(long)]
    graph: PathBuf,
    /// Action file (JSON: {generators: [{vertex_map, lattice_map}]})
    #[arg(long)]
    action: PathBuf,
    #[arg(long = "box", allow_hyphen_values = true)]
    boxx: String,
}

#[derive(Args)]
struct Product {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
}

#[derive(Args)]
struct Restrict {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    tuple: Option<PathBuf>,
    /// Comma-separated vertex ids to keep
    #[arg(long)]
    vertices: String,
}

#[derive(Args)]
struct SelfTest {
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum CliError {
    Io(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema(_) => CliError::Io(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn workdir() -> Option<PathBuf> {
    std::env::var_os("GKMKIT_WORKDIR").map(PathBuf::from)
}

fn resolve(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Some(root) = workdir() {
            return root.join(path);
        }
    }
    path.to_path_buf()
}

fn read_value(path: &Path) -> CliResult<Value> {
    let full = resolve(path);
    let text = std::fs::read_to_string(&full)
        .map_err(|e| CliError::Io(format!("{}: {e}", full.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", full.display())))
}

fn read_graph(path: &Path) -> CliResult<GkmGraph> {
    Ok(io::graph_from_value(&read_value(path)?)?)
}

fn read_tuple(path: &Path, rank: usize) -> CliResult<PeTuple> {
    let (_, t) = io::tuple_from_value(&read_value(path)?, rank)?;
    Ok(t)
}

fn parse_box(spec: &str, rank: usize) -> CliResult<SupportBox> {
    let ranges: Vec<(i64, i64)> = spec
        .split(',')
        .map(|part| {
            let (lo, hi) = part
                .split_once(':')
                .ok_or_else(|| CliError::Io(format!("box range `{part}` is not `lo:hi`")))?;
            let lo = lo
                .trim()
                .parse()
                .map_err(|_| CliError::Io(format!("box bound `{lo}` is not an integer")))?;
            let hi = hi
                .trim()
                .parse()
                .map_err(|_| CliError::Io(format!("box bound `{hi}` is not an integer")))?;
            Ok((lo, hi))
        })
        .collect::<CliResult<_>>()?;
    let ranges = if ranges.len() == 1 {
        vec![ranges[0]; rank]
    } else if ranges.len() == rank {
        ranges
    } else {
        return Err(CliError::Io(format!(
            "box has {} ranges, graph lattice rank is {rank}",
            ranges.len()
        )));
    };
    let (lo, hi) = ranges.into_iter().unzip();
    Ok(SupportBox::new(lo, hi)?)
}

fn parse_word(word: &str) -> CliResult<Vec<usize>> {
    if word.trim().is_empty() {
        return Ok(Vec::new());
    }
    word.split(',')
        .map(|s| {
            let i: usize = s
                .trim()
                .parse()
                .map_err(|_| CliError::Io(format!("word letter `{s}` is not an integer")))?;
            if i == 0 {
                return Err(CliError::Io("word letters are 1-based".into()));
            }
            Ok(i - 1)
        })
        .collect()
}

fn parse_cartan_type(s: &str) -> CliResult<RootDatum> {
    let mut chars = s.chars();
    let letter = chars
        .next()
        .ok_or_else(|| CliError::Io("empty Cartan type".into()))?
        .to_ascii_uppercase();
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| CliError::Io(format!("Cartan type `{s}` is not letter+rank")))?;
    Ok(RootDatum::new(cartan_of_type(letter, rank)?)?)
}

fn pretty_graph(g: &GkmGraph) -> String {
    let r = g.validate();
    let mut out = format!(
        "lattice rank: {}\nvertices: {}\nedges: {} ({} loops)\n",
        g.rank(),
        r.vertex_count,
        r.edge_count,
        r.loop_count
    );
    for (dir, count) in &r.directions {
        out.push_str(&format!("direction {:?}: {} edges\n", dir.0, count));
    }
    out
}

fn pretty_tuple(t: &PeTuple) -> String {
    let mut out = String::new();
    for (v, f) in t.values() {
        out.push_str(&format!("  {v}: {f}\n"));
    }
    out
}

struct Output {
    value: Value,
    pretty: String,
}

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::BuildToric(args) => {
            let fan = match (&args.fan, &args.preset) {
                (Some(path), None) => io::fan_from_value(&read_value(path)?)?,
                (None, Some(name)) => preset_fan(name)?,
                _ => return Err(CliError::Io("give exactly one of --fan/--preset".into())),
            };
            let g = build_toric(&fan)?;
            Ok(graph_output(g))
        }
        Command::BuildSchubert(args) => {
            let rd = parse_cartan_type(&args.cartan_type)?;
            let word = parse_word(&args.word)?;
            let g = build_schubert(&rd, &word)?;
            Ok(graph_output(g))
        }
        Command::BuildRook(args) => Ok(graph_output(build_rook_embedding(args.n)?)),
        Command::BuildEmbedding(args) => {
            let datum = io::datum_from_value(&read_value(&args.datum)?)?;
            Ok(graph_output(build_group_embedding(&datum)?))
        }
        Command::Validate(args) => {
            let g = read_graph(&args.graph)?;
            let report = g.validate();
            Ok(Output {
                value: io::report_to_value(&report),
                pretty: pretty_graph(&g),
            })
        }
        Command::Member(args) => {
            let g = read_graph(&args.graph)?;
            let t = read_tuple(&args.tuple, g.rank())?;
            let is_member = if args.sequential {
                member_sequential(&g, &t)?
            } else {
                member(&g, &t)?
            };
            Ok(Output {
                value: json!({ "member": is_member }),
                pretty: format!("member: {is_member}\n"),
            })
        }
        Command::FailingEdges(args) => {
            let g = read_graph(&args.graph)?;
            let t = read_tuple(&args.tuple, g.rank())?;
            let fails = failing_edges(&g, &t)?;
            let mut pretty = format!("failing edges: {}\n", fails.len());
            for e in &fails {
                pretty.push_str(&format!("  {} -- {}\n", e.u, e.v));
            }
            Ok(Output {
                value: json!({
                    "failing_edges": fails.iter().map(|e| json!({
                        "u": e.u,
                        "v": e.v,
                        "weight": e.weight.as_ref().map(|w| w.0.clone()),
                    })).collect::<Vec<_>>(),
                }),
                pretty,
            })
        }
        Command::Basis(args) => {
            let g = read_graph(&args.graph)?;
            let b = parse_box(&args.boxx, g.rank())?;
            let basis = truncated_basis(&g, &b)?;
            Ok(basis_output(&args.graph, &basis))
        }
        Command::Invariants(args) => {
            let g = read_graph(&args.graph)?;
            let action = io::action_from_value(&read_value(&args.action)?)?;
            let handle = g.register_action(action)?;
            let b = parse_box(&args.boxx, g.rank())?;
            let basis = invariant_basis(&g, &handle, &b)?;
            Ok(basis_output(&args.graph, &basis))
        }
        Command::CsPartition(args) => {
            let g = read_graph(&args.graph)?;
            let parts = g.cs_partition();
            let mut obj = Map::new();
            let mut pretty = format!("codimension-one classes: {}\n", parts.len());
            for (dir, sub) in &parts {
                let key = format!(
                    "[{}]",
                    dir.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                );
                pretty.push_str(&format!("  {key}: {} edges\n", sub.num_edges()));
                obj.insert(key, io::graph_to_value(sub));
            }
            Ok(Output {
                value: Value::Object(obj),
                pretty,
            })
        }
        Command::Product(args) => {
            let left = read_graph(&args.left)?;
            let right = read_graph(&args.right)?;
            Ok(graph_output(left.product(&right)))
        }
        Command::ClearDenominators(args) => {
            let g = read_graph(&args.graph)?;
            let t = read_tuple(&args.tuple, g.rank())?;
            let (d, scaled) = clear_denominators(&g, &t)?;
            Ok(Output {
                value: json!({
                    "denominator": io::laurent_to_value(&d),
                    "scaled": io::tuple_to_value(&args.graph.display().to_string(), &scaled),
                }),
                pretty: format!("denominator: {d}\nscaled tuple:\n{}", pretty_tuple(&scaled)),
            })
        }
        Command::Restrict(args) => {
            let g = read_graph(&args.graph)?;
            let vs: BTreeSet<String> = args
                .vertices
                .split(',')
                .map(|s| s.trim().to_owned())
                .filter(|s| !s.is_empty())
                .collect();
            match &args.tuple {
                Some(tp) => {
                    let t = read_tuple(tp, g.rank())?;
                    let (sub, rt) = restrict_tuple(&g, &t, &vs)?;
                    Ok(Output {
                        value: json!({
                            "graph": io::graph_to_value(&sub),
                            "tuple": io::tuple_to_value(&args.graph.display().to_string(), &rt),
                        }),
                        pretty: format!("{}tuple:\n{}", pretty_graph(&sub), pretty_tuple(&rt)),
                    })
                }
                None => Ok(graph_output(g.induced_subgraph(&vs)?)),
            }
        }
        Command::SelfTest(args) => self_test(args.seed),
    }
}

fn preset_fan(name: &str) -> CliResult<Fan> {
    match name {
        "p1" => Ok(gkmkit::builders::toric::p1_fan()),
        "p2" => Ok(gkmkit::builders::toric::p2_fan()),
        "p1xp1" => Ok(gkmkit::builders::toric::p1xp1_fan()),
        other => Err(CliError::Io(format!(
            "unknown preset `{other}` (expected p1, p2 or p1xp1)"
        ))),
    }
}

fn graph_output(g: GkmGraph) -> Output {
    Output {
        pretty: pretty_graph(&g),
        value: io::graph_to_value(&g),
    }
}

fn basis_output(graph_path: &Path, basis: &[PeTuple]) -> Output {
    let mut pretty = format!("rank: {}\n", basis.len());
    for (i, t) in basis.iter().enumerate() {
        pretty.push_str(&format!("basis[{i}]:\n{}", pretty_tuple(t)));
    }
    Output {
        value: io::basis_to_value(&graph_path.display().to_string(), basis),
        pretty,
    }
}

fn self_test(seed: u64) -> CliResult<Output> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    let flag = {
        let rd = parse_cartan_type("A2")?;
        build_schubert(&rd, &[0, 1, 0])?
    };
    let rook = build_rook_embedding(2)?;
    let mut checks = Vec::new();

    for (name, g) in [("flag-A2", &flag), ("rook-2", &rook)] {
        let ids: Vec<String> = g.vertex_ids().map(str::to_owned).collect();
        let mut ok = true;
        for _ in 0..25 {
            // random combination of localization certificates stays a member
            let v = &ids[rng.gen_range(0..ids.len())];
            let (_, cert) = clear_denominators(g, &PeTuple::delta(g, v)?)?;
            let w = &ids[rng.gen_range(0..ids.len())];
            let (_, cert2) = clear_denominators(g, &PeTuple::delta(g, w)?)?;
            let s = cert.add(&cert2)?;
            let p = cert.mul(&cert2)?;
            ok &= member(g, &s)?;
            ok &= member(g, &p)?;
            ok &= member(g, &s)? == member_sequential(g, &s)?;
        }
        checks.push((format!("subring-closure-{name}"), ok));
    }

    let all_ok = checks.iter().all(|(_, ok)| *ok);
    let pretty = checks
        .iter()
        .map(|(name, ok)| format!("{name}: {}\n", if *ok { "ok" } else { "FAILED" }))
        .collect::<String>();
    let out = Output {
        value: json!({
            "seed": seed,
            "checks": checks.iter().map(|(name, ok)| json!({
                "name": name,
                "ok": ok,
            })).collect::<Vec<_>>(),
        }),
        pretty,
    };
    if all_ok {
        Ok(out)
    } else {
        Err(CliError::Domain(Error::InvalidDatum(
            "self-test failed".into(),
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let text = io::canonical_json(&output.value);
            if let Some(out) = &cli.out {
                let full = resolve(out);
                if let Err(e) = std::fs::write(&full, &text) {
                    eprintln!("error: {}: {e}", full.display());
                    return ExitCode::from(1);
                }
                if cli.pretty {
                    print!("{}", output.pretty);
                }
            } else if cli.pretty {
                print!("{}", output.pretty);
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
