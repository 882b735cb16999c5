use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spack_core::critical::{self, CriticalError, Doubling};
use spack_core::families::FamilySpec;
use spack_core::graph::{emit_graph6, parse_edge_list, parse_graph6, Edge, Graph};
use spack_core::solver::{chi_s_with, Coloring, SolveError, SolverConfig};
use spack_core::verify::{self, TheoremCheck, Verdict, VerifyOptions};
use spack_core::PackingSequence;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

// Closed stdout (e.g. `| head`) ends the process quietly instead of panicking.
macro_rules! println {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
        }
    }};
}

#[derive(Parser)]
#[command(name = "spack", version, about = "Exact S-packing colorings and criticality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute chi_S with a witness coloring.
    Chi(GraphArgs),
    /// Per-edge and per-vertex deletion table with criticality verdicts.
    Critical(GraphArgs),
    /// Recolor G from a coloring of G - e.
    Double(DoubleArgs),
    /// Run registered checks.
    Verify(VerifyArgs),
    /// Named graph families.
    Families {
        #[command(subcommand)]
        command: FamiliesCommand,
    },
    /// Search all graphs up to n_max for k-critical graphs.
    Find(FindArgs),
    /// Exploratory runs that assert nothing.
    Explore {
        #[command(subcommand)]
        command: ExploreCommand,
    },
}

#[derive(Subcommand)]
enum FamiliesCommand {
    /// Print a family member as graph6 or an edge list.
    Gen {
        spec: String,
        #[arg(long = "as", value_enum, default_value_t = GraphFormat::G6)]
        output: GraphFormat,
    },
}

#[derive(Subcommand)]
enum ExploreCommand {
    /// Report cut edges e with 2 chi(G-e) = chi(G) among connected graphs.
    Cutedge {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long)]
        seq: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    G6,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search-node budget per solver call.
    #[arg(long, env = "SPACK_NODE_BUDGET")]
    nodes: Option<u64>,
    /// Wall-clock limit per solver call.
    #[arg(long)]
    seconds: Option<f64>,
}

impl BudgetArgs {
    fn config(&self) -> Result<SolverConfig, String> {
        let mut cfg = SolverConfig::default();
        if let Some(n) = self.nodes {
            if n == 0 {
                return Err("--nodes must be positive".into());
            }
            cfg.node_budget = n;
        }
        if let Some(s) = self.seconds {
            if !(s > 0.0 && s.is_finite()) {
                return Err("--seconds must be positive".into());
            }
            cfg.time_limit = Some(Duration::from_secs_f64(s));
        }
        Ok(cfg)
    }
}

#[derive(Args)]
#[group(required = false, multiple = false, id = "source")]
struct SourceArgs {
    /// Family spec such as path:14 or star_bridge:3.
    #[arg(long)]
    family: Option<String>,
    /// Inline graph6 string.
    #[arg(long)]
    g6: Option<String>,
    /// Inline edge list: "0-1,1-2" or "0 1;1 2".
    #[arg(long)]
    edges: Option<String>,
    /// File holding graph6 or an edge list.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Packing sequence, e.g. 1,2,2,const or 1,inc.
    #[arg(long)]
    seq: String,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct DoubleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Edge e as u,v; defaults to the family's distinguished edge.
    #[arg(long)]
    edge: Option<String>,
    /// Coloring of G - e as comma-separated colors; defaults to an optimal one.
    #[arg(long)]
    coloring: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "id")]
    all: bool,
    #[arg(long)]
    id: Vec<String>,
    /// List registered checks and exit.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    nmax: Option<usize>,
    /// Cycle-length range lo..hi for cycle checks.
    #[arg(long)]
    nrange: Option<String>,
    /// Override the check's sequences (repeatable).
    #[arg(long)]
    seq: Vec<String>,
    #[arg(long)]
    workers: Option<usize>,
    /// graph6 corpus extending the enumeration beyond its built-in bound.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct FindArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    nmax: usize,
    #[arg(long)]
    seq: String,
    /// Search vertex-critical graphs instead.
    #[arg(long)]
    vertex: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

/// Error carrying the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, message: message.to_string() }
}

fn timeout(message: impl ToString) -> Failure {
    Failure { code: EXIT_TIMEOUT, message: message.to_string() }
}

fn solve_failure(e: SolveError) -> Failure {
    match e {
        SolveError::Timeout { .. } => timeout(e),
        other => usage(other),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Chi(args) => cmd_chi(&args),
        Command::Critical(args) => cmd_critical(&args),
        Command::Double(args) => cmd_double(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Families { command: FamiliesCommand::Gen { spec, output } } => {
            let g = spack_core::families::generate(&spec).map_err(usage)?;
            match output {
                GraphFormat::G6 => println!("{}", emit_graph6(&g)),
                GraphFormat::Edges => print!("{}", edge_list_text(&g)),
            }
            Ok(0)
        }
        Command::Find(args) => cmd_find(&args),
        Command::Explore { command: ExploreCommand::Cutedge { nmax, seq, budget, format } } => {
            let seq = parse_seq(&seq)?;
            let cfg = budget.config().map_err(usage)?;
            let ex = verify::explore_cut_edges(nmax, &seq, &cfg).map_err(usage)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&ex).expect("serializable")),
                Format::Human => {
                    println!("graphs: {}, cut edges: {}", ex.graphs, ex.cut_edges);
                    println!("cut edges with 2 chi(G-e) = chi(G): {}", ex.below_refined_bound.len());
                    for o in &ex.below_refined_bound {
                        println!("  {} edge {}-{}: {} -> {}", o.graph6, o.edge.0, o.edge.1, o.chi, o.chi_minus);
                    }
                    if !ex.skipped.is_empty() {
                        println!("skipped: {}", ex.skipped.len());
                    }
                }
            }
            Ok(0)
        }
    }
}

fn parse_seq(text: &str) -> Result<PackingSequence, Failure> {
    text.parse().map_err(|e| usage(format!("sequence {text:?}: {e}")))
}

/// Parses `0-1,1-2` or `0 1;1 2` as well as the newline-separated format.
fn parse_inline_edges(text: &str) -> Result<Graph, Failure> {
    let normalized: String = text
        .split([',', ';'])
        .map(|pair| pair.trim().replace('-', " "))
        .collect::<Vec<_>>()
        .join("\n");
    parse_edge_list(&normalized).map_err(usage)
}

fn parse_graph_text(text: &str) -> Result<Graph, Failure> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let looks_g6 = !first.contains(char::is_whitespace) && !first.starts_with("n=");
    if looks_g6 {
        if let Ok(g) = parse_graph6(first) {
            return Ok(g);
        }
    }
    parse_edge_list(text).map_err(usage)
}

struct Loaded {
    graph: Graph,
    family: Option<FamilySpec>,
}

fn load_graph(src: &SourceArgs) -> Result<Loaded, Failure> {
    if let Some(spec) = &src.family {
        let family: FamilySpec = spec.parse().map_err(usage)?;
        let graph = family.generate().map_err(usage)?;
        return Ok(Loaded { graph, family: Some(family) });
    }
    let graph = if let Some(g6) = &src.g6 {
        parse_graph6(g6).map_err(usage)?
    } else if let Some(edges) = &src.edges {
        parse_inline_edges(edges)?
    } else if let Some(path) = &src.file {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        parse_graph_text(&text)?
    } else {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(usage)?;
        parse_graph_text(&text)?
    };
    Ok(Loaded { graph, family: None })
}

fn edge_list_text(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn colors_text(c: &Coloring) -> String {
    c.colors().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_chi(args: &GraphArgs) -> Result<u8, Failure> {
    let g = load_graph(&args.source)?.graph;
    let seq = parse_seq(&args.seq)?;
    let cfg = args.budget.config().map_err(usage)?;
    let r = match chi_s_with(&g, &seq, &cfg) {
        Ok(r) => r,
        Err(SolveError::Timeout { lower, upper, nodes }) => {
            print_record(
                args.format,
                json!({"status": "timeout", "lower": lower, "upper": upper, "nodes": nodes}),
                &format!("timeout after {nodes} nodes: {lower} <= chi_S <= {upper}"),
            );
            return Ok(EXIT_TIMEOUT);
        }
        Err(e) => return Err(solve_failure(e)),
    };
    let human = format!("chi_S = {}\nwitness: {}\nnodes: {}", r.value, colors_text(&r.witness), r.nodes_explored);
    print_record(
        args.format,
        json!({"status": "ok", "chi": r.value, "witness": r.witness, "nodes": r.nodes_explored}),
        &human,
    );
    Ok(0)
}

fn print_record(format: Format, record: Value, human: &str) {
    match format {
        Format::Json => println!("{record}"),
        Format::Human => println!("{human}"),
    }
}

fn cmd_critical(args: &GraphArgs) -> Result<u8, Failure> {
    let g = load_graph(&args.source)?.graph;
    let seq = parse_seq(&args.seq)?;
    let cfg = args.budget.config().map_err(usage)?;
    let report = match critical::is_critical_with(&g, &seq, &cfg) {
        Ok(r) => r,
        Err(CriticalError::Timeout { partial, source }) => {
            print_record(
                args.format,
                json!({"status": "timeout", "partial": *partial, "reason": source.to_string()}),
                &format!("timeout: {source}\npartial: chi = {:?}, {} edges done", partial.chi, partial.per_edge.len()),
            );
            return Ok(EXIT_TIMEOUT);
        }
        Err(CriticalError::Solve(e)) => return Err(solve_failure(e)),
        Err(e) => return Err(usage(e)),
    };
    let mut human = format!("chi_S = {}\n", report.chi);
    human.push_str("edge      chi(G-e)\n");
    for ((u, v), c) in &report.per_edge {
        human.push_str(&format!("{:<9} {c}\n", format!("{u}-{v}")));
    }
    human.push_str("vertex    chi(G-v)\n");
    for (v, c) in &report.per_vertex {
        human.push_str(&format!("{v:<9} {c}\n"));
    }
    human.push_str(&format!("critical: {}\nvertex-critical: {}", report.is_critical, report.is_vertex_critical));
    let mut record = serde_json::to_value(&report).expect("serializable");
    record["status"] = json!("ok");
    print_record(args.format, record, &human);
    Ok(0)
}

fn parse_edge_arg(text: &str) -> Result<Edge, Failure> {
    let parts: Vec<&str> = text.split([',', '-', ' ']).filter(|s| !s.is_empty()).collect();
    match parts.as_slice() {
        [u, v] => {
            let u = u.parse().map_err(|_| usage(format!("bad edge {text:?}")))?;
            let v = v.parse().map_err(|_| usage(format!("bad edge {text:?}")))?;
            Ok((u, v))
        }
        _ => Err(usage(format!("edge must be u,v; got {text:?}"))),
    }
}

fn cmd_double(args: &DoubleArgs) -> Result<u8, Failure> {
    let loaded = load_graph(&args.graph.source)?;
    let g = &loaded.graph;
    let seq = parse_seq(&args.graph.seq)?;
    let cfg = args.graph.budget.config().map_err(usage)?;
    let edge = match (&args.edge, &loaded.family) {
        (Some(text), _) => parse_edge_arg(text)?,
        (None, Some(f)) => f
            .distinguished_edge()
            .map_err(usage)?
            .ok_or_else(|| usage(format!("{f} has no distinguished edge; pass --edge")))?,
        (None, None) => return Err(usage("--edge is required unless the family has a distinguished edge")),
    };
    if !g.has_edge(edge.0, edge.1) {
        return Err(usage(format!("{}-{} is not an edge", edge.0, edge.1)));
    }
    let input = match &args.coloring {
        Some(text) => {
            let colors: Result<Vec<u32>, _> = text.split([',', ' ']).filter(|s| !s.is_empty()).map(str::parse).collect();
            Coloring::new(colors.map_err(|_| usage(format!("bad coloring {text:?}")))?)
        }
        None => {
            let h = g.delete_edge(edge.0, edge.1).map_err(usage)?;
            match chi_s_with(&h, &seq, &cfg) {
                Ok(r) => r.witness,
                Err(e @ SolveError::Timeout { .. }) => {
                    print_record(args.graph.format, json!({"status": "timeout", "reason": e.to_string()}), &e.to_string());
                    return Ok(EXIT_TIMEOUT);
                }
                Err(e) => return Err(solve_failure(e)),
            }
        }
    };
    let d: Doubling = match critical::double_coloring(g, edge, &seq, &input) {
        Ok(d) => d,
        Err(CriticalError::ClaimViolation { color, pairs }) => {
            let msg = format!("no cover vertex for color {color}: {pairs:?}");
            print_record(args.graph.format, json!({"status": "claim_violation", "color": color, "pairs": pairs}), &msg);
            return Ok(EXIT_FAIL);
        }
        Err(e) => return Err(usage(e)),
    };
    let human = format!(
        "edge: {}-{}\ninput ({} colors): {}\noutput ({} colors): {}\nrecolored: {:?}\nswapped: {}",
        edge.0,
        edge.1,
        d.input_colors,
        colors_text(&input),
        d.coloring.num_colors(),
        colors_text(&d.coloring),
        d.recolored,
        d.swapped
    );
    let mut record = serde_json::to_value(&d).expect("serializable");
    record["status"] = json!("ok");
    record["edge"] = json!([edge.0, edge.1]);
    record["input"] = json!(input);
    record["colors_used"] = json!(d.coloring.num_colors());
    print_record(args.graph.format, record, &human);
    Ok(0)
}

fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || usage(format!("range must be lo..hi; got {text:?}"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    if args.list {
        for c in verify::registry() {
            println!("{:<22} {}", c.id, c.summary);
        }
        return Ok(0);
    }
    if !args.all && args.id.is_empty() {
        return Err(usage("pass --all or at least one --id"));
    }
    let mut opts = VerifyOptions { n_max: args.nmax, solver: args.budget.config().map_err(usage)?, ..Default::default() };
    if let Some(r) = &args.nrange {
        opts.n_range = Some(parse_range(r)?);
    }
    if !args.seq.is_empty() {
        opts.sequences = Some(args.seq.iter().map(|s| parse_seq(s)).collect::<Result<_, _>>()?);
    }
    if let Some(path) = &args.corpus {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        opts.corpus = Some(Arc::new(verify::read_graph6_corpus(&text).map_err(usage)?));
    }
    let ids: Vec<String> = if args.all {
        verify::registry().iter().map(|c| c.id.to_string()).collect()
    } else {
        args.id.clone()
    };
    let workers = args.workers.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(usage)?;
    let (mut failed, mut skipped) = (false, false);
    for id in ids {
        let check = pool.install(|| verify::verify_theorem(&id, &opts)).map_err(usage)?;
        print_check(args.format, &check);
        failed |= check.verdict == Verdict::Fail;
        skipped |= check.verdict == Verdict::Skipped;
    }
    Ok(if failed {
        EXIT_FAIL
    } else if skipped {
        EXIT_TIMEOUT
    } else {
        0
    })
}

fn print_check(format: Format, c: &TheoremCheck) {
    match format {
        Format::Json => println!("{}", c.to_json_line()),
        Format::Human => {
            let verdict = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "SKIPPED",
            };
            println!("{verdict:<8} {}", c.id);
            println!("  expected: {}", c.expected);
            println!("  observed: {}", c.observed);
            if let Some(x) = &c.counterexample {
                println!("  counterexample: {} under {}: {}", x.graph6, x.sequence, x.detail);
                for col in &x.colorings {
                    println!("    coloring: {}", colors_text(col));
                }
            }
            if !c.skipped.is_empty() {
                println!("  skipped: {}", c.skipped.len());
            }
        }
    }
}

fn cmd_find(args: &FindArgs) -> Result<u8, Failure> {
    let seq = parse_seq(&args.seq)?;
    let cfg = args.budget.config().map_err(usage)?;
    let search = if args.vertex {
        verify::find_k_vertex_critical(args.nmax, &seq, args.k, &cfg)
    } else {
        verify::find_k_critical(args.nmax, &seq, args.k, &cfg)
    }
    .map_err(usage)?;
    let found: Vec<String> = search.found.iter().map(emit_graph6).collect();
    let skipped: Vec<String> = search.skipped.iter().map(emit_graph6).collect();
    match args.format {
        Format::Json => println!("{}", json!({"found": found, "skipped": skipped})),
        Format::Human => {
            for (g6, g) in found.iter().zip(&search.found) {
                println!("{g6}\tn={} m={}", g.n(), g.edge_count());
            }
            println!("{} found, {} skipped", found.len(), skipped.len());
        }
    }
    Ok(if skipped.is_empty() { 0 } else { EXIT_TIMEOUT })
}
