use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gedgm::experiment::{load_dataset, run_equivalence};
use gedgm::formulations::{build_f2, export_lp};
use gedgm::generate::{generate, GeneratorSpec};
use gedgm::par::Execution;
use gedgm::solvers::{solve_gm_oracle, solve_ipfp};
use gedgm::{build_similarity, AttributedGraph, CostModel, Error, Result, SolveResult, SolverConfig, SolverKind};

#[derive(Parser)]
#[command(name = "gedgm", version, about = "Graph edit distance and graph matching on attributed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Edit distance between two graph files.
    Ged(SolveArgs),
    /// Maximum matching score between two graph files (solvers: oracle, ipfp).
    Gm(SolveArgs),
    /// Dump gamma and the transformed similarity tables as JSON.
    Transform(PairArgs),
    /// Write the linear edit distance program in LP format.
    ExportLp {
        #[command(flatten)]
        pair: PairArgs,
        /// Output file; a `<out>.meta.json` sidecar with gamma is written next
        /// to it. Prints to standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact edit distance against gamma minus the maximum matching score
    /// for every ordered pair of a dataset.
    Equivalence(EquivalenceArgs),
    /// Write seeded random graphs to a directory.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct PairArgs {
    graph1: PathBuf,
    graph2: PathBuf,
    /// Cost configuration (JSON). Defaults to Euclidean substitutions with
    /// unit deletions and insertions.
    #[arg(long)]
    cost: Option<PathBuf>,
}

#[derive(Args)]
struct LimitArgs {
    /// Per-pair time limit for branch and bound, in seconds.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    /// Largest graph size accepted by the exhaustive solvers.
    #[arg(long, default_value_t = gedgm::assignment::DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Solver name; see `--help` of the verb for the accepted names.
    #[arg(long)]
    solver: Option<String>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 3)]
    min_vertices: usize,
    #[arg(long, default_value_t = 6)]
    max_vertices: usize,
    #[arg(long, default_value_t = 0.4)]
    edge_probability: f64,
    #[arg(long, default_value_t = 2)]
    vertex_attr_dim: usize,
    #[arg(long, default_value_t = 1)]
    edge_attr_dim: usize,
    #[arg(long)]
    directed: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct EquivalenceArgs {
    /// Directory of `*.json` graphs. Without it, graphs are generated.
    #[arg(long)]
    dataset: Option<PathBuf>,
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long)]
    cost: Option<PathBuf>,
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long, default_value_t = gedgm::assignment::DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also write the machine-readable report to this file.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Run the pairs one after another.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Machine,
}

impl GenArgs {
    fn spec(&self) -> Result<GeneratorSpec> {
        if self.min_vertices > self.max_vertices || !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(Error::Parse(
                "generator needs min-vertices <= max-vertices and edge-probability in [0, 1]".into(),
            ));
        }
        Ok(GeneratorSpec {
            count: self.count,
            min_vertices: self.min_vertices,
            max_vertices: self.max_vertices,
            edge_probability: self.edge_probability,
            vertex_attr_dim: self.vertex_attr_dim,
            edge_attr_dim: self.edge_attr_dim,
            directed: self.directed,
            seed: self.seed,
        })
    }
}

fn config(time_limit: f64, oracle_limit: usize, seed: u64) -> Result<SolverConfig> {
    let bnb_time_limit = Duration::try_from_secs_f64(time_limit)
        .map_err(|_| Error::Parse(format!("invalid time limit {time_limit}")))?;
    let cfg = SolverConfig {
        oracle_limit,
        bnb_time_limit,
        seed,
        ..SolverConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn load_cost(path: Option<&Path>) -> Result<CostModel> {
    path.map_or_else(|| Ok(CostModel::default()), CostModel::read)
}

fn load_pair(p: &PairArgs) -> Result<(AttributedGraph, AttributedGraph, CostModel)> {
    Ok((
        AttributedGraph::read(&p.graph1)?,
        AttributedGraph::read(&p.graph2)?,
        load_cost(p.cost.as_deref())?,
    ))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn render(result: &SolveResult, solver: &str, format: Format) -> String {
    if format == Format::Machine {
        return serde_json::to_string_pretty(result).expect("results serialize") + "\n";
    }
    let mut out = String::new();
    let _ = writeln!(out, "solver      {solver}");
    let _ = writeln!(out, "status      {}", result.status);
    let _ = writeln!(out, "ged         {}", result.ged_value);
    let _ = writeln!(out, "gm score    {}", result.gm_score);
    let _ = writeln!(out, "gamma       {}", result.gamma);
    let pairs: Vec<String> = result.assignment.pairs().map(|(i, k)| format!("{i}->{k}")).collect();
    let _ = writeln!(out, "assignment  {}", pairs.join(" "));
    let _ = writeln!(
        out,
        "stats       nodes={} iterations={} time={:.6}s",
        result.stats.nodes, result.stats.iterations, result.stats.wall_time_secs
    );
    let _ = writeln!(out, "edit path   ({} operations, cost {})", result.edit_path.len(), result.edit_path.total_cost);
    for op in &result.edit_path.operations {
        let _ = writeln!(out, "  {}", serde_json::to_string(op).expect("operations serialize"));
    }
    out
}

fn cmd_ged(args: &SolveArgs) -> Result<String> {
    let solver: SolverKind = args.solver.as_deref().unwrap_or("bnb").parse()?;
    let (g1, g2, m) = load_pair(&args.pair)?;
    let cfg = config(args.limits.time_limit, args.limits.oracle_limit, args.limits.seed)?;
    let result = solver.solve(&m, &g1, &g2, &cfg)?;
    Ok(render(&result, solver.name(), args.limits.format))
}

fn cmd_gm(args: &SolveArgs) -> Result<String> {
    let name = args.solver.as_deref().unwrap_or("ipfp");
    if name != "oracle" && name != "ipfp" {
        return Err(Error::UnknownSolver {
            name: name.to_string(),
            valid: "oracle, ipfp".to_string(),
        });
    }
    let (g1, g2, m) = load_pair(&args.pair)?;
    let cfg = config(args.limits.time_limit, args.limits.oracle_limit, args.limits.seed)?;
    let result = if name == "oracle" {
        solve_gm_oracle(&m, &g1, &g2, &cfg)?
    } else {
        solve_ipfp(&m, &g1, &g2, &cfg)?
    };
    Ok(render(&result, name, args.limits.format))
}

fn cmd_transform(args: &PairArgs) -> Result<String> {
    let (g1, g2, m) = load_pair(args)?;
    let sim = build_similarity(&m, &g1, &g2)?;
    let dump = json!({
        "n1": sim.n1(),
        "n2": sim.n2(),
        "gamma": sim.gamma(),
        "vertex": sim.vertex_table(),
        "edges": sim.edge_pairs(),
    });
    Ok(serde_json::to_string_pretty(&dump).expect("similarity serializes") + "\n")
}

fn cmd_export_lp(args: &PairArgs, out: Option<&Path>) -> Result<String> {
    let (g1, g2, m) = load_pair(args)?;
    let model = build_f2(&m, &g1, &g2)?;
    let text = export_lp(&model, true);
    let Some(out) = out else {
        return Ok(text);
    };
    write_file(out, &text)?;
    let meta = json!({ "gamma": model.gamma(), "counts": model.counts() });
    let mut sidecar = out.as_os_str().to_owned();
    sidecar.push(".meta.json");
    write_file(Path::new(&sidecar), &(serde_json::to_string_pretty(&meta).expect("meta serializes") + "\n"))?;
    Ok(String::new())
}

fn cmd_equivalence(args: &EquivalenceArgs) -> Result<String> {
    let m = load_cost(args.cost.as_deref())?;
    let cfg = config(args.time_limit, args.oracle_limit, args.gen.seed)?;
    let (graphs, source) = match &args.dataset {
        Some(dir) => (load_dataset(dir)?, [("dataset".to_string(), dir.display().to_string())].into()),
        None => {
            let spec = args.gen.spec()?;
            (generate(&spec), spec.describe())
        }
    };
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let mut report = run_equivalence(&graphs, &m, &cfg, exec)?;
    report.header.extend(source);
    if let Some(path) = &args.output {
        write_file(path, &report.to_csv())?;
    }
    Ok(match args.format {
        Format::Table => report.to_table(),
        Format::Machine => report.to_csv(),
    })
}

fn cmd_gen(args: &GenArgs, out: &Path) -> Result<String> {
    let graphs = generate(&args.spec()?);
    std::fs::create_dir_all(out).map_err(|source| Error::Io {
        path: out.display().to_string(),
        source,
    })?;
    let mut listing = String::new();
    for (name, g) in &graphs {
        let path = out.join(format!("{name}.json"));
        write_file(&path, &g.to_json())?;
        let _ = writeln!(listing, "{}", path.display());
    }
    Ok(listing)
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Ged(a) => cmd_ged(a),
        Command::Gm(a) => cmd_gm(a),
        Command::Transform(a) => cmd_transform(a),
        Command::ExportLp { pair, out } => cmd_export_lp(pair, out.as_deref()),
        Command::Equivalence(a) => cmd_equivalence(a),
        Command::Gen { gen, out } => cmd_gen(gen, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
