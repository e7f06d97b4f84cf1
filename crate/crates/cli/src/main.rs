use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use relcut::bench::{self, OutputFormat, SweepConfig};
use relcut::stabilizer;
use relcut::{emit_edge_list, gen_instance, oracle, parse_edge_list, prim, run, Algorithm, CutResult, Exec, Family, Graph, InstanceSpec, RunOptions};
use serde_json::json;

#[derive(Parser)]
#[command(name = "relcut", version, about = "Greedy MAX-CUT heuristics on signed relation trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance as an edge list.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "k")]
        p: Option<f64>,
        #[arg(long)]
        k: Option<usize>,
        /// Draw U[0, 1] weights on the sparse families instead of unit weights.
        #[arg(long)]
        weighted: bool,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Run one heuristic on a graph.
    Run {
        #[arg(long)]
        algo: String,
        #[arg(long)]
        graph: PathBuf,
        /// Start vertex for sg3 and adapt (0-based).
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the relation tree.
        #[arg(long)]
        tree: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact optimum by enumeration (n <= 24).
    Oracle {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Cross-check the stabilizer constructions against the graph heuristics.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        /// Check this many random start vertices instead of all of them.
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a sweep described by a JSON config.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Output path; `.json` selects JSON, anything else CSV. Defaults to
        /// the config's `output`, then stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Worker threads; defaults to the available cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write zero runtimes so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Failures that map to exit code 2.
#[derive(Debug)]
struct IoFailure(String);

impl std::fmt::Display for IoFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for IoFailure {}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| IoFailure(format!("cannot read {}: {e}", path.display())).into())
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| IoFailure(format!("cannot write {}: {e}", path.display())).into())
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    parse_edge_list(&text).with_context(|| format!("{}", path.display()))
}

fn print_json(value: &impl serde::Serialize, pretty: bool) -> Result<()> {
    let mut out = io::stdout().lock();
    if pretty {
        serde_json::to_writer_pretty(&mut out, value)?;
    } else {
        serde_json::to_writer(&mut out, value)?;
    }
    writeln!(out)?;
    Ok(())
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn print_text(res: &CutResult) {
    let (up, down) = res.spins.partition();
    println!("algorithm {}", res.algorithm);
    println!("weight {}", res.weight);
    println!("side+ {}", join(&up));
    println!("side- {}", join(&down));
    if let Some(t) = &res.tree {
        for &(u, v, s) in t.edges() {
            println!("tree {u} {v} {s:+}");
        }
    }
}

fn gen(family: &str, n: usize, p: Option<f64>, k: Option<usize>, weighted: bool, seed: u64, output: &Path) -> Result<()> {
    let family: Family = family.parse().map_err(|_| anyhow!("unknown family {family:?}"))?;
    let spec = InstanceSpec { family, n, k, p, weighted, seed };
    let g = gen_instance(&spec)?;
    write_text(output, &emit_edge_list(&g))
}

fn run_one(algo: &str, graph: &Path, r: usize, seed: u64, tree: bool, format: Format) -> Result<()> {
    let algorithm: Algorithm = algo.parse().map_err(|_| anyhow!("unknown algorithm {algo:?}"))?;
    let g = load_graph(graph)?;
    let opts = RunOptions { root: r, seed, emit_tree: tree, ..Default::default() };
    let res = run(algorithm, &g, &opts)?;
    match format {
        Format::Json => print_json(&res, false),
        Format::Text => {
            print_text(&res);
            Ok(())
        }
    }
}

fn run_oracle(graph: &Path) -> Result<()> {
    let g = load_graph(graph)?;
    let res = oracle::brute_force(&g)?;
    print_json(&json!({ "optimum": res.optimum, "witness": res.witness }), false)
}

/// Prints the report; a failed check is reported through the exit code.
fn verify(graph: &Path, runs: Option<usize>, seed: u64) -> Result<bool> {
    let g = load_graph(graph)?;
    let starts: Vec<usize> = match runs {
        Some(t) => {
            let mut s = prim::random_starts(g.n(), t.min(g.n()), seed);
            s.sort_unstable();
            s
        }
        None => (0..g.n()).collect(),
    };
    let report = stabilizer::check_equivalences_for(&g, &starts)?;
    print_json(&report, true)?;
    Ok(report.passed)
}

fn run_bench(config: &Path, output: Option<PathBuf>, jobs: Option<usize>, no_timing: bool) -> Result<()> {
    let mut cfg = SweepConfig::from_json(&read_text(config)?)?;
    if no_timing {
        cfg.timing = false;
    }
    relcut::par::init_threads(jobs);
    let records = bench::run_sweep(&cfg, Exec::Parallel)?;

    let path = output.or_else(|| cfg.output.as_ref().map(PathBuf::from));
    let format = match path.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("json") => OutputFormat::Json,
        Some("csv") => OutputFormat::Csv,
        _ => cfg.format,
    };
    let mut buf = Vec::new();
    bench::write_records(&records, format, &mut buf)?;
    match &path {
        Some(p) => fs::write(p, &buf).map_err(|e| IoFailure(format!("cannot write {}: {e}", p.display())))?,
        None => io::stdout().lock().write_all(&buf)?,
    }

    let mut err = io::stderr().lock();
    for row in bench::aggregate(&records)? {
        let p = row.p.map(|p| format!(" p={p}")).unwrap_or_default();
        let k = row.k.map(|k| format!(" k={k}")).unwrap_or_default();
        let e = row.sk_e_reg.map(|s| format!(" e_reg {:.5}", s.mean)).unwrap_or_default();
        writeln!(
            err,
            "{} n={}{p}{k} {}: ratio {:.5} +- {:.5} [{:.5}, {:.5}]{e}",
            row.family, row.n, row.algorithm, row.ratio.mean, row.ratio.std, row.ratio.min, row.ratio.max
        )?;
    }
    writeln!(err, "{} records, total runtime {:.3}s", records.len(), bench::total_runtime(&records))?;
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let io = e.chain().any(|c| {
        c.is::<IoFailure>() || c.is::<io::Error>() || matches!(c.downcast_ref::<relcut::Error>(), Some(relcut::Error::Io(_)))
    });
    if io {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Gen { family, n, p, k, weighted, seed, output } => gen(&family, n, p, k, weighted, seed, &output).map(|_| true),
        Command::Run { algo, graph, r, seed, tree, format } => run_one(&algo, &graph, r, seed, tree, format).map(|_| true),
        Command::Oracle { graph } => run_oracle(&graph).map(|_| true),
        Command::Verify { graph, runs, seed } => verify(&graph, runs, seed),
        Command::Bench { config, output, jobs, no_timing } => run_bench(&config, output, jobs, no_timing).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
