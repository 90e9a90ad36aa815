//! Command-line harness: graph I/O, fixture generation, treewidth and
//! extraction runs, and the empirical forcing-bound experiment. All output
//! is machine-readable; certificates re-verify on load.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 honest failure
//! (guard breach, search shortfall) with a trace where applicable.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cycle_minors::bramble::{bramble_order, grid_cross_bramble, verify_bramble, Bramble};
use cycle_minors::experiments::empirical_f;
use cycle_minors::extract::{extract_cycle_union_minor, CycleUnionSpec, ExtractConfig};
use cycle_minors::format::{parse_graph, serialize_graph, GraphFormat};
use cycle_minors::generators;
use cycle_minors::graph::Graph;
use cycle_minors::treewidth::{exact_treewidth_guarded, verify_tree_decomposition};
use cycle_minors::Error;

#[derive(Parser)]
#[command(name = "cycle-minors", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact treewidth of a graph file; prints the width and writes the
    /// tree-decomposition certificate.
    Treewidth(TreewidthArgs),
    /// Extract a disjoint-cycle-union minor certified against a bramble.
    Extract(ExtractArgs),
    /// Empirical lower bound on the treewidth threshold forcing a pattern.
    EmpiricalF(EmpiricalArgs),
    /// Emit fixture graphs and brambles.
    Gen(GenArgs),
}

#[derive(Args)]
struct TreewidthArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "edgelist")]
    format: String,
    #[arg(long, default_value_t = 20)]
    guard: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Bramble JSON: {"elements": [[v, ...], ...]}.
    #[arg(long)]
    bramble: PathBuf,
    /// Cycle lengths, descending: "l1,l2,...".
    #[arg(long)]
    spec: String,
    #[arg(long, default_value = "edgelist")]
    format: String,
    #[arg(long, default_value_t = 1.0)]
    c_star: f64,
    /// Scale thresholds down for desk-scale runs; omit for strict mode.
    #[arg(long)]
    relaxed_factor: Option<f64>,
    /// Declared maximum cycle length (defaults to l1).
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EmpiricalArgs {
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    what: GenCommand,
    #[arg(long, default_value = "edgelist", global = true)]
    format: String,
}

#[derive(Subcommand)]
enum GenCommand {
    /// k-by-k grid.
    Grid {
        #[arg(long)]
        k: usize,
    },
    /// Ladder: two rails with `rungs` rungs of `inner` interior vertices.
    Ladder {
        #[arg(long)]
        rungs: usize,
        #[arg(long, default_value_t = 0)]
        inner: usize,
    },
    /// Seeded uniform G(n, m).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Seeded connected subcubic graph with |E| = |V| + excess.
    Subcubic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        excess: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The standard order-(k+1) bramble of the k-by-k grid, as JSON.
    CrossBramble {
        #[arg(long)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Treewidth(a) => cmd_treewidth(a),
        Command::Extract(a) => cmd_extract(a),
        Command::EmpiricalF(a) => cmd_empirical_f(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match code {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Guard breaches and search shortfalls are honest failures (2); contract
/// and parse problems are usage errors (1).
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::GuardExceeded { .. } | Error::BudgetExhausted(_) | Error::Internal(_) => 2,
        Error::Parse(_)
        | Error::Precondition(_)
        | Error::InvalidBramble(_)
        | Error::InvalidSpec(_) => 1,
    }
}

fn read_graph(path: &Path, format: &str) -> Result<Graph, Error> {
    let format: GraphFormat = format.parse()?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_graph(&text, format)
}

fn write_json(
    dir: &Option<PathBuf>,
    name: &str,
    value: &impl serde::Serialize,
) -> Result<(), Error> {
    let Some(dir) = dir else {
        return Ok(());
    };
    std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(&path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(())
}

fn cmd_treewidth(a: TreewidthArgs) -> Result<ExitCode, Error> {
    let g = read_graph(&a.input, &a.format)?;
    let (width, decomposition) = exact_treewidth_guarded(&g, a.guard)?;
    if !verify_tree_decomposition(&g, &decomposition) {
        return Err(Error::Internal("certificate failed verification".into()));
    }
    println!("{width}");
    write_json(&a.out, "decomposition.json", &decomposition)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_extract(a: ExtractArgs) -> Result<ExitCode, Error> {
    let g = read_graph(&a.graph, &a.format)?;
    let btext = std::fs::read_to_string(&a.bramble)
        .map_err(|e| Error::Parse(format!("{}: {e}", a.bramble.display())))?;
    let bramble: Bramble =
        serde_json::from_str(&btext).map_err(|e| Error::Parse(format!("bramble JSON: {e}")))?;
    if !verify_bramble(&g, &bramble) {
        return Err(Error::InvalidBramble(
            "bramble fails verification against the graph".into(),
        ));
    }
    let mut spec = CycleUnionSpec::parse(&a.spec)?;
    if let Some(ml) = a.max_len {
        spec = spec.with_max_len(ml)?;
    }
    let cfg = match a.relaxed_factor {
        Some(f) => {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::InvalidSpec(
                    "relaxed factor must be in (0, 1]".into(),
                ));
            }
            ExtractConfig::relaxed(a.c_star, f)
        }
        None => ExtractConfig::strict(a.c_star),
    };
    let result = extract_cycle_union_minor(&g, &bramble, &spec, &cfg)?;
    write_json(&a.out, "trace.json", &result.trace)?;
    match result.model {
        Some(model) => {
            write_json(&a.out, "model.json", &model)?;
            println!("success");
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("failure");
            Ok(ExitCode::from(2))
        }
    }
}

fn cmd_empirical_f(a: EmpiricalArgs) -> Result<ExitCode, Error> {
    let spec = CycleUnionSpec::parse(&a.spec)?;
    let report = empirical_f(&spec, a.n_max, a.samples, a.seed)?;
    println!(
        "max_treewidth_minor_free={} formula_bound={:.2}",
        report.aggregates["max_treewidth_minor_free"], report.aggregates["formula_bound"]
    );
    write_json(&a.out, "report.json", &report)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(a: GenArgs) -> Result<ExitCode, Error> {
    let format: GraphFormat = a.format.parse()?;
    match a.what {
        GenCommand::Grid { k } => {
            if k == 0 {
                return Err(Error::InvalidSpec("grid needs k >= 1".into()));
            }
            print!(
                "{}",
                with_newline(&serialize_graph(
                    &cycle_minors::graph::grid_graph(k),
                    format
                ))
            );
        }
        GenCommand::Ladder { rungs, inner } => {
            if rungs < 2 {
                return Err(Error::InvalidSpec("ladder needs >= 2 rungs".into()));
            }
            let l = generators::ladder(rungs, inner);
            print!("{}", with_newline(&serialize_graph(&l.graph, format)));
        }
        GenCommand::Random { n, m, seed } => {
            print!(
                "{}",
                with_newline(&serialize_graph(
                    &generators::gnm_random(n, m, seed),
                    format
                ))
            );
        }
        GenCommand::Subcubic { n, excess, seed } => {
            if n < 3 || n < 2 * excess + 2 {
                return Err(Error::InvalidSpec(format!(
                    "subcubic needs n >= max(3, 2*excess + 2), got n = {n}"
                )));
            }
            let g = generators::random_subcubic_with_excess(n, excess, seed);
            print!("{}", with_newline(&serialize_graph(&g, format)));
        }
        GenCommand::CrossBramble { k } => {
            if k < 2 {
                return Err(Error::InvalidSpec("cross bramble needs k >= 2".into()));
            }
            let b = grid_cross_bramble(k);
            let g = cycle_minors::graph::grid_graph(k);
            debug_assert!(verify_bramble(&g, &b));
            debug_assert!(bramble_order(&g, &b).is_ok());
            println!(
                "{}",
                serde_json::to_string_pretty(&b).expect("serializable")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn with_newline(s: &str) -> String {
    if s.ends_with('\n') {
        s.to_string()
    } else {
        format!("{s}\n")
    }
}
