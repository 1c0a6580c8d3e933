use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wordrep::graph::{self, Graph};
use wordrep::io::{self, OutputFormat};
use wordrep::oracle::{self, OracleBudget, OracleError};
use wordrep::relabel::{represent_bipartite, represent_graph, OrderingPolicy, RelabelError};
use wordrep::selftest::{self, SelftestConfig};
use wordrep::words;

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_BIPARTITE: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_SELFTEST: u8 = 5;

#[derive(Parser)]
#[command(
    name = "wordrep",
    version,
    about = "Word-representations of bipartite graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a verified permutational representation of a bipartite graph
    Represent {
        input: PathBuf,
        /// paper-example, index-ascending or custom:<label>,<label>,...
        #[arg(long, default_value = "paper-example")]
        policy: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        output: Format,
        /// Splice isolated vertices back into the word instead of dropping them
        #[arg(long)]
        allow_isolated: bool,
    },
    /// Check whether a word represents a graph
    Verify { graph: PathBuf, word: PathBuf },
    /// Print a generated graph as an edge list
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// complete: M N; crown: N; random: M N [P]
        sizes: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Compute exact counts by exhaustive search
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        max_candidates: Option<u64>,
        /// Lift the vertex-count guard
        #[arg(long)]
        force: bool,
    },
    /// Exhaustively check the construction on all small bipartite graphs
    Selftest {
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Crown,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Perm,
    Word,
    Dimension,
    Equiv,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    io::parse_edge_list(&read(path)?)
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn relabel_failure(e: RelabelError) -> Failure {
    let code = match e {
        RelabelError::NotBipartite(_) => EXIT_NOT_BIPARTITE,
        RelabelError::VerificationFailed(_) => EXIT_VERIFICATION,
        _ => EXIT_INPUT,
    };
    fail(code, e.to_string())
}

fn represent(
    input: &Path,
    policy: &str,
    output: Format,
    allow_isolated: bool,
) -> Result<String, Failure> {
    let g = load_graph(input)?;
    let policy: OrderingPolicy = policy
        .parse()
        .map_err(|e: RelabelError| fail(EXIT_INPUT, e.to_string()))?;
    let rep = if allow_isolated {
        represent_graph(&g, &policy)
    } else {
        let (core, isolated) = g
            .split_isolated()
            .map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
        if !isolated.is_empty() {
            eprintln!(
                "note: dropping isolated vertices {} (use --allow-isolated to keep them)",
                isolated.join(", ")
            );
        }
        represent_bipartite(&core, &policy)
    }
    .map_err(relabel_failure)?;
    let format = match output {
        Format::Json => OutputFormat::Json,
        Format::Plain => OutputFormat::Plain,
    };
    io::emit_result(&rep, format).map_err(|e| fail(EXIT_VERIFICATION, e.to_string()))
}

fn verify(graph: &Path, word: &Path) -> Result<String, Failure> {
    let g = load_graph(graph)?;
    let w = io::parse_word(&read(word)?);
    let report = words::verify(&w, &g);
    if report.ok {
        Ok(report.to_string())
    } else {
        Err(fail(EXIT_VERIFICATION, report.to_string().trim_end()))
    }
}

fn gen(family: Family, sizes: &[String], seed: u64, p: Option<f64>) -> Result<String, Failure> {
    let usage = |msg: &str| fail(EXIT_INPUT, msg.to_string());
    let count = |s: &String| {
        s.parse::<usize>()
            .map_err(|_| usage(&format!("`{s}` is not a size")))
    };
    let g = match (family, sizes) {
        (Family::Complete, [m, n]) => graph::complete_bipartite(count(m)?, count(n)?),
        (Family::Crown, [n]) => graph::crown(count(n)?),
        (Family::Random, [m, n, rest @ ..]) if rest.len() <= 1 => {
            let p = match (rest.first(), p) {
                (Some(_), Some(_)) => return Err(usage("give the edge probability once")),
                (Some(s), None) => s
                    .parse()
                    .map_err(|_| usage(&format!("`{s}` is not a probability")))?,
                (None, Some(p)) => p,
                (None, None) => 0.5,
            };
            graph::random_bipartite(count(m)?, count(n)?, p, seed)
        }
        (Family::Complete, _) => return Err(usage("complete takes two sizes: M N")),
        (Family::Crown, _) => return Err(usage("crown takes one size: N")),
        (Family::Random, _) => return Err(usage("random takes M N [P]")),
    }
    .map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    Ok(io::emit_edge_list(&g))
}

fn oracle_failure(e: OracleError) -> Failure {
    let code = match e {
        OracleError::BudgetExceeded { .. }
        | OracleError::TooLarge { .. }
        | OracleError::ExceedsMaxK { .. } => EXIT_BUDGET,
        OracleError::NotBipartite(..) => EXIT_NOT_BIPARTITE,
        _ => EXIT_INPUT,
    };
    fail(code, e.to_string())
}

fn run_oracle(
    input: &Path,
    mode: Mode,
    max_k: Option<usize>,
    max_candidates: Option<u64>,
    force: bool,
) -> Result<String, Failure> {
    let g = load_graph(input)?;
    let mut budget = match mode {
        Mode::Perm | Mode::Equiv => OracleBudget::permutations(),
        Mode::Word => OracleBudget::words(),
        Mode::Dimension => OracleBudget::dimension(),
    };
    if force {
        budget.max_vertices = usize::MAX;
    }
    let budget = OracleBudget::new(
        budget.max_vertices,
        max_k.unwrap_or(budget.max_k),
        max_candidates.unwrap_or(budget.max_candidates),
    )
    .map_err(oracle_failure)?;
    let bipartition = || {
        g.bipartition()
            .map_err(|e| fail(EXIT_NOT_BIPARTITE, e.to_string()))
    };

    let out = match mode {
        Mode::Perm => {
            let w = oracle::min_perm_representation(&g, &budget).map_err(oracle_failure)?;
            let mut s = format!("permutation representation number: {}\n", w.k);
            for p in &w.permutations {
                s.push_str(&format!("  {p}\n"));
            }
            s
        }
        Mode::Word => {
            let w = oracle::min_representation(&g, &budget).map_err(oracle_failure)?;
            format!("representation number: {}\n  {}\n", w.k, w.word)
        }
        Mode::Dimension => {
            let p = oracle::bipartite_poset(&g, &bipartition()?).map_err(oracle_failure)?;
            let w = oracle::poset_dimension(&p, &budget).map_err(oracle_failure)?;
            let mut s = format!("poset dimension: {}\n", w.d);
            for ext in &w.extensions {
                s.push_str(&format!("  {}\n", ext.join(" < ")));
            }
            s
        }
        Mode::Equiv => {
            let eq =
                oracle::check_equivalence(&g, &bipartition()?, &budget).map_err(oracle_failure)?;
            format!(
                "permutation representation number: {}\nposet dimension: {}\nequal: {}\n",
                eq.perm_representation,
                eq.dimension,
                eq.holds()
            )
        }
    };
    Ok(out)
}

fn run_selftest(max_m: usize, max_n: usize) -> Result<String, Failure> {
    if max_m == 0 || max_n == 0 || max_m * max_n >= 64 {
        return Err(fail(
            EXIT_INPUT,
            "sizes must be positive with max-m * max-n < 64",
        ));
    }
    let summary = selftest::run(&SelftestConfig {
        max_m,
        max_n,
        ..SelftestConfig::default()
    });
    if summary.passed() {
        Ok(summary.to_string())
    } else {
        Err(fail(EXIT_SELFTEST, summary.to_string().trim_end()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Represent {
            input,
            policy,
            output,
            allow_isolated,
        } => represent(input, policy, *output, *allow_isolated),
        Command::Verify { graph, word } => verify(graph, word),
        Command::Gen {
            family,
            sizes,
            seed,
            p,
        } => gen(*family, sizes, *seed, *p),
        Command::Oracle {
            input,
            mode,
            max_k,
            max_candidates,
            force,
        } => run_oracle(input, *mode, *max_k, *max_candidates, *force),
        Command::Selftest { max_m, max_n } => run_selftest(*max_m, *max_n),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            // diagnostics that are themselves the command's report go to stdout
            if f.code == EXIT_VERIFICATION || f.code == EXIT_SELFTEST {
                println!("{}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
