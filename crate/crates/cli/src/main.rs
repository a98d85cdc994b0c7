use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

mod commands;
mod selftest;

#[derive(Parser, Debug)]
#[command(
    name = "greenseq",
    version,
    about = "Maximal green and reddening sequences of valued quivers"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the search commands.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct QuiverArg {
    /// Quiver or matrix JSON file; `fixture:NAME` loads a bundled quiver.
    #[arg(long, value_name = "PATH")]
    quiver: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a sequence and print the final exchange matrix, c-matrix and g-matrix.
    Seed {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_name = "LIST", default_value = "", value_parser = parse_list)]
        sequence: Seq,
    },
    /// Decide whether a sequence is maximal green, reddening or neither.
    Classify {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_name = "LIST", value_parser = parse_list)]
        sequence: Seq,
    },
    /// Rotate a reddening sequence onto the once-mutated quiver.
    Rotate {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_name = "LIST", value_parser = parse_list)]
        sequence: Seq,
    },
    /// Enumerate maximal green sequences up to a length bound.
    Mgs {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_name = "N")]
        max_len: usize,
        /// Disable both search prunings.
        #[arg(long)]
        no_prune: bool,
    },
    /// Enumerate reddening sequences with at most R red mutations.
    Reddening {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_name = "N")]
        max_len: usize,
        #[arg(long, value_name = "R", default_value_t = 1)]
        max_red: usize,
        #[arg(long)]
        no_prune: bool,
    },
    /// BFS slice of the oriented exchange graph.
    Graph {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_name = "N", default_value_t = 4)]
        depth: usize,
        /// Write DOT to PATH (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Preinjective root ladder of a single arrow J -> I.
    Rank2 {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_name = "J,I", value_parser = parse_arrow)]
        arrow: (usize, usize),
        #[arg(long, value_name = "N", default_value_t = 8)]
        t: usize,
    },
    /// Null root, Coxeter period, root layers and region classes of a tame quiver.
    Tame {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_name = "N", default_value_t = 2)]
        k: usize,
        /// Classify the cluster region at every step of this sequence.
        #[arg(long, value_name = "LIST", value_parser = parse_list)]
        sequence: Option<Seq>,
    },
    /// Re-check the bundled worked examples.
    Selftest,
}

/// A 1-based, comma-separated mutation sequence.
#[derive(Clone, Debug)]
struct Seq(Vec<usize>);

fn parse_list(s: &str) -> Result<Seq, String> {
    greenseq_core::parse_sequence(s)
        .map(Seq)
        .map_err(|e| e.to_string())
}

fn parse_arrow(s: &str) -> Result<(usize, usize), String> {
    match parse_list(s)?.0.as_slice() {
        [j, i] => Ok((*j, *i)),
        _ => Err(format!("expected J,I, got '{s}'")),
    }
}

/// Failure modes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: bad invocation.
    Usage(String),
    /// Exit 1: the input is well formed but the computation rejects it.
    Domain(String),
}

impl From<greenseq_core::Error> for CliError {
    fn from(e: greenseq_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            return usage("--jobs must be at least 1");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("greenseq: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => usage(&msg),
        Err(CliError::Domain(msg)) => {
            eprintln!("greenseq: {msg}");
            ExitCode::from(1)
        }
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("greenseq: {msg}");
    eprintln!("{}", Cli::command().render_usage());
    ExitCode::from(2)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    use commands as c;
    let json = cli.json;
    match &cli.command {
        Command::Seed { q, sequence } => c::seed(&c::load(&q.quiver)?, &sequence.0, json),
        Command::Classify { q, sequence } => c::classify(&c::load(&q.quiver)?, &sequence.0, json),
        Command::Rotate { q, sequence } => c::rotate(&c::load(&q.quiver)?, &sequence.0, json),
        Command::Mgs {
            q,
            max_len,
            no_prune,
        } => c::mgs(&c::load(&q.quiver)?, *max_len, !no_prune, json),
        Command::Reddening {
            q,
            max_len,
            max_red,
            no_prune,
        } => c::reddening(&c::load(&q.quiver)?, *max_len, *max_red, !no_prune, json),
        Command::Graph { q, depth, dot } => {
            c::graph(&c::load(&q.quiver)?, *depth, dot.as_deref(), json)
        }
        Command::Rank2 { q, arrow, t } => c::rank2(&c::load(&q.quiver)?, *arrow, *t, json),
        Command::Tame { q, k, sequence } => c::tame(
            &c::load_quiver(&q.quiver)?,
            *k,
            sequence.as_ref().map(|s| s.0.as_slice()),
            json,
        ),
        Command::Selftest => selftest::run(json),
    }
}
