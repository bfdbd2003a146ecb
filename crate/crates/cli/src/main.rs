//! `tempoclass`: validate, split, inspect and classify timed automata.

mod commands;
mod report;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use tempoclass::classify::{Mode, DEFAULT_CAP};
use tempoclass::orbit::Kind;
use tempoclass::rational::parse_rational;

pub const EXIT_IO: i32 = 10;
pub const EXIT_PARSE: i32 = 11;
pub const EXIT_NONDETERMINISTIC: i32 = 12;
pub const EXIT_CAP: i32 = 13;
pub const EXIT_USAGE: i32 = 14;
pub const EXIT_ANALYSIS: i32 = 15;

/// An error with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    fn new(code: i32, msg: String) -> Failure {
        Failure { code, error: anyhow!(msg) }
    }
    pub fn io(msg: String) -> Failure {
        Failure::new(EXIT_IO, msg)
    }
    pub fn parse(msg: String) -> Failure {
        Failure::new(EXIT_PARSE, msg)
    }
    pub fn nondeterministic(msg: String) -> Failure {
        Failure::new(EXIT_NONDETERMINISTIC, msg)
    }
    pub fn cap(msg: String) -> Failure {
        Failure::new(EXIT_CAP, msg)
    }
    pub fn usage(msg: String) -> Failure {
        Failure::new(EXIT_USAGE, msg)
    }
    pub fn analysis(msg: String) -> Failure {
        Failure::new(EXIT_ANALYSIS, msg)
    }
}

#[derive(Parser, Debug)]
#[command(name = "tempoclass", version, about = "Bandwidth classification of deterministic timed automata")]
struct Cli {
    /// Print the JSON report instead of the human summary.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Bfs,
    Savitch,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    P,
    F,
    D,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an automaton and check determinism.
    Validate { file: String },
    /// Region-split an automaton.
    Regionize {
        file: String,
        /// Write the split automaton here instead of printing it.
        #[arg(long)]
        out: Option<String>,
    },
    /// Orbit of a path given as original edge ids (d1,d2,...) or split edge ids (e1,e2,...).
    Orbit {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<String>,
        #[arg(long, value_enum, default_value = "p")]
        kind: KindArg,
        /// Write a DOT rendering of the orbit here.
        #[arg(long)]
        dot: Option<String>,
    },
    /// Classify as meager (exit 0), normal (exit 1) or obese (exit 2).
    Classify {
        file: String,
        /// Saturation cap per orbit kind; TEMPOCLASS_CAP overrides it.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "bfs")]
        mode: ModeArg,
    },
    /// Distance between two timed words.
    Distance { first: String, second: String },
    /// Empirical ε-capacity curve and growth-model fit.
    Bandwidth {
        file: String,
        /// Durations, comma-separated.
        #[arg(long = "T", value_name = "T1,T2,...")]
        t: String,
        /// Precisions, comma-separated.
        #[arg(long, default_value = "1/2,1/4,1/8,1/16")]
        eps: String,
        /// Grid step for entropy estimates (default ε/2).
        #[arg(long)]
        grid: Option<String>,
        /// Also compute entropy upper estimates.
        #[arg(long)]
        entropy: bool,
        /// Write the curve as CSV here.
        #[arg(long)]
        csv: Option<String>,
    },
}

fn run(cli: Cli) -> Result<commands::Outcome, Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(format!("cannot configure threads: {e}")))?;
    }
    match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Regionize { file, out } => commands::regionize(&file, out.as_deref()),
        Command::Orbit { file, path, kind, dot } => {
            let kind = match kind {
                KindArg::P => Kind::P,
                KindArg::F => Kind::F,
                KindArg::D => Kind::D,
            };
            commands::orbit(&file, &path, kind, dot.as_deref())
        }
        Command::Classify { file, cap, mode } => {
            let cap = match std::env::var("TEMPOCLASS_CAP") {
                Ok(v) => v.trim().parse().map_err(|_| Failure::usage(format!("bad TEMPOCLASS_CAP `{v}`")))?,
                Err(_) => cap,
            };
            let mode = match mode {
                ModeArg::Bfs => Mode::Bfs,
                ModeArg::Savitch => Mode::Savitch,
            };
            commands::classify(&file, cap, mode)
        }
        Command::Distance { first, second } => commands::distance_cmd(&first, &second),
        Command::Bandwidth { file, t, eps, grid, entropy, csv } => {
            let ts = commands::parse_list(&t, "duration")?;
            let eps = commands::parse_list(&eps, "precision")?;
            let grid = match grid {
                Some(g) => Some(parse_rational(&g).ok_or_else(|| Failure::usage(format!("bad grid `{g}`")))?),
                None => None,
            };
            commands::bandwidth(&file, &ts, &eps, grid.as_ref(), entropy, csv.as_deref())
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            if json {
                print!("{}", outcome.report.to_json());
            } else {
                println!("{}", outcome.summary.trim_end());
                for w in &outcome.report.warnings {
                    eprintln!("warning: {w}");
                }
            }
            std::process::exit(outcome.exit);
        }
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            std::process::exit(f.code);
        }
    }
}
