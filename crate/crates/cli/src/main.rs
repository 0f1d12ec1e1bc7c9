use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod refs;

#[derive(Parser, Debug)]
#[command(name = "pin2homalg", version, about = "Tor tables, Eilenberg-Moore pages, Massey products and Stasheff polytopes over F[[V]][Q]/(Q^3)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tor over R by the bar complex and by a minimal resolution, cross-checked.
    Tor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Pages of the box-tensor filtration, optionally followed by a hypothesized pattern.
    Ss {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Scenario JSON applied to E² = Tor.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Expected E^∞ ranks as "t:rank,..." or a module whose graded dimensions are the ranks.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
    /// Triple or fourfold Massey product in an A∞-algebra given as JSON.
    Massey {
        file: PathBuf,
        #[arg(num_args = 3..=4, required = true)]
        elements: Vec<String>,
    },
    /// Stasheff relations of an algebra, module or bimodule given as JSON.
    Check { file: PathBuf },
    /// Faces of K_n or J_n.
    Polytope {
        kind: Kind,
        n: usize,
        #[arg(long)]
        f_vector: bool,
        #[arg(long)]
        facets: bool,
        #[arg(long)]
        faces: bool,
        #[arg(long)]
        cubes: bool,
        #[arg(long)]
        relation_terms: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "J", alias = "j")]
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Grid,
    Csv,
    Json,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct RunConfig {
    #[arg(short = 'p', long = "precision", global = true, default_value_t = 6)]
    pub precision: u32,
    /// Internal degree window lo:hi.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    pub window: Option<(i64, i64)>,
    /// Homological depth for tor, bar length for ss, arity bound for check.
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    #[arg(long, global = true, default_value_t = 3)]
    pub rmax: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Grid)]
    pub format: Format,
    /// Seed for re-pivot trials.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{lo}: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{hi}: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let cfg = &cli.config;
    let result = match &cli.command {
        Command::Tor { left, right } => commands::tor(cfg, left, right),
        Command::Ss { left, right, pattern, target } => commands::ss(cfg, left, right, pattern.as_deref(), target.as_deref()),
        Command::Massey { file, elements } => commands::massey(cfg, file, elements),
        Command::Check { file } => commands::check(cfg, file),
        Command::Polytope { kind, n, f_vector, facets, faces, cubes, relation_terms } => {
            let query = match (f_vector, facets, faces, cubes, relation_terms) {
                (_, true, ..) => commands::Query::Facets,
                (_, _, true, ..) => commands::Query::Faces,
                (.., true, _) => commands::Query::Cubes,
                (.., true) => commands::Query::RelationTerms,
                _ if *kind == Kind::J => commands::Query::Facets,
                _ => commands::Query::FVector,
            };
            commands::polytope(cfg, *kind == Kind::K, *n, query)
        }
    };
    match result {
        Ok(report) => {
            print!("{}", report.body);
            match report.failure {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("invariant failure: {msg}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
