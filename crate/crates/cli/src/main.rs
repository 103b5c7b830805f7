mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chanadv::midiff::MiDiff;
use chanadv::ordering::{AdvantagePair, Direction, Relation};
use chanadv::report::{format_g12, Table};
use chanadv::sweep::{
    sweep_hmm, sweep_listbound, HmmAxis, HmmSweepConfig, ListboundAxis, ListboundConfig, SweepRange,
};
use chanadv::Probability;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Exit code for invalid input: bad flags, out-of-domain parameters,
/// unreadable fixtures, unwritable outputs.
const EXIT_USAGE: u8 = 2;
/// Exit code when a verification suite finds a counterexample.
const EXIT_PROPERTY: u8 = 1;

#[derive(Parser)]
#[command(name = "chanadv", version, about = "BSC/BEC comparison with advantage, list-decoding and entropy-rate bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Mc,
    Ln,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    BscOverBec,
    BecOverBsc,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Suite {
    Envelopes,
    Tensorization,
    Decoder,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Advantage for one (p, q) pair, with the shape of the difference function.
    Eta {
        /// Crossover probability of the BSC.
        #[arg(value_parser = parse_probability)]
        p: f64,
        /// Erasure probability of the BEC.
        #[arg(value_parser = parse_probability)]
        q: f64,
        #[arg(long, value_enum, default_value = "mc")]
        relation: RelationArg,
        #[arg(long, value_enum, default_value = "bsc-over-bec")]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List-size exponent bounds along one axis.
    #[command(group(ArgGroup::new("axis").required(true).args(["q_range", "p_range", "hp_range"])))]
    SweepListbound {
        /// Sweep q with p = h^-1(q) (equal capacities).
        #[arg(long, value_parser = parse_range)]
        q_range: Option<SweepRange>,
        /// Sweep p at the fixed erasure probability --q.
        #[arg(long, value_parser = parse_range)]
        p_range: Option<SweepRange>,
        /// Sweep h(p) at the fixed erasure probability --q.
        #[arg(long, value_parser = parse_range)]
        hp_range: Option<SweepRange>,
        /// Erasure probability for --p-range and --hp-range.
        #[arg(long, default_value_t = 0.5, value_parser = parse_probability, conflicts_with = "q_range")]
        q: f64,
        /// Code rate; defaults to 1 - q.
        #[arg(long)]
        rate: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Entropy-rate bounds for the hidden Markov process along one axis.
    #[command(group(ArgGroup::new("axis").required(true).args(["q_range", "alpha_range"])))]
    SweepHmm {
        /// Sweep the flip rate q at the fixed noise level --alpha.
        #[arg(long, value_parser = parse_range, requires = "alpha")]
        q_range: Option<SweepRange>,
        /// Sweep the noise level alpha at the fixed flip rate --q.
        #[arg(long, value_parser = parse_range, requires = "q")]
        alpha_range: Option<SweepRange>,
        #[arg(long, conflicts_with = "alpha_range")]
        alpha: Option<f64>,
        #[arg(long, conflicts_with = "q_range")]
        q: Option<f64>,
        /// Observation length of the exact true-rate bracket (2..=22).
        #[arg(long, default_value_t = 18)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Run property suites; exits 1 on the first counterexample of any property.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Code fixture to check instead of the built-in codes.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

fn parse_probability(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
    Probability::new(x).map(f64::from).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<SweepRange, String> {
    s.parse().map_err(|e: chanadv::Error| e.to_string())
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<chanadv::Error> for Failure {
    fn from(e: chanadv::Error) -> Self {
        usage(e)
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Eta {
            p,
            q,
            relation,
            direction,
            format,
        } => cmd_eta(p, q, relation, direction, format),
        Command::SweepListbound {
            q_range,
            p_range,
            hp_range,
            q,
            rate,
            output,
            format,
        } => {
            let (axis, range) = match (q_range, p_range, hp_range) {
                (Some(r), None, None) => (ListboundAxis::EqualCapacity, r),
                (None, Some(r), None) => (ListboundAxis::Crossover { q }, r),
                (None, None, Some(r)) => (ListboundAxis::CrossoverEntropy { q }, r),
                _ => return Err(usage("exactly one sweep axis is required")),
            };
            let config = ListboundConfig { axis, range, rate };
            let table = sweep_listbound(&config)?;
            emit(&table, &json!({"command": "sweep-listbound", "sweep": config}), format, output)
        }
        Command::SweepHmm {
            q_range,
            alpha_range,
            alpha,
            q,
            n,
            output,
            format,
        } => {
            let (axis, range) = match (q_range, alpha_range, alpha, q) {
                (Some(r), None, Some(alpha), None) => (HmmAxis::FlipRate { alpha }, r),
                (None, Some(r), None, Some(q)) => (HmmAxis::NoiseLevel { q }, r),
                _ => return Err(usage("use --alpha with --q-range, or --q with --alpha-range")),
            };
            let config = HmmSweepConfig { axis, range, n };
            let table = sweep_hmm(&config)?;
            emit(&table, &json!({"command": "sweep-hmm", "sweep": config}), format, output)
        }
        Command::Verify { suite, seed, fixture } => {
            let fixture = match fixture {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    let name = path.file_stem().map_or("fixture".into(), |s| s.to_string_lossy().into_owned());
                    Some((name, chanadv::listdecode::BlockCode::parse_fixture(&text)?))
                }
                None => None,
            };
            let mut out = io::stdout().lock();
            let passed = verify::run(suite, seed, fixture, &mut out).map_err(usage)?;
            if passed {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_PROPERTY,
                    message: String::new(),
                })
            }
        }
    }
}

fn cmd_eta(p: f64, q: f64, relation: RelationArg, direction: DirectionArg, format: Format) -> Result<(), Failure> {
    let relation = match relation {
        RelationArg::Mc => Relation::MoreCapable,
        RelationArg::Ln => Relation::LessNoisy,
    };
    let direction = match direction {
        DirectionArg::BscOverBec => Direction::BscOverBec,
        DirectionArg::BecOverBsc => Direction::BecOverBsc,
    };
    let pair = AdvantagePair::compute(relation, direction, Probability::new(p)?, Probability::new(q)?)?;
    // Shape data exists only away from the degenerate endpoints.
    let shape = match MiDiff::from_f64(p, q) {
        Ok(f) => Some((f.regime(), f.critical_points()?)),
        Err(_) => None,
    };
    let text = match format {
        Format::Json => {
            let doc = json!({
                "p": p,
                "q": q,
                "relation": relation,
                "direction": direction,
                "eta": pair.eta,
                "regime": shape.map(|s| s.0),
                "critical_points": shape.map(|s| s.1),
            });
            serde_json::to_string_pretty(&doc).map_err(usage)? + "\n"
        }
        Format::Text => {
            let mut lines = vec![
                format!("eta        {}", format_g12(pair.eta)),
                format!("relation   {relation}"),
                format!("direction  {direction}"),
            ];
            match shape {
                Some((regime, cp)) => {
                    lines.push(format!("regime     {regime}"));
                    for (name, v) in [("r0", cp.r0), ("r_prime", cp.r_prime), ("r1", cp.r1)] {
                        if let Some(v) = v {
                            lines.push(format!("{name:<10} {}", format_g12(v)));
                        }
                    }
                }
                None => lines.push("regime     degenerate".into()),
            }
            lines.join("\n") + "\n"
        }
    };
    io::stdout().write_all(text.as_bytes()).map_err(usage)
}

fn emit(table: &Table, config: &serde_json::Value, format: TableFormat, output: Option<PathBuf>) -> Result<(), Failure> {
    let body = match format {
        TableFormat::Csv => table.to_csv(),
        TableFormat::Json => table.to_json(config).map_err(usage)?,
    };
    match output {
        Some(path) => fs::write(&path, body).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(body.as_bytes()).map_err(usage),
    }
}
