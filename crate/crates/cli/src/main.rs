use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use xrank_cli::config::ExperimentConfig;
use xrank_cli::input::{form_from_list, parse_list, read_center, read_form, read_line, InputError};
use xrank_cli::suites::{run_suite, SuiteError};
use xrank_cli::{commands, exit, generate};
use xrank_core::secant::VarietySpec;

#[derive(Parser)]
#[command(name = "xrank", version, about = "Exact ranks with respect to rational normal curves and their projections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Waring rank of a binary form, with its certificate.
    RankForm {
        /// JSON file {"degree": d, "coeffs": [...]}.
        #[arg(long, conflicts_with_all = ["coeffs", "random"])]
        form: Option<PathBuf>,
        /// Comma-separated coefficients a_0..a_d of sum a_i x^(d-i) y^i.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
        coeffs: Option<String>,
        /// Use a seeded random form of this degree.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, env = "XRANK_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Rank of a point on the projection of the rational normal curve from a center.
    ProjectedRank {
        #[arg(long)]
        center: PathBuf,
        /// Comma-separated coordinates of the point.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Smooth, nodal or cuspidal type of the projected curve.
    Classify {
        #[arg(long)]
        center: PathBuf,
    },
    /// Rank analysis of a line against the projected curve.
    LineRank {
        #[arg(long)]
        center: PathBuf,
        /// JSON file with two points spanning the line.
        #[arg(long)]
        line: PathBuf,
    },
    /// Secant dimensions of a variety ("rnc:7", "veronese:2,3", "monomial:...").
    SecantProfile {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        smax: usize,
        #[arg(long, env = "XRANK_SEED", default_value_t = 0)]
        seed: u64,
        /// Probe even where a closed formula is known.
        #[arg(long)]
        probe: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run an experiment suite and report every case.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, env = "XRANK_SEED", default_value_t = 0)]
        seed: u64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit the header (version, timestamp) so reruns compare byte for byte.
        #[arg(long)]
        compare: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        sample_size: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(short, long, action = clap::ArgAction::Count)]
        verbose: u8,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<xrank_core::Error> for Failure {
    fn from(e: xrank_core::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Compute(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::Compute(format!("cannot write output: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::RankForm { form, coeffs, random, seed } => {
            let f = match (form, coeffs, random) {
                (Some(p), None, None) => read_form(&p)?,
                (None, Some(c), None) => form_from_list(&c)?,
                (None, None, Some(d)) if d >= 1 => generate::random_form(&mut ChaCha8Rng::seed_from_u64(seed), d, 5),
                _ => return Err(Failure::Usage("give exactly one of --form, --coeffs, --random (degree >= 1)".into())),
            };
            emit(&commands::rank_form(&f)?, None)?;
            Ok(exit::OK)
        }
        Command::ProjectedRank { center, point } => {
            let center = read_center(&center)?;
            let p = parse_list(&point)?;
            if p.len() != center.n() + 1 {
                return Err(Failure::Usage(format!("point needs {} coordinates", center.n() + 1)));
            }
            let (text, certified) = commands::projected_rank(&center, &p)?;
            emit(&text, None)?;
            Ok(if certified { exit::OK } else { exit::UPPER_BOUND_ONLY })
        }
        Command::Classify { center } => {
            emit(&commands::classify(&read_center(&center)?)?, None)?;
            Ok(exit::OK)
        }
        Command::LineRank { center, line } => {
            let center = read_center(&center)?;
            let [a, b] = read_line(&line)?;
            if a.len() != center.n() + 1 || b.len() != center.n() + 1 {
                return Err(Failure::Usage(format!("line points need {} coordinates", center.n() + 1)));
            }
            emit(&commands::line_rank(&center, &a, &b)?, None)?;
            Ok(exit::OK)
        }
        Command::SecantProfile { variety, smax, seed, probe, format } => {
            let y: VarietySpec = variety.parse().map_err(|e: xrank_core::Error| Failure::Usage(e.to_string()))?;
            let text = commands::secant_profile_text(&y, smax, seed, probe, matches!(format, Format::Csv))?;
            emit(&text, None)?;
            Ok(exit::OK)
        }
        Command::Verify { suite, seed, parallel, out, compare, format, max_degree, sample_size, trials, verbose } => {
            let cfg = ExperimentConfig {
                max_degree,
                sample_size,
                trials,
                parallel: parallel.max(1),
                out: out.clone(),
                verbose,
                ..ExperimentConfig::new(&suite, seed)
            };
            let report = run_suite(&cfg).map_err(|e| match e {
                SuiteError::Unknown(_) => Failure::Usage(e.to_string()),
                other => Failure::Compute(other.to_string()),
            })?;
            if verbose > 0 {
                for c in report.body.cases.iter().filter(|c| !c.passed || verbose > 1) {
                    eprintln!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.id, c.failures().join("; "));
                }
            }
            let text = match (format, compare) {
                (Format::Csv, _) => report.to_csv(),
                (Format::Json, true) => report.comparison_json(),
                (Format::Json, false) => report.to_json(),
            };
            emit(&text, out.as_ref())?;
            let s = &report.body.summary;
            eprintln!("{}: {} cases, {} passed, {} failed", cfg.suite, s.total, s.passed, s.failed);
            Ok(if report.all_passed() { exit::OK } else { exit::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            exit::USAGE
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            exit::FAILURE
        }
    };
    ExitCode::from(code as u8)
}
