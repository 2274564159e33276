use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use insep::cli::census::{run_census, CensusParams};
use insep::cli::gen::{gen_instance, GenKind, GenParams};
use insep::cli::params::{check_params, fano_fourfolds, ParamInput, Theorem};
use insep::cli::{read_instance, run_classify, run_resolve, write_json, CliError};
use insep::field::FieldTower;
use insep::poly::{MultiPoly, PolyTerm};
use insep::resolve::Mode;

#[derive(Parser)]
#[command(
    name = "insep",
    version,
    about = "Certified resolution of inseparable cyclic-cover singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve a germ or section instance and write the report.
    Resolve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, conflicts_with = "warn")]
        strict: bool,
        /// Record failed claims and keep going where possible.
        #[arg(long)]
        warn: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the critical point of a section, or check a germ's shape.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Admissibility census of random sections on P^3.
    Census(CensusArgs),
    /// Evaluate the numbered hypotheses for a parameter set.
    CheckParams(ParamArgs),
    /// Emit a seeded normal-form instance.
    Gen {
        #[arg(long)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON list of extra sections (each a list of terms in X_0..X_3).
    #[arg(long)]
    inject: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    theorem: Option<Theorem>,
    #[arg(long, default_value_t = 0)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    d: u64,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<u64>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    /// Check the four index-one Fano 4-fold families instead.
    #[arg(long)]
    families: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Resolve {
            input,
            strict: _,
            warn,
            out,
        } => {
            let spec = read_instance(&input)?;
            let mode = if warn || spec.options.warn {
                Mode::Warn
            } else {
                Mode::Strict
            };
            let report = run_resolve(&spec, mode)?;
            let out = out.or_else(|| spec.options.report.as_ref().map(PathBuf::from));
            write_json(&report, out.as_deref())?;
            Ok(report.exit_code())
        }
        Command::Classify { input, out } => {
            let spec = read_instance(&input)?;
            write_json(&run_classify(&spec)?, out.as_deref())?;
            Ok(0)
        }
        Command::Census(a) => {
            let params = CensusParams {
                n: a.n,
                d: a.d,
                p: a.p,
                k: a.k,
                m: a.m,
                samples: a.samples,
                seed: a.seed,
            };
            let injected = match &a.inject {
                Some(path) => {
                    let base = FieldTower::from_descriptor(&insep::field::FieldDescriptor {
                        p: a.p,
                        k: a.k,
                        modulus: None,
                    })?;
                    let lists: Vec<Vec<PolyTerm>> =
                        serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    lists
                        .iter()
                        .map(|t| MultiPoly::from_json(&base, 4, t))
                        .collect::<Result<Vec<_>, _>>()?
                }
                None => Vec::new(),
            };
            write_json(&run_census(&params, &injected)?, a.out.as_deref())?;
            Ok(0)
        }
        Command::CheckParams(a) => {
            if a.families {
                write_json(&fano_fourfolds(), a.out.as_deref())?;
                return Ok(0);
            }
            let theorem = a.theorem.ok_or_else(|| {
                CliError::Schema("--theorem is required unless --families is given".into())
            })?;
            let input = ParamInput {
                n: a.n,
                d: a.d,
                m: a.m,
                degrees: a.degrees,
                a: a.a,
                b: a.b,
            };
            let check = check_params(theorem, &input);
            write_json(&check, a.out.as_deref())?;
            Ok(if check.accepted { 0 } else { 1 })
        }
        Command::Gen {
            kind,
            n,
            p,
            k,
            d,
            seed,
            out,
        } => {
            let spec = gen_instance(&GenParams {
                kind,
                n,
                p,
                k,
                d,
                seed,
            })?;
            match out {
                Some(path) => std::fs::write(path, spec.to_json())?,
                None => print!("{}", spec.to_json()),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
