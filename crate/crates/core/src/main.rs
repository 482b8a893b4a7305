use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hklab::job::{
    parse_param_range, parse_rational, run, BoundKind, Command, Construction, IdealRef, JobSpec, Target,
};
use hklab::report::{render, Format};
use hklab::{EstimateMethod, HkError, OrderKind};

#[derive(Parser)]
#[command(name = "hklab", version, about = "Hilbert–Kunz functions of quotient rings over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Largest Frobenius exponent e (default: largest e with p^e <= 27, at least 2)
    #[arg(long, global = true)]
    emax: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Fit::TwoPoint)]
    fit: Fit,
    /// Relative tolerance for verdicts, e.g. 1/20
    #[arg(long, global = true)]
    tol: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Order::Grevlex)]
    order: Order,
    /// Worker threads (default: HKLAB_THREADS, else the core count)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Record wall-clock time per sample (output is then not reproducible)
    #[arg(long, global = true)]
    timings: bool,
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    #[arg(long, global = true)]
    json: bool,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fit {
    TwoPoint,
    Last,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Grevlex,
    Lex,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis, dimension and staircase of a ring
    Gb {
        file: PathBuf,
        #[arg(long)]
        ring: String,
    },
    /// Hilbert–Kunz samples and estimate of a ring or module
    Hk {
        file: PathBuf,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: Option<String>,
        /// `m` for the maximal ideal, or a declared ideal
        #[arg(long, default_value = "m")]
        ideal: String,
    },
    /// Print the presentation of a construction: fiber R S | multifiber R S T .. | dup R I | ideal R M
    Construct {
        file: PathBuf,
        kind: String,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Compare an estimate against a closed form or a stated value
    Verify {
        file: PathBuf,
        /// fiber | multifiber | dup | ideal | value:Q
        #[arg(long)]
        against: String,
        #[arg(required = true)]
        names: Vec<String>,
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value = "m")]
        ideal: String,
    },
    /// Run hk (or verify, with --against) over a parameter range substituted into a template
    Sweep {
        /// NAME=LO..HI, inclusive
        #[arg(long)]
        param: String,
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        against: Option<String>,
        #[arg(required = true)]
        names: Vec<String>,
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value = "m")]
        ideal: String,
    },
    /// Exact lower bounds and closed values
    Bounds {
        /// both-regular | one-nonregular | both-nonregular | strict-dims | aberbach-enescu | wy |
        /// idealization | idealization-rank | veronese
        #[arg(long)]
        case: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Check the quadric lower bound for a ring
    Wy {
        file: PathBuf,
        #[arg(long)]
        ring: String,
        /// Dimension to test at (default: the ring's dimension)
        #[arg(long)]
        d: Option<usize>,
        #[arg(long = "quadric-ring")]
        quadric_ring: Option<String>,
    },
}

fn read(path: &Path) -> Result<String, HkError> {
    fs::read_to_string(path).map_err(|e| HkError::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn hk_or_verify(against: Option<String>, names: Vec<String>, module: Option<String>, ideal: &str) -> Result<Command, HkError> {
    let ideal = IdealRef::parse(ideal);
    match against {
        Some(a) => Ok(Command::Verify(Target::parse(&a, &names, module, ideal)?)),
        None => {
            if names.len() != 1 {
                return Err(HkError::Invalid("hk takes exactly one ring name".into()));
            }
            Ok(Command::Hk {
                ring: names[0].clone(),
                module,
                ideal,
            })
        }
    }
}

fn build(cli: Cli) -> Result<(JobSpec, Format, Option<PathBuf>), HkError> {
    let (source, command) = match cli.command {
        Cmd::Gb { file, ring } => (read(&file)?, Command::Gb { ring }),
        Cmd::Hk {
            file,
            ring,
            module,
            ideal,
        } => (
            read(&file)?,
            Command::Hk {
                ring,
                module,
                ideal: IdealRef::parse(&ideal),
            },
        ),
        Cmd::Construct { file, kind, names } => (read(&file)?, Command::Construct(Construction::parse(&kind, &names)?)),
        Cmd::Verify {
            file,
            against,
            names,
            module,
            ideal,
        } => (read(&file)?, hk_or_verify(Some(against), names, module, &ideal)?),
        Cmd::Sweep {
            param,
            template,
            against,
            names,
            module,
            ideal,
        } => {
            let (param, lo, hi) = parse_param_range(&param)?;
            let inner = hk_or_verify(against, names, module, &ideal)?;
            (
                read(&template)?,
                Command::Sweep {
                    param,
                    lo,
                    hi,
                    inner: Box::new(inner),
                },
            )
        }
        Cmd::Bounds { case, d, count } => (
            String::new(),
            Command::Bounds {
                kind: BoundKind::parse(&case, count)?,
                d,
            },
        ),
        Cmd::Wy {
            file,
            ring,
            d,
            quadric_ring,
        } => (
            read(&file)?,
            Command::Wy {
                ring,
                d,
                quadric: quadric_ring,
            },
        ),
    };
    let c = cli.common;
    let mut job = JobSpec::new(source, command);
    job.e_max = c.emax;
    job.method = match c.fit {
        Fit::TwoPoint => EstimateMethod::TwoPointFit,
        Fit::Last => EstimateMethod::LastSample,
    };
    if let Some(t) = c.tol {
        job.tolerance = parse_rational(&t)?;
    }
    job.order = match c.order {
        Order::Grevlex => OrderKind::GrevLex,
        Order::Lex => OrderKind::Lex,
    };
    job.threads = c.threads;
    job.timings = c.timings;
    let format = if c.csv {
        Format::Csv
    } else if c.json {
        Format::Json
    } else {
        Format::Human
    };
    Ok((job, format, c.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = build(cli).and_then(|(job, format, out)| {
        let report = run(&job)?;
        let text = render(&report, format);
        match out {
            Some(path) => fs::write(&path, text)
                .map_err(|e| HkError::Invalid(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(report.passed())
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
