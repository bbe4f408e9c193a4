//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use phik_core::averaging::{corollary_constant, euler_constant, minimal_order_scan};
use phik_core::menon::{psi_multiplicativity_scan, psi_table};
use phik_core::phi::phi_k_of;
use phik_core::rho::rho_with_guard;
use phik_core::verify::{self, Suite};
use phik_core::DEFAULT_GUARD;

use crate::error::{CliError, ExitStatus};
use crate::parallel;
use crate::report::{Cell, Meta, OutputFormat, Table};

#[derive(Debug, Parser)]
#[command(
    name = "phik",
    version,
    about = "Invertible sums of squares modulo n: values, checks and reports"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t, global = true)]
    pub format: OutputFormat,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads for table building (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Omit the version/timestamp header.
    #[arg(long, global = true)]
    pub no_meta: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Φ_k(n), or tabulate Φ_k(1..=x).
    Phi(PhiArgs),
    /// Count k-tuples with x_1² + ... + x_k² ≡ λ (mod n).
    Rho(RhoArgs),
    /// Run a cross-checking suite.
    Verify(VerifyArgs),
    /// Generate a report.
    #[command(subcommand)]
    Report(ReportKind),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["n", "range"])))]
pub struct PhiArgs {
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[arg(short, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    /// Tabulate n = 1..=X with a sieve.
    #[arg(long, value_name = "X", value_parser = clap::value_parser!(u64).range(1..))]
    pub range: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RhoArgs {
    #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[arg(short = 'l', long = "lambda")]
    pub lambda: u64,
    #[arg(short, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Largest n^k allowed for exhaustive enumeration.
    #[arg(long, default_value_t = DEFAULT_GUARD)]
    pub max_enum: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Rho,
    Phi,
    Identities,
    Convolution,
    MenonClassic,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Rho => Suite::Rho,
            SuiteArg::Phi => Suite::Phi,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Convolution => Suite::Convolution,
            SuiteArg::MenonClassic => Suite::MenonClassic,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 100)]
    pub limit: u64,
}

#[derive(Debug, Subcommand)]
pub enum ReportKind {
    /// Exact partial sums against the main term C_k x^(k+1)/(k+1).
    Average {
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
        xs: Vec<u64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// The constant C_k with its certified truncation bound.
    Constants {
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Φ_k(n) log log n / n^k along primorials.
    MinimalOrder {
        #[arg(short, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Scan primorials of the first 3..=P primes.
        #[arg(long, default_value_t = 9)]
        primes: u32,
        /// Allow even k.
        #[arg(long)]
        experimental: bool,
    },
    /// Table of Ψ_k(n) for n = 1..=NMAX.
    Menon {
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: u64,
    },
    /// Ψ_k(m) Ψ_k(n) against Ψ_k(mn) over coprime pairs with mn <= BOUND.
    MenonScan {
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
}

/// Rendered output plus the exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: ExitStatus,
}

impl Output {
    fn ok(text: String) -> Output {
        Output {
            text,
            status: ExitStatus::Success,
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let meta = (!cli.no_meta).then(Meta::now);
    let render = |t: Table| t.render(cli.format, meta.as_ref());
    let plain = cli.format == OutputFormat::Plain;
    match &cli.command {
        Command::Phi(a) => {
            if let Some(n) = a.n {
                let v = phi_k_of(a.k, n)?;
                if plain {
                    return Ok(Output::ok(format!("{v}\n")));
                }
                let mut t = Table::new("phi", &["n", "phi_k"]).with("k", a.k);
                t.push(vec![n.into(), (&v).into()]);
                return Ok(Output::ok(render(t)?));
            }
            let x = a.range.expect("clap enforces n or range");
            let values = parallel::phi_table(a.k, x)?;
            let mut t = Table::new("phi", &["n", "phi_k"]).with("k", a.k);
            for (n, v) in (1..=x).zip(values) {
                t.push(vec![n.into(), Cell::exact(v)]);
            }
            Ok(Output::ok(render(t)?))
        }
        Command::Rho(a) => {
            let v = rho_with_guard(a.k, a.lambda, a.n, a.max_enum)?;
            if plain {
                return Ok(Output::ok(format!("{} ({})\n", v.value, v.path.as_str())));
            }
            let mut t = Table::new("rho", &["k", "lambda", "n", "rho", "path"]);
            t.push(vec![
                a.k.into(),
                a.lambda.into(),
                a.n.into(),
                (&v.value).into(),
                Cell::text(v.path.as_str()),
            ]);
            Ok(Output::ok(render(t)?))
        }
        Command::Verify(a) => {
            let outcome = verify::run(a.suite.into(), a.limit)?;
            let mut t = Table::new(
                "verify",
                &["suite", "limit", "cases", "passed", "first_failure"],
            );
            t.push(vec![
                Cell::text(outcome.suite.name()),
                outcome.limit.into(),
                outcome.cases.into(),
                outcome.passed().into(),
                Cell::text(outcome.failure.clone().unwrap_or_default()),
            ]);
            Ok(Output {
                text: render(t)?,
                status: if outcome.passed() {
                    ExitStatus::Success
                } else {
                    ExitStatus::VerifyFailed
                },
            })
        }
        Command::Report(kind) => Ok(Output::ok(render(report(kind)?)?)),
    }
}

fn report(kind: &ReportKind) -> Result<Table, CliError> {
    match *kind {
        ReportKind::Average { k, ref xs, tol } => {
            let c = euler_constant(k, tol)?;
            let rows = parallel::averaging_report(k, xs, &c)?;
            let mut t = Table::new(
                "average",
                &["x", "partial_sum", "main_term", "rel_error", "error_ratio"],
            )
            .with("k", k)
            .with("c_k", c.value)
            .with("prime_bound", c.prime_bound)
            .with("tail_bound", c.tail_bound);
            for r in &rows {
                t.push(vec![
                    r.x.into(),
                    (&r.partial_sum).into(),
                    r.main_term.into(),
                    r.rel_error.into(),
                    r.error_ratio.into(),
                ]);
            }
            Ok(t)
        }
        ReportKind::Constants { k, tol } => {
            let mut t = Table::new(
                "constants",
                &["method", "k", "value", "c_k", "prime_bound", "tail_bound"],
            );
            let c = euler_constant(k, tol)?;
            t.push(vec![
                Cell::text("euler-product"),
                k.into(),
                c.value.into(),
                c.value.into(),
                c.prime_bound.into(),
                c.tail_bound.into(),
            ]);
            if k == 2 || k == 4 {
                let alt = corollary_constant(k, tol)?;
                let scale = (k + 1) as f64;
                t.push(vec![
                    Cell::text("residue-classes"),
                    k.into(),
                    alt.value.into(),
                    (scale * alt.value).into(),
                    alt.prime_bound.into(),
                    alt.tail_bound.into(),
                ]);
            }
            Ok(t)
        }
        ReportKind::MinimalOrder {
            k,
            primes,
            experimental,
        } => {
            let rows = minimal_order_scan(k, primes, experimental)?;
            let mut t = Table::new("minimal-order", &["primes", "n", "ratio"])
                .with("k", k)
                .with("limit", (-phik_core::averaging::EULER_GAMMA).exp());
            for r in &rows {
                t.push(vec![r.primes.into(), r.n.into(), r.ratio.into()]);
            }
            Ok(t)
        }
        ReportKind::Menon { k, nmax } => {
            let rows = psi_table(k, nmax)?;
            let mut t = Table::new("menon", &["k", "n", "lhs", "phi_k", "psi", "integral"]);
            for r in &rows {
                t.push(vec![
                    r.k.into(),
                    r.n.into(),
                    (&r.lhs).into(),
                    (&r.phi_k).into(),
                    Cell::exact(&r.psi),
                    r.integral.into(),
                ]);
            }
            Ok(t)
        }
        ReportKind::MenonScan { k, bound } => {
            let rows = psi_multiplicativity_scan(k, bound)?;
            let mut t = Table::new("menon-scan", &["m", "n", "product", "psi_mn", "equal"])
                .with("k", k)
                .with("bound", bound);
            for r in &rows {
                t.push(vec![
                    r.m.into(),
                    r.n.into(),
                    Cell::exact(&r.product),
                    Cell::exact(&r.psi_mn),
                    r.equal.into(),
                ]);
            }
            Ok(t)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(CliError::Stdout)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitStatus, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()?;
    }
    let output = execute(cli)?;
    emit(cli, &output.text)?;
    Ok(output.status)
}

/// Parses `args`, runs the command and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                ExitStatus::Usage.code()
            } else {
                0
            });
        }
    };
    match run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(phik_core::Error::Resource {
                required, budget, ..
            }) = &e
            {
                if *required > BigUint::from(*budget) {
                    eprintln!("hint: the operation needs {required} but the budget is {budget}");
                }
            }
            ExitCode::from(e.exit_status().code())
        }
    }
}
