//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 success, 1 verification failure or method disagreement (also I/O
//! failures), 2 usage error, 3 budget exhausted.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use maxclass_core::census::{affine_order, enumerate, MAX_ENUM_N};
use maxclass_core::notation::parse_elem;
use maxclass_core::theta::formula_report;
use maxclass_core::{CyclicContext, Error, Family, Involution, Method, OrderSource, SubgroupSpec};

use crate::parallel::{run_theta, Deadline};
use crate::report::{emit, CensusRecord, Format, Record, ThetaRecord, VerifyRecord};
use crate::verify::{run_verify, Suite, VerifyConfig, VerifyError};

#[derive(Debug, Parser)]
#[command(
    name = "maxclass",
    version,
    about = "Involution counts and subgroup censuses in unit groups of F2 group algebras"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for the brute and structural counters.
    #[arg(long, global = true, env = "MAXCLASS_WORKERS", default_value_t = 1,
          value_parser = clap::value_parser!(u32).range(1..=1024))]
    pub workers: u32,
    /// Seed for randomized verification checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock budget in seconds; unlimited when absent.
    #[arg(long, global = true, env = "MAXCLASS_BUDGET")]
    pub budget: Option<f64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the solutions of x^2 = 1 in V(F2 G).
    Theta(ThetaArgs),
    /// Order of one subgroup of V(F2 C_{2^n}).
    Census(CensusArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Formula,
    Brute,
    Structural,
    Proof,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Formula => Method::Formula,
            MethodArg::Brute => Method::Brute,
            MethodArg::Structural => Method::Structural,
            MethodArg::Proof => Method::ProofDecomposition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderSourceArg {
    Formula,
    Enumerated,
}

impl From<OrderSourceArg> for OrderSource {
    fn from(s: OrderSourceArg) -> Self {
        match s {
            OrderSourceArg::Formula => OrderSource::Formula,
            OrderSourceArg::Enumerated => OrderSource::Enumerated,
        }
    }
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    /// D, SD or Q.
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
    pub method: MethodArg,
    /// Where the proof method takes subgroup orders from.
    #[arg(long, value_enum)]
    pub order_source: Option<OrderSourceArg>,
    /// Exit with status 1 unless the count agrees with an independent method.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubgroupArg {
    V,
    V2,
    Si,
    Ssym,
    Vuni,
    W,
    J,
    H,
    L,
    M,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_parser = parse_sigma, default_value = "star")]
    pub sigma: Involution,
    #[arg(long, value_enum)]
    pub subgroup: SubgroupArg,
    /// Index for si, h and l.
    #[arg(long, default_value_t = 0)]
    pub i: usize,
    /// Element for m, as `1+a+a^3` or `0x0B@n=2`.
    #[arg(long)]
    pub z: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Inclusive range such as `2..4`; defaults to the suite's full range.
    #[arg(long, value_parser = parse_n_range)]
    pub n_range: Option<RangeInclusive<u32>>,
    /// Random elements per randomized check.
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e| format!("{e}; expected D, SD or Q"))
}

fn parse_sigma(s: &str) -> Result<Involution, String> {
    s.parse()
        .map_err(|e| format!("{e}; expected star or circledast"))
}

/// `A..B` and `A..=B` are inclusive; a single `A` means `A..A`.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => num(s)?..=num(s)?,
    };
    if range.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(range)
}

/// How a run ended, mapped onto the process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success = 0,
    Failure = 1,
    Usage = 2,
    BudgetExhausted = 3,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        ExitCode::from(o as u8)
    }
}

/// Parses `args` and runs the command, writing the report to `stdout` unless `--out` is
/// given and diagnostics to `stderr`.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() {
                Outcome::Usage
            } else {
                let _ = write!(stdout, "{}", e.render());
                Outcome::Success
            };
        }
    };
    run(&cli, stdout, stderr)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let deadline = Deadline::from_secs(cli.budget);
    let result = match &cli.command {
        Command::Theta(a) => theta(cli, a, deadline),
        Command::Census(a) => census(a),
        Command::Verify(a) => verify(cli, a, deadline),
    };
    match result {
        Ok((report, outcome)) => {
            let written = match &cli.out {
                Some(path) => File::create(path).and_then(|f| {
                    let mut w = BufWriter::new(f);
                    report.write(cli.format, &mut w)?;
                    w.flush()
                }),
                None => report.write(cli.format, stdout),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return Outcome::Failure;
            }
            outcome
        }
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            Outcome::Usage
        }
    }
}

enum Report {
    Theta(ThetaRecord),
    Census(CensusRecord),
    Verify(VerifyRecord),
}

impl Report {
    fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        fn go<R: Record>(r: &R, f: Format, out: &mut dyn Write) -> io::Result<()> {
            emit(r, f, out)
        }
        match self {
            Report::Theta(r) => go(r, format, out),
            Report::Census(r) => go(r, format, out),
            Report::Verify(r) => go(r, format, out),
        }
    }
}

type Run = Result<(Report, Outcome), String>;

fn core_err(e: Error) -> String {
    e.to_string()
}

fn theta(cli: &Cli, a: &ThetaArgs, deadline: Deadline) -> Run {
    let method = Method::from(a.method);
    let source = a.order_source.map(OrderSource::from);
    if source.is_some() && method != Method::ProofDecomposition {
        return Err("--order-source only applies to --method proof".into());
    }
    let report = run_theta(
        a.family,
        a.n,
        method,
        source,
        cli.workers as usize,
        deadline,
    )
    .map_err(core_err)?;
    let mut outcome = if report.budget_exhausted {
        Outcome::BudgetExhausted
    } else {
        Outcome::Success
    };
    if a.check && !report.budget_exhausted {
        // The formula is checked against the proof decomposition, everything else against
        // the formula.
        let reference = if method == Method::Formula {
            run_theta(
                a.family,
                a.n,
                Method::ProofDecomposition,
                None,
                1,
                Deadline::none(),
            )
        } else {
            formula_report(a.family, a.n)
        }
        .map_err(core_err)?;
        if reference.counts != report.counts {
            outcome = Outcome::Failure;
        }
    }
    Ok((Report::Theta(ThetaRecord::from(&report)), outcome))
}

fn census(a: &CensusArgs) -> Run {
    let started = Instant::now();
    let ctx = CyclicContext::new(a.n).map_err(core_err)?;
    let s = a.sigma;
    let spec = match a.subgroup {
        SubgroupArg::V => SubgroupSpec::FullV,
        SubgroupArg::V2 => SubgroupSpec::LowerLayer,
        SubgroupArg::Si => SubgroupSpec::S(a.i),
        SubgroupArg::Ssym => SubgroupSpec::Symmetric(s),
        SubgroupArg::Vuni => SubgroupSpec::Unitary(s),
        SubgroupArg::W => SubgroupSpec::W(s),
        SubgroupArg::J => SubgroupSpec::J(s),
        SubgroupArg::H => SubgroupSpec::H(s, a.i),
        SubgroupArg::L => SubgroupSpec::L(s, a.i),
        SubgroupArg::M => {
            let z = a.z.as_deref().ok_or("--subgroup m needs --z")?;
            SubgroupSpec::M(s, parse_elem(&ctx, z).map_err(|e| format!("--z: {e}"))?)
        }
    };
    if a.z.is_some() && a.subgroup != SubgroupArg::M {
        return Err("--z only applies to --subgroup m".into());
    }
    // Beyond the enumeration cap, linearly defined subgroups are still counted by
    // solving their defining system.
    let order = if a.n <= MAX_ENUM_N {
        enumerate(&ctx, &spec).map_err(core_err)?.order()
    } else {
        spec.validate(a.n).map_err(core_err)?;
        match affine_order(&ctx, &spec).map_err(core_err)? {
            Some(o) => o,
            None => {
                return Err(core_err(Error::EnumerationCap {
                    n: a.n,
                    max: MAX_ENUM_N,
                }))
            }
        }
    };
    let elapsed = started.elapsed().as_millis() as u64;
    Ok((
        Report::Census(CensusRecord::from_order(
            spec.to_string(),
            a.n,
            order,
            elapsed,
        )),
        Outcome::Success,
    ))
}

fn verify(cli: &Cli, a: &VerifyArgs, deadline: Deadline) -> Run {
    let cfg = VerifyConfig {
        suite: a.suite,
        n_range: a.n_range.clone(),
        samples: a.samples,
        seed: cli.seed,
        workers: cli.workers as usize,
        deadline,
    };
    let report = match run_verify(&cfg) {
        Ok(r) => r,
        Err(e @ VerifyError::OutOfCap { .. }) => return Err(e.to_string()),
        Err(VerifyError::Core(e)) => return Err(core_err(e)),
    };
    let outcome = if report.budget_exhausted {
        Outcome::BudgetExhausted
    } else if report.pass() {
        Outcome::Success
    } else {
        Outcome::Failure
    };
    Ok((Report::Verify(VerifyRecord::from(&report)), outcome))
}
