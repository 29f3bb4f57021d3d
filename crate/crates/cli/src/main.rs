use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qcarlitz::carlitz::{beta_h, beta_hk, beta_number, beta_poly};
use qcarlitz::field::rational::parse_rational;
use qcarlitz::identity::Fault;
use qcarlitz::qcore::{power_sum_t, q_arg_bracket, q_int};
use qcarlitz::{Exec, QArg, RatFunc};
use qcarlitz_cli::report::RatFuncJson;
use qcarlitz_cli::suites::{self, PadicConfig, Suite, SuiteConfig};
use qcarlitz_cli::table::{self, TableSpec, TableTarget};

#[derive(Parser)]
#[command(name = "qcarlitz", version, about = "Exact Carlitz q-Bernoulli computations and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single value in Q(q).
    Compute(ComputeArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Write a table of values.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    #[value(name = "beta")]
    Beta,
    #[value(name = "beta_poly")]
    BetaPoly,
    #[value(name = "beta_h")]
    BetaH,
    #[value(name = "beta_hk")]
    BetaHk,
    #[value(name = "T")]
    T,
    #[value(name = "qint")]
    Qint,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    BetaSign,
}

#[derive(Args)]
struct ComputeArgs {
    target: Target,
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Base exponent: values are taken in `Q = q^d`.
    #[arg(long, default_value_t = 1)]
    d: u32,
    /// Integer argument `x`.
    #[arg(long, conflicts_with = "e")]
    x: Option<u64>,
    /// Argument given by its monomial `Q^x = q^e`.
    #[arg(long)]
    e: Option<u64>,
    #[arg(long)]
    h: Option<i64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    w: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    w_max: Option<u32>,
    #[arg(long)]
    y_max: Option<u64>,
    /// Sample at most this many grid points (seeded, reproducible).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value = "4")]
    q0: String,
    /// Level: sums run over `0 ≤ x < p^N`.
    #[arg(long = "N", default_value_t = 4)]
    level: u32,
    /// Working p-adic precision.
    #[arg(long = "K", default_value_t = 8)]
    precision: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, env = "QCARLITZ_JOBS")]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Args)]
struct TableArgs {
    target: TableTarget,
    #[arg(long, default_value_t = 0)]
    n_min: u32,
    #[arg(long, default_value_t = 8)]
    n_max: u32,
    #[arg(long, default_value_t = 1)]
    d: u32,
    /// First index of `T_{n,m}`; rows run over `m` and `w`.
    #[arg(long, default_value_t = 1)]
    t_n: u32,
    #[arg(long, default_value_t = 3)]
    w_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn argument(a: &ComputeArgs) -> anyhow::Result<QArg> {
    match (a.x, a.e) {
        (Some(x), _) => Ok(QArg::integer(x, a.d)),
        (None, Some(e)) => Ok(QArg::new(e, a.d)?),
        (None, None) => bail!("this target needs --x or --e"),
    }
}

fn compute(a: &ComputeArgs) -> anyhow::Result<RatFunc> {
    let need = |v: Option<i64>, name: &str| v.with_context(|| format!("this target needs --{name}"));
    Ok(match a.target {
        Target::Beta => beta_number(a.n, a.d),
        Target::BetaPoly => beta_poly(a.n, a.d, argument(a)?)?,
        Target::BetaH => beta_h(a.n, need(a.h, "h")?, a.d, argument(a)?)?,
        Target::BetaHk => {
            let k = need(a.k.map(i64::from), "k")? as u32;
            beta_hk(a.n, need(a.h, "h")?, k, a.d, argument(a)?)?
        }
        Target::T => power_sum_t(a.n, a.m, a.w, a.d),
        Target::Qint => match (a.x, a.e) {
            (Some(x), _) => q_int(x, a.d),
            (None, Some(e)) => q_arg_bracket(QArg::new(e, a.d)?),
            (None, None) => bail!("qint needs --x or --e"),
        },
    })
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn print_out(body: &str) -> anyhow::Result<()> {
    match std::io::stdout().lock().write_all(body.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("cannot write {}", path.display())),
        None => print_out(body),
    }
}

fn run_compute(a: ComputeArgs) -> anyhow::Result<ExitCode> {
    let r = compute(&a)?;
    let json = RatFuncJson::from(&r);
    let body = match a.format {
        Format::Json => serde_json::to_string_pretty(&json)? + "\n",
        _ => format!(
            "{r}\nnum: {}  [{}]\nden: {}  [{}]\n",
            r.num(),
            json.num.join(", "),
            r.den(),
            json.den.join(", ")
        ),
    };
    print_out(&body)?;
    Ok(ExitCode::SUCCESS)
}

fn executor(jobs: Option<usize>) -> anyhow::Result<Exec> {
    match jobs {
        Some(0) => bail!("--jobs must be positive"),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            // the global pool can only be set once per process
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(Exec::Parallel)
        }
        _ => Ok(Exec::default()),
    }
}

fn run_verify(a: VerifyArgs) -> anyhow::Result<ExitCode> {
    let cfg = SuiteConfig {
        suite: a.suite,
        n_max: a.n_max,
        w_max: a.w_max,
        y_max: a.y_max,
        samples: a.samples,
        seed: a.seed,
        padic: PadicConfig { p: a.p, q0: parse_rational(&a.q0)?, level: a.level, precision: a.precision },
        exec: executor(a.jobs)?,
        fault: a.inject_fault.map(|FaultArg::BetaSign| Fault::BetaSign),
    };
    let report = suites::run(&cfg)?;
    let body = match a.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
        Format::Text => report.to_text(),
    };
    emit(&a.out, &body)?;
    let s = &report.summary;
    if a.out.is_some() {
        print_out(&format!("{}: {} total, {} passed, {} failed\n", report.suite, s.total, s.passed, s.failed))?;
    }
    match report.first_failure() {
        None => Ok(ExitCode::SUCCESS),
        Some(r) => {
            eprintln!("first counterexample: {}", serde_json::to_string(r)?);
            Ok(ExitCode::from(1))
        }
    }
}

fn run_table(a: TableArgs) -> anyhow::Result<ExitCode> {
    let spec = TableSpec {
        target: a.target,
        n_min: a.n_min,
        n_max: a.n_max,
        d: a.d,
        t_n: a.t_n,
        w_max: a.w_max,
    };
    let t = table::build(&spec);
    let body = match a.format {
        Format::Csv => t.to_csv()?,
        Format::Json => t.to_json(),
        Format::Text => t.to_text(),
    };
    emit(&a.out, &body)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => run_compute(a),
        Command::Verify(a) => run_verify(a),
        Command::Table(a) => run_table(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
