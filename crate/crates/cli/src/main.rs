use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use functoria::asymptotics::{dyadic_checkpoints, error_exponent, fit_main, partial_sums, Model};
use functoria::{
    landau_exponent, normalize, perron_balance, read_cache, run_suite, write_cache, CoeffSeq,
    Error, FitReport, FormId, FormSet, LiftKind, LiftSpec, QExpansion, Suite,
};

/// Coefficient engine for lifts of level-one eigenforms.
#[derive(Parser, Debug)]
#[command(name = "functoria", version)]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sieve exact coefficients and write a cache file.
    Sieve {
        #[arg(long)]
        form: FormId,
        #[arg(long)]
        n: usize,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        /// hecke, deligne, corrections, dual-route, basechange or all.
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[command(flatten)]
        source: FormSource,
    },
    /// Partial sums of a lift with a main-term fit.
    Sums {
        #[command(flatten)]
        lift: LiftArgs,
        /// cx, cxlogx, xpoly<d> (or xpoly with --degree).
        #[arg(long, default_value = "cx")]
        model: String,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 1 << 20)]
        xmax: usize,
        /// First dyadic checkpoint.
        #[arg(long, default_value_t = 1 << 10)]
        xmin: usize,
        /// Plot-ready `x,S,main,residual` output.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        source: FormSource,
    },
    /// Coefficients of a lift as CSV.
    Series {
        #[command(flatten)]
        lift: LiftArgs,
        #[arg(long)]
        n: usize,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        source: FormSource,
    },
    /// Exact exponent calculators.
    Exponent {
        /// Landau exponent for degree D and pole order K.
        #[arg(long, num_args = 2, value_names = ["D", "K"], conflicts_with = "perron")]
        landau: Option<Vec<u32>>,
        /// Perron balance for subconvexity exponent THETA (a rational such as 53/342).
        #[arg(long, value_name = "THETA", requires = "moments")]
        perron: Option<String>,
        /// Moment degrees for the Perron balance, comma separated.
        #[arg(long, value_delimiter = ',')]
        moments: Vec<u32>,
    },
}

#[derive(Args, Debug)]
struct FormSource {
    /// Cache files produced by `sieve`; forms without a cache are sieved.
    #[arg(long = "cache")]
    caches: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct LiftArgs {
    /// Lm, RSm, Um, L12, RS12, V12, L11, RS11, V11, wedge, basechange,
    /// basechange-rs or zeta-sym2-sym4.
    #[arg(long)]
    lift: String,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value = "delta12")]
    form: FormId,
    #[arg(long)]
    form2: Option<FormId>,
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long, default_value_t = 1)]
    chi: u64,
}

enum Failure {
    Checks,
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Cache(_) => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn lift_kind(args: &LiftArgs) -> Result<LiftKind, Failure> {
    let m = || args.m.ok_or_else(|| usage(format!("--lift {} needs --m", args.lift)));
    let ell = || args.ell.ok_or_else(|| usage(format!("--lift {} needs --ell", args.lift)));
    Ok(match args.lift.as_str() {
        "Lm" => LiftKind::Lm(m()?),
        "RSm" => LiftKind::RsSymm(m()?),
        "Um" => LiftKind::Um(m()?),
        "L12" => LiftKind::L12,
        "RS12" => LiftKind::Rs12,
        "V12" => LiftKind::V12,
        "L11" => LiftKind::L11,
        "RS11" => LiftKind::Rs11,
        "V11" => LiftKind::V11,
        "wedge" => LiftKind::Wedge,
        "basechange" => LiftKind::BaseChange { ell: ell()?, chi_index: args.chi },
        "basechange-rs" => LiftKind::BaseChangeRs { ell: ell()?, chi_index: args.chi },
        "zeta-sym2-sym4" => LiftKind::ZetaSym2Sym4,
        other => return Err(usage(format!("unknown lift {other:?}"))),
    })
}

fn load_caches(paths: &[PathBuf]) -> Result<Vec<QExpansion>, Failure> {
    paths
        .iter()
        .map(|p| {
            let file = File::open(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            read_cache(BufReader::new(file)).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        })
        .collect()
}

fn expansion(id: FormId, n: usize, cached: &[QExpansion]) -> Result<QExpansion, Failure> {
    match cached.iter().find(|q| q.form_id() == id) {
        Some(q) if q.len() >= n => Ok(q.clone()),
        Some(q) => Err(usage(format!("cache for {id} holds {} coefficients, {n} needed", q.len()))),
        None => Ok(id.sieve(n)?),
    }
}

fn build_series(args: &LiftArgs, n: usize, source: &FormSource) -> Result<CoeffSeq, Failure> {
    let kind = lift_kind(args)?;
    let cached = load_caches(&source.caches)?;
    let form = normalize(&expansion(args.form, n, &cached)?);
    let second = match (kind.needs_second_form(), args.form2) {
        (true, Some(id)) => Some(normalize(&expansion(id, n, &cached)?)),
        (true, None) => return Err(usage(format!("--lift {} needs --form2", args.lift))),
        (false, _) => None,
    };
    Ok(LiftSpec { kind, form: &form, second: second.as_ref(), n }.build()?)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn parse_model(name: &str, degree: Option<u32>) -> Result<Model, Failure> {
    match (name, degree) {
        ("xpoly", Some(d)) => Ok(Model::XPoly(d)),
        ("xpoly", None) => Err(usage("--model xpoly needs --degree")),
        (other, _) => Ok(other.parse()?),
    }
}

#[derive(Serialize)]
struct SumsReport {
    lift: String,
    #[serde(rename = "N")]
    n: usize,
    checkpoints: Vec<usize>,
    fit: FitReport,
}

fn cmd_sums(
    lift: &LiftArgs,
    model: &str,
    degree: Option<u32>,
    xmin: usize,
    xmax: usize,
    csv: Option<&Path>,
    source: &FormSource,
) -> Result<(), Failure> {
    let model = parse_model(model, degree)?;
    if xmin == 0 || xmin >= xmax {
        return Err(usage(format!("need 0 < xmin < xmax, got {xmin} and {xmax}")));
    }
    let series = build_series(lift, xmax, source)?;
    let grid = dyadic_checkpoints(xmin, xmax);
    let sums = partial_sums(&series, &grid)?;
    let fit = fit_main(&sums, model)?;
    let exponent = if sums.len() >= 8 { Some(error_exponent(&sums, |x| fit.main(x))?) } else { None };
    if let Some(path) = csv {
        let mut out = open_output(Some(path))?;
        writeln!(out, "x,S,main,residual")?;
        for (&x, &s) in sums.checkpoints.iter().zip(&sums.sums) {
            let main = fit.main(x as f64);
            writeln!(out, "{x},{s},{main},{}", s - main)?;
        }
        out.flush()?;
    }
    print_json(&SumsReport {
        lift: series.meta().to_string(),
        n: xmax,
        checkpoints: grid,
        fit: FitReport::new(&fit, exponent.as_ref()),
    })
}

fn cmd_exponent(landau: Option<&[u32]>, perron: Option<&str>, moments: &[u32]) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match (landau, perron) {
        (Some([d, k]), None) => writeln!(out, "{}", landau_exponent(*d, *k)?)?,
        (None, Some(theta)) => {
            let theta: BigRational = theta.parse().map_err(|_| usage(format!("cannot parse rational {theta:?}")))?;
            let b = perron_balance(&theta, moments)?;
            writeln!(out, "g = {}", b.g)?;
            writeln!(out, "T = x^{}", b.t_exponent)?;
            writeln!(out, "error = x^{}", b.error_exponent)?;
        }
        _ => return Err(usage("give either --landau D K or --perron THETA --moments M,...")),
    }
    Ok(())
}

fn run(config: RunConfig) -> Result<(), Failure> {
    match config.command {
        Command::Sieve { form, n, out } => {
            let q = form.sieve(n)?;
            let w = open_output(out.as_deref())?;
            write_cache(&q, w)?;
            Ok(())
        }
        Command::Verify { suite, n, source } => {
            let cached = load_caches(&source.caches)?;
            let forms = FormSet::from_expansions(
                expansion(FormId::Delta12, n, &cached)?,
                expansion(FormId::E4Delta16, n, &cached)?,
            )?;
            let reports = run_suite(suite, &forms, n)?;
            print_json(&reports)?;
            if reports.iter().all(|r| r.pass) {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Sums { lift, model, degree, xmax, xmin, csv, source } => {
            cmd_sums(&lift, &model, degree, xmin, xmax, csv.as_deref(), &source)
        }
        Command::Series { lift, n, out, source } => {
            let series = build_series(&lift, n, &source)?;
            series.write_csv(open_output(out.as_deref())?)?;
            Ok(())
        }
        Command::Exponent { landau, perron, moments } => {
            cmd_exponent(landau.as_deref(), perron.as_deref(), &moments)
        }
    }
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
