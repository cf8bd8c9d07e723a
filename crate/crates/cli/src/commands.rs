use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use abcforge_core::arith::Factorizer;
use abcforge_core::bounds::{self, BoundError, BoundReport};
use abcforge_core::reduce4::{self, ReduceError};
use abcforge_core::search::record::{fmt_real, RecordFormat};
use abcforge_core::search::{
    self, FitBound, ScanCheckpoint, ScanJob, ScanMode, ScanOutcome, STAT_KAPPA_ABCD,
    STAT_KAPPA_THM1, STAT_KAPPA_THM1PRELIM, STAT_MAX_QUALITY,
};
use abcforge_core::{AbcTriple, AbcdQuadruple};

use crate::{AbcBound, Cli, Command, FitKind, OutputFormat, ReportFormat, ScanArgs, TripleMode};

pub const EXIT_FAILS: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_HYPOTHESIS: u8 = 3;

/// Outcome of a command that ran to completion.
pub enum Status {
    Ok,
    BoundFails,
    Hypothesis,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::BoundFails => ExitCode::from(EXIT_FAILS),
            Status::Hypothesis => ExitCode::from(EXIT_HYPOTHESIS),
        }
    }
}

pub fn run(cli: Cli) -> Result<Status> {
    let bits = cli.factor_bits;
    match cli.command {
        Command::Radical { n } => {
            let f = Factorizer::with_max_bits(bits).factorize(&parse_positive(&n, bits)?)?;
            println!("{}", f.radical());
            Ok(Status::Ok)
        }
        Command::Factor { n } => {
            let f = Factorizer::with_max_bits(bits).factorize(&parse_positive(&n, bits)?)?;
            println!("{f}");
            Ok(Status::Ok)
        }
        Command::VerifyAbc {
            a,
            b,
            c,
            bound,
            tau,
            kappa,
            eta,
            epsilon,
            kappa_eps,
            format,
        } => {
            let t = parse_triple(&a, &b, &c, bits)?;
            let report = match bound {
                AbcBound::Thm1 => bounds::thm1_verify(&t, tau, kappa),
                AbcBound::Thm1prelim => bounds::thm1prelim_verify(&t, kappa),
                AbcBound::Thm0 => bounds::thm0_bound(&t, eta, kappa),
                AbcBound::Thm0earlier => bounds::thm0earlier_bound(&t, eta, epsilon, kappa_eps),
            };
            finish(report, format)
        }
        Command::Lfl { a, b, c, k, format } => {
            let t = parse_triple(&a, &b, &c, bits)?;
            finish(bounds::lfl_check(&t, k), format)
        }
        Command::VerifyAbcd {
            x1,
            x2,
            x3,
            x4,
            tau,
            kappa,
            via_reduction,
            format,
        } => {
            let q = AbcdQuadruple::new([x1, x2, x3, x4])
                .with_context(|| format!("invalid quadruple ({x1}, {x2}, {x3}, {x4})"))?;
            if via_reduction {
                match reduce4::verify_abcd_via_reduction(&q, tau, kappa) {
                    Err(ReduceError::Bound(e)) => finish(Err(e), format),
                    other => finish(Ok(other?), format),
                }
            } else {
                finish(bounds::abcd_verify(&q, tau, kappa), format)
            }
        }
        Command::NConj {
            xs,
            m,
            strong,
            format,
        } => {
            let xs = xs
                .iter()
                .map(|s| BigInt::from_str(s).with_context(|| format!("not an integer: {s:?}")))
                .collect::<Result<Vec<_>>>()?;
            finish(bounds::n_conjecture_check(&xs, m, strong), format)
        }
        Command::OmegaFit { rmax } => {
            if rmax < 2 {
                bail!("rmax must be at least 2");
            }
            println!("{}", fmt_real(bounds::omega_bound_fit(rmax)));
            Ok(Status::Ok)
        }
        Command::Scan {
            cmax,
            mode,
            smooth_bound,
            common,
        } => {
            let mode = match mode {
                TripleMode::Exhaustive => ScanMode::Exhaustive3,
                TripleMode::Smooth => ScanMode::Smooth3,
            };
            if cmax < 2 {
                bail!("cmax must be at least 2");
            }
            let mut job = scan_job(mode, cmax, &common)?;
            job.smooth_bound = smooth_bound;
            scan(&job, &common)
        }
        Command::Scan4 { hmax, common } => {
            if hmax < 1 {
                bail!("hmax must be at least 1");
            }
            let job = scan_job(ScanMode::Exhaustive4, hmax, &common)?;
            scan(&job, &common)
        }
        Command::Fit {
            bound,
            cmax,
            hmax,
            tau,
        } => fit(bound, cmax, hmax, tau),
    }
}

fn parse_natural(s: &str, max_bits: u64) -> Result<BigUint> {
    let n =
        BigUint::from_str(s.trim()).with_context(|| format!("not a nonnegative integer: {s:?}"))?;
    if n.bits() > max_bits {
        bail!("{s} has {} bits, above the limit of {max_bits}", n.bits());
    }
    Ok(n)
}

fn parse_positive(s: &str, max_bits: u64) -> Result<BigUint> {
    let n = parse_natural(s, max_bits)?;
    if n == BigUint::ZERO {
        bail!("n must be positive");
    }
    Ok(n)
}

fn parse_triple(a: &str, b: &str, c: &str, max_bits: u64) -> Result<AbcTriple> {
    let (a, b, c) = (
        parse_natural(a, max_bits)?,
        parse_natural(b, max_bits)?,
        parse_natural(c, max_bits)?,
    );
    AbcTriple::new(a.clone(), b.clone(), c.clone())
        .with_context(|| format!("invalid triple ({a}, {b}, {c})"))
}

#[derive(Serialize)]
struct ReportJson<'a> {
    name: &'a str,
    lhs: String,
    rhs: String,
    params: BTreeMap<&'a str, String>,
    holds: bool,
}

/// Prints a report and maps the verdict to a status. A hypothesis failure
/// is reported on stderr.
fn finish(report: Result<BoundReport, BoundError>, format: ReportFormat) -> Result<Status> {
    let report = match report {
        Ok(r) => r,
        Err(e) if e.is_hypothesis() => {
            eprintln!("{e}");
            return Ok(Status::Hypothesis);
        }
        Err(e) => return Err(e.into()),
    };
    match format {
        ReportFormat::Human => {
            println!("bound  {}", report.name);
            println!("lhs    {}", fmt_real(report.lhs));
            println!("rhs    {}", fmt_real(report.rhs));
            for (k, v) in &report.params {
                println!("{k:<6} {}", fmt_real(*v));
            }
            println!("holds  {}", report.holds);
        }
        ReportFormat::Json => {
            let json = ReportJson {
                name: report.name.as_str(),
                lhs: fmt_real(report.lhs),
                rhs: fmt_real(report.rhs),
                params: report
                    .params
                    .iter()
                    .map(|(k, v)| (k.as_str(), fmt_real(*v)))
                    .collect(),
                holds: report.holds,
            };
            println!("{}", serde_json::to_string(&json)?);
        }
    }
    Ok(if report.holds {
        Status::Ok
    } else {
        Status::BoundFails
    })
}

fn scan_job(mode: ScanMode, limit: u64, args: &ScanArgs) -> Result<ScanJob> {
    let workers = match args.workers {
        Some(0) => bail!("workers must be positive"),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if args.stop_after_batches.is_some() && args.checkpoint.is_none() {
        bail!("--stop-after-batches requires --checkpoint");
    }
    Ok(ScanJob {
        format: match args.format {
            OutputFormat::Csv => RecordFormat::Csv,
            OutputFormat::Jsonl => RecordFormat::Jsonl,
            OutputFormat::Human => RecordFormat::Human,
        },
        workers,
        batch: args.batch,
        ..ScanJob::new(mode, limit, args.tau)
    })
}

fn scan(job: &ScanJob, args: &ScanArgs) -> Result<Status> {
    match &args.out {
        None => {
            let stdout = io::stdout();
            let mut out = io::BufWriter::new(stdout.lock());
            let summary = search::scan_to_writer(job, &mut out)?;
            out.flush()?;
            print_summary(&mut io::stderr(), &summary, false)?;
        }
        Some(path) => {
            let outcome = search::run_scan(
                job,
                path,
                args.checkpoint.as_deref(),
                args.resume,
                args.stop_after_batches,
            )?;
            let stopped = matches!(outcome, ScanOutcome::Stopped(_));
            print_summary(&mut io::stdout(), outcome.summary(), stopped)?;
        }
    }
    Ok(Status::Ok)
}

fn print_summary(w: &mut impl Write, s: &ScanCheckpoint, stopped: bool) -> io::Result<()> {
    let mode = match s.mode {
        ScanMode::Exhaustive3 => "exhaustive",
        ScanMode::Smooth3 => "smooth",
        ScanMode::Exhaustive4 => "quadruples",
    };
    let var = if s.mode == ScanMode::Exhaustive4 {
        "H"
    } else {
        "c"
    };
    writeln!(
        w,
        "mode {mode}  range {var} in [{}, {}]",
        s.range_lo,
        s.range_hi - 1
    )?;
    if stopped {
        writeln!(w, "stopped at {var} = {}", s.cursor)?;
    }
    writeln!(w, "records {}", s.count)?;
    for stat in [
        STAT_MAX_QUALITY,
        STAT_KAPPA_THM1PRELIM,
        STAT_KAPPA_THM1,
        STAT_KAPPA_ABCD,
    ] {
        if let Some(r) = s.extremal(stat) {
            writeln!(w, "{stat} {} at {}", fmt_real(r.value), r.instance)?;
        }
    }
    Ok(())
}

fn fit(bound: FitKind, cmax: Option<u64>, hmax: Option<u64>, tau: f64) -> Result<Status> {
    let (fit, range) = match (bound, cmax, hmax) {
        (FitKind::Abcd, _, Some(h)) => {
            let qs = search::scan_quadruples(h, tau)?.map(|(q, _)| q);
            (
                search::kappa_fit(qs, FitBound::Abcd, tau)?,
                format!("H <= {h}"),
            )
        }
        (FitKind::Thm1prelim | FitKind::Thm1, Some(c), _) => {
            let fb = if bound == FitKind::Thm1 {
                FitBound::Thm1
            } else {
                FitBound::Thm1prelim
            };
            let ts = search::scan_exhaustive(c, tau)?.map(|(t, _)| t);
            (search::kappa_fit(ts, fb, tau)?, format!("c <= {c}"))
        }
        (FitKind::Abcd, _, None) => bail!("--bound abcd needs --hmax"),
        _ => bail!("--bound {bound:?} needs --cmax"),
    };
    println!("kappa {}", fmt_real(fit.kappa));
    println!("argmax {}", fit.argmax);
    println!("range {range}  tau {}", fmt_real(tau));
    println!("admitted {}  skipped {}", fit.admitted, fit.skipped);
    Ok(Status::Ok)
}
