//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every tolerance is pinned below.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use abcforge_core::arith::{self, Factorizer};
use abcforge_core::bounds;
use abcforge_core::logfun::growth_fn;
use abcforge_core::reduce4::{self, CaseTag};
use abcforge_core::search::{self, FitBound};
use abcforge_core::AbcTriple;

const ORACLE_LIMIT: u64 = 1_000_000;
const IDENTITY_C_MAX: u64 = 5_000;
const LFL_REL_TOL: f64 = 1e-12;
const AMGM_FACTOR: f64 = 1.0 + 1e-9;
const GROWTH_SAMPLES: usize = 1_000;
const GROWTH_FACTOR: f64 = 1.0 + 1e-9;
const GROWTH_SEED: u64 = 0x5eed_ab0c;
const OMEGA_R_MAX: u64 = 30_030;
const KAPPA_C_MAX: u64 = 1_000;
const KAPPA_UP: f64 = 1.0 + 1e-9;
const KAPPA_DOWN: f64 = 1.0 - 1e-6;
const REDUCTION_H_MAX: u64 = 300;
const REDUCTION_TAU: f64 = 0.5;
const DETERMINISM_C_MAX: &str = "500";
const KNOWN_QUALITY: f64 = 1.62991;
const KNOWN_QUALITY_TOL: f64 = 1e-4;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Factorization by plain trial division.
fn naive_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn criterion_1() -> Outcome {
    let factorizer = Factorizer::default();
    let mut mismatches = Vec::new();
    for n in 1..=ORACLE_LIMIT {
        let expected = naive_factor(n);
        let rad: u64 = expected.iter().map(|&(p, _)| p).product();
        let big = factorizer
            .factorize(&BigUint::from(n))
            .map_err(|e| e.to_string())?;
        let got: Vec<(u64, u32)> = big
            .factors()
            .iter()
            .map(|(p, e)| (u64::try_from(p).unwrap(), *e))
            .collect();
        let ok = got == expected
            && arith::factorize_u64(n).ok() == Some(expected.clone())
            && arith::radical_u64(n).ok() == Some(rad)
            && big.radical() == BigUint::from(rad)
            && arith::omega(&BigUint::from(n)).ok() == Some(expected.len());
        if !ok && mismatches.len() < 5 {
            mismatches.push(n);
        }
    }
    check(
        mismatches.is_empty(),
        format!("n <= {ORACLE_LIMIT}, mismatches {mismatches:?}"),
    )
}

fn criterion_2() -> Outcome {
    let failures: Vec<String> = (2..=IDENTITY_C_MAX)
        .into_par_iter()
        .flat_map_iter(|c| {
            (1..=c / 2)
                .filter(move |a| a.gcd(&c) == 1)
                .filter_map(move |a| {
                    let b = c - a;
                    let t = AbcTriple::from_u64(a, b, c).ok()?;
                    let report = bounds::lfl_check(&t, bounds::DEFAULT_K).ok()?;
                    let expected = (c as f64).ln() - (a as f64).ln();
                    let rel = (report.lhs - expected).abs() / expected;
                    let mut primes = arith::distinct_primes_u64(b).ok()?;
                    primes.extend(arith::distinct_primes_u64(c).ok()?);
                    let primes: Vec<BigUint> = primes.into_iter().map(BigUint::from).collect();
                    let (left, right) = bounds::amgm_chain(&primes, bounds::DEFAULT_K).ok()?;
                    (rel > LFL_REL_TOL || left > right * AMGM_FACTOR)
                        .then(|| format!("({a}, {b}, {c}) rel {rel:e} amgm {left} vs {right}"))
                })
        })
        .collect();
    let count: u64 = (2..=IDENTITY_C_MAX)
        .map(|c| (1..=c / 2).filter(|a| a.gcd(&c) == 1).count() as u64)
        .sum();
    check(
        failures.is_empty(),
        format!(
            "{count} triples with c <= {IDENTITY_C_MAX}, failures {:?}",
            &failures[..failures.len().min(3)]
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(GROWTH_SEED);
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for _ in 0..GROWTH_SAMPLES {
        let k = rng.random_range(0.1..100.0);
        let r = 10f64.powf(rng.random_range(0.31..60.0));
        let t_max = k * r.ln() / std::f64::consts::E;
        let (mut t1, mut t2) = (rng.random_range(0.0..t_max), rng.random_range(0.0..t_max));
        if t1 > t2 {
            std::mem::swap(&mut t1, &mut t2);
        }
        if t1 == 0.0 {
            continue;
        }
        let g1 = growth_fn(k, r, t1).map_err(|e| e.to_string())?;
        let g2 = growth_fn(k, r, t2).map_err(|e| e.to_string())?;
        worst = worst.max(g1 / g2);
        if g1 > g2 * GROWTH_FACTOR {
            bad.push((k, r, t1, t2));
        }
    }
    check(
        bad.is_empty(),
        format!("{GROWTH_SAMPLES} samples, max g(t1)/g(t2) = {worst}, violations {bad:?}"),
    )
}

fn criterion_4() -> Outcome {
    // Independent scan: trial-division factorization, own starred log.
    let log2_star = |x: f64| {
        let l = x.ln();
        if l > 0.0 && l.ln() >= 1.0 {
            l.ln()
        } else {
            1.0
        }
    };
    let brute = (2..=OMEGA_R_MAX)
        .filter_map(|r| {
            let f = naive_factor(r);
            f.iter()
                .all(|&(_, e)| e == 1)
                .then(|| f.len() as f64 * log2_star(r as f64) / (r as f64).ln())
        })
        .fold(0.0, f64::max);
    let fitted = bounds::omega_bound_fit(OMEGA_R_MAX);
    check(
        fitted == brute && fitted > 1.0,
        format!("M = {fitted:.17} vs brute force {brute:.17}"),
    )
}

fn criterion_5() -> Outcome {
    let triples: Vec<AbcTriple> = search::scan_exhaustive(KAPPA_C_MAX, 0.5)
        .map_err(|e| e.to_string())?
        .map(|(t, _)| t)
        .collect();
    let fit = search::kappa_fit(triples.iter().cloned(), FitBound::Thm1prelim, 0.5)
        .map_err(|e| e.to_string())?;
    let holds = |kappa: f64, t: &AbcTriple| bounds::thm1prelim_verify(t, kappa).map(|r| r.holds);
    let up_fail = triples
        .iter()
        .filter(|t| !holds(fit.kappa * KAPPA_UP, t).unwrap_or(false))
        .count();
    let down_fail = triples
        .iter()
        .filter(|t| !holds(fit.kappa * KAPPA_DOWN, t).unwrap_or(true))
        .count();
    check(
        fit.kappa.is_finite() && up_fail == 0 && down_fail >= 1,
        format!(
            "kappa* = {:.17} at {} over {} triples; failures at kappa*(1+1e-9): {up_fail}, at kappa*(1-1e-6): {down_fail}",
            fit.kappa,
            fit.argmax,
            triples.len()
        ),
    )
}

fn naive_rad(n: u64) -> u64 {
    naive_factor(n).iter().map(|&(p, _)| p).product()
}

fn criterion_6() -> Outcome {
    let (mut reduced, mut passing, mut cases) = (0u64, 0u64, [0u64; 2]);
    let mut errors = Vec::new();
    for (q, passes) in
        search::scan_quadruples(REDUCTION_H_MAX, REDUCTION_TAU).map_err(|e| e.to_string())?
    {
        let xs = q.xs();
        let mp = q.min_pair();
        let rest: Vec<usize> = (0..4).filter(|&k| k != mp.i && k != mp.j).collect();
        if (xs[mp.i] + xs[mp.j]).abs() != (xs[rest[0]] + xs[rest[1]]).abs() {
            errors.push(format!("{q}: pair identity"));
        }
        if mp.sum == 0 {
            continue;
        }
        let r = match reduce4::reduce_to_abc(&q) {
            Ok(r) => r,
            Err(e) => {
                errors.push(format!("{q}: {e}"));
                continue;
            }
        };
        reduced += 1;
        cases[matches!(r.case_tag, CaseTag::HIsX3) as usize] += 1;
        let t = &r.triple;
        let [a, b, c] = [t.a(), t.b(), t.c()].map(|n| u64::try_from(n).unwrap());
        let full_rad: u64 = xs.iter().map(|x| naive_rad(x.unsigned_abs())).product();
        let valid = a > 0
            && b > 0
            && a + b == c
            && a.gcd(&b) == 1
            && c == q.height()
            && full_rad % naive_rad(b * c) == 0;
        if !valid {
            errors.push(format!("{q}: reduced to invalid {t}"));
        }
        if passes {
            passing += 1;
            if !bounds::condition_holds(t.a(), t.c(), REDUCTION_TAU).unwrap_or(false) {
                errors.push(format!("{q}: transfer fails for {t}"));
            }
        }
    }
    check(
        errors.is_empty(),
        format!(
            "{reduced} reduced, {passing} pass the hypothesis, cases H=|x1|: {} H=|x3|: {}, errors {:?}",
            cases[0],
            cases[1],
            &errors[..errors.len().min(3)]
        ),
    )
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_abcforge"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if status.status.success() {
        Ok(())
    } else {
        Err(format!(
            "abcforge {args:?} failed: {}",
            String::from_utf8_lossy(&status.stderr)
        ))
    }
}

fn scan_args<'a>(out: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["scan", "--cmax", DETERMINISM_C_MAX, "--out", out];
    v.extend_from_slice(extra);
    v
}

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let read = |p: &str| std::fs::read(Path::new(p)).map_err(|e| e.to_string());

    let (first, second) = (path("first.csv"), path("second.csv"));
    run_cli(&scan_args(&first, &["--workers", "1"]))?;
    run_cli(&scan_args(&second, &["--workers", "4", "--batch", "5"]))?;
    let reference = read(&first)?;
    if reference != read(&second)? {
        return Err("two runs differ".into());
    }

    // Interrupt after k batches of one c value each, then resume.
    let mut resumed = 0;
    for k in ["1", "37", "250", "498"] {
        let (out, ckpt) = (
            path(&format!("part{k}.csv")),
            path(&format!("part{k}.ckpt")),
        );
        let common = ["--batch", "1", "--checkpoint", ckpt.as_str(), "--resume"];
        let mut stop = common.to_vec();
        stop.extend(["--stop-after-batches", k]);
        run_cli(&scan_args(&out, &stop))?;
        run_cli(&scan_args(&out, &common))?;
        if read(&out)? != reference {
            return Err(format!("resume after {k} batches differs"));
        }
        resumed += 1;
    }
    check(
        true,
        format!(
            "{} bytes identical across runs and {resumed} interrupted-then-resumed runs",
            reference.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let b = BigUint::from(3u32).pow(10) * 109u32;
    let c = BigUint::from(23u32).pow(5);
    let t = AbcTriple::new(BigUint::from(2u32), b, c).map_err(|e| e.to_string())?;
    let q = t.quality();
    check(
        (q - KNOWN_QUALITY).abs() <= KNOWN_QUALITY_TOL,
        format!("quality {t} = {q:.10}, rad(abc) = {}", t.rad_abc()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("oracle equivalence", criterion_1),
        ("proof identities", criterion_2),
        ("growth monotonicity", criterion_3),
        ("omega-bound fit", criterion_4),
        ("kappa self-consistency", criterion_5),
        ("reduction transfer", criterion_6),
        ("determinism and resume", criterion_7),
        ("known triple quality", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {} ({name}, {secs:.1} s): {detail}", i + 1);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
