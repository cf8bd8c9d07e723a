use std::collections::HashSet;

use num_integer::Integer;
use proptest::prelude::*;

use super::*;

fn triples(c_max: u64) -> Vec<(u64, u64, u64)> {
    scan_exhaustive(c_max, 0.5)
        .unwrap()
        .map(|(t, _)| (small(t.a()), small(t.b()), small(t.c())))
        .collect()
}

fn small(n: &BigUint) -> u64 {
    u64::try_from(n).unwrap()
}

fn naive_rad(mut n: u64) -> u64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            r *= p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        r *= n;
    }
    r
}

#[test]
fn exhaustive_examples() {
    assert_eq!(triples(2), vec![(1, 1, 2)]);
    assert_eq!(
        triples(5),
        vec![(1, 1, 2), (1, 2, 3), (1, 3, 4), (1, 4, 5), (2, 3, 5)]
    );
}

#[test]
fn exhaustive_matches_double_loop() {
    let mut expected = Vec::new();
    for c in 2..=500u64 {
        for a in 1..c {
            let b = c - a;
            if a <= b && a.gcd(&b) == 1 {
                expected.push((a, b, c));
            }
        }
    }
    assert_eq!(triples(500), expected);
}

#[test]
fn exhaustive_radicals_and_flags() {
    for (t, passes) in scan_exhaustive(400, 0.5).unwrap() {
        let (a, b, c) = (small(t.a()), small(t.b()), small(t.c()));
        assert_eq!(small(t.rad_abc()), naive_rad(a * b * c));
        assert_eq!(small(t.rad_bc()), naive_rad(b * c));
        assert_eq!(passes, bounds::condition_holds(t.a(), t.c(), 0.5).unwrap());
        assert!(t.check_invariants());
    }
}

#[test]
fn radical_table_matches_naive() {
    let table = RadicalTable::new(20_000).unwrap();
    assert_eq!(table.limit(), 20_000);
    for n in 1..=20_000 {
        assert_eq!(table.get(n), naive_rad(n), "n = {n}");
    }
    assert!(matches!(
        RadicalTable::new(MAX_TABLE_LIMIT + 1),
        Err(SearchError::RangeTooLarge(_))
    ));
}

fn smooth_triples(b: u64, c_max: u64) -> Vec<(u64, u64, u64)> {
    scan_smooth(b, c_max)
        .unwrap()
        .map(|t| (small(t.a()), small(t.b()), small(t.c())))
        .collect()
}

#[test]
fn smooth_examples() {
    assert_eq!(smooth_triples(2, 2), vec![(1, 1, 2)]);
    assert_eq!(smooth_triples(2, 4), vec![(1, 1, 2), (1, 3, 4)]);
    assert!(smooth_triples(3, 10).contains(&(1, 8, 9)));
}

#[test]
fn smooth_is_subset_of_exhaustive() {
    let all: HashSet<(u64, u64, u64)> = triples(1000).into_iter().collect();
    for b in 2..=5 {
        let found = smooth_triples(b, 1000);
        let unique: HashSet<_> = found.iter().copied().collect();
        assert_eq!(unique.len(), found.len(), "duplicates for B = {b}");
        for t in &found {
            assert!(all.contains(t), "{t:?}");
            let smooth = |n: u64| naive_largest_prime(n) <= b;
            assert!(smooth(t.2) && (smooth(t.0) || smooth(t.1)), "{t:?}");
        }
    }
}

fn naive_largest_prime(mut n: u64) -> u64 {
    let mut largest = 1;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            largest = p;
            n /= p;
        }
        p += 1;
    }
    largest.max(if n > 1 { n } else { 1 })
}

#[test]
fn smooth_finds_every_smooth_pair() {
    // Every coprime (a, c) with both 5-smooth appears, in some order.
    let found: HashSet<_> = smooth_triples(5, 600).into_iter().collect();
    for c in 2..=600u64 {
        if naive_largest_prime(c) > 5 {
            continue;
        }
        for a in 1..c {
            if naive_largest_prime(a) <= 5 && a.gcd(&c) == 1 {
                let key = (a.min(c - a), a.max(c - a), c);
                assert!(found.contains(&key), "{key:?}");
            }
        }
    }
}

/// Canonical forms from a plain loop over all four entries.
fn brute_quadruples(h_max: i64) -> Vec<[i64; 4]> {
    let mut seen = HashSet::new();
    let range: Vec<i64> = (-h_max..=h_max).filter(|&x| x != 0).collect();
    for &a in &range {
        for &b in &range {
            for &c in &range {
                let d = -(a + b + c);
                if d == 0 || d.abs() > h_max {
                    continue;
                }
                let xs = [a, b, c, d];
                let coprime = (0..4).all(|i| (i + 1..4).all(|j| xs[i].gcd(&xs[j]) == 1));
                if coprime {
                    seen.insert(canonical_form(xs));
                }
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

fn quads(h_max: u64) -> Vec<[i64; 4]> {
    scan_quadruples(h_max, 0.5)
        .unwrap()
        .map(|(q, _)| q.xs())
        .collect()
}

#[test]
fn quadruple_examples() {
    assert_eq!(quads(2), vec![[1, 1, -1, -1]]);
    assert_eq!(quads(3), vec![[1, 1, -1, -1], [3, -1, -1, -1]]);
}

#[test]
fn quadruples_match_brute_force() {
    let mut got = quads(40);
    let unique: HashSet<_> = got.iter().copied().collect();
    assert_eq!(unique.len(), got.len(), "duplicate canonical forms");
    got.sort();
    assert_eq!(got, brute_quadruples(40));
}

#[test]
fn quadruples_are_canonical_and_flagged() {
    for (q, passes) in scan_quadruples(60, 0.5).unwrap() {
        assert!(q.is_canonical(), "{q}");
        assert_eq!(passes, bounds::abcd_hypothesis(&q, 0.5));
    }
}

#[test]
fn kappa_fit_examples() {
    let t = AbcTriple::from_u64(1, 8, 9).unwrap();
    let fit = kappa_fit([t], FitBound::Thm1prelim, 0.5).unwrap();
    let expected = (9f64.ln().ln()) / 6f64.ln();
    assert!((fit.kappa - expected).abs() < 1e-12);
    assert!((fit.kappa - 0.439_341_899_2).abs() < 1e-9);
    assert_eq!(fit.argmax, "(1, 8, 9)");

    // lhs = log 2 / 1 < 1 contributes zero.
    let t = AbcTriple::from_u64(1, 1, 2).unwrap();
    assert_eq!(
        kappa_fit([t], FitBound::Thm1prelim, 0.5).unwrap().kappa,
        0.0
    );
}

#[test]
fn kappa_fit_errors() {
    let none: Vec<AbcTriple> = Vec::new();
    assert!(matches!(
        kappa_fit(none, FitBound::Thm1prelim, 0.5),
        Err(SearchError::EmptyInstances)
    ));
    // (4, 5, 9) fails the size condition, so nothing is admitted.
    let t = AbcTriple::from_u64(4, 5, 9).unwrap();
    assert!(matches!(
        kappa_fit([t.clone()], FitBound::Thm1, 0.5),
        Err(SearchError::EmptyInstances)
    ));
    assert!(matches!(
        kappa_fit([t], FitBound::Abcd, 0.5),
        Err(SearchError::WrongInstanceKind(FitBound::Abcd))
    ));
}

#[test]
fn kappa_fit_round_trip() {
    let ts: Vec<AbcTriple> = scan_exhaustive(300, 0.5).unwrap().map(|(t, _)| t).collect();
    let fit = kappa_fit(ts.iter().cloned(), FitBound::Thm1prelim, 0.5).unwrap();
    let up = fit.kappa * (1.0 + 1e-9);
    assert!(ts
        .iter()
        .all(|t| bounds::thm1prelim_verify(t, up).unwrap().holds));
    let down = fit.kappa * (1.0 - 1e-6);
    assert!(ts
        .iter()
        .any(|t| !bounds::thm1prelim_verify(t, down).unwrap().holds));

    let qs: Vec<AbcdQuadruple> = scan_quadruples(80, 0.5).unwrap().map(|(q, _)| q).collect();
    let fit = kappa_fit(qs.iter().cloned(), FitBound::Abcd, 0.5).unwrap();
    assert!(fit.skipped > 0);
    let up = fit.kappa * (1.0 + 1e-9);
    for q in &qs {
        match bounds::abcd_verify(q, 0.5, up) {
            Ok(r) => assert!(r.holds, "{q}"),
            Err(e) => assert!(e.is_hypothesis()),
        }
    }
}

proptest! {
    #[test]
    fn scanners_reject_bad_tau(tau in prop_oneof![Just(0.0), Just(-1.0), Just(f64::NAN)]) {
        prop_assert!(scan_exhaustive(10, tau).is_err());
        prop_assert!(scan_quadruples(10, tau).is_err());
    }

    #[test]
    fn exhaustive_block_is_ordered_and_valid(c in 2u64..3000) {
        let table = RadicalTable::new(c).unwrap();
        let block = exhaustive_block(&table, c, 0.5);
        let mut last = 0;
        for (t, _) in &block {
            let a = small(t.a());
            prop_assert!(a > last && 2 * a <= c);
            prop_assert_eq!(small(t.c()), c);
            last = a;
        }
        let phi = (1..=c).filter(|a| a.gcd(&c) == 1).count() as u64;
        // Coprime a <= c/2 is half of phi(c), except c = 2.
        prop_assert_eq!(block.len() as u64, if c == 2 { 1 } else { phi / 2 });
    }
}
