//! Acceptance run: one line per criterion, PASS or FAIL, with timing.
//!
//! Criterion 9 is known to fail as stated (two table equations have small
//! solutions that meet the printed valuation filter). The run still exits
//! zero when that failure is exactly the analysed one; any other failure,
//! or a change in criterion 9's counterexamples, exits nonzero.

use std::time::{Duration, Instant};

use hlverify::diophantine::{nagell_solutions, thue_bounded, thue_table_check, upto7_solutions};
use hlverify::gpoly::{build_coefficients, no_factor_of_degree, GPolySpec};
use hlverify::irreducibility::{
    exclusion_criterion, full_exclusion_scan, newton_polygon, ExclusionStatus, NewtonPolygon,
};
use hlverify::primes::{
    check_bound, prime_in_interval, ChebyshevIndex, EstimateKind, EstimateProfile, PrimeTable, Verdict,
};
use hlverify::smoothness::{
    check_e0, check_e3, check_e4, cor24_search, default_big_d, deletion_survivors, exceptional_search, factor_window,
    find_k0, lehmer_x_search, lehmer_y_search, spacing_condition, survivor_product_bound_check,
    survivor_product_lower_bound, InequalityContext, ProgressionWindow,
};
use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
}

use Outcome::{Fail, Pass};

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
    /// For a criterion known to fail: recognizes the analysed failure detail.
    expected_failure: Option<fn(&str) -> bool>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn pairs(d: u64) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> =
        exceptional_search(d, 2, 40, 1_000_000).unwrap().into_iter().map(|e| (e.m, e.k)).collect();
    v.sort_unstable();
    v
}

fn c1() -> Outcome {
    let got = pairs(2);
    let mut want = vec![(5, 2), (7, 2), (25, 2), (243, 2), (9, 4), (13, 5), (17, 6), (15, 7), (21, 8), (19, 9)];
    want.sort_unstable();
    check(got == want, format!("{} exceptions {:?}", got.len(), got))
}

fn c2() -> Outcome {
    let got = pairs(3);
    check(got == [(125, 2)], format!("{got:?}"))
}

fn c3() -> Outcome {
    let t = PrimeTable::sieve(8000).unwrap();
    let gap = |limit, l| t.max_gap_ap(limit, 3, l).unwrap().max_gap;
    let (a, b) = (gap(6450, 1).max(gap(6450, 2)), gap(8000, 1).max(gap(8000, 2)));
    check(a <= 60 && b < 90, format!("max gap {a} up to 6450, {b} up to 8000"))
}

fn c4() -> Outcome {
    let missing: Vec<u64> = (10..=87u64)
        .filter(|&k| {
            let k = k as f64;
            prime_in_interval(3.5 * k, 4.0 * k).is_none() || prime_in_interval(4.0 * k, 4.5 * k).is_none()
        })
        .collect();
    let mut small: Vec<(u64, u64)> =
        (2..=9).flat_map(|k| cor24_search(k).unwrap().into_iter().map(move |m| (m, k))).collect();
    small.sort_unstable();
    let mut want = vec![(5, 2), (7, 2), (9, 4), (13, 5), (17, 6), (15, 7), (21, 8), (19, 9)];
    want.sort_unstable();
    check(missing.is_empty() && small == want, format!("intervals without a prime: {missing:?}; k ≤ 9 list {small:?}"))
}

fn c5() -> Outcome {
    let t = PrimeTable::sieve(1000).unwrap();
    let bad: Vec<u64> = (30..60u64).filter(|&k| t.nth(k as usize + 1).unwrap() <= 4 * k).collect();
    check(bad.is_empty(), format!("30 ≤ k < 60, failures {bad:?}"))
}

fn c6() -> Outcome {
    let ys = lehmer_y_search(10_000_000, 107).unwrap();
    let xs_all = lehmer_x_search(110, 683, false).unwrap();
    let xs = lehmer_x_search(110, 683, true).unwrap();
    let t = PrimeTable::sieve(200).unwrap();
    let spacing: Vec<u64> = (3..=37).filter(|&k| k != 35 && spacing_condition(k, &t).unwrap()).collect();
    // the excluded 379 has 3 | X + 2 and reappears as Y = (379 + 56) / 3
    let covered = ys.contains(&((379 + 56) / 3));
    check(
        ys == [55, 145, 297, 1573] && xs_all == [113, 379] && xs == [113] && covered && spacing == [28, 29],
        format!("Y {ys:?}; X {xs_all:?} ({xs:?} with 3 ∤ X(X+2), 379 ↦ Y=145); spacing holds at {spacing:?}"),
    )
}

fn c7() -> Outcome {
    let s = upto7_solutions(1_000_000_000).unwrap();
    check(s == [(1, 125), (2, 250), (4, 500), (5, 625)], format!("{s:?}"))
}

fn c8() -> Outcome {
    let mut got: Vec<(BigUint, BigUint, BigUint)> = nagell_solutions(100).unwrap().iter().map(|s| s.values()).collect();
    got.sort();
    let b = |n: u32| BigUint::from(n);
    let mut want: Vec<(BigUint, BigUint, BigUint)> =
        [(2, 3, 5), (16, 9, 25), (2, 25, 27), (4, 5, 9), (3, 5, 8), (27, 5, 32), (3, 125, 128)]
            .into_iter()
            .map(|(x, y, z)| (b(x), b(y), b(z)))
            .collect();
    want.sort();
    check(got == want, format!("bounded pass at exponent 100: {} tuples", got.len()))
}

fn c9() -> Outcome {
    let s = thue_bounded(35, 90, 1_000_000).unwrap();
    let reports = thue_table_check(1_000_000).unwrap();
    let survivors: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.surviving.iter().map(move |(x, y)| {
                format!("row {} A={} B={} ({x},{y})", r.instance.row.label(), r.instance.a, r.instance.b)
            })
        })
        .collect();
    let shaped: usize = reports.iter().map(|r| r.shaped.len()).sum();
    check(
        s == [(5, -1)] && survivors.is_empty(),
        format!(
            "x^3+35y^3=90: {s:?}; {} equations; passing the valuation filter: [{}]; with the row's X, Y shape: {shaped}",
            reports.len(),
            survivors.join("; ")
        ),
    )
}

fn c9_analysed(detail: &str) -> bool {
    detail.starts_with("x^3+35y^3=90: [(5, -1)]; 54 equations;")
        && detail.contains("passing the valuation filter: [row iii A=2 B=3 (-5,4); row iv A=4 B=12 (8,-5)]")
        && detail.ends_with("with the row's X, Y shape: 0")
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn c10() -> Outcome {
    let k0 = [find_k0(10.6, 3).unwrap().k0, find_k0(131.0, 2).unwrap().k0, find_k0(1e7, 2).unwrap().k0];
    let mut valid = Vec::new();
    let mut close = Vec::new();
    for k in 20..180u64 {
        match check_e3(&InequalityContext::new(3, ratio(6450, 3 * k), k).unwrap()).verdict {
            Verdict::Holds => valid.push(k),
            Verdict::Indeterminate => close.push(k),
            Verdict::Violated => {}
        }
    }
    let spots = [(6450, 63, 21), (6450, 75, 25), (6450, 84, 28), (6450, 111, 37), (8000, 114, 38)];
    let e0: Vec<bool> =
        spots.iter().map(|&(n, d, k)| check_e0(&InequalityContext::new(3, ratio(n, d), k).unwrap())).collect();
    check(
        k0[0] <= 180
            && k0[1] <= 500
            && k0[2] <= 70
            && valid == [21, 25, 28, 37, 38]
            && close.is_empty()
            && !e0.contains(&true),
        format!("k0 = {k0:?}; (E3) valid at {valid:?}, within tolerance {close:?}; (E0) at spot values {e0:?}"),
    )
}

fn samples(x_max: u64) -> impl Iterator<Item = u64> {
    (2..=100_000).chain((100_097..=x_max).step_by(97))
}

fn c11() -> Outcome {
    let t = PrimeTable::sieve(1_000_000).unwrap();
    let g = ChebyshevIndex::global(&t);
    let mut violations = Vec::new();
    let mut count = 0u64;
    for kind in [EstimateKind::DusartPiUpper, EstimateKind::DusartThetaLower, EstimateKind::DusartThetaUpper] {
        for x in samples(1_000_000) {
            let exact = if kind == EstimateKind::DusartPiUpper { g.pi(x).unwrap() as f64 } else { g.theta(x).unwrap() };
            count += 1;
            if check_bound(EstimateProfile::dusart(kind), x as f64, exact).unwrap().verdict != Verdict::Holds {
                violations.push((kind.name(), x));
            }
        }
    }
    for l in [1, 2] {
        let idx = ChebyshevIndex::new(&t, 3, l).unwrap();
        for nu0 in [1000u64, 6450] {
            for kind in [EstimateKind::RamareRumelyLower, EstimateKind::RamareRumelyUpper] {
                for x in samples(1_000_000).filter(|&x| x >= nu0) {
                    count += 1;
                    let c =
                        check_bound(EstimateProfile::ramare_rumely(kind, nu0 as f64), x as f64, idx.theta(x).unwrap());
                    if c.unwrap().verdict != Verdict::Holds {
                        violations.push((kind.name(), x));
                    }
                }
            }
        }
    }
    violations.truncate(5);
    check(violations.is_empty(), format!("{count} comparisons, violations {violations:?}"))
}

fn c12() -> Outcome {
    let mut bad = Vec::new();
    for alpha in [1, 2] {
        for n in 2..=200u64 {
            for r in full_exclusion_scan(&GPolySpec::unit(n, 0, alpha, 3).unwrap()).unwrap() {
                let flag =
                    if r.k == 1 { (alpha + 3 * (n - 1)).is_power_of_two() } else { (alpha, n, r.k) == (2, 43, 2) };
                let want = if flag { ExclusionStatus::ExceptionFlagged } else { ExclusionStatus::Excluded };
                if r.status != want {
                    bad.push(format!("q={alpha}/3 n={n} k={}: {}", r.k, r.status));
                }
            }
        }
    }
    let mut flagged_k2 = Vec::new();
    for n in 2..=250u64 {
        for k in 1..=n / 2 {
            for u in 0..=k {
                let r = exclusion_criterion(&GPolySpec::unit(n, u, 1, 2).unwrap(), k).unwrap();
                let ok = match k {
                    1 if u >= 1 => r.status != ExclusionStatus::Indeterminate,
                    2 if matches!((u, n), (1, 13) | (2, 12) | (2, 121)) => {
                        r.status == ExclusionStatus::ExceptionFlagged
                    }
                    _ => r.status == ExclusionStatus::Excluded,
                };
                if k >= 2 && r.status == ExclusionStatus::ExceptionFlagged {
                    flagged_k2.push((u, n));
                }
                if !ok {
                    bad.push(format!("q=u+1/2 u={u} n={n} k={k}: {}", r.status));
                }
            }
        }
    }
    flagged_k2.sort_unstable();
    bad.truncate(5);
    check(bad.is_empty(), format!("flagged at k = 2: {flagged_k2:?}; mismatches {bad:?}"))
}

fn c13() -> Outcome {
    let cases = [(13, 1, 1, 2), (12, 2, 1, 2), (121, 2, 1, 2), (43, 0, 2, 3)];
    let mut certs = Vec::new();
    let mut ok = true;
    for (n, u, alpha, d) in cases {
        let spec = GPolySpec::unit(n, u, alpha, d).unwrap();
        let v = no_factor_of_degree(&build_coefficients(&spec), 2, 25).unwrap();
        ok &= v.is_certified();
        certs.push(format!("n={n}: {v:?}"));
    }
    check(ok, certs.join("; "))
}

fn polygon_ok(np: &NewtonPolygon, n: usize) -> bool {
    let (Some(first), Some(last)) = (np.points[0].valuation.finite(), np.points[n].valuation.finite()) else {
        return false;
    };
    let e = &np.edges;
    !e.is_empty()
        && e[0].from == (0, first)
        && e[e.len() - 1].to == (n, last)
        && e.windows(2).all(|w| w[0].slope < w[1].slope && w[0].to == w[1].from)
        && np
            .points
            .iter()
            .all(|p| p.valuation.finite().is_none_or(|v| Ratio::from_integer(v as i64) >= np.height_at(p.index)))
}

fn c14() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20090401);
    let primes: Vec<u64> = PrimeTable::sieve(100).unwrap().iter().collect();
    let mut np_bad = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=30usize);
        let mut c: Vec<BigInt> = (0..=n)
            .map(|_| if rng.gen_bool(0.2) { 0.into() } else { rng.gen_range(-1_000_000i64..=1_000_000).into() })
            .collect();
        for j in [0, n] {
            while c[j] == BigInt::from(0) {
                c[j] = rng.gen_range(-1_000_000i64..=1_000_000).into();
            }
        }
        let p = primes[rng.gen_range(0..primes.len())];
        if !polygon_ok(&newton_polygon(&c, p).unwrap(), n) {
            np_bad += 1;
        }
    }

    // every exception, plus all small windows with P(Δ) < Dk and t₀ ≥ 0
    let table = PrimeTable::sieve(10_000).unwrap();
    let mut windows: Vec<(u64, u64, u64)> =
        pairs(2).into_iter().map(|(m, k)| (m, 2, k)).chain(pairs(3).into_iter().map(|(m, k)| (m, 3, k))).collect();
    let with_t0 = windows.iter().filter(|&&(_, d, k)| k >= table.pi(default_big_d(d) * k).unwrap()).count();
    for d in [2u64, 3] {
        for k in 2..=60u64 {
            for m in (d * k + 1..=5 * d * k).filter(|m| m % d != 0) {
                let f = factor_window(ProgressionWindow::new(m, d, k).unwrap());
                if f.gpf() < default_big_d(d) * k && k >= table.pi(default_big_d(d) * k).unwrap() {
                    windows.push((m, d, k));
                }
            }
        }
    }
    let mut surv_bad = Vec::new();
    for &(m, d, k) in &windows {
        let f = factor_window(ProgressionWindow::new(m, d, k).unwrap());
        let s = deletion_survivors(&f, default_big_d(d), &table).unwrap();
        let upper = survivor_product_bound_check(&s, f.gpf()).unwrap();
        let lower = survivor_product_lower_bound(&s).is_none_or(|lb| s.product >= lb);
        let enough = s.t0 < 0 || s.survivors.len() as i64 > s.t0;
        if !(upper && lower && enough) {
            surv_bad.push((m, d, k));
        }
    }

    let mut e4_invalid = 0;
    let mut e4_bad = 0;
    let mut tested = 0;
    while tested < 100 {
        let d = if rng.gen_bool(0.5) { 2 } else { 3 };
        let k = rng.gen_range(2..=400u64);
        let Ok(ctx) = InequalityContext::new(d, ratio(rng.gen_range(1..=2_000_000), rng.gen_range(1..=1000)), k) else {
            continue;
        };
        tested += 1;
        if check_e4(&ctx).fails() {
            e4_invalid += 1;
            e4_bad += check_e0(&ctx) as u32;
        }
    }
    check(
        np_bad == 0 && surv_bad.is_empty() && e4_bad == 0,
        format!(
            "polygons: {np_bad} bad of 10000; survivor bounds: {} windows ({with_t0} exceptions with t0 ≥ 0), bad {surv_bad:?}; \
             (E4)⇒¬(E0): {e4_invalid} of 100 with (E4) invalid, {e4_bad} counterexamples",
            windows.len()
        ),
    )
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "exception set d=2", budget: secs(300), run: c1, expected_failure: None },
        Criterion { id: 2, name: "exception set d=3", budget: secs(300), run: c2, expected_failure: None },
        Criterion { id: 3, name: "prime gaps mod 3", budget: secs(1), run: c3, expected_failure: None },
        Criterion {
            id: 4,
            name: "primes in (3.5k,4k), (4k,4.5k); k ≤ 9 list",
            budget: secs(1),
            run: c4,
            expected_failure: None,
        },
        Criterion { id: 5, name: "p_(k+1) > 4k", budget: secs(1), run: c5, expected_failure: None },
        Criterion {
            id: 6,
            name: "31-smooth searches and spacing filter",
            budget: secs(120),
            run: c6,
            expected_failure: None,
        },
        Criterion { id: 7, name: "5-smooth pairs at distance 3i", budget: secs(10), run: c7, expected_failure: None },
        Criterion { id: 8, name: "a^x + b^y = c^z (bounded)", budget: secs(10), run: c8, expected_failure: None },
        Criterion {
            id: 9,
            name: "Thue checks (bounded)",
            budget: secs(300),
            run: c9,
            expected_failure: Some(c9_analysed),
        },
        Criterion { id: 10, name: "inequality machinery", budget: secs(30), run: c10, expected_failure: None },
        Criterion { id: 11, name: "estimate consistency to 1e6", budget: secs(60), run: c11, expected_failure: None },
        Criterion { id: 12, name: "exclusion scans", budget: secs(120), run: c12, expected_failure: None },
        Criterion { id: 13, name: "degree-2 certificates", budget: secs(30), run: c13, expected_failure: None },
        Criterion { id: 14, name: "property suites", budget: secs(120), run: c14, expected_failure: None },
    ];
    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let (ok, detail) = match outcome {
            Pass(d) => (in_time, d),
            Fail(d) => (false, d),
        };
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), c.budget.as_secs());
        let slow = if in_time { "" } else { " [over time budget]" };
        println!("criterion {:>2} {}: {} ({timing}){slow} :: {detail}", c.id, c.name, if ok { "PASS" } else { "FAIL" });
        let as_expected = match c.expected_failure {
            None => ok,
            Some(analysed) => !ok && in_time && analysed(&detail),
        };
        if !as_expected {
            unexpected.push(c.id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: outcomes match the recorded analysis (criterion 9 fails as analysed)");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
