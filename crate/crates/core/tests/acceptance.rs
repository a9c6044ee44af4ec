//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fnrate::block_oracle::{
    alpha_block, alpha_block_direct, gamma_block, min_labels_search, OracleConfig,
};
use fnrate::bounds::{
    alpha, best_ns_code_expected_length, gamma, ns_code_length_lower_bound, rate_report,
};
use fnrate::coding_schemes::{
    arith_scheme, check_zero_error, expected_lengths, gf2_scheme, verify_zero_error,
    VerificationMethod,
};
use fnrate::equivalence::{scalar_partition, v_count};
use fnrate::majorization::{entropy, entropy_of_counts, is_majorized, WeightVector};
use fnrate::pair_structure::{h_vector, pair_index_set};
use fnrate::{fixtures, Execution, Pmf, Side};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: u64 = 10_000_000;
const LOG2_3: f64 = 1.584_962_500_721_156_2;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || {
        format!("{name} = {got}, expected {want} ± {tol:e}")
    })
}

fn err(e: fnrate::Error) -> String {
    e.to_string()
}

fn to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

fn sorted_classes(f: &fnrate::DemandFunction, u: Side, a3: usize) -> Vec<Vec<usize>> {
    let mut c = scalar_partition(f, u, a3).classes().to_vec();
    c.sort();
    c
}

fn criterion_1() -> Check {
    let f = fixtures::gf3();
    let expected = [
        (Side::One, vec![vec![vec![0], vec![1], vec![2]], vec![vec![0, 1], vec![2]], vec![vec![0], vec![1, 2]]]),
        (Side::Two, vec![vec![vec![0], vec![1], vec![2]], vec![vec![0], vec![1, 2]], vec![vec![0, 1], vec![2]]]),
    ];
    for (u, per_a3) in expected {
        for (a3, want) in per_a3.iter().enumerate() {
            ensure(&sorted_classes(&f, u, a3) == want, || format!("partition u={u} a3={a3}"))?;
        }
        let v: Vec<usize> = (0..3).map(|a3| v_count(&f, u, a3)).collect();
        ensure(v == [3, 2, 2], || format!("V_{u} = {v:?}"))?;
    }
    Ok("partitions and V = (3,2,2) match".into())
}

fn criterion_2() -> Check {
    let f = fixtures::gf3();
    let r = rate_report(&f, 2).map_err(err)?;
    let r1_closed = 1.0 - (4.0 / 9.0) / LOG2_3;
    close("r1_lb", r.r1_lb, r1_closed, 1e-6)?;
    close("r1_lb (printed value)", r.r1_lb, 0.7196, 1e-4)?;
    close("alpha", r.alpha, 8.0 / 9.0 + LOG2_3 / 3.0, 1e-9)?;
    close("2 sum_rate_avg_lb", 2.0 * r.sum_rate_avg_lb, 1.7725, 1e-4)?;
    Ok(format!(
        "r1_lb = {:.6}, alpha = {:.6}, 2 avg = {:.4}",
        r.r1_lb,
        r.alpha,
        2.0 * r.sum_rate_avg_lb
    ))
}

fn criterion_3() -> Check {
    let f = fixtures::gf3();
    let table: [[&[(usize, usize)]; 3]; 3] = [
        [&[(1, 1), (2, 2), (3, 3)], &[(1, 3), (2, 1), (3, 2)], &[(1, 2), (2, 3), (3, 1)]],
        [&[(1, 1), (1, 2), (2, 1)], &[(2, 2)], &[]],
        [&[(2, 2)], &[(1, 1), (1, 2), (2, 1)], &[]],
    ];
    for (a3, row) in table.iter().enumerate() {
        for (b, want) in row.iter().enumerate() {
            let got: Vec<(usize, usize)> = match pair_index_set(&f, a3, b) {
                Ok(set) => set.pairs.iter().map(|p| (p.v + 1, p.w + 1)).collect(),
                Err(fnrate::Error::EmptySupport { .. }) => Vec::new(),
                Err(e) => return Err(err(e)),
            };
            ensure(&got == want, || format!("V12({a3},{b}) = {got:?}"))?;
        }
    }
    let h_of = |a3: usize, b: usize, v: usize, w: usize| {
        pair_index_set(&f, a3, b)
            .ok()
            .and_then(|s| s.pairs.iter().find(|p| p.v + 1 == v && p.w + 1 == w).map(|p| p.h))
    };
    ensure(h_of(1, 0, 1, 1) == Some(4), || "h_1(1,1)".into())?;
    ensure(h_of(1, 0, 1, 2) == Some(2) && h_of(1, 0, 2, 1) == Some(2), || "h_1(1,2), h_1(2,1)".into())?;
    ensure(h_of(2, 0, 2, 2) == Some(1), || "h_2(2,2)".into())?;
    ensure(h_vector(&f, 1, 0).map_err(err)?.counts == [4, 2, 2], || "h vector".into())?;
    Ok("all nine class-pair sets and h-values match".into())
}

fn criterion_4() -> Check {
    let f = fixtures::arithmetic_sum();
    for u in Side::BOTH {
        close("gamma", gamma(&f, u, 2).map_err(err)?, 1.0, 1e-12)?;
    }
    let r = rate_report(&f, 2).map_err(err)?;
    close("alpha", r.alpha, 0.5, 1e-12)?;
    close("2 sum_rate_avg_lb", 2.0 * r.sum_rate_avg_lb, 2.31128, 1e-4)?;
    Ok(format!("gamma = 1, alpha = 0.5, 2 avg = {:.5}", 2.0 * r.sum_rate_avg_lb))
}

fn criterion_5() -> Check {
    let f = fixtures::gf2_sum();
    let r = rate_report(&f, 2).map_err(err)?;
    for (name, v) in [
        ("r3_sum_lb", r.r3_sum_lb),
        ("r1_lb", r.r1_lb),
        ("r2_lb", r.r2_lb),
        ("sum_rate_avg_lb", r.sum_rate_avg_lb),
    ] {
        close(name, v, 1.0, 1e-12)?;
    }
    let mut codes = 0;
    for k in 1..=6 {
        for c in 0..=k {
            let code = gf2_scheme(k, c).map_err(err)?;
            ensure(check_zero_error(&code, &f, CAP, Execution::Parallel).map_err(err)?, || {
                format!("gf2_scheme({k},{c}) not zero-error")
            })?;
            let lens = expected_lengths(&code, &f, CAP, Execution::Parallel).map_err(err)?;
            let q = |n: usize| BigRational::from_integer(BigInt::from(n));
            ensure(lens.lengths() == [&q(c), &q(k - c), &q(k), &q(k)], || {
                format!("gf2_scheme({k},{c}) lengths")
            })?;
            ensure(
                lens.r31 + lens.r32 == r.r3_sum_lb && lens.r1 == r.r1_lb && lens.r2 == r.r2_lb,
                || format!("gf2_scheme({k},{c}) misses the outer bound"),
            )?;
            codes += 1;
        }
    }
    Ok(format!("bounds all 1; {codes} codes (k ≤ 6) zero-error and tight"))
}

fn criterion_6() -> Check {
    let mut checked = 0;
    for (name, f) in fixtures::all() {
        let g = [gamma(&f, Side::One, 2).map_err(err)?, gamma(&f, Side::Two, 2).map_err(err)?];
        let a = alpha(&f, 2).map_err(err)?;
        for k in 1..=3 {
            let cfg = OracleConfig::new(k);
            for (u, gu) in Side::BOTH.into_iter().zip(g) {
                close(&format!("{name} gamma_block k={k}"), gamma_block(&f, u, &cfg).map_err(err)?, gu, 1e-9)?;
            }
            close(&format!("{name} alpha_block k={k}"), alpha_block(&f, &cfg).map_err(err)?, a, 1e-9)?;
            match alpha_block_direct(&f, &cfg) {
                Ok(d) => close(&format!("{name} alpha_block_direct k={k}"), d, a, 1e-9)?,
                Err(fnrate::Error::ResourceCap { .. }) => {}
                Err(e) => return Err(err(e)),
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (fixture, k) combinations agree within 1e-9"))
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for (name, f) in fixtures::all() {
        for u in Side::BOTH {
            for a3 in 0..f.a_size() {
                let m = min_labels_search(&f, u, a3).map_err(err)?;
                let v = v_count(&f, u, a3);
                ensure(m == v, || format!("{name} u={u} a3={a3}: {m} labels vs V = {v}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (fixture, u, a3) cases equal"))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=64);
        let counts: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=1000)).collect();
        let z = rng.gen_range(2..=4);
        let p = Pmf::from_counts(&counts).map_err(err)?;
        let best = to_f64(&best_ns_code_expected_length(&p, z).map_err(err)?);
        if best + 1e-12 < ns_code_length_lower_bound(entropy(&p, z), z) {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("1000 pmfs, 0 violations".into())
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=32);
        let q: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=200)).collect();
        let mut p = q.clone();
        let steps = rng.gen_range(1..=30);
        common::robin_hood(&mut p, steps, &mut rng);
        let (wp, wq) = (
            WeightVector::from_integers(&p).map_err(err)?,
            WeightVector::from_integers(&q).map_err(err)?,
        );
        ensure(is_majorized(&wp, &wq), || "sampler produced a non-comparable pair".into())?;
        if entropy_of_counts(&p, 2) < entropy_of_counts(&q, 2) - 1e-12 {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok("1000 comparable pairs, 0 violations".into())
}

fn criterion_10() -> Check {
    let f = fixtures::arithmetic_sum();
    for k in [2, 4, 6] {
        let code = arith_scheme(k, CAP).map_err(err)?;
        ensure(check_zero_error(&code, &f, CAP, Execution::Parallel).map_err(err)?, || {
            format!("arith_scheme({k}) not zero-error")
        })?;
    }
    let code = arith_scheme(16, CAP).map_err(err)?;
    let verdict = verify_zero_error(&code, &f, CAP, Execution::Parallel).map_err(err)?;
    ensure(verdict.zero_error && verdict.method == VerificationMethod::Structural, || {
        format!("k=16 verdict {verdict:?}")
    })?;
    let r = expected_lengths(&code, &f, CAP, Execution::Parallel).map_err(err)?;
    let per_letter = to_f64(&r.e_len_1) / 16.0;
    ensure((1.25..=1.375).contains(&per_letter), || format!("e_len_1/k = {per_letter}"))?;
    Ok(format!("k ≤ 6 exhaustive, k = 16 structural, e_len_1/k = {per_letter}"))
}

fn main() -> ExitCode {
    let criteria: [(fn() -> Check, Duration); 10] = [
        (criterion_1, Duration::from_secs(1)),
        (criterion_2, Duration::from_secs(1)),
        (criterion_3, Duration::from_secs(1)),
        (criterion_4, Duration::from_secs(1)),
        (criterion_5, Duration::from_secs(5)),
        (criterion_6, Duration::from_secs(30)),
        (criterion_7, Duration::from_secs(10)),
        (criterion_8, Duration::from_secs(60)),
        (criterion_9, Duration::from_secs(60)),
        (criterion_10, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; over time budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS ({elapsed:.2?}) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL ({elapsed:.2?}) {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
