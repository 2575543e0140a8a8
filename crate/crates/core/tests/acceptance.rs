//! Acceptance criteria, one PASS/FAIL line each.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mlab::catalog::*;
use mlab::ksz::*;
use mlab::norms::*;
use mlab::pairing::BijectionSpec;
use mlab::{CoefficientTensor, Scalar, VectorTuple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn sign_tensor(order: usize, dim: usize, rng: &mut ChaCha8Rng) -> CoefficientTensor {
    CoefficientTensor::from_real_fn(
        order,
        dim,
        |_| if rng.random::<bool>() { 1.0 } else { -1.0 },
    )
    .unwrap()
}

fn littlewood_equality() -> Verdict {
    let t = CoefficientTensor::from_real_entries(2, 2, &[1.0, 1.0, 1.0, -1.0]).unwrap();
    let lhs = mixed_power_sum(&t, 4.0 / 3.0).unwrap();
    let norm = sup_norm_linf_exact(&t).unwrap().value;
    let ratio = lhs / (std::f64::consts::SQRT_2 * norm);
    let ok = (lhs - 4f64.powf(0.75)).abs() <= 1e-12 && norm == 2.0 && (ratio - 1.0).abs() <= 1e-9;
    verdict(ok, format!("lhs={lhs:.12} norm={norm} ratio={ratio:.12}"))
}

#[allow(clippy::approx_constant)]
fn constants_table_bounds() -> Verdict {
    let c2 = bh_constant_complex(2);
    let r2 = bh_constant_real(2);
    let mut ok = (c2 - 1.128_379_2).abs() <= 1e-6 && (r2 - std::f64::consts::SQRT_2).abs() <= 1e-12;
    let mut worst = String::new();
    for row in constants_table(50) {
        // m = 1 gives 1 = 1^0.21139 on the complex side
        let complex_ok = row.m == 1 || row.complex < row.complex_bound;
        if !(complex_ok && row.real < row.real_bound) {
            ok = false;
            worst = format!(" violated at m={}", row.m);
        }
    }
    verdict(
        ok,
        format!(
            "L2C={c2:.9} L2R={r2:.15} m<=50 bounds{}",
            if worst.is_empty() { " hold" } else { &worst }
        ),
    )
}

fn exhaustive_suite() -> Verdict {
    let lw = InequalityInstance::littlewood();
    let bh2 = InequalityInstance::bohnenblust_hille(2).unwrap();
    let bh3 = InequalityInstance::bohnenblust_hille(3).unwrap();
    let d43 = InequalityInstance::diagonal_43(3).unwrap();
    let sigma = [BijectionSpec::boxed(2, 3)];
    let mut worst = 0.0_f64;
    let mut checks = 0;
    let mut all_certified = true;
    for mask in 0..16u32 {
        let entries: Vec<f64> = (0..4)
            .map(|b| if mask >> b & 1 == 1 { -1.0 } else { 1.0 })
            .collect();
        let t = CoefficientTensor::from_real_entries(2, 2, &entries).unwrap();
        for inst in [&lw, &bh2] {
            let r = check_instance(inst, &t, &[], NormMethod::ExactLinf).unwrap();
            all_certified &= r.certified;
            worst = worst.max(r.ratio);
            checks += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let t = sign_tensor(3, 3, &mut rng);
        let a = check_instance(&bh3, &t, &[], NormMethod::ExactLinf).unwrap();
        let b = check_instance(&d43, &t, &sigma, NormMethod::ExactLinf).unwrap();
        all_certified &= a.certified && b.certified;
        worst = worst.max(a.ratio).max(b.ratio);
        checks += 2;
    }
    verdict(
        all_certified && worst <= 1.0 + 1e-9,
        format!("{checks} certified checks, max ratio {worst:.9}"),
    )
}

fn norm_oracle_agreement() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut above = 0;
    let mut close = 0;
    for case in 0..50u64 {
        let order = rng.random_range(1..=3);
        let dim = rng.random_range(1..=6);
        let t =
            CoefficientTensor::from_real_fn(order, dim, |_| rng.random_range(-1.0..=1.0)).unwrap();
        let exact = sup_norm_linf_exact(&t).unwrap().value;
        let ascent = sup_norm_ascent(&t, BallSpec::linf(), 20, case).value;
        if ascent > exact + 1e-9 {
            above += 1;
        }
        if ascent >= exact - 1e-6 {
            close += 1;
        }
    }
    verdict(
        above == 0 && close >= 45,
        format!("{close}/50 within 1e-6, {above} above exact"),
    )
}

fn holder_bound() -> Verdict {
    let mut worst = 0.0_f64;
    for p in [4.0, 5.0, 6.0] {
        let ball = BallSpec::new(p).unwrap();
        for dim in 1..=6 {
            let w = diagonal_witness(dim, 3, &default_witness_sigmas(dim, 3)).unwrap();
            let norm = sup_norm_ascent(&w, ball, 20, dim as u64).value;
            worst = worst.max(norm / holder_diag_bound(dim, p, 3).unwrap());
        }
    }
    verdict(
        worst <= 1.0 + 1e-9,
        format!("max norm / N^((p-m)/p) = {worst:.12}"),
    )
}

fn exponent_scan_slopes() -> Verdict {
    let (m, p) = (3, 5.0);
    let family = DiagonalWitnessFamily::new(m, p).unwrap();
    let s_grid: Vec<f64> = (0..=15).map(|i| 1.5 + 0.1 * i as f64).collect();
    let dims: Vec<usize> = (1..=6).map(|e| 1usize << e).collect();
    let series = exponent_scan(&family, &s_grid, &dims, Denominator::Holder, 0).unwrap();
    let target = (p - m as f64) / p;
    let mut err = 0.0_f64;
    let mut threshold_ok = true;
    for row in &series {
        err = err.max((row.slope - (1.0 / row.s - target)).abs());
        threshold_ok &= row.bounded == (row.s >= p / (p - m as f64) - 1e-12);
    }
    verdict(
        err <= 1e-9 && threshold_ok,
        format!("max slope error {err:.3e}, bounded exactly for s >= 2.5: {threshold_ok}"),
    )
}

fn ksz_growth() -> Verdict {
    let pattern = RepetitionPattern::new(vec![2, 1]).unwrap();
    let dims = [4, 6, 8, 12, 16];
    let records = ksz_experiment(&pattern, &dims, 200, 42, KszNorm::Auto, default_c_sub()).unwrap();
    let slope = records.last().and_then(|r| r.slope).unwrap();
    let all_pass = records.iter().all(|r| r.pass == Some(true));
    let minima: Vec<String> = records.iter().map(|r| format!("{}", r.measured)).collect();
    let in_band = (1.35..=1.65).contains(&slope);
    verdict(
        in_band && all_pass,
        format!(
            "slope {slope:.4} (band [1.35, 1.65]), minima [{}], existence bound {}",
            minima.join(", "),
            if all_pass { "holds" } else { "fails" }
        ),
    )
}

fn exponent_floor_identities() -> Verdict {
    let ok = exponent_floor(2) == 4.0 / 3.0
        && (1..=20).all(|n| exponent_floor(n) == bh_exponent(n).unwrap());
    verdict(ok, "2k/(k+1) matches 2m/(m+1) for m <= 20")
}

fn psi2_estimator() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let gauss: Vec<f64> = (0..100_000).map(|_| rng.sample(StandardNormal)).collect();
    let g = psi2_norm_estimate(&gauss, 1e-10).unwrap().value;
    let a = 1.7;
    let c = psi2_norm_estimate(&[a; 16], 1e-12).unwrap().value;
    let cerr = (c - a / std::f64::consts::LN_2.sqrt()).abs();
    let ok = (g - (8.0f64 / 3.0).sqrt()).abs() <= 0.05 && cerr <= 1e-9;
    verdict(
        ok,
        format!("gaussian {g:.5} (target 1.63299), constant error {cerr:.2e}"),
    )
}

fn property_suites() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut failures = Vec::new();

    // multilinearity of eval in every slot
    let mut max_dev = 0.0_f64;
    for _ in 0..200 {
        let order = rng.random_range(1..=3);
        let dim = rng.random_range(1..=4);
        let t =
            CoefficientTensor::from_real_fn(order, dim, |_| rng.random_range(-1.0..1.0)).unwrap();
        let vec = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()
        };
        let base: Vec<Vec<f64>> = (0..order).map(|_| vec(&mut rng)).collect();
        let (u, v) = (vec(&mut rng), vec(&mut rng));
        let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let slot = rng.random_range(0..order);
        let at = |w: Vec<f64>| {
            let mut xs = base.clone();
            xs[slot] = w;
            t.eval(&VectorTuple::real(xs).unwrap()).unwrap().re
        };
        let combo: Vec<f64> = u.iter().zip(&v).map(|(x, y)| a * x + b * y).collect();
        max_dev = max_dev.max((at(combo) - (a * at(u.clone()) + b * at(v.clone()))).abs());
    }
    if max_dev > 1e-10 {
        failures.push(format!("multilinearity deviation {max_dev:.2e}"));
    }

    // weak norm against signed coordinate functionals
    for _ in 0..200 {
        let dim = rng.random_range(1..=5);
        let len = rng.random_range(0..=6);
        let q = rng.random_range(1.0..4.0);
        let xs: Vec<Vec<Scalar>> = (0..len)
            .map(|_| {
                (0..dim)
                    .map(|_| Scalar::new(rng.random_range(-3.0..3.0), 0.0))
                    .collect()
            })
            .collect();
        let mut oracle = 0.0_f64;
        for i in 0..dim {
            for sign in [1.0, -1.0] {
                let s: f64 = xs.iter().map(|x| (sign * x[i].re).abs().powf(q)).sum();
                oracle = oracle.max(s.powf(1.0 / q));
            }
        }
        let got = weak_lq_norm_linf(&xs, q).unwrap();
        if (got - oracle).abs() > 1e-12 * oracle.max(1.0) {
            failures.push(format!("weak norm {got} vs {oracle}"));
            break;
        }
    }

    // pairing round trips
    for spec in [
        BijectionSpec::cantor(2),
        BijectionSpec::cantor(3),
        BijectionSpec::boxed(2, 100),
        BijectionSpec::diagonal_first(2, 100),
    ] {
        for v in 1..=10_000u64 {
            let tuple = spec.unpair(v).unwrap();
            if spec.pair(&tuple).unwrap() != v {
                failures.push(format!("{spec} round trip broke at {v}"));
                break;
            }
        }
    }

    // byte-identical reruns of the binary
    let bin = env!("CARGO_BIN_EXE_mlab");
    let runs: [&[&str]; 3] = [
        &[
            "ksz",
            "--pattern",
            "2,1",
            "--N",
            "3:6",
            "--draws",
            "20",
            "--seed",
            "42",
        ],
        &[
            "verify",
            "--instance",
            "bh",
            "--m",
            "3",
            "--N",
            "3",
            "--random-sign",
            "--count",
            "5",
            "--seed",
            "7",
            "--format",
            "csv",
        ],
        &[
            "scan",
            "--witness",
            "prop90",
            "--m",
            "3",
            "--p",
            "5",
            "--s",
            "1.5:3.0:0.1",
            "--N",
            "2:64:x2",
        ],
    ];
    for args in runs {
        let once = Command::new(bin).args(args).output().unwrap();
        let twice = Command::new(bin).args(args).output().unwrap();
        if !once.status.success() || once.stdout != twice.stdout || once.stdout.is_empty() {
            failures.push(format!("rerun of `{}` differs or failed", args[0]));
        }
    }

    let detail = if failures.is_empty() {
        "multilinearity, weak norms, pairings over 1..=10000, CLI reruns".to_string()
    } else {
        failures.join("; ")
    };
    verdict(failures.is_empty(), detail)
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Verdict, Duration);
    let criteria: [Criterion; 10] = [
        (
            1,
            "littlewood equality",
            littlewood_equality,
            Duration::from_millis(1),
        ),
        (
            2,
            "constants table",
            constants_table_bounds,
            Duration::from_millis(10),
        ),
        (
            3,
            "exhaustive inequality suite",
            exhaustive_suite,
            Duration::from_secs(10),
        ),
        (
            4,
            "norm oracle agreement",
            norm_oracle_agreement,
            Duration::from_secs(30),
        ),
        (5, "holder bound", holder_bound, Duration::from_secs(5)),
        (
            6,
            "exponent scan",
            exponent_scan_slopes,
            Duration::from_secs(1),
        ),
        (7, "ksz growth", ksz_growth, Duration::from_secs(300)),
        (
            8,
            "exponent floor",
            exponent_floor_identities,
            Duration::from_millis(1),
        ),
        (9, "psi2 estimator", psi2_estimator, Duration::from_secs(1)),
        (
            10,
            "property suites",
            property_suites,
            Duration::from_secs(30),
        ),
    ];
    let mut failed = 0;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let pass = v.pass && elapsed <= budget;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {id}: {name}: {} [{:.3?} of {:?}]",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            elapsed,
            budget
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
