use approx::assert_relative_eq;
use mlab::catalog::bh_exponent;
use mlab::ksz::*;
use mlab::norms::mixed_power_sum;
use mlab::VectorTuple;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn all_patterns(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in all_patterns(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `X(eps, x)` summed straight from its definition.
fn direct_process(eps: &SignTensor, parts: &[usize], x: &[Vec<f64>]) -> f64 {
    let (k, dim) = (eps.order(), eps.dim());
    let mut total = 0.0;
    for (flat, &s) in eps.signs().iter().enumerate() {
        let mut idx = vec![0; k];
        let mut rem = flat;
        for l in (0..k).rev() {
            idx[l] = rem % dim;
            rem /= dim;
        }
        let mut term = f64::from(s);
        let mut slot = 0;
        for (l, &part) in parts.iter().enumerate() {
            for _ in 0..part {
                term *= x[slot][idx[l]];
                slot += 1;
            }
        }
        total += term;
    }
    total
}

#[test]
fn sign_tensor_is_reproducible() {
    let a = sample_sign_tensor(5, 3, 99).unwrap();
    let b = sample_sign_tensor(5, 3, 99).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.signs().len(), 125);
    assert!(a.signs().iter().all(|&s| s == 1 || s == -1));
    let one = sample_sign_tensor(1, 1, 0).unwrap();
    assert_eq!(one.signs().len(), 1);
    assert!(sample_sign_tensor(0, 2, 0).is_err());
    assert!(sample_sign_tensor(4097, 2, 0).is_err());
}

#[test]
fn sign_tensor_mean_is_centered() {
    let mut sum = 0i64;
    for seed in 0..100 {
        sum += sample_sign_tensor(32, 2, seed)
            .unwrap()
            .signs()
            .iter()
            .map(|&s| i64::from(s))
            .sum::<i64>();
    }
    let mean = sum as f64 / (100.0 * 1024.0);
    assert!(mean.abs() <= 0.02, "mean {mean}");
}

#[test]
fn process_tensor_examples() {
    let eps = sample_sign_tensor(3, 2, 1).unwrap();
    let flat = ksz_process_tensor(&eps, &RepetitionPattern::distinct(2).unwrap()).unwrap();
    assert_eq!(flat, eps.to_tensor());

    let eps = sample_sign_tensor(2, 1, 4).unwrap();
    let t = ksz_process_tensor(&eps, &RepetitionPattern::new(vec![2]).unwrap()).unwrap();
    let nz: Vec<usize> = t
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm() != 0.0)
        .map(|(i, _)| i)
        .collect();
    assert_eq!(nz, vec![0, 3]);

    assert!(ksz_process_tensor(&eps, &RepetitionPattern::new(vec![1, 1]).unwrap()).is_err());
}

#[test]
fn process_tensor_diagonal_counts() {
    for n in 1..=4 {
        for parts in all_patterns(n) {
            let pattern = RepetitionPattern::new(parts).unwrap();
            let k = pattern.groups();
            let eps = sample_sign_tensor(3, k, n as u64).unwrap();
            let t = ksz_process_tensor(&eps, &pattern).unwrap();
            assert_eq!(t.nonzero_count(), 3usize.pow(k as u32));
            for r in [1.0, 4.0 / 3.0, 2.0] {
                assert_relative_eq!(
                    mixed_power_sum(&t, r).unwrap(),
                    3f64.powf(k as f64 / r),
                    max_relative = 1e-14
                );
            }
        }
    }
}

#[test]
fn process_tensor_matches_direct_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for dim in 1..=4 {
        for n in 1..=4 {
            for parts in all_patterns(n) {
                let pattern = RepetitionPattern::new(parts.clone()).unwrap();
                let eps = sample_sign_tensor(dim, pattern.groups(), rng.random()).unwrap();
                let t = ksz_process_tensor(&eps, &pattern).unwrap();
                for _ in 0..3 {
                    let x: Vec<Vec<f64>> = (0..n)
                        .map(|_| (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect())
                        .collect();
                    let expect = direct_process(&eps, &parts, &x);
                    let got = t.eval(&VectorTuple::real(x).unwrap()).unwrap().re;
                    assert!(
                        (got - expect).abs() <= 1e-12 * expect.abs().max(1.0),
                        "{parts:?} N={dim}"
                    );
                }
            }
        }
    }
}

#[test]
fn l2_bound_examples() {
    assert_eq!(
        l2_norm_bound(&RepetitionPattern::distinct(2).unwrap(), 4),
        4.0
    );
    assert_eq!(
        l2_norm_bound(&RepetitionPattern::new(vec![3]).unwrap(), 9),
        3.0
    );
    for parts in all_patterns(3) {
        let pattern = RepetitionPattern::new(parts).unwrap();
        let dim = 5;
        let ones = VectorTuple::real(vec![vec![1.0; dim]; 3]).unwrap();
        let m2 = exact_second_moment(&pattern, &ones).unwrap();
        assert_eq!(m2, (dim as f64).powi(pattern.groups() as i32));
        assert!(m2.sqrt() <= l2_norm_bound(&pattern, dim) * (1.0 + 1e-12));
    }
}

#[test]
fn second_moment_is_monte_carlo_consistent() {
    // the sign tensor is orthonormal, so averaging |X|^2 over draws tends to the closed form
    let pattern = RepetitionPattern::new(vec![2, 1]).unwrap();
    let x = vec![
        vec![0.5, -1.0, 0.25],
        vec![1.0, 0.5, -0.5],
        vec![-0.75, 1.0, 0.1],
    ];
    let closed = exact_second_moment(&pattern, &VectorTuple::real(x.clone()).unwrap()).unwrap();
    let draws = 4000;
    let mut acc = 0.0;
    for seed in 0..draws {
        let eps = sample_sign_tensor(3, 2, seed).unwrap();
        acc += direct_process(&eps, pattern.parts(), &x).powi(2);
    }
    let mc = acc / draws as f64;
    assert!(
        (mc - closed).abs() < 0.1 * closed,
        "mc {mc} closed {closed}"
    );
}

#[test]
fn psi2_examples() {
    for a in [0.3, 1.0, 7.5] {
        let est = psi2_norm_estimate(&[a, -a, a, a], 1e-12).unwrap();
        assert!((est.value - a / std::f64::consts::LN_2.sqrt()).abs() <= 1e-9);
        assert!(est.bracket_width < 1e-12);
    }
    let zero = psi2_norm_estimate(&[0.0; 10], 1e-9).unwrap();
    assert_eq!(zero.value, 0.0);
    assert!(psi2_norm_estimate(&[], 1e-9).is_err());
    assert!(psi2_norm_estimate(&[1.0, f64::NAN], 1e-9).is_err());
    assert!(psi2_norm_estimate(&[1.0], 0.0).is_err());
}

#[test]
fn psi2_gaussian_benchmark() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<f64> = (0..100_000).map(|_| rng.sample(StandardNormal)).collect();
    let est = psi2_norm_estimate(&samples, 1e-10).unwrap();
    assert!(
        (est.value - (8.0f64 / 3.0).sqrt()).abs() <= 0.05,
        "{}",
        est.value
    );
    assert!(psi2_mean(&samples, est.value) <= 1.0);
}

#[test]
fn psi2_is_homogeneous() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples: Vec<f64> = (0..500).map(|_| rng.random_range(-2.0..2.0)).collect();
    let tol = 1e-10;
    let base = psi2_norm_estimate(&samples, tol).unwrap().value;
    for alpha in [0.1, 3.0, 250.0] {
        let scaled: Vec<f64> = samples.iter().map(|x| alpha * x).collect();
        let v = psi2_norm_estimate(&scaled, tol).unwrap().value;
        assert!(
            (v / (alpha * base) - 1.0).abs() <= 2.0 * tol,
            "alpha {alpha}"
        );
    }
}

#[test]
fn net_cardinality_examples() {
    assert_eq!(net_cardinality(1, 1), BigUint::from(25u32));
    assert_eq!(net_cardinality(2, 1), BigUint::from(6561u32));
    assert_eq!(net_cardinality(2, 2), BigUint::from(43_046_721u32));
    let big = net_cardinality(3, 40);
    assert_eq!(big, BigUint::from(13u32).pow(240));
    assert_relative_eq!(
        ln_net_cardinality(3, 40),
        (big.bits() as f64 - 1.0) * 2f64.ln(),
        max_relative = 1e-2
    );
}

#[test]
fn threshold_lambda_examples() {
    assert_relative_eq!(
        threshold_lambda(2, 1, 1, 1.0),
        6562f64.ln().sqrt(),
        epsilon = 1e-12
    );
    assert!((threshold_lambda(2, 1, 5, 1.0) - 2.965).abs() < 1e-3);
    for (n, dim) in [(1, 1), (3, 7), (2, 100)] {
        assert_relative_eq!(
            threshold_lambda(n, dim, 2, 2.0),
            2.0 * threshold_lambda(n, dim, 2, 1.0),
            max_relative = 1e-15
        );
    }
    let limit = |n: usize| (2.0 * n as f64 * (1.0 + 4.0 * n as f64).ln()).sqrt();
    let mut prev = f64::INFINITY;
    for dim in 1..=50 {
        let l = threshold_lambda(2, dim, 2, 1.0);
        assert!(l <= prev && l >= limit(2));
        prev = l;
    }
    assert_relative_eq!(
        threshold_lambda(2, 1000, 2, 1.0),
        limit(2),
        max_relative = 1e-12
    );
}

#[test]
fn threshold_condition_brackets_lambda() {
    for (n, dim) in [(1, 1), (2, 1), (3, 4), (3, 16), (5, 200)] {
        let c = default_c_sub();
        let l = threshold_lambda(n, dim, 2, c);
        assert!(
            threshold_condition_holds(n, dim, 2, c, l * (1.0 + 1e-9)),
            "n={n} N={dim}"
        );
        assert!(
            !threshold_condition_holds(n, dim, 2, c, l * (1.0 - 1e-3)),
            "n={n} N={dim}"
        );
    }
}

#[test]
fn linear_sweep_has_unit_slope() {
    let pattern = RepetitionPattern::distinct(1).unwrap();
    let records = ksz_experiment(
        &pattern,
        &[2, 4, 8, 16, 32],
        5,
        11,
        KszNorm::Auto,
        default_c_sub(),
    )
    .unwrap();
    for r in &records {
        assert_eq!(r.measured, r.dim as f64);
        assert_eq!(r.pass, Some(true));
        assert!(r.exact);
    }
    assert!((records.last().unwrap().slope.unwrap() - 1.0).abs() <= 1e-9);
}

#[test]
fn sweep_is_reproducible_and_validated() {
    let pattern = RepetitionPattern::new(vec![2, 1]).unwrap();
    let a = ksz_experiment(&pattern, &[2, 3, 4], 10, 5, KszNorm::Auto, default_c_sub()).unwrap();
    let b = ksz_experiment(&pattern, &[2, 3, 4], 10, 5, KszNorm::Auto, default_c_sub()).unwrap();
    assert_eq!(ksz_csv(&a), ksz_csv(&b));
    assert!(ksz_csv(&a)
        .starts_with("# schema=1\npattern,N,draws,min_sup,bound_2R,pass,slope\n\"2,1\",2,10,"));
    assert!(ksz_experiment(&pattern, &[2, 3], 10, 5, KszNorm::Auto, 1.0).is_err());
    assert!(ksz_experiment(&pattern, &[2, 3, 4], 0, 5, KszNorm::Auto, 1.0).is_err());
}

#[test]
fn collapsed_norm_matches_full_tensor() {
    for parts in [vec![2, 1], vec![1, 2], vec![2, 2], vec![3]] {
        let pattern = RepetitionPattern::new(parts).unwrap();
        for seed in 0..5 {
            let (a, ea) = KszNorm::Collapsed.sup_norm(&pattern, 3, seed).unwrap();
            let (b, eb) = KszNorm::FullTensor.sup_norm(&pattern, 3, seed).unwrap();
            assert!(ea && eb);
            assert!((a - b).abs() <= 1e-12 * a.max(1.0));
            let (c, ec) = KszNorm::Ascent { restarts: 10 }
                .sup_norm(&pattern, 3, seed)
                .unwrap();
            assert!(!ec && c <= a + 1e-9);
        }
    }
}

#[test]
fn exponent_floor_identities() {
    assert_eq!(exponent_floor(1), 1.0);
    assert_eq!(exponent_floor(2), 4.0 / 3.0);
    for n in 1..=20 {
        assert_eq!(exponent_floor(n), bh_exponent(n).unwrap());
    }
}

#[test]
fn pattern_parsing() {
    let p: RepetitionPattern = "2,1".parse().unwrap();
    assert_eq!(p.parts(), &[2, 1]);
    assert_eq!(p.slots(), 3);
    assert_eq!(p.cumulative(), vec![2, 3]);
    assert_eq!(p.to_string(), "2,1");
    assert!("0,1".parse::<RepetitionPattern>().is_err());
    assert!("".parse::<RepetitionPattern>().is_err());
}
