//! Weak-`l_q` norms `sup_{phi in B_{E*}} ||(phi(x_j))_j||_q` of finite sequences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{conjugate_exponent, lr_norm};
use crate::error::{LabError, Result};
use crate::tensor::Scalar;

fn check_lengths<T>(xs: &[Vec<T>]) -> Result<usize> {
    let n = xs.first().map_or(0, Vec::len);
    for x in xs {
        if x.len() != n {
            return Err(LabError::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
    }
    Ok(n)
}

/// Exact weak-`l_q` norm for `E = l_inf^N`.
///
/// The objective is convex in the functional, and the extreme points of the
/// dual (`l_1`) ball are the signed coordinate functionals, so the value is
/// `max_i (sum_j |x_j(i)|^q)^(1/q)`. Empty sequences have norm 0.
pub fn weak_lq_norm_linf(xs: &[Vec<Scalar>], q: f64) -> Result<f64> {
    if q.is_nan() || q < 1.0 {
        return Err(LabError::exponent(q, "weak norm requires q >= 1"));
    }
    let n = check_lengths(xs)?;
    let mut best = 0.0_f64;
    for i in 0..n {
        let column: Vec<f64> = xs.iter().map(|x| x[i].norm()).collect();
        best = best.max(lr_norm(&column, q));
    }
    Ok(best)
}

/// Lower bound on the weak-`l_q` norm of real vectors in `E = l_p^N`, `1 < p < inf`.
///
/// Each step moves the functional to the point of the dual `l_{p*}` ball that
/// maximizes the linearization of `phi -> ||(phi(x_j))||_q` at the current
/// iterate; convexity of the objective makes the sequence monotone. Best of
/// `restarts` seeded starts.
pub fn weak_lq_norm_lp_estimate(
    xs: &[Vec<f64>],
    p: f64,
    q: f64,
    restarts: usize,
    seed: u64,
) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(LabError::exponent(p, "estimate requires 1 < p < inf"));
    }
    if q.is_nan() || q < 1.0 {
        return Err(LabError::exponent(q, "weak norm requires q >= 1"));
    }
    let n = check_lengths(xs)?;
    if xs.is_empty() || n == 0 {
        return Ok(0.0);
    }
    let dual = conjugate_exponent(p)?;
    let mut best = 0.0_f64;
    for r in 0..restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        let mut phi: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        normalize(&mut phi, dual);
        let mut value = objective(xs, &phi, q);
        for _ in 0..500 {
            let g = gradient(xs, &phi, q);
            let gmod: Vec<f64> = g.iter().map(|v| v.abs()).collect();
            let gnorm = lr_norm(&gmod, p);
            if gnorm == 0.0 {
                break;
            }
            // argmax of <g, phi> over the l_{p*} ball
            let next: Vec<f64> = g
                .iter()
                .map(|&gi| gi.signum() * (gi.abs() / gnorm).powf(p - 1.0))
                .collect();
            let next_value = objective(xs, &next, q);
            if next_value <= value * (1.0 + 1e-12) {
                if next_value > value {
                    value = next_value;
                }
                break;
            }
            phi = next;
            value = next_value;
        }
        best = best.max(value);
    }
    Ok(best)
}

fn normalize(v: &mut [f64], p: f64) {
    let moduli: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    let norm = lr_norm(&moduli, p);
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

fn pairings(xs: &[Vec<f64>], phi: &[f64]) -> Vec<f64> {
    xs.iter()
        .map(|x| x.iter().zip(phi).map(|(a, b)| a * b).sum())
        .collect()
}

fn objective(xs: &[Vec<f64>], phi: &[f64], q: f64) -> f64 {
    let s: Vec<f64> = pairings(xs, phi).iter().map(|v| v.abs()).collect();
    lr_norm(&s, q)
}

/// A (sub)gradient direction of the objective, up to a positive factor.
fn gradient(xs: &[Vec<f64>], phi: &[f64], q: f64) -> Vec<f64> {
    let s = pairings(xs, phi);
    let weights: Vec<f64> = if q.is_infinite() {
        let k = s
            .iter()
            .enumerate()
            .fold(0, |b, (j, v)| if v.abs() > s[b].abs() { j } else { b });
        (0..s.len())
            .map(|j| if j == k { s[j].signum() } else { 0.0 })
            .collect()
    } else {
        let smax = s.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        s.iter()
            .map(|&v| {
                if v == 0.0 || smax == 0.0 {
                    0.0
                } else {
                    v.signum() * (v.abs() / smax).powf(q - 1.0)
                }
            })
            .collect()
    };
    let n = phi.len();
    (0..n)
        .map(|i| xs.iter().zip(&weights).map(|(x, w)| w * x[i]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::basis_vector;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn re(v: &[f64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::new(x, 0.0)).collect()
    }

    /// sup over the 2N signed coordinate functionals, evaluated directly.
    fn signed_coordinate_oracle(xs: &[Vec<Scalar>], q: f64) -> f64 {
        let n = xs.first().map_or(0, Vec::len);
        let mut best = 0.0_f64;
        for i in 0..n {
            for s in [1.0, -1.0] {
                let mut acc = 0.0;
                for x in xs {
                    acc += (s * x[i]).norm().powf(q);
                }
                best = best.max(acc.powf(1.0 / q));
            }
        }
        best
    }

    #[test]
    fn linf_examples() {
        let basis: Vec<_> = (1..=5).map(|i| basis_vector(5, i)).collect();
        assert_eq!(weak_lq_norm_linf(&basis, 1.0).unwrap(), 1.0);
        let repeated = vec![basis_vector(3, 1); 7];
        assert_relative_eq!(
            weak_lq_norm_linf(&repeated, 2.0).unwrap(),
            7f64.sqrt(),
            epsilon = 1e-14
        );
        let single = vec![re(&[0.5, -3.0, 2.0])];
        assert_eq!(weak_lq_norm_linf(&single, 1.7).unwrap(), 3.0);
        assert_eq!(weak_lq_norm_linf(&[], 1.0).unwrap(), 0.0);
        assert!(weak_lq_norm_linf(&single, 0.9).is_err());
    }

    #[test]
    fn lp_examples() {
        let basis1 = vec![vec![1.0]];
        assert_relative_eq!(
            weak_lq_norm_lp_estimate(&basis1, 3.0, 1.5, 3, 0).unwrap(),
            1.0,
            epsilon = 1e-12
        );

        let x = vec![vec![1.0, -2.0, 0.5, 3.0]];
        for p in [1.5, 2.0, 4.0] {
            let expect = lr_norm(&[1.0, 2.0, 0.5, 3.0], p);
            assert_relative_eq!(
                weak_lq_norm_lp_estimate(&x, p, 2.0, 3, 4).unwrap(),
                expect,
                epsilon = 1e-10
            );
        }
        let zeros = vec![vec![0.0; 3]; 4];
        assert_eq!(
            weak_lq_norm_lp_estimate(&zeros, 2.0, 1.0, 3, 1).unwrap(),
            0.0
        );
    }

    #[test]
    fn lp_basis_between_bounds() {
        let n = 6;
        let basis: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect())
            .collect();
        let p = 3.0;
        let pstar = conjugate_exponent(p).unwrap();
        let v = weak_lq_norm_lp_estimate(&basis, p, pstar, 10, 2).unwrap();
        assert!(v >= 1.0 - 1e-9 && v <= (n as f64).powf(1.0 / pstar) + 1e-9);
    }

    proptest! {
        #[test]
        fn linf_matches_coordinate_oracle(raw in prop::collection::vec(prop::collection::vec(-4.0f64..4.0, 4), 0..6), q in 1.0f64..5.0) {
            let xs: Vec<Vec<Scalar>> = raw.iter().map(|v| re(v)).collect();
            let a = weak_lq_norm_linf(&xs, q).unwrap();
            let b = signed_coordinate_oracle(&xs, q);
            prop_assert!((a - b).abs() <= 1e-12 * b.max(1.0));
        }
    }
}
