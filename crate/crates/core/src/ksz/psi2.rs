use serde::Serialize;

use crate::error::{LabError, Result};
use crate::sum::pairwise_sum;

/// Empirical Orlicz norm `inf{c > 0 : mean(exp(X^2/c^2) - 1) <= 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Psi2Estimate {
    pub value: f64,
    pub samples: usize,
    /// Relative width of the bisection bracket at termination.
    pub bracket_width: f64,
}

/// `mean(psi_2(|x|/c))` with `psi_2(t) = exp(t^2) - 1`.
pub fn psi2_mean(samples: &[f64], c: f64) -> f64 {
    let terms: Vec<f64> = samples
        .iter()
        .map(|x| ((x / c) * (x / c)).exp_m1())
        .collect();
    pairwise_sum(&terms) / samples.len() as f64
}

/// Bisection on the decreasing map `c -> mean(psi_2(|X|/c))` over
/// `[M/1000, 1000 M]`, `M = max|X| / sqrt(ln 2)`, until the bracket's
/// relative width drops below `tol`. Returns the upper end, where the mean
/// is at most 1.
pub fn psi2_norm_estimate(samples: &[f64], tol: f64) -> Result<Psi2Estimate> {
    if samples.is_empty() {
        return Err(LabError::invalid("psi2 estimate needs at least one sample"));
    }
    if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
        return Err(LabError::invalid(format!("sample {i} is not finite")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(LabError::invalid(format!("tolerance {tol} outside (0, 1)")));
    }
    let max = samples.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if max == 0.0 {
        return Ok(Psi2Estimate {
            value: 0.0,
            samples: samples.len(),
            bracket_width: 0.0,
        });
    }
    let anchor = max / std::f64::consts::LN_2.sqrt();
    let mut lo = anchor * 1e-3;
    let mut hi = anchor * 1e3;
    let mut width = (hi - lo) / hi;
    while width >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if psi2_mean(samples, mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        width = (hi - lo) / hi;
    }
    Ok(Psi2Estimate {
        value: hi,
        samples: samples.len(),
        bracket_width: width,
    })
}
