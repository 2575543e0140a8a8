use std::collections::HashSet;

use crate::error::{LabError, Result};
use crate::ksz::RepetitionPattern;
use crate::norms::lr_norm;
use crate::pairing::BijectionSpec;
use crate::tensor::{CoefficientTensor, Odometer, Scalar};

/// Coefficients `a_{i, sigma_1(i), ..., sigma_{n-m}(i)}` for core tuples
/// `i` in `[1, K]^m`, lexicographically; `K` defaults to the tensor
/// dimension. Tuples with an image beyond the tensor dimension are skipped.
pub fn diagonal_restriction_terms(
    t: &CoefficientTensor,
    m: usize,
    sigmas: &[BijectionSpec],
    core_dim: Option<usize>,
) -> Result<Vec<Scalar>> {
    let n = t.order();
    if m == 0 || m > n {
        return Err(LabError::invalid(format!(
            "core arity {m} must lie in [1, {n}]"
        )));
    }
    if sigmas.len() != n - m {
        return Err(LabError::invalid(format!(
            "an order-{n} tensor with core arity {m} needs {} bijections, got {}",
            n - m,
            sigmas.len()
        )));
    }
    if let Some(s) = sigmas.iter().find(|s| s.arity() != m) {
        return Err(LabError::Pairing(format!(
            "bijection {s} has arity {}, expected {m}",
            s.arity()
        )));
    }
    let dim = t.dim();
    let core = core_dim.unwrap_or(dim);
    let mut seen: Vec<HashSet<u64>> = vec![HashSet::new(); sigmas.len()];
    let mut odo = Odometer::new(m, core);
    let mut terms = Vec::new();
    let mut full = vec![0usize; n];
    while let Some(idx) = odo.next_index() {
        let mut inside = true;
        for (k, i) in idx.iter().enumerate() {
            full[k] = i + 1;
        }
        for (k, sigma) in sigmas.iter().enumerate() {
            let image = sigma.pair(&full[..m])?;
            if !seen[k].insert(image) {
                return Err(LabError::Pairing(format!(
                    "bijection {sigma} is not injective: repeated image {image}"
                )));
            }
            if image > dim as u64 {
                inside = false;
            } else {
                full[m + k] = image as usize;
            }
        }
        if inside {
            if full[..m].iter().any(|&i| i > dim) {
                continue;
            }
            terms.push(t.get(&full.clone().into())?);
        }
    }
    Ok(terms)
}

/// `(sum |a_{i, sigma(i)}|^r)^{1/r}` over the terms of
/// [`diagonal_restriction_terms`]; with no bijections it is the full power sum.
pub fn diagonal_restriction_sum(
    t: &CoefficientTensor,
    m: usize,
    sigmas: &[BijectionSpec],
    r: f64,
    core_dim: Option<usize>,
) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(LabError::exponent(r, "power sum requires r > 0"));
    }
    let moduli: Vec<f64> = diagonal_restriction_terms(t, m, sigmas, core_dim)?
        .iter()
        .map(|a| a.norm())
        .collect();
    Ok(lr_norm(&moduli, r))
}

/// Coefficients `U(e_{i_1} x n_1, ..., e_{i_k} x n_k)` over group values
/// `(i_1, ..., i_k)` in `[1, N]^k`, lexicographically.
pub fn repeated_index_terms(
    t: &CoefficientTensor,
    pattern: &RepetitionPattern,
) -> Result<Vec<Scalar>> {
    if pattern.slots() != t.order() {
        return Err(LabError::OrderMismatch {
            expected: t.order(),
            found: pattern.slots(),
        });
    }
    let mut odo = Odometer::new(pattern.groups(), t.dim());
    let mut terms = Vec::new();
    while let Some(idx) = odo.next_index() {
        let groups: Vec<usize> = idx.iter().map(|i| i + 1).collect();
        terms.push(t.get(&pattern.expand(&groups).into())?);
    }
    Ok(terms)
}

/// `(sum |U(e_{i_1} x n_1, ...)|^r)^{1/r}`.
pub fn repeated_index_sum(
    t: &CoefficientTensor,
    pattern: &RepetitionPattern,
    r: f64,
) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(LabError::exponent(r, "power sum requires r > 0"));
    }
    let moduli: Vec<f64> = repeated_index_terms(t, pattern)?
        .iter()
        .map(|a| a.norm())
        .collect();
    Ok(lr_norm(&moduli, r))
}
