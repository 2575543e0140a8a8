use std::collections::HashSet;

use crate::error::{LabError, Result};
use crate::pairing::BijectionSpec;
use crate::tensor::{CoefficientTensor, MultiIndex, Scalar, ScalarField};

/// Default bijections for the witness: `m - 2` copies of the
/// diagonal-first map, which sends `(i, i)` to `i`.
pub fn default_witness_sigmas(dim: usize, m: usize) -> Vec<BijectionSpec> {
    vec![BijectionSpec::diagonal_first(2, dim); m.saturating_sub(2)]
}

/// `U(x^(1), ..., x^(m)) = sum_{i=1}^N x^(1)_i x^(2)_i x^(3)_{sigma_1(i,i)} ... x^(m)_{sigma_{m-2}(i,i)}`.
///
/// The tensor dimension is the largest index used, so it is `N` whenever
/// every `sigma_k(i, i) <= N`.
pub fn diagonal_witness(
    dim: usize,
    m: usize,
    sigmas: &[BijectionSpec],
) -> Result<CoefficientTensor> {
    if dim == 0 || m < 2 {
        return Err(LabError::invalid(format!(
            "witness needs N >= 1 and m >= 2, got N={dim}, m={m}"
        )));
    }
    if sigmas.len() != m - 2 {
        return Err(LabError::invalid(format!(
            "order-{m} witness needs {} bijections, got {}",
            m - 2,
            sigmas.len()
        )));
    }
    let mut rows = Vec::with_capacity(dim);
    let mut size = dim;
    for i in 1..=dim {
        let mut row = vec![i, i];
        for s in sigmas {
            let image = s.pair(&[i, i])?;
            let image = usize::try_from(image).map_err(|_| {
                LabError::Pairing(format!("image {image} of ({i},{i}) under {s} out of range"))
            })?;
            size = size.max(image);
            row.push(image);
        }
        rows.push(row);
    }
    for (k, s) in sigmas.iter().enumerate() {
        let images: HashSet<usize> = rows.iter().map(|r| r[2 + k]).collect();
        if images.len() != dim {
            return Err(LabError::Pairing(format!(
                "{s} repeats an image on the diagonal"
            )));
        }
    }
    let terms: Vec<(MultiIndex, Scalar)> = rows
        .into_iter()
        .map(|r| (r.into(), Scalar::new(1.0, 0.0)))
        .collect();
    CoefficientTensor::from_sparse(m, size, ScalarField::Real, &terms)
}
