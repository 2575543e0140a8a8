use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RepetitionPattern;
use crate::error::{LabError, Result};
use crate::sum::pairwise_sum;
use crate::tensor::{
    checked_entry_count, CoefficientTensor, Odometer, Scalar, ScalarField, VectorTuple,
};

/// Independent fair signs indexed by `[1, N]^k`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignTensor {
    order: usize,
    dim: usize,
    signs: Vec<i8>,
    seed: u64,
}

impl SignTensor {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// The order-`k` form `sum_i eps_i y^(1)_{i_1} ... y^(k)_{i_k}`.
    pub fn to_tensor(&self) -> CoefficientTensor {
        let entries: Vec<f64> = self.signs.iter().map(|&s| f64::from(s)).collect();
        CoefficientTensor::from_real_entries(self.order, self.dim, &entries)
            .expect("sign tensor shape is valid")
    }
}

/// Draws `N^k` signs from a ChaCha8 stream seeded by `seed`.
pub fn sample_sign_tensor(dim: usize, order: usize, seed: u64) -> Result<SignTensor> {
    if dim == 0 || order == 0 {
        return Err(LabError::invalid("sign tensor needs N >= 1 and k >= 1"));
    }
    let len = checked_entry_count(order, dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signs = (0..len)
        .map(|_| if rng.random::<bool>() { 1 } else { -1 })
        .collect();
    Ok(SignTensor {
        order,
        dim,
        signs,
        seed,
    })
}

/// Order-`n` coefficient tensor of `X(eps, x)`: the entry at a slot index
/// is `eps_i` when every group of slots carries the constant value `i_l`,
/// and 0 otherwise.
pub fn ksz_process_tensor(
    eps: &SignTensor,
    pattern: &RepetitionPattern,
) -> Result<CoefficientTensor> {
    if pattern.groups() != eps.order {
        return Err(LabError::OrderMismatch {
            expected: eps.order,
            found: pattern.groups(),
        });
    }
    let n = pattern.slots();
    let dim = eps.dim;
    let len = checked_entry_count(n, dim)?;
    let mut entries = vec![Scalar::new(0.0, 0.0); len];
    let mut odo = Odometer::new(eps.order, dim);
    let mut flat = 0;
    while let Some(groups) = odo.next_index() {
        let mut offset = 0usize;
        for (&g, &part) in groups.iter().zip(pattern.parts()) {
            for _ in 0..part {
                offset = offset * dim + g;
            }
        }
        entries[offset] = Scalar::new(f64::from(eps.signs[flat]), 0.0);
        flat += 1;
    }
    CoefficientTensor::from_entries(n, dim, ScalarField::Real, entries)
}

/// `N^{k/2}`: the Khinchin-side bound on `||X(., x)||_2` over the unit ball.
pub fn l2_norm_bound(pattern: &RepetitionPattern, dim: usize) -> f64 {
    (dim as f64).powf(pattern.groups() as f64 / 2.0)
}

/// `E|X(., x)|^2 = sum_i |prod of the group coordinates|^2`, using that the
/// signs are orthonormal.
pub fn exact_second_moment(pattern: &RepetitionPattern, x: &VectorTuple) -> Result<f64> {
    if x.slots() != pattern.slots() {
        return Err(LabError::OrderMismatch {
            expected: pattern.slots(),
            found: x.slots(),
        });
    }
    let dim = x.dim();
    let k = pattern.groups();
    checked_entry_count(k, dim)?;
    // per-group products y^(l)_i of the slot coordinates
    let groups = pattern.slot_groups();
    let mut y = vec![vec![1.0_f64; dim]; k];
    for (slot, &g) in groups.iter().enumerate() {
        for (yi, xi) in y[g].iter_mut().zip(x.slot(slot)) {
            *yi *= xi.norm();
        }
    }
    let mut odo = Odometer::new(k, dim);
    let mut terms = Vec::new();
    while let Some(idx) = odo.next_index() {
        let prod: f64 = idx.iter().enumerate().map(|(l, &i)| y[l][i]).product();
        terms.push(prod * prod);
    }
    Ok(pairwise_sum(&terms))
}
