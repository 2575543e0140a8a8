use serde::Serialize;

use super::NormMethod;
use crate::error::{LabError, Result};
use crate::norms::{
    lr_norm, sup_norm_ascent, sup_norm_linf_exact, weak_lq_norm_linf, BallSpec, NormResult,
};
use crate::pairing::BijectionSpec;
use crate::tensor::{basis_vector, CoefficientTensor, Odometer, Scalar, VectorTuple};

/// A finite sequence of vectors in `K^N`.
pub type Sequence = Vec<Vec<Scalar>>;

/// Both sides of a multiple summing inequality on `l_inf^N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummingReport {
    pub lhs: f64,
    pub norm: NormResult,
    /// `prod_k ||core_k||_{w,q_k} * prod_k ||tail_k||_{w,1}`.
    pub weak_product: f64,
    pub ratio: f64,
    pub certified: bool,
}

/// `(sum_i |U(x^(1)_{i_1}, ..., x^(m)_{i_m}, x^(m+1)_i, ..., x^(n)_i)|^p)^{1/p}`
/// divided by `C ||U|| prod ||core_k||_{w,q_k} prod ||tail_k||_{w,1}`.
///
/// Each core sequence has `J` vectors; each tail sequence has `J^m` vectors
/// listed row-major over `i` in `[1, J]^m`.
#[allow(clippy::too_many_arguments)]
pub fn multiple_summing_ratio(
    t: &CoefficientTensor,
    m: usize,
    core: &[Sequence],
    tail: &[Sequence],
    p: f64,
    qs: &[f64],
    constant: f64,
    method: NormMethod,
) -> Result<SummingReport> {
    let n = t.order();
    if m == 0 || m > n || core.len() != m || tail.len() != n - m || qs.len() != m {
        return Err(LabError::invalid(format!(
            "order-{n} form with core {m} needs {m} core sequences, {} tails and {m} exponents; got {}, {}, {}",
            n.saturating_sub(m),
            core.len(),
            tail.len(),
            qs.len()
        )));
    }
    let count = core[0].len();
    if let Some(c) = core.iter().find(|c| c.len() != count) {
        return Err(LabError::DimensionMismatch {
            expected: count,
            found: c.len(),
        });
    }
    let cells = count
        .checked_pow(m as u32)
        .ok_or_else(|| LabError::invalid("too many index cells"))?;
    if let Some(x) = tail.iter().find(|x| x.len() != cells) {
        return Err(LabError::DimensionMismatch {
            expected: cells,
            found: x.len(),
        });
    }
    if p.is_nan() || p <= 0.0 {
        return Err(LabError::exponent(p, "summing exponent must be positive"));
    }

    let mut values = Vec::with_capacity(cells);
    let mut odo = Odometer::new(m, count);
    let mut cell = 0;
    while let Some(idx) = odo.next_index() {
        let mut vectors: Vec<Vec<Scalar>> = idx
            .iter()
            .enumerate()
            .map(|(k, &i)| core[k][i].clone())
            .collect();
        vectors.extend(tail.iter().map(|x| x[cell].clone()));
        let x = VectorTuple::new(t.field(), vectors)?;
        values.push(t.eval(&x)?.norm());
        cell += 1;
    }
    let lhs = lr_norm(&values, p);

    let mut weak_product = 1.0;
    for (seq, &q) in core.iter().zip(qs) {
        weak_product *= weak_lq_norm_linf(seq, q)?;
    }
    for seq in tail {
        weak_product *= weak_lq_norm_linf(seq, 1.0)?;
    }
    let norm = match method {
        NormMethod::ExactLinf => sup_norm_linf_exact(t)?,
        NormMethod::Ascent { restarts, seed } => {
            sup_norm_ascent(t, BallSpec::linf(), restarts, seed)
        }
    };
    let denom = constant * norm.value * weak_product;
    let ratio = if lhs == 0.0 {
        0.0
    } else if denom == 0.0 {
        f64::INFINITY
    } else {
        lhs / denom
    };
    Ok(SummingReport {
        lhs,
        certified: norm.exact,
        norm,
        weak_product,
        ratio,
    })
}

/// Canonical inputs `x^(k)_i = e_i` for `i <= J` and
/// `x^(m+k)_i = e_{sigma_k(i)}` (zero when the image exceeds `N`).
pub fn canonical_sequences(
    dim: usize,
    m: usize,
    sigmas: &[BijectionSpec],
    count: usize,
) -> Result<(Vec<Sequence>, Vec<Sequence>)> {
    if count > dim {
        return Err(LabError::invalid(format!(
            "{count} basis vectors do not fit in dimension {dim}"
        )));
    }
    let basis: Vec<Vec<Scalar>> = (1..=count).map(|i| basis_vector(dim, i)).collect();
    let core = vec![basis; m];
    let mut tail = Vec::with_capacity(sigmas.len());
    for s in sigmas {
        let mut seq = Vec::new();
        let mut odo = Odometer::new(m, count);
        while let Some(idx) = odo.next_index() {
            let tuple: Vec<usize> = idx.iter().map(|i| i + 1).collect();
            let image = s.pair(&tuple)?;
            seq.push(if image <= dim as u64 {
                basis_vector(dim, image as usize)
            } else {
                vec![Scalar::new(0.0, 0.0); dim]
            });
        }
        tail.push(seq);
    }
    Ok((core, tail))
}
