//! Dense coefficient tensors of m-linear forms on `K^N x ... x K^N`.
//!
//! A form `U` is stored through its values on canonical basis vectors,
//! `a_I = U(e_{i_1}, ..., e_{i_m})`, laid out row-major with the first slot
//! most significant. Indices are 1-based at the public boundary
//! ([`MultiIndex`]) and 0-based internally.

mod text;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::sum::pairwise_sum;

/// Scalars are stored as pairs of doubles; real tensors keep a zero imaginary part.
pub type Scalar = Complex64;

/// Largest number of coefficients a dense tensor may hold.
pub const MAX_ENTRIES: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarField {
    Real,
    Complex,
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Real => f.write_str("real"),
            ScalarField::Complex => f.write_str("complex"),
        }
    }
}

impl FromStr for ScalarField {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(ScalarField::Real),
            "complex" | "c" => Ok(ScalarField::Complex),
            other => Err(LabError::invalid(format!("unknown scalar field `{other}`"))),
        }
    }
}

/// A 1-based multi-index `(i_1, ..., i_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex(components)
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    fn from_zero_based(idx: &[usize]) -> Self {
        MultiIndex(idx.iter().map(|&i| i + 1).collect())
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl<const K: usize> From<[usize; K]> for MultiIndex {
    fn from(v: [usize; K]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// Odometer over `[0, dim)^order` in lexicographic order.
pub(crate) struct Odometer {
    idx: Vec<usize>,
    dim: usize,
    started: bool,
    done: bool,
}

impl Odometer {
    pub(crate) fn new(order: usize, dim: usize) -> Self {
        Odometer {
            idx: vec![0; order],
            dim,
            started: false,
            done: dim == 0 && order > 0,
        }
    }

    /// Advances and returns the current index, or `None` once exhausted.
    pub(crate) fn next_index(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        for slot in (0..self.idx.len()).rev() {
            self.idx[slot] += 1;
            if self.idx[slot] < self.dim {
                return Some(&self.idx);
            }
            self.idx[slot] = 0;
        }
        self.done = true;
        None
    }
}

pub(crate) fn checked_entry_count(order: usize, dim: usize) -> Result<usize> {
    let mut count: u64 = 1;
    for _ in 0..order {
        count = count.saturating_mul(dim as u64);
    }
    if count > MAX_ENTRIES {
        return Err(LabError::Guard {
            what: format!("tensor entries N^m (N={dim}, m={order})"),
            value: count,
            limit: MAX_ENTRIES,
        });
    }
    Ok(count as usize)
}

/// Dense order-m array of scalars describing an m-linear form.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTensor {
    order: usize,
    dim: usize,
    field: ScalarField,
    entries: Vec<Scalar>,
}

impl CoefficientTensor {
    /// Builds a tensor with `a_I = f(I)` for every `I` in `[1, N]^m`.
    pub fn from_coefficient_fn<F>(
        order: usize,
        dim: usize,
        field: ScalarField,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(&MultiIndex) -> Scalar,
    {
        if order == 0 {
            return Err(LabError::invalid("tensor order must be at least 1"));
        }
        if dim == 0 {
            return Err(LabError::invalid("tensor dimension must be at least 1"));
        }
        let count = checked_entry_count(order, dim)?;
        let mut entries = Vec::with_capacity(count);
        let mut odo = Odometer::new(order, dim);
        while let Some(idx) = odo.next_index() {
            let mi = MultiIndex::from_zero_based(idx);
            entries.push(f(&mi));
        }
        Self::from_entries(order, dim, field, entries)
    }

    /// Real-field convenience wrapper around [`Self::from_coefficient_fn`].
    pub fn from_real_fn<F>(order: usize, dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&MultiIndex) -> f64,
    {
        Self::from_coefficient_fn(order, dim, ScalarField::Real, |i| Scalar::new(f(i), 0.0))
    }

    /// Takes ownership of row-major entries, validating count and finiteness.
    pub fn from_entries(
        order: usize,
        dim: usize,
        field: ScalarField,
        entries: Vec<Scalar>,
    ) -> Result<Self> {
        let count = checked_entry_count(order, dim)?;
        if entries.len() != count {
            return Err(LabError::DimensionMismatch {
                expected: count,
                found: entries.len(),
            });
        }
        for (flat, a) in entries.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(LabError::NonFinite {
                    index: unflatten(flat, order, dim),
                });
            }
            if field == ScalarField::Real && a.im != 0.0 {
                return Err(LabError::ImaginaryInReal {
                    index: unflatten(flat, order, dim),
                });
            }
        }
        Ok(CoefficientTensor {
            order,
            dim,
            field,
            entries,
        })
    }

    pub fn from_real_entries(order: usize, dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_entries(
            order,
            dim,
            ScalarField::Real,
            entries.iter().map(|&x| Scalar::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(order: usize, dim: usize, field: ScalarField) -> Result<Self> {
        let count = checked_entry_count(order, dim)?;
        Self::from_entries(order, dim, field, vec![Scalar::new(0.0, 0.0); count])
    }

    /// Zero tensor with the listed coefficients set; later duplicates win.
    pub fn from_sparse(
        order: usize,
        dim: usize,
        field: ScalarField,
        terms: &[(MultiIndex, Scalar)],
    ) -> Result<Self> {
        let mut t = Self::zeros(order, dim, field)?;
        for (index, a) in terms {
            let flat = t.flat_index(index.components())?;
            t.entries[flat] = *a;
        }
        Self::from_entries(order, dim, field, t.entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Row-major entries, first slot most significant.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Real parts of the entries; `None` for complex tensors.
    pub fn real_entries(&self) -> Option<Vec<f64>> {
        match self.field {
            ScalarField::Real => Some(self.entries.iter().map(|a| a.re).collect()),
            ScalarField::Complex => None,
        }
    }

    /// Coefficient at a 1-based multi-index.
    pub fn get(&self, index: &MultiIndex) -> Result<Scalar> {
        Ok(self.entries[self.flat_index(index.components())?])
    }

    fn flat_index(&self, one_based: &[usize]) -> Result<usize> {
        if one_based.len() != self.order {
            return Err(LabError::OrderMismatch {
                expected: self.order,
                found: one_based.len(),
            });
        }
        let mut flat = 0usize;
        for &i in one_based {
            if i == 0 || i > self.dim {
                return Err(LabError::IndexOutOfRange {
                    index: one_based.to_vec(),
                    dim: self.dim,
                });
            }
            flat = flat * self.dim + (i - 1);
        }
        Ok(flat)
    }

    /// Copy with every coefficient multiplied by `alpha`.
    pub fn scaled(&self, alpha: Scalar) -> Result<Self> {
        if self.field == ScalarField::Real && alpha.im != 0.0 {
            return Err(LabError::FieldMismatch {
                expected: ScalarField::Real,
                found: ScalarField::Complex,
            });
        }
        Self::from_entries(
            self.order,
            self.dim,
            self.field,
            self.entries.iter().map(|&a| a * alpha).collect(),
        )
    }

    /// Count of nonzero coefficients.
    pub fn nonzero_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|a| a.re != 0.0 || a.im != 0.0)
            .count()
    }

    fn check_tuple(&self, x: &VectorTuple) -> Result<()> {
        if x.field != self.field {
            return Err(LabError::FieldMismatch {
                expected: self.field,
                found: x.field,
            });
        }
        if x.vectors.len() != self.order {
            return Err(LabError::OrderMismatch {
                expected: self.order,
                found: x.vectors.len(),
            });
        }
        if self.order > 0 && x.dim() != self.dim {
            return Err(LabError::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// `U(x^(1), ..., x^(m)) = sum_I a_I x^(1)_{i_1} ... x^(m)_{i_m}`.
    ///
    /// Terms are formed in lexicographic index order and reduced with
    /// [`pairwise_sum`], so the value is bit-reproducible.
    pub fn eval(&self, x: &VectorTuple) -> Result<Scalar> {
        self.check_tuple(x)?;
        if self.order == 0 {
            return Ok(self.entries[0]);
        }
        let mut terms = Vec::with_capacity(self.entries.len());
        let mut odo = Odometer::new(self.order, self.dim);
        let mut flat = 0;
        while let Some(idx) = odo.next_index() {
            let mut term = self.entries[flat];
            for (slot, &i) in idx.iter().enumerate() {
                term *= x.vectors[slot][i];
            }
            terms.push(term);
            flat += 1;
        }
        Ok(pairwise_sum(&terms))
    }

    /// Contracts the last slot with `v`, producing an order `m-1` tensor.
    pub fn contract_last(&self, v: &[Scalar]) -> Result<CoefficientTensor> {
        if self.order == 0 {
            return Err(LabError::invalid("cannot contract an order-0 tensor"));
        }
        if v.len() != self.dim {
            return Err(LabError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let field = if self.field == ScalarField::Real && v.iter().all(|z| z.im == 0.0) {
            ScalarField::Real
        } else if self.field == ScalarField::Complex {
            ScalarField::Complex
        } else {
            return Err(LabError::FieldMismatch {
                expected: ScalarField::Real,
                found: ScalarField::Complex,
            });
        };
        let mut terms = vec![Scalar::new(0.0, 0.0); self.dim];
        let entries = self
            .entries
            .chunks(self.dim)
            .map(|row| {
                for (t, (&a, &vi)) in terms.iter_mut().zip(row.iter().zip(v)) {
                    *t = a * vi;
                }
                pairwise_sum(&terms)
            })
            .collect();
        Ok(CoefficientTensor {
            order: self.order - 1,
            dim: self.dim,
            field,
            entries,
        })
    }

    /// Coefficients `c` of the linear form obtained by fixing every slot of
    /// `x` except `free`: `U(x) = sum_j c_j x^(free)_j`.
    pub fn slot_coefficients(&self, x: &VectorTuple, free: usize) -> Result<Vec<Scalar>> {
        self.check_tuple(x)?;
        if free >= self.order {
            return Err(LabError::invalid(format!(
                "slot {free} out of range for order {}",
                self.order
            )));
        }
        Ok(slot_coefficients_raw(
            &self.entries,
            self.order,
            self.dim,
            &x.vectors,
            free,
        ))
    }
}

/// Buckets the terms of `U(x)` by the index of the free slot and reduces each
/// bucket pairwise in lexicographic order.
pub(crate) fn slot_coefficients_raw(
    entries: &[Scalar],
    order: usize,
    dim: usize,
    vectors: &[Vec<Scalar>],
    free: usize,
) -> Vec<Scalar> {
    let per_bucket = entries.len() / dim;
    let mut buckets: Vec<Vec<Scalar>> = (0..dim).map(|_| Vec::with_capacity(per_bucket)).collect();
    let mut odo = Odometer::new(order, dim);
    let mut flat = 0;
    while let Some(idx) = odo.next_index() {
        let mut term = entries[flat];
        for (slot, &i) in idx.iter().enumerate() {
            if slot != free {
                term *= vectors[slot][i];
            }
        }
        buckets[idx[free]].push(term);
        flat += 1;
    }
    buckets.iter().map(|b| pairwise_sum(b)).collect()
}

pub(crate) fn unflatten(mut flat: usize, order: usize, dim: usize) -> Vec<usize> {
    let mut idx = vec![0; order];
    for slot in (0..order).rev() {
        idx[slot] = flat % dim + 1;
        flat /= dim;
    }
    idx
}

/// Arguments `(x^(1), ..., x^(m))`, one vector per slot.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorTuple {
    field: ScalarField,
    vectors: Vec<Vec<Scalar>>,
}

impl VectorTuple {
    pub fn new(field: ScalarField, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        if let Some(first) = vectors.first() {
            let n = first.len();
            for v in &vectors {
                if v.len() != n {
                    return Err(LabError::DimensionMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
            }
        }
        for (slot, v) in vectors.iter().enumerate() {
            for (i, z) in v.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(LabError::NonFinite {
                        index: vec![slot + 1, i + 1],
                    });
                }
                if field == ScalarField::Real && z.im != 0.0 {
                    return Err(LabError::ImaginaryInReal {
                        index: vec![slot + 1, i + 1],
                    });
                }
            }
        }
        Ok(VectorTuple { field, vectors })
    }

    pub fn real(vectors: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(
            ScalarField::Real,
            vectors
                .into_iter()
                .map(|v| v.into_iter().map(|x| Scalar::new(x, 0.0)).collect())
                .collect(),
        )
    }

    /// Tuple of canonical basis vectors `(e_{i_1}, ..., e_{i_m})` in `K^dim`.
    pub fn basis(field: ScalarField, dim: usize, index: &MultiIndex) -> Result<Self> {
        let vectors = index
            .components()
            .iter()
            .map(|&i| {
                if i == 0 || i > dim {
                    return Err(LabError::IndexOutOfRange {
                        index: index.components().to_vec(),
                        dim,
                    });
                }
                Ok(basis_vector(dim, i))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, vectors)
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    /// Length of each vector (0 for an empty tuple).
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn slots(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn slot(&self, i: usize) -> &[Scalar] {
        &self.vectors[i]
    }

    pub fn into_vectors(self) -> Vec<Vec<Scalar>> {
        self.vectors
    }

    /// Copy with slot `i` replaced.
    pub fn with_slot(&self, i: usize, v: Vec<Scalar>) -> Result<Self> {
        let mut vectors = self.vectors.clone();
        vectors[i] = v;
        Self::new(self.field, vectors)
    }
}

/// Canonical basis vector `e_i` (1-based) of length `dim`.
pub fn basis_vector(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::new(0.0, 0.0); dim];
    v[i - 1] = Scalar::new(1.0, 0.0);
    v
}
