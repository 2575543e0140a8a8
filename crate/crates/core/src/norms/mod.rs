//! Norm engines: conjugate exponents, coefficient power sums, sup-norms over
//! products of `l_inf` / `l_p` unit balls and weak-`l_q` norms of finite
//! vector sequences.

mod ascent;
mod exact;
mod weak;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

pub use ascent::{sup_norm_ascent, sup_norm_ascent_with, AscentOptions};
pub use exact::{sup_norm_linf_exact, sup_norm_linf_exact_with_limit, DEFAULT_ENUMERATION_BITS};
pub use weak::{weak_lq_norm_linf, weak_lq_norm_lp_estimate};

use crate::error::{LabError, Result};
use crate::sum::pairwise_sum;
use crate::tensor::{CoefficientTensor, VectorTuple};

/// Domain ball `l_p^N`; `p = f64::INFINITY` encodes `l_inf^N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallSpec {
    p: f64,
}

impl BallSpec {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(LabError::exponent(p, "ball exponent must satisfy p >= 1"));
        }
        Ok(BallSpec { p })
    }

    pub fn linf() -> Self {
        BallSpec { p: f64::INFINITY }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_linf(&self) -> bool {
        self.p.is_infinite()
    }

    /// `l_p` norm of a vector of moduli.
    pub fn norm_of(&self, moduli: &[f64]) -> f64 {
        lr_norm(moduli, self.p)
    }
}

/// Outcome of a sup-norm computation.
///
/// `exact` is set only by the real `l_inf` enumeration; every other engine
/// returns a lower bound attained at `certificate`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub certificate: VectorTuple,
    pub exact: bool,
}

impl Serialize for NormResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let cert: Vec<Vec<[f64; 2]>> = self
            .certificate
            .vectors()
            .iter()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        let mut st = serializer.serialize_struct("NormResult", 3)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("exact", &self.exact)?;
        st.serialize_field("certificate", &cert)?;
        st.end()
    }
}

/// `q*` with `1/q + 1/q* = 1`; `1 <-> inf`.
pub fn conjugate_exponent(q: f64) -> Result<f64> {
    if q.is_nan() || q < 1.0 {
        return Err(LabError::exponent(q, "conjugate requires q >= 1"));
    }
    Ok(if q == 1.0 {
        f64::INFINITY
    } else if q.is_infinite() {
        1.0
    } else {
        q / (q - 1.0)
    })
}

/// `(sum_i |v_i|^r)^(1/r)` over moduli `v`, with `r = inf` giving the max.
///
/// Terms are rescaled by the largest modulus before powering, so the result
/// is absolutely homogeneous up to rounding and never overflows early.
pub fn lr_norm(moduli: &[f64], r: f64) -> f64 {
    let max = moduli.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    if max == 0.0 {
        return 0.0;
    }
    if r.is_infinite() {
        return max;
    }
    if max == 1.0 {
        let terms: Vec<f64> = moduli.iter().map(|v| v.abs().powf(r)).collect();
        return pairwise_sum(&terms).powf(1.0 / r);
    }
    let terms: Vec<f64> = moduli.iter().map(|v| (v.abs() / max).powf(r)).collect();
    max * pairwise_sum(&terms).powf(1.0 / r)
}

/// `(sum_I |a_I|^r)^(1/r)` over all coefficients.
pub fn mixed_power_sum(t: &CoefficientTensor, r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(LabError::exponent(r, "power sum requires r > 0"));
    }
    let moduli: Vec<f64> = t.entries().iter().map(|a| a.norm()).collect();
    Ok(lr_norm(&moduli, r))
}

/// `N^((p-m)/p)`, the Hölder bound on the norm of the diagonal witness form.
pub fn holder_diag_bound(dim: usize, p: f64, m: usize) -> Result<f64> {
    if p.is_nan() || p <= m as f64 {
        return Err(LabError::exponent(
            p,
            format!("Hölder bound requires p > m = {m}"),
        ));
    }
    let e = if p.is_infinite() {
        1.0
    } else {
        (p - m as f64) / p
    };
    Ok((dim as f64).powf(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn conjugates() {
        assert_eq!(conjugate_exponent(2.0).unwrap(), 2.0);
        assert_relative_eq!(conjugate_exponent(4.0 / 3.0).unwrap(), 4.0, epsilon = 1e-12);
        assert_eq!(conjugate_exponent(1.0).unwrap(), f64::INFINITY);
        assert_eq!(conjugate_exponent(f64::INFINITY).unwrap(), 1.0);
        assert!(conjugate_exponent(0.5).is_err());
    }

    #[test]
    fn power_sums() {
        let lw = CoefficientTensor::from_real_entries(2, 2, &[1.0, 1.0, 1.0, -1.0]).unwrap();
        assert_relative_eq!(
            mixed_power_sum(&lw, 4.0 / 3.0).unwrap(),
            4f64.powf(0.75),
            epsilon = 1e-12
        );
        let id = CoefficientTensor::from_real_fn(2, 3, |i| {
            (i.components()[0] == i.components()[1]) as u8 as f64
        })
        .unwrap();
        assert_relative_eq!(
            mixed_power_sum(&id, 2.0).unwrap(),
            3f64.sqrt(),
            epsilon = 1e-15
        );
        let z = CoefficientTensor::from_real_fn(3, 2, |_| 0.0).unwrap();
        assert_eq!(mixed_power_sum(&z, 1.5).unwrap(), 0.0);
        assert!(mixed_power_sum(&z, 0.0).is_err());
    }

    #[test]
    fn holder_bounds() {
        assert_relative_eq!(
            holder_diag_bound(4, 5.0, 3).unwrap(),
            4f64.powf(0.4),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            holder_diag_bound(4, 5.0, 3).unwrap(),
            1.7411011265922482,
            epsilon = 1e-12
        );
        assert_eq!(holder_diag_bound(1, 7.0, 2).unwrap(), 1.0);
        assert_relative_eq!(holder_diag_bound(16, 4.0, 2).unwrap(), 4.0, epsilon = 1e-15);
        assert!(holder_diag_bound(4, 3.0, 3).is_err());
    }

    proptest! {
        #[test]
        fn power_sum_decreases_in_r(entries in prop::collection::vec(-3.0f64..3.0, 8), r1 in 0.5f64..4.0, dr in 0.01f64..3.0) {
            let t = CoefficientTensor::from_real_entries(3, 2, &entries).unwrap();
            let a = mixed_power_sum(&t, r1).unwrap();
            let b = mixed_power_sum(&t, r1 + dr).unwrap();
            prop_assert!(b <= a * (1.0 + 1e-12));
        }

        #[test]
        fn power_sum_homogeneous(entries in prop::collection::vec(-3.0f64..3.0, 9), alpha in -50.0f64..50.0, r in 0.5f64..4.0) {
            let t = CoefficientTensor::from_real_entries(2, 3, &entries).unwrap();
            let s = t.scaled(crate::tensor::Scalar::new(alpha, 0.0)).unwrap();
            let lhs = mixed_power_sum(&s, r).unwrap();
            let rhs = alpha.abs() * mixed_power_sum(&t, r).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
        }
    }
}
