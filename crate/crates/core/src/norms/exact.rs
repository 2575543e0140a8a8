//! Exact sup-norm over products of real `l_inf^N` unit balls.
//!
//! A multilinear form is affine in each argument, so its modulus attains its
//! maximum over a product of cubes at sign vectors. The first `m-1` arguments
//! are enumerated (with the first coordinate of the first argument pinned to
//! `+1`, since `|U|` is invariant under `x^(1) -> -x^(1)`) and the last one is
//! closed in the form `sup_{|x_i|<=1} |sum c_i x_i| = sum |c_i|`.
//!
//! The deepest enumerated slot walks its sign vectors in Gray-code order and
//! updates the contracted vector by one row per step; every
//! [`REFRESH`] steps the vector is recomputed from scratch to bound drift.

use super::NormResult;
use crate::error::{LabError, Result};
use crate::tensor::{CoefficientTensor, ScalarField, VectorTuple};

/// Default enumeration guard: `N(m-1) <= 24`.
pub const DEFAULT_ENUMERATION_BITS: u32 = 24;

const REFRESH: usize = 256;

pub fn sup_norm_linf_exact(t: &CoefficientTensor) -> Result<NormResult> {
    sup_norm_linf_exact_with_limit(t, DEFAULT_ENUMERATION_BITS)
}

/// Same as [`sup_norm_linf_exact`] with an explicit bound on `N(m-1)`.
pub fn sup_norm_linf_exact_with_limit(t: &CoefficientTensor, max_bits: u32) -> Result<NormResult> {
    if t.field() != ScalarField::Real {
        return Err(LabError::UnsupportedExact);
    }
    let m = t.order();
    let n = t.dim();
    let bits = (n as u64).saturating_mul(m.saturating_sub(1) as u64);
    if bits > max_bits as u64 {
        return Err(LabError::Guard {
            what: format!("sign enumeration bits N(m-1) (N={n}, m={m})"),
            value: bits,
            limit: max_bits as u64,
        });
    }
    let a = t.real_entries().expect("real field");

    let mut certificate: Vec<Vec<f64>> = if m == 1 {
        vec![a.iter().map(|&c| sign(c)).collect()]
    } else {
        let mut search = Search {
            n,
            m,
            best: -1.0,
            prefix: vec![Vec::new(); m - 1],
            best_cert: Vec::new(),
        };
        search.descend(0, &a);
        search.best_cert
    };
    debug_assert_eq!(certificate.len(), m);

    let tuple = VectorTuple::real(std::mem::take(&mut certificate))?;
    let value = t.eval(&tuple)?.norm();
    Ok(NormResult {
        value,
        certificate: tuple,
        exact: true,
    })
}

#[inline]
fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

struct Search {
    n: usize,
    m: usize,
    best: f64,
    prefix: Vec<Vec<f64>>,
    best_cert: Vec<Vec<f64>>,
}

impl Search {
    /// `coeffs` is the partially contracted tensor whose leading slot is `level`.
    fn descend(&mut self, level: usize, coeffs: &[f64]) {
        let n = self.n;
        let stride = coeffs.len() / n;
        let pinned = usize::from(level == 0);
        let free_bits = n - pinned;
        let states = 1usize << free_bits;
        let mut signs = vec![1.0; n];

        if level + 2 == self.m {
            let mut c = vec![0.0; n];
            contract(coeffs, &signs, &mut c);
            self.visit(level, &signs, &c);
            for step in 1..states {
                let i = step.trailing_zeros() as usize + pinned;
                signs[i] = -signs[i];
                if step % REFRESH == 0 {
                    contract(coeffs, &signs, &mut c);
                } else {
                    let row = &coeffs[i * n..(i + 1) * n];
                    let s2 = 2.0 * signs[i];
                    for (cj, &r) in c.iter_mut().zip(row) {
                        *cj += s2 * r;
                    }
                }
                self.visit(level, &signs, &c);
            }
        } else {
            let mut next = vec![0.0; stride];
            for state in 0..states {
                for (b, s) in signs.iter_mut().skip(pinned).enumerate() {
                    *s = if (state >> b) & 1 == 1 { -1.0 } else { 1.0 };
                }
                contract(coeffs, &signs, &mut next);
                self.prefix[level].clone_from(&signs);
                self.descend(level + 1, &next);
            }
        }
    }

    fn visit(&mut self, level: usize, signs: &[f64], c: &[f64]) {
        let v: f64 = c.iter().map(|x| x.abs()).sum();
        if v > self.best {
            self.best = v;
            let mut cert = self.prefix[..level].to_vec();
            cert.push(signs.to_vec());
            cert.push(c.iter().map(|&x| sign(x)).collect());
            self.best_cert = cert;
        }
    }
}

/// `out[k] = sum_i s_i coeffs[i * stride + k]`.
fn contract(coeffs: &[f64], signs: &[f64], out: &mut [f64]) {
    let stride = out.len();
    out.iter_mut().for_each(|o| *o = 0.0);
    for (i, &s) in signs.iter().enumerate() {
        let row = &coeffs[i * stride..(i + 1) * stride];
        for (o, &r) in out.iter_mut().zip(row) {
            *o += s * r;
        }
    }
}
