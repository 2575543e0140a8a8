use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{default_witness_sigmas, diagonal_restriction_sum, diagonal_witness};
use crate::error::{LabError, Result};
use crate::experiment::{loglog_slope, ExperimentRecord};
use crate::norms::{holder_diag_bound, sup_norm_ascent, BallSpec};
use crate::tensor::{Scalar, VectorTuple};

/// Denominator of a scan ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Denominator {
    /// Closed-form Hölder bound.
    Holder,
    /// Exact sup-norm.
    Exact,
    /// Ascent lower bound on the sup-norm.
    Ascent,
}

impl FromStr for Denominator {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "holder" => Ok(Denominator::Holder),
            "exact" => Ok(Denominator::Exact),
            "ascent" => Ok(Denominator::Ascent),
            other => Err(LabError::invalid(format!("unknown denominator `{other}`"))),
        }
    }
}

/// A dimension-indexed family of forms with a left-hand side at exponent `s`.
pub trait ScanFamily: Sync {
    fn name(&self) -> String;

    fn lhs(&self, dim: usize, s: f64) -> Result<f64>;

    /// Denominator value and whether it is exact.
    fn denominator(&self, dim: usize, denom: Denominator, seed: u64) -> Result<(f64, bool)>;
}

/// The diagonal witness `sum_i x_i y_i z_{sigma(i,i)} ...` on `l_p^N`, `m < p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalWitnessFamily {
    pub m: usize,
    pub p: f64,
    pub restarts: usize,
}

impl DiagonalWitnessFamily {
    pub fn new(m: usize, p: f64) -> Result<Self> {
        if m < 2 || p.is_nan() || p <= m as f64 {
            return Err(LabError::exponent(
                p,
                format!("witness family needs m >= 2 and p > m = {m}"),
            ));
        }
        Ok(DiagonalWitnessFamily { m, p, restarts: 20 })
    }

    /// Value of the witness at the constant vectors `N^{-1/p} (1, ..., 1)`,
    /// which meets the Hölder bound.
    pub fn uniform_value(&self, dim: usize) -> Result<f64> {
        let t = diagonal_witness(dim, self.m, &default_witness_sigmas(dim, self.m))?;
        let c = if self.p.is_infinite() {
            1.0
        } else {
            (t.dim() as f64).powf(-1.0 / self.p)
        };
        let x = VectorTuple::new(t.field(), vec![vec![Scalar::new(c, 0.0); t.dim()]; self.m])?;
        Ok(t.eval(&x)?.norm())
    }
}

impl ScanFamily for DiagonalWitnessFamily {
    fn name(&self) -> String {
        "prop90".into()
    }

    fn lhs(&self, dim: usize, s: f64) -> Result<f64> {
        let sigmas = default_witness_sigmas(dim, self.m);
        let t = diagonal_witness(dim, self.m, &sigmas)?;
        diagonal_restriction_sum(&t, 2, &sigmas, s, Some(dim))
    }

    fn denominator(&self, dim: usize, denom: Denominator, seed: u64) -> Result<(f64, bool)> {
        match denom {
            Denominator::Holder => Ok((holder_diag_bound(dim, self.p, self.m)?, true)),
            Denominator::Exact => {
                // a point attaining the Hölder upper bound pins the norm
                let value = self.uniform_value(dim)?;
                let bound = holder_diag_bound(dim, self.p, self.m)?;
                if (value - bound).abs() > 1e-12 * bound {
                    return Err(LabError::invalid(format!(
                        "uniform point gives {value}, below the Hölder bound {bound}"
                    )));
                }
                Ok((value, true))
            }
            Denominator::Ascent => {
                let t = diagonal_witness(dim, self.m, &default_witness_sigmas(dim, self.m))?;
                let r = sup_norm_ascent(&t, BallSpec::new(self.p)?, self.restarts, seed);
                Ok((r.value, false))
            }
        }
    }
}

/// Slope of `log(lhs/denominator)` against `log N` at one exponent `s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSeries {
    pub s: f64,
    pub slope: f64,
    /// `slope <= 1e-6`.
    pub bounded: bool,
    pub records: Vec<ExperimentRecord>,
}

/// Threshold on the fitted slope below which the ratio counts as bounded.
pub const BOUNDED_SLOPE: f64 = 1e-6;

/// Fits one slope per `s`; cells are evaluated in parallel.
pub fn exponent_scan(
    family: &dyn ScanFamily,
    s_grid: &[f64],
    dims: &[usize],
    denom: Denominator,
    seed: u64,
) -> Result<Vec<ScanSeries>> {
    if s_grid.is_empty() {
        return Err(LabError::invalid("exponent grid is empty"));
    }
    if dims.len() < 3 {
        return Err(LabError::invalid(format!(
            "slope fit needs at least 3 dimensions, got {}",
            dims.len()
        )));
    }
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LabError::invalid(
            "dimension grid must be strictly increasing",
        ));
    }
    let denominators = dims
        .par_iter()
        .map(|&d| family.denominator(d, denom, seed))
        .collect::<Result<Vec<_>>>()?;
    s_grid
        .par_iter()
        .map(|&s| {
            let lhs = dims
                .iter()
                .map(|&d| family.lhs(d, s))
                .collect::<Result<Vec<_>>>()?;
            let xs: Vec<f64> = dims.iter().map(|&d| d as f64).collect();
            let ratios: Vec<f64> = lhs
                .iter()
                .zip(&denominators)
                .map(|(l, d)| l / d.0)
                .collect();
            let slope = loglog_slope(&xs, &ratios)?;
            let records = dims
                .iter()
                .zip(lhs.iter().zip(&denominators))
                .map(|(&d, (&l, &(den, exact)))| {
                    let mut r = ExperimentRecord::new(d, l, den)
                        .with_param("family", family.name())
                        .with_param("s", s);
                    r.exact = exact;
                    r.seed = Some(seed);
                    r
                })
                .collect();
            Ok(ScanSeries {
                s,
                slope,
                bounded: slope <= BOUNDED_SLOPE,
                records,
            })
        })
        .collect()
}

/// CSV with columns `s,slope,bounded`.
pub fn scan_csv(series: &[ScanSeries]) -> String {
    let mut out = String::from("# schema=1\ns,slope,bounded\n");
    for s in series {
        let _ = writeln!(out, "{},{},{}", s.s, s.slope, s.bounded);
    }
    out
}
