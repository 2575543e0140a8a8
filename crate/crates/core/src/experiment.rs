//! Per-dimension experiment records and log–log slope fits.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{LabError, Result};

/// One measured point of a dimension sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub dim: usize,
    pub measured: f64,
    /// Comparison quantity (bound, denominator) at this dimension.
    pub reference: f64,
    pub pass: Option<bool>,
    /// Fitted slope of the whole sweep; set on the final record only.
    pub slope: Option<f64>,
    pub seed: Option<u64>,
    pub exact: bool,
    pub params: BTreeMap<String, String>,
}

impl ExperimentRecord {
    pub fn new(dim: usize, measured: f64, reference: f64) -> Self {
        ExperimentRecord {
            dim,
            measured,
            reference,
            pass: None,
            slope: None,
            seed: None,
            exact: false,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// Least-squares slope of `ln y` against `ln x`.
///
/// Needs at least three points with positive coordinates.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(LabError::DimensionMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(LabError::invalid(format!(
            "slope fit needs at least 3 points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(LabError::invalid("slope fit needs positive finite values"));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in lx.iter().zip(&ly) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        return Err(LabError::invalid("slope fit needs distinct x values"));
    }
    Ok(sxy / sxx)
}
