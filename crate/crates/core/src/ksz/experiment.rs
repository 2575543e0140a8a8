use std::fmt::Write as _;

use rayon::prelude::*;

use super::{
    existence_bound, ksz_process_tensor, sample_sign_tensor, threshold_lambda, RepetitionPattern,
};
use crate::error::{LabError, Result};
use crate::experiment::{loglog_slope, ExperimentRecord};
use crate::norms::{sup_norm_ascent, sup_norm_linf_exact, BallSpec, DEFAULT_ENUMERATION_BITS};

/// How the sup-norm of one random form is computed.
///
/// Over `l_inf` balls the norm of the order-`n` process equals the norm of
/// the order-`k` sign form, because a product of coordinates from one group
/// ranges over exactly `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KszNorm {
    /// Exact on the order-`k` sign form when `N(k-1)` fits the enumeration
    /// guard, ascent with 20 restarts otherwise.
    Auto,
    /// Exact on the order-`k` sign form.
    Collapsed,
    /// Exact on the expanded order-`n` tensor.
    FullTensor,
    /// Ascent lower bound on the order-`k` sign form.
    Ascent { restarts: usize },
}

impl KszNorm {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "auto" => Ok(KszNorm::Auto),
            "exact" | "collapsed" => Ok(KszNorm::Collapsed),
            "full" => Ok(KszNorm::FullTensor),
            "ascent" => Ok(KszNorm::Ascent { restarts: 20 }),
            other => Err(LabError::invalid(format!(
                "unknown ksz norm method `{other}`"
            ))),
        }
    }

    /// Sup-norm of `X(eps, .)` for one draw, with its exactness flag.
    pub fn sup_norm(
        &self,
        pattern: &RepetitionPattern,
        dim: usize,
        seed: u64,
    ) -> Result<(f64, bool)> {
        let k = pattern.groups();
        let eps = sample_sign_tensor(dim, k, seed)?;
        let resolved = match self {
            KszNorm::Auto if (dim as u64) * (k as u64 - 1) <= DEFAULT_ENUMERATION_BITS as u64 => {
                KszNorm::Collapsed
            }
            KszNorm::Auto => KszNorm::Ascent { restarts: 20 },
            other => *other,
        };
        match resolved {
            KszNorm::Collapsed => Ok((sup_norm_linf_exact(&eps.to_tensor())?.value, true)),
            KszNorm::FullTensor => {
                let t = ksz_process_tensor(&eps, pattern)?;
                Ok((sup_norm_linf_exact(&t)?.value, true))
            }
            KszNorm::Ascent { restarts } => {
                let r = sup_norm_ascent(&eps.to_tensor(), BallSpec::linf(), restarts, seed);
                Ok((r.value, false))
            }
            KszNorm::Auto => unreachable!("resolved above"),
        }
    }
}

/// Minimum sup-norm over `draws` sign draws (draw `d` seeded by `seed + d`)
/// for every `N`, checked against `2 lambda N^{(k+1)/2}`; the final record
/// carries the log–log slope of the minima against `N`.
pub fn ksz_experiment(
    pattern: &RepetitionPattern,
    dims: &[usize],
    draws: usize,
    seed: u64,
    method: KszNorm,
    c_sub: f64,
) -> Result<Vec<ExperimentRecord>> {
    if dims.len() < 3 {
        return Err(LabError::invalid(format!(
            "ksz sweep needs at least 3 dimensions, got {}",
            dims.len()
        )));
    }
    if draws == 0 {
        return Err(LabError::invalid("ksz sweep needs at least one draw"));
    }
    if !(c_sub > 0.0 && c_sub.is_finite()) {
        return Err(LabError::invalid(format!(
            "subgaussian constant must be positive, got {c_sub}"
        )));
    }
    let n = pattern.slots();
    let k = pattern.groups();
    let mut records = Vec::with_capacity(dims.len());
    for &dim in dims {
        let values = (0..draws as u64)
            .into_par_iter()
            .map(|d| method.sup_norm(pattern, dim, seed.wrapping_add(d)))
            .collect::<Result<Vec<_>>>()?;
        let min_sup = values.iter().fold(f64::INFINITY, |m, v| m.min(v.0));
        let exact = values.iter().all(|v| v.1);
        let bound = existence_bound(n, dim, k, c_sub);
        let mut rec = ExperimentRecord::new(dim, min_sup, bound)
            .with_param("pattern", pattern)
            .with_param("draws", draws)
            .with_param("c_sub", c_sub)
            .with_param("lambda", threshold_lambda(n, dim, k, c_sub));
        rec.pass = Some(min_sup <= bound);
        rec.seed = Some(seed);
        rec.exact = exact;
        records.push(rec);
    }
    let xs: Vec<f64> = records.iter().map(|r| r.dim as f64).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.measured).collect();
    let slope = loglog_slope(&xs, &ys)?;
    if let Some(last) = records.last_mut() {
        last.slope = Some(slope);
    }
    Ok(records)
}

/// CSV with a schema line, one row per `N` and the slope on the final row.
pub fn ksz_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from("# schema=1\npattern,N,draws,min_sup,bound_2R,pass,slope\n");
    for r in records {
        let pattern = r.params.get("pattern").map_or("", String::as_str);
        let draws = r.params.get("draws").map_or("", String::as_str);
        let slope = r.slope.map(|s| s.to_string()).unwrap_or_default();
        let pass = r.pass.map(|p| p.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "\"{pattern}\",{},{draws},{},{},{pass},{slope}",
            r.dim, r.measured, r.reference
        );
    }
    out
}
