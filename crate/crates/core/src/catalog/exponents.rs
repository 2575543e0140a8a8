use crate::error::{LabError, Result};

/// `2m/(m+1)`.
pub fn bh_exponent(m: usize) -> Result<f64> {
    if m < 1 {
        return Err(LabError::invalid("order must be at least 1"));
    }
    Ok(2.0 * m as f64 / (m as f64 + 1.0))
}

/// `2mp/(mp + p - 2m)` for `p >= 2m`; `p = inf` gives [`bh_exponent`].
pub fn hl_pp_exponent(m: usize, p: f64) -> Result<f64> {
    let mf = m as f64;
    if m < 1 || p.is_nan() || p < 2.0 * mf {
        return Err(LabError::exponent(
            p,
            format!("requires p >= 2m = {}", 2 * m),
        ));
    }
    if p.is_infinite() {
        return bh_exponent(m);
    }
    Ok(2.0 * mf * p / (mf * p + p - 2.0 * mf))
}

/// `p/(p - m)` for `m < p <= 2m`.
pub fn hl_dsp_exponent(m: usize, p: f64) -> Result<f64> {
    let mf = m as f64;
    if m < 1 || p.is_nan() || p <= mf || p > 2.0 * mf {
        return Err(LabError::exponent(
            p,
            format!("requires {m} < p <= {}", 2 * m),
        ));
    }
    Ok(p / (p - mf))
}

/// Critical exponent for `l_p` domains: [`hl_pp_exponent`] above `2m`,
/// [`hl_dsp_exponent`] on `(m, 2m]`.
pub fn lp_exponent(m: usize, p: f64) -> Result<f64> {
    if p > 2.0 * m as f64 {
        hl_pp_exponent(m, p)
    } else {
        hl_dsp_exponent(m, p)
    }
}
