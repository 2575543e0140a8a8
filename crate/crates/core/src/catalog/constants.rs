use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use super::bh_exponent;

/// Exponent in the power bound on the complex constants.
pub const COMPLEX_BOUND_EXPONENT: f64 = 0.21139;
/// Exponent in the power bound on the real constants.
pub const REAL_BOUND_EXPONENT: f64 = 0.36482;

/// `prod_{j=2}^m Gamma(2 - 1/j)^{j/(2-2j)}`; 1 for `m <= 1`.
pub fn bh_constant_complex(m: usize) -> f64 {
    let log: f64 = (2..=m)
        .map(|j| {
            let jf = j as f64;
            jf / (2.0 - 2.0 * jf) * ln_gamma(2.0 - 1.0 / jf)
        })
        .sum();
    log.exp()
}

/// Best known real constants: `(sqrt 2)^{H_{m-1}}` for `2 <= m <= 13`,
/// `2^{446381/55440 - m/2} prod_{j=14}^m (Gamma(3/2 - 1/j)/sqrt(pi))^{j/(2-2j)}`
/// for `m >= 14`; 1 for `m <= 1`.
pub fn bh_constant_real(m: usize) -> f64 {
    if m <= 1 {
        return 1.0;
    }
    if m <= 13 {
        let harmonic: f64 = (1..m).map(|j| 1.0 / j as f64).sum();
        return std::f64::consts::SQRT_2.powf(harmonic);
    }
    let ln_sqrt_pi = 0.5 * std::f64::consts::PI.ln();
    let log_prod: f64 = (14..=m)
        .map(|j| {
            let jf = j as f64;
            jf / (2.0 - 2.0 * jf) * (ln_gamma(1.5 - 1.0 / jf) - ln_sqrt_pi)
        })
        .sum();
    let log2 = 446381.0 / 55440.0 - m as f64 / 2.0;
    (log2 * std::f64::consts::LN_2 + log_prod).exp()
}

/// `m^0.21139`.
pub fn complex_constant_bound(m: usize) -> f64 {
    (m as f64).powf(COMPLEX_BOUND_EXPONENT)
}

/// `1.3 m^0.36482`.
pub fn real_constant_bound(m: usize) -> f64 {
    1.3 * (m as f64).powf(REAL_BOUND_EXPONENT)
}

/// One row of the constants table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsRow {
    pub m: usize,
    pub complex: f64,
    pub real: f64,
    pub complex_bound: f64,
    pub real_bound: f64,
    pub exponent: f64,
}

pub fn constants_table(m_max: usize) -> Vec<ConstantsRow> {
    (1..=m_max)
        .map(|m| ConstantsRow {
            m,
            complex: bh_constant_complex(m),
            real: bh_constant_real(m),
            complex_bound: complex_constant_bound(m),
            real_bound: real_constant_bound(m),
            exponent: bh_exponent(m).expect("m >= 1"),
        })
        .collect()
}
