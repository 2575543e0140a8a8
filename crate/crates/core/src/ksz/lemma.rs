//! Arithmetic of the net/union-bound argument: `card(F) / psi_2(R/A) < 1`
//! with `card(F) = (1+4n)^{2nN}`, `A = C N^{k/2}` and `R = lambda N^{(k+1)/2}`.

use num_bigint::BigUint;

/// `(1 + 4n)^{2nN}`, the size of a `1/(2n)`-net of the unit ball of
/// `(l_inf^N)^n`.
pub fn net_cardinality(n: usize, dim: usize) -> BigUint {
    let base = BigUint::from(1 + 4 * n as u64);
    base.pow((2 * n * dim) as u32)
}

/// `ln card(F) = 2nN ln(1 + 4n)`.
pub fn ln_net_cardinality(n: usize, dim: usize) -> f64 {
    2.0 * n as f64 * dim as f64 * (1.0 + 4.0 * n as f64).ln()
}

/// Least `lambda` with `card(F) < exp(lambda^2 N / C^2) - 1`, namely
/// `C sqrt(ln(1 + card(F)) / N)`.
///
/// `R/A = lambda sqrt(N) / C` does not involve `k`; the argument is kept so
/// callers can pass the full parameter set.
pub fn threshold_lambda(n: usize, dim: usize, _k: usize, c_sub: f64) -> f64 {
    let l = ln_net_cardinality(n, dim);
    let ln_one_plus = l + (-l).exp().ln_1p();
    c_sub * (ln_one_plus / dim as f64).sqrt()
}

/// Whether `card(F) / psi_2(R/A) < 1` at `lambda`, compared in the log domain.
pub fn threshold_condition_holds(n: usize, dim: usize, _k: usize, c_sub: f64, lambda: f64) -> bool {
    let y = lambda * lambda * dim as f64 / (c_sub * c_sub);
    if y <= 0.0 {
        return false;
    }
    // ln(exp(y) - 1) = y + ln(1 - exp(-y))
    let ln_psi = y + (-(-y).exp()).ln_1p();
    ln_net_cardinality(n, dim) < ln_psi
}

/// `2 lambda N^{(k+1)/2}`: the sup-norm level some sign draw must stay under.
pub fn existence_bound(n: usize, dim: usize, k: usize, c_sub: f64) -> f64 {
    2.0 * threshold_lambda(n, dim, k, c_sub) * (dim as f64).powf((k as f64 + 1.0) / 2.0)
}

/// `2k/(k+1)`: no exponent below this works for `k` repeated groups.
pub fn exponent_floor(k: usize) -> f64 {
    2.0 * k as f64 / (k as f64 + 1.0)
}
