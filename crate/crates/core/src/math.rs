//! Log-space binomials and small numeric helpers.

use std::f64::consts::LN_2;

/// Relative slack for comparing closed forms evaluated in floating point.
pub const REL_TOL: f64 = 1e-9;

#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `ln C(n, k)` for real `n ≥ k - 1` (generalized binomial); `-inf` when `k > n` for integers.
pub fn ln_binomial(n: f64, k: f64) -> f64 {
    if k < 0.0 || n < k {
        return f64::NEG_INFINITY;
    }
    if k == 0.0 || k == n {
        return 0.0;
    }
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

/// `log₂ C(n, k)` for integers.
pub fn log2_binomial(n: usize, k: usize) -> f64 {
    ln_binomial(n as f64, k as f64) / LN_2
}

/// `C(top, k) / C(n, k)` for real `top ≤ n`, 0 when `top < k`.
pub fn binomial_ratio(top: f64, n: f64, k: usize) -> f64 {
    let kf = k as f64;
    if top < kf {
        return 0.0;
    }
    (ln_binomial(top, kf) - ln_binomial(n, kf)).exp()
}

/// `a ≤ b` up to [`REL_TOL`].
#[inline]
pub fn le_tol(a: f64, b: f64) -> bool {
    a <= b + REL_TOL * b.abs().max(1.0)
}
