//! Von Mangoldt weights and the truncated prime-power Dirichlet series.

use super::{Result, SpecialFnError};
use crate::cplx::powc_real_neg;
use num_complex::Complex64;

/// Largest argument accepted by [`von_mangoldt`]; trial factoring stays
/// desk-scale below this.
pub const VON_MANGOLDT_CAP: u64 = 10_000_000;

/// Smallest prime factor of m (m >= 2) by trial division up to sqrt(m).
fn smallest_prime_factor(m: u64) -> u64 {
    if m.is_multiple_of(2) {
        return 2;
    }
    if m.is_multiple_of(3) {
        return 3;
    }
    let mut p = 5;
    while p * p <= m {
        if m.is_multiple_of(p) {
            return p;
        }
        if m.is_multiple_of(p + 2) {
            return p + 2;
        }
        p += 6;
    }
    m
}

/// Von Mangoldt Lambda(m): ln p when m = p^k, else 0.
///
/// Exact to the floating precision of `ln`; errors above [`VON_MANGOLDT_CAP`]
/// or at m = 0.
pub fn von_mangoldt(m: u64) -> Result<f64> {
    if m == 0 || m > VON_MANGOLDT_CAP {
        return Err(SpecialFnError::Domain(format!(
            "von_mangoldt defined for 1 <= m <= {VON_MANGOLDT_CAP}, got {m}"
        )));
    }
    if m == 1 {
        return Ok(0.0);
    }
    let p = smallest_prime_factor(m);
    let mut q = m;
    while q.is_multiple_of(p) {
        q /= p;
    }
    Ok(if q == 1 { (p as f64).ln() } else { 0.0 })
}

/// Lambda(1..=cap) in one pass; the workhorse behind repeated series sums.
pub fn lambda_values(cap: u64) -> Result<Vec<f64>> {
    (1..=cap).map(von_mangoldt).collect()
}

/// Truncated Dirichlet sum over prime powers with its analytic tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSeries {
    /// sum_{m <= cap} Lambda(m) m^{-s}.
    pub value: Complex64,
    /// Bound on |sum_{m > cap} Lambda(m) m^{-s}| by integral comparison:
    /// (ln M / (sigma-1) + 1/(sigma-1)^2) M^{1-sigma}, sigma = Re s.
    pub tail_bound: f64,
    /// Truncation point actually used.
    pub cap: u64,
}

/// sum_{m <= cap} Lambda(m) m^{-s} with a rigorous tail bound.
///
/// Requires Re s > 1 (the series diverges otherwise). For Re s > 1 this sum
/// converges to -zeta'/zeta(s).
pub fn lambda_series(s: Complex64, cap: u64) -> Result<LambdaSeries> {
    if s.re <= 1.0 {
        return Err(SpecialFnError::Domain(format!(
            "lambda_series needs Re s > 1, got Re s = {}",
            s.re
        )));
    }
    if cap == 0 || cap > VON_MANGOLDT_CAP {
        return Err(SpecialFnError::Domain(format!(
            "lambda_series cap must lie in 1..={VON_MANGOLDT_CAP}, got {cap}"
        )));
    }
    let mut value = Complex64::new(0.0, 0.0);
    for m in 2..=cap {
        let lam = von_mangoldt(m)?;
        if lam != 0.0 {
            value += lam * powc_real_neg(m as f64, s);
        }
    }
    let sigma = s.re;
    let mf = cap as f64;
    // Lambda(m) <= ln m and x -> ln(x) x^{-sigma} is decreasing past e, so
    // the tail is at most int_M^inf ln(x) x^{-sigma} dx.
    let tail_bound =
        (mf.ln() / (sigma - 1.0) + 1.0 / ((sigma - 1.0) * (sigma - 1.0))) * mf.powf(1.0 - sigma);
    Ok(LambdaSeries {
        value,
        tail_bound,
        cap,
    })
}
