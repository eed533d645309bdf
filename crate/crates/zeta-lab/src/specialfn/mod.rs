//! Complex special functions underpinning every identity in the crate.
//!
//! | function          | domain                                   | route                                      |
//! |-------------------|------------------------------------------|--------------------------------------------|
//! | [`gamma`]         | C minus non-positive integers            | Lanczos (g = 7, 9 terms) + reflection      |
//! | [`log_gamma`]     | principal branch for Re z > 0            | log-form Lanczos + one recurrence step     |
//! | [`digamma`]       | C minus non-positive integers            | recurrence shift + Bernoulli asymptotics   |
//! | [`gamma_prime`]   | same as `gamma`                          | Gamma * digamma                            |
//! | [`zeta`]          | s != 1 (accurate for Re s > -10)         | accelerated alternating eta series         |
//! | [`zeta_log_deriv`]| s with zeta(s) != 0                      | term-by-term differentiated eta series     |
//! | [`von_mangoldt`]  | 1 <= m <= 10^7                           | trial factoring to sqrt(m)                 |
//! | [`lambda_series`] | Re s > 1                                 | truncated Dirichlet sum + integral tail    |
//! | [`kernel_e`]      | all real t                               | direct evaluation                          |
//! | [`DecayFamily`]   | all real t                               | direct + central finite differences        |

mod arith;
mod gamma;
mod kernels;
mod zeta;

pub use arith::{lambda_series, lambda_values, von_mangoldt, LambdaSeries};
pub use gamma::{digamma, gamma, gamma_prime, log_gamma};
pub use kernels::{kernel_e, kernel_e_c, DecayFamily, KernelParams};
pub use zeta::{zeta, zeta_log_deriv, zeta_with_deriv};

use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by special-function evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialFnError {
    /// Argument sits on a pole of the function.
    #[error("pole at z = {0}")]
    Pole(Complex64),
    /// A quotient's denominator is too close to zero to divide meaningfully.
    #[error("near-zero denominator at s = {0} (|value| = {1:.3e})")]
    NearZero(Complex64, f64),
    /// Argument outside the function's supported domain.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, SpecialFnError>;
