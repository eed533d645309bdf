//! Numerical laboratory for a family of Gamma/Fourier integral identities,
//! Dirichlet-series manipulations, and explicit-formula zero sums.
//!
//! The crate evaluates both sides of each identity by independent routes
//! (adaptive complex quadrature on one side, closed forms on the other) and
//! audits a pivotal cancellation claim (`A* + S0 = 0`) against real zero
//! data. Reports state residuals and convergence; they never assert the
//! truth or falsity of the underlying claim.
//!
//! Module map:
//! - [`specialfn`]: complex Gamma, digamma, zeta, von Mangoldt weights,
//!   decay kernels.
//! - [`quad`]: adaptive Gauss–Kronrod line quadrature with decay-aware
//!   truncation and oscillation-aware panel sizing.
//! - [`zerodb`]: zero-ordinate tables, local zero finding, explicit-formula
//!   evaluation.
//! - [`identities`]: two-route identity checkers and suite runner.
//! - [`audit`]: the cancellation audit and boundedness checks.

pub mod audit;
pub mod cplx;
pub mod identities;
pub mod quad;
pub mod specialfn;
pub mod zerodb;

pub use num_complex::Complex64;
