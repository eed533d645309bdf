//! Exponential/double-exponential decay kernels: the Fourier-transform test
//! kernel and the rapid-decrease family used for Schwartz-property checks.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Parameters of the Fourier test kernel `2 pi e^{-2 pi x t} e^{-a e^{-2 pi t}}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    /// Exponential rate on the +infinity side; must be > 0 for decay.
    pub x: f64,
    /// Double-exponential weight on the -infinity side; must be > 0.
    pub a: f64,
}

/// Kernel whose Fourier transform is `a^{-(x - i xi)} Gamma(x - i xi)`.
///
/// Decays like e^{-2 pi x t} as t -> +inf and double-exponentially as
/// t -> -inf; value at t = 0 is `2 pi e^{-a}`.
pub fn kernel_e(p: KernelParams, t: f64) -> f64 {
    2.0 * PI * (-2.0 * PI * p.x * t).exp() * (-p.a * (-2.0 * PI * t).exp()).exp()
}

/// Rapid-decrease family h(t) = e^{-a t} e^{-b e^{-c t}} together with the
/// seminorm selector (derivative order k, polynomial weight m) under test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFamily {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Derivative order for the seminorm sup |t|^m |h^(k)(t)|; 0..=2.
    pub deriv_order: u32,
    /// Polynomial weight exponent m in the same seminorm.
    pub poly_weight: u32,
}

impl DecayFamily {
    pub fn new(a: f64, b: f64, c: f64, deriv_order: u32, poly_weight: u32) -> Self {
        assert!(a > 0.0 && b > 0.0 && c > 0.0, "decay family needs a,b,c > 0");
        assert!(deriv_order <= 2, "finite differences cover k <= 2");
        Self {
            a,
            b,
            c,
            deriv_order,
            poly_weight,
        }
    }

    /// h(t) itself.
    pub fn h(&self, t: f64) -> f64 {
        (-self.a * t - self.b * (-self.c * t).exp()).exp()
    }

    /// k-th derivative of h by central finite differences with step
    /// 1e-4 * max(1, |t|); k = 0 returns h directly.
    pub fn h_derivative(&self, k: u32, t: f64) -> f64 {
        assert!(k <= 2, "finite differences cover k <= 2");
        let d = 1e-4 * t.abs().max(1.0);
        match k {
            0 => self.h(t),
            1 => (self.h(t + d) - self.h(t - d)) / (2.0 * d),
            _ => (self.h(t + d) - 2.0 * self.h(t) + self.h(t - d)) / (d * d),
        }
    }

    /// The seminorm integrand |t|^m |h^(k)(t)| at t for this family's (k, m).
    pub fn seminorm_at(&self, t: f64) -> f64 {
        t.abs().powi(self.poly_weight as i32) * self.h_derivative(self.deriv_order, t).abs()
    }
}

/// Complex-argument convenience: the kernel as a function into C (imaginary
/// part zero), used directly by quadrature clients.
pub fn kernel_e_c(p: KernelParams, t: f64) -> Complex64 {
    Complex64::new(kernel_e(p, t), 0.0)
}
