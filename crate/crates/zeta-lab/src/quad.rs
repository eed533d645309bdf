//! Adaptive complex line quadrature for Gamma-product integrands.
//!
//! The scheme is composite Gauss–Kronrod: 15-point panels whose embedded
//! 7-point Gauss value supplies the per-panel error estimate, refined by
//! bisecting the worst panel. The integration window comes from a decay
//! hint (Stirling-type envelope `2 pi T^{sigma-1} e^{-rate T}`), and panel
//! width respects the strongest oscillation the caller declares. Reported
//! error = sum of panel estimates + the truncation tail bound. Everything
//! is sequential and summed in a fixed interval order, so results are
//! bit-reproducible run to run.

use num_complex::Complex64;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use thiserror::Error;

/// Positive Kronrod nodes for the 15-point rule (center last).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_7,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching [`XGK`].
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Embedded 7-point Gauss weights (nodes XGK[1], XGK[3], XGK[5], center).
/// Digits kept as published even past f64 resolution.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Tolerances and budgets for one integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute error target for the whole integral.
    pub abs_tol: f64,
    /// Relative error target (against the running value).
    pub rel_tol: f64,
    /// Maximum number of panel bisections after the initial subdivision.
    pub max_refinements: usize,
    /// Minimum number of initial uniform panels.
    pub initial_panels: usize,
    /// Hard cap on the half-width T of the integration window.
    pub max_truncation: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_refinements: 4000,
            initial_panels: 8,
            max_truncation: 60.0,
        }
    }
}

impl QuadratureConfig {
    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }
    pub fn with_rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }
}

/// Decay/oscillation description of a line integrand.
///
/// `sigma_sum` is the total Gamma-argument real part (polynomial exponent in
/// the envelope), `rate` the exponential decay rate (pi for a two-Gamma
/// product, pi/2 for a single factor), and `shift` the displacement scale:
/// a second decay center (e.g. a zero ordinate tau) and/or the dominant
/// oscillation frequency (ln m, T'). The window spans both centers plus T;
/// panel width obeys `1/(10 max(1, |shift|))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayHint {
    pub sigma_sum: f64,
    pub shift: f64,
    pub rate: f64,
}

impl DecayHint {
    pub fn new(sigma_sum: f64, shift: f64, rate: f64) -> Self {
        assert!(rate > 0.0, "decay rate must be positive");
        Self {
            sigma_sum,
            shift,
            rate,
        }
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Sum of per-panel |K15 - G7| estimates plus the truncation bound.
    pub err_estimate: f64,
    /// Half-width T actually used (0 for finite-interval integrals).
    pub truncation: f64,
    /// Panels in the final subdivision.
    pub panels: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    /// Refinement budget exhausted above tolerance; carries the best value.
    #[error("no convergence: err {0:.3e} above tolerance after {1} panels", partial.err_estimate, partial.panels)]
    NoConvergence { partial: QuadResult },
    /// Integrand returned NaN/inf at a node.
    #[error("integrand non-finite at t = {t}")]
    NonFinite { t: f64 },
    /// No T within the cap brings the tail envelope under tolerance.
    #[error("tail bound {best_bound:.3e} still above target at T = {max_truncation}")]
    TruncationInsufficient { max_truncation: f64, best_bound: f64 },
}

pub type Result<T> = std::result::Result<T, QuadError>;

/// Stirling-type tail envelope: both tails of `2 pi |t|^{sigma-1} e^{-rate |t|}`
/// integrated past T.
fn tail_bound(hint: &DecayHint, t: f64) -> f64 {
    2.0 * (2.0 * PI) * t.max(1.0).powf(hint.sigma_sum - 1.0) * (-hint.rate * t).exp() / hint.rate
}

/// Smallest window half-width T whose tail envelope drops below abs_tol/10.
///
/// Lowering `abs_tol` can only grow T. Errors with
/// [`QuadError::TruncationInsufficient`] if the cap is reached first.
pub fn choose_truncation(hint: &DecayHint, cfg: &QuadratureConfig) -> Result<f64> {
    let target = cfg.abs_tol / 10.0;
    let mut t = 4.0;
    while t <= cfg.max_truncation {
        // Past the envelope's crest the bound decreases in T; the crest sits
        // at T = (sigma-1)/rate, so only accept decreasing-side solutions.
        if t * hint.rate >= (hint.sigma_sum - 1.0).max(0.0) && tail_bound(hint, t) < target {
            return Ok(t);
        }
        t += 0.25;
    }
    Err(QuadError::TruncationInsufficient {
        max_truncation: cfg.max_truncation,
        best_bound: tail_bound(hint, cfg.max_truncation),
    })
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    seq: u64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Max-heap on error; sequence number breaks ties deterministically.
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// One K15/G7 evaluation on [a, b].
fn qk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, seq: u64) -> Result<Panel> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if !fc.is_finite() {
        return Err(QuadError::NonFinite { t: c });
    }
    let mut res_k = WGK[7] * fc;
    let mut res_g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let (t1, t2) = (c - dx, c + dx);
        let (f1, f2) = (f(t1), f(t2));
        if !f1.is_finite() {
            return Err(QuadError::NonFinite { t: t1 });
        }
        if !f2.is_finite() {
            return Err(QuadError::NonFinite { t: t2 });
        }
        let fsum = f1 + f2;
        res_k += WGK[j] * fsum;
        if j % 2 == 1 {
            res_g += WG[j / 2] * fsum;
        }
    }
    let value = res_k * h;
    let err = ((res_k - res_g) * h).norm();
    Ok(Panel {
        a,
        b,
        value,
        err,
        seq,
    })
}

/// Adaptive integral of f over [lo, hi].
///
/// `osc_scale` bounds the fastest oscillation (rad per unit t) so initial
/// panels satisfy the 10-nodes-per-period rule; pass 1.0 for smooth
/// integrands. `extra_err` is added to the reported estimate (line
/// integrals put their truncation bound here).
fn adaptive(
    f: &dyn Fn(f64) -> Complex64,
    lo: f64,
    hi: f64,
    osc_scale: f64,
    extra_err: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    assert!(hi > lo, "empty integration interval");
    let width = hi - lo;
    let n0 = cfg
        .initial_panels
        .max((width * 10.0 * osc_scale.max(1.0)).ceil() as usize)
        .max(1);
    let mut seq = 0u64;
    let mut heap = BinaryHeap::with_capacity(n0 + cfg.max_refinements);
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = extra_err;
    for i in 0..n0 {
        let a = lo + width * (i as f64) / (n0 as f64);
        let b = lo + width * ((i + 1) as f64) / (n0 as f64);
        let p = qk15(&f, a, b, seq)?;
        seq += 1;
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }
    let mut splits = 0;
    while total_err > cfg.abs_tol.max(cfg.rel_tol * total.norm()) {
        if splits >= cfg.max_refinements {
            break;
        }
        let worst = heap.pop().expect("heap non-empty by construction");
        // Splitting machine-width panels only launders roundoff into the
        // estimate; treat them as converged.
        if (worst.b - worst.a) < 1e-13 * (1.0 + worst.b.abs()) {
            let floor = worst.err;
            heap.push(worst);
            if heap.iter().all(|p| p.err <= floor) {
                break;
            }
            splits += 1;
            continue;
        }
        total -= worst.value;
        total_err -= worst.err;
        let mid = 0.5 * (worst.a + worst.b);
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let p = qk15(&f, a, b, seq)?;
            seq += 1;
            total += p.value;
            total_err += p.err;
            heap.push(p);
        }
        splits += 1;
    }
    // Deterministic final reduction: re-sum panels in interval order.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = extra_err;
    for p in &panels {
        value += p.value;
        err += p.err;
    }
    let result = QuadResult {
        value,
        err_estimate: err,
        truncation: 0.0,
        panels: panels.len(),
    };
    if err > cfg.abs_tol.max(cfg.rel_tol * value.norm()) {
        return Err(QuadError::NoConvergence { partial: result });
    }
    Ok(result)
}

/// Integral of f over the real line, windowed by the decay hint.
///
/// The window is `[min(0, shift) - T, max(0, shift) + T]` with T from
/// [`choose_truncation`], covering integrands whose decay is centered away
/// from the origin. The truncation bound is folded into `err_estimate`.
pub fn integrate_line<F: Fn(f64) -> Complex64>(
    f: F,
    hint: &DecayHint,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let t = choose_truncation(hint, cfg)?;
    let lo = hint.shift.min(0.0) - t;
    let hi = hint.shift.max(0.0) + t;
    let mut r = adaptive(&f, lo, hi, hint.shift.abs(), tail_bound(hint, t), cfg)?;
    r.truncation = t;
    Ok(r)
}

/// Adaptive integral over a finite interval [lo, hi].
///
/// `osc_scale` as in the line version; truncation is the caller's business.
pub fn integrate_interval<F: Fn(f64) -> Complex64>(
    f: F,
    lo: f64,
    hi: f64,
    osc_scale: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    adaptive(&f, lo, hi, osc_scale, 0.0, cfg)
}

/// Fourier transform `F[g](xi) = int g(t) e^{-2 pi i t xi} dt` by direct
/// quadrature; panel density accounts for the e^{-2 pi i t xi} oscillation.
pub fn fourier_numeric<G: Fn(f64) -> Complex64>(
    g: G,
    xi: f64,
    hint: &DecayHint,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let t = choose_truncation(hint, cfg)?;
    let lo = hint.shift.min(0.0) - t;
    let hi = hint.shift.max(0.0) + t;
    let f = |u: f64| g(u) * Complex64::new(0.0, -2.0 * PI * u * xi).exp();
    let osc = hint.shift.abs().max(xi.abs());
    let mut r = adaptive(&f, lo, hi, osc, tail_bound(hint, t), cfg)?;
    r.truncation = t;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::{gamma, kernel_e, KernelParams};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gaussian(t: f64) -> Complex64 {
        c((-PI * t * t).exp(), 0.0)
    }

    #[test]
    fn truncation_respects_tolerance_and_is_monotone() {
        let cfg = QuadratureConfig::default();
        let hint = DecayHint::new(2.0, 0.0, PI);
        let t = choose_truncation(&hint, &cfg).unwrap();
        assert!((9.0..12.0).contains(&t), "T = {t}");
        let tighter = choose_truncation(&hint, &cfg.with_abs_tol(1e-12)).unwrap();
        assert!(tighter >= t, "tighter tolerance must widen the window");
    }

    #[test]
    fn truncation_insufficient_for_slow_decay() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-12,
            max_truncation: 50.0,
            ..Default::default()
        };
        let hint = DecayHint::new(10.0, 0.0, 0.1);
        assert!(matches!(
            choose_truncation(&hint, &cfg),
            Err(QuadError::TruncationInsufficient { .. })
        ));
    }

    #[test]
    fn gaussian_integrates_to_one() {
        let cfg = QuadratureConfig::default();
        let hint = DecayHint::new(1.0, 0.0, PI);
        let r = integrate_line(gaussian, &hint, &cfg).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-9, "{}", r.value.re);
        assert!(r.value.im.abs() < 1e-12);
        assert!(r.err_estimate < 1e-8);
    }

    #[test]
    fn sech_integral_matches_pi() {
        // int |Gamma(1/2 + it)|^2 dt = int pi sech(pi t) dt = pi.
        let cfg = QuadratureConfig::default();
        let hint = DecayHint::new(1.0, 0.0, PI);
        let r = integrate_line(
            |t| PI / (PI * t).cosh() * c(1.0, 0.0),
            &hint,
            &cfg,
        )
        .unwrap();
        assert!((r.value.re - PI).abs() < 1e-9);
    }

    #[test]
    fn gamma_pair_line_is_real_for_conjugate_symmetric_integrand() {
        // Gamma(1+it) Gamma(1-it): f(-t) = conj f(t), so the integral is real.
        let cfg = QuadratureConfig::default();
        let hint = DecayHint::new(2.0, 0.0, PI);
        let f = |t: f64| gamma(c(1.0, t)).unwrap() * gamma(c(1.0, -t)).unwrap();
        let r = integrate_line(f, &hint, &cfg).unwrap();
        assert!(r.value.im.abs() < 1e-12 * r.value.re.abs());
        // Closed form for this one: 2 pi Gamma(2) / 2^2 = pi/2.
        assert!((r.value.re - PI / 2.0).abs() < 1e-8, "{}", r.value.re);
    }

    #[test]
    fn linearity_within_tolerance() {
        let cfg = QuadratureConfig::default();
        let hint = DecayHint::new(1.0, 0.0, PI);
        let f = |t: f64| gaussian(t);
        let g = |t: f64| c(1.0 / (1.0 + t * t) * (-PI * t.abs()).exp(), 0.0);
        let a = c(2.5, -1.0);
        let b = c(0.5, 3.0);
        let int_f = integrate_line(f, &hint, &cfg).unwrap().value;
        let int_g = integrate_line(g, &hint, &cfg).unwrap().value;
        let combo = integrate_line(|t| a * f(t) + b * g(t), &hint, &cfg)
            .unwrap()
            .value;
        let resid = (combo - (a * int_f + b * int_g)).norm();
        let scale = int_f.norm().max(int_g.norm()).max(1.0);
        assert!(resid < 1e-9 * scale, "linearity resid {resid}");
    }

    #[test]
    fn tighter_tolerance_never_worsens_estimate() {
        let hint = DecayHint::new(2.0, 0.0, PI);
        let f = |t: f64| gamma(c(1.0, t)).unwrap() * gamma(c(1.0, -t)).unwrap();
        let loose = integrate_line(f, &hint, &QuadratureConfig::default().with_abs_tol(1e-8))
            .unwrap();
        let tight = integrate_line(f, &hint, &QuadratureConfig::default().with_abs_tol(1e-11))
            .unwrap();
        assert!(tight.err_estimate <= loose.err_estimate);
    }

    #[test]
    fn nonfinite_integrand_is_reported() {
        let cfg = QuadratureConfig::default();
        let hint = DecayHint::new(1.0, 0.0, PI);
        let r = integrate_line(|t| c(1.0 / t, 0.0), &hint, &cfg);
        assert!(matches!(r, Err(QuadError::NonFinite { .. })));
    }

    #[test]
    fn no_convergence_carries_partial_result() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            max_refinements: 2,
            initial_panels: 2,
            max_truncation: 60.0,
        };
        let hint = DecayHint::new(1.0, 0.0, 0.8);
        // Highly oscillatory and only slowly decaying: 2 splits cannot do it.
        let r = integrate_line(|t| c((40.0 * t).cos(), 0.0) * gaussian(t / 8.0), &hint, &cfg);
        match r {
            Err(QuadError::NoConvergence { partial }) => {
                assert!(partial.err_estimate > 1e-14);
                assert!(partial.value.is_finite());
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn fourier_of_gaussian_is_gaussian() {
        let cfg = QuadratureConfig::default();
        let hint = DecayHint::new(1.0, 0.0, PI);
        for &xi in &[0.0, 0.5, 1.0, 2.0] {
            let r = fourier_numeric(gaussian, xi, &hint, &cfg).unwrap();
            let expect = (-PI * xi * xi).exp();
            assert!(
                (r.value - c(expect, 0.0)).norm() < 1e-8,
                "xi = {xi}: {} vs {expect}",
                r.value
            );
        }
    }

    #[test]
    fn multiplication_formula_for_test_pairs() {
        // int F[f] g = int f F[g] for pairs from the kernel/Gaussian family.
        // The Gaussian envelope e^{-2 pi T} is valid for e^{-pi t^2} past
        // T = 2, so rate 2 pi keeps windows (and nested cost) tight.
        let cfg = QuadratureConfig::default().with_abs_tol(1e-11);
        let gauss = |t: f64| gaussian(t);
        let k11 = |t: f64| c(kernel_e(KernelParams { x: 1.0, a: 1.0 }, t), 0.0);
        let k072 = |t: f64| c(kernel_e(KernelParams { x: 0.7, a: 2.0 }, t), 0.0);
        let hints = [
            DecayHint::new(1.0, 0.0, 2.0 * PI),
            DecayHint::new(1.0, 0.0, 2.0 * PI),
            DecayHint::new(1.0, 0.0, 2.0 * PI * 0.7),
        ];
        let fns: [&dyn Fn(f64) -> Complex64; 3] = [&gauss, &k11, &k072];
        let outer_cfg = QuadratureConfig {
            abs_tol: 1e-8,
            rel_tol: 1e-8,
            ..Default::default()
        };
        // Outer decay: |F[kernel]| ~ e^{-pi|t|/2} times g's decay; rate pi
        // is a safe joint envelope for every pair here.
        let outer_hints = [
            DecayHint::new(1.0, 0.0, 2.0 * PI),
            DecayHint::new(1.0, 0.0, PI),
            DecayHint::new(1.0, 0.0, PI),
        ];
        for (case, (fi, gi)) in [(0usize, 0usize), (1, 0), (1, 2)].into_iter().enumerate() {
            let f = fns[fi];
            let g = fns[gi];
            let (hf, hg) = (hints[fi], hints[gi]);
            let lhs = integrate_line(
                |t| fourier_numeric(f, t, &hf, &cfg).map(|r| r.value).unwrap() * g(t),
                &outer_hints[case],
                &outer_cfg,
            )
            .unwrap()
            .value;
            let rhs = integrate_line(
                |t| f(t) * fourier_numeric(g, t, &hg, &cfg).map(|r| r.value).unwrap(),
                &outer_hints[case],
                &outer_cfg,
            )
            .unwrap()
            .value;
            assert!(
                (lhs - rhs).norm() < 1e-7 * lhs.norm().max(1.0),
                "pair ({fi},{gi}): {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn finite_interval_power_integral() {
        // int_1^4 x^{-2} dx = 3/4.
        let cfg = QuadratureConfig::default();
        let r = integrate_interval(|x| c(x.powi(-2), 0.0), 1.0, 4.0, 1.0, &cfg).unwrap();
        assert!((r.value.re - 0.75).abs() < 1e-12);
    }
}
