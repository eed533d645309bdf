//! Zero-ordinate tables and the explicit-formula route to zeta'/zeta.
//!
//! The bundled table carries the first 200 nontrivial zero ordinates to 12
//! decimals; they are re-derivable locally with [`find_zero_near`], so no
//! external source needs to be trusted. File format: UTF-8, one ordinate per
//! line, `#` comments, optional second column with a real offset `beta_off`
//! for hypothetical off-line zeros `rho = 1/2 + beta_off + i gamma`.

use crate::specialfn::{self, digamma, log_gamma, zeta};
use num_complex::Complex64;
use serde::Serialize;
use std::path::Path;
use thiserror::Error;

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Bundled ordinates, one per line, 12 decimals.
const BUNDLED: &str = include_str!("../data/zeros.txt");

/// How many leading entries get |zeta| validation on load.
const VALIDATE_COUNT: usize = 50;
/// Validation threshold on |zeta(1/2 + beta_off + i gamma)|.
const VALIDATE_TOL: f64 = 1e-6;

/// One table row: the i-th zero ordinate and its off-line offset (0 on the
/// Riemann hypothesis; the offset column supports counterfactual data).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroEntry {
    /// 1-based position in the table.
    pub index: usize,
    /// Ordinate gamma > 0.
    pub gamma_ord: f64,
    /// Real offset from the critical line; rho = 1/2 + beta_off + i gamma.
    pub beta_off: f64,
}

/// Ascending table of zero ordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroTable {
    pub entries: Vec<ZeroEntry>,
    /// Provenance string for reports ("bundled", a path, ...).
    pub source: String,
}

#[derive(Debug, Error)]
pub enum ZeroDbError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("entry {index} (gamma = {gamma_ord}): |zeta| = {zeta_mag:.3e} fails validation")]
    Validation {
        index: usize,
        gamma_ord: f64,
        zeta_mag: f64,
    },
    #[error("entry {index}: ordinates must be strictly ascending")]
    Order { index: usize },
    #[error("no sign change of the zero surrogate in [{lo}, {hi}]")]
    NotFound { lo: f64, hi: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Special(#[from] specialfn::SpecialFnError),
}

pub type Result<T> = std::result::Result<T, ZeroDbError>;

fn parse_table(text: &str, source: &str) -> Result<ZeroTable> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let gamma_ord: f64 = parts
            .next()
            .expect("non-empty line has a first token")
            .parse()
            .map_err(|e| ZeroDbError::Parse {
                line: i + 1,
                msg: format!("bad ordinate: {e}"),
            })?;
        let beta_off: f64 = match parts.next() {
            Some(tok) => tok.parse().map_err(|e| ZeroDbError::Parse {
                line: i + 1,
                msg: format!("bad beta offset: {e}"),
            })?,
            None => 0.0,
        };
        if let Some(extra) = parts.next() {
            return Err(ZeroDbError::Parse {
                line: i + 1,
                msg: format!("unexpected trailing token {extra:?}"),
            });
        }
        if !gamma_ord.is_finite() || gamma_ord <= 0.0 {
            return Err(ZeroDbError::Parse {
                line: i + 1,
                msg: format!("ordinate must be finite and positive, got {gamma_ord}"),
            });
        }
        entries.push(ZeroEntry {
            index: entries.len() + 1,
            gamma_ord,
            beta_off,
        });
    }
    for w in entries.windows(2) {
        if w[1].gamma_ord <= w[0].gamma_ord {
            return Err(ZeroDbError::Order { index: w[1].index });
        }
    }
    Ok(ZeroTable {
        entries,
        source: source.to_string(),
    })
}

fn validate_leading(table: &ZeroTable) -> Result<()> {
    for e in table.entries.iter().take(VALIDATE_COUNT) {
        let s = Complex64::new(0.5 + e.beta_off, e.gamma_ord);
        let mag = zeta(s)?.norm();
        if mag >= VALIDATE_TOL {
            return Err(ZeroDbError::Validation {
                index: e.index,
                gamma_ord: e.gamma_ord,
                zeta_mag: mag,
            });
        }
    }
    Ok(())
}

impl ZeroTable {
    /// First 100 bundled ordinates (the default working set).
    pub fn bundled() -> Self {
        let mut t = parse_table(BUNDLED, "bundled").expect("bundled table parses");
        t.entries.truncate(100);
        t
    }

    /// All bundled ordinates (200), for deeper truncation studies.
    pub fn bundled_extended() -> Self {
        parse_table(BUNDLED, "bundled-extended").expect("bundled table parses")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Load a table from disk; with `validate`, the leading entries (up to 50)
/// must satisfy |zeta(1/2 + beta_off + i gamma)| < 1e-6.
pub fn load_zeros(path: &Path, validate: bool) -> Result<ZeroTable> {
    let text = std::fs::read_to_string(path)?;
    let table = parse_table(&text, &path.display().to_string())?;
    if validate {
        validate_leading(&table)?;
    }
    Ok(table)
}

/// Parse a table from in-memory text (used by tests and the bundled data).
pub fn parse_zeros(text: &str, source: &str, validate: bool) -> Result<ZeroTable> {
    let table = parse_table(text, source)?;
    if validate {
        validate_leading(&table)?;
    }
    Ok(table)
}

/// Phase-corrected real zero surrogate: Z(t) = Re[e^{i theta(t)} zeta(1/2+it)]
/// with theta(t) = Im ln Gamma(1/4 + it/2) - (t/2) ln pi. Z is real-valued on
/// the critical line and changes sign at each simple zero.
pub fn zero_surrogate(t: f64) -> Result<f64> {
    let theta = log_gamma(Complex64::new(0.25, 0.5 * t))?.im
        - 0.5 * t * std::f64::consts::PI.ln();
    let z = zeta(Complex64::new(0.5, t))?;
    Ok((Complex64::new(0.0, theta).exp() * z).re)
}

/// Locate a zero ordinate near t0 by bisection on sign changes of the
/// surrogate. Scans `[t0 - window, t0 + window]`, picks the sign change
/// closest to t0, and bisects until |zeta(1/2 + i gamma)| < 1e-10.
pub fn find_zero_near(t0: f64, window: f64) -> Result<f64> {
    let lo = t0 - window;
    let hi = t0 + window;
    let samples = 400usize.max((window * 40.0) as usize);
    let mut best: Option<(f64, f64)> = None;
    let mut prev_t = lo;
    let mut prev_z = zero_surrogate(lo)?;
    for i in 1..=samples {
        let t = lo + (hi - lo) * (i as f64) / (samples as f64);
        let z = zero_surrogate(t)?;
        if prev_z == 0.0 {
            best = Some((prev_t, prev_t));
            break;
        }
        if z == 0.0 || (prev_z < 0.0) != (z < 0.0) {
            let mid = 0.5 * (prev_t + t);
            let better = match best {
                None => true,
                Some((a, b)) => (mid - t0).abs() < (0.5 * (a + b) - t0).abs(),
            };
            if better {
                best = Some((prev_t, t));
            }
        }
        prev_t = t;
        prev_z = z;
    }
    let (mut a, mut b) = best.ok_or(ZeroDbError::NotFound { lo, hi })?;
    let mut fa = zero_surrogate(a)?;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a) < 1e-13 * m.abs().max(1.0) {
            break;
        }
        let fm = zero_surrogate(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fa < 0.0) != (fm < 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    let gamma_ord = 0.5 * (a + b);
    let mag = zeta(Complex64::new(0.5, gamma_ord))?.norm();
    if mag >= 1e-10 {
        return Err(ZeroDbError::Validation {
            index: 0,
            gamma_ord,
            zeta_mag: mag,
        });
    }
    Ok(gamma_ord)
}

/// Archimedean term of the explicit formula:
/// E(s) = -B - (1/2) ln pi + (1/2) psi(s/2 + 1), with
/// B = (1/2) ln(4 pi) - 1 - euler_gamma/2.
///
/// With this E, `-zeta'/zeta(s) = -sum_rho (1/(s-rho) + 1/rho) + 1/(s-1) + E(s)`.
/// Poles at s in {-2, -4, ...}.
pub fn explicit_e(s: Complex64) -> specialfn::Result<Complex64> {
    let b = 0.5 * (4.0 * std::f64::consts::PI).ln() - 1.0 - 0.5 * EULER_GAMMA;
    Ok(-b - 0.5 * std::f64::consts::PI.ln() + 0.5 * digamma(0.5 * s + 1.0)?)
}

/// Order in which the four zeros attached to a table entry are accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pairing {
    /// Combine rho with conj(rho) (and reflections) before accumulating:
    /// partial sums over entries are then Cauchy.
    ConjugatePairs,
    /// Accumulate the individual zero terms in listed order. Same finite
    /// total, but partial sums oscillate; exists to expose the contrast.
    RawOrder,
}

/// Which pieces of the explicit formula to include.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExplicitFormulaConfig {
    /// Number of leading table entries (conjugate pairs) to sum.
    pub n_zeros: usize,
    /// Include the 1/(s-1) pole term.
    pub include_pole: bool,
    /// Include the archimedean term E(s).
    pub include_archimedean: bool,
    pub pairing: Pairing,
}

impl Default for ExplicitFormulaConfig {
    fn default() -> Self {
        Self {
            n_zeros: 100,
            include_pole: true,
            include_archimedean: true,
            pairing: Pairing::ConjugatePairs,
        }
    }
}

/// Explicit-formula approximation to `-zeta'/zeta(s)`:
/// `-sum_rho (1/(s-rho) + 1/rho) + [1/(s-1)] + [E(s)]` over the first
/// `n_zeros` entries. Each entry contributes rho and conj(rho); entries with
/// `beta_off != 0` also contribute the two reflected zeros `1 - conj(rho)`,
/// `1 - rho`.
pub fn explicit_log_deriv(
    s: Complex64,
    cfg: &ExplicitFormulaConfig,
    table: &ZeroTable,
) -> Result<Complex64> {
    if cfg.n_zeros > table.len() {
        return Err(ZeroDbError::Parse {
            line: 0,
            msg: format!(
                "n_zeros = {} exceeds table length {}",
                cfg.n_zeros,
                table.len()
            ),
        });
    }
    let term = |rho: Complex64| 1.0 / (s - rho) + 1.0 / rho;
    let mut zero_sum = Complex64::new(0.0, 0.0);
    for e in table.entries.iter().take(cfg.n_zeros) {
        let rho = Complex64::new(0.5 + e.beta_off, e.gamma_ord);
        let mut quad = [Some(rho), Some(rho.conj()), None, None];
        if e.beta_off != 0.0 {
            let refl = Complex64::new(1.0, 0.0) - rho.conj();
            quad[2] = Some(refl);
            quad[3] = Some(refl.conj());
        }
        match cfg.pairing {
            Pairing::ConjugatePairs => {
                let pair1 = term(quad[0].unwrap()) + term(quad[1].unwrap());
                let pair2 = match (quad[2], quad[3]) {
                    (Some(r1), Some(r2)) => term(r1) + term(r2),
                    _ => Complex64::new(0.0, 0.0),
                };
                zero_sum += pair1 + pair2;
            }
            Pairing::RawOrder => {
                for rho in quad.into_iter().flatten() {
                    zero_sum += term(rho);
                }
            }
        }
    }
    let mut out = -zero_sum;
    if cfg.include_pole {
        out += 1.0 / (s - 1.0);
    }
    if cfg.include_archimedean {
        out += explicit_e(s)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::zeta_log_deriv;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bundled_table_shape() {
        let t = ZeroTable::bundled();
        assert_eq!(t.len(), 100);
        assert!((t.entries[0].gamma_ord - 14.134_725_141_735).abs() < 1e-12);
        assert!((t.entries[1].gamma_ord - 21.022_039_638_772).abs() < 1e-12);
        assert!((t.entries[2].gamma_ord - 25.010_857_580_146).abs() < 1e-12);
        let ext = ZeroTable::bundled_extended();
        assert_eq!(ext.len(), 200);
        assert!(ext.entries.iter().all(|e| e.beta_off == 0.0));
    }

    #[test]
    fn bundled_leading_entries_validate() {
        let t = ZeroTable::bundled();
        validate_leading(&t).unwrap();
    }

    #[test]
    fn parser_handles_comments_offsets_and_errors() {
        let text = "# header\n14.0 0.1\n\n21.5  # trailing comment\n";
        let t = parse_zeros(text, "inline", false).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.entries[0].beta_off, 0.1);
        assert_eq!(t.entries[1].beta_off, 0.0);

        let bad = parse_zeros("14.0\nxyz\n", "inline", false);
        assert!(matches!(bad, Err(ZeroDbError::Parse { line: 2, .. })));

        let unordered = parse_zeros("21.0\n14.0\n", "inline", false);
        assert!(matches!(unordered, Err(ZeroDbError::Order { index: 2 })));

        let trailing = parse_zeros("14.0 0.0 9\n", "inline", false);
        assert!(matches!(trailing, Err(ZeroDbError::Parse { line: 1, .. })));
    }

    #[test]
    fn validation_rejects_a_non_zero() {
        let t = parse_zeros("14.5\n", "inline", true);
        assert!(matches!(t, Err(ZeroDbError::Validation { .. })));
    }

    #[test]
    fn find_first_zero_to_nine_decimals() {
        let g = find_zero_near(14.0, 1.0).unwrap();
        assert!((g - 14.134_725_141_734_695).abs() < 1e-9, "gamma = {g}");
    }

    #[test]
    fn find_zero_not_found_in_gap() {
        // No zero ordinate inside [2, 6].
        assert!(matches!(
            find_zero_near(4.0, 2.0),
            Err(ZeroDbError::NotFound { .. })
        ));
    }

    #[test]
    fn rederive_sampled_bundled_ordinates() {
        let t = ZeroTable::bundled_extended();
        for &i in &[0usize, 24, 99, 149, 199] {
            let e = &t.entries[i];
            let g = find_zero_near(e.gamma_ord, 0.05).unwrap();
            assert!(
                (g - e.gamma_ord).abs() < 5e-10,
                "entry {}: table {} vs derived {}",
                e.index,
                e.gamma_ord,
                g
            );
        }
    }

    #[test]
    fn archimedean_term_value_at_zero() {
        // At s = 0 the zero sum vanishes pairwise, so
        // -zeta'/zeta(0) = 1/(0-1) + E(0) = -ln(2 pi).
        let e0 = explicit_e(c(0.0, 0.0)).unwrap();
        let target = -(2.0 * std::f64::consts::PI).ln() + 1.0;
        assert!((e0.re - target).abs() < 1e-12, "{} vs {target}", e0.re);
        assert!(e0.im.abs() < 1e-14);
    }

    #[test]
    fn archimedean_term_pole_detected() {
        assert!(explicit_e(c(-2.0, 0.0)).is_err());
        assert!(explicit_e(c(-4.0, 0.0)).is_err());
    }

    #[test]
    fn explicit_formula_approximates_direct_route_at_two() {
        let table = ZeroTable::bundled();
        let cfg = ExplicitFormulaConfig::default();
        let lhs = explicit_log_deriv(c(2.0, 0.0), &cfg, &table).unwrap();
        let rhs = -zeta_log_deriv(c(2.0, 0.0)).unwrap();
        assert!(
            (lhs - rhs).norm() < 2e-2,
            "explicit {} vs direct {}",
            lhs,
            rhs
        );
    }

    #[test]
    fn explicit_formula_residual_shrinks_with_more_zeros() {
        let table = ZeroTable::bundled_extended();
        let direct = -zeta_log_deriv(c(2.0, 0.0)).unwrap();
        let mut prev = f64::INFINITY;
        for &n in &[25usize, 50, 100, 200] {
            let cfg = ExplicitFormulaConfig {
                n_zeros: n,
                ..Default::default()
            };
            let resid = (explicit_log_deriv(c(2.0, 0.0), &cfg, &table).unwrap() - direct).norm();
            assert!(
                resid < prev * 1.1,
                "residual at n = {n}: {resid} vs previous {prev}"
            );
            prev = resid;
        }
    }

    #[test]
    fn pairing_modes_agree_on_full_sums() {
        let table = ZeroTable::bundled();
        let s = c(1.5, 3.0);
        let a = explicit_log_deriv(
            s,
            &ExplicitFormulaConfig {
                pairing: Pairing::ConjugatePairs,
                ..Default::default()
            },
            &table,
        )
        .unwrap();
        let b = explicit_log_deriv(
            s,
            &ExplicitFormulaConfig {
                pairing: Pairing::RawOrder,
                ..Default::default()
            },
            &table,
        )
        .unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn off_line_entries_contribute_reflections() {
        // With beta_off = 0.1 the entry expands to the quadruple
        // {rho, conj rho, 1 - rho, 1 - conj rho}, closed under s -> 1 - s.
        // Hence f(s) + f(1-s) = -2 sum 1/rho_j, a constant.
        let t = parse_zeros("14.1 0.1\n", "inline", false).unwrap();
        let cfg = ExplicitFormulaConfig {
            n_zeros: 1,
            include_pole: false,
            include_archimedean: false,
            pairing: Pairing::ConjugatePairs,
        };
        let at = |s: Complex64| explicit_log_deriv(s, &cfg, &t).unwrap();
        let rho = c(0.6, 14.1);
        let quad = [rho, rho.conj(), c(1.0, 0.0) - rho, c(1.0, 0.0) - rho.conj()];
        let const_part: Complex64 = quad.iter().map(|r| -2.0 / r).sum();
        for &s in &[c(0.3, 0.7), c(2.0, -1.0)] {
            let total = at(s) + at(c(1.0, 0.0) - s);
            assert!(
                (total - const_part).norm() < 1e-12,
                "at s = {s}: {total} vs {const_part}"
            );
        }
    }

    #[test]
    fn n_zeros_beyond_table_is_rejected() {
        let table = ZeroTable::bundled();
        let cfg = ExplicitFormulaConfig {
            n_zeros: 101,
            ..Default::default()
        };
        assert!(explicit_log_deriv(c(2.0, 0.0), &cfg, &table).is_err());
    }
}
