//! Identity checkers: each evaluates the two sides of one exact equation by
//! independent routes (quadrature on the left, closed forms and series on the
//! right) and reports residuals.
//!
//! A suite is an ordered list of named cases. Suites can be built in code,
//! loaded from a key-value text file (see [`load_suite`]), or taken from
//! [`core_suite`]. Reports carry a verdict: `Pass`/`Fail` compare the
//! absolute residual against `err_budget = tol * max(1, |lhs|, |rhs|) +
//! series allowances`; `Inconclusive` means the quadrature error estimate
//! exceeded the budget, so the comparison proves nothing either way.

mod checkers;

pub use checkers::{
    check_alpha_integral, check_base, check_com4, check_eq_e, check_eq_e3_exact,
    check_fork_exact, check_fourier_kernel, check_lemma3, check_mu_limit,
    check_multiplication, kappa, FgPair,
};

use crate::cplx;
use crate::quad::{self, QuadratureConfig};
use crate::specialfn;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("{0}")]
    Domain(String),
    #[error("case {case}: missing parameter `{key}`")]
    MissingParam { case: String, key: String },
    #[error("case {case}: parameter `{key}` {msg}")]
    BadParam {
        case: String,
        key: String,
        msg: String,
    },
    #[error("unknown checker `{0}`")]
    UnknownChecker(String),
    #[error("suite line {line}: {msg}")]
    SuiteParse { line: usize, msg: String },
    #[error(transparent)]
    Quad(#[from] quad::QuadError),
    #[error(transparent)]
    Special(#[from] specialfn::SpecialFnError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, IdentityError>;

/// A suite parameter: a number (reals are complex with zero imaginary part)
/// or a symbolic token such as a pair name.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(Complex64),
    Text(String),
}

impl ParamValue {
    pub fn real(v: f64) -> Self {
        ParamValue::Number(Complex64::new(v, 0.0))
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Number(z) => write!(f, "{}", cplx::fmt_complex(*z)),
            ParamValue::Text(s) => write!(f, "{s}"),
        }
    }
}

/// One named identity instance: a checker id plus its parameter map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCase {
    pub name: String,
    pub checker: String,
    pub params: BTreeMap<String, ParamValue>,
    pub lhs_desc: String,
    pub rhs_desc: String,
}

impl IdentityCase {
    pub fn new(name: &str, checker: &str) -> Self {
        Self {
            name: name.to_string(),
            checker: checker.to_string(),
            params: BTreeMap::new(),
            lhs_desc: String::new(),
            rhs_desc: String::new(),
        }
    }

    pub fn with(mut self, key: &str, value: ParamValue) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_real(self, key: &str, v: f64) -> Self {
        self.with(key, ParamValue::real(v))
    }

    pub fn with_complex(self, key: &str, re: f64, im: f64) -> Self {
        self.with(key, ParamValue::Number(Complex64::new(re, im)))
    }

    pub fn with_text(self, key: &str, s: &str) -> Self {
        self.with(key, ParamValue::Text(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

/// Result of one identity evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub case: IdentityCase,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// |lhs - rhs|
    pub abs_resid: f64,
    /// abs_resid / max(|lhs|, |rhs|, 1e-300)
    pub rel_resid: f64,
    /// tol * max(1, |lhs|, |rhs|) plus any series-tail allowance
    pub err_budget: f64,
    /// Propagated quadrature error estimate (0 for quadrature-free checkers).
    pub quad_err: f64,
    pub verdict: Verdict,
    pub note: String,
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn build_report(
    mut case: IdentityCase,
    lhs_desc: &str,
    rhs_desc: &str,
    tol: f64,
    lhs: Complex64,
    rhs: Complex64,
    quad_err: f64,
    extra_budget: f64,
    note: String,
) -> IdentityReport {
    if case.lhs_desc.is_empty() {
        case.lhs_desc = lhs_desc.to_string();
    }
    if case.rhs_desc.is_empty() {
        case.rhs_desc = rhs_desc.to_string();
    }
    let abs_resid = (lhs - rhs).norm();
    let scale = lhs.norm().max(rhs.norm());
    let rel_resid = abs_resid / scale.max(1e-300);
    let err_budget = tol * scale.max(1.0) + extra_budget;
    let verdict = if quad_err > err_budget {
        Verdict::Inconclusive
    } else if abs_resid <= err_budget {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    IdentityReport {
        case,
        lhs,
        rhs,
        abs_resid,
        rel_resid,
        err_budget,
        quad_err,
        verdict,
        note,
    }
}

/// Weighted four-point combination over an alpha-parametrized two-sided
/// evaluator: `-E(alpha) + E(1) - 2^{d/2} E(2) + 2^{d/2} E(2 alpha)` applied
/// to each side. The weights telescope: an alpha-independent evaluator (or
/// alpha = 1) combines to exactly (0, 0) in floating point, because equal
/// inputs produce bitwise-equal evaluations.
pub fn combine_abc<F>(
    mut base_eval: F,
    alpha: f64,
    delta_p: f64,
) -> Result<(Complex64, Complex64)>
where
    F: FnMut(f64) -> Result<(Complex64, Complex64)>,
{
    let w = 2.0_f64.powf(delta_p / 2.0);
    let e_alpha = base_eval(alpha)?;
    let e_one = base_eval(1.0)?;
    let e_two = base_eval(2.0)?;
    let e_two_alpha = base_eval(2.0 * alpha)?;
    let lhs = -e_alpha.0 + e_one.0 - w * e_two.0 + w * e_two_alpha.0;
    let rhs = -e_alpha.1 + e_one.1 - w * e_two.1 + w * e_two_alpha.1;
    Ok((lhs, rhs))
}

/// Run every case in order. Individual failures never abort the suite: a
/// case whose checker errors out is reported as `Inconclusive` with the
/// error text in `note`.
pub fn run_suite(
    cases: &[IdentityCase],
    cfg: &QuadratureConfig,
    tol_override: Option<f64>,
) -> Vec<IdentityReport> {
    cases
        .iter()
        .map(|case| match checkers::run_case(case, cfg, tol_override) {
            Ok(report) => report,
            Err(e) => build_report(
                case.clone(),
                "(not evaluated)",
                "(not evaluated)",
                tol_override.unwrap_or(1e-8),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                f64::INFINITY,
                0.0,
                format!("error: {e}"),
            ),
        })
        .collect()
}

/// Parse a suite file.
///
/// Format: `[case]` opens a case; `key = value` lines fill it. `name` and
/// `checker` are required strings; every other value is parsed as a complex
/// number when possible (`1.5`, `2+3i`, `-i`) and kept as text otherwise.
/// `#` starts a comment. Case names must be unique.
pub fn parse_suite(text: &str) -> Result<Vec<IdentityCase>> {
    let mut cases: Vec<IdentityCase> = Vec::new();
    let mut current: Option<IdentityCase> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "[case]" {
            if let Some(c) = current.take() {
                cases.push(finish_case(c, idx)?);
            }
            current = Some(IdentityCase::new("", ""));
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(IdentityError::SuiteParse {
            line: idx + 1,
            msg: format!("expected `key = value`, got {line:?}"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let case = current.as_mut().ok_or(IdentityError::SuiteParse {
            line: idx + 1,
            msg: "key outside of a [case] section".to_string(),
        })?;
        match key {
            "name" => case.name = value.to_string(),
            "checker" => case.checker = value.to_string(),
            "lhs_desc" => case.lhs_desc = value.to_string(),
            "rhs_desc" => case.rhs_desc = value.to_string(),
            _ => {
                let pv = match cplx::parse_complex(value) {
                    Ok(z) => ParamValue::Number(z),
                    Err(_) => ParamValue::Text(value.to_string()),
                };
                case.params.insert(key.to_string(), pv);
            }
        }
    }
    if let Some(c) = current.take() {
        cases.push(finish_case(c, usize::MAX)?);
    }
    let mut seen = std::collections::BTreeSet::new();
    for c in &cases {
        if !seen.insert(c.name.clone()) {
            return Err(IdentityError::SuiteParse {
                line: 0,
                msg: format!("duplicate case name {:?}", c.name),
            });
        }
    }
    Ok(cases)
}

fn finish_case(c: IdentityCase, end_line: usize) -> Result<IdentityCase> {
    if c.name.is_empty() || c.checker.is_empty() {
        return Err(IdentityError::SuiteParse {
            line: if end_line == usize::MAX { 0 } else { end_line },
            msg: "case needs both `name` and `checker`".to_string(),
        });
    }
    Ok(c)
}

pub fn load_suite(path: &Path) -> Result<Vec<IdentityCase>> {
    parse_suite(&std::fs::read_to_string(path)?)
}

/// Built-in suite covering every checker at its reference parameters.
pub fn core_suite() -> Vec<IdentityCase> {
    let c = IdentityCase::new;
    vec![
        c("base-sech-anchor", "base")
            .with_real("x1", 0.5)
            .with_real("x2", 0.5)
            .with_real("m", 1.0)
            .with_real("n", 1.0)
            .with_real("tol", 1e-9),
        c("base-gamma1-anchor", "base")
            .with_real("x1", 1.0)
            .with_real("x2", 1.0)
            .with_real("m", 1.0)
            .with_real("n", 1.0)
            .with_real("tol", 1e-9),
        c("base-complex", "base")
            .with_complex("x1", 1.5, 0.3)
            .with_real("x2", 0.8)
            .with_real("m", 2.0)
            .with_real("n", 3.0),
        c("kernel-transform-identity-point", "fourier_kernel")
            .with_real("x", 1.0)
            .with_real("a", 1.0)
            .with_real("xi", 0.0)
            .with_real("tol", 1e-7),
        c("kernel-transform-shifted", "fourier_kernel")
            .with_real("x", 1.0)
            .with_real("a", 2.0)
            .with_real("xi", 1.0)
            .with_real("tol", 1e-7),
        c("kernel-transform-negative-xi", "fourier_kernel")
            .with_real("x", 0.5)
            .with_real("a", 1.0)
            .with_real("xi", -2.0)
            .with_real("tol", 1e-7),
        c("multiplication-gauss-gauss", "multiplication")
            .with_text("pair", "gauss-gauss")
            .with_real("tol", 1e-8),
        c("multiplication-kernel-gauss", "multiplication")
            .with_text("pair", "kernel-gauss")
            .with_real("tol", 1e-7),
        c("multiplication-kernel-kernel", "multiplication")
            .with_text("pair", "kernel-kernel")
            .with_real("tol", 1e-7),
        c("integrated-pair-unit", "eq_e")
            .with_real("x1", 1.0)
            .with_real("x2", 1.0)
            .with_real("m", 1.0),
        c("integrated-pair-generic", "eq_e")
            .with_real("x1", 2.0)
            .with_real("x2", 1.2)
            .with_real("m", 3.0),
        c("integrated-pair-oscillatory", "eq_e")
            .with_complex("x1", 1.0, 5.0)
            .with_real("x2", 1.0)
            .with_real("m", 2.0)
            .with_real("tol", 1e-7),
        c("dirichlet-weighted-alpha1", "eq_e3_exact")
            .with_real("x1", 1.6)
            .with_real("x2", 1.4)
            .with_real("alpha", 1.0)
            .with_real("delta_p", 0.5)
            .with_real("tp", 0.0)
            .with_real("m_cap", 100_000.0)
            .with_real("tol", 1e-6),
        c("dirichlet-weighted-alpha2", "eq_e3_exact")
            .with_real("x1", 2.0)
            .with_real("x2", 2.0)
            .with_real("alpha", 2.0)
            .with_real("delta_p", 0.5)
            .with_real("tp", 0.0)
            .with_real("m_cap", 100_000.0)
            .with_real("tol", 1e-6),
        c("four-point-combination", "fork")
            .with_real("x1", 1.6)
            .with_real("x2", 1.4)
            .with_real("alpha", 2.0)
            .with_real("delta_p", 0.5)
            .with_real("tp", 0.0)
            .with_real("m_cap", 100_000.0)
            .with_real("tol", 1e-5),
        c("double-integrated-anchor", "com4")
            .with_real("x1", 2.0)
            .with_real("x2", 2.0)
            .with_real("alpha", 1.0),
        c("double-integrated-generic", "com4")
            .with_real("x1", 1.5)
            .with_real("x2", 2.5)
            .with_real("alpha", 2.0),
        c("double-integrated-complex", "com4")
            .with_complex("x1", 2.0, 3.0)
            .with_real("x2", 2.0)
            .with_real("alpha", 1.0)
            .with_real("tol", 1e-7),
        c("four-gamma-ordinate", "lemma3")
            .with_real("x", 2.0)
            .with_real("q", 0.25)
            .with_real("tau", 14.134725)
            .with_real("tpp", 14.134725)
            .with_real("alpha", 1.0)
            .with_real("delta_p", 0.5)
            .with_real("tol", 1e-7),
        c("four-gamma-central", "lemma3")
            .with_real("x", 2.5)
            .with_real("q", 0.5)
            .with_real("tau", 0.0)
            .with_real("tpp", 0.0)
            .with_real("alpha", 2.0)
            .with_real("delta_p", 0.5)
            .with_real("tol", 1e-7),
        c("alpha-tail-cubic", "alpha_integral")
            .with_real("x", 0.0)
            .with_real("a", 3.0),
        c("alpha-tail-complex", "alpha_integral")
            .with_complex("x", 0.25, -0.5)
            .with_real("a", 3.0),
        c("alpha-tail-slow", "alpha_integral")
            .with_real("x", 0.0)
            .with_real("a", 1.5),
        c("removable-limit-first-ordinate", "mu_limit")
            .with_real("d", 0.25)
            .with_real("delta_i", -0.25)
            .with_real("tau_i", 14.134725)
            .with_real("tp", 0.0)
            .with_real("tol", 1e-5),
        c("removable-limit-second-ordinate", "mu_limit")
            .with_real("d", 0.25)
            .with_real("delta_i", -0.25)
            .with_real("tau_i", 21.022040)
            .with_real("tp", 0.0)
            .with_real("tol", 1e-5),
    ]
}
