//! Command-line front end: identity suites, cancellation audits, zero-table
//! management, and explicit-formula route comparisons.
//!
//! Exit codes: 0 success, 1 failed checks (or zero-table validation failure),
//! 2 inconclusive checks / unconverged audit, 3 configuration or IO errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zeta_lab::cplx::{fmt_complex, fmt_f64, parse_complex};
use zeta_lab::identities::{self, IdentityReport, Verdict};
use zeta_lab::quad::QuadratureConfig;
use zeta_lab::specialfn::{lambda_series, zeta, zeta_log_deriv};
use zeta_lab::zerodb::{self, ExplicitFormulaConfig, ZeroDbError, ZeroTable};
use zeta_lab::{audit, Complex64};

#[derive(Parser)]
#[command(
    name = "zeta-lab",
    version,
    about = "Numerical laboratory for Gamma/zeta integral identities and explicit-formula audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity suite and report per-case residuals.
    Verify(VerifyArgs),
    /// Measure the claimed cancellation A* + S0 across a delta' grid.
    Audit(AuditArgs),
    /// Inspect or search the zero table.
    Zeros(ZerosArgs),
    /// Compare the three routes to -zeta'/zeta(s).
    Explicit(ExplicitArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format.
    #[arg(long = "output-format", value_enum, default_value = "text")]
    output_format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite file; the built-in core suite when absent.
    #[arg(long)]
    suite: Option<PathBuf>,
    /// Tolerance override for cases without an explicit `tol` parameter.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct AuditArgs {
    /// Offsets delta' to audit, comma-separated.
    #[arg(long = "delta-p", value_delimiter = ',', default_values_t = [0.3, 0.5, 0.7])]
    delta_p: Vec<f64>,
    /// Imaginary displacement epsilon of the evaluation point.
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    /// Number of leading zero pairs to accumulate.
    #[arg(long = "n-zeros", default_value_t = 100)]
    n_zeros: usize,
    /// Alpha grid carried in the report parameters, comma-separated.
    #[arg(long = "alpha-grid", value_delimiter = ',', default_values_t = [1.0, 2.0, 10.0, 100.0])]
    alpha_grid: Vec<f64>,
    /// Zero-table file; falls back to ZETA_AUDIT_ZEROS, then the bundled table.
    #[arg(long)]
    zeros: Option<PathBuf>,
    /// Cauchy convergence tolerance |S0(N) - S0(N/2)|.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(subcommand)]
    action: ZerosAction,
}

#[derive(Subcommand)]
enum ZerosAction {
    /// Evaluate |zeta| at every table entry and flag non-zeros.
    Validate {
        /// "bundled" or a path; ZETA_AUDIT_ZEROS, then bundled, when absent.
        source: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bisect for a zero ordinate near a point.
    Find {
        /// Center of the search window.
        #[arg(long)]
        near: f64,
        /// Half-width of the search window.
        #[arg(long, default_value_t = 1.0)]
        window: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct ExplicitArgs {
    /// Evaluation point, e.g. "2", "0.5+3i".
    #[arg(long, value_parser = parse_complex_arg)]
    s: Complex64,
    /// Deepest zero-sum truncation.
    #[arg(long = "n-zeros", default_value_t = 100)]
    n_zeros: usize,
    /// Zero-table file; falls back to ZETA_AUDIT_ZEROS, then the bundled table.
    #[arg(long)]
    zeros: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_complex_arg(s: &str) -> Result<Complex64, String> {
    parse_complex(s)
}

/// Failure that carries its process exit code (3 = config/IO unless noted).
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn config(msg: impl Into<String>) -> Self {
        Self {
            code: 3,
            msg: msg.into(),
        }
    }
}

type CmdResult = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    // Keep exit 2 reserved for inconclusive/unconverged results: argument
    // errors leave through the config path (3), help/version through 0.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };
    let code = match cli.command {
        Command::Verify(a) => {
            let r = run_verify(&a);
            finish(&a.out, r)
        }
        Command::Audit(a) => {
            let r = run_audit(&a);
            finish(&a.out, r)
        }
        Command::Zeros(a) => match &a.action {
            ZerosAction::Validate { source, out } => {
                let r = run_zeros_validate(source.as_deref(), out);
                finish(out, r)
            }
            ZerosAction::Find { near, window, out } => {
                let r = run_zeros_find(*near, *window, out);
                finish(out, r)
            }
        },
        Command::Explicit(a) => {
            let r = run_explicit(&a);
            finish(&a.out, r)
        }
    };
    ExitCode::from(code)
}

fn finish(out: &OutputArgs, result: CmdResult) -> u8 {
    match result {
        Ok((body, code)) => match emit(out, &body) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                3
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

fn emit(out: &OutputArgs, body: &str) -> std::io::Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}

/// 12-significant-digit scientific form used for every residual column.
fn sci(x: f64) -> String {
    format!("{x:.11e}")
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 1e-14 && tol < 1.0 {
        Ok(())
    } else {
        Err(Failure::config(format!(
            "tol must lie in (1e-14, 1), got {tol}"
        )))
    }
}

fn json_body(command: &str, params: Value, results: Value) -> String {
    let doc = json!({
        "command": command,
        "params": params,
        "results": results,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

/// Zero table from an explicit flag, then ZETA_AUDIT_ZEROS, then the bundled
/// data (extended to 200 entries when more than 100 are requested).
fn resolve_table(flag: Option<&Path>, min_len: usize) -> Result<ZeroTable, Failure> {
    let from_file = |p: &Path| {
        zerodb::load_zeros(p, true)
            .map_err(|e| Failure::config(format!("zero table {}: {e}", p.display())))
    };
    if let Some(p) = flag {
        return from_file(p);
    }
    if let Ok(envp) = std::env::var("ZETA_AUDIT_ZEROS") {
        if !envp.is_empty() {
            return from_file(Path::new(&envp));
        }
    }
    Ok(if min_len <= 100 {
        ZeroTable::bundled()
    } else {
        ZeroTable::bundled_extended()
    })
}

fn run_verify(a: &VerifyArgs) -> CmdResult {
    if let Some(t) = a.tol {
        check_tol(t)?;
    }
    let (cases, suite_name) = match &a.suite {
        Some(path) => (
            identities::load_suite(path)
                .map_err(|e| Failure::config(format!("suite {}: {e}", path.display())))?,
            path.display().to_string(),
        ),
        None => (identities::core_suite(), "core".to_string()),
    };
    let reports = identities::run_suite(&cases, &QuadratureConfig::default(), a.tol);
    let fails = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    let inconclusive = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Inconclusive)
        .count();
    let code = if fails > 0 {
        1
    } else if inconclusive > 0 {
        2
    } else {
        0
    };
    let body = match a.out.output_format {
        Format::Text => verify_text(&reports, fails, inconclusive),
        Format::Csv => verify_csv(&reports),
        Format::Json => json_body(
            "verify",
            json!({ "suite": suite_name, "tol": a.tol }),
            serde_json::to_value(&reports).expect("report serializes"),
        ),
    };
    Ok((body, code))
}

fn verify_text(reports: &[IdentityReport], fails: usize, inconclusive: usize) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "{:<36} {:>20} {:>20} {:>20} {}\n",
        "case", "|lhs|", "|rhs|", "rel_resid", "verdict"
    ));
    for r in reports {
        s.push_str(&format!(
            "{:<36} {:>20} {:>20} {:>20} {}\n",
            r.case.name,
            fmt_f64(r.lhs.norm()),
            fmt_f64(r.rhs.norm()),
            sci(r.rel_resid),
            r.verdict
        ));
        if !r.note.is_empty() {
            s.push_str(&format!("    note: {}\n", r.note));
        }
    }
    s.push_str(&format!(
        "{} cases: {} pass, {} fail, {} inconclusive\n",
        reports.len(),
        reports.len() - fails - inconclusive,
        fails,
        inconclusive
    ));
    s
}

fn verify_csv(reports: &[IdentityReport]) -> String {
    let mut s = String::from(
        "name,checker,lhs_mag,rhs_mag,abs_resid,rel_resid,err_budget,quad_err,verdict\n",
    );
    for r in reports {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.case.name,
            r.case.checker,
            fmt_f64(r.lhs.norm()),
            fmt_f64(r.rhs.norm()),
            sci(r.abs_resid),
            sci(r.rel_resid),
            sci(r.err_budget),
            sci(r.quad_err),
            r.verdict
        ));
    }
    s
}

fn run_audit(a: &AuditArgs) -> CmdResult {
    check_tol(a.tol)?;
    let table = resolve_table(a.zeros.as_deref(), a.n_zeros)?;
    let mut reports = Vec::with_capacity(a.delta_p.len());
    for &dp in &a.delta_p {
        let params = audit::AuditParams {
            delta_p: dp,
            t_prime: 0.0,
            eps: a.eps,
            n_zeros: a.n_zeros,
            alpha_grid: a.alpha_grid.clone(),
            m_cap: 100_000,
        };
        let report = audit::audit_step1(&params, &table, a.tol)
            .map_err(|e| Failure::config(format!("audit at delta' = {dp}: {e}")))?;
        reports.push(report);
    }
    let all_converged = reports.iter().all(|r| r.converged);
    let code = if all_converged { 0 } else { 2 };
    let body = match a.out.output_format {
        Format::Text => audit_text(&reports),
        Format::Csv => audit_csv(&reports),
        Format::Json => json_body(
            "audit",
            json!({
                "delta_p_grid": a.delta_p,
                "eps": a.eps,
                "n_zeros": a.n_zeros,
                "alpha_grid": a.alpha_grid,
                "conv_tol": a.tol,
                "zero_source": table.source,
            }),
            serde_json::to_value(&reports).expect("report serializes"),
        ),
    };
    Ok((body, code))
}

fn audit_text(reports: &[audit::AuditReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let p = &r.params;
        s.push_str(&format!(
            "audit delta_p = {}  eps = {}  t_prime = {}  n_zeros = {}\n",
            p.delta_p, p.eps, p.t_prime, p.n_zeros
        ));
        s.push_str(&format!("  zero table     : {}\n", r.zero_source));
        s.push_str(&format!("  A0             = {}\n", fmt_complex(r.a0)));
        s.push_str(&format!("  A*             = {}\n", fmt_complex(r.a_star)));
        s.push_str(&format!("  S0             = {}\n", fmt_complex(r.s0)));
        s.push_str(&format!("  claim_resid    = {}\n", sci(r.claim_resid)));
        s.push_str(&format!(
            "  converged      = {} (|S0(N) - S0(N/2)| < {})\n",
            r.converged,
            sci(r.conv_tol)
        ));
        s.push_str(&format!("  a0_cross_resid = {}\n", sci(r.a0_cross_resid)));
        for note in &r.notes {
            s.push_str(&format!("  note: {note}\n"));
        }
        s.push('\n');
    }
    s
}

fn audit_csv(reports: &[audit::AuditReport]) -> String {
    let mut s = String::from(
        "delta_p,eps,t_prime,n_zeros,zero_source,a0_re,a0_im,a_star_re,a_star_im,\
         s0_re,s0_im,claim_resid,converged,a0_cross_resid\n",
    );
    for r in reports {
        let p = &r.params;
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            p.delta_p,
            p.eps,
            p.t_prime,
            p.n_zeros,
            r.zero_source,
            fmt_f64(r.a0.re),
            fmt_f64(r.a0.im),
            fmt_f64(r.a_star.re),
            fmt_f64(r.a_star.im),
            fmt_f64(r.s0.re),
            fmt_f64(r.s0.im),
            sci(r.claim_resid),
            r.converged,
            sci(r.a0_cross_resid)
        ));
    }
    s
}

/// Validation/search failures exit 1; only real IO failures exit 3.
fn zeros_failure(context: &str, e: ZeroDbError) -> Failure {
    let code = match e {
        ZeroDbError::Io(_) => 3,
        _ => 1,
    };
    Failure {
        code,
        msg: format!("{context}: {e}"),
    }
}

fn run_zeros_validate(source: Option<&str>, out: &OutputArgs) -> CmdResult {
    let (table, label) = match source {
        Some("bundled") => (ZeroTable::bundled(), "bundled".to_string()),
        Some(path) => (
            zerodb::load_zeros(Path::new(path), false)
                .map_err(|e| zeros_failure(&format!("zero table {path}"), e))?,
            path.to_string(),
        ),
        None => (resolve_table(None, 0)?, String::new()),
    };
    let label = if label.is_empty() {
        table.source.clone()
    } else {
        label
    };
    let mut rows = Vec::with_capacity(table.len());
    let mut first_bad: Option<usize> = None;
    for e in &table.entries {
        let s = Complex64::new(0.5 + e.beta_off, e.gamma_ord);
        let mag = zeta(s)
            .map_err(|err| zeros_failure(&format!("entry {} (gamma = {})", e.index, e.gamma_ord), err.into()))?
            .norm();
        if mag >= 1e-6 && first_bad.is_none() {
            first_bad = Some(e.index);
        }
        rows.push((e.index, e.gamma_ord, e.beta_off, mag));
    }
    let code = if first_bad.is_some() { 1 } else { 0 };
    let body = match out.output_format {
        Format::Text => {
            let mut s = format!("zero table: {label}\n");
            s.push_str(&format!(
                "{:>6} {:>20} {:>12} {:>20}\n",
                "index", "gamma", "beta_off", "|zeta(rho)|"
            ));
            for (i, g, b, m) in &rows {
                s.push_str(&format!(
                    "{i:>6} {:>20} {b:>12} {:>20}\n",
                    fmt_f64(*g),
                    sci(*m)
                ));
            }
            match first_bad {
                Some(i) => s.push_str(&format!(
                    "validation FAILED at entry {i}: |zeta| >= 1e-6\n"
                )),
                None => s.push_str(&format!("{} entries validate: all |zeta| < 1e-6\n", rows.len())),
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("index,gamma,beta_off,zeta_mag\n");
            for (i, g, b, m) in &rows {
                s.push_str(&format!("{i},{},{b},{}\n", fmt_f64(*g), sci(*m)));
            }
            s
        }
        Format::Json => json_body(
            "zeros-validate",
            json!({ "source": label }),
            Value::Array(
                rows.iter()
                    .map(|(i, g, b, m)| {
                        json!({ "index": i, "gamma": g, "beta_off": b, "zeta_mag": m })
                    })
                    .collect(),
            ),
        ),
    };
    Ok((body, code))
}

fn run_zeros_find(near: f64, window: f64, out: &OutputArgs) -> CmdResult {
    let ordinate = zerodb::find_zero_near(near, window)
        .map_err(|e| zeros_failure(&format!("search near {near}"), e))?;
    let body = match out.output_format {
        Format::Text => format!(
            "zero ordinate near {near} (window {window}): {ordinate:.9}\n  full precision: {}\n",
            fmt_f64(ordinate)
        ),
        Format::Csv => format!("near,window,ordinate\n{near},{window},{}\n", fmt_f64(ordinate)),
        Format::Json => json_body(
            "zeros-find",
            json!({ "near": near, "window": window }),
            json!([{ "ordinate": ordinate }]),
        ),
    };
    Ok((body, 0))
}

/// Truncation ladder 25, 50, 100, ... capped by (and always ending at) n.
fn truncation_ladder(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 25;
    while k < n {
        out.push(k);
        k *= 2;
    }
    out.push(n);
    out
}

fn run_explicit(a: &ExplicitArgs) -> CmdResult {
    if a.n_zeros == 0 {
        return Err(Failure::config("n-zeros must be at least 1"));
    }
    let table = resolve_table(a.zeros.as_deref(), a.n_zeros)?;
    if a.n_zeros > table.len() {
        return Err(Failure::config(format!(
            "n-zeros = {} exceeds the {} entries in the table",
            a.n_zeros,
            table.len()
        )));
    }
    // All three routes target -zeta'/zeta(s).
    let direct = -zeta_log_deriv(a.s).map_err(|e| Failure::config(format!("direct route: {e}")))?;
    let lambda_cap = 100_000u64;
    let lambda = if a.s.re > 1.0 {
        Some(
            lambda_series(a.s, lambda_cap)
                .map_err(|e| Failure::config(format!("Dirichlet route: {e}")))?,
        )
    } else {
        None
    };
    let mut rows = Vec::new();
    for n in truncation_ladder(a.n_zeros) {
        let cfg = ExplicitFormulaConfig {
            n_zeros: n,
            ..ExplicitFormulaConfig::default()
        };
        let value = zerodb::explicit_log_deriv(a.s, &cfg, &table)
            .map_err(|e| Failure::config(format!("zero-sum route at N = {n}: {e}")))?;
        rows.push((n, value, (value - direct).norm()));
    }
    let body = match a.out.output_format {
        Format::Text => {
            let mut s = format!("-zeta'/zeta routes at s = {}\n", fmt_complex(a.s));
            s.push_str(&format!("  zero table: {}\n", table.source));
            s.push_str(&format!("  direct          = {}\n", fmt_complex(direct)));
            match &lambda {
                Some(l) => s.push_str(&format!(
                    "  Dirichlet sum   = {} (cap {}, tail bound {})\n",
                    fmt_complex(l.value),
                    l.cap,
                    sci(l.tail_bound)
                )),
                None => s.push_str("  Dirichlet sum   = N/A (Re s <= 1)\n"),
            }
            s.push_str(&format!(
                "{:>6} {:>36} {:>20}\n",
                "N", "zero-sum route", "|route - direct|"
            ));
            for (n, v, resid) in &rows {
                s.push_str(&format!(
                    "{n:>6} {:>36} {:>20}\n",
                    fmt_complex(*v),
                    sci(*resid)
                ));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("n_zeros,route_re,route_im,abs_resid\n");
            for (n, v, resid) in &rows {
                s.push_str(&format!(
                    "{n},{},{},{}\n",
                    fmt_f64(v.re),
                    fmt_f64(v.im),
                    sci(*resid)
                ));
            }
            s
        }
        Format::Json => json_body(
            "explicit",
            json!({
                "s": a.s,
                "n_zeros": a.n_zeros,
                "zero_source": table.source,
                "direct": direct,
                "dirichlet": lambda.as_ref().map(|l| l.value),
                "dirichlet_tail": lambda.as_ref().map(|l| l.tail_bound),
                "dirichlet_cap": lambda.as_ref().map(|l| l.cap),
            }),
            Value::Array(
                rows.iter()
                    .map(|(n, v, resid)| json!({ "n_zeros": n, "value": v, "abs_resid": resid }))
                    .collect(),
            ),
        ),
    };
    Ok((body, 0))
}
