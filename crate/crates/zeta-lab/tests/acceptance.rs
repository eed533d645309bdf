//! Acceptance gate: one test per criterion, named so the harness prints one
//! pass/fail line per criterion. Each test also prints a `criterion N (...)`
//! summary line (visible with --nocapture) carrying the measured numbers.

use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use zeta_lab::audit::{audit_step1, check_break_bound, check_n1_trend, AuditParams};
use zeta_lab::cplx::powc_real;
use zeta_lab::identities::{
    check_base, check_com4, check_eq_e, check_eq_e3_exact, check_fourier_kernel, check_lemma3,
    check_multiplication, combine_abc, kappa, FgPair, IdentityReport, Verdict,
};
use zeta_lab::quad::QuadratureConfig;
use zeta_lab::specialfn::{gamma, zeta, zeta_log_deriv, DecayFamily};
use zeta_lab::zerodb::{explicit_log_deriv, ExplicitFormulaConfig, ZeroTable};
use zeta_lab::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

/// Collects sub-check failures; the criterion passes iff none accumulate.
struct Gate {
    n: u32,
    label: &'static str,
    bad: Vec<String>,
}

impl Gate {
    fn new(n: u32, label: &'static str) -> Self {
        Self {
            n,
            label,
            bad: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.bad.push(what.into());
        }
    }

    fn finish(self, detail: &str) {
        let ok = self.bad.is_empty();
        println!(
            "criterion {} ({}): {}{}",
            self.n,
            self.label,
            if ok { "PASS" } else { "FAIL" },
            if detail.is_empty() {
                String::new()
            } else {
                format!(" [{detail}]")
            }
        );
        assert!(ok, "criterion {} failed:\n{}", self.n, self.bad.join("\n"));
    }
}

fn pass_with_rel(g: &mut Gate, r: &IdentityReport, rel_tol: f64) {
    g.check(
        r.verdict == Verdict::Pass,
        format!("{}: verdict {}, note {}", r.case.name, r.verdict, r.note),
    );
    g.check(
        r.rel_resid < rel_tol,
        format!("{}: rel_resid {:.3e} >= {rel_tol:.0e}", r.case.name, r.rel_resid),
    );
}

#[test]
fn criterion_01_special_function_contracts() {
    let t0 = Instant::now();
    let mut g = Gate::new(1, "gamma properties and zeta closed forms");
    let mut rng = StdRng::seed_from_u64(0x01d_5eed);
    let mut worst_rec = 0.0_f64;
    let mut worst_refl = 0.0_f64;
    for _ in 0..1000 {
        let z = loop {
            let re: f64 = rng.gen_range(-4.5..4.5);
            let im: f64 = rng.gen_range(-25.0..25.0);
            // Keep both z and 1 - z away from the poles on the real axis.
            if im.abs() > 0.5 || (re - re.round()).abs() > 0.1 {
                break c(re, im);
            }
        };
        let gz = gamma(z).unwrap();
        let gz1 = gamma(z + 1.0).unwrap();
        let rec = (gz1 - z * gz).norm() / gz1.norm();
        worst_rec = worst_rec.max(rec);
        let refl = (gz * gamma(c(1.0, 0.0) - z).unwrap() * (std::f64::consts::PI * z).sin()
            / std::f64::consts::PI
            - 1.0)
            .norm();
        worst_refl = worst_refl.max(refl);
    }
    g.check(worst_rec <= 1e-10, format!("recurrence worst {worst_rec:.3e}"));
    g.check(worst_refl <= 1e-10, format!("reflection worst {worst_refl:.3e}"));

    let pi = std::f64::consts::PI;
    let z2 = (zeta(c(2.0, 0.0)).unwrap() - pi * pi / 6.0).norm();
    let z0 = (zeta(c(0.0, 0.0)).unwrap() + 0.5).norm();
    let zm1 = (zeta(c(-1.0, 0.0)).unwrap() + 1.0 / 12.0).norm();
    g.check(z2 <= 1e-12, format!("zeta(2) off by {z2:.3e}"));
    g.check(z0 <= 1e-12, format!("zeta(0) off by {z0:.3e}"));
    g.check(zm1 <= 1e-12, format!("zeta(-1) off by {zm1:.3e}"));

    let dt = t0.elapsed().as_secs_f64();
    g.check(dt < 5.0, format!("runtime {dt:.2}s >= 5s"));
    g.finish(&format!(
        "recurrence {worst_rec:.1e}, reflection {worst_refl:.1e}, {dt:.2}s"
    ));
}

#[test]
fn criterion_02_gamma_pair_integral_grid() {
    let t0 = Instant::now();
    let mut g = Gate::new(2, "two-Gamma line integral closed form");
    let cfg = cfg();
    let xs = [c(0.6, 0.0), c(1.0, 0.0), c(1.5, 0.5)];
    let mut worst = 0.0_f64;
    for &x1 in &xs {
        for &x2 in &xs {
            for m in [1.0, 2.0] {
                for n in [1.0, 2.0] {
                    let r = check_base(x1, x2, m, n, &cfg).unwrap();
                    worst = worst.max(r.rel_resid);
                    g.check(
                        r.rel_resid < 1e-8,
                        format!("{}: rel_resid {:.3e}", r.case.name, r.rel_resid),
                    );
                }
            }
        }
    }
    let pi = std::f64::consts::PI;
    let a1 = check_base(c(0.5, 0.0), c(0.5, 0.0), 1.0, 1.0, &cfg).unwrap();
    let a2 = check_base(c(1.0, 0.0), c(1.0, 0.0), 1.0, 1.0, &cfg).unwrap();
    let d1 = (a1.lhs - pi).norm();
    let d2 = (a2.lhs - pi / 2.0).norm();
    g.check(d1 <= 1e-9, format!("pi anchor off by {d1:.3e}"));
    g.check(d2 <= 1e-9, format!("pi/2 anchor off by {d2:.3e}"));

    let dt = t0.elapsed().as_secs_f64();
    g.check(dt < 30.0, format!("runtime {dt:.2}s >= 30s"));
    g.finish(&format!("36 grid cases worst rel {worst:.1e}, anchors {d1:.1e}/{d2:.1e}, {dt:.2}s"));
}

#[test]
fn criterion_03_kernel_transform_and_multiplication() {
    let mut g = Gate::new(3, "kernel Fourier transform and multiplication formula");
    let cfg = cfg();
    for (x, a, xi) in [(1.0, 1.0, 0.0), (1.0, 2.0, 1.0), (0.5, 1.0, -2.0)] {
        let r = check_fourier_kernel(x, a, xi, &cfg).unwrap();
        pass_with_rel(&mut g, &r, 1e-7);
    }
    for pair in [FgPair::GaussGauss, FgPair::KernelGauss, FgPair::KernelKernel] {
        let r = check_multiplication(pair, &cfg).unwrap();
        pass_with_rel(&mut g, &r, 1e-7);
    }
    g.finish("3 transform cases + 3 pair cases at rel < 1e-7");
}

#[test]
fn criterion_04_integrated_pair_and_dirichlet_chain() {
    let mut g = Gate::new(4, "integrated pair, weighted Dirichlet sum, four-point combination");
    let cfg = cfg();
    for (x1, x2, m, tol) in [
        (c(1.0, 0.0), c(1.0, 0.0), 1.0, 1e-8),
        (c(2.0, 0.0), c(1.2, 0.0), 3.0, 1e-8),
        (c(1.0, 5.0), c(1.0, 0.0), 2.0, 1e-7),
    ] {
        let r = check_eq_e(x1, x2, m, &cfg).unwrap();
        pass_with_rel(&mut g, &r, tol);
    }
    for (x1, x2, alpha) in [(c(1.6, 0.0), c(1.4, 0.0), 1.0), (c(2.0, 0.0), c(2.0, 0.0), 2.0)] {
        let r = check_eq_e3_exact(x1, x2, alpha, 0.5, 0.0, 100_000, &cfg).unwrap();
        g.check(
            r.verdict == Verdict::Pass,
            format!("{}: verdict {}, note {}", r.case.name, r.verdict, r.note),
        );
        g.check(
            r.abs_resid <= r.err_budget,
            format!(
                "{}: abs_resid {:.3e} above 1e-6-plus-tail budget {:.3e}",
                r.case.name, r.abs_resid, r.err_budget
            ),
        );
    }
    // Telescoping weights on alpha-independent input combine to exactly zero.
    let fixed = (c(1.7, -0.3), c(0.4, 2.2));
    let (l, r) = combine_abc(|_| Ok(fixed), 3.7, 0.37).unwrap();
    g.check(l == c(0.0, 0.0) && r == c(0.0, 0.0), "combination not exactly (0, 0)");
    g.finish("pair cases, Dirichlet cases within tail budget, exact telescoping");
}

#[test]
fn criterion_05_growth_chain_and_kappa() {
    let mut g = Gate::new(5, "double-pole integral, four-Gamma lemma, kappa simplification");
    let cfg = cfg();
    for (x1, x2, alpha, tol) in [
        (c(2.0, 0.0), c(2.0, 0.0), 1.0, 1e-8),
        (c(1.5, 0.0), c(2.5, 0.0), 2.0, 1e-8),
        (c(2.0, 3.0), c(2.0, 0.0), 1.0, 1e-7),
    ] {
        let r = check_com4(x1, x2, alpha, &cfg).unwrap();
        pass_with_rel(&mut g, &r, tol);
    }
    // The anchor's closed form is pi/2 by plain arithmetic.
    let anchor = check_com4(c(2.0, 0.0), c(2.0, 0.0), 1.0, &cfg).unwrap();
    let da = (anchor.rhs - std::f64::consts::PI / 2.0).norm();
    g.check(da <= 1e-12, format!("anchor closed form off by {da:.3e}"));

    let ord = 14.134725;
    let l1 = check_lemma3(c(2.0, 0.0), 0.25, ord, ord, 1.0, 0.5, &cfg).unwrap();
    g.check(
        l1.verdict == Verdict::Pass && l1.abs_resid < 1e-7,
        format!("lemma at ordinate: verdict {}, abs {:.3e}", l1.verdict, l1.abs_resid),
    );
    let l2 = check_lemma3(c(2.5, 0.0), 0.5, 0.0, 0.0, 2.0, 0.5, &cfg).unwrap();
    pass_with_rel(&mut g, &l2, 1e-7);

    let mut rng = StdRng::seed_from_u64(0x05_5eed);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let x = c(rng.gen_range(0.6..3.0), rng.gen_range(-3.0..3.0));
        let q = rng.gen_range(0.05..0.95);
        let tau = rng.gen_range(-30.0..30.0);
        let dp = rng.gen_range(0.0..1.0);
        let k = kappa(x, q, tau, 1.0, dp);
        let simplified = c(1.0, 0.0) - powc_real(2.0, -2.0 * x + c(1.0 + q, tau));
        let d = (k - simplified).norm() / k.norm().max(1.0);
        worst = worst.max(d);
    }
    g.check(worst <= 1e-12, format!("kappa(alpha=1) worst {worst:.3e}"));
    g.finish(&format!("kappa simplification worst {worst:.1e} over 100 points"));
}

#[test]
fn criterion_06_explicit_formula_routes() {
    let mut g = Gate::new(6, "zero-sum route converges to the direct route");
    let table = ZeroTable::bundled_extended();
    let s = c(2.0, 0.0);
    let direct = -zeta_log_deriv(s).unwrap();
    let resid = |n: usize| {
        let cfg = ExplicitFormulaConfig {
            n_zeros: n,
            ..ExplicitFormulaConfig::default()
        };
        (explicit_log_deriv(s, &cfg, &table).unwrap() - direct).norm()
    };
    let ladder = [25usize, 50, 100, 200];
    let r: Vec<f64> = ladder.iter().map(|&n| resid(n)).collect();
    g.check(r[2] < 2e-2, format!("N = 100 residual {:.3e} >= 2e-2", r[2]));
    for w in r.windows(2) {
        g.check(
            w[1] < w[0] * 1.1,
            format!("residual step {:.3e} -> {:.3e} grows past 10% jitter", w[0], w[1]),
        );
    }
    g.check(
        r[3] < r[0],
        format!("no overall decrease: {:.3e} -> {:.3e}", r[0], r[3]),
    );
    g.finish(&format!(
        "residuals {:.2e}, {:.2e}, {:.2e}, {:.2e}",
        r[0], r[1], r[2], r[3]
    ));
}

#[test]
fn criterion_07_cancellation_audit_converges_without_target() {
    let t0 = Instant::now();
    let mut g = Gate::new(7, "cancellation audit: convergence, stability, determinism");
    let t100 = ZeroTable::bundled();
    let t200 = ZeroTable::bundled_extended();
    let mut claims = Vec::new();
    for dp in [0.3, 0.5, 0.7] {
        let params = AuditParams {
            delta_p: dp,
            t_prime: 0.0,
            eps: 0.25,
            n_zeros: 100,
            ..AuditParams::default()
        };
        let r = audit_step1(&params, &t100, 1e-6).unwrap();
        g.check(r.converged, format!("delta' = {dp}: not converged"));

        let params2 = AuditParams {
            n_zeros: 200,
            ..params.clone()
        };
        let r2 = audit_step1(&params2, &t200, 1e-6).unwrap();
        let dclaim = (r.claim_resid - r2.claim_resid).abs();
        g.check(
            dclaim < 1e-6,
            format!("delta' = {dp}: claim_resid moves {dclaim:.3e} under N doubling"),
        );
        let dastar = (r.a_star - r2.a_star).norm();
        g.check(
            dastar < 1e-6,
            format!("delta' = {dp}: A* moves {dastar:.3e} under N doubling"),
        );

        let again = audit_step1(&params, &t100, 1e-6).unwrap();
        g.check(
            serde_json::to_string(&r).unwrap() == serde_json::to_string(&again).unwrap(),
            format!("delta' = {dp}: repeated run differs"),
        );
        claims.push(r.claim_resid);
    }
    let dt = t0.elapsed().as_secs_f64();
    g.check(dt < 120.0, format!("runtime {dt:.2}s >= 120s"));
    g.finish(&format!(
        "claim_resid observed: {:.6}, {:.6}, {:.6} (reported, not asserted); {dt:.2}s",
        claims[0], claims[1], claims[2]
    ));
}

#[test]
fn criterion_08_boundedness_trends() {
    let mut g = Gate::new(8, "break bound and flat alpha trend");
    let table = ZeroTable::bundled();
    let cfg = cfg();
    let params = AuditParams {
        alpha_grid: vec![1.0, 2.0, 10.0, 100.0],
        ..AuditParams::default()
    };
    for row in check_break_bound(&params, &table, &cfg).unwrap() {
        g.check(
            row.holds,
            format!(
                "alpha = {}: |integral| {:.3e} above bound {:.3e}",
                row.alpha, row.lhs_mag, row.bound
            ),
        );
    }
    let trend_params = AuditParams {
        alpha_grid: vec![1.0, 2.0, 5.0, 10.0, 30.0, 100.0],
        ..AuditParams::default()
    };
    let trend = check_n1_trend(&trend_params, &table, &cfg).unwrap();
    g.check(
        trend.bounded,
        format!(
            "trend max {:.3e} > 3 x median {:.3e}",
            trend.max_resid, trend.median_resid
        ),
    );
    g.finish(&format!(
        "bound holds on 4 alphas; trend max {:.2e} vs median {:.2e}",
        trend.max_resid, trend.median_resid
    ));
}

#[test]
fn criterion_09_rapid_decrease_sampling() {
    let mut g = Gate::new(9, "rapid decrease of the kernel family");
    let n = 10_000usize;
    for k in 0..=2u32 {
        for m in [1u32, 2, 4] {
            let fam = DecayFamily::new(1.0, 1.0, 1.0, k, m);
            let mut best = (0usize, f64::MIN);
            let mut first = 0.0;
            let mut last = 0.0;
            for i in 0..n {
                let t = -50.0 + 100.0 * (i as f64) / ((n - 1) as f64);
                let v = fam.seminorm_at(t);
                if i == 0 {
                    first = v;
                }
                if i == n - 1 {
                    last = v;
                }
                if v > best.1 {
                    best = (i, v);
                }
            }
            g.check(
                best.0 > 0 && best.0 < n - 1,
                format!("(k={k}, m={m}): sup at grid edge"),
            );
            g.check(
                first < 1e-12 * best.1 && last < 1e-12 * best.1,
                format!(
                    "(k={k}, m={m}): edge values {first:.3e}/{last:.3e} vs sup {:.3e}",
                    best.1
                ),
            );
        }
    }
    g.finish("nine (k, m) combinations on a 10^4-point grid");
}

#[test]
fn criterion_10_cli_end_to_end() {
    let mut g = Gate::new(10, "CLI exit codes, JSON round-trip, zero search");
    let bin = env!("CARGO_BIN_EXE_zeta-lab");
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();

    let find = run(&["zeros", "find", "--near", "14", "--window", "1"]);
    let stdout = String::from_utf8_lossy(&find.stdout).to_string();
    g.check(find.status.code() == Some(0), "zeros find exited non-zero");
    g.check(
        stdout.contains("14.134725142"),
        format!("zeros find output {stdout:?} missing 9-decimal ordinate"),
    );

    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.display().to_string()
    };
    let pass = write(
        "pass.txt",
        "[case]\nname = tail\nchecker = alpha_integral\nx = 0\na = 3\n",
    );
    let fail = write(
        "fail.txt",
        "[case]\nname = too-tight\nchecker = mu_limit\nd = 0.25\ndelta_i = -0.25\n\
         tau_i = 14.134725\ntp = 0\ntol = 1e-12\n",
    );
    let inconclusive = write(
        "inconclusive.txt",
        "[case]\nname = below-quadrature\nchecker = base\nx1 = 0.5\nx2 = 0.5\n\
         m = 1\nn = 1\ntol = 1e-13\n",
    );
    let code = |args: &[&str]| run(args).status.code();
    g.check(code(&["verify", "--suite", &pass]) == Some(0), "pass suite exit != 0");
    g.check(code(&["verify", "--suite", &fail]) == Some(1), "fail suite exit != 1");
    g.check(
        code(&["verify", "--suite", &inconclusive]) == Some(2),
        "inconclusive suite exit != 2",
    );
    g.check(
        code(&["verify", "--suite", "missing.txt"]) == Some(3),
        "missing suite exit != 3",
    );

    let json_path = dir.path().join("report.json");
    let jr = run(&[
        "verify",
        "--suite",
        &pass,
        "--output-format",
        "json",
        "-o",
        json_path.to_str().unwrap(),
    ]);
    g.check(jr.status.code() == Some(0), "json run exit != 0");
    let text = std::fs::read_to_string(&json_path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let round: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    g.check(doc == round, "JSON does not round-trip");
    g.check(
        doc["command"] == "verify" && doc["results"].as_array().map(|a| a.len()) == Some(1),
        "JSON schema missing command/results",
    );
    g.finish("exit codes 0/1/2/3, round-trip, ordinate search");
}
