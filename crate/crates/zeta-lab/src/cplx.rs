//! Small complex-number helpers shared across modules: principal powers with
//! positive real base, parsing/formatting of `a+bi` literals.

use num_complex::Complex64;

/// `base^z` for real `base > 0` via the principal real logarithm.
///
/// All complex powers in this crate have positive real bases (`alpha`, `m`,
/// `2`, ...), so `exp(z ln base)` with the real `ln` is exact in branch and
/// avoids `powc`'s complex-log path.
pub fn powc_real(base: f64, z: Complex64) -> Complex64 {
    debug_assert!(base > 0.0, "powc_real requires a positive real base");
    (z * base.ln()).exp()
}

/// `base^(-z)` for real `base > 0`; convenience for Dirichlet-style terms.
pub fn powc_real_neg(base: f64, z: Complex64) -> Complex64 {
    (-z * base.ln()).exp()
}

/// Parse a complex literal: `2`, `-1.5`, `0.5i`, `1+2i`, `1.5e-3-2.25i`, `i`, `-i`.
///
/// The imaginary unit is a trailing `i`. Signs inside exponents (`1e-3`) do
/// not split the literal.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    // Find the split between real and imaginary parts: the last '+'/'-' that
    // is not at position 0 and not part of an exponent.
    let bytes = t.as_bytes();
    let mut split = None;
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
        }
    }
    let parse_imag = |u: &str| -> Result<f64, String> {
        let core = &u[..u.len() - 1];
        match core {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => core
                .parse::<f64>()
                .map_err(|e| format!("bad imaginary part {u:?}: {e}")),
        }
    };
    match split {
        Some(i) => {
            let (re_s, im_s) = (&t[..i], &t[i..]);
            if !im_s.ends_with('i') {
                return Err(format!("expected trailing 'i' in {t:?}"));
            }
            let re = re_s
                .parse::<f64>()
                .map_err(|e| format!("bad real part {re_s:?}: {e}"))?;
            Ok(Complex64::new(re, parse_imag(im_s)?))
        }
        None => {
            if t.ends_with('i') {
                Ok(Complex64::new(0.0, parse_imag(t)?))
            } else {
                let re = t
                    .parse::<f64>()
                    .map_err(|e| format!("bad complex literal {t:?}: {e}"))?;
                Ok(Complex64::new(re, 0.0))
            }
        }
    }
}

/// Format with 12 significant digits, the crate-wide report precision.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:.11e}");
    // Prefer plain decimal for moderate magnitudes.
    let ax = x.abs();
    if (1e-4..1e12).contains(&ax) {
        let digits = 11 - ax.log10().floor() as i32;
        format!("{x:.*}", digits.max(0) as usize)
    } else {
        s
    }
}

/// Format a complex value as `a+bi` with 12 significant digits per part.
pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", fmt_f64(z.re), sign, fmt_f64(z.im.abs()))
}
