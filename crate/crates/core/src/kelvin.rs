//! Kelvin functions of real order.
//!
//! `ber_ν + i bei_ν = e^{iπν} J_ν(e^{-iπ/4} x)` and
//! `ker_ν + i kei_ν = e^{-iπν/2} K_ν(e^{iπ/4} x)`. Negative orders are
//! reached through the reflection formulas, never by a direct series.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_4};

use num_complex::Complex64;
use serde::Serialize;

use crate::bessel::{bessel_j, bessel_k};
use crate::error::{Error, Result};
use crate::hyper::{EvalResult, SeriesConfig};
use crate::scalars::{cos_pi, sin_pi};

/// Largest `x` inside the accuracy envelope.
pub const ENVELOPE_X: f64 = 20.0;
/// Largest `|ν|` inside the accuracy envelope.
pub const ENVELOPE_NU: f64 = 10.0;
/// Error estimates above `NOMINAL_ACCURACY·(1+|value|)` mark a result degraded.
pub const NOMINAL_ACCURACY: f64 = 1e-10;

/// The four Kelvin functions at one `(ν, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KelvinQuad {
    pub ber: f64,
    pub bei: f64,
    pub ker: f64,
    pub kei: f64,
    pub nu: f64,
    pub x: f64,
    /// Largest absolute error estimate over the four values.
    pub err_estimate: f64,
    /// Set outside the accuracy envelope, or when the error estimate exceeds
    /// the nominal accuracy.
    pub degraded: bool,
}

/// `e^{-iπ/4} x`, the argument of `J` in `ber + i bei`.
pub fn arg_j(x: f64) -> Complex64 {
    Complex64::from_polar(x, -FRAC_PI_4)
}

/// `e^{iπ/4} x`, the argument of `K` in `ker + i kei`.
pub fn arg_k(x: f64) -> Complex64 {
    Complex64::from_polar(x, FRAC_PI_4)
}

/// `e^{iπt}` with exact reduction of `t`.
pub(crate) fn cis_pi(t: f64) -> Complex64 {
    Complex64::new(cos_pi(t), sin_pi(t))
}

pub fn in_envelope(nu: f64, x: f64) -> bool {
    nu.abs() <= ENVELOPE_NU && x > 0.0 && x <= ENVELOPE_X
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "Kelvin argument must be finite and >= 0, got {x}"
        )));
    }
    Ok(())
}

fn check_nu(nu: f64) -> Result<()> {
    if !nu.is_finite() {
        return Err(Error::Domain(format!("order must be finite, got {nu}")));
    }
    Ok(())
}

/// `ber_ν(x) + i bei_ν(x)` with its error estimate, for any real `ν`.
pub fn ber_bei_eval(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    check_nu(nu)?;
    check_x(x)?;
    if nu >= 0.0 {
        return Ok(bessel_j(nu, arg_j(x), cfg)?.scaled(cis_pi(nu)));
    }
    let m = -nu;
    let pos = bessel_j(m, arg_j(x), cfg)?.scaled(cis_pi(m));
    let (s, c) = (sin_pi(m), cos_pi(m));
    // ber_{-m} + i bei_{-m} = e^{-iπm}(ber_m + i bei_m) + (2/π) sin(πm)(ker_m + i kei_m)
    let mut out = pos.scaled(Complex64::new(c, -s));
    if s != 0.0 {
        if x == 0.0 {
            return Err(Error::Domain(format!(
                "ber/bei at x = 0 for non-integer negative order {nu} needs ker at 0"
            )));
        }
        let k = ker_kei_eval(m, x, cfg)?.scaled(Complex64::new(FRAC_2_PI * s, 0.0));
        out.value += k.value;
        out.abs_err_estimate += k.abs_err_estimate;
        out.terms_used += k.terms_used;
        out.converged &= k.converged;
        out.max_term = out.max_term.max(k.max_term);
    }
    Ok(out)
}

/// `ker_ν(x) + i kei_ν(x)` with its error estimate, for any real `ν`.
pub fn ker_kei_eval(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    check_nu(nu)?;
    check_x(x)?;
    if x == 0.0 {
        return Err(Error::Domain("ker/kei are singular at x = 0".into()));
    }
    let m = nu.abs();
    let pos = bessel_k(m, arg_k(x), cfg)?.scaled(cis_pi(-m / 2.0));
    if nu >= 0.0 {
        return Ok(pos);
    }
    // ker_{-m} + i kei_{-m} = e^{iπm}(ker_m + i kei_m)
    Ok(pos.scaled(cis_pi(m)))
}

/// `(ber_ν(x), bei_ν(x))`.
pub fn kelvin_ber_bei(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<(f64, f64)> {
    let w = ber_bei_eval(nu, x, cfg)?.value;
    Ok((w.re, w.im))
}

/// `(ker_ν(x), kei_ν(x))`; `x` must be positive.
pub fn kelvin_ker_kei(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<(f64, f64)> {
    let w = ker_kei_eval(nu, x, cfg)?.value;
    Ok((w.re, w.im))
}

/// All four Kelvin functions from one `J` and one `K` evaluation.
pub fn kelvin_all(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<KelvinQuad> {
    check_nu(nu)?;
    check_x(x)?;
    if x == 0.0 {
        return Err(Error::Domain("ker/kei are singular at x = 0".into()));
    }
    let m = nu.abs();
    let jb = bessel_j(m, arg_j(x), cfg)?.scaled(cis_pi(m));
    let kk = bessel_k(m, arg_k(x), cfg)?.scaled(cis_pi(-m / 2.0));
    let (b, k) = if nu >= 0.0 {
        (jb, kk)
    } else {
        let s = sin_pi(m);
        let mut b = jb.scaled(cis_pi(-m));
        b.value += kk.value * (FRAC_2_PI * s);
        b.abs_err_estimate += kk.abs_err_estimate * (FRAC_2_PI * s).abs();
        b.converged &= kk.converged;
        (b, kk.scaled(cis_pi(m)))
    };
    let degraded = !in_envelope(nu, x)
        || !b.converged
        || !k.converged
        || b.abs_err_estimate > NOMINAL_ACCURACY * (1.0 + b.value.norm())
        || k.abs_err_estimate > NOMINAL_ACCURACY * (1.0 + k.value.norm());
    Ok(KelvinQuad {
        ber: b.value.re,
        bei: b.value.im,
        ker: k.value.re,
        kei: k.value.im,
        nu,
        x,
        err_estimate: b.abs_err_estimate.max(k.abs_err_estimate),
        degraded,
    })
}
