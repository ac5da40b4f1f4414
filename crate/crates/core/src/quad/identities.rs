//! Integral representations of the Kelvin functions and the identities they
//! satisfy, evaluated by quadrature.

use std::cell::RefCell;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::engine::{
    integrate_both_singular, integrate_finite, integrate_right_singular, integrate_semiinf, QuadConfig,
};
use crate::bessel::dj_dnu_any;
use crate::error::{Error, Result};
use crate::hyper::{EvalResult, SeriesConfig};
use crate::kelvin::{arg_j, ber_bei_eval, cis_pi, kelvin_ber_bei};
use crate::scalars::{cos_pi, sin_pi, EULER_GAMMA};

/// Outcome of one numerical identity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub nu: f64,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, nu: f64, x: f64, lhs: f64, rhs: f64, tol: f64) -> Self {
        let abs_diff = (lhs - rhs).abs();
        Self {
            name: name.into(),
            nu,
            x,
            lhs,
            rhs,
            abs_diff,
            tol,
            pass: abs_diff <= tol,
        }
    }

    pub const CSV_HEADER: &'static str = "name,nu,x,lhs,rhs,abs_diff,tol,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            self.name, self.nu, self.x, self.lhs, self.rhs, self.abs_diff, self.tol, self.pass
        )
    }
}

/// Phase of the semi-infinite integrands in the `ber/bei` representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ApelblatPhase {
    /// `x sinh t`, the Schläfli form.
    #[default]
    Hyperbolic,
    /// `x sin t`, as the formula is commonly printed.
    Circular,
}

/// Bracket of the `u`-integrals in the order-derivative representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ApelblatBracket {
    /// `ber_{ν-1}(x√u) ± bei_{ν-1}(x√u)`.
    #[default]
    IndexConsistent,
    /// `ber_{ν-1}(x√u) ± bei_ν(x√u)`.
    MixedOrder,
    /// `ber_ν(x√u) ± bei_ν(x√u)`.
    SameOrder,
}

/// Collects the first error raised inside an integrand closure.
struct Trap(RefCell<Option<Error>>);

impl Trap {
    fn new() -> Self {
        Self(RefCell::new(None))
    }

    fn take<T>(&self, r: Result<T>, fallback: T) -> T {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                fallback
            }
        }
    }
}

fn require_positive(x: f64, what: &str) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("{what} must be finite and > 0, got {x}")));
    }
    Ok(())
}

/// `(ber_ν(y), bei_ν(y))` from the integral representation: a finite part
/// over `[0, π]` and a `sin(πν)`-weighted part over `[0, ∞)`, both at
/// `x = y/√2`.
pub fn apelblat_ber_bei(nu: f64, y: f64, phase: ApelblatPhase, cfg: &QuadConfig) -> Result<(f64, f64)> {
    require_positive(y, "argument")?;
    let x = y * FRAC_1_SQRT_2;
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    let fin_ber = |t: f64| {
        let xs = x * t.sin();
        let ph = xs - nu * t;
        c * ph.cos() * xs.cosh() - s * ph.sin() * xs.sinh()
    };
    let fin_bei = |t: f64| {
        let xs = x * t.sin();
        let ph = xs - nu * t;
        c * ph.sin() * xs.sinh() + s * ph.cos() * xs.cosh()
    };
    let mut ber = integrate_finite(fin_ber, 0.0, PI, cfg)?.value.re / PI;
    let mut bei = integrate_finite(fin_bei, 0.0, PI, cfg)?.value.re / PI;
    if s != 0.0 {
        let phase_arg = move |t: f64| match phase {
            ApelblatPhase::Hyperbolic => x * t.sinh(),
            ApelblatPhase::Circular => x * t.sin(),
        };
        let decay = move |t: f64| {
            let e = -nu * t - x * t.sinh();
            if e < -745.0 {
                0.0
            } else {
                e.exp()
            }
        };
        let inf_ber = integrate_semiinf(|t| decay(t) * (phase_arg(t) + PI * nu).cos(), cfg)?;
        let inf_bei = integrate_semiinf(|t| decay(t) * (phase_arg(t) + PI * nu).sin(), cfg)?;
        ber -= s / PI * inf_ber.value.re;
        bei -= s / PI * inf_bei.value.re;
    }
    Ok((ber, bei))
}

/// `(∂ber_ν/∂ν, ∂bei_ν/∂ν)` at `x` from the log-weighted `u`-integrals:
/// `log(x/2) ber_ν - (3π/4) bei_ν ∓ (x/(2√2)) ∫_0^1 u^{(ν-1)/2} [γ + log(1-u)] [bracket] du`.
pub fn apelblat_dber_dbei(
    nu: f64,
    x: f64,
    bracket: ApelblatBracket,
    series: &SeriesConfig,
    cfg: &QuadConfig,
) -> Result<(f64, f64)> {
    require_positive(x, "argument")?;
    if !(nu > 0.0) {
        return Err(Error::OrderClass {
            nu,
            formula: "integral order derivative (needs nu > 0)",
        });
    }
    let (lo, hi) = match bracket {
        ApelblatBracket::IndexConsistent => (nu - 1.0, nu - 1.0),
        ApelblatBracket::MixedOrder => (nu - 1.0, nu),
        ApelblatBracket::SameOrder => (nu, nu),
    };
    let trap = Trap::new();
    // Both brackets share the weight; evaluate them together per node.
    let integrand = |u: f64, gap: f64, sign: f64| -> f64 {
        let y = x * u.sqrt();
        let w_lo = trap.take(ber_bei_eval(lo, y, series).map(|r| r.value), Complex64::new(0.0, 0.0));
        let wr = w_lo.re;
        let wi = if hi == lo {
            w_lo.im
        } else {
            trap.take(ber_bei_eval(hi, y, series).map(|r| r.value.im), 0.0)
        };
        u.powf(0.5 * (nu - 1.0)) * (EULER_GAMMA + gap.ln()) * (wr + sign * wi)
    };
    let ib = trap_check(
        &trap,
        integrate_both_singular(|u, _, gap| integrand(u, gap, 1.0), 0.0, 1.0, cfg),
    )?;
    let ii = trap_check(
        &trap,
        integrate_both_singular(|u, _, gap| integrand(u, gap, -1.0), 0.0, 1.0, cfg),
    )?;
    let (ber, bei) = kelvin_ber_bei(nu, x, series)?;
    let l = (x / 2.0).ln();
    let k = x / (2.0 * SQRT_2);
    let dber = l * ber - 0.75 * PI * bei - k * ib.value.re;
    let dbei = l * bei + 0.75 * PI * ber + k * ii.value.re;
    Ok((dber, dbei))
}

fn trap_check(trap: &Trap, r: Result<EvalResult>) -> Result<EvalResult> {
    if let Some(e) = trap.0.borrow_mut().take() {
        return Err(e);
    }
    r
}

/// Which trigonometric substitution the zero-order representation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AppendixVariant {
    Sin,
    Cos,
}

/// `(ber(x), bei(x))` from
/// `ber(x) = (2/π) ∫_0^{π/2} cosh(x sc θ/√2) cos(x sc θ/√2) dθ` and the
/// `sinh·sin` counterpart, with `sc` either `sin` or `cos`.
pub fn appendix_ber_bei(x: f64, variant: AppendixVariant, cfg: &QuadConfig) -> Result<(f64, f64)> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("argument must be finite and >= 0, got {x}")));
    }
    let arg = move |t: f64| {
        x * FRAC_1_SQRT_2
            * match variant {
                AppendixVariant::Sin => t.sin(),
                AppendixVariant::Cos => t.cos(),
            }
    };
    let ber = integrate_finite(
        |t| {
            let a = arg(t);
            a.cosh() * a.cos()
        },
        0.0,
        FRAC_PI_2,
        cfg,
    )?;
    let bei = integrate_finite(
        |t| {
            let a = arg(t);
            a.sinh() * a.sin()
        },
        0.0,
        FRAC_PI_2,
        cfg,
    )?;
    Ok((ber.value.re * 2.0 / PI, bei.value.re * 2.0 / PI))
}

fn cosh_cos_sqrt(v: f64) -> f64 {
    let r = v.sqrt();
    r.cosh() * r.cos()
}

/// `ber(2√(at)) + ber(2√(bt)) = (2/π) ∫_0^t C((a+b)(t-τ)) C((a-b)τ) dτ / √(τ(t-τ))`
/// with `C(v) = cosh√v cos√v`. The right side is integrated over
/// `τ = t sin²θ`, which turns the weight into `2 dθ`.
pub fn convolution_identity(
    a: f64,
    b: f64,
    t: f64,
    tol: f64,
    series: &SeriesConfig,
    cfg: &QuadConfig,
) -> Result<IdentityReport> {
    require_positive(b, "b")?;
    require_positive(t, "t")?;
    if !(a >= b) || !a.is_finite() {
        return Err(Error::Domain(format!(
            "convolution identity needs a >= b > 0, got a={a}, b={b}"
        )));
    }
    let lhs =
        kelvin_ber_bei(0.0, 2.0 * (a * t).sqrt(), series)?.0 + kelvin_ber_bei(0.0, 2.0 * (b * t).sqrt(), series)?.0;
    let (sp, sm) = (a + b, a - b);
    let f = |th: f64| {
        let tau = t * th.sin().powi(2);
        let rest = t * th.cos().powi(2);
        cosh_cos_sqrt(sp * rest) * cosh_cos_sqrt(sm * tau)
    };
    let rhs = integrate_finite(f, 0.0, FRAC_PI_2, cfg)?.value.re * 4.0 / PI;
    Ok(IdentityReport::new(
        format!("convolution_a{a}_b{b}"),
        0.0,
        t,
        lhs,
        rhs,
        tol,
    ))
}

/// Which Kelvin function is integrated in the log-weighted integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KelvinTag {
    Ber,
    Bei,
}

/// `∫_0^1 u^{ν+1} log(1-u²) f_ν(xu) du` against
/// `(1/(√2x)) {[π/4 + L] f_{ν+1}(x) ± [π/4 - L] g_{ν+1}(x) + √2 Re[e^{iπ(ν±1/4)} D]}`
/// with `L = log(x/2) + γ` and `D = ∂J_μ/∂μ` at `μ = ν+1`, argument
/// `e^{-iπ/4}x`. Upper signs for `f = ber, g = bei`.
pub fn log_integral_identity(
    nu: f64,
    x: f64,
    f: KelvinTag,
    tol: f64,
    series: &SeriesConfig,
    cfg: &QuadConfig,
) -> Result<IdentityReport> {
    require_positive(x, "argument")?;
    if !(nu > -1.0) {
        return Err(Error::Domain(format!("log-weighted integral needs nu > -1, got {nu}")));
    }
    let trap = Trap::new();
    let pick = |w: Complex64| match f {
        KelvinTag::Ber => w.re,
        KelvinTag::Bei => w.im,
    };
    let integrand = |u: f64, gap: f64| {
        let w = trap.take(
            ber_bei_eval(nu, x * u, series).map(|r| r.value),
            Complex64::new(0.0, 0.0),
        );
        // log(1-u²) = log(1-u) + log(1+u)
        u.powf(nu + 1.0) * (gap.ln() + u.ln_1p()) * pick(w)
    };
    let lhs = trap_check(&trap, integrate_right_singular(integrand, 0.0, 1.0, cfg))?
        .value
        .re;

    let w1 = ber_bei_eval(nu + 1.0, x, series)?.value;
    let (fv, gv, sign) = match f {
        KelvinTag::Ber => (w1.re, w1.im, 1.0),
        KelvinTag::Bei => (w1.im, w1.re, -1.0),
    };
    let l = (x / 2.0).ln() + EULER_GAMMA;
    let d = dj_dnu_any(nu + 1.0, arg_j(x), series)?.value;
    let rot = cis_pi(nu + sign * 0.25);
    let rhs = ((FRAC_PI_4 + l) * fv + sign * (FRAC_PI_4 - l) * gv + SQRT_2 * (rot * d).re) / (SQRT_2 * x);
    let name = match f {
        KelvinTag::Ber => "log_integral_ber",
        KelvinTag::Bei => "log_integral_bei",
    };
    Ok(IdentityReport::new(name, nu, x, lhs, rhs, tol))
}

/// `∫_0^x u^{ν+1} ber_ν(u) du = (x^{ν+1}/√2)(bei_{ν+1} - ber_{ν+1})` and
/// `∫_0^x u^{ν+1} bei_ν(u) du = -(x^{ν+1}/√2)(bei_{ν+1} + ber_{ν+1})`.
pub fn indefinite_integral_check(
    nu: f64,
    x: f64,
    tol: f64,
    series: &SeriesConfig,
    cfg: &QuadConfig,
) -> Result<[IdentityReport; 2]> {
    require_positive(x, "argument")?;
    if !(nu >= 0.0) {
        return Err(Error::Domain(format!(
            "indefinite integral check needs nu >= 0, got {nu}"
        )));
    }
    let trap = Trap::new();
    let lhs_of = |im: bool| {
        integrate_finite(
            |u: f64| {
                let w = trap.take(ber_bei_eval(nu, u, series).map(|r| r.value), Complex64::new(0.0, 0.0));
                u.powf(nu + 1.0) * if im { w.im } else { w.re }
            },
            0.0,
            x,
            cfg,
        )
    };
    let lb = trap_check(&trap, lhs_of(false))?.value.re;
    let li = trap_check(&trap, lhs_of(true))?.value.re;
    let w1 = ber_bei_eval(nu + 1.0, x, series)?.value;
    let p = x.powf(nu + 1.0) * FRAC_1_SQRT_2;
    Ok([
        IdentityReport::new("indefinite_ber", nu, x, lb, p * (w1.im - w1.re), tol),
        IdentityReport::new("indefinite_bei", nu, x, li, -p * (w1.im + w1.re), tol),
    ])
}
