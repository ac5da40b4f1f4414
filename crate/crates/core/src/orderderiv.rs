//! Derivatives of the Kelvin functions with respect to the order.
//!
//! Pairs are carried as complex numbers: `dber + i dbei` and `dker + i dkei`.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::bessel::{
    bessel_j, bessel_k, dj_dnu_any, dj_dnu_extrapolated, dk_dnu_any, dk_dnu_extrapolated, is_integer_order,
};
use crate::compensated::CompensatedComplexSum;
use crate::error::{Error, Result};
use crate::hyper::{pfq, EvalResult, HyperSpec, SeriesConfig};
use crate::kelvin::{arg_j, arg_k, ber_bei_eval, cis_pi, in_envelope, ker_kei_eval, NOMINAL_ACCURACY};
use crate::scalars::{cos_pi, digamma_real, gamma_real, sin_pi};

/// Below this `|sin πν|` the `∂K/∂ν` term of the negative-order `ber/bei`
/// derivative is dropped.
pub const SIN_DROP: f64 = 1e-12;

/// How an order derivative was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    IntegerSum,
    Extrapolated,
    ReferenceBrychkov,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::IntegerSum => "integer_sum",
            Method::Extrapolated => "extrapolated",
            Method::ReferenceBrychkov => "reference_brychkov",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The four order derivatives at one `(ν, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderDerivQuad {
    pub dber: f64,
    pub dbei: f64,
    pub dker: f64,
    pub dkei: f64,
    pub nu: f64,
    pub x: f64,
    /// `extrapolated` if either pair was, otherwise the `ber/bei` method.
    pub method: Method,
    pub method_bb: Method,
    pub method_kk: Method,
    pub err_estimate: f64,
    pub degraded: bool,
}

/// One derivative pair with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivPair {
    /// `d(first) + i d(second)`.
    pub value: Complex64,
    pub err: f64,
    pub method: Method,
}

impl DerivPair {
    pub fn pair(&self) -> (f64, f64) {
        (self.value.re, self.value.im)
    }
}

/// Compensated sum of complex contributions with first-order error tracking.
#[derive(Default)]
struct Acc {
    sum: CompensatedComplexSum,
    err: f64,
    scale: f64,
    extrapolated: bool,
}

impl Acc {
    fn add(&mut self, r: &EvalResult, coef: Complex64) {
        let v = r.value * coef;
        self.sum.add(v);
        self.err += r.abs_err_estimate * coef.norm();
        self.scale = self.scale.max(v.norm());
        self.extrapolated |= r.extrapolated.is_some();
    }

    fn add_value(&mut self, v: Complex64, err: f64) {
        self.sum.add(v);
        self.err += err;
        self.scale = self.scale.max(v.norm());
    }

    fn finish(self, method: Method) -> DerivPair {
        let method = if self.extrapolated {
            Method::Extrapolated
        } else {
            method
        };
        DerivPair {
            value: self.sum.value(),
            err: self.err + 4.0 * f64::EPSILON * self.scale,
            method,
        }
    }
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("order derivatives need finite x > 0, got {x}")));
    }
    Ok(())
}

fn check_nu(nu: f64) -> Result<()> {
    if !nu.is_finite() {
        return Err(Error::Domain(format!("order must be finite, got {nu}")));
    }
    Ok(())
}

/// `∂ber/∂ν + i ∂bei/∂ν = e^{iπν} ∂J_ν/∂ν(e^{-iπ/4}x) + iπ (ber_ν + i bei_ν)`.
fn bb_pos(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<DerivPair> {
    bb_pos_with(nu, x, cfg, dj_dnu_any)
}

type OrderDerivFn = fn(f64, Complex64, &SeriesConfig) -> Result<EvalResult>;

fn bb_pos_with(nu: f64, x: f64, cfg: &SeriesConfig, djf: OrderDerivFn) -> Result<DerivPair> {
    let w = arg_j(x);
    let rot = cis_pi(nu);
    let dj = djf(nu, w, cfg)?;
    let j = bessel_j(nu, w, cfg)?;
    let mut acc = Acc::default();
    acc.add(&dj, rot);
    acc.add(&j, rot * I * PI);
    Ok(acc.finish(Method::ClosedForm))
}

/// `∂ker/∂ν + i ∂kei/∂ν = e^{-iπν/2} ∂K_ν/∂ν(e^{iπ/4}x) - i(π/2)(ker_ν + i kei_ν)`.
fn kk_pos(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<DerivPair> {
    kk_pos_with(nu, x, cfg, dk_dnu_any)
}

fn kk_pos_with(nu: f64, x: f64, cfg: &SeriesConfig, dkf: OrderDerivFn) -> Result<DerivPair> {
    let z = arg_k(x);
    let rot = cis_pi(-nu / 2.0);
    let dk = dkf(nu, z, cfg)?;
    let k = bessel_k(nu, z, cfg)?;
    let mut acc = Acc::default();
    acc.add(&dk, rot);
    acc.add(&k, rot * (-I * FRAC_PI_2));
    Ok(acc.finish(Method::ClosedForm))
}

/// Order derivative of `ber + i bei` at order `-ν`, `ν > 0`:
/// `-[e^{-iπν/2}{(e^{-iπν} + cos πν) K_ν(Z) + (2/π) sin(πν) ∂K_ν/∂ν(Z)} + ∂J_ν/∂ν(W)]`.
fn bb_neg(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<DerivPair> {
    let (w, z) = (arg_j(x), arg_k(x));
    let s = sin_pi(nu);
    let rot = cis_pi(-nu / 2.0);
    let k = bessel_k(nu, z, cfg)?;
    let dj = dj_dnu_any(nu, w, cfg)?;
    let mut acc = Acc::default();
    acc.add(&k, -rot * (cis_pi(-nu) + cos_pi(nu)));
    if s.abs() >= SIN_DROP {
        let dk = dk_dnu_any(nu, z, cfg)?;
        acc.add(&dk, -rot * (FRAC_2_PI * s));
    }
    acc.add(&dj, Complex64::new(-1.0, 0.0));
    Ok(acc.finish(Method::ClosedForm))
}

/// Order derivative of `ker + i kei` at order `-ν`, `ν > 0`:
/// `-i(π/2) e^{iπν/2} K_ν(Z) - e^{iπν/2} ∂K_ν/∂ν(Z)`.
fn kk_neg(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<DerivPair> {
    let z = arg_k(x);
    let rot = cis_pi(nu / 2.0);
    let k = bessel_k(nu, z, cfg)?;
    let dk = dk_dnu_any(nu, z, cfg)?;
    let mut acc = Acc::default();
    acc.add(&k, rot * (-I * FRAC_PI_2));
    acc.add(&dk, -rot);
    Ok(acc.finish(Method::ClosedForm))
}

/// `(∂ber_ν/∂ν, ∂bei_ν/∂ν)` for `ν >= 0` not an integer.
pub fn dkelvin_bb_pos(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<(f64, f64)> {
    check_nu(nu)?;
    check_x(x)?;
    if nu < 0.0 || is_integer_order(nu) {
        return Err(Error::OrderClass {
            nu,
            formula: "positive-order ber/bei derivative",
        });
    }
    Ok(bb_pos(nu, x, cfg)?.pair())
}

/// `(∂ker_ν/∂ν, ∂kei_ν/∂ν)` for `ν >= 0` with `2ν` not an integer.
pub fn dkelvin_kk_pos(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<(f64, f64)> {
    check_nu(nu)?;
    check_x(x)?;
    if nu < 0.0 || is_integer_order(2.0 * nu) {
        return Err(Error::OrderClass {
            nu,
            formula: "positive-order ker/kei derivative",
        });
    }
    Ok(kk_pos(nu, x, cfg)?.pair())
}

/// Order derivative of `(ber, bei)` evaluated at order `-ν`, for `ν > 0`.
pub fn dkelvin_bb_neg(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<(f64, f64)> {
    check_nu(nu)?;
    check_x(x)?;
    if !(nu > 0.0) {
        return Err(Error::OrderClass {
            nu,
            formula: "negative-order ber/bei derivative (needs nu > 0)",
        });
    }
    Ok(bb_neg(nu, x, cfg)?.pair())
}

/// Order derivative of `(ker, kei)` evaluated at order `-ν`, for `ν > 0`.
pub fn dkelvin_kk_neg(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<(f64, f64)> {
    check_nu(nu)?;
    check_x(x)?;
    if !(nu > 0.0) {
        return Err(Error::OrderClass {
            nu,
            formula: "negative-order ker/kei derivative (needs nu > 0)",
        });
    }
    Ok(kk_neg(nu, x, cfg)?.pair())
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// All four order derivatives at integer order `n >= 0` from finite sums.
pub fn dkelvin_integer(n: i64, x: f64, cfg: &SeriesConfig) -> Result<OrderDerivQuad> {
    check_x(x)?;
    if n < 0 {
        return Err(Error::NegativeIntegerOrder(n));
    }
    let n = u32::try_from(n).map_err(|_| Error::Domain(format!("order {n} too large")))?;
    let (bb, kk) = integer_pairs(n, x, cfg)?;
    Ok(assemble(f64::from(n), x, bb, kk))
}

fn integer_pairs(n: u32, x: f64, cfg: &SeriesConfig) -> Result<(DerivPair, DerivPair)> {
    let nf = f64::from(n);
    let wn = ber_bei_eval(nf, x, cfg)?;
    let kn = ker_kei_eval(nf, x, cfg)?;
    let mut bb = Acc::default();
    let mut kk = Acc::default();
    bb.add(&wn, I * FRAC_PI_2);
    bb.add(&kn, Complex64::new(-1.0, 0.0));
    kk.add(&kn, -I * FRAC_PI_2);
    let half_nfact = 0.5 * factorial(n);
    let mut kfact = 1.0;
    for k in 0..n {
        let kf = f64::from(k);
        let d = kf - nf;
        let c = half_nfact * (x / 2.0).powf(d) / (kfact * (nf - kf));
        let wk = ber_bei_eval(kf, x, cfg)?;
        let kkk = ker_kei_eval(kf, x, cfg)?;
        bb.add(&wk, cis_pi(-1.25 * d) * c);
        kk.add(&kkk, cis_pi(0.75 * d) * c);
        kfact *= kf + 1.0;
    }
    Ok((bb.finish(Method::IntegerSum), kk.finish(Method::IntegerSum)))
}

fn assemble(nu: f64, x: f64, bb: DerivPair, kk: DerivPair) -> OrderDerivQuad {
    let method = if bb.method == Method::Extrapolated || kk.method == Method::Extrapolated {
        Method::Extrapolated
    } else {
        bb.method
    };
    let err = bb.err.max(kk.err);
    let degraded = !in_envelope(nu, x)
        || bb.err > NOMINAL_ACCURACY * 1e4 * (1.0 + bb.value.norm())
        || kk.err > NOMINAL_ACCURACY * 1e4 * (1.0 + kk.value.norm());
    OrderDerivQuad {
        dber: bb.value.re,
        dbei: bb.value.im,
        dker: kk.value.re,
        dkei: kk.value.im,
        nu,
        x,
        method,
        method_bb: bb.method,
        method_kk: kk.method,
        err_estimate: err,
        degraded,
    }
}

/// All four order derivatives at any real order.
///
/// Integer `ν >= 0` (within 1e-9) uses the finite sums; other `ν >= 0` the
/// positive-order closed forms; `ν < 0` the negative-order closed forms.
/// Orders within 1e-6 of an excluded value fall back to extrapolation and are
/// tagged accordingly.
pub fn dkelvin(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<OrderDerivQuad> {
    check_nu(nu)?;
    check_x(x)?;
    if is_integer_order(nu) && nu.round() >= 0.0 {
        let (bb, kk) = integer_pairs(nu.round() as u32, x, cfg)?;
        return Ok(assemble(nu, x, bb, kk));
    }
    let (bb, kk) = if nu > 0.0 {
        (bb_pos(nu, x, cfg)?, kk_pos(nu, x, cfg)?)
    } else {
        (bb_neg(-nu, x, cfg)?, kk_neg(-nu, x, cfg)?)
    };
    Ok(assemble(nu, x, bb, kk))
}

/// Positive-order closed forms with both order derivatives forced through
/// Richardson extrapolation, for `ν >= 0`. Serves as an independent check
/// of the integer sums.
pub fn dkelvin_extrapolated(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<OrderDerivQuad> {
    check_nu(nu)?;
    check_x(x)?;
    if nu < 0.0 {
        return Err(Error::OrderClass {
            nu,
            formula: "extrapolated closed form (needs nu >= 0)",
        });
    }
    let bb = bb_pos_with(nu, x, cfg, dj_dnu_extrapolated)?;
    let kk = kk_pos_with(nu, x, cfg, dk_dnu_extrapolated)?;
    Ok(assemble(nu, x, bb, kk))
}

fn coef_check_a(a: u8) -> Result<f64> {
    match a {
        0 | 1 => Ok(f64::from(a)),
        _ => Err(Error::Domain(format!("coefficient selector a must be 0 or 1, got {a}"))),
    }
}

fn coef_c_eval(nu: f64, x: f64, a: u8, cfg: &SeriesConfig) -> Result<EvalResult> {
    let a = coef_check_a(a)?;
    let z = Complex64::new(-x.powi(4) / 16.0, 0.0);
    let upper = [
        (2.0 * nu + a + 1.0) / 4.0,
        (2.0 * nu + 3.0) / 4.0,
        (2.0 * nu + 5.0 * a) / 4.0,
    ];
    let lower = [
        a + 0.5,
        (nu + a + 1.0) / 2.0,
        (nu + a) / 2.0 + 1.0,
        (nu + a) / 2.0 + 1.0,
        nu + (a + 1.0) / 2.0,
        nu + 1.0 + a / 2.0,
    ];
    pfq(&HyperSpec::new(&upper, &lower, z), cfg)
}

fn coef_d_eval(nu: f64, x: f64, a: u8, cfg: &SeriesConfig) -> Result<EvalResult> {
    let a = coef_check_a(a)?;
    let z = Complex64::new(-x.powi(4) / 16.0, 0.0);
    let upper = [
        (a + 1.0) / 2.0,
        (a + 1.0) / 2.0,
        (2.0 * a + 3.0) / 4.0,
        (2.0 * a + 5.0) / 4.0,
    ];
    let lower = [
        a + 0.5,
        (a + 3.0) / 2.0,
        (a + 3.0) / 2.0,
        (nu + a) / 2.0 + 1.0,
        (nu + a + 3.0) / 2.0,
        (a - nu) / 2.0 + 1.0,
        (a - nu + 3.0) / 2.0,
    ];
    pfq(&HyperSpec::new(&upper, &lower, z), cfg)
}

/// `c(ν, x, a) = ₃F₆(…; -x⁴/16)` of the reference expressions.
pub fn coef_c(nu: f64, x: f64, a: u8, cfg: &SeriesConfig) -> Result<f64> {
    Ok(coef_c_eval(nu, x, a, cfg)?.value.re)
}

/// `d(ν, x, a) = ₄F₇(…; -x⁴/16)` of the reference expressions.
pub fn coef_d(nu: f64, x: f64, a: u8, cfg: &SeriesConfig) -> Result<f64> {
    Ok(coef_d_eval(nu, x, a, cfg)?.value.re)
}

/// Reference `(∂ber_ν/∂ν, ∂bei_ν/∂ν)` built from `c` and `d`, for positive
/// non-integer `ν`. Used to cross-check the positive-order closed form.
pub fn dkelvin_bb_brychkov(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<(f64, f64)> {
    Ok(bb_brychkov(nu, x, cfg)?.pair())
}

fn bb_brychkov(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<DerivPair> {
    check_nu(nu)?;
    check_x(x)?;
    if !(nu > 0.0) || is_integer_order(nu) {
        return Err(Error::OrderClass {
            nu,
            formula: "reference ber/bei derivative",
        });
    }
    let pole = |e: Error| match e {
        Error::DenominatorPole(_) => Error::OrderClass {
            nu,
            formula: "reference ber/bei derivative",
        },
        other => other,
    };
    let w = ber_bei_eval(nu, x, cfg)?;
    let wm = ber_bei_eval(-nu, x, cfg)?;
    let (ber, bei) = (w.value.re, w.value.im);
    let (berm, beim) = (wm.value.re, wm.value.im);
    let c0 = coef_c_eval(nu, x, 0, cfg).map_err(pole)?;
    let c1 = coef_c_eval(nu, x, 1, cfg).map_err(pole)?;
    let d0 = coef_d_eval(nu, x, 0, cfg).map_err(pole)?;
    let d1 = coef_d_eval(nu, x, 1, cfg).map_err(pole)?;

    let s = sin_pi(1.5 * nu);
    let co = cos_pi(1.5 * nu);
    let h = x / 2.0;
    let ell = h.ln() - digamma_real(nu)? - 1.0 / (2.0 * nu);
    let csc = 1.0 / sin_pi(nu);
    let g1 = gamma_real(nu + 1.0)?;
    let g2 = gamma_real(nu + 2.0)?;
    let big_a = PI * csc / (2.0 * g1 * g1) * h.powf(2.0 * nu);
    let big_b = PI * nu * csc / (g2 * g2) * h.powf(2.0 * nu + 2.0);
    let e = x * x / (4.0 * (1.0 - nu * nu));
    let f = 3.0 * x * x / (8.0 * (4.0 - nu * nu));
    let (c0, c1, d0, d1) = (c0.value.re, c1.value.re, d0.value.re, d1.value.re);

    // dber + i dbei, term by term.
    let terms = [
        Complex64::new(ell * ber, ell * bei),
        Complex64::new(-0.75 * PI * bei, 0.75 * PI * ber),
        Complex64::new(
            big_a * (s * beim - co * berm) * c0,
            -big_a * (co * beim + s * berm) * c0,
        ),
        Complex64::new(
            big_b * (co * beim + s * berm) * c1,
            -big_b * (co * berm - s * beim) * c1,
        ),
        Complex64::new(-e * (bei * d0 + f * ber * d1), e * (ber * d0 - f * bei * d1)),
    ];
    let mut acc = Acc::default();
    for t in terms {
        acc.add_value(t, 0.0);
    }
    // Propagate the Kelvin-value errors through their largest coefficients.
    let coef_w = ell.abs() + PI + e.abs() * (d0.abs() + f.abs() * d1.abs());
    let coef_wm = (big_a * c0).abs() + (big_b * c1).abs();
    acc.err = w.abs_err_estimate * coef_w + wm.abs_err_estimate * 2.0 * coef_wm;
    Ok(acc.finish(Method::ReferenceBrychkov))
}
