//! Complex-argument Bessel functions `J_ν`, `I_ν`, `K_ν` of real order by
//! ascending series, and closed forms for `∂J_ν/∂ν` and `∂K_ν/∂ν`.
//!
//! All series are summed with [`pfq`]; the accuracy envelope is `|z| <= 20`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::compensated::CompensatedComplexSum;
use crate::error::{Error, Result};
use crate::hyper::{pfq, EvalResult, HyperSpec, SeriesConfig};
use crate::scalars::{cos_pi, digamma_real, gamma_real, sin_pi, EULER_GAMMA};

/// Distance below which an order is treated as sitting on an excluded value.
pub const ORDER_CLASS_TOL: f64 = 1e-9;
/// Distance below which closed forms are replaced by extrapolation.
pub const EXTRAPOLATION_WINDOW: f64 = 1e-6;
/// Offsets used for the Richardson fallback at excluded orders.
pub const EXTRAPOLATION_DELTAS: [f64; 2] = [1e-3, 5e-4];
/// Half-width of the band around integer orders where order derivatives are
/// interpolated in `ν` instead of read off the closed forms.
pub const INTEGER_BAND: f64 = 0.1;
/// Interpolation node offsets on each side of the integer.
const BAND_NODES: [f64; 4] = [0.1, 0.2, 0.3, 0.4];
/// Largest `|z|` inside the documented accuracy envelope.
pub const ENVELOPE_ABS_Z: f64 = 20.0;

/// The three Bessel function families used here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselKind {
    J,
    I,
    K,
}

impl BesselKind {
    pub fn eval(self, nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
        match self {
            BesselKind::J => bessel_j(nu, z, cfg),
            BesselKind::I => bessel_i(nu, z, cfg),
            BesselKind::K => bessel_k(nu, z, cfg),
        }
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn nearest_integer(nu: f64) -> (f64, f64) {
    let n = nu.round();
    (n, nu - n)
}

/// True when `nu` is within [`ORDER_CLASS_TOL`] of an integer.
pub fn is_integer_order(nu: f64) -> bool {
    nearest_integer(nu).1.abs() <= ORDER_CLASS_TOL
}

/// True when `2nu` is within `2·ORDER_CLASS_TOL` of an integer.
pub fn is_half_integer_order(nu: f64) -> bool {
    is_integer_order(2.0 * nu) && !is_integer_order(nu)
}

/// Principal power `w^p = exp(p log w)` with `arg w ∈ (-π, π]`.
fn cpow(w: Complex64, p: f64) -> Complex64 {
    if p == 0.0 {
        return ONE;
    }
    (w.ln() * p).exp()
}

fn check_arg(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("non-finite Bessel argument".into()));
    }
    Ok(())
}

/// `(z/2)^ν / Γ(ν+1) · 0F1(; ν+1; ±z²/4)`, shared by `J` and `I`.
fn ascending(nu: f64, z: Complex64, sign: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    check_arg(z)?;
    if !nu.is_finite() {
        return Err(Error::Domain("non-finite order".into()));
    }
    if z == ZERO {
        return if nu == 0.0 {
            Ok(EvalResult::exact(ONE))
        } else if nu > 0.0 {
            Ok(EvalResult::exact(ZERO))
        } else {
            Err(Error::Branch(nu))
        };
    }
    if nu < 0.0 && nu == nu.round() {
        // J_{-n} = (-1)^n J_n and I_{-n} = I_n.
        let n = -nu;
        let base = ascending(n, z, sign, cfg)?;
        let flip = if sign < 0.0 && (n as i64) % 2 == 1 { -1.0 } else { 1.0 };
        return Ok(base.scaled(Complex64::new(flip, 0.0)));
    }
    let half = z * 0.5;
    let series = pfq(&HyperSpec::new(&[], &[nu + 1.0], half * half * sign), cfg)?;
    let pref = cpow(half, nu) / gamma_real(nu + 1.0)?;
    Ok(with_rounding_floor(series.scaled(pref)))
}

/// Adds the rounding error of summing terms as large as `max_term`.
fn with_rounding_floor(mut r: EvalResult) -> EvalResult {
    r.abs_err_estimate += 4.0 * f64::EPSILON * r.max_term;
    r
}

/// Bessel function of the first kind, `J_ν(z)`.
pub fn bessel_j(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    ascending(nu, z, -1.0, cfg)
}

/// Modified Bessel function of the first kind, `I_ν(z)`.
pub fn bessel_i(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    ascending(nu, z, 1.0, cfg)
}

/// Macdonald function `K_ν(z)`.
///
/// Non-integer orders use `K_ν = (π/2)(I_{-ν} - I_ν)/sin(πν)`. Integer orders
/// use the logarithmic ascending series. Within [`EXTRAPOLATION_WINDOW`] of an
/// integer `n` a first-order expansion around `n` with the exact
/// `∂K_ν/∂ν|_{ν=n}` is used. Elsewhere within [`INTEGER_BAND`] the connection
/// formula is also interpolated in `ν` as for `∂K_ν/∂ν`, and the result with
/// the smaller error estimate is returned.
pub fn bessel_k(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    check_arg(z)?;
    if z == ZERO {
        return Err(Error::ArgumentZero);
    }
    let nu = nu.abs();
    let (n, off) = nearest_integer(nu);
    if off == 0.0 {
        return bessel_k_integer(n as u32, z, cfg);
    }
    if off.abs() < EXTRAPOLATION_WINDOW {
        let k = bessel_k_integer(n as u32, z, cfg)?;
        let dk = dk_dnu_integer(n as u32, z, cfg)?;
        // Second-order remainder, using |K''| <~ |K'|²/|K| + |K|.
        let kn = k.value.norm();
        let second = off * off * (dk.value.norm_sqr() / kn + kn);
        let value = k.value + dk.value * off;
        return Ok(EvalResult {
            value,
            abs_err_estimate: k.abs_err_estimate
                + dk.abs_err_estimate * off.abs()
                + second
                + 4.0 * f64::EPSILON * value.norm(),
            terms_used: k.terms_used + dk.terms_used,
            converged: k.converged && dk.converged,
            max_term: k.max_term.max(dk.max_term * off.abs()),
            extrapolated: None,
        });
    }
    let direct = k_connection(nu, z, cfg)?;
    if off.abs() < INTEGER_BAND {
        // Small |z| keeps the connection formula accurate; take whichever
        // estimate is tighter.
        let center = bessel_k_integer(n as u32, z, cfg)?;
        let banded = Band::new(n as u32, z, center, 1.0, |v| k_connection(v, z, cfg))?.at(nu)?;
        if banded.abs_err_estimate < direct.abs_err_estimate {
            return Ok(banded);
        }
    }
    Ok(direct)
}

/// `(π/2)(I_{-ν} - I_ν)/sin(πν)` for non-integer `ν`.
fn k_connection(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    let ip = bessel_i(nu, z, cfg)?;
    let im = bessel_i(-nu, z, cfg)?;
    let f = FRAC_PI_2 / sin_pi(nu);
    let value = (im.value - ip.value) * f;
    Ok(EvalResult {
        value,
        abs_err_estimate: (ip.abs_err_estimate + im.abs_err_estimate) * f.abs() + 4.0 * f64::EPSILON * value.norm(),
        terms_used: ip.terms_used + im.terms_used,
        converged: ip.converged && im.converged,
        max_term: (ip.max_term + im.max_term) * f.abs(),
        extrapolated: None,
    })
}

/// `K_n(z)` from the logarithmic ascending series.
fn bessel_k_integer(n: u32, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    let sgn = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let i_n = bessel_i(f64::from(n), z, cfg)?;
    log_series(n, z, cfg, 1.0, [0.5, -sgn, 0.5 * sgn], i_n)
}

/// `Y_n(z)` from the logarithmic ascending series.
#[cfg(test)]
fn bessel_y_integer(n: u32, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    let j_n = bessel_j(f64::from(n), z, cfg)?;
    log_series(n, z, cfg, -1.0, [-1.0 / PI, 2.0 / PI, -1.0 / PI], j_n)
}

/// `c₀ (z/2)^{-n} Σ_{k<n} (n-k-1)!/k! (-s z²/4)^k + c₁ ln(z/2) F
///  + c₂ (z/2)^n Σ_k (ψ(k+1)+ψ(n+k+1)) (s z²/4)^k / (k!(n+k)!)`,
/// the common shape of `K_n` (`s = 1`, `F = I_n`) and `Y_n` (`s = -1`, `F = J_n`).
fn log_series(
    n: u32,
    z: Complex64,
    cfg: &SeriesConfig,
    s: f64,
    [c0, c1, c2]: [f64; 3],
    f: EvalResult,
) -> Result<EvalResult> {
    let half = z * 0.5;
    let q = half * half * s;
    let nf = f64::from(n);

    let mut finite = CompensatedComplexSum::default();
    let mut fin_max = 0.0_f64;
    if n > 0 {
        let mut coef = (1..n).map(f64::from).product::<f64>(); // (n-1)!/0!
        let mut pw = ONE;
        for k in 0..n {
            let t = pw * coef;
            fin_max = fin_max.max(t.norm());
            finite.add(t);
            if k + 1 < n {
                coef /= f64::from(k + 1) * f64::from(n - k - 1);
                pw *= -q;
            }
        }
    }
    let inv_pow = cpow(half, -nf) * c0;
    let finite_part = finite.value() * inv_pow;

    let log = half.ln() * c1;
    let log_part = log * f.value;

    let mut psi_k = -EULER_GAMMA;
    let mut psi_nk = -EULER_GAMMA + (1..=n).map(|j| 1.0 / f64::from(j)).sum::<f64>();
    let mut u = Complex64::new(1.0 / (1..=n).map(f64::from).product::<f64>(), 0.0);
    let mut acc = CompensatedComplexSum::new(u * (psi_k + psi_nk));
    let mut tail_max = (u * (psi_k + psi_nk)).norm();
    let mut small_run = 0;
    let mut k = 0usize;
    let mut converged = false;
    let mut last = f64::INFINITY;
    while k + 1 < cfg.max_terms {
        let kf = k as f64;
        u = u * q / ((kf + 1.0) * (kf + nf + 1.0));
        psi_k += 1.0 / (kf + 1.0);
        psi_nk += 1.0 / (kf + nf + 1.0);
        k += 1;
        let t = u * (psi_k + psi_nk);
        acc.add(t);
        let mag = t.norm();
        tail_max = tail_max.max(mag);
        last = mag;
        if mag <= cfg.rel_tol * acc.value().norm() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 2 && (k as f64) > q.norm().sqrt() {
            converged = true;
            break;
        }
    }
    let series_pref = cpow(half, nf) * c2;
    let series_part = acc.value() * series_pref;

    let value = finite_part + log_part + series_part;
    let max_term = (fin_max * inv_pow.norm())
        .max(f.max_term * log.norm())
        .max(tail_max * series_pref.norm());
    Ok(with_rounding_floor(EvalResult {
        value,
        abs_err_estimate: f.abs_err_estimate * log.norm() + 10.0 * last * series_pref.norm(),
        terms_used: n as usize + f.terms_used + k + 1,
        converged: converged && f.converged,
        max_term,
        extrapolated: None,
    }))
}

/// `∂J_ν/∂ν` at `ν = n`, kept as an independent check on [`dj_dnu_series`]:
/// `(π/2) Y_n(z) + n!/2 (z/2)^{-n} Σ_{k<n} (z/2)^k J_k(z) / (k!(n-k))`.
#[cfg(test)]
fn dj_dnu_integer(n: u32, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    let y = bessel_y_integer(n, z, cfg)?.scaled(Complex64::new(FRAC_PI_2, 0.0));
    let sum = finite_order_sum(n, z, |k| bessel_j(f64::from(k), z, cfg))?;
    Ok(EvalResult {
        value: y.value + sum.value,
        abs_err_estimate: y.abs_err_estimate + sum.abs_err_estimate,
        terms_used: y.terms_used + sum.terms_used,
        converged: y.converged && sum.converged,
        max_term: y.max_term.max(sum.max_term),
        extrapolated: None,
    })
}

/// `∂K_ν/∂ν` at `ν = n`: `n!/2 (z/2)^{-n} Σ_{k<n} (z/2)^k K_k(z) / (k!(n-k))`.
fn dk_dnu_integer(n: u32, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    finite_order_sum(n, z, |k| bessel_k_integer(k, z, cfg))
}

/// `n!/2 (z/2)^{-n} Σ_{k<n} (z/2)^k F_k / (k!(n-k))`.
fn finite_order_sum<F>(n: u32, z: Complex64, f: F) -> Result<EvalResult>
where
    F: Fn(u32) -> Result<EvalResult>,
{
    if n == 0 {
        return Ok(EvalResult::exact(ZERO));
    }
    let half = z * 0.5;
    let mut acc = CompensatedComplexSum::default();
    let mut err = 0.0;
    let mut terms = 0;
    let mut max_term = 0.0_f64;
    let mut converged = true;
    let mut pw = ONE;
    let mut kfact = 1.0;
    for k in 0..n {
        let fk = f(k)?;
        let w = pw / (kfact * f64::from(n - k));
        let t = fk.value * w;
        acc.add(t);
        err += fk.abs_err_estimate * w.norm();
        max_term = max_term.max(t.norm());
        terms += fk.terms_used;
        converged &= fk.converged;
        pw *= half;
        kfact *= f64::from(k + 1);
    }
    let nfact: f64 = (1..=n).map(f64::from).product();
    let pref = cpow(half, -f64::from(n)) * (0.5 * nfact);
    Ok(EvalResult {
        value: acc.value() * pref,
        abs_err_estimate: err * pref.norm() + 4.0 * f64::EPSILON * max_term * pref.norm(),
        terms_used: terms,
        converged,
        max_term: max_term * pref.norm(),
        extrapolated: None,
    })
}

/// `a·b` for two evaluated quantities, propagating first-order error.
fn mul(a: &EvalResult, b: &EvalResult) -> EvalResult {
    EvalResult {
        value: a.value * b.value,
        abs_err_estimate: a.abs_err_estimate * b.value.norm() + b.abs_err_estimate * a.value.norm(),
        terms_used: a.terms_used + b.terms_used,
        converged: a.converged && b.converged,
        max_term: a.max_term * b.max_term,
        extrapolated: None,
    }
}

/// Running combination of evaluated terms.
#[derive(Default)]
struct Assembly {
    sum: CompensatedComplexSum,
    err: f64,
    terms: usize,
    converged: bool,
    max_term: f64,
    started: bool,
}

impl Assembly {
    fn push(&mut self, r: EvalResult) {
        if !self.started {
            self.converged = true;
            self.started = true;
        }
        self.sum.add(r.value);
        self.err += r.abs_err_estimate;
        self.terms += r.terms_used;
        self.converged &= r.converged;
        self.max_term = self.max_term.max(r.max_term).max(r.value.norm());
    }

    fn finish(self) -> EvalResult {
        let value = self.sum.value();
        // Rounding floor of the cancellation between assembled terms.
        let floor = 4.0 * f64::EPSILON * self.max_term;
        EvalResult {
            value,
            abs_err_estimate: self.err + floor,
            terms_used: self.terms,
            converged: self.converged,
            max_term: self.max_term,
            extrapolated: None,
        }
    }
}

fn order_error(nu: f64, formula: &'static str) -> Error {
    Error::OrderClass { nu, formula }
}

/// Closed form of `∂J_ν/∂ν` for positive non-integer `ν`:
///
/// `-π J_{-ν} csc(πν) (z/2)^{2ν} ₂F₃(ν,ν+½; ν+1,ν+1,2ν+1; -z²) / (2Γ²(ν+1))
///  - J_ν [z²/(4(1-ν²)) ₃F₄(1,1,3/2; 2,2,2-ν,2+ν; -z²) + ln(2/z) + 1/(2ν) + ψ(ν)]`.
pub fn dj_dnu(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    if !(nu > 0.0) || is_integer_order(nu) {
        return Err(order_error(nu, "closed-form dJ/dnu"));
    }
    dj_dnu_closed(nu, z, cfg)
}

/// The closed form without the positivity precondition. Valid for every
/// non-integer order with `2ν+1` not a nonpositive integer.
fn dj_dnu_closed(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    check_arg(z)?;
    if z == ZERO {
        return Err(Error::ArgumentZero);
    }
    let z2 = z * z;
    let half = z * 0.5;
    let jp = bessel_j(nu, z, cfg)?;
    let jm = bessel_j(-nu, z, cfg)?;
    let f23 = pfq(
        &HyperSpec::new(&[nu, nu + 0.5], &[nu + 1.0, nu + 1.0, 2.0 * nu + 1.0], -z2),
        cfg,
    )?;
    let f34 = pfq(
        &HyperSpec::new(&[1.0, 1.0, 1.5], &[2.0, 2.0, 2.0 - nu, 2.0 + nu], -z2),
        cfg,
    )?;
    let g = gamma_real(nu + 1.0)?;
    let c1 = cpow(half, 2.0 * nu) * (-PI / (2.0 * sin_pi(nu) * g * g));
    let first = mul(&jm, &f23.scaled(c1));

    let log_term = (Complex64::new(2.0, 0.0) / z).ln();
    let scalar = log_term + 1.0 / (2.0 * nu) + digamma_real(nu)?;
    let hyp = f34.scaled(z2 / (4.0 * (1.0 - nu * nu)));
    let bracket = EvalResult {
        value: hyp.value + scalar,
        max_term: hyp.max_term.max(scalar.norm()),
        ..hyp
    };
    let second = mul(&jp, &bracket).scaled(-ONE);

    let mut asm = Assembly::default();
    asm.push(first);
    asm.push(second);
    Ok(asm.finish())
}

/// Closed form of `∂K_ν/∂ν` for positive `ν` with `2ν` not an integer:
///
/// `(π/2) csc(πν) {π cot(πν) I_ν - (I_ν + I_{-ν}) [z²/(4(1-ν²)) ₃F₄(1,1,3/2; 2,2,2-ν,2+ν; z²)
///   + ln(z/2) - ψ(ν) - 1/(2ν)]}
///  + ¼ {Γ²(-ν) I_{-ν} (z/2)^{2ν} ₂F₃(ν,½+ν; 1+ν,1+ν,1+2ν; z²)
///   - Γ²(ν) I_ν (z/2)^{-2ν} ₂F₃(-ν,½-ν; 1-ν,1-ν,1-2ν; z²)}`.
pub fn dk_dnu(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    if !(nu > 0.0) || is_integer_order(2.0 * nu) {
        return Err(order_error(nu, "closed-form dK/dnu"));
    }
    dk_dnu_closed(nu, z, cfg)
}

fn dk_dnu_closed(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    check_arg(z)?;
    if z == ZERO {
        return Err(Error::ArgumentZero);
    }
    let z2 = z * z;
    let half = z * 0.5;
    let ip = bessel_i(nu, z, cfg)?;
    let im = bessel_i(-nu, z, cfg)?;
    let s = sin_pi(nu);
    let cot = cos_pi(nu) / s;
    let csc_half = FRAC_PI_2 / s;

    let f34 = pfq(
        &HyperSpec::new(&[1.0, 1.0, 1.5], &[2.0, 2.0, 2.0 - nu, 2.0 + nu], z2),
        cfg,
    )?;
    let scalar = half.ln() - digamma_real(nu)? - 1.0 / (2.0 * nu);
    let hyp = f34.scaled(z2 / (4.0 * (1.0 - nu * nu)));
    let bracket = EvalResult {
        value: hyp.value + scalar,
        max_term: hyp.max_term.max(scalar.norm()),
        ..hyp
    };
    let i_sum = EvalResult {
        value: ip.value + im.value,
        abs_err_estimate: ip.abs_err_estimate + im.abs_err_estimate,
        terms_used: ip.terms_used + im.terms_used,
        converged: ip.converged && im.converged,
        max_term: ip.max_term.max(im.max_term),
        extrapolated: None,
    };

    let f23p = pfq(
        &HyperSpec::new(&[nu, nu + 0.5], &[nu + 1.0, nu + 1.0, 2.0 * nu + 1.0], z2),
        cfg,
    )?;
    let f23m = pfq(
        &HyperSpec::new(&[-nu, 0.5 - nu], &[1.0 - nu, 1.0 - nu, 1.0 - 2.0 * nu], z2),
        cfg,
    )?;
    let gm = gamma_real(-nu)?;
    let gp = gamma_real(nu)?;

    let mut asm = Assembly::default();
    asm.push(ip.scaled(Complex64::new(csc_half * PI * cot, 0.0)));
    asm.push(mul(&i_sum, &bracket).scaled(Complex64::new(-csc_half, 0.0)));
    asm.push(mul(&im, &f23p.scaled(cpow(half, 2.0 * nu) * (0.25 * gm * gm))));
    asm.push(mul(&ip, &f23m.scaled(cpow(half, -2.0 * nu) * (-0.25 * gp * gp))));
    Ok(asm.finish())
}

/// `∂J_ν/∂ν` for `ν >= 0` by differentiating the ascending series term by
/// term: `Σ_k (-1)^k (z/2)^{2k+ν} / (k! Γ(k+ν+1)) · [ln(z/2) - ψ(k+ν+1)]`.
fn dj_dnu_series(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    cfg.validate()?;
    let half = z * 0.5;
    let w = -(half * half);
    let log_half = half.ln();
    let mut t = cpow(half, nu) / gamma_real(nu + 1.0)?;
    let mut psi = digamma_real(nu + 1.0)?;
    let first = t * (log_half - psi);
    let mut sum = CompensatedComplexSum::new(first);
    let mut max_term = first.norm();
    let mut small_run = 0;
    let mut k = 0usize;
    let mut converged = false;
    let mut tail = 0.0;
    while k + 1 < cfg.max_terms {
        let a = (k + 1) as f64;
        let b = k as f64 + nu + 1.0;
        t = t * w / (a * b);
        psi += 1.0 / b;
        k += 1;
        let u = t * (log_half - psi);
        sum.add(u);
        let mag = u.norm();
        max_term = max_term.max(mag);
        let s = sum.value().norm();
        small_run = if mag <= cfg.rel_tol * s { small_run + 1 } else { 0 };
        // Past this point the term ratio |w|/((k+1)(k+ν+1)) is below one.
        if small_run >= 2 && w.norm() < (a + 1.0) * (b + 1.0) {
            tail = 10.0 * mag;
            converged = true;
            break;
        }
        tail = 10.0 * mag;
    }
    Ok(with_rounding_floor(EvalResult {
        value: sum.value(),
        abs_err_estimate: tail,
        terms_used: k + 1,
        converged,
        max_term,
        extrapolated: None,
    }))
}

/// Values of an order-dependent quantity at `n` and at `n ± BAND_NODES`.
///
/// The closed form for `∂K_ν/∂ν` loses roughly `ε/|ν-n|²` near an integer
/// `n` because parameters such as `1-ν` and `1-2ν` are rounded before they
/// meet their poles, and the connection formula for `K_ν` divides by
/// `sin(πν)`. Polynomial interpolation through the exact integer-order value
/// and values well away from `n` avoids both.
///
/// Node values are divided by `Γ(ν+1)(2/|z|)^ν` (for `n >= 1`) so the
/// interpolated quantity stays flat even where `K_ν` grows like `Γ(ν)(2/z)^ν`.
struct Band {
    n: f64,
    abs_z: f64,
    nodes: Vec<(f64, EvalResult)>,
}

impl Band {
    /// `parity` gives `f(-ν) = parity·f(ν)`, used for nodes left of `n = 0`.
    fn new<F>(n: u32, z: Complex64, center: EvalResult, parity: f64, eval: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<EvalResult>,
    {
        let nf = f64::from(n);
        let mut band = Self {
            n: nf,
            abs_z: z.norm(),
            nodes: Vec::with_capacity(9),
        };
        let mut raw = vec![(0.0, center)];
        for d in BAND_NODES {
            let right = eval(nf + d)?;
            let left = if n == 0 {
                right.scaled(Complex64::new(parity, 0.0))
            } else {
                eval(nf - d)?
            };
            raw.push((d, right));
            raw.push((-d, left));
        }
        for (o, r) in raw {
            let w = band.weight(nf + o)?;
            band.nodes.push((o, r.scaled(Complex64::new(1.0 / w, 0.0))));
        }
        Ok(band)
    }

    fn weight(&self, nu: f64) -> Result<f64> {
        if self.n == 0.0 {
            return Ok(1.0);
        }
        Ok(gamma_real(nu + 1.0)? / (self.abs_z / 2.0).powf(nu))
    }

    fn lagrange(&self, t: f64, inner: bool) -> (Complex64, f64) {
        let last = BAND_NODES[BAND_NODES.len() - 1];
        let used: Vec<&(f64, EvalResult)> = self.nodes.iter().filter(|(o, _)| !inner || o.abs() < last).collect();
        let mut value = ZERO;
        let mut err = 0.0;
        for (i, (oi, ri)) in used.iter().enumerate() {
            let l: f64 = used
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, (oj, _))| (t - oj) / (oi - oj))
                .product();
            value += ri.value * l;
            err += ri.abs_err_estimate * l.abs();
        }
        (value, err)
    }

    /// Interpolant at order `nu`. The truncation error is bounded by the
    /// change from dropping the outermost node pair.
    fn at(&self, nu: f64) -> Result<EvalResult> {
        let t = nu - self.n;
        let (value, err) = self.lagrange(t, false);
        let (coarse, _) = self.lagrange(t, true);
        let w = self.weight(nu)?;
        let rs = self.nodes.iter().map(|(_, r)| r);
        Ok(EvalResult {
            value: value * w,
            abs_err_estimate: (err + (value - coarse).norm()) * w,
            terms_used: rs.clone().map(|r| r.terms_used).sum(),
            converged: rs.clone().all(|r| r.converged),
            max_term: rs.map(|r| r.max_term).fold(0.0, f64::max) * w,
            extrapolated: None,
        })
    }
}

/// `f(ν)` near the integer `n`: exact at `n`, Richardson-extrapolated from the
/// interpolant within [`EXTRAPOLATION_WINDOW`], interpolated elsewhere.
fn banded<F>(nu: f64, n: u32, z: Complex64, center: EvalResult, parity: f64, eval: F) -> Result<EvalResult>
where
    F: Fn(f64) -> Result<EvalResult>,
{
    if is_integer_order(nu) {
        return Ok(center);
    }
    let band = Band::new(n, z, center, parity, eval)?;
    if (nu - f64::from(n)).abs() < EXTRAPOLATION_WINDOW {
        return extrapolate(nu, |v| band.at(v));
    }
    band.at(nu)
}

/// Symmetric Richardson extrapolation in `δ²` of an order derivative that is
/// only available away from the excluded order.
fn extrapolate<F>(nu: f64, eval: F) -> Result<EvalResult>
where
    F: Fn(f64) -> Result<EvalResult>,
{
    let [d1, d2] = EXTRAPOLATION_DELTAS;
    let sym = |d: f64| -> Result<(EvalResult, EvalResult)> { Ok((eval(nu + d)?, eval(nu - d)?)) };
    let (a1, b1) = sym(d1)?;
    let (a2, b2) = sym(d2)?;
    let s1 = (a1.value + b1.value) * 0.5;
    let s2 = (a2.value + b2.value) * 0.5;
    let value = (s2 * 4.0 - s1) / 3.0;
    let round = [a1, b1, a2, b2].iter().map(|r| r.abs_err_estimate).fold(0.0, f64::max);
    Ok(EvalResult {
        value,
        abs_err_estimate: (value - s2).norm() + 2.0 * round,
        terms_used: a1.terms_used + b1.terms_used + a2.terms_used + b2.terms_used,
        converged: a1.converged && b1.converged && a2.converged && b2.converged,
        max_term: a1.max_term.max(b1.max_term).max(a2.max_term).max(b2.max_term),
        extrapolated: Some(EXTRAPOLATION_DELTAS),
    })
}

/// `∂J_ν/∂ν` for any `ν >= 0`.
///
/// Away from integers this is the closed form. Within [`INTEGER_BAND`] of an
/// integer the ascending series is differentiated term by term instead, since
/// the closed form loses accuracy there. Non-integer orders within
/// [`EXTRAPOLATION_WINDOW`] of an integer are Richardson-extrapolated from it.
pub fn dj_dnu_any(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    if !(nu >= 0.0) {
        return Err(order_error(nu, "dJ/dnu (requires nu >= 0)"));
    }
    check_arg(z)?;
    if z == ZERO {
        return Err(Error::ArgumentZero);
    }
    if nearest_integer(nu).1.abs() < INTEGER_BAND {
        if !is_integer_order(nu) && nearest_integer(nu).1.abs() < EXTRAPOLATION_WINDOW {
            return extrapolate(nu, |v| dj_dnu_series(v, z, cfg));
        }
        return dj_dnu_series(nu, z, cfg);
    }
    dj_dnu_closed(nu, z, cfg)
}

/// `∂K_ν/∂ν` for any `ν >= 0`.
///
/// Integer orders (within [`ORDER_CLASS_TOL`]) use the exact finite sum
/// `n!/2 (z/2)^{-n} Σ_{k<n} (z/2)^k K_k(z) / (k!(n-k))`. Orders near integers
/// are handled as in [`dj_dnu_any`]; orders near half-integers are
/// extrapolated.
pub fn dk_dnu_any(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    if !(nu >= 0.0) {
        return Err(order_error(nu, "dK/dnu (requires nu >= 0)"));
    }
    check_arg(z)?;
    if z == ZERO {
        return Err(Error::ArgumentZero);
    }
    let (n, off) = nearest_integer(nu);
    if off.abs() < INTEGER_BAND {
        let center = dk_dnu_integer(n as u32, z, cfg)?;
        return banded(nu, n as u32, z, center, -1.0, |v| dk_dnu_closed(v, z, cfg));
    }
    if nearest_integer(2.0 * nu).1.abs() < 2.0 * EXTRAPOLATION_WINDOW {
        return extrapolate(nu, |v| dk_dnu_closed(v, z, cfg));
    }
    dk_dnu_closed(nu, z, cfg)
}

/// `∂J_ν/∂ν` by symmetric Richardson extrapolation of the closed form at
/// `ν ± δ`, whatever the order class of `ν`.
pub fn dj_dnu_extrapolated(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    extrapolate(nu, |v| dj_dnu_closed(v, z, cfg))
}

/// `∂K_ν/∂ν` by symmetric Richardson extrapolation of the closed form at
/// `ν ± δ`, whatever the order class of `ν`.
pub fn dk_dnu_extrapolated(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    extrapolate(nu, |v| dk_dnu_closed(v, z, cfg))
}
