//! Adaptive Gauss–Kronrod quadrature (7/15 points) with global bisection.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyper::EvalResult;

/// Strategy for `∫_0^∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SemiInfRule {
    /// Integrate `[0,1], [1,2], [2,4], …` until a piece is negligible and the
    /// integrand has decayed below [`DECAY_FLOOR`].
    #[default]
    DoublingIntervals,
    /// Map `t = -ln(1-s)` onto `[0, 1)`. Needs decay faster than `e^{-t}`.
    ExpMap,
}

/// Integrand magnitude treated as fully decayed by the doubling rule.
pub const DECAY_FLOOR: f64 = 1e-18;

// Piece bound for the doubling rule; past this the result is unconverged.
const DOUBLING_LIMIT: f64 = 1e6;

// Cap on live subintervals per adaptive run.
const MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    pub semiinf_rule: SemiInfRule,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 30,
            semiinf_rule: SemiInfRule::DoublingIntervals,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::Config(format!(
                "quadrature tolerances must be > 0, got abs {} rel {}",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_depth == 0 {
            return Err(Error::Config("max_depth must be >= 1".into()));
        }
        Ok(())
    }

    /// Same configuration with both tolerances scaled by `f`.
    pub fn scaled_tol(&self, f: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * f,
            rel_tol: self.rel_tol * f,
            ..*self
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod nodes 1, 3, 5, 7 (the last is the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn finite_or_err(v: f64, t: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("integrand is not finite at t = {t}")))
    }
}

/// One 15-point Kronrod panel: (Kronrod value, |Kronrod - Gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = finite_or_err(f(c), c)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = finite_or_err(f(c - dx), c - dx)?;
        let f2 = finite_or_err(f(c + dx), c + dx)?;
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Ok((kron * h, ((kron - gauss) * h).abs()))
}

fn result(value: f64, err: f64, evals: usize, converged: bool) -> EvalResult {
    EvalResult {
        value: Complex64::new(value, 0.0),
        abs_err_estimate: err,
        terms_used: evals,
        converged,
        max_term: value.abs(),
        extrapolated: None,
    }
}

/// `∫_a^b f` by adaptive bisection of the panel with the largest error.
///
/// Nodes are interior, so integrable endpoint singularities are tolerated.
/// Panels that reach `max_depth` are frozen; if the target is still missed
/// the best estimate is returned with `converged = false`.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) || !(a < b) {
        return Err(Error::Domain(format!("finite quadrature needs a < b, got [{a}, {b}]")));
    }
    let (v0, e0) = gk15(&f, a, b)?;
    let mut evals = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Piece {
        a,
        b,
        value: v0,
        err: e0,
        depth: 0,
    });
    let mut frozen_value = 0.0;
    let mut frozen_err = 0.0;
    let mut total = v0;
    let mut total_err = e0;

    loop {
        let target = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if total_err <= target {
            return Ok(result(total, total_err, evals, true));
        }
        let Some(p) = heap.pop() else {
            return Ok(result(total, total_err, evals, false));
        };
        if p.depth >= cfg.max_depth || heap.len() >= MAX_INTERVALS {
            frozen_value += p.value;
            frozen_err += p.err;
            // Frozen error alone misses the target: further splitting is futile.
            let hopeless = frozen_err > cfg.abs_tol.max(cfg.rel_tol * total.abs());
            if hopeless || heap.is_empty() || heap.len() >= MAX_INTERVALS {
                let rest_v: f64 = heap.iter().map(|q| q.value).sum();
                let rest_e: f64 = heap.iter().map(|q| q.err).sum();
                let v = frozen_value + rest_v;
                let e = frozen_err + rest_e;
                let ok = e <= cfg.abs_tol.max(cfg.rel_tol * v.abs());
                return Ok(result(v, e, evals, ok));
            }
            continue;
        }
        let m = 0.5 * (p.a + p.b);
        let (vl, el) = gk15(&f, p.a, m)?;
        let (vr, er) = gk15(&f, m, p.b)?;
        evals += 30;
        total += vl + vr - p.value;
        total_err += el + er - p.err;
        heap.push(Piece {
            a: p.a,
            b: m,
            value: vl,
            err: el,
            depth: p.depth + 1,
        });
        heap.push(Piece {
            a: m,
            b: p.b,
            value: vr,
            err: er,
            depth: p.depth + 1,
        });
        // Re-sum occasionally so the running totals do not drift.
        if evals % 3000 == 15 {
            total = frozen_value + heap.iter().map(|q| q.value).sum::<f64>();
            total_err = frozen_err + heap.iter().map(|q| q.err).sum::<f64>();
        }
    }
}

/// `∫_0^∞ f` for integrands with at least exponential decay.
pub fn integrate_semiinf<F: Fn(f64) -> f64>(f: F, cfg: &QuadConfig) -> Result<EvalResult> {
    cfg.validate()?;
    match cfg.semiinf_rule {
        SemiInfRule::DoublingIntervals => doubling(&f, cfg),
        SemiInfRule::ExpMap => integrate_finite(
            |s: f64| {
                let one_minus = 1.0 - s;
                let t = -one_minus.ln();
                let v = f(t);
                if v == 0.0 {
                    0.0
                } else {
                    v / one_minus
                }
            },
            0.0,
            1.0,
            cfg,
        ),
    }
}

fn doubling<F: Fn(f64) -> f64>(f: &F, cfg: &QuadConfig) -> Result<EvalResult> {
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut evals = 0;
    let mut converged = true;
    while hi <= DOUBLING_LIMIT {
        let piece = integrate_finite(f, lo, hi, cfg)?;
        value += piece.value.re;
        err += piece.abs_err_estimate;
        evals += piece.terms_used + 1;
        converged &= piece.converged;
        let tail = finite_or_err(f(hi), hi)?.abs();
        let small = piece.value.re.abs() <= cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if small && tail < DECAY_FLOOR {
            return Ok(result(value, err, evals, converged));
        }
        lo = hi;
        hi *= 2.0;
    }
    Ok(result(value, err, evals, false))
}

/// `∫_a^b f` for `f` with an integrable logarithmic or algebraic singularity
/// at `b`: `[a, m]` directly and `[m, b]` through `u = b - (b-m)e^{-v}`.
///
/// `f(u, b-u)` receives the distance to `b` exactly, so `log(b-u)` style
/// factors keep full precision next to the endpoint.
pub fn integrate_right_singular<F: Fn(f64, f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<EvalResult> {
    if !(a < b) {
        return Err(Error::Domain(format!("quadrature needs a < b, got [{a}, {b}]")));
    }
    let m = 0.5 * (a + b);
    let w = b - m;
    let left = integrate_finite(|u| f(u, b - u), a, m, cfg)?;
    let right = doubling(
        &|v: f64| {
            let e = w * (-v).exp();
            if e == 0.0 {
                return 0.0;
            }
            f(b - e, e) * e
        },
        cfg,
    )?;
    Ok(combine(left, right))
}

/// `∫_a^b f` with integrable singularities at both ends, each half mapped to
/// an exponentially decaying semi-infinite integral. `f(u, u-a, b-u)`
/// receives both endpoint distances.
pub fn integrate_both_singular<F: Fn(f64, f64, f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<EvalResult> {
    if !(a < b) {
        return Err(Error::Domain(format!("quadrature needs a < b, got [{a}, {b}]")));
    }
    let w = 0.5 * (b - a);
    let left = doubling(
        &|v: f64| {
            let e = w * (-v).exp();
            if e == 0.0 {
                return 0.0;
            }
            f(a + e, e, 2.0 * w - e) * e
        },
        cfg,
    )?;
    let right = doubling(
        &|v: f64| {
            let e = w * (-v).exp();
            if e == 0.0 {
                return 0.0;
            }
            f(b - e, 2.0 * w - e, e) * e
        },
        cfg,
    )?;
    Ok(combine(left, right))
}

fn combine(a: EvalResult, b: EvalResult) -> EvalResult {
    let v = a.value.re + b.value.re;
    result(
        v,
        a.abs_err_estimate + b.abs_err_estimate,
        a.terms_used + b.terms_used,
        a.converged && b.converged,
    )
}
