//! Generalized hypergeometric series `pFq(a; b; z)` with real parameters and
//! complex argument, restricted to the entire case `p <= q`.

use num_complex::Complex64;

use crate::compensated::CompensatedComplexSum;
use crate::error::{Error, Result};
use crate::scalars::is_nonpositive_integer;

/// Truncation controls shared by every series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 500,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::Config(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if self.max_terms == 0 {
            return Err(Error::Config("max_terms must be >= 1".into()));
        }
        Ok(())
    }
}

/// Value of a series or quadrature together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_err_estimate: f64,
    /// Series terms or integrand evaluations spent.
    pub terms_used: usize,
    pub converged: bool,
    /// Largest term magnitude met while summing; `max_term / |value|` is the
    /// cancellation factor of the sum.
    pub max_term: f64,
    /// Offsets used when the value came from Richardson extrapolation around
    /// an excluded order.
    pub extrapolated: Option<[f64; 2]>,
}

impl EvalResult {
    pub fn exact(value: Complex64) -> Self {
        Self {
            value,
            abs_err_estimate: 0.0,
            terms_used: 0,
            converged: true,
            max_term: value.norm(),
            extrapolated: None,
        }
    }

    pub fn real(&self) -> f64 {
        self.value.re
    }

    /// Multiply by a constant that is known exactly (up to one rounding).
    pub fn scaled(mut self, factor: Complex64) -> Self {
        let f = factor.norm();
        self.value *= factor;
        self.abs_err_estimate *= f;
        self.max_term *= f;
        self
    }
}

/// Numerator/denominator parameters and argument of one `pFq`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperSpec {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub z: Complex64,
}

impl HyperSpec {
    pub fn new(upper: &[f64], lower: &[f64], z: Complex64) -> Self {
        Self {
            upper: upper.to_vec(),
            lower: lower.to_vec(),
            z,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.upper.len() > self.lower.len() {
            return Err(Error::Domain(format!(
                "{}F{} is not entire (need p <= q)",
                self.upper.len(),
                self.lower.len()
            )));
        }
        if let Some(&b) = self.lower.iter().find(|&&b| is_nonpositive_integer(b)) {
            return Err(Error::DenominatorPole(b));
        }
        if !self.z.re.is_finite() || !self.z.im.is_finite() {
            return Err(Error::Domain("non-finite hypergeometric argument".into()));
        }
        Ok(())
    }

    /// `t_{k+1} / t_k` as a real factor times `z`.
    #[inline]
    fn ratio(&self, k: usize) -> f64 {
        let kf = k as f64;
        let num: f64 = self.upper.iter().map(|a| a + kf).product();
        let den: f64 = self.lower.iter().map(|b| b + kf).product();
        num / (den * (kf + 1.0))
    }
}

/// Sum `Σ_k Π(a_i)_k / Π(b_j)_k · z^k / k!` by term recursion.
///
/// Stops once two consecutive terms fall below `rel_tol·|S|` past the peak of
/// the term sequence and the next (neglected) term, times 10, is within
/// `rel_tol·(1+|S|)`. Hitting `max_terms` returns the partial sum with
/// `converged = false`.
pub fn pfq(spec: &HyperSpec, cfg: &SeriesConfig) -> Result<EvalResult> {
    spec.validate()?;
    cfg.validate()?;

    let z = spec.z;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(EvalResult {
            terms_used: 1,
            ..EvalResult::exact(Complex64::new(1.0, 0.0))
        });
    }

    // Beyond this index every factor (a+k)/(b+k) is monotone and the term
    // ratio can only shrink.
    let settle = spec
        .upper
        .iter()
        .chain(spec.lower.iter())
        .fold(0.0_f64, |m, p| m.max(p.abs()))
        .ceil() as usize
        + 1;

    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = CompensatedComplexSum::new(term);
    let mut max_term = 1.0_f64;
    let mut small_run = 0usize;
    let mut k = 0usize;

    while k + 1 < cfg.max_terms {
        let r = spec.ratio(k);
        term = term * z * r;
        k += 1;
        sum.add(term);
        let mag = term.norm();
        max_term = max_term.max(mag);

        if mag == 0.0 {
            // A nonpositive-integer upper parameter terminated the series.
            return Ok(EvalResult {
                value: sum.value(),
                abs_err_estimate: 0.0,
                terms_used: k + 1,
                converged: true,
                max_term,
                extrapolated: None,
            });
        }

        let s = sum.value().norm();
        if mag <= cfg.rel_tol * s {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 2 && k >= settle && (r * z.norm()) < 1.0 {
            let next = (term * z * spec.ratio(k)).norm();
            let est = 10.0 * next;
            if est <= cfg.rel_tol * (1.0 + s) {
                return Ok(EvalResult {
                    value: sum.value(),
                    abs_err_estimate: est,
                    terms_used: k + 1,
                    converged: true,
                    max_term,
                    extrapolated: None,
                });
            }
        }
    }

    let next = (term * z * spec.ratio(k)).norm();
    Ok(EvalResult {
        value: sum.value(),
        abs_err_estimate: 10.0 * next,
        terms_used: k + 1,
        converged: false,
        max_term,
        extrapolated: None,
    })
}
