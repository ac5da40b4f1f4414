//! Numerical identity sweeps over the grids in `manifest/grids.toml`.
//!
//! Every suite returns one [`IdentityReport`] per checked quantity, in grid
//! order. Grid points are evaluated in parallel; the output order does not
//! depend on scheduling.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;

use crate::bessel::{bessel_i, bessel_j, bessel_k, dj_dnu_any, dk_dnu_any};
use crate::error::{Error, Result};
use crate::hyper::{pfq, EvalResult, HyperSpec, SeriesConfig};
use crate::kelvin::{kelvin_all, kelvin_ber_bei, KelvinQuad};
use crate::orderderiv::{
    dkelvin, dkelvin_bb_brychkov, dkelvin_bb_neg, dkelvin_bb_pos, dkelvin_extrapolated, dkelvin_integer, dkelvin_kk_neg,
};
use crate::quad::{
    apelblat_ber_bei, apelblat_dber_dbei, appendix_ber_bei, convolution_identity, indefinite_integral_check,
    log_integral_identity, ApelblatBracket, ApelblatPhase, AppendixVariant, IdentityReport, KelvinTag, QuadConfig,
};

const MANIFEST_SRC: &str = include_str!("../manifest/grids.toml");

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub fd: FdGrid,
    pub reflection: ReflectionGrid,
    pub ode: OdeGrid,
    pub conjugation: ConjugationGrid,
    pub integer: IntegerGrid,
    pub brychkov: BrychkovGrid,
    pub apelblat: ApelblatGrid,
    pub log_integral: LogIntegralGrid,
    pub appendix: AppendixGrid,
    pub bench: BenchGrid,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct FdGrid {
    pub nu: Vec<f64>,
    pub x: Vec<f64>,
    pub steps: [f64; 2],
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ReflectionGrid {
    pub n: Vec<u32>,
    pub x: Vec<f64>,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct OdeGrid {
    pub nu: Vec<f64>,
    pub x: Vec<f64>,
    pub h: f64,
    pub tol: f64,
    /// ker/kei are only checked up to this `x`; beyond it the second
    /// difference amplifies their rounding past the tolerance.
    pub kk_max_x: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ConjugationGrid {
    pub nu: Vec<f64>,
    pub z: Vec<[f64; 2]>,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct IntegerGrid {
    pub n: Vec<u32>,
    pub x: Vec<f64>,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct BrychkovGrid {
    pub nu: Vec<f64>,
    pub x: Vec<f64>,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ApelblatGrid {
    pub nu: Vec<f64>,
    pub y: Vec<f64>,
    pub tol: f64,
    pub deriv_nu: Vec<f64>,
    pub deriv_x: Vec<f64>,
    pub deriv_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct LogIntegralGrid {
    pub nu: Vec<f64>,
    pub x: Vec<f64>,
    pub tol: f64,
    pub indefinite_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct AppendixGrid {
    pub x: Vec<f64>,
    pub variant_tol: f64,
    pub series_tol: f64,
    pub convolution: Vec<[f64; 3]>,
    pub convolution_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct BenchGrid {
    pub nu: Vec<f64>,
    pub x: Vec<f64>,
    pub reps: usize,
}

/// The bundled verification manifest.
pub fn manifest() -> &'static Manifest {
    static M: OnceLock<Manifest> = OnceLock::new();
    M.get_or_init(|| toml::from_str(MANIFEST_SRC).expect("bundled grids.toml is valid"))
}

/// Parses a manifest from TOML text.
pub fn parse_manifest(src: &str) -> Result<Manifest> {
    toml::from_str(src).map_err(|e| Error::Config(format!("manifest: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Fd,
    Reflection,
    Ode,
    Conjugation,
    Apelblat,
    LogIntegral,
    Appendix,
    Brychkov,
    Integer,
}

impl Suite {
    /// The individual suites that make up [`Suite::All`], in run order.
    pub const EACH: [Suite; 9] = [
        Suite::Fd,
        Suite::Reflection,
        Suite::Ode,
        Suite::Conjugation,
        Suite::Integer,
        Suite::Brychkov,
        Suite::Apelblat,
        Suite::LogIntegral,
        Suite::Appendix,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Fd => "fd",
            Suite::Reflection => "reflection",
            Suite::Ode => "ode",
            Suite::Conjugation => "conjugation",
            Suite::Apelblat => "apelblat",
            Suite::LogIntegral => "log_integral",
            Suite::Appendix => "appendix",
            Suite::Brychkov => "brychkov",
            Suite::Integer => "integer",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "theorem5" {
            return Ok(Suite::LogIntegral);
        }
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyConfig {
    pub series: SeriesConfig,
    pub quad: QuadConfig,
    /// Replaces every tolerance of the manifest when set.
    pub tol: Option<f64>,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        self.series.validate()?;
        self.quad.validate()?;
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Error::Config(format!("tolerance must be > 0, got {t}")));
            }
        }
        Ok(())
    }

    fn tol(&self, base: f64) -> f64 {
        self.tol.unwrap_or(base)
    }
}

/// Runs one suite (or all of them) over the bundled manifest.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    run_suite_with(suite, manifest(), cfg)
}

pub fn run_suite_with(suite: Suite, m: &Manifest, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    cfg.validate()?;
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run_suite_with(s, m, cfg)?);
            }
            Ok(out)
        }
        Suite::Fd => fd_suite(&m.fd, cfg),
        Suite::Reflection => reflection_suite(&m.reflection, cfg),
        Suite::Ode => ode_suite(&m.ode, cfg),
        Suite::Conjugation => conjugation_suite(&m.conjugation, cfg),
        Suite::Integer => integer_suite(&m.integer, cfg),
        Suite::Brychkov => brychkov_suite(&m.brychkov, cfg),
        Suite::Apelblat => apelblat_suite(&m.apelblat, cfg),
        Suite::LogIntegral => log_integral_suite(&m.log_integral, cfg),
        Suite::Appendix => appendix_suite(&m.appendix, cfg),
    }
}

fn grid<A: Copy + Sync, B: Copy + Sync>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter().flat_map(|&p| b.iter().map(move |&q| (p, q))).collect()
}

// Evaluates `f` on every point in parallel and concatenates in point order.
fn sweep<P, F>(points: Vec<P>, f: F) -> Result<Vec<IdentityReport>>
where
    P: Send,
    F: Fn(P) -> Result<Vec<IdentityReport>> + Sync + Send,
{
    let parts: Vec<Result<Vec<IdentityReport>>> = points.into_par_iter().map(f).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn quad_values(q: &KelvinQuad) -> [f64; 4] {
    [q.ber, q.bei, q.ker, q.kei]
}

const DERIV_NAMES: [&str; 4] = ["dber", "dbei", "dker", "dkei"];

/// Richardson-extrapolated central difference over the order of
/// `g(ν) = [ber, bei, ker, kei]`.
pub fn richardson_fd<G>(g: G, nu: f64, steps: [f64; 2]) -> Result<[f64; 4]>
where
    G: Fn(f64) -> Result<[f64; 4]>,
{
    let central = |h: f64| -> Result<[f64; 4]> {
        let (p, m) = (g(nu + h)?, g(nu - h)?);
        Ok(std::array::from_fn(|i| (p[i] - m[i]) / (2.0 * h)))
    };
    let (d1, d2) = (central(steps[0])?, central(steps[1])?);
    let r = steps[0] / steps[1];
    let r2 = r * r;
    Ok(std::array::from_fn(|i| (r2 * d2[i] - d1[i]) / (r2 - 1.0)))
}

fn fd_suite(g: &FdGrid, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let sc = cfg.series;
    let base = cfg.tol(g.tol);
    sweep(grid(&g.nu, &g.x), |(nu, x)| {
        let mut out = Vec::with_capacity(8);
        // Positive order: the dispatcher against d/dν of kelvin_all.
        let d = dkelvin(nu, x, &sc)?;
        let fd = richardson_fd(|v| Ok(quad_values(&kelvin_all(v, x, &sc)?)), nu, g.steps)?;
        for (i, v) in [d.dber, d.dbei, d.dker, d.dkei].into_iter().enumerate() {
            out.push(IdentityReport::new(
                format!("fd_{}", DERIV_NAMES[i]),
                nu,
                x,
                v,
                fd[i],
                base * (1.0 + v.abs()),
            ));
        }
        // Order -ν: the negative-order forms against the difference around -ν.
        let (b, bi) = dkelvin_bb_neg(nu, x, &sc)?;
        let (k, ki) = dkelvin_kk_neg(nu, x, &sc)?;
        let fd = richardson_fd(|v| Ok(quad_values(&kelvin_all(v, x, &sc)?)), -nu, g.steps)?;
        for (i, v) in [b, bi, k, ki].into_iter().enumerate() {
            out.push(IdentityReport::new(
                format!("fd_neg_{}", DERIV_NAMES[i]),
                -nu,
                x,
                v,
                fd[i],
                base * (1.0 + v.abs()),
            ));
        }
        Ok(out)
    })
}

fn reflection_suite(g: &ReflectionGrid, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let sc = cfg.series;
    let rel = cfg.tol(g.tol);
    sweep(grid(&g.n, &g.x), |(n, x)| {
        let nu = f64::from(n);
        let pos = quad_values(&kelvin_all(nu, x, &sc)?);
        let neg = quad_values(&kelvin_all(-nu, x, &sc)?);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Ok(["ber", "bei", "ker", "kei"]
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let rhs = sign * pos[i];
                let tol = rel * rhs.abs().max(f64::MIN_POSITIVE);
                IdentityReport::new(format!("reflection_{name}"), -nu, x, neg[i], rhs, tol)
            })
            .collect())
    })
}

/// Scaled residual `|x²w″ + xw′ - (ν² + ix²)w| / (|w| + |xw′| + |x²w″|)` of the
/// Kelvin equation, with five-point differences of step `h` in `x`.
pub fn ode_residual<W>(w: W, nu: f64, x: f64, h: f64) -> Result<f64>
where
    W: Fn(f64) -> Result<Complex64>,
{
    let (m2, m1, c, p1, p2) = (w(x - 2.0 * h)?, w(x - h)?, w(x)?, w(x + h)?, w(x + 2.0 * h)?);
    let d1 = (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h);
    let d2 = (-(m2 + p2) + (p1 + m1) * 16.0 - c * 30.0) / (12.0 * h * h);
    let x2 = x * x;
    let res = d2 * x2 + d1 * x - c * Complex64::new(nu * nu, x2);
    let scale = c.norm() + (d1 * x).norm() + (d2 * x2).norm();
    Ok(res.norm() / scale)
}

fn ode_suite(g: &OdeGrid, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let sc = cfg.series;
    let tol = cfg.tol(g.tol);
    sweep(grid(&g.nu, &g.x), |(nu, x)| {
        let bb = ode_residual(
            |t| kelvin_all(nu, t, &sc).map(|q| Complex64::new(q.ber, q.bei)),
            nu,
            x,
            g.h,
        )?;
        let mut out = vec![IdentityReport::new("ode_ber_bei", nu, x, bb, 0.0, tol)];
        if x <= g.kk_max_x {
            let kk = ode_residual(
                |t| kelvin_all(nu, t, &sc).map(|q| Complex64::new(q.ker, q.kei)),
                nu,
                x,
                g.h,
            )?;
            out.push(IdentityReport::new("ode_ker_kei", nu, x, kk, 0.0, tol));
        }
        Ok(out)
    })
}

type Kernel = fn(f64, Complex64, &SeriesConfig) -> Result<EvalResult>;

fn hyper_kernel(nu: f64, z: Complex64, cfg: &SeriesConfig) -> Result<EvalResult> {
    pfq(&HyperSpec::new(&[nu + 0.5], &[nu + 1.0, 2.0 * nu + 1.0], -z * z), cfg)
}

const KERNELS: [(&str, Kernel); 6] = [
    ("conj_j", bessel_j),
    ("conj_i", bessel_i),
    ("conj_k", bessel_k),
    ("conj_dj", dj_dnu_any),
    ("conj_dk", dk_dnu_any),
    ("conj_pfq", hyper_kernel),
];

fn conjugation_suite(g: &ConjugationGrid, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let sc = cfg.series;
    let tol = cfg.tol(g.tol);
    sweep(grid(&g.nu, &g.z), |(nu, [re, im])| {
        let z = Complex64::new(re, im);
        KERNELS
            .iter()
            .map(|(name, f)| {
                let a = f(nu, z.conj(), &sc)?.value;
                let b = f(nu, z, &sc)?.value.conj();
                let diff = (a - b).norm() / b.norm().max(1.0);
                Ok(IdentityReport::new(*name, nu, z.norm(), diff, 0.0, tol))
            })
            .collect()
    })
}

fn integer_suite(g: &IntegerGrid, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let sc = cfg.series;
    let base = cfg.tol(g.tol);
    sweep(grid(&g.n, &g.x), |(n, x)| {
        let s = dkelvin_integer(i64::from(n), x, &sc)?;
        let e = dkelvin_extrapolated(f64::from(n), x, &sc)?;
        let pairs = [(s.dber, e.dber), (s.dbei, e.dbei), (s.dker, e.dker), (s.dkei, e.dkei)];
        Ok(pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                IdentityReport::new(
                    format!("integer_{}", DERIV_NAMES[i]),
                    f64::from(n),
                    x,
                    a,
                    b,
                    base * (1.0 + b.abs()),
                )
            })
            .collect())
    })
}

fn brychkov_suite(g: &BrychkovGrid, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let sc = cfg.series;
    let tol = cfg.tol(g.tol);
    sweep(grid(&g.nu, &g.x), |(nu, x)| {
        let (a, b) = dkelvin_bb_brychkov(nu, x, &sc)?;
        let (c, d) = dkelvin_bb_pos(nu, x, &sc)?;
        Ok(vec![
            IdentityReport::new("brychkov_dber", nu, x, a, c, tol),
            IdentityReport::new("brychkov_dbei", nu, x, b, d, tol),
        ])
    })
}

fn apelblat_suite(g: &ApelblatGrid, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let (sc, qc) = (cfg.series, cfg.quad);
    let tol = cfg.tol(g.tol);
    let dtol = cfg.tol(g.deriv_tol);
    let mut out = sweep(grid(&g.nu, &g.y), |(nu, y)| {
        let (a, b) = apelblat_ber_bei(nu, y, ApelblatPhase::Hyperbolic, &qc)?;
        let (c, d) = kelvin_ber_bei(nu, y, &sc)?;
        Ok(vec![
            IdentityReport::new("apelblat_ber", nu, y, a, c, tol),
            IdentityReport::new("apelblat_bei", nu, y, b, d, tol),
        ])
    })?;
    out.extend(sweep(grid(&g.deriv_nu, &g.deriv_x), |(nu, x)| {
        let (a, b) = apelblat_dber_dbei(nu, x, ApelblatBracket::IndexConsistent, &sc, &qc)?;
        let d = dkelvin(nu, x, &sc)?;
        Ok(vec![
            IdentityReport::new("apelblat_dber", nu, x, a, d.dber, dtol),
            IdentityReport::new("apelblat_dbei", nu, x, b, d.dbei, dtol),
        ])
    })?);
    Ok(out)
}

fn log_integral_suite(g: &LogIntegralGrid, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let (sc, qc) = (cfg.series, cfg.quad);
    let tol = cfg.tol(g.tol);
    let itol = cfg.tol(g.indefinite_tol);
    sweep(grid(&g.nu, &g.x), |(nu, x)| {
        let mut out = vec![
            log_integral_identity(nu, x, KelvinTag::Ber, tol, &sc, &qc)?,
            log_integral_identity(nu, x, KelvinTag::Bei, tol, &sc, &qc)?,
        ];
        out.extend(indefinite_integral_check(nu, x, itol, &sc, &qc)?);
        Ok(out)
    })
}

fn appendix_suite(g: &AppendixGrid, cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let (sc, qc) = (cfg.series, cfg.quad);
    let vtol = cfg.tol(g.variant_tol);
    let stol = cfg.tol(g.series_tol);
    let ctol = cfg.tol(g.convolution_tol);
    let mut out = sweep(g.x.clone(), |x| {
        let (a, b) = appendix_ber_bei(x, AppendixVariant::Sin, &qc)?;
        let (c, d) = appendix_ber_bei(x, AppendixVariant::Cos, &qc)?;
        let (e, f) = kelvin_ber_bei(0.0, x, &sc)?;
        Ok(vec![
            IdentityReport::new("appendix_sin_cos_ber", 0.0, x, a, c, vtol),
            IdentityReport::new("appendix_sin_cos_bei", 0.0, x, b, d, vtol),
            IdentityReport::new("appendix_sin_ber", 0.0, x, a, e, stol),
            IdentityReport::new("appendix_sin_bei", 0.0, x, b, f, stol),
            IdentityReport::new("appendix_cos_ber", 0.0, x, c, e, stol),
            IdentityReport::new("appendix_cos_bei", 0.0, x, d, f, stol),
        ])
    })?;
    out.extend(sweep(g.convolution.clone(), |[a, b, t]| {
        Ok(vec![convolution_identity(a, b, t, ctol, &sc, &qc)?])
    })?);
    Ok(out)
}
