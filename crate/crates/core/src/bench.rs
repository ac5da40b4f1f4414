//! Latency of the closed-form order derivatives against the quadrature
//! representation of the same quantities.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyper::SeriesConfig;
use crate::orderderiv::dkelvin;
use crate::quad::{apelblat_dber_dbei, ApelblatBracket, QuadConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchRow {
    pub nu: f64,
    pub x: f64,
    /// Median seconds per closed-form evaluation.
    pub closed_form_s: f64,
    /// Median seconds per quadrature evaluation.
    pub quadrature_s: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub closed_form_median_s: f64,
    pub quadrature_median_s: f64,
    /// `quadrature_median_s / closed_form_median_s`.
    pub ratio: f64,
}

impl BenchReport {
    pub const CSV_HEADER: &'static str = "nu,x,closed_form_s,quadrature_s,ratio";
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn time_median<F: FnMut() -> Result<()>>(reps: usize, mut f: F) -> Result<f64> {
    let mut t = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        f()?;
        t.push(start.elapsed().as_secs_f64());
    }
    Ok(median(&mut t))
}

/// Times `dkelvin` and `apelblat_dber_dbei` at every `(ν, x)`. Orders must be
/// positive. Each point runs the closed form `reps` times and the quadrature
/// `max(1, reps / 10)` times.
pub fn run_bench(points: &[(f64, f64)], reps: usize, series: &SeriesConfig, quad: &QuadConfig) -> Result<BenchReport> {
    if points.is_empty() {
        return Err(Error::Config("benchmark grid is empty".into()));
    }
    if reps == 0 {
        return Err(Error::Config("benchmark needs reps >= 1".into()));
    }
    series.validate()?;
    quad.validate()?;
    let quad_reps = (reps / 10).max(1);
    let mut rows = Vec::with_capacity(points.len());
    for &(nu, x) in points {
        let cf = time_median(reps, || dkelvin(nu, x, series).map(|_| ()))?;
        let q = time_median(quad_reps, || {
            apelblat_dber_dbei(nu, x, ApelblatBracket::IndexConsistent, series, quad).map(|_| ())
        })?;
        let cf = cf.max(Duration::from_nanos(1).as_secs_f64());
        rows.push(BenchRow {
            nu,
            x,
            closed_form_s: cf,
            quadrature_s: q,
            ratio: q / cf,
        });
    }
    let closed_form_median_s = median(&mut rows.iter().map(|r| r.closed_form_s).collect::<Vec<_>>());
    let quadrature_median_s = median(&mut rows.iter().map(|r| r.quadrature_s).collect::<Vec<_>>());
    Ok(BenchReport {
        rows,
        closed_form_median_s,
        quadrature_median_s,
        ratio: quadrature_median_s / closed_form_median_s,
    })
}
