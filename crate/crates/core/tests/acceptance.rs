//! Acceptance run: one PASS/FAIL line per criterion. Grids and tolerances are
//! pinned below; the bundled manifest must agree with them.

use std::process::ExitCode;
use std::time::Instant;

use kelvin_core::bench::run_bench;
use kelvin_core::orderderiv::dkelvin_bb_pos;
use kelvin_core::quad::{apelblat_dber_dbei, ApelblatBracket, IdentityReport, QuadConfig};
use kelvin_core::verify::*;
use kelvin_core::{dkelvin, Method, SeriesConfig};

fn pinned() -> Manifest {
    Manifest {
        version: 1,
        fd: FdGrid {
            nu: vec![0.1, 0.3, 0.75, 1.5, 2.4, 5.3],
            x: vec![0.5, 1.0, 2.0, 5.0, 10.0],
            steps: [1e-3, 5e-4],
            tol: 1e-6,
        },
        reflection: ReflectionGrid {
            n: vec![0, 1, 2, 3, 4, 5],
            x: vec![0.5, 1.0, 2.0, 5.0],
            tol: 1e-12,
        },
        ode: OdeGrid {
            nu: vec![-2.7, -0.5, 0.0, 0.3, 1.0, 2.4, 5.3],
            x: vec![0.5, 1.0, 2.0, 5.0, 10.0],
            h: 1e-3,
            tol: 1e-5,
            kk_max_x: 5.0,
        },
        conjugation: ConjugationGrid {
            nu: vec![0.0, 0.3, 1.0, 2.5],
            z: vec![[0.7, 0.7], [1.5, -0.4], [3.0, 2.0], [0.2, 5.0]],
            tol: 1e-15,
        },
        integer: IntegerGrid {
            n: vec![0, 1, 2, 3, 5],
            x: vec![0.5, 1.0, 2.0, 5.0],
            tol: 1e-5,
        },
        brychkov: BrychkovGrid {
            nu: vec![0.3, 0.5, 1.3, 2.6],
            x: vec![0.5, 1.0, 2.0, 5.0],
            tol: 1e-7,
        },
        apelblat: ApelblatGrid {
            nu: vec![0.0, 0.3, 0.5, 1.0, 1.7, 3.0],
            y: vec![0.5, 1.0, 2.0, 5.0, 8.0],
            tol: 1e-8,
            deriv_nu: vec![0.3, 0.5, 1.5, 2.5],
            deriv_x: vec![0.5, 1.0, 2.0, 5.0],
            deriv_tol: 1e-6,
        },
        log_integral: LogIntegralGrid {
            nu: vec![0.5, 1.5, 2.5],
            x: vec![0.5, 1.0, 2.0, 4.0],
            tol: 1e-7,
            indefinite_tol: 1e-9,
        },
        appendix: AppendixGrid {
            x: vec![0.1, 1.0, 2.0, 5.0, 10.0],
            variant_tol: 1e-10,
            series_tol: 1e-9,
            convolution: vec![[1.0, 1.0, 1.0], [2.0, 1.0, 0.5], [3.0, 0.5, 1.0]],
            convolution_tol: 1e-7,
        },
        bench: BenchGrid {
            nu: vec![0.3, 0.5, 1.5, 2.5],
            x: vec![0.5, 1.0, 2.0, 5.0],
            reps: 20,
        },
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn summarize(rows: &[IdentityReport]) -> Outcome {
    let failed: Vec<&IdentityReport> = rows.iter().filter(|r| !r.pass).collect();
    let worst = rows.iter().map(|r| r.abs_diff / r.tol).fold(0.0, f64::max);
    let mut detail = format!(
        "{} checks, {} failed, worst |diff|/tol {worst:.2e}",
        rows.len(),
        failed.len()
    );
    for r in failed.iter().take(5) {
        detail.push_str(&format!("\n      {}", r.csv_row()));
    }
    Outcome {
        pass: !rows.is_empty() && failed.is_empty(),
        detail,
    }
}

fn suite(s: Suite, m: &Manifest) -> Vec<IdentityReport> {
    run_suite_with(s, m, &VerifyConfig::default()).unwrap_or_else(|e| panic!("suite {s}: {e}"))
}

fn criterion_integer(m: &Manifest) -> Outcome {
    let sc = SeriesConfig::default();
    let mut rows = suite(Suite::Integer, m);
    // The dispatcher must route integer orders to the finite sums.
    for &n in &m.integer.n {
        for &x in &m.integer.x {
            let d = dkelvin(f64::from(n), x, &sc).unwrap();
            let ok = d.method_bb == Method::IntegerSum && d.method_kk == Method::IntegerSum;
            rows.push(IdentityReport::new(
                "integer_dispatch",
                f64::from(n),
                x,
                f64::from(u8::from(ok)),
                1.0,
                0.0,
            ));
        }
    }
    summarize(&rows)
}

fn criterion_apelblat(m: &Manifest) -> Outcome {
    let mut out = summarize(&suite(Suite::Apelblat, m));
    // Bracket toggle: only the index-consistent bracket may reproduce the
    // closed form.
    let (sc, qc) = (SeriesConfig::default(), QuadConfig::default());
    let (nu, x) = (0.5, 1.0);
    let (c, d) = dkelvin_bb_pos(nu, x, &sc).unwrap();
    let mut verdicts = Vec::new();
    for b in [
        ApelblatBracket::IndexConsistent,
        ApelblatBracket::MixedOrder,
        ApelblatBracket::SameOrder,
    ] {
        let (a, bb) = apelblat_dber_dbei(nu, x, b, &sc, &qc).unwrap();
        let err = (a - c).abs().max((bb - d).abs());
        verdicts.push((b, err <= m.apelblat.deriv_tol));
        out.detail.push_str(&format!("; {b:?} bracket err {err:.1e}"));
    }
    out.pass &= verdicts
        == [
            (ApelblatBracket::IndexConsistent, true),
            (ApelblatBracket::MixedOrder, false),
            (ApelblatBracket::SameOrder, false),
        ];
    out
}

fn criterion_structural(m: &Manifest) -> Outcome {
    let mut rows = suite(Suite::Reflection, m);
    rows.extend(suite(Suite::Ode, m));
    rows.extend(suite(Suite::Conjugation, m));
    summarize(&rows)
}

fn criterion_bench(m: &Manifest) -> Outcome {
    let pts: Vec<(f64, f64)> = m
        .bench
        .nu
        .iter()
        .flat_map(|&n| m.bench.x.iter().map(move |&x| (n, x)))
        .collect();
    match run_bench(&pts, 5, &SeriesConfig::default(), &QuadConfig::default()) {
        Ok(r) => Outcome {
            pass: r.rows.len() == pts.len() && r.ratio.is_finite() && r.ratio > 0.0,
            detail: format!(
                "closed form {:.2e} s, quadrature {:.2e} s per point, ratio {:.1} (informational)",
                r.closed_form_median_s, r.quadrature_median_s, r.ratio
            ),
        },
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let m = pinned();
    let fd = suite(Suite::Fd, &m);
    let (neg, pos): (Vec<_>, Vec<_>) = fd.into_iter().partition(|r| r.name.starts_with("fd_neg_"));
    let appendix = suite(Suite::Appendix, &m);

    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "0 bundled manifest matches pinned grids",
            Outcome {
                pass: *manifest() == m,
                detail: "manifest/grids.toml".into(),
            },
        ),
        ("1 order derivatives vs finite differences", summarize(&pos)),
        ("2 negative orders vs finite differences", summarize(&neg)),
        (
            "3 integer-order sums vs extrapolated closed form",
            criterion_integer(&m),
        ),
        (
            "4 closed form vs hypergeometric reference",
            summarize(&suite(Suite::Brychkov, &m)),
        ),
        ("5 integral representations", criterion_apelblat(&m)),
        (
            "6 log-weighted and indefinite integrals",
            summarize(&suite(Suite::LogIntegral, &m)),
        ),
        ("7 zero-order integrals and convolution", summarize(&appendix)),
        ("8 reflection, ODE residual, conjugation", criterion_structural(&m)),
        ("9 benchmark report", criterion_bench(&m)),
    ];
    let mut all = true;
    for (name, o) in &criteria {
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        all &= o.pass;
    }
    let secs = start.elapsed().as_secs_f64();
    let in_time = secs < 60.0;
    println!(
        "{} runtime {secs:.2} s (limit 60 s)",
        if in_time { "PASS" } else { "FAIL" }
    );
    if all && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
