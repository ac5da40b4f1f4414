use kelvin_core::kelvin::kelvin_ber_bei;
use kelvin_core::orderderiv::dkelvin_bb_pos;
use kelvin_core::quad::*;
use kelvin_core::SeriesConfig;

fn sc() -> SeriesConfig {
    SeriesConfig::default()
}

fn qc() -> QuadConfig {
    QuadConfig::default()
}

#[test]
fn integral_representation_matches_series() {
    for nu in [0.0, 0.3, 0.5, 1.0, 1.7, 3.0] {
        for y in [0.5, 1.0, 2.0, 5.0, 8.0] {
            let (a, b) = apelblat_ber_bei(nu, y, ApelblatPhase::Hyperbolic, &qc()).unwrap();
            let (c, d) = kelvin_ber_bei(nu, y, &sc()).unwrap();
            assert!(
                (a - c).abs() <= 1e-8 && (b - d).abs() <= 1e-8,
                "nu={nu} y={y}: ({a},{b}) vs ({c},{d})"
            );
        }
    }
}

#[test]
fn circular_phase_variant_is_wrong_off_integers() {
    let (a, b) = apelblat_ber_bei(0.3, 1.0, ApelblatPhase::Circular, &qc()).unwrap();
    let (c, d) = kelvin_ber_bei(0.3, 1.0, &sc()).unwrap();
    assert!((a - c).abs() > 1e-3 && (b - d).abs() > 1e-3);
    let (a, _) = apelblat_ber_bei(1.0, 3.0, ApelblatPhase::Circular, &qc()).unwrap();
    let (c, _) = kelvin_ber_bei(1.0, 3.0, &sc()).unwrap();
    assert!((a - c).abs() <= 1e-8);
}

#[test]
fn derivative_integrals_match_closed_form() {
    for (nu, x) in [(0.5, 1.0), (1.5, 2.0), (2.5, 0.5), (0.3, 5.0)] {
        let (a, b) = apelblat_dber_dbei(nu, x, ApelblatBracket::IndexConsistent, &sc(), &qc()).unwrap();
        let (c, d) = dkelvin_bb_pos(nu, x, &sc()).unwrap();
        assert!(
            (a - c).abs() <= 1e-7 && (b - d).abs() <= 1e-7,
            "nu={nu} x={x}: ({a},{b}) vs ({c},{d})"
        );
    }
    for bracket in [ApelblatBracket::MixedOrder, ApelblatBracket::SameOrder] {
        let (a, b) = apelblat_dber_dbei(0.5, 1.0, bracket, &sc(), &qc()).unwrap();
        let (c, d) = dkelvin_bb_pos(0.5, 1.0, &sc()).unwrap();
        assert!((a - c).abs().max((b - d).abs()) > 1e-3, "{bracket:?}");
    }
}

#[test]
fn log_weighted_integrals() {
    for nu in [0.5, 1.5, 2.5] {
        for x in [0.5, 1.0, 2.0, 4.0] {
            for tag in [KelvinTag::Ber, KelvinTag::Bei] {
                let r = log_integral_identity(nu, x, tag, 1e-7, &sc(), &qc()).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }
}

#[test]
fn indefinite_integrals() {
    for (nu, x, tol) in [(0.0, 1.0, 1e-9), (1.0, 2.0, 1e-9), (0.5, 0.1, 1e-10), (2.5, 5.0, 1e-9)] {
        for r in indefinite_integral_check(nu, x, tol, &sc(), &qc()).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }
}

#[test]
fn appendix_variants() {
    for x in [0.1, 1.0, 2.0, 5.0, 10.0] {
        let (a, b) = appendix_ber_bei(x, AppendixVariant::Sin, &qc()).unwrap();
        let (c, d) = appendix_ber_bei(x, AppendixVariant::Cos, &qc()).unwrap();
        let (e, f) = kelvin_ber_bei(0.0, x, &sc()).unwrap();
        assert!((a - c).abs() <= 1e-10 && (b - d).abs() <= 1e-10, "x={x}");
        assert!((a - e).abs() <= 1e-9 && (b - f).abs() <= 1e-9, "x={x}");
    }
}

#[test]
fn convolution() {
    for (a, b, t) in [(1.0, 1.0, 1.0), (2.0, 1.0, 0.5), (3.0, 0.5, 1.0)] {
        let r = convolution_identity(a, b, t, 1e-7, &sc(), &qc()).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
