//! Adaptive quadrature and the integral identities it checks.

mod engine;
mod identities;

pub use engine::{
    integrate_both_singular, integrate_finite, integrate_right_singular, integrate_semiinf, QuadConfig, SemiInfRule,
    DECAY_FLOOR,
};
pub use identities::{
    apelblat_ber_bei, apelblat_dber_dbei, appendix_ber_bei, convolution_identity, indefinite_integral_check,
    log_integral_identity, ApelblatBracket, ApelblatPhase, AppendixVariant, IdentityReport, KelvinTag,
};
