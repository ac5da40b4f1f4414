//! Kelvin functions `ber_ν, bei_ν, ker_ν, kei_ν` of real order and their
//! derivatives with respect to the order, with numerical checks of the
//! integral representations they satisfy.

// `!(x > 0.0)` rejects NaN along with the out-of-range values; the long
// constants are tabulated nodes and reference values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bench;
pub mod bessel;
pub mod compensated;
pub mod error;
pub mod hyper;
pub mod kelvin;
pub mod orderderiv;
pub mod quad;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
pub use hyper::{pfq, EvalResult, HyperSpec, SeriesConfig};
pub use kelvin::{kelvin_all, kelvin_ber_bei, kelvin_ker_kei, KelvinQuad};
pub use orderderiv::{dkelvin, Method, OrderDerivQuad};
pub use quad::IdentityReport;
pub use verify::{run_suite, Suite, VerifyConfig};
