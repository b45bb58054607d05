//! Generalized proportional fractional integrals and numerical checks of
//! Chebyshev and Pólya–Szegő type inequalities built on them.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod dd;
pub mod error;
pub mod function;
pub mod generators;
pub mod gpf;
pub mod inequalities;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
pub use function::{Family, FunctionSpec};
pub use generators::{
    constant_bounds, generate_pair, proportional_envelope, remark_step_pair, FamilyMix, GeneratorConfig,
};
pub use gpf::{
    gpf_left, gpf_left_with, gpf_of_one_closed, gpf_of_one_series, gpf_right, gpf_right_with, FractionalParams,
};
pub use inequalities::{CaseParams, CheckOptions, ConstantBounds, Envelope, InequalityId, InequalityReport, Status};
pub use quadrature::{QuadConfig, QuadratureResult};
