//! Shared inputs for the benchmarks.

use gpf_core::{FractionalParams, FunctionSpec};

/// Orders spanning weakly singular, ordinary and smooth kernels.
pub const ORDERS: [(f64, f64); 4] = [(0.5, 1.0), (1.0, 1.0), (1.5, 0.5), (3.7, 0.1)];

pub fn params(alpha: f64, p: f64) -> FractionalParams {
    FractionalParams::new(alpha, p).expect("benchmark orders are valid")
}

/// A smooth function and a step function on `[0, x]`.
pub fn integrands(x: f64) -> [(&'static str, FunctionSpec); 2] {
    [
        (
            "trig",
            FunctionSpec::parse("trig:1.5,0.5,3,0.2", x).expect("valid descriptor"),
        ),
        (
            "step",
            FunctionSpec::parse(&format!("step:1@{},2@{},1.5", 0.3 * x, 0.7 * x), x).expect("valid descriptor"),
        ),
    ]
}
