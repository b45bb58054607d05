use serde::{Deserialize, Serialize};

use super::{merged_breakpoints, CaseParams, CheckOptions, ConstantBounds, InequalityId, InequalityReport};
use crate::error::{domain, Result};
use crate::function::FunctionSpec;
use crate::generators::remark_step_pair;
use crate::quadrature::{integrate_adaptive, AdaptiveConfig};

/// Grid used to decide whether a pair is synchronous.
const MONOTONE_POINTS: usize = 2049;

/// `∫_a^b` of `f`, `g` and their pairwise products.
struct Moments {
    f: f64,
    g: f64,
    fg: f64,
    ff: f64,
    gg: f64,
}

fn moments(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64) -> Result<Moments> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain("chebyshev_functional", format!("need a < b, got [{a}, {b}]")));
    }
    let end = f.domain_end().min(g.domain_end());
    if a < 0.0 || b > end * (1.0 + 1e-14) {
        return Err(domain(
            "chebyshev_functional",
            format!("[{a}, {b}] leaves the domain [0, {end}]"),
        ));
    }
    let breaks = merged_breakpoints(&[f, g]);
    let cfg = AdaptiveConfig::default();
    let integral = |h: &dyn Fn(f64) -> f64| integrate_adaptive(h, a, b, &breaks, &cfg).map(|r| r.value);
    Ok(Moments {
        f: integral(&|t| f.eval(t))?,
        g: integral(&|t| g.eval(t))?,
        fg: integral(&|t| f.eval(t) * g.eval(t))?,
        ff: integral(&|t| f.eval(t).powi(2))?,
        gg: integral(&|t| g.eval(t).powi(2))?,
    })
}

/// `T(f, g) = (1/(b−a))∫fg − ((1/(b−a))∫f)((1/(b−a))∫g)` by adaptive Gauss–Kronrod.
pub fn chebyshev_functional(f: &FunctionSpec, g: &FunctionSpec, a: f64, b: f64) -> Result<f64> {
    let m = moments(f, g, a, b)?;
    let len = b - a;
    Ok(m.fg / len - (m.f / len) * (m.g / len))
}

fn classical_params(f: &FunctionSpec, g: &FunctionSpec, b: f64, bounds: Option<ConstantBounds>) -> CaseParams {
    CaseParams {
        x: b,
        f: f.to_string(),
        g: g.to_string(),
        bounds,
        ..CaseParams::default()
    }
}

/// `T(f, g) ≥ 0` on `[a, b]`, reported as `lhs = 0`, `rhs = T`. Pairs that
/// are not synchronous on the grid are skipped.
pub fn chebyshev_check(
    f: &FunctionSpec,
    g: &FunctionSpec,
    a: f64,
    b: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::Chebyshev;
    let params = classical_params(f, g, b, None);
    if a == b {
        return Ok(InequalityReport::skipped(id, params, "empty interval"));
    }
    let synchronous = [true, false]
        .into_iter()
        .any(|up| f.is_monotone_on(a, b, MONOTONE_POINTS, up) && g.is_monotone_on(a, b, MONOTONE_POINTS, up));
    if !synchronous {
        return Ok(InequalityReport::skipped(id, params, "pair is not synchronous"));
    }
    let t = chebyshev_functional(f, g, a, b)?;
    Ok(InequalityReport::evaluate(id, params, 0.0, t, opts))
}

/// `|T(f, g)| ≤ (1/4)·(M−m)(N−n)/√(mnMN)·mean(f)·mean(g)` on `[a, b]`.
pub fn gruss_bound_check(
    f: &FunctionSpec,
    g: &FunctionSpec,
    bounds: &ConstantBounds,
    a: f64,
    b: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::GrussBound;
    let params = classical_params(f, g, b, Some(*bounds));
    if a == b {
        return Ok(InequalityReport::skipped(id, params, "empty interval"));
    }
    bounds.verify(f, g, a, b)?;
    if bounds.product() < opts.eps_den {
        return Ok(InequalityReport::ill_conditioned(id, params, "mnMN below eps_den"));
    }
    let m = moments(f, g, a, b)?;
    let len = b - a;
    let (mean_f, mean_g) = (m.f / len, m.g / len);
    let lhs = (m.fg / len - mean_f * mean_g).abs();
    let rhs = 0.25 * bounds.gruss_factor() * mean_f * mean_g;
    Ok(InequalityReport::evaluate(id, params, lhs, rhs, opts))
}

/// `∫f²·∫g² / (∫fg)² ≤ (1/4)(√(mn/MN) + √(MN/mn))²` on `[a, b]`.
pub fn polya_szego_check(
    f: &FunctionSpec,
    g: &FunctionSpec,
    bounds: &ConstantBounds,
    a: f64,
    b: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::PolyaSzego;
    let params = classical_params(f, g, b, Some(*bounds));
    if a == b {
        return Ok(InequalityReport::skipped(id, params, "empty interval"));
    }
    bounds.verify(f, g, a, b)?;
    let m = moments(f, g, a, b)?;
    if m.fg.abs() < opts.eps_den {
        return Ok(InequalityReport::ill_conditioned(id, params, "∫fg below eps_den"));
    }
    let lhs = m.ff * m.gg / (m.fg * m.fg);
    Ok(InequalityReport::evaluate(
        id,
        params,
        lhs,
        bounds.polya_szego_constant(),
        opts,
    ))
}

/// One point of a sharpness scan of the Grüss constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpnessPoint {
    pub eps: f64,
    /// `|T(f, f)| / (((M−m)²/(4mM))·mean(f)²)`; equals `1 − ε²`.
    pub ratio: f64,
}

/// Ratio of the Chebyshev functional to the Grüss bound for the half-interval
/// step function with levels `1 ∓ ε`, for each `ε` in `eps_grid`.
pub fn sharpness_scan(eps_grid: &[f64]) -> Result<Vec<SharpnessPoint>> {
    eps_grid
        .iter()
        .map(|&eps| {
            let (f, bounds) = remark_step_pair(eps)?;
            let m = moments(&f, &f, 0.0, 1.0)?;
            let t = (m.ff - m.f * m.f).abs();
            let (lo, hi) = (bounds.m, bounds.big_m);
            let bound = (hi - lo).powi(2) / (4.0 * lo * hi) * m.f * m.f;
            Ok(SharpnessPoint { eps, ratio: t / bound })
        })
        .collect()
}
