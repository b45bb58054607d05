//! Generalized proportional fractional (GPF) integral operators.
//!
//! For order `α > 0` and proportionality index `p ∈ (0, 1]`, with
//! `a = (p − 1)/p ≤ 0`, the left operator anchored at zero is
//!
//! ```text
//! I[f](x) = 1/(p^α Γ(α)) ∫₀^x e^{a (x−τ)} (x−τ)^{α−1} f(τ) dτ
//! ```
//!
//! and the right operator on `[t, b]` is the mirror image with kernel
//! `e^{a (τ−t)} (τ−t)^{α−1}`. At `p = 1` both reduce to Riemann–Liouville
//! integrals, and at `α = p = 1` to the ordinary integral.
//!
//! Both are evaluated by substituting the distance to the anchor, `u`, so the
//! kernel becomes the Jacobi weight `u^{α−1}` times a smooth factor.

use serde::{Deserialize, Serialize};

use crate::dd::DoubleDouble;
use crate::error::{domain, Error, Result};
use crate::function::FunctionSpec;
use crate::quadrature::{integrate_weighted, QuadConfig, QuadratureResult};
use crate::special::{gamma, lower_incomplete_gamma, MAX_ARGUMENT};

/// Order `α` and proportionality index `p` of a GPF operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct FractionalParams {
    alpha: f64,
    p: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    alpha: f64,
    p: f64,
}

impl TryFrom<RawParams> for FractionalParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        Self::new(raw.alpha, raw.p)
    }
}

impl From<FractionalParams> for RawParams {
    fn from(p: FractionalParams) -> Self {
        Self { alpha: p.alpha, p: p.p }
    }
}

impl FractionalParams {
    pub fn new(alpha: f64, p: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= MAX_ARGUMENT) {
            return Err(domain(
                "FractionalParams",
                format!("alpha = {alpha} outside (0, {MAX_ARGUMENT}]"),
            ));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(domain("FractionalParams", format!("p = {p} outside (0, 1]")));
        }
        Ok(Self { alpha, p })
    }

    /// The Riemann–Liouville case `p = 1`.
    pub fn riemann_liouville(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Exponential rate `a = (p − 1)/p`; zero iff `p = 1`.
    pub fn rate(&self) -> f64 {
        (self.p - 1.0) / self.p
    }

    /// `1 / (p^α Γ(α))`.
    pub fn normalization(&self) -> Result<f64> {
        Ok(1.0 / (self.p.powf(self.alpha) * gamma(self.alpha)?))
    }
}

/// Left GPF integral of `f` evaluated at `x`, `0 < x ≤ X`.
pub fn gpf_left(params: FractionalParams, f: &FunctionSpec, x: f64, cfg: &QuadConfig) -> Result<QuadratureResult> {
    if x > f.domain_end() * (1.0 + 1e-14) {
        return Err(domain(
            "gpf_left",
            format!("x = {x} beyond domain end {}", f.domain_end()),
        ));
    }
    gpf_left_with(params, |t| f.eval(t), f.breakpoints(), x, cfg)
}

/// Left GPF integral of an arbitrary integrand with known interior `breakpoints`.
pub fn gpf_left_with<F: Fn(f64) -> f64>(
    params: FractionalParams,
    integrand: F,
    breakpoints: &[f64],
    x: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("gpf_left", format!("x = {x} must be positive")));
    }
    let rate = params.rate();
    let u_breaks: Vec<f64> = breakpoints.iter().map(|&b| x - b).collect();
    let phi = |u: f64| (rate * u).exp() * integrand(x - u);
    let raw = integrate_weighted(phi, params.alpha, x, &u_breaks, cfg)?;
    Ok(raw.scaled(params.normalization()?))
}

/// Right GPF integral of `f` on `[t, b]`, `0 ≤ t < b ≤ X`.
pub fn gpf_right(
    params: FractionalParams,
    f: &FunctionSpec,
    t: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult> {
    if !(t >= 0.0 && t < b) {
        return Err(domain("gpf_right", format!("need 0 <= t < b, got t = {t}, b = {b}")));
    }
    if b > f.domain_end() * (1.0 + 1e-14) {
        return Err(domain(
            "gpf_right",
            format!("b = {b} beyond domain end {}", f.domain_end()),
        ));
    }
    gpf_right_with(params, |tau| f.eval(tau), f.breakpoints(), t, b, cfg)
}

pub fn gpf_right_with<F: Fn(f64) -> f64>(
    params: FractionalParams,
    integrand: F,
    breakpoints: &[f64],
    t: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadratureResult> {
    if !(t < b) || !t.is_finite() || !b.is_finite() {
        return Err(domain("gpf_right", format!("need t < b, got t = {t}, b = {b}")));
    }
    let rate = params.rate();
    let u_breaks: Vec<f64> = breakpoints.iter().map(|&bp| bp - t).collect();
    let phi = |u: f64| (rate * u).exp() * integrand(t + u);
    let raw = integrate_weighted(phi, params.alpha, b - t, &u_breaks, cfg)?;
    Ok(raw.scaled(params.normalization()?))
}

/// GPF integral of the constant 1 from the Taylor expansion of the
/// exponential kernel:
///
/// ```text
/// 1/(p^α Γ(α)) Σ_{k≥0} a^k x^{α+k} / (k! (α+k))
/// ```
///
/// The series alternates with terms as large as `e^{|a|x}`, so it is summed in
/// double-double arithmetic.
pub fn gpf_of_one_series(params: FractionalParams, x: f64, kmax: usize, term_tol: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("gpf_of_one_series", format!("x = {x} must be positive")));
    }
    if kmax < 1 {
        return Err(domain("gpf_of_one_series", "kmax must be at least 1"));
    }
    let alpha = params.alpha;
    // a·x carried exactly enough that the large terms do not amplify its rounding.
    let rate = DoubleDouble::sum(params.p, -1.0) / params.p;
    let z = rate * x;
    let zf = z.to_f64().abs();

    let mut power = DoubleDouble::from_f64(1.0); // z^k / k!
    let mut sum = DoubleDouble::from_f64(1.0) / alpha;
    let mut last = f64::INFINITY;
    for k in 1..=kmax {
        power = power * z / (k as f64);
        let term = power / DoubleDouble::sum(alpha, k as f64);
        sum = sum + term;
        last = term.abs().to_f64();
        if (k as f64) > zf && last < term_tol * sum.abs().to_f64() {
            return Ok(x.powf(alpha) * sum.to_f64() * params.normalization()?);
        }
        if last == 0.0 {
            return Ok(x.powf(alpha) * sum.to_f64() * params.normalization()?);
        }
    }
    Err(Error::NonConvergence {
        routine: "gpf_of_one_series",
        work: kmax,
        estimate: last,
    })
}

/// Closed form of the GPF integral of 1:
/// `(−a)^{−α} γ(α, −a x) / (p^α Γ(α))` for `a < 0`, `x^α / (Γ(α) α)` for `a = 0`.
pub fn gpf_of_one_closed(params: FractionalParams, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("gpf_of_one_closed", format!("x = {x} must be positive")));
    }
    let alpha = params.alpha;
    let rate = params.rate();
    let norm = params.normalization()?;
    if rate == 0.0 {
        return Ok(x.powf(alpha) / alpha * norm);
    }
    let decay = -rate;
    Ok(decay.powf(-alpha) * lower_incomplete_gamma(alpha, decay * x)? * norm)
}
