//! Numerical verification of Chebyshev, Grüss and Pólya–Szegő type
//! inequalities, classical and for GPF integrals anchored at zero.
//!
//! Every check evaluates both sides of one inequality `lhs ≤ rhs` and wraps
//! them in an [`InequalityReport`] carrying the signed margin `rhs − lhs` and
//! a [`Status`].

mod classical;
mod fractional;
mod report;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{FunctionSpec, AUDIT_POINTS};
use crate::quadrature::QuadConfig;

pub use classical::{
    chebyshev_check, chebyshev_functional, gruss_bound_check, polya_szego_check, sharpness_scan, SharpnessPoint,
};
pub use fractional::{
    envelope_amgm_check, envelope_product_check, envelope_ratio_check, gruss_constant_check, gruss_envelope_check,
    polya_szego_gpf_check, two_order_envelope_check, two_order_gruss_check, two_order_polya_szego_check,
};
pub use report::{CaseParams, InequalityReport, Status};

/// The verified inequalities. Wire names are the campaign identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InequalityId {
    /// `T(f, g) ≥ 0` for synchronous `f, g`.
    #[serde(rename = "chebyshev")]
    Chebyshev,
    /// Grüss-type bound on `|T(f, g)|` through constant bounds.
    #[serde(rename = "theorem1")]
    GrussBound,
    /// Classical Pólya–Szegő inequality.
    #[serde(rename = "polya_szego")]
    PolyaSzego,
    /// Pointwise AM–GM envelope inequality, integrated.
    #[serde(rename = "amgm")]
    EnvelopeAmGm,
    /// Envelope ratio bounded by 1/4.
    #[serde(rename = "lemma1")]
    EnvelopeRatio,
    /// Pólya–Szegő for one GPF operator.
    #[serde(rename = "corollary1")]
    PolyaSzegoGpf,
    /// Envelope inequality mixing two GPF operators.
    #[serde(rename = "lemma2")]
    TwoOrderEnvelope,
    /// Pólya–Szegő mixing two GPF operators.
    #[serde(rename = "corollary2")]
    TwoOrderPolyaSzego,
    /// Product bound through envelope quotients.
    #[serde(rename = "lemma3")]
    EnvelopeProduct,
    /// Two-operator Grüss-type bound.
    #[serde(rename = "theorem2")]
    TwoOrderGruss,
    /// One-operator Grüss-type bound with envelopes.
    #[serde(rename = "theorem3")]
    GrussEnvelope,
    /// One-operator Grüss-type bound with constant bounds.
    #[serde(rename = "corollary3")]
    GrussConstant,
}

/// Which operator parameters an inequality depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    /// Ordinary integrals on `[0, x]`.
    Classical,
    /// One GPF operator `(α, p₁)`.
    SingleOrder,
    /// Two GPF operators `(α, p₁)` and `(β, p₂)`.
    TwoOrder,
}

impl InequalityId {
    pub const ALL: [InequalityId; 12] = [
        InequalityId::Chebyshev,
        InequalityId::GrussBound,
        InequalityId::PolyaSzego,
        InequalityId::EnvelopeAmGm,
        InequalityId::EnvelopeRatio,
        InequalityId::PolyaSzegoGpf,
        InequalityId::TwoOrderEnvelope,
        InequalityId::TwoOrderPolyaSzego,
        InequalityId::EnvelopeProduct,
        InequalityId::TwoOrderGruss,
        InequalityId::GrussEnvelope,
        InequalityId::GrussConstant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Chebyshev => "chebyshev",
            Self::GrussBound => "theorem1",
            Self::PolyaSzego => "polya_szego",
            Self::EnvelopeAmGm => "amgm",
            Self::EnvelopeRatio => "lemma1",
            Self::PolyaSzegoGpf => "corollary1",
            Self::TwoOrderEnvelope => "lemma2",
            Self::TwoOrderPolyaSzego => "corollary2",
            Self::EnvelopeProduct => "lemma3",
            Self::TwoOrderGruss => "theorem2",
            Self::GrussEnvelope => "theorem3",
            Self::GrussConstant => "corollary3",
        }
    }

    pub fn arity(self) -> Arity {
        match self {
            Self::Chebyshev | Self::GrussBound | Self::PolyaSzego => Arity::Classical,
            Self::EnvelopeAmGm
            | Self::EnvelopeRatio
            | Self::PolyaSzegoGpf
            | Self::GrussEnvelope
            | Self::GrussConstant => Arity::SingleOrder,
            Self::TwoOrderEnvelope | Self::TwoOrderPolyaSzego | Self::EnvelopeProduct | Self::TwoOrderGruss => {
                Arity::TwoOrder
            }
        }
    }

    /// Whether the check consumes constant bounds (otherwise an envelope).
    pub fn uses_constant_bounds(self) -> bool {
        matches!(
            self,
            Self::GrussBound | Self::PolyaSzego | Self::PolyaSzegoGpf | Self::TwoOrderPolyaSzego | Self::GrussConstant
        )
    }
}

impl std::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for InequalityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown inequality {s:?}")))
    }
}

/// Tolerances and numerical settings shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// `relative_margin ≥ −tol` counts as holding.
    pub tol: f64,
    /// `relative_margin < −hard_tol` is a genuine violation.
    pub hard_tol: f64,
    /// Denominators below this magnitude make a report ill-conditioned.
    pub eps_den: f64,
    pub quad: QuadConfig,
    /// Multiplies every right-hand side before comparison. Only for fault
    /// injection in tests of the verification pipeline; 1 otherwise.
    pub rhs_scale: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            hard_tol: 1e-6,
            eps_den: 1e-12,
            quad: QuadConfig::default(),
            rhs_scale: 1.0,
        }
    }
}

impl CheckOptions {
    /// Options for margin tolerance `tol`; genuine violations start at `100·tol`.
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            hard_tol: 100.0 * tol,
            ..Self::default()
        }
    }
}

/// Four positive functions with `v₁ ≤ f ≤ v₂` and `w₁ ≤ g ≤ w₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub v1: FunctionSpec,
    pub v2: FunctionSpec,
    pub w1: FunctionSpec,
    pub w2: FunctionSpec,
}

impl Envelope {
    pub fn new(v1: FunctionSpec, v2: FunctionSpec, w1: FunctionSpec, w2: FunctionSpec) -> Self {
        Self { v1, v2, w1, w2 }
    }

    /// Constant envelope `(m, M, n, N)` on `[0, domain_end]`.
    pub fn from_bounds(bounds: &ConstantBounds, domain_end: f64) -> Result<Self> {
        Ok(Self {
            v1: FunctionSpec::constant(bounds.m, domain_end)?,
            v2: FunctionSpec::constant(bounds.big_m, domain_end)?,
            w1: FunctionSpec::constant(bounds.n, domain_end)?,
            w2: FunctionSpec::constant(bounds.big_n, domain_end)?,
        })
    }

    /// Confirms the sandwich condition for `f, g` on a `points` grid over `[0, upto]`.
    pub fn verify(&self, f: &FunctionSpec, g: &FunctionSpec, upto: f64, points: usize) -> Result<()> {
        let mut grid: Vec<f64> = (0..points.max(2))
            .map(|i| upto * i as f64 / (points.max(2) - 1) as f64)
            .collect();
        for spec in [f, g, &self.v1, &self.v2, &self.w1, &self.w2] {
            grid.extend(spec.breakpoints().iter().filter(|&&b| b <= upto));
        }
        let slack = 1e-12;
        for &t in &grid {
            let (fv, gv) = (f.eval(t), g.eval(t));
            let (v1, v2, w1, w2) = (self.v1.eval(t), self.v2.eval(t), self.w1.eval(t), self.w2.eval(t));
            let ok = v1 > 0.0
                && w1 > 0.0
                && v1 <= fv * (1.0 + slack)
                && fv <= v2 * (1.0 + slack)
                && w1 <= gv * (1.0 + slack)
                && gv <= w2 * (1.0 + slack);
            if !ok {
                return Err(Error::Config(format!(
                    "envelope condition fails at τ = {t}: v1={v1}, f={fv}, v2={v2}, w1={w1}, g={gv}, w2={w2}"
                )));
            }
        }
        Ok(())
    }

    pub fn descriptors(&self) -> Vec<String> {
        [&self.v1, &self.v2, &self.w1, &self.w2]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }
}

/// Constant bounds `0 < m ≤ f ≤ M`, `0 < n ≤ g ≤ N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantBounds {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub n: f64,
    #[serde(rename = "N")]
    pub big_n: f64,
}

impl ConstantBounds {
    pub fn new(m: f64, big_m: f64, n: f64, big_n: f64) -> Result<Self> {
        let finite = [m, big_m, n, big_n].iter().all(|v| v.is_finite());
        if !(finite && m > 0.0 && m <= big_m && n > 0.0 && n <= big_n) {
            return Err(Error::Config(format!(
                "constant bounds need 0 < m <= M and 0 < n <= N, got ({m}, {big_m}, {n}, {big_n})"
            )));
        }
        Ok(Self { m, big_m, n, big_n })
    }

    /// Confirms the bounds for `f, g` on the audit grid over `[lo, hi]`.
    pub fn verify(&self, f: &FunctionSpec, g: &FunctionSpec, lo: f64, hi: f64) -> Result<()> {
        let (fmin, fmax) = f.grid_extrema(lo, hi, AUDIT_POINTS);
        let (gmin, gmax) = g.grid_extrema(lo, hi, AUDIT_POINTS);
        let slack = 1e-12;
        let ok = self.m <= fmin * (1.0 + slack)
            && fmax <= self.big_m * (1.0 + slack)
            && self.n <= gmin * (1.0 + slack)
            && gmax <= self.big_n * (1.0 + slack);
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "bounds {self:?} do not contain f in [{fmin}, {fmax}] and g in [{gmin}, {gmax}]"
            )))
        }
    }

    /// `(1/4)(√(mn/MN) + √(MN/mn))²`.
    pub fn polya_szego_constant(&self) -> f64 {
        let r = (self.m * self.n / (self.big_m * self.big_n)).sqrt();
        0.25 * (r + 1.0 / r).powi(2)
    }

    /// `(M − m)(N − n) / √(mnMN)`.
    pub fn gruss_factor(&self) -> f64 {
        (self.big_m - self.m) * (self.big_n - self.n) / (self.m * self.n * self.big_m * self.big_n).sqrt()
    }

    pub fn product(&self) -> f64 {
        self.m * self.n * self.big_m * self.big_n
    }
}

/// Union of the breakpoints of `specs`.
pub(crate) fn merged_breakpoints(specs: &[&FunctionSpec]) -> Vec<f64> {
    let mut out: Vec<f64> = specs.iter().flat_map(|s| s.breakpoints().iter().copied()).collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}
