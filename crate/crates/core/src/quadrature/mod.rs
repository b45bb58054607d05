//! Quadrature back ends.
//!
//! * [`weighted`] integrates `∫₀^L u^{α−1} φ(u) du` with a Gauss–Jacobi panel
//!   at the singular end, Gauss–Legendre panels elsewhere, and panel
//!   doubling until two successive levels agree.
//! * [`adaptive`] is a nonsingular adaptive Gauss–Kronrod (7/15) integrator
//!   used for classical integrals and as an independent oracle.

pub mod adaptive;
pub mod rules;
pub mod weighted;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use adaptive::{integrate_adaptive, AdaptiveConfig};
pub use rules::GaussRule;
pub use weighted::integrate_weighted;

/// Settings for the panel-doubling weighted quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_floor: f64,
    /// Nodes at the coarsest level.
    pub min_nodes: usize,
    /// Doubling stops with `NonConvergence` once the next level would exceed this.
    pub max_nodes: usize,
    /// Points per panel.
    pub panel_order: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_floor: 1e-300,
            min_nodes: 64,
            max_nodes: 4096,
            panel_order: 16,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol > 0.0
            && self.rel_tol < 1.0
            && self.abs_floor > 0.0
            && self.panel_order >= 2
            && self.min_nodes >= self.panel_order
            && self.max_nodes >= 2 * self.min_nodes;
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid quadrature configuration {self:?}")))
        }
    }
}

/// One evaluated integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub nodes_used: usize,
}

impl QuadratureResult {
    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            nodes_used: self.nodes_used,
        }
    }
}

/// Sorted, deduplicated points of `points` lying strictly inside `(lo, hi)`.
pub(crate) fn interior_points(points: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let guard = 1e-14 * (hi - lo).abs().max(1.0);
    let mut out: Vec<f64> = points
        .iter()
        .copied()
        .filter(|&p| p.is_finite() && p > lo + guard && p < hi - guard)
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= guard);
    out
}
