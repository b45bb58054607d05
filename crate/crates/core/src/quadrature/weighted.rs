//! Panel-doubling quadrature for `∫₀^L u^{α−1} φ(u) du`.
//!
//! The panel touching `u = 0` uses a Gauss–Jacobi rule whose weight absorbs
//! `u^{α−1}`; every other panel uses Gauss–Legendre with the power folded
//! into the integrand. Panels never straddle a breakpoint of `φ`. The error
//! estimate is the difference between two successive doubling levels and the
//! finer value is returned.

use super::rules::cached_jacobi;
use super::{interior_points, QuadConfig, QuadratureResult};
use crate::error::{domain, Error, Result};

/// Panels per segment for a level with `total` panels spread over `[0, length]`.
fn panel_layout(cuts: &[f64], length: f64, total: usize) -> Vec<usize> {
    cuts.windows(2)
        .map(|w| {
            let share = (w[1] - w[0]) / length * total as f64;
            (share.round() as usize).max(1)
        })
        .collect()
}

fn evaluate_level<F: Fn(f64) -> f64>(
    phi: &F,
    alpha: f64,
    cuts: &[f64],
    panels: &[usize],
    order: usize,
) -> (f64, usize) {
    let jacobi = cached_jacobi(order, alpha);
    let legendre = cached_jacobi(order, 1.0);
    let weight_power = alpha - 1.0;
    let mut sum = 0.0;
    let mut nodes = 0;
    for (seg, (w, &count)) in cuts.windows(2).zip(panels).enumerate() {
        let h = (w[1] - w[0]) / count as f64;
        for k in 0..count {
            let start = w[0] + k as f64 * h;
            if seg == 0 && k == 0 {
                let scale = h.powf(alpha);
                let partial: f64 = jacobi
                    .nodes
                    .iter()
                    .zip(&jacobi.weights)
                    .map(|(&s, &wt)| wt * phi(h * s))
                    .sum();
                sum += scale * partial;
            } else {
                let partial: f64 = legendre
                    .nodes
                    .iter()
                    .zip(&legendre.weights)
                    .map(|(&s, &wt)| {
                        let u = start + h * s;
                        wt * u.powf(weight_power) * phi(u)
                    })
                    .sum();
                sum += h * partial;
            }
            nodes += order;
        }
    }
    (sum, nodes)
}

/// `∫₀^length u^{α−1} φ(u) du` with `breakpoints` (in `u`) splitting panels.
pub fn integrate_weighted<F: Fn(f64) -> f64>(
    phi: F,
    alpha: f64,
    length: f64,
    breakpoints: &[f64],
    cfg: &QuadConfig,
) -> Result<QuadratureResult> {
    cfg.validate()?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(domain(
            "integrate_weighted",
            format!("alpha = {alpha} must be positive"),
        ));
    }
    if !(length > 0.0) || !length.is_finite() {
        return Err(domain(
            "integrate_weighted",
            format!("length = {length} must be positive"),
        ));
    }
    let mut cuts = vec![0.0];
    cuts.extend(interior_points(breakpoints, 0.0, length));
    cuts.push(length);

    let order = cfg.panel_order;
    let mut total_panels = (cfg.min_nodes / order).max(1);
    let (mut previous, mut nodes) =
        evaluate_level(&phi, alpha, &cuts, &panel_layout(&cuts, length, total_panels), order);
    loop {
        total_panels *= 2;
        let layout = panel_layout(&cuts, length, total_panels);
        let (current, level_nodes) = evaluate_level(&phi, alpha, &cuts, &layout, order);
        nodes = level_nodes.max(nodes);
        let estimate = (current - previous).abs();
        if !current.is_finite() {
            return Err(domain("integrate_weighted", "integrand produced a non-finite value"));
        }
        if estimate <= cfg.rel_tol * current.abs().max(cfg.abs_floor) {
            return Ok(QuadratureResult {
                value: current,
                abs_error_estimate: estimate,
                nodes_used: nodes,
            });
        }
        let next_nodes: usize = panel_layout(&cuts, length, 2 * total_panels).iter().sum::<usize>() * order;
        if next_nodes > cfg.max_nodes {
            return Err(Error::NonConvergence {
                routine: "integrate_weighted",
                work: nodes,
                estimate,
            });
        }
        previous = current;
    }
}
