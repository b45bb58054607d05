//! Campaign runner for the inequality checks in `gpf_core`: configuration,
//! parallel evaluation, and report files.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod campaign;
pub mod config;
pub mod error;
pub mod output;

pub use campaign::{run_campaign, CampaignOutcome, CampaignSummary, StatusCounts};
pub use config::{CampaignConfig, FaultInjection, OutputConfig, ReportFormat};
pub use error::CliError;

/// Default sharpness grid, `count` points spaced evenly over `[lo, hi]`.
pub fn sharpness_grid(count: usize, lo: f64, hi: f64) -> Result<Vec<f64>, CliError> {
    if count < 2 {
        return Err(CliError::Config(format!("count must be at least 2, got {count}")));
    }
    if !(lo > 0.0 && lo < hi && hi < 1.0) {
        return Err(CliError::Config(format!(
            "need 0 < eps_min < eps_max < 1, got [{lo}, {hi}]"
        )));
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { hi } else { lo + step * i as f64 })
        .collect())
}
