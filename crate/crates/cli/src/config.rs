use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use gpf_core::special::MAX_ARGUMENT;
use gpf_core::{GeneratorConfig, InequalityId, QuadConfig};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    /// One JSON report per line.
    #[default]
    Jsonl,
    /// Flattened reports, one row each.
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Report file; standard output when absent.
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: ReportFormat,
    /// Optional per-inequality status counts as CSV.
    #[serde(default)]
    pub summary_csv: Option<PathBuf>,
}

/// Multiplies the right-hand side of one inequality, to confirm that the
/// pipeline reports violations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaultInjection {
    pub inequality: InequalityId,
    pub rhs_factor: f64,
}

/// A verification campaign, read from a single JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub inequalities: Vec<InequalityId>,
    pub alpha_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
    pub p1_grid: Vec<f64>,
    pub p2_grid: Vec<f64>,
    pub x_grid: Vec<f64>,
    pub cases_per_cell: usize,
    #[serde(default)]
    pub generator: GeneratorConfig,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Relative widening of grid extrema when deriving constant bounds.
    #[serde(default = "default_bounds_slack")]
    pub bounds_slack: f64,
    #[serde(default)]
    pub quadrature: QuadConfig,
    #[serde(default)]
    pub output: OutputConfig,
    /// Worker threads; all available cores when absent.
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub fault_injection: Option<FaultInjection>,
}

fn default_tol() -> f64 {
    1e-8
}

fn default_bounds_slack() -> f64 {
    1e-3
}

impl CampaignConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: Self =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |msg: String| Err(CliError::Config(msg));
        if self.inequalities.is_empty() {
            return fail("inequalities is empty".into());
        }
        let distinct: BTreeSet<_> = self.inequalities.iter().collect();
        if distinct.len() != self.inequalities.len() {
            return fail("inequalities contains duplicates".into());
        }
        let order = |v: &f64| *v > 0.0 && *v <= MAX_ARGUMENT;
        let index = |v: &f64| *v > 0.0 && *v <= 1.0;
        let point = |v: &f64| *v > 0.0 && v.is_finite();
        type Grid<'a> = (&'a str, &'a Vec<f64>, &'a dyn Fn(&f64) -> bool, &'a str);
        let grids: [Grid; 5] = [
            ("alpha_grid", &self.alpha_grid, &order, "(0, 170]"),
            ("beta_grid", &self.beta_grid, &order, "(0, 170]"),
            ("p1_grid", &self.p1_grid, &index, "(0, 1]"),
            ("p2_grid", &self.p2_grid, &index, "(0, 1]"),
            ("x_grid", &self.x_grid, &point, "(0, inf)"),
        ];
        for (name, grid, ok, range) in grids {
            if grid.is_empty() {
                return fail(format!("{name} is empty"));
            }
            if let Some(bad) = grid.iter().find(|v| !ok(v)) {
                return fail(format!("{name} value {bad} outside {range}"));
            }
        }
        if self.cases_per_cell == 0 {
            return fail("cases_per_cell must be at least 1".into());
        }
        if !(self.tol > 0.0 && self.tol < 1e-2) {
            return fail(format!("tol must lie in (0, 0.01), got {}", self.tol));
        }
        if !(self.bounds_slack >= 0.0 && self.bounds_slack < 0.5) {
            return fail(format!("bounds_slack must lie in [0, 0.5), got {}", self.bounds_slack));
        }
        if self.workers == Some(0) {
            return fail("workers must be at least 1".into());
        }
        if let Some(fault) = &self.fault_injection {
            if !(fault.rhs_factor > 0.0 && fault.rhs_factor.is_finite()) {
                return fail(format!(
                    "fault_injection.rhs_factor must be positive, got {}",
                    fault.rhs_factor
                ));
            }
        }
        self.generator.validate()?;
        self.quadrature.validate()?;
        Ok(())
    }
}
