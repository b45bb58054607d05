//! Enumeration and parallel evaluation of campaign cases.
//!
//! Each inequality only iterates over the grids it depends on: classical
//! checks over `x`, one-operator checks over `α × p₁ × x`, two-operator
//! checks over `α × β × p₁ × p₂ × x`. Every case draws its functions from an
//! RNG seeded by `(seed, inequality, cell, case)`, so results do not depend on
//! the number of workers or the evaluation order.

use std::time::Instant;

use gpf_core::generators::{derive_seed, rng_from_seed, sample_monotone_pair, sample_pair};
use gpf_core::inequalities::{self as ineq, Arity};
use gpf_core::{
    constant_bounds, proportional_envelope, CaseParams, CheckOptions, FractionalParams, InequalityId, InequalityReport,
    Status,
};
use log::{debug, info};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::CampaignConfig;
use crate::error::CliError;

/// One point of the parameter grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    pub x: f64,
}

#[derive(Debug, Clone, Copy)]
struct Case {
    id: InequalityId,
    cell: Cell,
    index: u64,
    seed: u64,
}

/// Grid cells an inequality is evaluated on, in a fixed order.
pub fn cells_for(id: InequalityId, cfg: &CampaignConfig) -> Vec<Cell> {
    let xs = cfg.x_grid.iter().copied();
    let blank = |x| Cell {
        alpha: None,
        beta: None,
        p1: None,
        p2: None,
        x,
    };
    match id.arity() {
        Arity::Classical => xs.map(blank).collect(),
        Arity::SingleOrder => {
            let mut out = Vec::new();
            for &alpha in &cfg.alpha_grid {
                for &p1 in &cfg.p1_grid {
                    for &x in &cfg.x_grid {
                        out.push(Cell {
                            alpha: Some(alpha),
                            p1: Some(p1),
                            ..blank(x)
                        });
                    }
                }
            }
            out
        }
        Arity::TwoOrder => {
            let mut out = Vec::new();
            for &alpha in &cfg.alpha_grid {
                for &beta in &cfg.beta_grid {
                    for &p1 in &cfg.p1_grid {
                        for &p2 in &cfg.p2_grid {
                            for &x in &cfg.x_grid {
                                out.push(Cell {
                                    alpha: Some(alpha),
                                    beta: Some(beta),
                                    p1: Some(p1),
                                    p2: Some(p2),
                                    x,
                                });
                            }
                        }
                    }
                }
            }
            out
        }
    }
}

fn enumerate(cfg: &CampaignConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    for &id in &cfg.inequalities {
        let stream = InequalityId::ALL.iter().position(|&i| i == id).unwrap_or(0) as u64;
        for (c, cell) in cells_for(id, cfg).into_iter().enumerate() {
            for k in 0..cfg.cases_per_cell as u64 {
                cases.push(Case {
                    id,
                    cell,
                    index: cases.len() as u64,
                    seed: derive_seed(cfg.generator.seed, &[stream, c as u64, k]),
                });
            }
        }
    }
    cases
}

/// Status tallies of a campaign.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    pub holds: usize,
    pub violated_within_tolerance: usize,
    pub violated: usize,
    pub ill_conditioned: usize,
    pub skipped: usize,
}

impl StatusCounts {
    pub fn add(&mut self, status: Status) {
        *match status {
            Status::Holds => &mut self.holds,
            Status::ViolatedWithinTolerance => &mut self.violated_within_tolerance,
            Status::Violated => &mut self.violated,
            Status::IllConditioned => &mut self.ill_conditioned,
            Status::Skipped => &mut self.skipped,
        } += 1;
    }

    pub fn total(&self) -> usize {
        self.holds + self.violated_within_tolerance + self.violated + self.ill_conditioned + self.skipped
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub total: usize,
    pub counts: StatusCounts,
    /// Report with the smallest finite relative margin.
    pub worst: Option<InequalityReport>,
    pub wall_time_secs: f64,
}

impl CampaignSummary {
    pub fn from_reports(reports: &[InequalityReport], wall_time_secs: f64) -> Self {
        let mut counts = StatusCounts::default();
        let mut worst: Option<&InequalityReport> = None;
        for r in reports {
            counts.add(r.status);
            if r.relative_margin.is_finite() && worst.map_or(true, |w| r.relative_margin < w.relative_margin) {
                worst = Some(r);
            }
        }
        Self {
            total: reports.len(),
            counts,
            worst: worst.cloned(),
            wall_time_secs,
        }
    }

    /// 2 if any report is `Violated`, otherwise 0.
    pub fn exit_code(&self) -> i32 {
        if self.counts.violated > 0 {
            2
        } else {
            0
        }
    }
}

pub struct CampaignOutcome {
    /// Ordered by case index.
    pub reports: Vec<InequalityReport>,
    pub summary: CampaignSummary,
}

/// Evaluates every case of `cfg` on `workers` threads.
pub fn run_campaign(cfg: &CampaignConfig, workers: usize) -> Result<CampaignOutcome, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let cases = enumerate(cfg);
    info!("campaign: {} cases on {workers} worker(s)", cases.len());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    let reports: Vec<InequalityReport> = pool.install(|| cases.par_iter().map(|c| evaluate_case(cfg, c)).collect());
    let summary = CampaignSummary::from_reports(&reports, start.elapsed().as_secs_f64());
    info!("campaign done in {:.2}s: {:?}", summary.wall_time_secs, summary.counts);
    Ok(CampaignOutcome { reports, summary })
}

fn evaluate_case(cfg: &CampaignConfig, case: &Case) -> InequalityReport {
    let mut report = match check(cfg, case) {
        Ok(r) => r,
        Err(e) => {
            debug!("case {} ({}) not evaluated: {e}", case.index, case.id);
            let params = CaseParams {
                alpha: case.cell.alpha,
                beta: case.cell.beta,
                p1: case.cell.p1,
                p2: case.cell.p2,
                x: case.cell.x,
                ..CaseParams::default()
            };
            InequalityReport::skipped(case.id, params, e.to_string())
        }
    };
    report.params.seed = Some(case.seed);
    report.params.case_index = Some(case.index);
    if report.status == Status::Violated {
        debug!("case {} violated: {:?}", case.index, report);
    }
    report
}

fn check(cfg: &CampaignConfig, case: &Case) -> Result<InequalityReport, gpf_core::Error> {
    let mut opts = CheckOptions::with_tol(cfg.tol);
    opts.quad = cfg.quadrature;
    if let Some(fault) = cfg.fault_injection.filter(|f| f.inequality == case.id) {
        opts.rhs_scale = fault.rhs_factor;
    }
    let gen = &cfg.generator;
    let x = case.cell.x;
    let mut rng = rng_from_seed(case.seed);
    let order = |alpha: Option<f64>, p: Option<f64>| FractionalParams::new(alpha.unwrap_or(1.0), p.unwrap_or(1.0));
    let pa = order(case.cell.alpha, case.cell.p1)?;
    let pb = order(case.cell.beta, case.cell.p2)?;

    use InequalityId::*;
    if case.id == Chebyshev {
        let (f, g) = sample_monotone_pair(&mut rng, gen, x)?;
        return ineq::chebyshev_check(&f, &g, 0.0, x, &opts);
    }
    let (f, g) = sample_pair(&mut rng, gen, x)?;
    if case.id.uses_constant_bounds() {
        let bounds = constant_bounds(&f, &g, x, cfg.bounds_slack)?;
        return match case.id {
            GrussBound => ineq::gruss_bound_check(&f, &g, &bounds, 0.0, x, &opts),
            PolyaSzego => ineq::polya_szego_check(&f, &g, &bounds, 0.0, x, &opts),
            PolyaSzegoGpf => ineq::polya_szego_gpf_check(pa, &f, &g, &bounds, x, &opts),
            TwoOrderPolyaSzego => ineq::two_order_polya_szego_check(pa, pb, &f, &g, &bounds, x, &opts),
            _ => ineq::gruss_constant_check(pa, &f, &g, &bounds, x, &opts),
        };
    }
    let env = proportional_envelope(&f, &g, gen.delta)?;
    match case.id {
        EnvelopeAmGm => ineq::envelope_amgm_check(pa, &f, &g, &env, x, &opts),
        EnvelopeRatio => ineq::envelope_ratio_check(pa, &f, &g, &env, x, &opts),
        TwoOrderEnvelope => ineq::two_order_envelope_check(pa, pb, &f, &g, &env, x, &opts),
        EnvelopeProduct => ineq::envelope_product_check(pa, pb, &f, &g, &env, x, &opts),
        TwoOrderGruss => ineq::two_order_gruss_check(pa, pb, &f, &g, &env, x, &opts),
        _ => ineq::gruss_envelope_check(pa, &f, &g, &env, x, &opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(ids: &[InequalityId]) -> CampaignConfig {
        CampaignConfig {
            inequalities: ids.to_vec(),
            alpha_grid: vec![0.5, 1.0, 2.0],
            beta_grid: vec![1.5],
            p1_grid: vec![0.5, 1.0],
            p2_grid: vec![0.7],
            x_grid: vec![1.0],
            cases_per_cell: 3,
            generator: Default::default(),
            tol: 1e-8,
            bounds_slack: 1e-3,
            quadrature: Default::default(),
            output: Default::default(),
            workers: None,
            fault_injection: None,
        }
    }

    #[test]
    fn cell_counts_follow_arity() {
        let cfg = config(&InequalityId::ALL);
        assert_eq!(cells_for(InequalityId::Chebyshev, &cfg).len(), 1);
        assert_eq!(cells_for(InequalityId::EnvelopeRatio, &cfg).len(), 6);
        assert_eq!(cells_for(InequalityId::TwoOrderGruss, &cfg).len(), 6);
        let cases = enumerate(&cfg);
        // 3 classical inequalities with one cell, 5 with six, 4 with six two-order cells.
        assert_eq!(cases.len(), 3 * (3 + 5 * 6 + 4 * 6));
        assert!(cases.iter().enumerate().all(|(i, c)| c.index == i as u64));
    }

    #[test]
    fn small_campaign_holds_everywhere() {
        let out = run_campaign(&config(&InequalityId::ALL), 2).unwrap();
        assert_eq!(out.summary.total, out.reports.len());
        assert_eq!(out.summary.counts.total(), out.summary.total);
        assert_eq!(
            out.summary.counts.violated + out.summary.counts.violated_within_tolerance,
            0
        );
        assert_eq!(out.summary.exit_code(), 0);
    }

    #[test]
    fn fault_injection_flips_exit_code() {
        let mut cfg = config(&[InequalityId::EnvelopeRatio, InequalityId::EnvelopeAmGm]);
        cfg.fault_injection = Some(crate::config::FaultInjection {
            inequality: InequalityId::EnvelopeRatio,
            rhs_factor: 0.9,
        });
        let out = run_campaign(&cfg, 1).unwrap();
        for r in &out.reports {
            let expected = if r.inequality_id == InequalityId::EnvelopeRatio {
                Status::Violated
            } else {
                Status::Holds
            };
            assert_eq!(r.status, expected);
        }
        assert_eq!(out.summary.exit_code(), 2);
    }
}
