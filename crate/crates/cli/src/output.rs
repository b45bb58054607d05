//! Report writers. Reals are written losslessly: JSON uses the shortest
//! round-trip representation, CSV uses 17 significant digits.

use std::collections::BTreeMap;
use std::io::Write;

use gpf_core::inequalities::SharpnessPoint;
use gpf_core::{InequalityId, InequalityReport};

use crate::campaign::StatusCounts;
use crate::config::ReportFormat;
use crate::error::CliError;

/// `v` with 17 significant digits; empty for NaN.
pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:.16e}")
    }
}

fn format_opt(v: Option<f64>) -> String {
    v.map(format_real).unwrap_or_default()
}

fn status_name(r: &InequalityReport) -> String {
    serde_json::to_value(r.status)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

pub fn write_reports<W: Write>(out: W, reports: &[InequalityReport], format: ReportFormat) -> Result<(), CliError> {
    match format {
        ReportFormat::Jsonl => write_jsonl(out, reports),
        ReportFormat::Csv => write_csv(out, reports),
    }
}

pub fn write_jsonl<W: Write>(mut out: W, reports: &[InequalityReport]) -> Result<(), CliError> {
    for r in reports {
        let line = serde_json::to_string(r).map_err(|e| CliError::Config(format!("serializing report: {e}")))?;
        writeln!(out, "{line}").map_err(|e| CliError::io("writing reports", e))?;
    }
    out.flush().map_err(|e| CliError::io("writing reports", e))
}

pub fn write_csv<W: Write>(out: W, reports: &[InequalityReport]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "inequality_id",
        "case_index",
        "seed",
        "alpha",
        "beta",
        "p1",
        "p2",
        "x",
        "f",
        "g",
        "lhs",
        "rhs",
        "margin",
        "relative_margin",
        "status",
        "detail",
    ])?;
    for r in reports {
        let p = &r.params;
        w.write_record([
            r.inequality_id.name().to_owned(),
            p.case_index.map(|v| v.to_string()).unwrap_or_default(),
            p.seed.map(|v| v.to_string()).unwrap_or_default(),
            format_opt(p.alpha),
            format_opt(p.beta),
            format_opt(p.p1),
            format_opt(p.p2),
            format_real(p.x),
            p.f.clone(),
            p.g.clone(),
            format_real(r.lhs),
            format_real(r.rhs),
            format_real(r.margin),
            format_real(r.relative_margin),
            status_name(r),
            r.detail.clone().unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| CliError::io("writing CSV", e))
}

/// Per-inequality status counts and worst relative margin.
pub fn write_summary_csv<W: Write>(out: W, reports: &[InequalityReport]) -> Result<(), CliError> {
    let mut rows: BTreeMap<InequalityId, (StatusCounts, f64)> = BTreeMap::new();
    for r in reports {
        let (counts, worst) = rows
            .entry(r.inequality_id)
            .or_insert((StatusCounts::default(), f64::NAN));
        counts.add(r.status);
        if r.relative_margin.is_finite() && !(r.relative_margin >= *worst) {
            *worst = r.relative_margin;
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "inequality_id",
        "total",
        "holds",
        "violated_within_tolerance",
        "violated",
        "ill_conditioned",
        "skipped",
        "worst_relative_margin",
    ])?;
    for (id, (c, worst)) in rows {
        w.write_record([
            id.name().to_owned(),
            c.total().to_string(),
            c.holds.to_string(),
            c.violated_within_tolerance.to_string(),
            c.violated.to_string(),
            c.ill_conditioned.to_string(),
            c.skipped.to_string(),
            format_real(worst),
        ])?;
    }
    w.flush().map_err(|e| CliError::io("writing CSV", e))
}

/// Rows of `(ε, ratio, 1 − ε²)`.
pub fn write_sharpness_csv<W: Write>(out: W, points: &[SharpnessPoint]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["eps", "ratio", "one_minus_eps_squared"])?;
    for p in points {
        w.write_record([
            format_real(p.eps),
            format_real(p.ratio),
            format_real(1.0 - p.eps * p.eps),
        ])?;
    }
    w.flush().map_err(|e| CliError::io("writing CSV", e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gpf_core::{CaseParams, CheckOptions};

    #[test]
    fn reals_keep_seventeen_digits() {
        let v = 0.1 + 0.2;
        let s = format_real(v);
        assert_eq!(s, "3.0000000000000004e-1");
        assert_eq!(s.parse::<f64>().unwrap(), v);
        assert_eq!(format_real(f64::NAN), "");
    }

    #[test]
    fn summary_rows_per_inequality() {
        let opts = CheckOptions::default();
        let reports = vec![
            InequalityReport::evaluate(InequalityId::EnvelopeRatio, CaseParams::default(), 0.2, 0.25, &opts),
            InequalityReport::evaluate(InequalityId::EnvelopeRatio, CaseParams::default(), 0.24, 0.25, &opts),
            InequalityReport::skipped(InequalityId::Chebyshev, CaseParams::default(), "not synchronous"),
        ];
        let mut buf = Vec::new();
        write_summary_csv(&mut buf, &reports).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "chebyshev,1,0,0,0,0,1,");
        assert!(lines[2].starts_with("lemma1,2,2,0,0,0,0,1.0"));
    }
}
