use serde::{Deserialize, Serialize};

use super::{CheckOptions, ConstantBounds, InequalityId};

/// Verdict of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    /// `relative_margin ≥ −tol`.
    Holds,
    /// Slightly negative margin, attributable to quadrature noise.
    ViolatedWithinTolerance,
    /// Margin below `−hard_tol`.
    Violated,
    /// A denominator vanished; the ratio is not meaningful.
    IllConditioned,
    /// Not evaluated (degenerate input, failed precondition or numerical failure).
    Skipped,
}

impl Status {
    pub const ALL: [Status; 5] = [
        Status::Holds,
        Status::ViolatedWithinTolerance,
        Status::Violated,
        Status::IllConditioned,
        Status::Skipped,
    ];
}

/// Everything needed to reproduce one case.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CaseParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<f64>,
    /// Evaluation point; classical checks integrate over `[0, x]`.
    pub x: f64,
    pub f: String,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub envelope: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<ConstantBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case_index: Option<u64>,
}

/// Both sides of one inequality `lhs ≤ rhs` and the verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityReport {
    pub inequality_id: InequalityId,
    pub params: CaseParams,
    #[serde(with = "nullable_f64")]
    pub lhs: f64,
    #[serde(with = "nullable_f64")]
    pub rhs: f64,
    /// `rhs − lhs`.
    #[serde(with = "nullable_f64")]
    pub margin: f64,
    /// `margin / max(|lhs|, |rhs|, 1)`.
    #[serde(with = "nullable_f64")]
    pub relative_margin: f64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl InequalityReport {
    /// Grades `lhs ≤ rhs`. The right-hand side is multiplied by
    /// `opts.rhs_scale` first.
    pub fn evaluate(id: InequalityId, params: CaseParams, lhs: f64, rhs: f64, opts: &CheckOptions) -> Self {
        let rhs = rhs * opts.rhs_scale;
        if !lhs.is_finite() || !rhs.is_finite() {
            let mut r = Self::ill_conditioned(id, params, "non-finite side");
            r.lhs = lhs;
            r.rhs = rhs;
            return r;
        }
        let margin = rhs - lhs;
        let relative_margin = margin / lhs.abs().max(rhs.abs()).max(1.0);
        let status = if relative_margin >= -opts.tol {
            Status::Holds
        } else if relative_margin >= -opts.hard_tol {
            Status::ViolatedWithinTolerance
        } else {
            Status::Violated
        };
        Self {
            inequality_id: id,
            params,
            lhs,
            rhs,
            margin,
            relative_margin,
            status,
            detail: None,
        }
    }

    pub fn ill_conditioned(id: InequalityId, params: CaseParams, detail: impl Into<String>) -> Self {
        Self::unevaluated(id, params, Status::IllConditioned, detail.into())
    }

    pub fn skipped(id: InequalityId, params: CaseParams, detail: impl Into<String>) -> Self {
        Self::unevaluated(id, params, Status::Skipped, detail.into())
    }

    fn unevaluated(id: InequalityId, params: CaseParams, status: Status, detail: String) -> Self {
        Self {
            inequality_id: id,
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            relative_margin: f64::NAN,
            status,
            detail: Some(detail),
        }
    }
}

/// `f64` that serializes NaN and infinities as `null` and reads `null` back as NaN.
mod nullable_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_thresholds() {
        let opts = CheckOptions::default();
        let id = InequalityId::EnvelopeRatio;
        let grade = |lhs: f64, rhs: f64| InequalityReport::evaluate(id, CaseParams::default(), lhs, rhs, &opts).status;
        assert_eq!(grade(0.25, 0.25), Status::Holds);
        assert_eq!(grade(0.25 + 5e-9, 0.25), Status::Holds);
        assert_eq!(grade(0.25 + 5e-7, 0.25), Status::ViolatedWithinTolerance);
        assert_eq!(grade(0.26, 0.25), Status::Violated);
        assert_eq!(grade(f64::NAN, 0.25), Status::IllConditioned);
    }

    #[test]
    fn relative_margin_uses_unit_floor() {
        let r = InequalityReport::evaluate(
            InequalityId::GrussBound,
            CaseParams::default(),
            1e-3,
            2e-3,
            &CheckOptions::default(),
        );
        assert_eq!(r.margin, 1e-3);
        assert_eq!(r.relative_margin, 1e-3);
        let r = InequalityReport::evaluate(
            InequalityId::GrussBound,
            CaseParams::default(),
            3.0,
            4.0,
            &CheckOptions::default(),
        );
        assert_eq!(r.relative_margin, 0.25);
    }

    #[test]
    fn rhs_scale_corrupts_verdict() {
        let opts = CheckOptions {
            rhs_scale: 0.9,
            ..CheckOptions::default()
        };
        let r = InequalityReport::evaluate(InequalityId::EnvelopeRatio, CaseParams::default(), 0.25, 0.25, &opts);
        assert_eq!(r.status, Status::Violated);
        assert_eq!(r.rhs, 0.225);
    }
}
