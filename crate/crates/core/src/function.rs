//! Positive test functions on a finite domain `[0, X]`.
//!
//! A [`FunctionSpec`] is immutable after construction and is validated once:
//! finite parameters, well-formed breakpoints, and strict positivity on an
//! audit grid. Functions have a compact text form used on the command line
//! and in reports:
//!
//! | descriptor                 | function                         |
//! |----------------------------|----------------------------------|
//! | `const:c`                  | `c`                              |
//! | `poly:c0,c1,...`           | `c0 + c1 τ + c2 τ² + ...`        |
//! | `exp:c0,c1,c2`             | `c0 + c1 e^{c2 τ}`               |
//! | `trig:c0,c1,c2,c3`         | `c0 + c1 sin(c2 τ + c3)`         |
//! | `step:l0@b1,l1@b2,...,ln`  | level `l_i` on `[b_i, b_{i+1})`  |
//! | `grid:t0:v0,t1:v1,...`     | linear interpolation of samples  |

use std::fmt;

use crate::error::{Error, Result};

/// Points in the uniform positivity audit grid (endpoints included).
pub const AUDIT_POINTS: usize = 1025;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Polynomial {
        coeffs: Vec<f64>,
    },
    /// `offset + scale·e^{rate·τ}`
    ExpAffine {
        offset: f64,
        scale: f64,
        rate: f64,
    },
    /// `offset + amplitude·sin(frequency·τ + phase)`
    TrigAffine {
        offset: f64,
        amplitude: f64,
        frequency: f64,
        phase: f64,
    },
    /// `levels[i]` on `[breakpoints[i-1], breakpoints[i])`; right-continuous.
    Step {
        breakpoints: Vec<f64>,
        levels: Vec<f64>,
    },
    /// Piecewise-linear interpolation through `(knots[i], values[i])`.
    Samples {
        knots: Vec<f64>,
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    domain_end: f64,
    family: Family,
    kinks: Vec<f64>,
}

impl FunctionSpec {
    pub fn new(domain_end: f64, family: Family) -> Result<Self> {
        if !(domain_end > 0.0) || !domain_end.is_finite() {
            return Err(Error::InvalidFunction(format!(
                "domain end {domain_end} must be positive"
            )));
        }
        let kinks = check_family(domain_end, &family)?;
        let spec = Self {
            domain_end,
            family,
            kinks,
        };
        let (min, _) = spec.grid_extrema(0.0, domain_end, AUDIT_POINTS);
        if !(min > 0.0) {
            return Err(Error::InvalidFunction(format!(
                "{spec} is not strictly positive on [0, {domain_end}] (grid minimum {min})"
            )));
        }
        Ok(spec)
    }

    /// Like [`FunctionSpec::new`] but only requires finite values on the
    /// audit grid. For operator evaluation, which does not need positivity;
    /// the inequality checks separately require positive bounds.
    pub fn integrand(domain_end: f64, family: Family) -> Result<Self> {
        if !(domain_end > 0.0) || !domain_end.is_finite() {
            return Err(Error::InvalidFunction(format!(
                "domain end {domain_end} must be positive"
            )));
        }
        let kinks = check_family(domain_end, &family)?;
        let spec = Self {
            domain_end,
            family,
            kinks,
        };
        let (min, max) = spec.grid_extrema(0.0, domain_end, AUDIT_POINTS);
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::InvalidFunction(format!(
                "{spec} is not finite on [0, {domain_end}]"
            )));
        }
        Ok(spec)
    }

    /// Parses a descriptor with the relaxed checks of [`FunctionSpec::integrand`].
    pub fn parse_integrand(descriptor: &str, domain_end: f64) -> Result<Self> {
        Self::integrand(domain_end, parse_family(descriptor)?)
    }

    pub fn constant(value: f64, domain_end: f64) -> Result<Self> {
        Self::new(domain_end, Family::Polynomial { coeffs: vec![value] })
    }

    /// Parses a compact descriptor for a function on `[0, domain_end]`.
    pub fn parse(descriptor: &str, domain_end: f64) -> Result<Self> {
        let family = parse_family(descriptor)?;
        Self::new(domain_end, family)
    }

    pub fn domain_end(&self) -> f64 {
        self.domain_end
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Interior points where the function or its derivative jumps.
    pub fn breakpoints(&self) -> &[f64] {
        &self.kinks
    }

    pub fn eval(&self, t: f64) -> f64 {
        match &self.family {
            Family::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c),
            Family::ExpAffine { offset, scale, rate } => offset + scale * (rate * t).exp(),
            Family::TrigAffine {
                offset,
                amplitude,
                frequency,
                phase,
            } => offset + amplitude * (frequency * t + phase).sin(),
            Family::Step { breakpoints, levels } => {
                let idx = breakpoints.partition_point(|&b| b <= t);
                levels[idx]
            }
            Family::Samples { knots, values } => {
                let idx = knots.partition_point(|&k| k <= t);
                if idx == 0 {
                    values[0]
                } else if idx >= knots.len() {
                    values[values.len() - 1]
                } else {
                    let (k0, k1) = (knots[idx - 1], knots[idx]);
                    let w = (t - k0) / (k1 - k0);
                    values[idx - 1] * (1.0 - w) + values[idx] * w
                }
            }
        }
    }

    /// The same family with every output multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::InvalidFunction(format!(
                "scale factor {factor} must be positive"
            )));
        }
        let family = match &self.family {
            Family::Polynomial { coeffs } => Family::Polynomial {
                coeffs: coeffs.iter().map(|c| c * factor).collect(),
            },
            Family::ExpAffine { offset, scale, rate } => Family::ExpAffine {
                offset: offset * factor,
                scale: scale * factor,
                rate: *rate,
            },
            Family::TrigAffine {
                offset,
                amplitude,
                frequency,
                phase,
            } => Family::TrigAffine {
                offset: offset * factor,
                amplitude: amplitude * factor,
                frequency: *frequency,
                phase: *phase,
            },
            Family::Step { breakpoints, levels } => Family::Step {
                breakpoints: breakpoints.clone(),
                levels: levels.iter().map(|l| l * factor).collect(),
            },
            Family::Samples { knots, values } => Family::Samples {
                knots: knots.clone(),
                values: values.iter().map(|v| v * factor).collect(),
            },
        };
        Self::new(self.domain_end, family)
    }

    /// Minimum and maximum over a uniform `points`-grid on `[lo, hi]`, plus
    /// both one-sided values at every breakpoint inside it.
    pub fn grid_extrema(&self, lo: f64, hi: f64, points: usize) -> (f64, f64) {
        let points = points.max(2);
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut visit = |v: f64| {
            if v.is_nan() {
                min = f64::NAN;
                return;
            }
            min = min.min(v);
            max = max.max(v);
        };
        for i in 0..points {
            visit(self.eval(lo + (hi - lo) * i as f64 / (points - 1) as f64));
        }
        for &b in self.kinks.iter().filter(|&&b| b >= lo && b <= hi) {
            visit(self.eval(b));
            if b > lo {
                visit(self.eval(b - b * f64::EPSILON * 4.0));
            }
        }
        (min, max)
    }

    /// Whether the function is monotone in the given direction on a uniform
    /// grid over `[lo, hi]` that includes its breakpoints.
    pub fn is_monotone_on(&self, lo: f64, hi: f64, points: usize, nondecreasing: bool) -> bool {
        let points = points.max(2);
        let mut grid: Vec<f64> = (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect();
        grid.extend(self.kinks.iter().filter(|&&b| b > lo && b < hi));
        grid.sort_by(f64::total_cmp);
        let values: Vec<f64> = grid.iter().map(|&t| self.eval(t)).collect();
        values
            .windows(2)
            .all(|w| if nondecreasing { w[1] >= w[0] } else { w[1] <= w[0] })
    }
}

fn all_finite(values: &[f64]) -> bool {
    values.iter().all(|v| v.is_finite())
}

fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

/// Validates `family` and returns its interior breakpoints.
fn check_family(domain_end: f64, family: &Family) -> Result<Vec<f64>> {
    let bad = |msg: String| Err(Error::InvalidFunction(msg));
    match family {
        Family::Polynomial { coeffs } => {
            if coeffs.is_empty() || !all_finite(coeffs) {
                return bad("polynomial needs at least one finite coefficient".into());
            }
            Ok(Vec::new())
        }
        Family::ExpAffine { offset, scale, rate } => {
            if !all_finite(&[*offset, *scale, *rate]) {
                return bad("exponential-affine parameters must be finite".into());
            }
            Ok(Vec::new())
        }
        Family::TrigAffine {
            offset,
            amplitude,
            frequency,
            phase,
        } => {
            if !all_finite(&[*offset, *amplitude, *frequency, *phase]) {
                return bad("trigonometric-affine parameters must be finite".into());
            }
            Ok(Vec::new())
        }
        Family::Step { breakpoints, levels } => {
            if levels.len() != breakpoints.len() + 1 {
                return bad(format!(
                    "step function needs one more level than breakpoints ({} vs {})",
                    levels.len(),
                    breakpoints.len()
                ));
            }
            if !all_finite(levels) || !all_finite(breakpoints) {
                return bad("step parameters must be finite".into());
            }
            if !strictly_increasing(breakpoints) {
                return bad("step breakpoints must be strictly increasing".into());
            }
            if breakpoints.iter().any(|&b| !(b > 0.0 && b < domain_end)) {
                return bad(format!("step breakpoints must lie inside (0, {domain_end})"));
            }
            Ok(breakpoints.clone())
        }
        Family::Samples { knots, values } => {
            if knots.len() < 2 || knots.len() != values.len() {
                return bad("grid samples need at least two knots and one value per knot".into());
            }
            if !all_finite(knots) || !all_finite(values) || !strictly_increasing(knots) {
                return bad("grid knots must be finite and strictly increasing".into());
            }
            if knots[0] != 0.0 || knots[knots.len() - 1] < domain_end {
                return bad(format!("grid knots must span [0, {domain_end}]"));
            }
            Ok(knots[1..knots.len() - 1]
                .iter()
                .copied()
                .filter(|&k| k < domain_end)
                .collect())
        }
    }
}

fn parse_number(descriptor: &str, token: &str) -> Result<f64> {
    let cleaned = token.trim().replace('\u{2212}', "-");
    cleaned.parse::<f64>().map_err(|_| Error::Descriptor {
        descriptor: descriptor.to_string(),
        reason: format!("{token:?} is not a number"),
    })
}

fn parse_family(descriptor: &str) -> Result<Family> {
    let fail = |reason: &str| Error::Descriptor {
        descriptor: descriptor.to_string(),
        reason: reason.to_string(),
    };
    let (kind, body) = descriptor
        .trim()
        .split_once(':')
        .ok_or_else(|| fail("missing family prefix"))?;
    let items: Vec<&str> = body.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(fail("empty parameter"));
    }
    let numbers = |items: &[&str]| -> Result<Vec<f64>> { items.iter().map(|t| parse_number(descriptor, t)).collect() };
    match kind.trim() {
        "const" => {
            let v = numbers(&items)?;
            if v.len() != 1 {
                return Err(fail("const takes exactly one value"));
            }
            Ok(Family::Polynomial { coeffs: v })
        }
        "poly" => Ok(Family::Polynomial {
            coeffs: numbers(&items)?,
        }),
        "exp" => match numbers(&items)?.as_slice() {
            &[offset, scale, rate] => Ok(Family::ExpAffine { offset, scale, rate }),
            _ => Err(fail("exp takes c0,c1,c2")),
        },
        "trig" => match numbers(&items)?.as_slice() {
            &[offset, amplitude, frequency, phase] => Ok(Family::TrigAffine {
                offset,
                amplitude,
                frequency,
                phase,
            }),
            _ => Err(fail("trig takes c0,c1,c2,c3")),
        },
        "step" => {
            let (last, rest) = items.split_last().expect("split yields one item");
            let mut levels = Vec::with_capacity(items.len());
            let mut breakpoints = Vec::with_capacity(rest.len());
            for item in rest {
                let (level, at) = item.split_once('@').ok_or_else(|| fail("expected level@breakpoint"))?;
                levels.push(parse_number(descriptor, level)?);
                breakpoints.push(parse_number(descriptor, at)?);
            }
            if last.contains('@') {
                return Err(fail("final step level takes no breakpoint"));
            }
            levels.push(parse_number(descriptor, last)?);
            Ok(Family::Step { breakpoints, levels })
        }
        "grid" => {
            let mut knots = Vec::with_capacity(items.len());
            let mut values = Vec::with_capacity(items.len());
            for item in &items {
                let (t, v) = item.split_once(':').ok_or_else(|| fail("expected knot:value"))?;
                knots.push(parse_number(descriptor, t)?);
                values.push(parse_number(descriptor, v)?);
            }
            Ok(Family::Samples { knots, values })
        }
        other => Err(fail(&format!("unknown family {other:?}"))),
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Polynomial { coeffs } if coeffs.len() == 1 => write!(f, "const:{}", coeffs[0]),
            Family::Polynomial { coeffs } => write!(f, "poly:{}", join(coeffs)),
            Family::ExpAffine { offset, scale, rate } => write!(f, "exp:{offset},{scale},{rate}"),
            Family::TrigAffine {
                offset,
                amplitude,
                frequency,
                phase,
            } => write!(f, "trig:{offset},{amplitude},{frequency},{phase}"),
            Family::Step { breakpoints, levels } => {
                write!(f, "step:")?;
                for (l, b) in levels.iter().zip(breakpoints) {
                    write!(f, "{l}@{b},")?;
                }
                write!(f, "{}", levels[levels.len() - 1])
            }
            Family::Samples { knots, values } => {
                let pairs: Vec<String> = knots.iter().zip(values).map(|(t, v)| format!("{t}:{v}")).collect();
                write!(f, "grid:{}", pairs.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_each_family() {
        let f = FunctionSpec::parse("poly:1,0.5,\u{2212}0.25", 1.0).unwrap();
        assert_eq!(f.eval(2.0), 1.0 + 1.0 - 1.0);
        let f = FunctionSpec::parse("step:0.5@0.5,1.5", 1.0).unwrap();
        assert_eq!(f.eval(0.25), 0.5);
        assert_eq!(f.eval(0.75), 1.5);
        assert_eq!(f.breakpoints(), &[0.5]);
        let f = FunctionSpec::parse("exp:1,1,-1", 2.0).unwrap();
        assert!((f.eval(1.0) - (1.0 + (-1f64).exp())).abs() < 1e-15);
        let f = FunctionSpec::parse("trig:2,1,3,0.5", 2.0).unwrap();
        assert!((f.eval(0.1) - (2.0 + (0.8f64).sin())).abs() < 1e-15);
        let f = FunctionSpec::parse("grid:0:1,0.5:3,1:2", 1.0).unwrap();
        assert_eq!(f.eval(0.25), 2.0);
        assert_eq!(f.eval(0.75), 2.5);
        assert_eq!(f.breakpoints(), &[0.5]);
        assert_eq!(FunctionSpec::parse("const:3", 1.0).unwrap().eval(0.3), 3.0);
    }

    #[test]
    fn rejects_malformed_descriptors() {
        for bad in [
            "poly",
            "const:1,2",
            "exp:1,2",
            "wave:1",
            "step:1@0.5@0.6,2",
            "poly:1,,2",
            "step:1@x,2",
        ] {
            assert!(FunctionSpec::parse(bad, 1.0).is_err(), "{bad}");
        }
    }

    #[test]
    fn rejects_invariant_violations() {
        // not positive
        assert!(FunctionSpec::parse("poly:1,-2", 1.0).is_err());
        assert!(FunctionSpec::parse("const:0", 1.0).is_err());
        // breakpoints outside (0, X) or unordered
        assert!(FunctionSpec::parse("step:1@1.5,2", 1.0).is_err());
        assert!(FunctionSpec::parse("step:1@0.6,2@0.4,3", 1.0).is_err());
        // grid does not span the domain
        assert!(FunctionSpec::parse("grid:0:1,0.5:2", 1.0).is_err());
        assert!(FunctionSpec::constant(1.0, 0.0).is_err());
    }

    #[test]
    fn scaling_keeps_family() {
        let f = FunctionSpec::parse("trig:2,1,3,0.5", 2.0).unwrap();
        let g = f.scaled(1.5).unwrap();
        for t in [0.0, 0.3, 1.7] {
            assert!((g.eval(t) - 1.5 * f.eval(t)).abs() < 1e-14);
        }
        assert!(matches!(g.family(), Family::TrigAffine { .. }));
    }

    #[test]
    fn integrands_may_vanish() {
        let t = FunctionSpec::parse_integrand("poly:0,1", 1.0).unwrap();
        assert_eq!(t.eval(0.0), 0.0);
        assert!(FunctionSpec::parse("poly:0,1", 1.0).is_err());
        assert!(FunctionSpec::parse_integrand("exp:0,1,1000", 1.0).is_err());
    }

    #[test]
    fn grid_extrema_of_monotone_poly_hit_endpoints() {
        let f = FunctionSpec::parse("poly:1,1", 1.0).unwrap();
        assert_eq!(f.grid_extrema(0.0, 1.0, 4096), (1.0, 2.0));
        assert_eq!(f.grid_extrema(0.25, 0.5, 4096), (1.25, 1.5));
        assert!(f.is_monotone_on(0.0, 1.0, 100, true));
        assert!(!f.is_monotone_on(0.0, 1.0, 100, false));
    }

    proptest! {
        #[test]
        fn descriptor_round_trip(levels in proptest::collection::vec(0.01f64..10.0, 1..6), shift in 0.0f64..1.0) {
            let n = levels.len();
            let breakpoints: Vec<f64> = (1..n).map(|i| (i as f64 + shift * 0.5) / n as f64).collect();
            let f = FunctionSpec::new(1.0, Family::Step { breakpoints, levels }).unwrap();
            let back = FunctionSpec::parse(&f.to_string(), 1.0).unwrap();
            prop_assert_eq!(f, back);
        }

        #[test]
        fn trig_round_trip(c0 in 2.0f64..5.0, c1 in -1.0f64..1.0, c2 in 0.0f64..8.0, c3 in -3.0f64..3.0) {
            let f = FunctionSpec::new(1.0, Family::TrigAffine { offset: c0, amplitude: c1, frequency: c2, phase: c3 }).unwrap();
            prop_assert_eq!(FunctionSpec::parse(&f.to_string(), 1.0).unwrap(), f);
        }
    }
}
