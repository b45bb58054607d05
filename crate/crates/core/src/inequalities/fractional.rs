use super::{merged_breakpoints, CaseParams, CheckOptions, ConstantBounds, Envelope, InequalityId, InequalityReport};
use crate::error::{domain, Error, Result};
use crate::function::{FunctionSpec, AUDIT_POINTS};
use crate::gpf::{gpf_left_with, gpf_of_one_closed, gpf_of_one_series, FractionalParams};
use crate::quadrature::QuadConfig;

const SERIES_KMAX: usize = 2000;
const SERIES_TERM_TOL: f64 = 1e-18;
/// Largest relative disagreement tolerated between the closed form and the
/// series for the operator applied to 1.
const SERIES_AGREEMENT: f64 = 1e-9;

/// The operator applied to 1, from the closed form, cross-checked against the
/// Taylor series.
fn gpf_of_one(params: FractionalParams, x: f64) -> Result<f64> {
    let closed = gpf_of_one_closed(params, x)?;
    let series = gpf_of_one_series(params, x, SERIES_KMAX, SERIES_TERM_TOL)?;
    if (closed - series).abs() > SERIES_AGREEMENT * closed.abs() {
        return Err(Error::CrossCheck {
            quantity: "GPF integral of 1",
            first: closed,
            second: series,
        });
    }
    Ok(closed)
}

/// Evaluates GPF integrals of pointwise products at a fixed `x`.
struct Evaluator<'a> {
    x: f64,
    breaks: Vec<f64>,
    cfg: &'a QuadConfig,
}

impl<'a> Evaluator<'a> {
    fn new(specs: &[&FunctionSpec], x: f64, cfg: &'a QuadConfig) -> Result<Self> {
        let end = specs.iter().map(|s| s.domain_end()).fold(f64::INFINITY, f64::min);
        if !(x >= 0.0) || x > end * (1.0 + 1e-14) {
            return Err(domain("inequality check", format!("x = {x} outside [0, {end}]")));
        }
        Ok(Self {
            x,
            breaks: merged_breakpoints(specs),
            cfg,
        })
    }

    fn op(&self, params: FractionalParams, integrand: impl Fn(f64) -> f64) -> Result<f64> {
        Ok(gpf_left_with(params, integrand, &self.breaks, self.x, self.cfg)?.value)
    }
}

fn single_params(params: FractionalParams, f: &FunctionSpec, g: &FunctionSpec, x: f64) -> CaseParams {
    CaseParams {
        alpha: Some(params.alpha()),
        p1: Some(params.p()),
        x,
        f: f.to_string(),
        g: g.to_string(),
        ..CaseParams::default()
    }
}

fn two_params(pa: FractionalParams, pb: FractionalParams, f: &FunctionSpec, g: &FunctionSpec, x: f64) -> CaseParams {
    CaseParams {
        beta: Some(pb.alpha()),
        p2: Some(pb.p()),
        ..single_params(pa, f, g, x)
    }
}

fn with_envelope(mut params: CaseParams, env: &Envelope) -> CaseParams {
    params.envelope = Some(env.descriptors());
    params
}

fn with_bounds(mut params: CaseParams, bounds: &ConstantBounds) -> CaseParams {
    params.bounds = Some(*bounds);
    params
}

/// Sets up an envelope check: validates `x` and the envelope on `[0, x]`.
fn envelope_setup<'a>(
    f: &FunctionSpec,
    g: &FunctionSpec,
    env: &Envelope,
    x: f64,
    opts: &'a CheckOptions,
) -> Result<Evaluator<'a>> {
    let eval = Evaluator::new(&[f, g, &env.v1, &env.v2, &env.w1, &env.w2], x, &opts.quad)?;
    if x > 0.0 {
        env.verify(f, g, x, AUDIT_POINTS)?;
    }
    Ok(eval)
}

fn bounds_setup<'a>(
    f: &FunctionSpec,
    g: &FunctionSpec,
    bounds: &ConstantBounds,
    x: f64,
    opts: &'a CheckOptions,
) -> Result<Evaluator<'a>> {
    let eval = Evaluator::new(&[f, g], x, &opts.quad)?;
    if x > 0.0 {
        bounds.verify(f, g, 0.0, x)?;
    }
    Ok(eval)
}

const AT_ZERO: &str = "x = 0: every operator vanishes";

/// `I[w₁w₂f²] + I[v₁v₂g²] ≤ I[(v₁w₁ + v₂w₂)fg]`.
pub fn envelope_amgm_check(
    params: FractionalParams,
    f: &FunctionSpec,
    g: &FunctionSpec,
    env: &Envelope,
    x: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::EnvelopeAmGm;
    let case = with_envelope(single_params(params, f, g, x), env);
    let ev = envelope_setup(f, g, env, x, opts)?;
    if x == 0.0 {
        return Ok(InequalityReport::skipped(id, case, AT_ZERO));
    }
    let Envelope { v1, v2, w1, w2 } = env;
    let a = ev.op(params, |t| w1.eval(t) * w2.eval(t) * f.eval(t).powi(2))?;
    let b = ev.op(params, |t| v1.eval(t) * v2.eval(t) * g.eval(t).powi(2))?;
    let c = ev.op(params, |t| {
        (v1.eval(t) * w1.eval(t) + v2.eval(t) * w2.eval(t)) * f.eval(t) * g.eval(t)
    })?;
    Ok(InequalityReport::evaluate(id, case, a + b, c, opts))
}

/// `I[w₁w₂f²]·I[v₁v₂g²] / (I[(v₁w₁ + v₂w₂)fg])² ≤ 1/4`.
pub fn envelope_ratio_check(
    params: FractionalParams,
    f: &FunctionSpec,
    g: &FunctionSpec,
    env: &Envelope,
    x: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::EnvelopeRatio;
    let case = with_envelope(single_params(params, f, g, x), env);
    let ev = envelope_setup(f, g, env, x, opts)?;
    if x == 0.0 {
        return Ok(InequalityReport::skipped(id, case, AT_ZERO));
    }
    let Envelope { v1, v2, w1, w2 } = env;
    let a = ev.op(params, |t| w1.eval(t) * w2.eval(t) * f.eval(t).powi(2))?;
    let b = ev.op(params, |t| v1.eval(t) * v2.eval(t) * g.eval(t).powi(2))?;
    let c = ev.op(params, |t| {
        (v1.eval(t) * w1.eval(t) + v2.eval(t) * w2.eval(t)) * f.eval(t) * g.eval(t)
    })?;
    if c * c < opts.eps_den {
        return Ok(InequalityReport::ill_conditioned(
            id,
            case,
            "squared denominator below eps_den",
        ));
    }
    Ok(InequalityReport::evaluate(id, case, a * b / (c * c), 0.25, opts))
}

/// `I[f²]·I[g²] / (I[fg])² ≤ (1/4)(√(mn/MN) + √(MN/mn))²`.
pub fn polya_szego_gpf_check(
    params: FractionalParams,
    f: &FunctionSpec,
    g: &FunctionSpec,
    bounds: &ConstantBounds,
    x: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::PolyaSzegoGpf;
    let case = with_bounds(single_params(params, f, g, x), bounds);
    let ev = bounds_setup(f, g, bounds, x, opts)?;
    if x == 0.0 {
        return Ok(InequalityReport::skipped(id, case, AT_ZERO));
    }
    let ff = ev.op(params, |t| f.eval(t).powi(2))?;
    let gg = ev.op(params, |t| g.eval(t).powi(2))?;
    let fg = ev.op(params, |t| f.eval(t) * g.eval(t))?;
    if fg * fg < opts.eps_den {
        return Ok(InequalityReport::ill_conditioned(
            id,
            case,
            "squared denominator below eps_den",
        ));
    }
    Ok(InequalityReport::evaluate(
        id,
        case,
        ff * gg / (fg * fg),
        bounds.polya_szego_constant(),
        opts,
    ))
}

/// `Iα[v₁v₂]·Iβ[w₁w₂]·Iα[f²]·Iβ[g²] ≤ (1/4)(Iα[v₁f]·Iβ[w₁g] + Iα[v₂f]·Iβ[w₂g])²`
/// with `Iα` of order `(α, p₁)` and `Iβ` of order `(β, p₂)`.
pub fn two_order_envelope_check(
    pa: FractionalParams,
    pb: FractionalParams,
    f: &FunctionSpec,
    g: &FunctionSpec,
    env: &Envelope,
    x: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::TwoOrderEnvelope;
    let case = with_envelope(two_params(pa, pb, f, g, x), env);
    let ev = envelope_setup(f, g, env, x, opts)?;
    if x == 0.0 {
        return Ok(InequalityReport::skipped(id, case, AT_ZERO));
    }
    let Envelope { v1, v2, w1, w2 } = env;
    let lhs = ev.op(pa, |t| v1.eval(t) * v2.eval(t))?
        * ev.op(pb, |t| w1.eval(t) * w2.eval(t))?
        * ev.op(pa, |t| f.eval(t).powi(2))?
        * ev.op(pb, |t| g.eval(t).powi(2))?;
    let low = ev.op(pa, |t| v1.eval(t) * f.eval(t))? * ev.op(pb, |t| w1.eval(t) * g.eval(t))?;
    let high = ev.op(pa, |t| v2.eval(t) * f.eval(t))? * ev.op(pb, |t| w2.eval(t) * g.eval(t))?;
    Ok(InequalityReport::evaluate(
        id,
        case,
        lhs,
        0.25 * (low + high).powi(2),
        opts,
    ))
}

/// `Gα·Gβ·Iα[f²]·Iβ[g²] / (Iα[f]·Iβ[g])² ≤ (1/4)(√(mn/MN) + √(MN/mn))²`,
/// where `G` is the operator applied to 1.
pub fn two_order_polya_szego_check(
    pa: FractionalParams,
    pb: FractionalParams,
    f: &FunctionSpec,
    g: &FunctionSpec,
    bounds: &ConstantBounds,
    x: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::TwoOrderPolyaSzego;
    let case = with_bounds(two_params(pa, pb, f, g, x), bounds);
    let ev = bounds_setup(f, g, bounds, x, opts)?;
    if x == 0.0 {
        return Ok(InequalityReport::skipped(id, case, AT_ZERO));
    }
    let (ga, gb) = (gpf_of_one(pa, x)?, gpf_of_one(pb, x)?);
    let ff = ev.op(pa, |t| f.eval(t).powi(2))?;
    let gg = ev.op(pb, |t| g.eval(t).powi(2))?;
    let den = ev.op(pa, |t| f.eval(t))? * ev.op(pb, |t| g.eval(t))?;
    if den * den < opts.eps_den {
        return Ok(InequalityReport::ill_conditioned(
            id,
            case,
            "squared denominator below eps_den",
        ));
    }
    let lhs = ga * gb * ff * gg / (den * den);
    Ok(InequalityReport::evaluate(
        id,
        case,
        lhs,
        bounds.polya_szego_constant(),
        opts,
    ))
}

/// `Iα[f²]·Iβ[g²] ≤ Iα[v₂fg/w₁]·Iβ[w₂fg/v₁]`.
pub fn envelope_product_check(
    pa: FractionalParams,
    pb: FractionalParams,
    f: &FunctionSpec,
    g: &FunctionSpec,
    env: &Envelope,
    x: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::EnvelopeProduct;
    let case = with_envelope(two_params(pa, pb, f, g, x), env);
    let ev = envelope_setup(f, g, env, x, opts)?;
    if x == 0.0 {
        return Ok(InequalityReport::skipped(id, case, AT_ZERO));
    }
    let (v1_min, _) = env.v1.grid_extrema(0.0, x, AUDIT_POINTS);
    let (w1_min, _) = env.w1.grid_extrema(0.0, x, AUDIT_POINTS);
    if v1_min.min(w1_min) < opts.eps_den {
        return Ok(InequalityReport::ill_conditioned(
            id,
            case,
            "lower envelope below eps_den",
        ));
    }
    let Envelope { v1, v2, w1, w2 } = env;
    let lhs = ev.op(pa, |t| f.eval(t).powi(2))? * ev.op(pb, |t| g.eval(t).powi(2))?;
    let rhs = ev.op(pa, |t| v2.eval(t) * f.eval(t) * g.eval(t) / w1.eval(t))?
        * ev.op(pb, |t| w2.eval(t) * f.eval(t) * g.eval(t) / v1.eval(t))?;
    Ok(InequalityReport::evaluate(id, case, lhs, rhs, opts))
}

/// `G_other·(I[(v + w)u])² / (4·I[vw]) − Iα[u]·Iβ[u]`, with `I` the operator
/// in the ratio and `G_other` the operator applied to 1 for the other order.
#[allow(clippy::too_many_arguments)]
fn two_order_spread(
    ev: &Evaluator,
    ratio_params: FractionalParams,
    g_other: f64,
    cross: f64,
    u: &FunctionSpec,
    v: &FunctionSpec,
    w: &FunctionSpec,
    eps_den: f64,
) -> Result<Option<f64>> {
    let den = ev.op(ratio_params, |t| v.eval(t) * w.eval(t))?;
    if den < eps_den {
        return Ok(None);
    }
    let num = ev.op(ratio_params, |t| (v.eval(t) + w.eval(t)) * u.eval(t))?;
    Ok(Some(g_other * num * num / (4.0 * den) - cross))
}

/// `Gα·Iβ[fg] + Gβ·Iα[fg] − Iα[f]·Iβ[g] − Iβ[f]·Iα[g]
///   ≤ |A₁(f, v₁, v₂) + A₂(f, v₁, v₂)|^{1/2}·|A₁(g, w₁, w₂) + A₂(g, w₁, w₂)|^{1/2}`.
pub fn two_order_gruss_check(
    pa: FractionalParams,
    pb: FractionalParams,
    f: &FunctionSpec,
    g: &FunctionSpec,
    env: &Envelope,
    x: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::TwoOrderGruss;
    let case = with_envelope(two_params(pa, pb, f, g, x), env);
    let ev = envelope_setup(f, g, env, x, opts)?;
    if x == 0.0 {
        return Ok(InequalityReport::skipped(id, case, AT_ZERO));
    }
    let (ga, gb) = (gpf_of_one(pa, x)?, gpf_of_one(pb, x)?);
    let (fa, fb) = (ev.op(pa, |t| f.eval(t))?, ev.op(pb, |t| f.eval(t))?);
    let (ga_g, gb_g) = (ev.op(pa, |t| g.eval(t))?, ev.op(pb, |t| g.eval(t))?);
    let fg_a = ev.op(pa, |t| f.eval(t) * g.eval(t))?;
    let fg_b = ev.op(pb, |t| f.eval(t) * g.eval(t))?;
    let lhs = ga * fg_b + gb * fg_a - fa * gb_g - fb * ga_g;

    let spread = |u: &FunctionSpec, lo: &FunctionSpec, hi: &FunctionSpec, ua: f64, ub: f64| {
        let a1 = two_order_spread(&ev, pa, gb, ua * ub, u, lo, hi, opts.eps_den)?;
        let a2 = two_order_spread(&ev, pb, ga, ua * ub, u, lo, hi, opts.eps_den)?;
        Ok::<_, Error>(a1.zip(a2).map(|(a1, a2)| (a1 + a2).abs()))
    };
    let (Some(sf), Some(sg)) = (
        spread(f, &env.v1, &env.v2, fa, fb)?,
        spread(g, &env.w1, &env.w2, ga_g, gb_g)?,
    ) else {
        return Ok(InequalityReport::ill_conditioned(id, case, "I[vw] below eps_den"));
    };
    Ok(InequalityReport::evaluate(id, case, lhs, sf.sqrt() * sg.sqrt(), opts))
}

/// `|Gα·I[fg] − I[f]·I[g]| ≤ |A(f, v₁, v₂)·A(g, w₁, w₂)|^{1/2}` with
/// `A(u, v, w) = Gα·(I[(v + w)u])² / (4·I[vw]) − (I[u])²`.
pub fn gruss_envelope_check(
    params: FractionalParams,
    f: &FunctionSpec,
    g: &FunctionSpec,
    env: &Envelope,
    x: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::GrussEnvelope;
    let case = with_envelope(single_params(params, f, g, x), env);
    let ev = envelope_setup(f, g, env, x, opts)?;
    if x == 0.0 {
        return Ok(InequalityReport::skipped(id, case, AT_ZERO));
    }
    let g1 = gpf_of_one(params, x)?;
    let fi = ev.op(params, |t| f.eval(t))?;
    let gi = ev.op(params, |t| g.eval(t))?;
    let fgi = ev.op(params, |t| f.eval(t) * g.eval(t))?;
    let lhs = (g1 * fgi - fi * gi).abs();
    let sf = two_order_spread(&ev, params, g1, fi * fi, f, &env.v1, &env.v2, opts.eps_den)?;
    let sg = two_order_spread(&ev, params, g1, gi * gi, g, &env.w1, &env.w2, opts.eps_den)?;
    let (Some(sf), Some(sg)) = (sf, sg) else {
        return Ok(InequalityReport::ill_conditioned(id, case, "I[vw] below eps_den"));
    };
    Ok(InequalityReport::evaluate(id, case, lhs, (sf * sg).abs().sqrt(), opts))
}

/// `|Gα·I[fg] − I[f]·I[g]| ≤ (M−m)(N−n)/(4√(MmNn))·I[f]·I[g]`.
pub fn gruss_constant_check(
    params: FractionalParams,
    f: &FunctionSpec,
    g: &FunctionSpec,
    bounds: &ConstantBounds,
    x: f64,
    opts: &CheckOptions,
) -> Result<InequalityReport> {
    let id = InequalityId::GrussConstant;
    let case = with_bounds(single_params(params, f, g, x), bounds);
    let ev = bounds_setup(f, g, bounds, x, opts)?;
    if x == 0.0 {
        return Ok(InequalityReport::skipped(id, case, AT_ZERO));
    }
    if bounds.product() < opts.eps_den {
        return Ok(InequalityReport::ill_conditioned(id, case, "MmNn below eps_den"));
    }
    let g1 = gpf_of_one(params, x)?;
    let fi = ev.op(params, |t| f.eval(t))?;
    let gi = ev.op(params, |t| g.eval(t))?;
    let fgi = ev.op(params, |t| f.eval(t) * g.eval(t))?;
    let lhs = (g1 * fgi - fi * gi).abs();
    let rhs = 0.25 * bounds.gruss_factor() * fi * gi;
    Ok(InequalityReport::evaluate(id, case, lhs, rhs, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::{chebyshev_functional, gruss_bound_check, polya_szego_check, Status};

    fn params(alpha: f64, p: f64) -> FractionalParams {
        FractionalParams::new(alpha, p).unwrap()
    }

    fn spec(d: &str, x: f64) -> FunctionSpec {
        FunctionSpec::parse(d, x).unwrap()
    }

    fn proportional(f: &FunctionSpec, g: &FunctionSpec, delta: f64) -> Envelope {
        Envelope::new(
            f.scaled(1.0 - delta).unwrap(),
            f.scaled(1.0 + delta).unwrap(),
            g.scaled(1.0 - delta).unwrap(),
            g.scaled(1.0 + delta).unwrap(),
        )
    }

    fn unit(x: f64) -> (FunctionSpec, Envelope, ConstantBounds) {
        let b = ConstantBounds::new(1.0, 1.0, 1.0, 1.0).unwrap();
        (
            FunctionSpec::constant(1.0, x).unwrap(),
            Envelope::from_bounds(&b, x).unwrap(),
            b,
        )
    }

    #[test]
    fn constant_one_is_an_equality_case() {
        let opts = CheckOptions::default();
        for (alpha, p, beta, q, x) in [
            (0.5, 0.3, 2.5, 1.0, 2.0),
            (1.5, 1.0, 1.5, 1.0, 0.5),
            (3.7, 0.1, 1.0, 0.7, 4.0),
        ] {
            let (pa, pb) = (params(alpha, p), params(beta, q));
            let (one, env, b) = unit(x);
            let g = gpf_of_one_closed(pa, x).unwrap();
            let amgm = envelope_amgm_check(pa, &one, &one, &env, x, &opts).unwrap();
            assert!((amgm.lhs - 2.0 * g).abs() < 1e-12 * g);
            let reports = [
                amgm,
                envelope_ratio_check(pa, &one, &one, &env, x, &opts).unwrap(),
                polya_szego_gpf_check(pa, &one, &one, &b, x, &opts).unwrap(),
                two_order_envelope_check(pa, pb, &one, &one, &env, x, &opts).unwrap(),
                two_order_polya_szego_check(pa, pb, &one, &one, &b, x, &opts).unwrap(),
                envelope_product_check(pa, pb, &one, &one, &env, x, &opts).unwrap(),
                two_order_gruss_check(pa, pa, &one, &one, &env, x, &opts).unwrap(),
                gruss_envelope_check(pa, &one, &one, &env, x, &opts).unwrap(),
                gruss_constant_check(pa, &one, &one, &b, x, &opts).unwrap(),
            ];
            for r in reports {
                assert!(r.relative_margin.abs() <= 1e-10, "{r:?}");
                assert_eq!(r.status, Status::Holds);
            }
        }
    }

    #[test]
    fn envelope_ratio_below_quarter() {
        let x = 1.0;
        let f = spec("exp:0,1,1", x);
        let g = spec("poly:0.5,1", x);
        let r = envelope_ratio_check(
            params(2.0, 0.8),
            &f,
            &g,
            &proportional(&f, &g, 0.2),
            x,
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(r.lhs < 0.25 && r.lhs > 0.2);
        assert_eq!(r.status, Status::Holds);
        let step = spec("step:1@0.4,2", x);
        let r = envelope_ratio_check(
            params(0.5, 1.0),
            &step,
            &g,
            &proportional(&step, &g, 0.1),
            x,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(r.status, Status::Holds);
    }

    #[test]
    fn envelope_checks_reject_invalid_envelopes() {
        let x = 1.0;
        let f = spec("poly:1,1", x);
        let bad = Envelope::from_bounds(&ConstantBounds::new(1.0, 1.5, 1.0, 2.0).unwrap(), x).unwrap();
        assert!(envelope_ratio_check(params(1.0, 1.0), &f, &f, &bad, x, &CheckOptions::default()).is_err());
        assert!(envelope_ratio_check(params(1.0, 1.0), &f, &f, &bad, 2.0, &CheckOptions::default()).is_err());
    }

    #[test]
    fn zero_evaluation_point_is_skipped() {
        let (one, env, b) = unit(1.0);
        let opts = CheckOptions::default();
        let r = envelope_ratio_check(params(1.0, 1.0), &one, &one, &env, 0.0, &opts).unwrap();
        assert_eq!(r.status, Status::Skipped);
        let r = gruss_constant_check(params(1.0, 1.0), &one, &one, &b, 0.0, &opts).unwrap();
        assert_eq!(r.status, Status::Skipped);
    }

    #[test]
    fn two_order_envelope_reduces_to_ratio_form() {
        let x = 2.0;
        let f = spec("trig:1.5,0.4,2,0.3", x);
        let env = proportional(&f, &f, 0.15);
        let pa = params(1.3, 0.6);
        let opts = CheckOptions::default();
        let one_order = envelope_ratio_check(pa, &f, &f, &env, x, &opts).unwrap();
        let two_order = two_order_envelope_check(pa, pa, &f, &f, &env, x, &opts).unwrap();
        assert_eq!(one_order.status, two_order.status);
        // For proportional envelopes both ratios equal (1−δ²)²/(2+2δ²)², the
        // two-order one carrying an extra factor 4.
        assert!((two_order.lhs / two_order.rhs - 4.0 * one_order.lhs).abs() < 1e-9);
    }

    #[test]
    fn mixed_order_examples_hold() {
        let opts = CheckOptions::default();
        let x = 2.0;
        let f = spec("poly:1,1", x);
        let g = spec("exp:1,1,-1", x);
        let b = ConstantBounds::new(1.0, 3.0, 1.0 + (-2.0f64).exp(), 2.0).unwrap();
        let r = two_order_polya_szego_check(params(0.7, 0.3), params(1.9, 1.0), &f, &g, &b, x, &opts).unwrap();
        assert_eq!(r.status, Status::Holds);

        let x = 1.0;
        let f = spec("poly:1,1", x);
        let g = spec("exp:0,1,1", x);
        let env = proportional(&f, &g, 0.15);
        let (pa, pb) = (params(1.5, 0.6), params(0.8, 1.0));
        for r in [
            two_order_gruss_check(pa, pb, &f, &g, &env, x, &opts).unwrap(),
            two_order_envelope_check(params(1.2, 0.4), params(2.3, 0.9), &f, &g, &env, x, &opts).unwrap(),
            envelope_product_check(pa, pb, &f, &g, &env, x, &opts).unwrap(),
            envelope_amgm_check(params(1.5, 0.7), &f, &g, &env, x, &opts).unwrap(),
        ] {
            assert_eq!(r.status, Status::Holds, "{r:?}");
            assert!(r.margin > 0.0);
        }
    }

    #[test]
    fn two_order_gruss_with_equal_orders() {
        let x = 1.5;
        let f = spec("trig:2,0.5,1,0", x);
        let env = proportional(&f, &f, 0.25);
        let pa = params(2.0, 0.5);
        let opts = CheckOptions::default();
        let r = two_order_gruss_check(pa, pa, &f, &f, &env, x, &opts).unwrap();
        let single = gruss_envelope_check(pa, &f, &f, &env, x, &opts).unwrap();
        assert!(r.lhs > 0.0);
        assert!((r.lhs - 2.0 * single.lhs).abs() < 1e-10 * r.lhs);
        assert!((r.rhs - 2.0 * single.rhs).abs() < 1e-10 * r.rhs);
        assert_eq!(r.status, Status::Holds);
    }

    #[test]
    fn envelope_product_with_constants_matches_ratio_bound() {
        let x = 1.0;
        let f = spec("poly:1,1", x);
        let g = spec("poly:2,-1", x);
        let b = ConstantBounds::new(1.0, 2.0, 1.0, 2.0).unwrap();
        let env = Envelope::from_bounds(&b, x).unwrap();
        let pa = params(1.7, 0.5);
        let r = envelope_product_check(pa, pa, &f, &g, &env, x, &CheckOptions::default()).unwrap();
        assert_eq!(r.status, Status::Holds);
        // rhs = (MN/mn)·(I[fg])²
        let fg = gpf_left_with(pa, |t| f.eval(t) * g.eval(t), &[], x, &QuadConfig::default())
            .unwrap()
            .value;
        assert!((r.rhs - 4.0 * fg * fg).abs() < 1e-12 * r.rhs);
    }

    #[test]
    fn classical_limit_matches_classical_checks() {
        let opts = CheckOptions::default();
        let x = 1.0;
        let f = spec("poly:1,1", x);
        let g = spec("poly:2,-1", x);
        let b = ConstantBounds::new(1.0, 2.0, 1.0, 2.0).unwrap();
        let ordinary = params(1.0, 1.0);
        let frac = polya_szego_gpf_check(ordinary, &f, &g, &b, x, &opts).unwrap();
        let classic = polya_szego_check(&f, &g, &b, 0.0, x, &opts).unwrap();
        assert!((frac.lhs - classic.lhs).abs() < 1e-8 * classic.lhs);
        assert_eq!(frac.rhs, classic.rhs);

        let x = 2.0;
        let f = spec("poly:1,0.5,0.25", x);
        let g = spec("trig:2,0.5,1,0", x);
        let b = ConstantBounds::new(1.0, 3.0, 1.5, 2.5).unwrap();
        let frac = gruss_constant_check(ordinary, &f, &g, &b, x, &opts).unwrap();
        let classic = gruss_bound_check(&f, &g, &b, 0.0, x, &opts).unwrap();
        // The operator form is the mean form scaled by x².
        assert!((frac.lhs - x * x * classic.lhs).abs() < 1e-8 * frac.lhs);
        assert!((frac.rhs - x * x * classic.rhs).abs() < 1e-8 * frac.rhs);
        let t = chebyshev_functional(&f, &g, 0.0, x).unwrap();
        assert!((frac.lhs - x * x * t.abs()).abs() < 1e-8 * frac.lhs);
    }

    #[test]
    fn prefactor_on_constant_bound_would_fail() {
        // Multiplying the constant-bound right-hand side by Gα (< 1 here)
        // yields a bound the left-hand side exceeds.
        let x = 0.5;
        let f = spec("poly:1,1", x);
        let b = ConstantBounds::new(1.0, 1.5, 1.0, 1.5).unwrap();
        let pa = params(2.5, 1.0);
        let r = gruss_constant_check(pa, &f, &f, &b, x, &CheckOptions::default()).unwrap();
        assert_eq!(r.status, Status::Holds);
        let g1 = gpf_of_one_closed(pa, x).unwrap();
        assert!(g1 < 0.1);
        assert!(r.lhs > g1 * r.rhs);
        // mpmath: lhs = 3.20796055614805e-5, Gα·rhs = 8.19066303812834e-6
        assert!((r.lhs - 3.207_960_556_148_05e-5).abs() < 1e-9 * 3.2e-5);
        assert!((g1 * r.rhs - 8.190_663_038_128_34e-6).abs() < 1e-9 * 8.2e-6);
    }

    #[test]
    fn series_cross_check_agrees() {
        for (alpha, p, x) in [(0.5, 0.1, 4.0), (3.7, 0.3, 2.0), (1.0, 1.0, 0.5)] {
            let pa = params(alpha, p);
            assert_eq!(gpf_of_one(pa, x).unwrap(), gpf_of_one_closed(pa, x).unwrap());
        }
    }
}
