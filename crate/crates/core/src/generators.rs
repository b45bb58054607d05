//! Seeded random positive functions, envelopes and constant bounds.
//!
//! Every draw is a pure function of a 64-bit seed. Campaigns derive one seed
//! per case with [`derive_seed`] so cases can be evaluated in any order.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{Family, FunctionSpec, AUDIT_POINTS};
use crate::inequalities::{ConstantBounds, Envelope};

/// Rejected draws allowed before giving up.
pub const MAX_REJECTIONS: usize = 1000;
/// Grid for [`constant_bounds`].
pub const BOUNDS_GRID_POINTS: usize = 4096;

/// Relative weights of the function families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FamilyMix {
    pub polynomial: f64,
    pub exponential: f64,
    pub trig: f64,
    pub step: f64,
}

impl Default for FamilyMix {
    fn default() -> Self {
        Self {
            polynomial: 1.0,
            exponential: 1.0,
            trig: 1.0,
            step: 1.0,
        }
    }
}

impl FamilyMix {
    pub fn only(kind: FamilyKind) -> Self {
        let mut mix = Self {
            polynomial: 0.0,
            exponential: 0.0,
            trig: 0.0,
            step: 0.0,
        };
        *mix.weight_mut(kind) = 1.0;
        mix
    }

    fn weight_mut(&mut self, kind: FamilyKind) -> &mut f64 {
        match kind {
            FamilyKind::Polynomial => &mut self.polynomial,
            FamilyKind::Exponential => &mut self.exponential,
            FamilyKind::Trig => &mut self.trig,
            FamilyKind::Step => &mut self.step,
        }
    }

    fn weights(&self) -> [f64; 4] {
        [self.polynomial, self.exponential, self.trig, self.step]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Polynomial,
    Exponential,
    Trig,
    Step,
}

const KINDS: [FamilyKind; 4] = [
    FamilyKind::Polynomial,
    FamilyKind::Exponential,
    FamilyKind::Trig,
    FamilyKind::Step,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub family_mix: FamilyMix,
    /// Envelope proportionality factor, `v₁ = (1 − δ) f`, `v₂ = (1 + δ) f`.
    pub delta: f64,
    /// Range of domain ends drawn by [`generate_pair`].
    pub x_range: [f64; 2],
    pub positivity_floor: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            family_mix: FamilyMix::default(),
            delta: 0.15,
            x_range: [0.5, 2.0],
            positivity_floor: 0.05,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        if !(self.positivity_floor > 0.0 && self.positivity_floor.is_finite()) {
            return Err(Error::Config(format!(
                "positivity_floor must be positive, got {}",
                self.positivity_floor
            )));
        }
        let w = self.family_mix.weights();
        if w.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) || w.iter().all(|&v| v == 0.0) {
            return Err(Error::Config(format!(
                "family weights must be nonnegative and not all zero, got {w:?}"
            )));
        }
        let [lo, hi] = self.x_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::Config(format!(
                "x_range must satisfy 0 < lo <= hi, got [{lo}, {hi}]"
            )));
        }
        Ok(())
    }
}

/// Mixes `seed` with a stream of indices (splitmix64 finalizer per step).
pub fn derive_seed(seed: u64, stream: &[u64]) -> u64 {
    let mix = |mut z: u64| {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    stream.iter().fold(mix(seed), |acc, &i| mix(acc ^ mix(i)))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws a pair on a domain end from `cfg.x_range`, seeded by `cfg.seed`.
pub fn generate_pair(cfg: &GeneratorConfig) -> Result<(FunctionSpec, FunctionSpec)> {
    cfg.validate()?;
    let mut rng = rng_from_seed(cfg.seed);
    let [lo, hi] = cfg.x_range;
    let domain_end = if lo == hi { lo } else { rng.random_range(lo..=hi) };
    sample_pair(&mut rng, cfg, domain_end)
}

/// Two independent draws on `[0, domain_end]`.
pub fn sample_pair<R: Rng>(
    rng: &mut R,
    cfg: &GeneratorConfig,
    domain_end: f64,
) -> Result<(FunctionSpec, FunctionSpec)> {
    Ok((
        sample_function(rng, cfg, domain_end)?,
        sample_function(rng, cfg, domain_end)?,
    ))
}

/// Two nondecreasing draws on `[0, domain_end]` (a synchronous pair).
/// Trigonometric weight is ignored; if nothing else is weighted, polynomials
/// are used.
pub fn sample_monotone_pair<R: Rng>(
    rng: &mut R,
    cfg: &GeneratorConfig,
    domain_end: f64,
) -> Result<(FunctionSpec, FunctionSpec)> {
    let mut mix = cfg.family_mix;
    mix.trig = 0.0;
    if mix.weights().iter().all(|&w| w == 0.0) {
        mix.polynomial = 1.0;
    }
    let draw = |rng: &mut R| rejection(rng, cfg, domain_end, &mix, true);
    Ok((draw(rng)?, draw(rng)?))
}

/// One draw on `[0, domain_end]` whose audit-grid minimum is at least the
/// positivity floor.
pub fn sample_function<R: Rng>(rng: &mut R, cfg: &GeneratorConfig, domain_end: f64) -> Result<FunctionSpec> {
    rejection(rng, cfg, domain_end, &cfg.family_mix, false)
}

fn rejection<R: Rng>(
    rng: &mut R,
    cfg: &GeneratorConfig,
    domain_end: f64,
    mix: &FamilyMix,
    monotone: bool,
) -> Result<FunctionSpec> {
    if !(domain_end > 0.0) || !domain_end.is_finite() {
        return Err(Error::Config(format!("domain end {domain_end} must be positive")));
    }
    let chooser = WeightedIndex::new(mix.weights()).map_err(|e| Error::Config(format!("family weights: {e}")))?;
    for _ in 0..MAX_REJECTIONS {
        let kind = KINDS[chooser.sample(rng)];
        let family = draw_family(rng, kind, domain_end, cfg.positivity_floor, monotone);
        let Ok(spec) = FunctionSpec::new(domain_end, family) else {
            continue;
        };
        let (min, _) = spec.grid_extrema(0.0, domain_end, AUDIT_POINTS);
        if min >= cfg.positivity_floor {
            return Ok(spec);
        }
    }
    Err(Error::GenerationExhausted {
        attempts: MAX_REJECTIONS,
    })
}

fn draw_family<R: Rng>(rng: &mut R, kind: FamilyKind, x: f64, floor: f64, monotone: bool) -> Family {
    let signed = |rng: &mut R, scale: f64| {
        if monotone {
            rng.random_range(0.0..scale)
        } else {
            rng.random_range(-scale..scale)
        }
    };
    match kind {
        FamilyKind::Polynomial => {
            let degree = rng.random_range(0..=3);
            let mut coeffs = vec![rng.random_range(0.5..2.0)];
            for k in 1..=degree {
                coeffs.push(signed(rng, 1.0) / x.powi(k));
            }
            Family::Polynomial { coeffs }
        }
        FamilyKind::Exponential => {
            let offset = rng.random_range(0.2..1.5);
            let (scale, rate) = if monotone {
                (rng.random_range(0.1..1.0), rng.random_range(0.1..2.0) / x)
            } else {
                (rng.random_range(-0.5..1.0), rng.random_range(-2.0..2.0) / x)
            };
            Family::ExpAffine { offset, scale, rate }
        }
        FamilyKind::Trig => Family::TrigAffine {
            offset: rng.random_range(1.0..2.0),
            amplitude: rng.random_range(-0.9..0.9),
            frequency: rng.random_range(0.0..8.0) / x,
            phase: rng.random_range(0.0..std::f64::consts::TAU),
        },
        FamilyKind::Step => {
            let count = rng.random_range(1..=3);
            let mut breakpoints: Vec<f64> = (0..count).map(|_| rng.random_range(0.05..0.95) * x).collect();
            breakpoints.sort_by(f64::total_cmp);
            let mut levels: Vec<f64> = (0..=count).map(|_| rng.random_range(2.0 * floor..2.0)).collect();
            if monotone {
                levels.sort_by(f64::total_cmp);
            }
            // Breakpoints too close together are rejected by the constructor.
            Family::Step { breakpoints, levels }
        }
    }
}

/// `v₁ = (1 − δ) f`, `v₂ = (1 + δ) f`, `w₁ = (1 − δ) g`, `w₂ = (1 + δ) g`.
pub fn proportional_envelope(f: &FunctionSpec, g: &FunctionSpec, delta: f64) -> Result<Envelope> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Config(format!("delta must lie in (0, 1), got {delta}")));
    }
    Ok(Envelope::new(
        f.scaled(1.0 - delta)?,
        f.scaled(1.0 + delta)?,
        g.scaled(1.0 - delta)?,
        g.scaled(1.0 + delta)?,
    ))
}

/// Grid extrema of `f, g` on `[0, x]` widened by `slack`:
/// `m = (1 − slack)·min f`, `M = (1 + slack)·max f`, and likewise `n, N`.
pub fn constant_bounds(f: &FunctionSpec, g: &FunctionSpec, x: f64, slack: f64) -> Result<ConstantBounds> {
    if !(0.0..1.0).contains(&slack) {
        return Err(Error::Config(format!("slack must lie in [0, 1), got {slack}")));
    }
    let (fmin, fmax) = f.grid_extrema(0.0, x, BOUNDS_GRID_POINTS);
    let (gmin, gmax) = g.grid_extrema(0.0, x, BOUNDS_GRID_POINTS);
    ConstantBounds::new(
        (1.0 - slack) * fmin,
        (1.0 + slack) * fmax,
        (1.0 - slack) * gmin,
        (1.0 + slack) * gmax,
    )
}

/// The step function on `[0, 1]` equal to `1 − ε` on `[0, 1/2)` and `1 + ε`
/// on `[1/2, 1]`, with bounds `(1 − ε, 1 + ε, 1 − ε, 1 + ε)`.
pub fn remark_step_pair(eps: f64) -> Result<(FunctionSpec, ConstantBounds)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Config(format!("eps must lie in (0, 1), got {eps}")));
    }
    let (lo, hi) = (1.0 - eps, 1.0 + eps);
    let f = FunctionSpec::new(
        1.0,
        Family::Step {
            breakpoints: vec![0.5],
            levels: vec![lo, hi],
        },
    )?;
    Ok((f, ConstantBounds::new(lo, hi, lo, hi)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64, mix: FamilyMix) -> GeneratorConfig {
        GeneratorConfig {
            seed,
            family_mix: mix,
            ..GeneratorConfig::default()
        }
    }

    #[test]
    fn config_invariants() {
        assert!(GeneratorConfig::default().validate().is_ok());
        let bad = |f: fn(&mut GeneratorConfig)| {
            let mut c = GeneratorConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.delta = 0.0));
        assert!(bad(|c| c.delta = 1.0));
        assert!(bad(|c| c.positivity_floor = 0.0));
        assert!(bad(|c| c.family_mix = FamilyMix {
            polynomial: 0.0,
            exponential: 0.0,
            trig: 0.0,
            step: 0.0
        }));
        assert!(bad(|c| c.family_mix.step = -1.0));
        assert!(bad(|c| c.x_range = [2.0, 1.0]));
    }

    #[test]
    fn generation_is_deterministic() {
        let c = cfg(1, FamilyMix::only(FamilyKind::Polynomial));
        let (f1, g1) = generate_pair(&c).unwrap();
        let (f2, g2) = generate_pair(&c).unwrap();
        assert_eq!(f1, f2);
        assert_eq!(g1, g2);
        assert!(matches!(f1.family(), Family::Polynomial { .. }));
        for s in [&f1, &g1] {
            assert!(s.grid_extrema(0.0, s.domain_end(), AUDIT_POINTS).0 >= 0.05);
        }
        let (f3, _) = generate_pair(&cfg(2, FamilyMix::only(FamilyKind::Polynomial))).unwrap();
        assert_ne!(f1, f3);
    }

    #[test]
    fn step_breakpoints_are_interior() {
        let mut rng = rng_from_seed(7);
        let c = cfg(7, FamilyMix::only(FamilyKind::Step));
        for _ in 0..50 {
            let f = sample_function(&mut rng, &c, 2.0).unwrap();
            assert!(!f.breakpoints().is_empty());
            assert!(f.breakpoints().iter().all(|&b| b > 0.0 && b < 2.0));
        }
    }

    #[test]
    fn monotone_pairs_are_nondecreasing() {
        let c = GeneratorConfig::default();
        for case in 0..100 {
            let mut rng = rng_from_seed(derive_seed(3, &[case]));
            let (f, g) = sample_monotone_pair(&mut rng, &c, 1.5).unwrap();
            assert!(f.is_monotone_on(0.0, 1.5, 4097, true), "{f}");
            assert!(g.is_monotone_on(0.0, 1.5, 4097, true), "{g}");
        }
    }

    #[test]
    fn envelopes_pass_a_finer_audit() {
        let c = GeneratorConfig::default();
        for case in 0..200 {
            let mut rng = rng_from_seed(derive_seed(11, &[case]));
            let (f, g) = sample_pair(&mut rng, &c, 2.0).unwrap();
            let env = proportional_envelope(&f, &g, 0.3).unwrap();
            env.verify(&f, &g, 2.0, 8192).unwrap();
        }
        let one = FunctionSpec::constant(1.0, 1.0).unwrap();
        let env = proportional_envelope(&one, &one, 0.1).unwrap();
        assert_eq!(env.v1.eval(0.3), 0.9);
        assert_eq!(env.v2.eval(0.3), 1.1);
        assert!(proportional_envelope(&one, &one, 0.0).is_err());
    }

    #[test]
    fn constant_bounds_cases() {
        let c = FunctionSpec::constant(2.5, 1.0).unwrap();
        let b = constant_bounds(&c, &c, 1.0, 0.0).unwrap();
        assert_eq!((b.m, b.big_m), (2.5, 2.5));
        let lin = FunctionSpec::parse("poly:1,1", 1.0).unwrap();
        let b = constant_bounds(&lin, &c, 1.0, 0.0).unwrap();
        assert_eq!((b.m, b.big_m, b.n, b.big_n), (1.0, 2.0, 2.5, 2.5));
        // max of 1.5 + sin(7τ) on [0, 1] is 2.5 at τ = π/14
        let trig = FunctionSpec::parse("trig:1.5,1,7,0", 1.0).unwrap();
        let b = constant_bounds(&trig, &trig, 1.0, 0.01).unwrap();
        let fine = trig.grid_extrema(0.0, 1.0, 1 << 20);
        assert!(b.m < fine.0 && b.big_m > fine.1);
        assert!(b.big_m > 2.5);
    }

    #[test]
    fn remark_pair_levels() {
        let (f, b) = remark_step_pair(0.5).unwrap();
        assert_eq!((f.eval(0.25), f.eval(0.5), f.eval(0.75)), (0.5, 1.5, 1.5));
        assert_eq!(f.breakpoints(), &[0.5]);
        assert_eq!((b.m, b.big_m, b.n, b.big_n), (0.5, 1.5, 0.5, 1.5));
        let (f, _) = remark_step_pair(0.9).unwrap();
        assert!((f.eval(0.0) - 0.1).abs() < 1e-15 && f.eval(1.0) == 1.9);
        let (f, _) = remark_step_pair(1e-9).unwrap();
        assert!((f.eval(0.0) - 1.0).abs() < 1e-8);
        assert!(remark_step_pair(0.0).is_err());
    }

    #[test]
    fn seeds_differ_across_streams() {
        let a = derive_seed(42, &[0, 1, 2]);
        assert_eq!(a, derive_seed(42, &[0, 1, 2]));
        assert_ne!(a, derive_seed(42, &[0, 2, 1]));
        assert_ne!(a, derive_seed(43, &[0, 1, 2]));
    }
}
