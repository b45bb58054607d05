//! Gauss–Jacobi rules on the unit interval via the Golub–Welsch eigenproblem.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, SymmetricEigen};

/// Points in `[0, 1]` with weights for `∫₀¹ s^{α−1} φ(s) ds`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// n-point rule exact for `∫₀¹ s^{α−1} q(s) ds` with deg q ≤ 2n − 1.
    ///
    /// `alpha = 1` gives Gauss–Legendre.
    pub fn jacobi(n: usize, alpha: f64) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        assert!(alpha > 0.0, "weight exponent alpha - 1 must exceed -1");
        // Jacobi weight (1 - t)^a (1 + t)^b on [-1, 1] with a = 0, b = alpha - 1.
        let a = 0.0;
        let b = alpha - 1.0;
        let ab = a + b;

        let mut jm = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            let k = i as f64;
            let diag = if i == 0 {
                (b - a) / (ab + 2.0)
            } else {
                (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0))
            };
            jm[(i, i)] = diag;
            if i + 1 < n {
                let k = k + 1.0;
                let two_k_ab = 2.0 * k + ab;
                let off = (4.0 * k * (k + a) * (k + b) * (k + ab)
                    / (two_k_ab * two_k_ab * (two_k_ab + 1.0) * (two_k_ab - 1.0)))
                    .sqrt();
                jm[(i, i + 1)] = off;
                jm[(i + 1, i)] = off;
            }
        }

        // Total mass of s^{alpha-1} on [0, 1].
        let mass = 1.0 / alpha;

        let eig = SymmetricEigen::new(jm);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                let t = eig.eigenvalues[j];
                let v0 = eig.eigenvectors[(0, j)];
                (0.5 * (1.0 + t), mass * v0 * v0)
            })
            .collect();
        pairs.sort_by(|l, r| l.0.total_cmp(&r.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

type RuleCache = RwLock<HashMap<(usize, u64), Arc<GaussRule>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized [`GaussRule::jacobi`]; rules are immutable once built.
pub fn cached_jacobi(n: usize, alpha: f64) -> Arc<GaussRule> {
    let key = (n, alpha.to_bits());
    if let Some(rule) = cache().read().expect("rule cache poisoned").get(&key) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(GaussRule::jacobi(n, alpha));
    cache()
        .write()
        .expect("rule cache poisoned")
        .entry(key)
        .or_insert(rule)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let rule = GaussRule::jacobi(8, 1.0);
        for deg in 0..16 {
            let q: f64 = rule.nodes.iter().zip(&rule.weights).map(|(s, w)| w * s.powi(deg)).sum();
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((q - exact).abs() < 1e-14, "deg {deg}: {q} vs {exact}");
        }
    }

    #[test]
    fn jacobi_moments_match_beta_integrals() {
        // ∫₀¹ s^{α-1} s^k ds = 1 / (α + k)
        for alpha in [0.3, 0.5, 1.5, 2.5, 3.7] {
            let rule = GaussRule::jacobi(16, alpha);
            for k in 0..32 {
                let q: f64 = rule.nodes.iter().zip(&rule.weights).map(|(s, w)| w * s.powi(k)).sum();
                let exact = 1.0 / (alpha + k as f64);
                assert!((q - exact).abs() < 2e-14 * exact.max(1.0), "alpha {alpha} k {k}");
            }
        }
    }

    #[test]
    fn nodes_are_interior_and_sorted() {
        let rule = GaussRule::jacobi(16, 0.5);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(rule.nodes[0] > 0.0 && rule.nodes[15] < 1.0);
        assert!(rule.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn cache_returns_same_rule() {
        let a = cached_jacobi(16, 0.7);
        let b = cached_jacobi(16, 0.7);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
