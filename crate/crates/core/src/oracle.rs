//! Brute-force reference measures for test suites.
//!
//! Every quantity is computed straight from its defining sum over the joint
//! support, with marginals materialized into hash maps keyed by projected
//! state. Nothing here shares code with the optimized paths except
//! [`JointDistribution::support`].

use std::collections::HashMap;

use crate::dist::JointDistribution;

/// Reference values for one distribution, in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleMeasures {
    pub joint_entropy: f64,
    pub total_correlation: f64,
    pub dual_total_correlation: f64,
    pub s_information: f64,
    pub o_information: f64,
    /// `T(X^-i)`, each from its own materialized marginal.
    pub marginal_total_correlations: Vec<f64>,
}

impl OracleMeasures {
    /// `(N-k) T(X) - Σ T(X^-i)`.
    pub fn delta_k(&self, k: i64) -> f64 {
        let n = self.marginal_total_correlations.len() as f64;
        let sum: f64 = self.marginal_total_correlations.iter().sum();
        (n - k as f64) * self.total_correlation - sum
    }

    /// `(1 - (N-1)(k-1)) T(X) + (k-1) Σ T(X^-i)`.
    pub fn gamma_k(&self, k: i64) -> f64 {
        let n = self.marginal_total_correlations.len() as f64;
        let k = k as f64;
        let sum: f64 = self.marginal_total_correlations.iter().sum();
        (1.0 - (n - 1.0) * (k - 1.0)) * self.total_correlation + (k - 1.0) * sum
    }
}

type Pmf = Vec<(Vec<usize>, f64)>;

fn project(state: &[usize], keep: &[usize]) -> Vec<usize> {
    keep.iter().map(|&i| state[i]).collect()
}

fn marginal(pmf: &Pmf, keep: &[usize]) -> HashMap<Vec<usize>, f64> {
    let mut m = HashMap::new();
    for (s, p) in pmf {
        *m.entry(project(s, keep)).or_insert(0.0) += p;
    }
    m
}

fn others(n: usize, i: usize) -> Vec<usize> {
    (0..n).filter(|&j| j != i).collect()
}

/// `Σ p(x) log2(p(x) / Π p(x_i))`.
fn total_correlation_of(pmf: &Pmf, n: usize) -> f64 {
    let singles: Vec<_> = (0..n).map(|i| marginal(pmf, &[i])).collect();
    pmf.iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(s, p)| {
            let product: f64 = (0..n).map(|i| singles[i][&vec![s[i]]]).product();
            p * (p / product).log2()
        })
        .sum()
}

pub fn oracle_measures(dist: &JointDistribution) -> OracleMeasures {
    let pmf: Pmf = dist.support();
    let n = dist.n_vars();
    let joint_entropy: f64 = pmf
        .iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(_, p)| -p * p.log2())
        .sum();
    let total_correlation = total_correlation_of(&pmf, n);

    let singles: Vec<_> = (0..n).map(|i| marginal(&pmf, &[i])).collect();
    let rests: Vec<_> = (0..n).map(|i| marginal(&pmf, &others(n, i))).collect();

    // Σ_i H(X_i | X^-i) = -Σ_i Σ_x p(x) log2(p(x) / p(x^-i))
    let mut residual = 0.0;
    // Σ_i I(X_i ; X^-i) = Σ_i Σ_x p(x) log2(p(x) / (p(x_i) p(x^-i)))
    let mut s_information = 0.0;
    for i in 0..n {
        let keep = others(n, i);
        for (s, p) in pmf.iter().filter(|(_, p)| *p > 0.0) {
            let p_rest = rests[i][&project(s, &keep)];
            let p_i = singles[i][&vec![s[i]]];
            residual -= p * (p / p_rest).log2();
            s_information += p * (p / (p_i * p_rest)).log2();
        }
    }
    let dual_total_correlation = joint_entropy - residual;

    let marginal_total_correlations = (0..n)
        .map(|i| {
            let keep = others(n, i);
            let m: Pmf = marginal(&pmf, &keep).into_iter().collect();
            total_correlation_of(&m, n - 1)
        })
        .collect();

    OracleMeasures {
        joint_entropy,
        total_correlation,
        dual_total_correlation,
        s_information,
        o_information: total_correlation - dual_total_correlation,
        marginal_total_correlations,
    }
}

/// Deterministic suite of random distributions: `N` in `2..=5`, each
/// variable's cardinality in `{2, 3}`, and a spread of concentrations.
pub fn random_suite(count: usize, config: &crate::EstimatorConfig) -> Vec<JointDistribution> {
    use rand::{Rng, SeedableRng};

    const CONCENTRATIONS: [f64; 5] = [0.1, 0.3, 1.0, 3.0, 10.0];
    (0..count as u64)
        .map(|seed| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
            let n = rng.gen_range(2..=5);
            let cards: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=3)).collect();
            let concentration = CONCENTRATIONS[rng.gen_range(0..CONCENTRATIONS.len())];
            crate::generators::random_with_cardinalities(&cards, seed, concentration, config)
                .expect("suite tables are small")
        })
        .collect()
}
