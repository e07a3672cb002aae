//! Scalar multivariate information measures.
//!
//! All values are in bits. Two independent routes are provided:
//!
//! * [`EntropyProfile`] evaluates the joint entropy, every single-variable
//!   entropy and every leave-one-out entropy once, and derives `T`, `D`, `S`,
//!   `O`, `Δ^k = S - kT` and `Γ^k = S - kD` from them.
//! * [`TcDecomposition`] materializes each leave-one-out marginal and
//!   evaluates its total correlation on its own, then applies the
//!   whole-minus-sum forms `(N-k)T(X) - Σ T(X^-i)` and
//!   `(1-(N-1)(k-1))T(X) + (k-1) Σ T(X^-i)`.
//!
//! The second route exists to cross-check the first.

use serde::{Deserialize, Serialize};

use crate::dist::{EstimatorConfig, JointDistribution, VariableSubset};
use crate::error::{Error, Result};

fn require_pairs(dist: &JointDistribution) -> Result<usize> {
    let n = dist.n_vars();
    if n < 2 {
        return Err(Error::SystemTooSmall {
            n_vars: n,
            needed: 2,
        });
    }
    Ok(n)
}

fn single_entropies(dist: &JointDistribution) -> Vec<f64> {
    (0..dist.n_vars())
        .map(|i| {
            dist.marginal_entropy(&VariableSubset::single(i))
                .expect("index in range")
        })
        .collect()
}

/// Joint, single-variable and leave-one-out entropies of one distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyProfile {
    pub joint: f64,
    /// `H(X_i)` for each variable.
    pub singles: Vec<f64>,
    /// `H(X^-i)` for each variable.
    pub leave_one_out: Vec<f64>,
}

impl EntropyProfile {
    pub fn compute(dist: &JointDistribution) -> Result<Self> {
        let n = require_pairs(dist)?;
        let leave_one_out = (0..n)
            .map(|i| dist.leave_one_out(i).map(|m| m.entropy()))
            .collect::<Result<Vec<_>>>()?;
        Ok(EntropyProfile {
            joint: dist.entropy(),
            singles: single_entropies(dist),
            leave_one_out,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.singles.len()
    }

    pub fn total_correlation(&self) -> f64 {
        self.singles.iter().sum::<f64>() - self.joint
    }

    /// `H(X) - Σ H(X_i | X^-i)` with `H(X_i | X^-i) = H(X) - H(X^-i)`.
    pub fn dual_total_correlation(&self) -> f64 {
        let residual: f64 = self.leave_one_out.iter().map(|h| self.joint - h).sum();
        self.joint - residual
    }

    /// `Σ I(X_i ; X^-i)`.
    pub fn s_information(&self) -> f64 {
        self.singles
            .iter()
            .zip(&self.leave_one_out)
            .map(|(hi, hrest)| hi + hrest - self.joint)
            .sum()
    }

    pub fn o_information(&self) -> f64 {
        self.total_correlation() - self.dual_total_correlation()
    }

    /// `S - kT`.
    pub fn delta_k(&self, k: i64) -> f64 {
        self.s_information() - k as f64 * self.total_correlation()
    }

    /// `S - kD`.
    pub fn gamma_k(&self, k: i64) -> f64 {
        self.s_information() - k as f64 * self.dual_total_correlation()
    }

    pub fn report(&self) -> MeasureReport {
        let t = self.total_correlation();
        let d = self.dual_total_correlation();
        MeasureReport {
            joint_entropy: self.joint,
            total_correlation: t,
            dual_total_correlation: d,
            s_information: self.s_information(),
            o_information: t - d,
        }
    }
}

/// Total correlation of the whole system and of each leave-one-out marginal.
#[derive(Debug, Clone, PartialEq)]
pub struct TcDecomposition {
    pub whole: f64,
    /// `T(X^-i)` for each variable.
    pub marginals: Vec<f64>,
}

impl TcDecomposition {
    pub fn compute(dist: &JointDistribution) -> Result<Self> {
        let n = require_pairs(dist)?;
        let marginals = (0..n)
            .map(|i| dist.leave_one_out(i).map(|m| total_correlation(&m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TcDecomposition {
            whole: total_correlation(dist),
            marginals,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.marginals.len()
    }

    fn marginal_sum(&self) -> f64 {
        self.marginals.iter().sum()
    }

    /// `(N-k) T(X) - Σ T(X^-i)`.
    pub fn delta_k(&self, k: i64) -> f64 {
        (self.n_vars() as f64 - k as f64) * self.whole - self.marginal_sum()
    }

    /// `(1 - (N-1)(k-1)) T(X) + (k-1) Σ T(X^-i)`.
    pub fn gamma_k(&self, k: i64) -> f64 {
        let n = self.n_vars() as f64;
        let k = k as f64;
        (1.0 - (n - 1.0) * (k - 1.0)) * self.whole + (k - 1.0) * self.marginal_sum()
    }

    /// `(N-1) T(X) - Σ T(X^-i)`.
    pub fn dual_total_correlation(&self) -> f64 {
        self.delta_k(1)
    }
}

/// One distribution's scalar measures, in bits unless rescaled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub joint_entropy: f64,
    pub total_correlation: f64,
    pub dual_total_correlation: f64,
    pub s_information: f64,
    pub o_information: f64,
}

impl MeasureReport {
    pub fn compute(dist: &JointDistribution) -> Result<Self> {
        Ok(EntropyProfile::compute(dist)?.report())
    }

    /// Multiplies every field by `factor` (e.g. to change logarithm base).
    pub fn scaled(self, factor: f64) -> Self {
        if factor == 1.0 {
            return self;
        }
        MeasureReport {
            joint_entropy: self.joint_entropy * factor,
            total_correlation: self.total_correlation * factor,
            dual_total_correlation: self.dual_total_correlation * factor,
            s_information: self.s_information * factor,
            o_information: self.o_information * factor,
        }
    }
}

pub fn entropy(dist: &JointDistribution) -> f64 {
    dist.entropy()
}

/// `I(A ; B) = H(A) + H(B) - H(A, B)` for disjoint, non-empty subsets.
pub fn mutual_information(
    dist: &JointDistribution,
    part_a: &VariableSubset,
    part_b: &VariableSubset,
) -> Result<f64> {
    if part_a.is_empty() || part_b.is_empty() {
        return Err(Error::EmptySubset);
    }
    part_a
        .is_disjoint(part_b)
        .map_err(Error::OverlappingSubsets)?;
    let ha = dist.marginal_entropy(part_a)?;
    let hb = dist.marginal_entropy(part_b)?;
    let hab = dist.marginal_entropy(&part_a.union(part_b))?;
    Ok(ha + hb - hab)
}

/// `Σ H(X_i) - H(X)`. Zero for a single variable.
pub fn total_correlation(dist: &JointDistribution) -> f64 {
    single_entropies(dist).iter().sum::<f64>() - dist.entropy()
}

pub fn dual_total_correlation(dist: &JointDistribution) -> Result<f64> {
    Ok(EntropyProfile::compute(dist)?.dual_total_correlation())
}

/// Dual total correlation through joint and leave-one-out total correlations only.
pub fn dual_total_correlation_via_tc(dist: &JointDistribution) -> Result<f64> {
    Ok(TcDecomposition::compute(dist)?.dual_total_correlation())
}

pub fn s_information(dist: &JointDistribution) -> Result<f64> {
    Ok(EntropyProfile::compute(dist)?.s_information())
}

/// `T - D`: negative for synergy-dominated systems, positive for redundancy-dominated ones.
pub fn o_information(dist: &JointDistribution) -> Result<f64> {
    Ok(EntropyProfile::compute(dist)?.o_information())
}

/// `Δ^k = S - kT`. Any integer `k` is accepted.
pub fn delta_k(dist: &JointDistribution, k: i64) -> Result<f64> {
    Ok(EntropyProfile::compute(dist)?.delta_k(k))
}

/// `Δ^k` from the whole-minus-sum total correlation form.
pub fn delta_k_via_tc(dist: &JointDistribution, k: i64) -> Result<f64> {
    Ok(TcDecomposition::compute(dist)?.delta_k(k))
}

/// `Γ^k = S - kD`. Any integer `k` is accepted.
pub fn gamma_k(dist: &JointDistribution, k: i64) -> Result<f64> {
    Ok(EntropyProfile::compute(dist)?.gamma_k(k))
}

/// `Γ^k` from its total-correlation-only form.
pub fn gamma_k_via_tc(dist: &JointDistribution, k: i64) -> Result<f64> {
    Ok(TcDecomposition::compute(dist)?.gamma_k(k))
}

/// A set function over distributions that can stand in for total correlation
/// in the whole-minus-sum construction.
///
/// For the result to carry an interaction-order reading the functional must be
/// non-negative, must not grow under marginalization, and must vanish on every
/// leave-one-out marginal of a pure order-`k` interaction. The first two are
/// checked per call by [`generic_delta_k`]; the third cannot be checked on a
/// single input, so implementors may assert it through [`Self::is_fragile`].
pub trait MeasureFunctional {
    fn name(&self) -> &str;

    fn evaluate(&self, dist: &JointDistribution) -> f64;

    /// Whether the functional is known to vanish on leave-one-out marginals of
    /// pure interactions.
    fn is_fragile(&self) -> bool {
        false
    }
}

/// Total correlation as a functional.
#[derive(Debug, Clone, Copy, Default)]
pub struct TotalCorrelation;

impl MeasureFunctional for TotalCorrelation {
    fn name(&self) -> &str {
        "total_correlation"
    }

    fn evaluate(&self, dist: &JointDistribution) -> f64 {
        total_correlation(dist)
    }

    fn is_fragile(&self) -> bool {
        true
    }
}

/// Joint entropy as a functional. Non-negative and monotone, but not fragile.
#[derive(Debug, Clone, Copy, Default)]
pub struct JointEntropy;

impl MeasureFunctional for JointEntropy {
    fn name(&self) -> &str {
        "joint_entropy"
    }

    fn evaluate(&self, dist: &JointDistribution) -> f64 {
        dist.entropy()
    }
}

/// Adapts a closure into a [`MeasureFunctional`].
pub struct FnFunctional<F> {
    name: String,
    f: F,
}

impl<F: Fn(&JointDistribution) -> f64> FnFunctional<F> {
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnFunctional {
            name: name.into(),
            f,
        }
    }
}

impl<F: Fn(&JointDistribution) -> f64> MeasureFunctional for FnFunctional<F> {
    fn name(&self) -> &str {
        &self.name
    }

    fn evaluate(&self, dist: &JointDistribution) -> f64 {
        (self.f)(dist)
    }
}

/// Result of [`generic_delta_k`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericDelta {
    pub value: f64,
    /// False when the functional does not declare the fragility property, in
    /// which case `value` has no interaction-order reading.
    pub fragility_asserted: bool,
}

/// `(N-k) f(X) - Σ f(X^-i)` for an arbitrary functional `f`.
pub fn generic_delta_k(
    f: &dyn MeasureFunctional,
    dist: &JointDistribution,
    k: i64,
    config: &EstimatorConfig,
) -> Result<GenericDelta> {
    let n = require_pairs(dist)?;
    let checked = |value: f64| {
        if value < 0.0 || value.is_nan() {
            Err(Error::FunctionalNegative {
                name: f.name().to_string(),
                value,
            })
        } else {
            Ok(value)
        }
    };
    let whole = checked(f.evaluate(dist))?;
    let mut sum = 0.0;
    for i in 0..n {
        let marginal = checked(f.evaluate(&dist.leave_one_out(i)?))?;
        if whole < marginal - config.zero_tolerance {
            return Err(Error::FunctionalNonMonotone {
                name: f.name().to_string(),
                index: i,
                whole,
                marginal,
            });
        }
        sum += marginal;
    }
    Ok(GenericDelta {
        value: (n as f64 - k as f64) * whole - sum,
        fragility_asserted: f.is_fragile(),
    })
}
