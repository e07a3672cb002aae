//! The `Δ^k` and `Γ^k` families swept over `k = 0..=N`.
//!
//! Both families are affine in `k` (`Δ^k = S - kT`, `Γ^k = S - kD`), so one
//! evaluation of `S`, `T` and `D` determines the whole sweep.
//!
//! Two order diagnostics are reported:
//!
//! * `synergy_order` is the smallest `k` with `Δ^k <= zero_tolerance`. On a
//!   pure order-`k` synergy (a `k`-variable parity gadget) this is exactly `k`.
//! * [`SpectrumResult::largest_positive_delta_k`] answers the other natural
//!   question, the largest `k` with `Δ^k > zero_tolerance`. Because the sweep
//!   is monotone this is `synergy_order - 1`, so on a pure order-`k` gadget it
//!   returns `k - 1`.
//!
//! `redundancy_order` and [`SpectrumResult::largest_positive_gamma_k`] are the
//! same pair for `Γ^k`; a `k`-copy giant bit has `redundancy_order == k`.

use serde::{Deserialize, Serialize};

use crate::dist::{EstimatorConfig, JointDistribution};
use crate::error::{Error, Result};
use crate::measures::EntropyProfile;

/// Sign reading of `Δ^k` (or `Γ^k`) at one `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderDominance {
    /// Positive: dependencies of order above `k` dominate.
    HigherOrderDominated,
    /// Negative: dependencies of order below `k` dominate.
    LowerOrderDominated,
    /// Zero within tolerance.
    BalancedAtK,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// `delta[k] = Δ^k` for `k = 0..=N`.
    pub delta: Vec<f64>,
    /// `gamma[k] = Γ^k` for `k = 0..=N`.
    pub gamma: Vec<f64>,
    pub synergy_order: Option<usize>,
    pub redundancy_order: Option<usize>,
    /// `S / T`, the real-valued root of `Δ^k`.
    pub delta_crossing: Option<f64>,
    /// `S / D`, the real-valued root of `Γ^k`.
    pub gamma_crossing: Option<f64>,
    pub zero_tolerance: f64,
}

fn first_non_positive(values: &[f64], tol: f64) -> Option<usize> {
    values.iter().position(|&v| v <= tol)
}

fn classify(value: f64, tol: f64) -> OrderDominance {
    if value > tol {
        OrderDominance::HigherOrderDominated
    } else if value < -tol {
        OrderDominance::LowerOrderDominated
    } else {
        OrderDominance::BalancedAtK
    }
}

impl SpectrumResult {
    /// Builds the sweep from `S`, `T` and `D` of an `n_vars`-variable system.
    pub fn from_measures(n_vars: usize, s: f64, t: f64, d: f64, zero_tolerance: f64) -> Self {
        let delta: Vec<f64> = (0..=n_vars).map(|k| s - k as f64 * t).collect();
        let gamma: Vec<f64> = (0..=n_vars).map(|k| s - k as f64 * d).collect();
        let (synergy_order, delta_crossing) = if t > zero_tolerance {
            (first_non_positive(&delta, zero_tolerance), Some(s / t))
        } else {
            (None, None)
        };
        let (redundancy_order, gamma_crossing) = if d > zero_tolerance {
            (first_non_positive(&gamma, zero_tolerance), Some(s / d))
        } else {
            (None, None)
        };
        SpectrumResult {
            delta,
            gamma,
            synergy_order,
            redundancy_order,
            delta_crossing,
            gamma_crossing,
            zero_tolerance,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.delta.len() - 1
    }

    pub fn sign_interpretation(&self, k: usize) -> Result<OrderDominance> {
        let value = self.delta.get(k).ok_or(Error::IndexOutOfRange {
            index: k,
            n_vars: self.n_vars(),
        })?;
        Ok(classify(*value, self.zero_tolerance))
    }

    /// Same reading for `Γ^k`: positive means higher-order redundancy dominates.
    pub fn gamma_sign_interpretation(&self, k: usize) -> Result<OrderDominance> {
        let value = self.gamma.get(k).ok_or(Error::IndexOutOfRange {
            index: k,
            n_vars: self.n_vars(),
        })?;
        Ok(classify(*value, self.zero_tolerance))
    }

    pub fn largest_positive_delta_k(&self) -> Option<usize> {
        self.delta.iter().rposition(|&v| v > self.zero_tolerance)
    }

    pub fn largest_positive_gamma_k(&self) -> Option<usize> {
        self.gamma.iter().rposition(|&v| v > self.zero_tolerance)
    }

    /// Multiplies the `Δ`/`Γ` arrays by `factor`. Orders and crossings are
    /// unit-free and stay as they are.
    pub fn scaled(mut self, factor: f64) -> Self {
        if factor != 1.0 {
            self.delta.iter_mut().for_each(|v| *v *= factor);
            self.gamma.iter_mut().for_each(|v| *v *= factor);
        }
        self
    }
}

pub fn compute_spectrum(
    dist: &JointDistribution,
    config: &EstimatorConfig,
) -> Result<SpectrumResult> {
    let profile = EntropyProfile::compute(dist)?;
    Ok(spectrum_from_profile(&profile, config))
}

pub fn spectrum_from_profile(profile: &EntropyProfile, config: &EstimatorConfig) -> SpectrumResult {
    SpectrumResult::from_measures(
        profile.n_vars(),
        profile.s_information(),
        profile.total_correlation(),
        profile.dual_total_correlation(),
        config.zero_tolerance,
    )
}
