//! Higher-order information measures on discrete joint distributions.
//!
//! The crate computes total correlation `T`, dual total correlation `D`,
//! S-information `S = T + D` and O-information `O = T - D`, together with the
//! two one-parameter families that contain them:
//!
//! | family | definition | `k = 0` | `k = 1` | `k = 2` |
//! |--------|------------|---------|---------|---------|
//! | `Δ^k`  | `(N-k) T(X) - Σ_i T(X^-i) = S - kT` | `S` | `D` | `-O` |
//! | `Γ^k`  | `S - kD` | `S` | `T` | `O` |
//!
//! `Δ^k` vanishes on systems built from independent pure order-`k` synergies
//! (parity gadgets), `Γ^k` on `k`-copy giant bits. Both are additive over
//! independent subsystems.
//!
//! ```
//! use hoinfo::{generators, measures, EstimatorConfig};
//!
//! let config = EstimatorConfig::default();
//! let xor = generators::parity(3, &config).unwrap();
//! assert!((measures::o_information(&xor).unwrap() + 1.0).abs() < 1e-12);
//! assert!(measures::delta_k(&xor, 3).unwrap().abs() < 1e-12);
//! ```

pub mod dist;
pub mod error;
pub mod generators;
pub mod measures;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod spectrum;

pub use dist::{
    estimate_from_samples, BuildOptions, EstimatorConfig, JointDistribution, Layout,
    SampleEstimate, VariableSubset,
};
pub use error::{Error, Result};
pub use generators::GeneratorSpec;
pub use measures::{MeasureFunctional, MeasureReport};
pub use spectrum::{compute_spectrum, OrderDominance, SpectrumResult};
