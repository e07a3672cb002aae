//! Synthetic systems with known interaction structure.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dist::{EstimatorConfig, JointDistribution};
use crate::error::{Error, Result};

fn binary() -> usize {
    2
}

fn one() -> usize {
    1
}

fn unit() -> f64 {
    1.0
}

/// Declarative description of a synthetic system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// `order` identical copies of one uniform variable.
    #[serde(alias = "giant_bit")]
    GiantBit {
        order: usize,
        #[serde(default = "binary")]
        alphabet: usize,
    },
    /// `order - 1` independent uniform inputs and their sum modulo `alphabet`.
    Parity {
        order: usize,
        #[serde(default = "binary")]
        alphabet: usize,
    },
    /// Independent join of the listed systems, variables concatenated in order.
    #[serde(alias = "independent_product")]
    IndependentProduct { parts: Vec<GeneratorSpec> },
    /// Seeded random table with strictly positive masses.
    #[serde(alias = "random_dirichlet_like", alias = "random-dirichlet-like")]
    Random {
        n_vars: usize,
        #[serde(default = "binary")]
        alphabet: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "unit")]
        concentration: f64,
    },
    /// All mass on the all-zeros state.
    #[serde(alias = "point_mass")]
    PointMass {
        #[serde(default = "one")]
        n_vars: usize,
        #[serde(default = "one")]
        alphabet: usize,
    },
}

impl GeneratorSpec {
    pub fn generate(&self, config: &EstimatorConfig) -> Result<JointDistribution> {
        match self {
            GeneratorSpec::GiantBit { order, alphabet } => giant_bit(*order, *alphabet, config),
            GeneratorSpec::Parity { order, alphabet } => parity_mod(*order, *alphabet, config),
            GeneratorSpec::IndependentProduct { parts } => compose_independent(parts, config),
            GeneratorSpec::Random {
                n_vars,
                alphabet,
                seed,
                concentration,
            } => random_distribution(*n_vars, *alphabet, *seed, *concentration, config),
            GeneratorSpec::PointMass { n_vars, alphabet } => point_mass(*n_vars, *alphabet, config),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::GiantBit { order, alphabet } => {
                write!(f, "giant-bit(order={order}, alphabet={alphabet})")
            }
            GeneratorSpec::Parity { order, alphabet } => {
                write!(f, "parity(order={order}, alphabet={alphabet})")
            }
            GeneratorSpec::IndependentProduct { parts } => {
                write!(f, "independent-product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            GeneratorSpec::Random {
                n_vars,
                alphabet,
                seed,
                concentration,
            } => write!(
                f,
                "random(n_vars={n_vars}, alphabet={alphabet}, seed={seed}, concentration={concentration})"
            ),
            GeneratorSpec::PointMass { n_vars, alphabet } => {
                write!(f, "point-mass(n_vars={n_vars}, alphabet={alphabet})")
            }
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidOrder {
            order,
            reason: "order must be at least 2",
        });
    }
    Ok(())
}

fn check_alphabet(alphabet: usize, min: usize) -> Result<()> {
    if alphabet < min {
        return Err(Error::InvalidAlphabet {
            alphabet,
            reason: if min == 1 {
                "alphabet must be positive"
            } else {
                "alphabet must be at least 2"
            },
        });
    }
    Ok(())
}

/// `k` copies of a uniform variable over `alphabet` symbols.
pub fn giant_bit(k: usize, alphabet: usize, config: &EstimatorConfig) -> Result<JointDistribution> {
    check_order(k)?;
    check_alphabet(alphabet, 2)?;
    let p = 1.0 / alphabet as f64;
    JointDistribution::from_entries(
        &vec![alphabet; k],
        (0..alphabet).map(|a| (vec![a; k], p)),
        config,
    )
}

/// Binary `k`-variable parity: the last variable is the XOR of the others.
pub fn parity(k: usize, config: &EstimatorConfig) -> Result<JointDistribution> {
    parity_mod(k, 2, config)
}

/// `k`-variable modular parity over `alphabet` symbols: `k - 1` independent
/// uniform inputs and their sum modulo `alphabet`. Every leave-one-out
/// marginal is uniform and independent.
pub fn parity_mod(
    k: usize,
    alphabet: usize,
    config: &EstimatorConfig,
) -> Result<JointDistribution> {
    check_order(k)?;
    check_alphabet(alphabet, 2)?;
    let inputs = (k - 1) as u32;
    let count = (alphabet as u128)
        .checked_pow(inputs)
        .filter(|&c| c <= config.max_dense_states as u128)
        .ok_or(Error::TableTooLarge {
            states: (alphabet as u128).saturating_pow(k as u32),
            limit: config.max_dense_states,
        })? as usize;
    let p = 1.0 / count as f64;
    let mut entries = Vec::with_capacity(count);
    let mut state = vec![0usize; k];
    for _ in 0..count {
        state[k - 1] = state[..k - 1].iter().sum::<usize>() % alphabet;
        entries.push((state.clone(), p));
        // Next input assignment, last input fastest.
        for v in (0..k - 1).rev() {
            state[v] += 1;
            if state[v] < alphabet {
                break;
            }
            state[v] = 0;
        }
    }
    JointDistribution::from_entries(&vec![alphabet; k], entries, config)
}

/// Deterministic system: all mass on the all-zeros state.
pub fn point_mass(
    n_vars: usize,
    alphabet: usize,
    config: &EstimatorConfig,
) -> Result<JointDistribution> {
    if n_vars == 0 {
        return Err(Error::NoVariables);
    }
    check_alphabet(alphabet, 1)?;
    JointDistribution::from_entries(&vec![alphabet; n_vars], [(vec![0; n_vars], 1.0)], config)
}

/// Seeded random distribution over `n_vars` variables of equal alphabet.
pub fn random_distribution(
    n_vars: usize,
    alphabet: usize,
    seed: u64,
    concentration: f64,
    config: &EstimatorConfig,
) -> Result<JointDistribution> {
    if n_vars == 0 {
        return Err(Error::NoVariables);
    }
    check_alphabet(alphabet, 1)?;
    random_with_cardinalities(&vec![alphabet; n_vars], seed, concentration, config)
}

/// Seeded random distribution with arbitrary per-variable cardinalities.
///
/// Each state gets weight `u^(1/concentration)` with `u` uniform on `(0, 1]`
/// from a ChaCha8 stream seeded with `seed`, drawn in mixed-radix state order;
/// weights are floored at the smallest positive normal `f64` and divided by
/// their sum. Small concentrations give spiky tables, large ones approach
/// uniform. The scheme is fixed so equal inputs give bit-identical tables.
pub fn random_with_cardinalities(
    cardinalities: &[usize],
    seed: u64,
    concentration: f64,
    config: &EstimatorConfig,
) -> Result<JointDistribution> {
    if !(concentration.is_finite() && concentration > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "concentration must be a positive finite number, got {concentration}"
        )));
    }
    if cardinalities.is_empty() {
        return Err(Error::NoVariables);
    }
    if let Some(index) = cardinalities.iter().position(|&c| c == 0) {
        return Err(Error::ZeroCardinality { index });
    }
    let states = cardinalities
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128))
        .unwrap_or(u128::MAX);
    if states > config.max_dense_states as u128 {
        return Err(Error::TableTooLarge {
            states,
            limit: config.max_dense_states,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exponent = 1.0 / concentration;
    let mut weights: Vec<f64> = (0..states)
        .map(|_| {
            let u = 1.0 - rng.gen::<f64>();
            u.powf(exponent).max(f64::MIN_POSITIVE)
        })
        .collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    JointDistribution::from_dense(cardinalities, weights, config, false)
}

/// Independent join of the generated subsystems, in list order.
pub fn compose_independent(
    specs: &[GeneratorSpec],
    config: &EstimatorConfig,
) -> Result<JointDistribution> {
    let (first, rest) = specs.split_first().ok_or(Error::NoVariables)?;
    rest.iter().try_fold(first.generate(config)?, |acc, spec| {
        acc.product(&spec.generate(config)?, config)
    })
}
