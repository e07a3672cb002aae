//! Discrete joint distributions over a fixed set of variables.
//!
//! States are indexed in mixed radix with the last variable varying fastest,
//! so ascending flat index and lexicographic state order coincide. Dense
//! tables store every state; sparse tables store the non-zero states sorted
//! lexicographically. Every reduction walks states in that shared order,
//! which keeps the two layouts bit-identical.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Masses below this are treated as exact zeros when taking logarithms.
pub const ZERO_MASS: f64 = 1e-15;

/// Numerical settings shared by construction, measures and reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    /// Logarithm base for reported values. Internally everything is in bits.
    pub log_base: f64,
    /// Allowed absolute deviation of the total mass from 1.
    pub normalization_tolerance: f64,
    /// Values within this distance of zero count as zero in sign tests.
    pub zero_tolerance: f64,
    /// Largest table that is stored densely.
    pub max_dense_states: usize,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            log_base: 2.0,
            normalization_tolerance: 1e-9,
            zero_tolerance: 1e-9,
            max_dense_states: 1 << 26,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.log_base.is_finite() && self.log_base > 1.0) {
            return Err(Error::InvalidConfig(format!(
                "log base must be a finite value > 1, got {}",
                self.log_base
            )));
        }
        for (name, tol) in [
            ("normalization tolerance", self.normalization_tolerance),
            ("zero tolerance", self.zero_tolerance),
        ] {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be finite and non-negative, got {tol}"
                )));
            }
        }
        if self.max_dense_states == 0 {
            return Err(Error::InvalidConfig(
                "max dense states must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Multiplier converting a value in bits to `log_base` units.
    pub fn bits_to_base(&self) -> f64 {
        if self.log_base == 2.0 {
            1.0
        } else {
            1.0 / self.log_base.log2()
        }
    }
}

/// A sorted set of distinct variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableSubset(Vec<usize>);

impl VariableSubset {
    /// Builds a subset from indices in any order. Duplicates are rejected.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex(w[0]));
        }
        Ok(VariableSubset(indices))
    }

    pub fn single(index: usize) -> Self {
        VariableSubset(vec![index])
    }

    /// All indices in `0..n` except `excluded`.
    pub fn all_except(n: usize, excluded: usize) -> Self {
        VariableSubset((0..n).filter(|&i| i != excluded).collect())
    }

    pub fn full(n: usize) -> Self {
        VariableSubset((0..n).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_disjoint(&self, other: &VariableSubset) -> std::result::Result<(), usize> {
        match self.0.iter().find(|i| other.0.binary_search(i).is_ok()) {
            Some(&i) => Err(i),
            None => Ok(()),
        }
    }

    pub fn union(&self, other: &VariableSubset) -> VariableSubset {
        let mut v: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        VariableSubset(v)
    }

    fn check(&self, n_vars: usize) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::EmptySubset);
        }
        match self.0.last() {
            Some(&i) if i >= n_vars => Err(Error::IndexOutOfRange { index: i, n_vars }),
            _ => Ok(()),
        }
    }
}

/// Requested storage for a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    /// Dense when the state space fits in `max_dense_states`, sparse otherwise.
    #[default]
    Auto,
    Dense,
    Sparse,
}

/// Options for [`JointDistribution::build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BuildOptions {
    pub layout: Layout,
    /// Divide by the total mass instead of rejecting unnormalized input.
    pub renormalize: bool,
}

#[derive(Debug, Clone, PartialEq)]
enum Table {
    Dense(Vec<f64>),
    /// Non-zero states in lexicographic order.
    Sparse(Vec<(Box<[usize]>, f64)>),
}

/// An immutable, validated probability mass function over `N` discrete variables.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    cardinalities: Vec<usize>,
    table: Table,
}

fn state_space(cardinalities: &[usize]) -> u128 {
    cardinalities
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128))
        .unwrap_or(u128::MAX)
}

fn check_cardinalities(cardinalities: &[usize]) -> Result<()> {
    if cardinalities.is_empty() {
        return Err(Error::NoVariables);
    }
    if let Some(index) = cardinalities.iter().position(|&c| c == 0) {
        return Err(Error::ZeroCardinality { index });
    }
    Ok(())
}

/// Row-major strides: the last variable has stride 1.
fn strides(cardinalities: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; cardinalities.len()];
    for i in (0..cardinalities.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * cardinalities[i + 1];
    }
    s
}

/// Advances `digits` by one in mixed radix. Returns false after the last state.
fn advance(digits: &mut [usize], cardinalities: &[usize]) -> bool {
    for v in (0..digits.len()).rev() {
        digits[v] += 1;
        if digits[v] < cardinalities[v] {
            return true;
        }
        digits[v] = 0;
    }
    false
}

fn check_mass(state: &[usize], mass: f64) -> Result<()> {
    if !mass.is_finite() || mass < 0.0 {
        return Err(Error::NegativeMass {
            state: state.to_vec(),
            mass,
        });
    }
    Ok(())
}

impl JointDistribution {
    /// Builds a distribution from explicit `(state, mass)` pairs with automatic
    /// layout selection. Unlisted states have zero mass.
    pub fn from_entries<S: AsRef<[usize]>>(
        cardinalities: &[usize],
        entries: impl IntoIterator<Item = (S, f64)>,
        config: &EstimatorConfig,
    ) -> Result<Self> {
        Self::build(cardinalities, entries, config, BuildOptions::default())
    }

    pub fn build<S: AsRef<[usize]>>(
        cardinalities: &[usize],
        entries: impl IntoIterator<Item = (S, f64)>,
        config: &EstimatorConfig,
        options: BuildOptions,
    ) -> Result<Self> {
        check_cardinalities(cardinalities)?;
        let states = state_space(cardinalities);
        let dense = match options.layout {
            Layout::Dense => {
                if states > config.max_dense_states as u128 {
                    return Err(Error::TableTooLarge {
                        states,
                        limit: config.max_dense_states,
                    });
                }
                true
            }
            Layout::Sparse => false,
            Layout::Auto => states <= config.max_dense_states as u128,
        };

        let mut map: BTreeMap<Box<[usize]>, f64> = BTreeMap::new();
        for (state, mass) in entries {
            let state = state.as_ref();
            if state.len() != cardinalities.len()
                || state.iter().zip(cardinalities).any(|(&s, &c)| s >= c)
            {
                return Err(Error::StateOutOfRange {
                    state: state.to_vec(),
                    cardinalities: cardinalities.to_vec(),
                });
            }
            check_mass(state, mass)?;
            if map.insert(state.into(), mass).is_some() {
                return Err(Error::DuplicateState(state.to_vec()));
            }
        }

        let table = if dense {
            let strides = strides(cardinalities);
            let mut t = vec![0.0; states as usize];
            for (state, mass) in map {
                let idx: usize = state.iter().zip(&strides).map(|(s, k)| s * k).sum();
                t[idx] = mass;
            }
            Table::Dense(t)
        } else {
            Table::Sparse(map.into_iter().filter(|(_, m)| *m != 0.0).collect())
        };

        let mut dist = JointDistribution {
            cardinalities: cardinalities.to_vec(),
            table,
        };
        dist.normalize(config, options.renormalize)?;
        Ok(dist)
    }

    /// Wraps a full dense table in mixed-radix order.
    pub fn from_dense(
        cardinalities: &[usize],
        table: Vec<f64>,
        config: &EstimatorConfig,
        renormalize: bool,
    ) -> Result<Self> {
        check_cardinalities(cardinalities)?;
        let states = state_space(cardinalities);
        if states != table.len() as u128 {
            return Err(Error::InvalidConfig(format!(
                "dense table has {} entries, state space has {states}",
                table.len()
            )));
        }
        if states > config.max_dense_states as u128 {
            return Err(Error::TableTooLarge {
                states,
                limit: config.max_dense_states,
            });
        }
        let mut digits = vec![0usize; cardinalities.len()];
        for &m in &table {
            check_mass(&digits, m)?;
            advance(&mut digits, cardinalities);
        }
        let mut dist = JointDistribution {
            cardinalities: cardinalities.to_vec(),
            table: Table::Dense(table),
        };
        dist.normalize(config, renormalize)?;
        Ok(dist)
    }

    fn normalize(&mut self, config: &EstimatorConfig, renormalize: bool) -> Result<()> {
        let total = self.masses().fold(0.0, |acc, m| acc + m);
        if renormalize {
            if total.is_nan() || total <= 0.0 {
                return Err(Error::NotNormalized {
                    sum: total,
                    tolerance: config.normalization_tolerance,
                });
            }
            if total != 1.0 {
                match &mut self.table {
                    Table::Dense(t) => t.iter_mut().for_each(|m| *m /= total),
                    Table::Sparse(t) => t.iter_mut().for_each(|(_, m)| *m /= total),
                }
            }
        } else if (total - 1.0).abs().is_nan()
            || (total - 1.0).abs() > config.normalization_tolerance
        {
            return Err(Error::NotNormalized {
                sum: total,
                tolerance: config.normalization_tolerance,
            });
        }
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.cardinalities.len()
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    /// Size of the full state space (product of cardinalities).
    pub fn n_states(&self) -> u128 {
        state_space(&self.cardinalities)
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.table, Table::Dense(_))
    }

    /// Masses in canonical state order. Dense tables include zeros.
    fn masses(&self) -> Box<dyn Iterator<Item = f64> + '_> {
        match &self.table {
            Table::Dense(t) => Box::new(t.iter().copied()),
            Table::Sparse(t) => Box::new(t.iter().map(|(_, m)| *m)),
        }
    }

    /// Probability of a single joint state (0 for out-of-range states).
    pub fn prob(&self, state: &[usize]) -> f64 {
        if state.len() != self.n_vars()
            || state.iter().zip(&self.cardinalities).any(|(&s, &c)| s >= c)
        {
            return 0.0;
        }
        match &self.table {
            Table::Dense(t) => {
                let idx: usize = state
                    .iter()
                    .zip(strides(&self.cardinalities))
                    .map(|(s, k)| s * k)
                    .sum();
                t[idx]
            }
            Table::Sparse(t) => t
                .binary_search_by(|(s, _)| s.as_ref().cmp(state))
                .map(|i| t[i].1)
                .unwrap_or(0.0),
        }
    }

    /// Non-zero states and their masses in lexicographic order.
    pub fn support(&self) -> Vec<(Vec<usize>, f64)> {
        match &self.table {
            Table::Dense(t) => {
                let mut digits = vec![0usize; self.n_vars()];
                let mut out = Vec::new();
                for &m in t {
                    if m != 0.0 {
                        out.push((digits.clone(), m));
                    }
                    advance(&mut digits, &self.cardinalities);
                }
                out
            }
            Table::Sparse(t) => t.iter().map(|(s, m)| (s.to_vec(), *m)).collect(),
        }
    }

    /// Copy in dense layout.
    pub fn to_dense(&self, config: &EstimatorConfig) -> Result<Self> {
        match &self.table {
            Table::Dense(_) => Ok(self.clone()),
            Table::Sparse(t) => {
                let states = self.n_states();
                if states > config.max_dense_states as u128 {
                    return Err(Error::TableTooLarge {
                        states,
                        limit: config.max_dense_states,
                    });
                }
                let strides = strides(&self.cardinalities);
                let mut dense = vec![0.0; states as usize];
                for (s, m) in t {
                    let idx: usize = s.iter().zip(&strides).map(|(a, b)| a * b).sum();
                    dense[idx] = *m;
                }
                Ok(JointDistribution {
                    cardinalities: self.cardinalities.clone(),
                    table: Table::Dense(dense),
                })
            }
        }
    }

    /// Copy in sparse layout.
    pub fn to_sparse(&self) -> Self {
        let entries = self
            .support()
            .into_iter()
            .map(|(s, m)| (s.into_boxed_slice(), m))
            .collect();
        JointDistribution {
            cardinalities: self.cardinalities.clone(),
            table: Table::Sparse(entries),
        }
    }

    /// Sums out every variable not in `keep`.
    pub fn marginalize(&self, keep: &VariableSubset) -> Result<Self> {
        keep.check(self.n_vars())?;
        let keep = keep.indices();
        let cardinalities: Vec<usize> = keep.iter().map(|&i| self.cardinalities[i]).collect();
        if keep.len() == self.n_vars() {
            return Ok(self.clone());
        }
        let table = match &self.table {
            Table::Dense(t) => {
                let target_strides = strides(&cardinalities);
                // Per-source-variable stride in the target; zero for summed-out variables.
                let mut step = vec![0usize; self.n_vars()];
                for (pos, &v) in keep.iter().enumerate() {
                    step[v] = target_strides[pos];
                }
                let size: usize = cardinalities.iter().product();
                let mut out = vec![0.0; size];
                let mut digits = vec![0usize; self.n_vars()];
                let mut target = 0usize;
                for &m in t {
                    out[target] += m;
                    for v in (0..digits.len()).rev() {
                        digits[v] += 1;
                        target += step[v];
                        if digits[v] < self.cardinalities[v] {
                            break;
                        }
                        target -= step[v] * self.cardinalities[v];
                        digits[v] = 0;
                    }
                }
                Table::Dense(out)
            }
            Table::Sparse(t) => {
                let mut acc: BTreeMap<Box<[usize]>, f64> = BTreeMap::new();
                for (s, m) in t {
                    let key: Box<[usize]> = keep.iter().map(|&i| s[i]).collect();
                    *acc.entry(key).or_insert(0.0) += *m;
                }
                Table::Sparse(acc.into_iter().collect())
            }
        };
        Ok(JointDistribution {
            cardinalities,
            table,
        })
    }

    /// The joint distribution of every variable except `index`.
    pub fn leave_one_out(&self, index: usize) -> Result<Self> {
        let n = self.n_vars();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n_vars: n });
        }
        if n < 2 {
            return Err(Error::SystemTooSmall {
                n_vars: n,
                needed: 2,
            });
        }
        self.marginalize(&VariableSubset::all_except(n, index))
    }

    /// Independent join: `P(x, y) = P_self(x) * P_other(y)`, with `other`'s
    /// variables appended after this distribution's.
    pub fn product(&self, other: &Self, config: &EstimatorConfig) -> Result<Self> {
        let cardinalities: Vec<usize> = self
            .cardinalities
            .iter()
            .chain(&other.cardinalities)
            .copied()
            .collect();
        let states = state_space(&cardinalities);
        if states <= config.max_dense_states as u128 {
            let a = self.to_dense(config)?;
            let b = other.to_dense(config)?;
            let (Table::Dense(ta), Table::Dense(tb)) = (&a.table, &b.table) else {
                unreachable!("to_dense returns dense tables")
            };
            let mut out = Vec::with_capacity(states as usize);
            for &pa in ta {
                out.extend(tb.iter().map(|&pb| pa * pb));
            }
            return Ok(JointDistribution {
                cardinalities,
                table: Table::Dense(out),
            });
        }
        let sa = self.support();
        let sb = other.support();
        let entries = sa.len() as u128 * sb.len() as u128;
        if entries > config.max_dense_states as u128 {
            return Err(Error::TableTooLarge {
                states: entries,
                limit: config.max_dense_states,
            });
        }
        let mut out = Vec::with_capacity(entries as usize);
        for (xa, pa) in &sa {
            for (xb, pb) in &sb {
                let state: Box<[usize]> = xa.iter().chain(xb).copied().collect();
                out.push((state, pa * pb));
            }
        }
        Ok(JointDistribution {
            cardinalities,
            table: Table::Sparse(out),
        })
    }

    /// Shannon entropy in bits, with `0 log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        let mut h = 0.0;
        for p in self.masses() {
            if p >= ZERO_MASS {
                h -= p * p.log2();
            }
        }
        h
    }

    /// Entropy of the marginal over `keep`, in bits.
    pub fn marginal_entropy(&self, keep: &VariableSubset) -> Result<f64> {
        Ok(self.marginalize(keep)?.entropy())
    }
}

/// A distribution estimated from observations, plus the symbol alphabet of
/// each variable. Symbol `alphabets[i][j]` maps to index `j` of variable `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleEstimate<S> {
    pub distribution: JointDistribution,
    pub alphabets: Vec<Vec<S>>,
}

/// Plug-in (maximum likelihood) estimate: `P(x) = count(x) / rows`.
///
/// Each variable's alphabet is the set of observed symbols in sorted order,
/// so the result does not depend on row order.
pub fn estimate_from_samples<S, R>(
    rows: &[R],
    config: &EstimatorConfig,
) -> Result<SampleEstimate<S>>
where
    S: Ord + Clone,
    R: AsRef<[S]>,
{
    let first = rows.first().ok_or(Error::EmptyInput)?.as_ref();
    let arity = first.len();
    if arity == 0 {
        return Err(Error::NoVariables);
    }
    for (row, r) in rows.iter().enumerate() {
        let found = r.as_ref().len();
        if found != arity {
            return Err(Error::RaggedRows {
                row,
                expected: arity,
                found,
            });
        }
    }

    let mut alphabets: Vec<Vec<S>> = vec![Vec::new(); arity];
    for (v, alphabet) in alphabets.iter_mut().enumerate() {
        *alphabet = rows.iter().map(|r| r.as_ref()[v].clone()).collect();
        alphabet.sort();
        alphabet.dedup();
    }

    let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for r in rows {
        let state: Vec<usize> = r
            .as_ref()
            .iter()
            .zip(&alphabets)
            .map(|(sym, alpha)| alpha.binary_search(sym).expect("symbol collected above"))
            .collect();
        *counts.entry(state).or_insert(0) += 1;
    }

    let total = rows.len() as f64;
    let cardinalities: Vec<usize> = alphabets.iter().map(Vec::len).collect();
    let distribution = JointDistribution::from_entries(
        &cardinalities,
        counts.into_iter().map(|(s, c)| (s, c as f64 / total)),
        config,
    )?;
    Ok(SampleEstimate {
        distribution,
        alphabets,
    })
}
