//! Ising problem instances and energy evaluation.
//!
//! An instance over `n` bipolar variables `σ_i ∈ {−1, +1}` is defined by
//! linear coefficients `h` and pairwise couplings `J_ij` (`i < j`) on a
//! graph, with energy
//!
//! ```text
//!   E(σ) = Σ_i h_i σ_i + Σ_{i<j} J_ij σ_i σ_j
//! ```
//!
//! Configurations double as basis indices of the simulator: bit `k` of the
//! index encodes variable `k` (variable 0 is the least significant bit),
//! with bit 0 ↔ spin +1 and bit 1 ↔ spin −1.

mod brute;
mod fileio;
mod generate;

pub use brute::{brute_force, brute_force_with_cap, GroundTruth, DEFAULT_ENUM_CAP, TIE_EPSILON};
pub use fileio::ProblemFile;
pub use generate::{generate_problem, generate_problem_with_seed};

use crate::error::{Error, Result};

/// An assignment of ±1 to every variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinConfiguration {
    spins: Vec<i8>,
}

impl SpinConfiguration {
    /// Build from explicit spin values; every entry must be −1 or +1.
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if let Some(pos) = spins.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::invalid(format!(
                "spin {pos} is {}, expected -1 or +1",
                spins[pos]
            )));
        }
        Ok(Self { spins })
    }

    /// The all `+1` configuration (basis index 0).
    pub fn all_up(n: usize) -> Self {
        Self { spins: vec![1; n] }
    }

    /// Decode a basis index: bit `k` set means spin `k` is −1.
    pub fn from_index(n: usize, index: u64) -> Self {
        let spins = (0..n)
            .map(|k| if (index >> k) & 1 == 1 { -1 } else { 1 })
            .collect();
        Self { spins }
    }

    /// Encode as a basis index (inverse of [`SpinConfiguration::from_index`]).
    pub fn to_index(&self) -> u64 {
        self.spins
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &s)| if s < 0 { acc | (1 << k) } else { acc })
    }

    /// Uniformly random configuration.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let spins = (0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
        Self { spins }
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    #[inline]
    pub fn spin(&self, i: usize) -> i8 {
        self.spins[i]
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.spins[i] = -self.spins[i];
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.spins
    }

    /// Parse a bitstring such as `"0110"`, character `k` giving variable `k`
    /// ('0' ↔ +1, '1' ↔ −1).
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let spins = s
            .chars()
            .map(|c| match c {
                '0' => Ok(1),
                '1' => Ok(-1),
                other => Err(Error::invalid(format!("bitstring char '{other}', expected 0/1"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Ok(Self { spins })
    }

    /// Render as a bitstring, character `k` giving variable `k`.
    pub fn to_bitstring(&self) -> String {
        self.spins.iter().map(|&s| if s < 0 { '1' } else { '0' }).collect()
    }
}

/// A coupling `(i, j, J_ij)` with `i < j`.
pub type Coupling = (usize, usize, f64);

/// An Ising optimisation instance.
///
/// Immutable after construction; an adjacency list is prebuilt so that
/// single-flip energy differences cost `O(degree)`.
#[derive(Debug, Clone)]
pub struct IsingProblem {
    n: usize,
    h: Vec<f64>,
    couplings: Vec<Coupling>,
    /// For each variable, the incident `(neighbour, J)` pairs.
    neighbors: Vec<Vec<(usize, f64)>>,
    /// Generation seed, kept for provenance when the instance was sampled.
    seed: Option<u64>,
}

impl PartialEq for IsingProblem {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.h == other.h && self.couplings == other.couplings
    }
}

impl IsingProblem {
    /// Validate and build an instance. Couplings must satisfy `i < j < n`
    /// with no duplicate pairs; coefficients must be finite.
    pub fn new(n: usize, h: Vec<f64>, couplings: Vec<Coupling>) -> Result<Self> {
        if h.len() != n {
            return Err(Error::invalid(format!(
                "h has length {}, expected n = {n}",
                h.len()
            )));
        }
        if let Some(bad) = h.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite linear coefficient {bad}")));
        }
        let mut seen = std::collections::HashSet::with_capacity(couplings.len());
        for &(i, j, jij) in &couplings {
            if i >= j {
                return Err(Error::invalid(format!("coupling ({i}, {j}) must have i < j")));
            }
            if j >= n {
                return Err(Error::invalid(format!("coupling ({i}, {j}) out of range for n = {n}")));
            }
            if !jij.is_finite() {
                return Err(Error::invalid(format!("non-finite coupling on ({i}, {j})")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::invalid(format!("duplicate coupling ({i}, {j})")));
            }
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(i, j, jij) in &couplings {
            neighbors[i].push((j, jij));
            neighbors[j].push((i, jij));
        }
        Ok(Self { n, h, couplings, neighbors, seed: None })
    }

    pub(crate) fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.neighbors[i]
    }

    /// Generation seed, if the instance was produced by a generator.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Evaluate `E(σ) = Σ h_i σ_i + Σ_{i<j} J_ij σ_i σ_j`.
    ///
    /// Summation order is fixed (linear terms in index order, then
    /// couplings in stored order) so results are reproducible.
    pub fn energy(&self, sigma: &SpinConfiguration) -> Result<f64> {
        if sigma.len() != self.n {
            return Err(Error::invalid(format!(
                "configuration has {} spins, expected {}",
                sigma.len(),
                self.n
            )));
        }
        let mut e = 0.0;
        for (i, &hi) in self.h.iter().enumerate() {
            e += hi * f64::from(sigma.spin(i));
        }
        for &(i, j, jij) in &self.couplings {
            e += jij * f64::from(sigma.spin(i)) * f64::from(sigma.spin(j));
        }
        Ok(e)
    }

    /// Energy change from flipping spin `i`, computed from the local
    /// neighbourhood only: `ΔE = −2 σ_i (h_i + Σ_j J_ij σ_j)`.
    pub fn energy_delta(&self, sigma: &SpinConfiguration, i: usize) -> Result<f64> {
        if i >= self.n {
            return Err(Error::invalid(format!("flip index {i} out of range for n = {}", self.n)));
        }
        if sigma.len() != self.n {
            return Err(Error::invalid(format!(
                "configuration has {} spins, expected {}",
                sigma.len(),
                self.n
            )));
        }
        Ok(self.energy_delta_unchecked(sigma, i))
    }

    /// As [`IsingProblem::energy_delta`] without the argument checks; used
    /// in enumeration and Metropolis inner loops.
    #[inline]
    pub(crate) fn energy_delta_unchecked(&self, sigma: &SpinConfiguration, i: usize) -> f64 {
        let mut field = self.h[i];
        for &(j, jij) in &self.neighbors[i] {
            field += jij * f64::from(sigma.spin(j));
        }
        -2.0 * f64::from(sigma.spin(i)) * field
    }
}
