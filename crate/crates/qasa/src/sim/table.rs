//! Precomputed basis-energy tables.

use super::DEFAULT_QUBIT_CAP;
use crate::error::{Error, Result};
use crate::ising::{IsingProblem, SpinConfiguration};

/// Steps between direct energy re-evaluations during the Gray-code walk;
/// bounds the floating-point drift of the running energy.
const REANCHOR_INTERVAL: u64 = 4096;

/// The diagonal of the problem Hamiltonian: `energies[k]` is the Ising
/// energy of the configuration encoded by basis index `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisEnergyTable {
    n: usize,
    energies: Vec<f64>,
}

impl BasisEnergyTable {
    /// [`BasisEnergyTable::build_with_cap`] with the default qubit cap.
    pub fn build(problem: &IsingProblem) -> Result<Self> {
        Self::build_with_cap(problem, DEFAULT_QUBIT_CAP)
    }

    /// Tabulate all `2ⁿ` basis energies, walking the configurations in
    /// Gray-code order with incremental `ΔE` updates (periodically
    /// re-anchored against a direct evaluation).
    pub fn build_with_cap(problem: &IsingProblem, cap: usize) -> Result<Self> {
        let n = problem.n();
        if n < 1 || n > cap {
            return Err(Error::limit(format!("n = {n} outside the simulable range [1, {cap}]")));
        }
        let total: u64 = 1 << n;
        let mut energies = vec![0.0f64; total as usize];
        let mut sigma = SpinConfiguration::all_up(n);
        let mut energy = problem.energy(&sigma)?;
        energies[0] = energy;
        for t in 1..total {
            let bit = t.trailing_zeros() as usize;
            energy += problem.energy_delta_unchecked(&sigma, bit);
            sigma.flip(bit);
            if t % REANCHOR_INTERVAL == 0 {
                energy = problem.energy(&sigma)?;
            }
            energies[(t ^ (t >> 1)) as usize] = energy;
        }
        Ok(Self { n, energies })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    #[inline]
    pub fn energy(&self, k: u64) -> f64 {
        self.energies[k as usize]
    }

    pub fn min_energy(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }
}
