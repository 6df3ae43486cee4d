//! The statevector and its two layer kernels.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{BasisEnergyTable, DEFAULT_QUBIT_CAP};
use crate::error::{Error, Result};

/// Below this amplitude count all kernels run sequentially; the work does
/// not amortise thread handoff.
const PAR_MIN_LEN: usize = 1 << 14;

/// A `2ⁿ`-amplitude pure state, unit norm by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// The equal superposition of all basis states: every amplitude is
    /// `2^(−n/2)` with zero phase.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_with_cap(n, DEFAULT_QUBIT_CAP)
    }

    pub fn uniform_with_cap(n: usize, cap: usize) -> Result<Self> {
        if n < 1 || n > cap {
            return Err(Error::limit(format!("n = {n} outside the simulable range [1, {cap}]")));
        }
        let amp = Complex64::new(0.5f64.powf(n as f64 / 2.0), 0.0);
        Ok(Self { n, amps: vec![amp; 1 << n] })
    }

    /// Build from explicit amplitudes (length must be a power of two). The
    /// caller is responsible for normalisation.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::invalid(format!("amplitude count {len} is not a power of two >= 2")));
        }
        Ok(Self { n: len.trailing_zeros() as usize, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `Σ_k |amp_k|²`, summed sequentially for reproducibility.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Measurement probability of basis state `k`.
    #[inline]
    pub fn probability(&self, k: u64) -> f64 {
        self.amps[k as usize].norm_sqr()
    }

    /// Multiply every amplitude by a global phase (readouts are invariant
    /// under this; exposed for tests).
    pub fn apply_global_phase(&mut self, theta: f64) {
        let factor = Complex64::from_polar(1.0, theta);
        for a in &mut self.amps {
            *a *= factor;
        }
    }

    /// Diagonal problem layer: `amp_k ← amp_k · e^{−iγE_k}`.
    pub fn apply_problem_phase(&mut self, table: &BasisEnergyTable, gamma: f64) -> Result<()> {
        if table.len() != self.amps.len() {
            return Err(Error::invalid(format!(
                "energy table covers {} basis states, state has {}",
                table.len(),
                self.amps.len()
            )));
        }
        let energies = table.energies();
        if self.amps.len() >= PAR_MIN_LEN {
            self.amps
                .par_iter_mut()
                .with_min_len(1 << 12)
                .zip(energies.par_iter().with_min_len(1 << 12))
                .for_each(|(a, &e)| *a *= Complex64::from_polar(1.0, -gamma * e));
        } else {
            for (a, &e) in self.amps.iter_mut().zip(energies) {
                *a *= Complex64::from_polar(1.0, -gamma * e);
            }
        }
        Ok(())
    }

    /// Transverse mixer layer: apply `e^{−iδX}` to every qubit.
    pub fn apply_mixer(&mut self, delta: f64) {
        let (c, s) = (delta.cos(), delta.sin());
        for q in 0..self.n {
            self.apply_mixer_single(q, c, s);
        }
    }

    /// One qubit's rotation. `c = cos δ`, `s = sin δ`; the pair update is
    ///
    /// ```text
    ///   a₀' = c·a₀ − i·s·a₁
    ///   a₁' = c·a₁ − i·s·a₀
    /// ```
    fn apply_mixer_single(&mut self, q: usize, c: f64, s: f64) {
        let dist = 1usize << q;
        let block = dist << 1;
        let len = self.amps.len();
        if len < PAR_MIN_LEN {
            for chunk in self.amps.chunks_exact_mut(block) {
                let (lo, hi) = chunk.split_at_mut(dist);
                rotate_slices(lo, hi, c, s);
            }
        } else if len / block >= 2 * rayon::current_num_threads() {
            // Many blocks: one task per block.
            self.amps.par_chunks_exact_mut(block).for_each(|chunk| {
                let (lo, hi) = chunk.split_at_mut(dist);
                rotate_slices(lo, hi, c, s);
            });
        } else {
            // Few large blocks (high qubits): parallelise inside each block.
            for chunk in self.amps.chunks_exact_mut(block) {
                let (lo, hi) = chunk.split_at_mut(dist);
                lo.par_chunks_mut(1 << 12)
                    .zip(hi.par_chunks_mut(1 << 12))
                    .for_each(|(a, b)| rotate_slices(a, b, c, s));
            }
        }
    }
}

#[inline]
fn rotate_slices(lo: &mut [Complex64], hi: &mut [Complex64], c: f64, s: f64) {
    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = Complex64::new(c * x.re + s * y.im, c * x.im - s * y.re);
        *b = Complex64::new(c * y.re + s * x.im, c * y.im - s * x.re);
    }
}
