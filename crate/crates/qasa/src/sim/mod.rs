//! Exact statevector simulation of the discretised anneal.
//!
//! The circuit alternates a diagonal problem phase with a uniform
//! transverse mixer, so no gate matrix is ever materialised:
//!
//! - the problem unitary multiplies amplitude `k` by `e^{−iγE_k}`, with
//!   `E_k` looked up in a precomputed [`BasisEnergyTable`];
//! - the mixer applies the same single-qubit rotation `e^{−iδX}` to every
//!   qubit as `n` in-place paired-amplitude sweeps.
//!
//! One phase layer costs `O(2ⁿ)` and one mixer layer `O(n·2ⁿ)`; both
//! parallelise over amplitude blocks. Basis index `k` encodes the spin
//! configuration with bit `q` ↔ variable `q` (bit 0 is variable 0, set bit
//! means spin −1), matching [`crate::ising::SpinConfiguration`].

mod evolve;
mod readout;
mod state;
mod table;
#[cfg(test)]
pub(crate) mod test_oracle;

pub use evolve::{evolve, evolve_prefixes};
pub use readout::{DistributionSource, OutcomeDistribution};
pub use state::Statevector;
pub use table::BasisEnergyTable;

/// Default cap on the simulated qubit count (2ⁿ amplitudes).
pub const DEFAULT_QUBIT_CAP: usize = 26;
