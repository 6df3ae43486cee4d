//! Full circuit evolution.

use super::{BasisEnergyTable, Statevector};
use crate::error::{Error, Result};
use crate::ising::IsingProblem;
use crate::schedule::AngleSequence;

/// Evolve the uniform superposition through all layers of `angles`:
/// each layer applies the problem phase with `γ_l`, then the mixer with
/// `δ_l`.
pub fn evolve(problem: &IsingProblem, angles: &AngleSequence) -> Result<Statevector> {
    let snapshots = evolve_prefixes(problem, angles, &[angles.p()])?;
    Ok(snapshots.into_iter().next().expect("one checkpoint requested"))
}

/// Evolve once, snapshotting the state after each requested layer count.
///
/// `checkpoints` must be strictly increasing and end at most at
/// `angles.p()`. Because a default (bridged) prefix discretisation equals
/// the leading layers of the full sequence, the snapshot after `p'` layers
/// is exactly the state of an anneal interrupted at `p'`.
pub fn evolve_prefixes(
    problem: &IsingProblem,
    angles: &AngleSequence,
    checkpoints: &[usize],
) -> Result<Vec<Statevector>> {
    if checkpoints.is_empty() {
        return Err(Error::invalid("at least one checkpoint required"));
    }
    for w in checkpoints.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::invalid("checkpoints must be strictly increasing"));
        }
    }
    let last = *checkpoints.last().expect("non-empty");
    if last > angles.p() || checkpoints[0] < 1 {
        return Err(Error::invalid(format!(
            "checkpoints must lie in [1, p = {}]",
            angles.p()
        )));
    }

    let table = BasisEnergyTable::build(problem)?;
    let mut state = Statevector::uniform(problem.n())?;
    let mut snapshots = Vec::with_capacity(checkpoints.len());
    let mut next = 0;
    for l in 0..last {
        state.apply_problem_phase(&table, angles.gamma(l))?;
        state.apply_mixer(angles.delta(l));
        if l + 1 == checkpoints[next] {
            snapshots.push(state.clone());
            next += 1;
        }
    }
    Ok(snapshots)
}
