//! Define a small Ising instance by hand, evaluate energies and flip
//! costs, and enumerate its exact ground states.
//!
//! ```bash
//! cargo run --release --example energy_and_ground_truth
//! ```

use qasa::ising::{brute_force, IsingProblem, SpinConfiguration};

fn main() -> qasa::Result<()> {
    // Three spins on a triangle with one frustrated bond.
    let problem = IsingProblem::new(
        3,
        vec![0.5, -0.2, 0.0],
        vec![(0, 1, -1.0), (0, 2, 1.0), (1, 2, 1.0)],
    )?;

    println!("E(σ) over all 2^3 configurations:");
    for index in 0..8u64 {
        let sigma = SpinConfiguration::from_index(3, index);
        println!(
            "  index {index} = {}  E = {:6.2}",
            sigma.to_bitstring(),
            problem.energy(&sigma)?
        );
    }

    // Local flip costs from the all-up configuration.
    let sigma = SpinConfiguration::all_up(3);
    for i in 0..3 {
        println!("flip cost of spin {i} from {}: {}", sigma.to_bitstring(), problem.energy_delta(&sigma, i)?);
    }

    let truth = brute_force(&problem)?;
    println!("minimum energy: {}", truth.min_energy());
    for gs in truth.ground_states() {
        println!("ground state:   {}", gs.to_bitstring());
    }
    Ok(())
}
