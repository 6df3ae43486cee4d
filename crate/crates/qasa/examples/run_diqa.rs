//! Exact statevector simulation of the discretised anneal on one random
//! instance: success probabilities at two depths and the most probable
//! outcomes.
//!
//! ```bash
//! cargo run --release --example run_diqa
//! ```

use qasa::ising::{brute_force, generate_problem_with_seed};
use qasa::schedule::{AnnealSchedule, DiscretizeOptions};
use qasa::sim::evolve;

fn main() -> qasa::Result<()> {
    let problem = generate_problem_with_seed(12, 6, 7)?;
    let truth = brute_force(&problem)?;
    println!(
        "n = {}, ground-state energy {} ({} state(s))",
        problem.n(),
        truth.min_energy(),
        truth.degeneracy()
    );

    let schedule = AnnealSchedule::bundled();
    for p in [100usize, 200] {
        let angles = schedule.discretize(p, 0.8, DiscretizeOptions::default())?;
        let state = evolve(&problem, &angles)?;
        println!(
            "p = {p:3}:  success probability = {:.4}   (norm drift {:.2e})",
            state.success_probability(&truth)?,
            (state.norm_sqr() - 1.0).abs()
        );
        if p == 200 {
            println!("  top outcomes:");
            for &(index, prob) in state.extract_top_m(5)?.top_by_probability(5).iter() {
                let marker = if truth.contains_index(index) { " <- ground state" } else { "" };
                println!("    index {index:4}  P = {prob:.4}{marker}");
            }
            // Shot-sampled readout is available as well.
            let shots = state.sample(4096, 1)?;
            println!("  {} distinct outcomes over 4096 shots", shots.len());
        }
    }
    Ok(())
}
