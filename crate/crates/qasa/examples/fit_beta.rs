//! Inverse-temperature estimation: recover a synthesized Gibbs
//! temperature exactly, then fit the outcome distributions of interrupted
//! anneals at several depths and map them onto SA ladder rungs.
//!
//! ```bash
//! cargo run --release --example fit_beta
//! ```

use qasa::gibbs::{beta_to_start_step, estimate_beta, AnchorRule};
use qasa::ising::generate_problem_with_seed;
use qasa::sa::build_beta_schedule;
use qasa::schedule::{AnnealSchedule, DiscretizeOptions};
use qasa::sim::{evolve_prefixes, BasisEnergyTable, OutcomeDistribution};
use qasa::stats::median;

fn main() -> qasa::Result<()> {
    // Exact recovery on a synthesized Gibbs distribution.
    let problem = generate_problem_with_seed(8, 6, 3)?;
    let table = BasisEnergyTable::build(&problem)?;
    let beta_true = 2.5;
    let shift = table.min_energy();
    let weights: Vec<f64> =
        table.energies().iter().map(|&e| (-beta_true * (e - shift)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let dist = OutcomeDistribution::exact(
        weights.iter().enumerate().map(|(k, &w)| (k as u64, w / z)).collect(),
    )?;
    let est = estimate_beta(&dist, &table, 50, AnchorRule::SecondLargest)?;
    println!("synthesized Gibbs at beta = {beta_true}: fitted {:.12}", est.beta());

    // Fits from interrupted anneals, across a small instance set.
    let schedule = AnnealSchedule::bundled();
    let ladder = build_beta_schedule(0.01, 100.0, 200)?;
    let angles = schedule.discretize(200, 0.8, DiscretizeOptions::default())?;
    let checkpoints = [50usize, 100, 150];
    let mut betas = vec![Vec::new(); checkpoints.len()];
    for seed in 0..20 {
        let problem = generate_problem_with_seed(10, 6, seed)?;
        let table = BasisEnergyTable::build(&problem)?;
        let snapshots = evolve_prefixes(&problem, &angles, &checkpoints)?;
        for (k, state) in snapshots.iter().enumerate() {
            let top = state.extract_top_m(50)?;
            let est = estimate_beta(&top, &table, 50, AnchorRule::SecondLargest)?;
            betas[k].push(est.beta());
        }
    }
    println!("\ninterrupted-anneal fits over 20 instances (n = 10):");
    for (k, &p_prime) in checkpoints.iter().enumerate() {
        let med = median(&betas[k]);
        println!(
            "  p' = {p_prime:3}:  median beta = {med:7.4}  ->  SA start rung b' = {}",
            beta_to_start_step(med, &ladder)
        );
    }
    Ok(())
}
