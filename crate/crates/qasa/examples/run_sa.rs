//! Simulated annealing over the geometric inverse-temperature ladder:
//! single chains, repeated-run success estimation, and the effect of the
//! sweeps budget.
//!
//! ```bash
//! cargo run --release --example run_sa
//! ```

use qasa::ising::{brute_force, generate_problem_with_seed};
use qasa::sa::{anneal, build_beta_schedule, estimate_success, SaParams, Sweeps};

fn main() -> qasa::Result<()> {
    let problem = generate_problem_with_seed(12, 6, 7)?;
    let truth = brute_force(&problem)?;

    let ladder = build_beta_schedule(0.01, 100.0, 200)?;
    println!(
        "ladder: {} rungs from {} to {:.3}",
        ladder.len(),
        ladder.beta(0),
        ladder.betas().last().unwrap()
    );

    for seed in 0..3 {
        let sigma = anneal(&problem, &ladder, &SaParams::new(seed))?;
        println!(
            "chain {seed}: final {} energy {:6.2} (ground: {})",
            sigma.to_bitstring(),
            problem.energy(&sigma)?,
            truth.contains(&sigma)
        );
    }

    for sweeps in [Sweeps::Count(1), Sweeps::PerVariable] {
        let params = SaParams { sweeps, ..SaParams::new(99) };
        let success = estimate_success(&problem, &truth, &ladder, &params, 2000)?;
        println!("sweeps = {sweeps}: success probability {success:.4} (2000 repetitions)");
    }
    Ok(())
}
