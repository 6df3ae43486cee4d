//! The full hybrid pipeline on one instance: interrupted anneal, fit,
//! warm-started truncated SA, and the resulting success probability
//! compared against plain SA.
//!
//! ```bash
//! cargo run --release --example run_qasa
//! ```

use qasa::ising::{brute_force, generate_problem_with_seed};
use qasa::pipeline::{run_qasa, QasaConfig};
use qasa::sa::{build_beta_schedule, estimate_success, SaParams};

fn main() -> qasa::Result<()> {
    let problem = generate_problem_with_seed(14, 6, 21)?;
    let truth = brute_force(&problem)?;
    println!(
        "n = {}, ground-state energy {} ({} state(s))",
        problem.n(),
        truth.min_energy(),
        truth.degeneracy()
    );

    let config = QasaConfig { repetitions: 2000, ..QasaConfig::new(100, 7) };
    let result = run_qasa(&problem, &config, Some(&truth))?;

    match &result.beta_estimate {
        Some(est) => println!(
            "fitted beta = {:.4} from {} pairs ({} degenerate pairs skipped)",
            est.beta(),
            est.pair_values().len(),
            est.skipped_pairs()
        ),
        None => println!("fit failed; fell back to plain annealing"),
    }
    println!(
        "SA starts at rung b' = {} of {}, so {} rungs execute",
        result.b_prime, config.b, result.diagnostics.sa_steps_executed
    );
    println!(
        "warm start {} (energy {})",
        result.diqa_best.to_bitstring(),
        result.diagnostics.diqa_best_energy
    );
    println!("success probability = {:?}", result.success_probability.unwrap());

    // Plain SA with the full ladder, for comparison.
    let ladder = build_beta_schedule(config.beta0, config.beta_max, config.b)?;
    let plain = estimate_success(
        &problem,
        &truth,
        &ladder,
        &SaParams::new(config.seed),
        config.repetitions,
    )?;
    println!("plain SA over the full ladder = {plain}");
    Ok(())
}
