//! Sample random 6-regular instances with one-decimal coefficients, check
//! the graph structure, and round-trip one through the JSON problem
//! format.
//!
//! ```bash
//! cargo run --release --example generate_instances
//! ```

use qasa::ising::{generate_problem_with_seed, IsingProblem};

fn main() -> qasa::Result<()> {
    for seed in 0..3 {
        let problem = generate_problem_with_seed(12, 6, seed)?;
        let mut degrees = vec![0usize; problem.n()];
        for &(i, j, _) in problem.couplings() {
            degrees[i] += 1;
            degrees[j] += 1;
        }
        println!(
            "seed {seed}: n = {}, couplings = {}, degrees = {:?}",
            problem.n(),
            problem.couplings().len(),
            degrees
        );
    }

    // The text format round-trips coefficients bit-exactly.
    let problem = generate_problem_with_seed(10, 6, 42)?;
    let json = problem.to_json();
    let back = IsingProblem::from_json(&json)?;
    assert_eq!(problem, back);
    println!("\nproblem file for seed 42:\n{json}");
    Ok(())
}
