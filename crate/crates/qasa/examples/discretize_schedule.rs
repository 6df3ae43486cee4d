//! Load the bundled annealing schedule, interpolate it, and discretise it
//! into per-layer angle pairs at several depths.
//!
//! ```bash
//! cargo run --release --example discretize_schedule
//! ```

use qasa::schedule::{AnnealSchedule, DiscretizeOptions};

fn main() -> qasa::Result<()> {
    let schedule = AnnealSchedule::bundled();
    println!("bundled schedule: {} samples", schedule.samples().len());
    for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let (a, b) = schedule.evaluate(s)?;
        println!("  s = {s:4.2}:  A = {a:8.4} GHz   B = {b:8.4} GHz");
    }

    let angles = schedule.discretize(200, 0.8, DiscretizeOptions::default())?;
    println!("\np = 200, tau = 0.8 ns:");
    for l in [0usize, 49, 99, 149, 198, 199] {
        println!(
            "  layer {:3}:  gamma = {:9.6}   delta = {:9.6}",
            l + 1,
            angles.gamma(l),
            angles.delta(l)
        );
    }

    // A truncated prefix keeps the bridged mixer angle at its last layer.
    let prefix = schedule.discretize_prefix(200, 100, 0.8, DiscretizeOptions::default())?;
    println!("\nprefix p' = 100 ends with delta = {:9.6}", prefix.delta(99));

    // Total accumulated angle converges as the grid refines (fixed total time).
    println!("\nrefinement of total problem-phase angle (160 ns total):");
    for p in [50usize, 100, 200, 400] {
        let seq = schedule.discretize(p, 160.0 / p as f64, DiscretizeOptions::default())?;
        let total: f64 = seq.gammas().iter().sum();
        println!("  p = {p:3}: sum gamma = {total:.6}");
    }
    Ok(())
}
