//! A miniature end-to-end benchmark: generate a corpus, run three methods
//! over it, aggregate medians, and export plot data. Writes its outputs
//! under `target/benchmark_small/`.
//!
//! ```bash
//! cargo run --release --example benchmark_small
//! ```

use std::collections::HashSet;

use qasa::bench::{
    aggregate, export_plot_data, export_stats_table, generate_corpus, run_experiment, MethodSpec,
};
use qasa::pipeline::QasaConfig;
use qasa::sa::Sweeps;
use qasa::schedule::AnnealSchedule;

fn main() -> qasa::Result<()> {
    let corpus = generate_corpus(&[8, 10], 10, 6, 2024)?;
    println!("corpus: {} instances at sizes {:?}", corpus.len(), corpus.sizes());

    let specs = vec![
        MethodSpec::Diqa {
            p: 200,
            tau_ns: 0.8,
            schedule: AnnealSchedule::bundled(),
            bare_gamma: false,
        },
        MethodSpec::Sa {
            b: 200,
            sweeps: Sweeps::PerVariable,
            beta0: 0.01,
            beta_max: 100.0,
            repetitions: 500,
        },
        MethodSpec::Qasa(Box::new(QasaConfig { repetitions: 500, ..QasaConfig::new(100, 0) })),
    ];

    let mut records = Vec::new();
    for spec in &specs {
        let out = run_experiment(&corpus, spec, 777, false, &HashSet::new())?;
        println!("{}: {} records", spec.method(), out.records.len());
        records.extend(out.records);
    }

    let rows = aggregate(&records);
    println!("\n{}", export_stats_table(&rows));

    let out_dir = std::path::Path::new("target/benchmark_small");
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("plot_data.csv"), export_plot_data(&rows))?;
    println!("plot data written to {}", out_dir.join("plot_data.csv").display());
    Ok(())
}
