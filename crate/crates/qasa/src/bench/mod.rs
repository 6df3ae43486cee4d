//! Benchmark harness: corpus generation and persistence, experiment
//! execution across methods, aggregation, and export of plot data.
//!
//! A corpus is a directory with a manifest, one problem file and one
//! ground-truth sidecar per instance, and append-only result files per
//! experiment:
//!
//! ```text
//! corpus/
//!   manifest.json
//!   instances/
//!     n10_i000.problem.json
//!     n10_i000.truth.json
//!     ...
//! ```
//!
//! Result records are CSV rows
//! `instance_id,method,params,n,success_prob,seed,wall_ms`; re-running an
//! experiment against an existing records file skips instances that
//! already have a record, so long runs are resumable. All outputs are
//! byte-deterministic for fixed seeds (the `wall_ms` column is 0 unless
//! timing collection is switched on, keeping reruns byte-identical).

mod corpus;
mod export;
mod run;
mod stats;

pub use corpus::{generate_corpus, paper_default_sizes, Corpus, CorpusInstance, VerifyMode};
pub use export::{export_boxplot_csv, export_plot_data, export_stats_csv, export_stats_table};
pub use run::{
    load_records, run_experiment, write_records, ExperimentOutput, MethodSpec, QasaDetailRecord,
    ResultRecord, RECORDS_HEADER,
};
pub use stats::{aggregate, AggregateRow};
