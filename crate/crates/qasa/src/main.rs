//! Command-line front end: thin argument parsing and dispatch onto the
//! library. Every subcommand that writes files does so deterministically
//! for fixed seeds (timing collection is opt-in via `--timing`).

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use qasa::bench::{
    aggregate, export_boxplot_csv, export_plot_data, export_stats_csv, export_stats_table,
    generate_corpus, load_records, paper_default_sizes, run_experiment, write_records, Corpus,
    MethodSpec, QasaDetailRecord, ResultRecord, VerifyMode,
};
use qasa::gibbs::{beta_to_start_step_with, estimate_beta_with, Aggregation, AnchorRule, StepMetric};
use qasa::ising::{brute_force, GroundTruth, IsingProblem};
use qasa::pipeline::{run_qasa, QasaConfig};
use qasa::sa::{build_beta_schedule, estimate_success, SaParams, Sweeps};
use qasa::schedule::{AnnealSchedule, DiscretizeOptions, DEFAULT_TAU_NS, SYNTHETIC_A0_GHZ, SYNTHETIC_B1_GHZ};
use qasa::sim::{evolve_prefixes, BasisEnergyTable, OutcomeDistribution};
use qasa::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qasa",
    about = "Ising optimisation via discretised quantum annealing, simulated annealing, and the QASA hybrid",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ScheduleArgs {
    /// Schedule table file (defaults to the bundled hardware-style table).
    #[arg(long, global = true)]
    schedule: Option<PathBuf>,
    /// Use the built-in linear fallback schedule instead of a table.
    #[arg(long, conflicts_with = "schedule")]
    synthetic_schedule: bool,
}

impl ScheduleArgs {
    fn load(&self) -> Result<AnnealSchedule> {
        match (&self.schedule, self.synthetic_schedule) {
            (Some(path), _) => AnnealSchedule::load(path),
            (None, true) => Ok(AnnealSchedule::synthetic_linear(SYNTHETIC_A0_GHZ, SYNTHETIC_B1_GHZ)),
            (None, false) => Ok(AnnealSchedule::bundled()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AnchorArg {
    Second,
    First,
    LowestEnergy,
}

impl From<AnchorArg> for AnchorRule {
    fn from(a: AnchorArg) -> Self {
        match a {
            AnchorArg::Second => AnchorRule::SecondLargest,
            AnchorArg::First => AnchorRule::Largest,
            AnchorArg::LowestEnergy => AnchorRule::LowestEnergy,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AggArg {
    Median,
    Mean,
}

impl From<AggArg> for Aggregation {
    fn from(a: AggArg) -> Self {
        match a {
            AggArg::Median => Aggregation::Median,
            AggArg::Mean => Aggregation::Mean,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StepMetricArg {
    Log,
    Linear,
}

impl From<StepMetricArg> for StepMetric {
    fn from(a: StepMetricArg) -> Self {
        match a {
            StepMetricArg::Log => StepMetric::Log,
            StepMetricArg::Linear => StepMetric::Linear,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Diqa,
    Sa,
    Qasa,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    TableText,
    Csv,
    PlotData,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoxplotMetricArg {
    Beta,
    BPrime,
}

#[derive(Subcommand)]
enum Command {
    /// Exact statevector simulation of the discretised anneal on one problem.
    Diqa {
        #[arg(long)]
        problem: PathBuf,
        /// Ground-truth sidecar; enumerated on the fly when absent.
        #[arg(long)]
        truth: Option<PathBuf>,
        #[command(flatten)]
        schedule: ScheduleArgs,
        /// Discretisation depth.
        #[arg(long, default_value_t = 200)]
        p: usize,
        #[arg(long, default_value_t = DEFAULT_TAU_NS)]
        tau_ns: f64,
        /// Evolve only the first p' layers of the full sequence.
        #[arg(long)]
        truncate_at: Option<usize>,
        /// Sample this many shots instead of exact readout.
        #[arg(long)]
        shots: Option<u64>,
        /// Extract the top-m outcome probabilities.
        #[arg(long)]
        top_m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Omit the per-step time factor from the problem angles.
        #[arg(long)]
        bare_gamma: bool,
        /// Terminal half-step mixer angle at a truncated prefix end.
        #[arg(long)]
        terminal_delta: bool,
        /// Write the outcome distribution as JSON.
        #[arg(long)]
        dist_out: Option<PathBuf>,
        /// Append a result record to this CSV file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record measured wall time in result records.
        #[arg(long)]
        timing: bool,
    },
    /// Plain simulated annealing with repeated-run success estimation.
    Sa {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        truth: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        b: usize,
        #[arg(long, default_value_t = 0.01)]
        beta0: f64,
        #[arg(long, default_value_t = 100.0)]
        beta_max: f64,
        /// Single-site attempts per rung: a count or 'n'.
        #[arg(long, default_value = "n")]
        sweeps: Sweeps,
        #[arg(long, default_value_t = 2000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip this many of the hottest rungs (0-based ladder index).
        #[arg(long, default_value_t = 0)]
        start_index: usize,
        /// Warm-start bitstring, character k giving variable k ('0' ↔ +1).
        #[arg(long)]
        init: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Fit an inverse temperature to a stored outcome distribution.
    FitBeta {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value_t = 50)]
        m: usize,
        #[arg(long, value_enum, default_value_t = AnchorArg::Second)]
        anchor: AnchorArg,
        #[arg(long, value_enum, default_value_t = AggArg::Median)]
        agg: AggArg,
        #[arg(long, value_enum, default_value_t = StepMetricArg::Log)]
        step_metric: StepMetricArg,
        #[arg(long, default_value_t = 200)]
        b: usize,
        #[arg(long, default_value_t = 0.01)]
        beta0: f64,
        #[arg(long, default_value_t = 100.0)]
        beta_max: f64,
    },
    /// The hybrid pipeline on one problem or a whole corpus.
    Qasa {
        #[arg(long, conflicts_with = "corpus")]
        problem: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        truth: Option<PathBuf>,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = 200)]
        p: usize,
        #[arg(long, default_value_t = 100)]
        p_prime: usize,
        #[arg(long, default_value_t = DEFAULT_TAU_NS)]
        tau_ns: f64,
        #[arg(long, default_value_t = 50)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        b: usize,
        #[arg(long, default_value_t = 0.01)]
        beta0: f64,
        #[arg(long, default_value_t = 100.0)]
        beta_max: f64,
        #[arg(long, default_value = "n")]
        sweeps: Sweeps,
        #[arg(long, default_value_t = 2000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long)]
        terminal_delta: bool,
        #[arg(long)]
        bare_gamma: bool,
        #[arg(long, value_enum, default_value_t = AnchorArg::Second)]
        anchor: AnchorArg,
        #[arg(long, value_enum, default_value_t = AggArg::Median)]
        agg: AggArg,
        #[arg(long, value_enum, default_value_t = StepMetricArg::Log)]
        step_metric: StepMetricArg,
        /// Keep the observed best bitstring on estimation failure.
        #[arg(long)]
        keep_warm_on_fallback: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write per-instance fit details (corpus mode).
        #[arg(long)]
        betas_out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Generate a corpus of random instances with exact ground truths.
    /// Defaults to the desk-scale setup (50 instances each at n = 10, 14,
    /// 18); `--paper-sizes --count 100` gives the full 700-instance set.
    GenCorpus {
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated sizes, e.g. 10,14,18.
        #[arg(long, value_delimiter = ',', conflicts_with = "paper_sizes",
              default_values_t = [10usize, 14, 18])]
        sizes: Vec<usize>,
        /// Use the full reference sizes 10,12,...,22.
        #[arg(long)]
        paper_sizes: bool,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustively enumerate one problem's ground states.
    Brute {
        #[arg(long)]
        problem: PathBuf,
        /// Write the ground truth sidecar here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one method over a corpus, appending result records (resumable).
    Run {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long, default_value_t = 200)]
        p: usize,
        #[arg(long, default_value_t = 100)]
        p_prime: usize,
        #[arg(long, default_value_t = DEFAULT_TAU_NS)]
        tau_ns: f64,
        #[arg(long, default_value_t = 50)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        b: usize,
        #[arg(long, default_value_t = 0.01)]
        beta0: f64,
        #[arg(long, default_value_t = 100.0)]
        beta_max: f64,
        #[arg(long, default_value = "n")]
        sweeps: Sweeps,
        #[arg(long, default_value_t = 2000)]
        reps: usize,
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long)]
        terminal_delta: bool,
        #[arg(long)]
        bare_gamma: bool,
        #[arg(long)]
        betas_out: Option<PathBuf>,
        /// Skip the 5% ground-truth spot check on corpus load.
        #[arg(long)]
        no_verify: bool,
        #[arg(long)]
        timing: bool,
    },
    /// Group result records and compute median / MAD per group.
    Aggregate {
        /// One or more records CSV files.
        #[arg(long, required = true, num_args = 1..)]
        records: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export aggregates (or QASA fit details) for plotting.
    Export {
        #[arg(long, conflicts_with = "boxplot")]
        stats: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::TableText)]
        format: FormatArg,
        /// QASA betas CSV for boxplot quantile export.
        #[arg(long)]
        boxplot: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BoxplotMetricArg::Beta)]
        metric: BoxplotMetricArg,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    qasa::configure_workers_from_env();
    if let Err(e) = dispatch(Cli::parse()) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

/// Load the ground truth from a sidecar, or enumerate it.
fn load_or_compute_truth(problem: &IsingProblem, truth: Option<&Path>) -> Result<GroundTruth> {
    match truth {
        Some(path) => GroundTruth::load(path),
        None => brute_force(problem),
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    Ok(std::fs::write(path, text)?)
}

fn append_record(path: &Path, record: ResultRecord) -> Result<()> {
    write_records(path, &[record])
}

fn betas_csv(details: &[QasaDetailRecord]) -> String {
    let mut text = String::from("instance_id,p_prime,beta,b_prime\n");
    for d in details {
        text.push_str(&d.to_csv_line());
        text.push('\n');
    }
    text
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Diqa {
            problem,
            truth,
            schedule,
            p,
            tau_ns,
            truncate_at,
            shots,
            top_m,
            seed,
            bare_gamma,
            terminal_delta,
            dist_out,
            out,
            timing,
        } => {
            let started = std::time::Instant::now();
            let prob = IsingProblem::load(&problem)?;
            let sched = schedule.load()?;
            let p_prime = truncate_at.unwrap_or(p);
            let opts = DiscretizeOptions { include_tau_in_gamma: !bare_gamma, terminal_delta };
            let angles = sched.discretize_prefix(p, p_prime, tau_ns, opts)?;
            let state = evolve_prefixes(&prob, &angles, &[angles.p()])?.remove(0);

            let truth = load_or_compute_truth(&prob, truth.as_deref())?;
            let success = state.success_probability(&truth)?;
            println!("n = {}, p = {p}, p' = {p_prime}, tau = {tau_ns} ns", prob.n());
            println!("success probability = {success}");

            if let Some(path) = &dist_out {
                let dist = match shots {
                    Some(k) => state.sample(k, seed)?,
                    None => {
                        let m = top_m.unwrap_or(50).min(1 << prob.n());
                        state.extract_top_m(m)?
                    }
                };
                dist.save(path)?;
                println!("distribution ({} entries) written to {}", dist.len(), path.display());
            }
            if let Some(path) = &out {
                let mut params = format!("p={p};tau={tau_ns}");
                if p_prime != p {
                    params.push_str(&format!(";pp={p_prime}"));
                }
                append_record(path, ResultRecord {
                    instance_id: problem.display().to_string(),
                    method: "diqa".into(),
                    params,
                    n: prob.n(),
                    success_prob: success,
                    seed,
                    wall_ms: if timing { started.elapsed().as_millis() as u64 } else { 0 },
                })?;
            }
            Ok(())
        }

        Command::Sa {
            problem,
            truth,
            b,
            beta0,
            beta_max,
            sweeps,
            reps,
            seed,
            start_index,
            init,
            out,
            timing,
        } => {
            let started = std::time::Instant::now();
            let prob = IsingProblem::load(&problem)?;
            let truth = load_or_compute_truth(&prob, truth.as_deref())?;
            let ladder = build_beta_schedule(beta0, beta_max, b)?;
            let initial = init
                .map(|s| qasa::ising::SpinConfiguration::from_bitstring(&s))
                .transpose()?;
            let params = SaParams { sweeps, start_index, initial, seed };
            let success = estimate_success(&prob, &truth, &ladder, &params, reps)?;
            println!("n = {}, b = {b}, sweeps = {sweeps}, reps = {reps}", prob.n());
            println!("success probability = {success}");
            if let Some(path) = &out {
                let params_str = format!(
                    "b={b};sweeps={sweeps};beta0={beta0};betamax={beta_max};reps={reps}"
                );
                append_record(path, ResultRecord {
                    instance_id: problem.display().to_string(),
                    method: "sa".into(),
                    params: params_str,
                    n: prob.n(),
                    success_prob: success,
                    seed,
                    wall_ms: if timing { started.elapsed().as_millis() as u64 } else { 0 },
                })?;
            }
            Ok(())
        }

        Command::FitBeta { dist, problem, m, anchor, agg, step_metric, b, beta0, beta_max } => {
            let prob = IsingProblem::load(&problem)?;
            let dist = OutcomeDistribution::load(&dist)?;
            let table = BasisEnergyTable::build(&prob)?;
            let estimate = estimate_beta_with(&dist, &table, m, anchor.into(), agg.into())?;
            let ladder = build_beta_schedule(beta0, beta_max, b)?;
            let b_prime = beta_to_start_step_with(estimate.beta(), &ladder, step_metric.into());
            println!("beta = {}", estimate.beta());
            println!("b_prime = {b_prime}");
            println!("anchor_index = {}", estimate.anchor_index());
            println!("pairs_used = {}", estimate.pair_values().len());
            println!("skipped_pairs = {}", estimate.skipped_pairs());
            Ok(())
        }

        Command::Qasa {
            problem,
            corpus,
            truth,
            schedule,
            p,
            p_prime,
            tau_ns,
            m,
            b,
            beta0,
            beta_max,
            sweeps,
            reps,
            seed,
            shots,
            terminal_delta,
            bare_gamma,
            anchor,
            agg,
            step_metric,
            keep_warm_on_fallback,
            out,
            betas_out,
            timing,
        } => {
            let config = QasaConfig {
                p,
                p_prime,
                tau_ns,
                m,
                b,
                beta0,
                beta_max,
                sweeps,
                repetitions: reps,
                seed,
                shots,
                terminal_delta,
                bare_gamma,
                anchor: anchor.into(),
                aggregation: agg.into(),
                step_metric: step_metric.into(),
                keep_warm_config_on_fallback: keep_warm_on_fallback,
                schedule: schedule.load()?,
            };
            match (problem, corpus) {
                (Some(path), None) => {
                    let started = std::time::Instant::now();
                    let prob = IsingProblem::load(&path)?;
                    let truth = load_or_compute_truth(&prob, truth.as_deref())?;
                    let result = run_qasa(&prob, &config, Some(&truth))?;
                    match &result.beta_estimate {
                        Some(est) => println!("beta = {}", est.beta()),
                        None => println!("beta fit failed; fell back to plain annealing"),
                    }
                    println!("b_prime = {}", result.b_prime);
                    println!("sa_steps = {}", result.diagnostics.sa_steps_executed);
                    println!("diqa_best = {} (energy {})",
                        result.diqa_best.to_bitstring(),
                        result.diagnostics.diqa_best_energy);
                    println!("final = {} (energy {})",
                        result.final_config.to_bitstring(),
                        result.diagnostics.final_energy);
                    let success = result.success_probability.expect("truth supplied");
                    println!("success probability = {success}");
                    if let Some(out_path) = &out {
                        let spec = MethodSpec::Qasa(Box::new(config.clone()));
                        append_record(out_path, ResultRecord {
                            instance_id: path.display().to_string(),
                            method: "qasa".into(),
                            params: spec.params(),
                            n: prob.n(),
                            success_prob: success,
                            seed,
                            wall_ms: if timing { started.elapsed().as_millis() as u64 } else { 0 },
                        })?;
                    }
                    Ok(())
                }
                (None, Some(dir)) => {
                    let spec = MethodSpec::Qasa(Box::new(config));
                    run_over_corpus(&dir, &spec, seed, out, betas_out, false, timing)
                }
                _ => Err(Error::InvalidArgument(
                    "exactly one of --problem or --corpus is required".into(),
                )),
            }
        }

        Command::GenCorpus { out, sizes, paper_sizes, count, degree, seed } => {
            let sizes = if paper_sizes { paper_default_sizes() } else { sizes };
            let corpus = generate_corpus(&sizes, count, degree, seed)?;
            corpus.save(&out)?;
            println!("wrote {} instances to {}", corpus.len(), out.display());
            Ok(())
        }

        Command::Brute { problem, out } => {
            let prob = IsingProblem::load(&problem)?;
            let truth = brute_force(&prob)?;
            println!("min_energy = {}", truth.min_energy());
            println!("degeneracy = {}", truth.degeneracy());
            for sigma in truth.ground_states().take(8) {
                println!("ground state: {}", sigma.to_bitstring());
            }
            if truth.degeneracy() > 8 {
                println!("... ({} more)", truth.degeneracy() - 8);
            }
            if let Some(path) = &out {
                truth.save(path)?;
                println!("ground truth written to {}", path.display());
            }
            Ok(())
        }

        Command::Run {
            corpus,
            method,
            out,
            seed,
            schedule,
            p,
            p_prime,
            tau_ns,
            m,
            b,
            beta0,
            beta_max,
            sweeps,
            reps,
            shots,
            terminal_delta,
            bare_gamma,
            betas_out,
            no_verify,
            timing,
        } => {
            let sched = schedule.load()?;
            let spec = match method {
                MethodArg::Diqa => MethodSpec::Diqa { p, tau_ns, schedule: sched, bare_gamma },
                MethodArg::Sa => MethodSpec::Sa { b, sweeps, beta0, beta_max, repetitions: reps },
                MethodArg::Qasa => MethodSpec::Qasa(Box::new(QasaConfig {
                    p,
                    p_prime,
                    tau_ns,
                    m,
                    b,
                    beta0,
                    beta_max,
                    sweeps,
                    repetitions: reps,
                    seed: 0, // overridden per instance
                    shots,
                    terminal_delta,
                    bare_gamma,
                    anchor: AnchorRule::default(),
                    aggregation: Aggregation::default(),
                    step_metric: StepMetric::default(),
                    keep_warm_config_on_fallback: false,
                    schedule: sched,
                })),
            };
            run_over_corpus(&corpus, &spec, seed, Some(out), betas_out, no_verify, timing)
        }

        Command::Aggregate { records, out } => {
            let mut all = Vec::new();
            for path in &records {
                all.extend(load_records(path)?);
            }
            let rows = aggregate(&all);
            write_text(&out, &export_stats_csv(&rows))?;
            println!("aggregated {} records into {} groups", all.len(), rows.len());
            Ok(())
        }

        Command::Export { stats, format, boxplot, metric, out } => {
            match (stats, boxplot) {
                (Some(path), None) => {
                    let rows = parse_stats_csv(&path)?;
                    let text = match format {
                        FormatArg::TableText => export_stats_table(&rows),
                        FormatArg::Csv => export_stats_csv(&rows),
                        FormatArg::PlotData => export_plot_data(&rows),
                    };
                    write_text(&out, &text)?;
                }
                (None, Some(path)) => {
                    let groups = parse_betas_csv(&path, metric)?;
                    write_text(&out, &export_boxplot_csv(&groups))?;
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "exactly one of --stats or --boxplot is required".into(),
                    ))
                }
            }
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}

/// Shared corpus-execution path for `run` and corpus-mode `qasa`:
/// resumable against the existing records file, with optional QASA fit
/// details written alongside.
fn run_over_corpus(
    dir: &Path,
    spec: &MethodSpec,
    seed: u64,
    out: Option<PathBuf>,
    betas_out: Option<PathBuf>,
    no_verify: bool,
    timing: bool,
) -> Result<()> {
    let verify = if no_verify { VerifyMode::None } else { VerifyMode::SpotCheck };
    let corpus = Corpus::load(dir, verify)?;

    let mut skip = HashSet::new();
    if let Some(path) = &out {
        let (method, params) = (spec.method(), spec.params());
        for record in load_records(path)? {
            if record.method == method && record.params == params {
                skip.insert(record.instance_id);
            }
        }
    }
    let output = run_experiment(&corpus, spec, seed, timing, &skip)?;
    println!(
        "{}: {} new records, {} skipped, {} failures",
        spec.method(),
        output.records.len(),
        skip.len(),
        output.failures.len()
    );
    for (id, msg) in &output.failures {
        eprintln!("  failed {id}: {msg}");
    }
    match &out {
        Some(path) => write_records(path, &output.records)?,
        None => {
            for record in &output.records {
                println!("{} {} {}", record.instance_id, record.n, record.success_prob);
            }
        }
    }
    if let Some(path) = &betas_out {
        if !output.qasa_details.is_empty() {
            write_text(path, &betas_csv(&output.qasa_details))?;
        }
    }
    Ok(())
}

fn parse_stats_csv(path: &Path) -> Result<Vec<qasa::bench::AggregateRow>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 {
            if line != "method,params,n,median,mad,count" {
                return Err(Error::Format { line: 1, msg: format!("unexpected header '{line}'") });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Format {
                line: idx + 1,
                msg: format!("expected 6 fields, found {}", fields.len()),
            });
        }
        let parse_err = |name: &str, value: &str| Error::Format {
            line: idx + 1,
            msg: format!("bad {name} value '{value}'"),
        };
        rows.push(qasa::bench::AggregateRow {
            method: fields[0].to_owned(),
            params: fields[1].to_owned(),
            n: fields[2].parse().map_err(|_| parse_err("n", fields[2]))?,
            median: fields[3].parse().map_err(|_| parse_err("median", fields[3]))?,
            mad: fields[4].parse().map_err(|_| parse_err("mad", fields[4]))?,
            count: fields[5].parse().map_err(|_| parse_err("count", fields[5]))?,
        });
    }
    Ok(rows)
}

/// Group the betas sidecar by `p_prime`, extracting the chosen metric.
fn parse_betas_csv(path: &Path, metric: BoxplotMetricArg) -> Result<Vec<(String, Vec<f64>)>> {
    let text = std::fs::read_to_string(path)?;
    let mut groups: std::collections::BTreeMap<usize, Vec<f64>> = std::collections::BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 {
            if line != "instance_id,p_prime,beta,b_prime" {
                return Err(Error::Format { line: 1, msg: format!("unexpected header '{line}'") });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Format {
                line: idx + 1,
                msg: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let p_prime: usize = fields[1].parse().map_err(|_| Error::Format {
            line: idx + 1,
            msg: format!("bad p_prime '{}'", fields[1]),
        })?;
        let value = match metric {
            BoxplotMetricArg::Beta => {
                if fields[2].is_empty() {
                    continue; // fallback rows carry no beta
                }
                fields[2].parse().map_err(|_| Error::Format {
                    line: idx + 1,
                    msg: format!("bad beta '{}'", fields[2]),
                })?
            }
            BoxplotMetricArg::BPrime => fields[3].parse().map_err(|_| Error::Format {
                line: idx + 1,
                msg: format!("bad b_prime '{}'", fields[3]),
            })?,
        };
        groups.entry(p_prime).or_default().push(value);
    }
    Ok(groups.into_iter().map(|(pp, values)| (format!("pp={pp}"), values)).collect())
}
