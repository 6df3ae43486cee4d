//! Experiment execution over a corpus and the result-record format.

use std::collections::HashSet;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use super::corpus::Corpus;
use crate::error::{Error, Result};
use crate::pipeline::{run_qasa, QasaConfig};
use crate::sa::{build_beta_schedule, estimate_success, SaParams, Sweeps};
use crate::schedule::{AnnealSchedule, DiscretizeOptions};
use crate::seed::{derive_seed, fnv1a64};
use crate::sim::evolve;

/// Header of a result-records file.
pub const RECORDS_HEADER: &str = "instance_id,method,params,n,success_prob,seed,wall_ms";

/// One method with fixed parameters, runnable across a corpus.
#[derive(Debug, Clone)]
pub enum MethodSpec {
    /// Exact statevector anneal; success probability read off the final
    /// state.
    Diqa { p: usize, tau_ns: f64, schedule: AnnealSchedule, bare_gamma: bool },
    /// Plain simulated annealing, success probability estimated over
    /// repetitions.
    Sa { b: usize, sweeps: Sweeps, beta0: f64, beta_max: f64, repetitions: usize },
    /// The hybrid pipeline. The config's `seed` field is ignored; per
    /// instance seeds derive from the experiment seed.
    Qasa(Box<QasaConfig>),
}

impl MethodSpec {
    pub fn method(&self) -> &'static str {
        match self {
            MethodSpec::Diqa { .. } => "diqa",
            MethodSpec::Sa { .. } => "sa",
            MethodSpec::Qasa(_) => "qasa",
        }
    }

    /// Canonical comma-free parameter string; part of the record identity
    /// used for resume-skipping.
    pub fn params(&self) -> String {
        match self {
            MethodSpec::Diqa { p, tau_ns, bare_gamma, .. } => {
                let mut s = format!("p={p};tau={tau_ns}");
                if *bare_gamma {
                    s.push_str(";bare-gamma");
                }
                s
            }
            MethodSpec::Sa { b, sweeps, beta0, beta_max, repetitions } => {
                format!("b={b};sweeps={sweeps};beta0={beta0};betamax={beta_max};reps={repetitions}")
            }
            MethodSpec::Qasa(config) => {
                let mut s = format!(
                    "p={};pp={};tau={};m={};b={};sweeps={};reps={}",
                    config.p,
                    config.p_prime,
                    config.tau_ns,
                    config.m,
                    config.b,
                    config.sweeps,
                    config.repetitions
                );
                if let Some(shots) = config.shots {
                    s.push_str(&format!(";shots={shots}"));
                }
                if config.terminal_delta {
                    s.push_str(";terminal-delta");
                }
                s
            }
        }
    }
}

/// One CSV row of an experiment's results.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub instance_id: String,
    pub method: String,
    pub params: String,
    pub n: usize,
    pub success_prob: f64,
    pub seed: u64,
    /// Measured wall time; 0 unless timing collection was requested, so
    /// reruns stay byte-identical.
    pub wall_ms: u64,
}

impl ResultRecord {
    fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.instance_id,
            self.method,
            self.params,
            self.n,
            self.success_prob,
            self.seed,
            self.wall_ms
        )
    }

    fn parse_csv_line(line: &str, lineno: usize) -> Result<Self> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Format {
                line: lineno,
                msg: format!("expected 7 fields, found {}", fields.len()),
            });
        }
        fn parse_field<T: std::str::FromStr>(s: &str, name: &str, lineno: usize) -> Result<T>
        where
            T::Err: std::fmt::Display,
        {
            s.parse().map_err(|e| Error::Format {
                line: lineno,
                msg: format!("bad {name} value '{s}': {e}"),
            })
        }
        Ok(ResultRecord {
            instance_id: fields[0].to_owned(),
            method: fields[1].to_owned(),
            params: fields[2].to_owned(),
            n: parse_field(fields[3], "n", lineno)?,
            success_prob: parse_field(fields[4], "success_prob", lineno)?,
            seed: parse_field(fields[5], "seed", lineno)?,
            wall_ms: parse_field(fields[6], "wall_ms", lineno)?,
        })
    }
}

/// Per-instance detail row emitted by QASA runs (for the β/b' boxplots):
/// CSV `instance_id,p_prime,beta,b_prime`, β empty on fallback.
#[derive(Debug, Clone, PartialEq)]
pub struct QasaDetailRecord {
    pub instance_id: String,
    pub p_prime: usize,
    pub beta: Option<f64>,
    pub b_prime: usize,
}

impl QasaDetailRecord {
    pub fn to_csv_line(&self) -> String {
        let beta = self.beta.map(|b| b.to_string()).unwrap_or_default();
        format!("{},{},{},{}", self.instance_id, self.p_prime, beta, self.b_prime)
    }
}

/// Everything produced by one experiment invocation.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    /// In instance-id order; one row per instance that completed.
    pub records: Vec<ResultRecord>,
    /// QASA-only per-instance fit details, same order.
    pub qasa_details: Vec<QasaDetailRecord>,
    /// Instances that failed, with their error messages; the run continues
    /// past them.
    pub failures: Vec<(String, String)>,
}

/// Run `spec` over every corpus instance not listed in `skip`.
///
/// Instance seeds derive from `seed` and the instance id, so records do
/// not depend on which subset of instances runs in one invocation or on
/// thread scheduling.
pub fn run_experiment(
    corpus: &Corpus,
    spec: &MethodSpec,
    seed: u64,
    timing: bool,
    skip: &HashSet<String>,
) -> Result<ExperimentOutput> {
    let method = spec.method();
    let params = spec.params();

    // Angle sequences depend only on the method parameters, not the instance.
    let diqa_angles = match spec {
        MethodSpec::Diqa { p, tau_ns, schedule, bare_gamma } => Some(schedule.discretize(
            *p,
            *tau_ns,
            DiscretizeOptions { include_tau_in_gamma: !bare_gamma, ..Default::default() },
        )?),
        _ => None,
    };

    let todo: Vec<&super::CorpusInstance> =
        corpus.instances().iter().filter(|inst| !skip.contains(&inst.id)).collect();

    struct InstanceOutcome {
        record: ResultRecord,
        detail: Option<QasaDetailRecord>,
    }

    let outcomes: Vec<std::result::Result<InstanceOutcome, (String, String)>> = todo
        .par_iter()
        .map(|inst| {
            let inst_seed = derive_seed(seed, &[fnv1a64(&inst.id)]);
            let started = Instant::now();
            let run = || -> Result<(f64, Option<QasaDetailRecord>)> {
                match spec {
                    MethodSpec::Diqa { .. } => {
                        let angles = diqa_angles.as_ref().expect("prepared above");
                        let state = evolve(&inst.problem, angles)?;
                        Ok((state.success_probability(&inst.truth)?, None))
                    }
                    MethodSpec::Sa { b, sweeps, beta0, beta_max, repetitions } => {
                        let ladder = build_beta_schedule(*beta0, *beta_max, *b)?;
                        let params =
                            SaParams { sweeps: *sweeps, ..SaParams::new(inst_seed) };
                        let success = estimate_success(
                            &inst.problem,
                            &inst.truth,
                            &ladder,
                            &params,
                            *repetitions,
                        )?;
                        Ok((success, None))
                    }
                    MethodSpec::Qasa(config) => {
                        let mut config = (**config).clone();
                        config.seed = inst_seed;
                        let result = run_qasa(&inst.problem, &config, Some(&inst.truth))?;
                        let detail = QasaDetailRecord {
                            instance_id: inst.id.clone(),
                            p_prime: config.p_prime,
                            beta: result.beta_estimate.as_ref().map(|e| e.beta()),
                            b_prime: result.b_prime,
                        };
                        let success = result
                            .success_probability
                            .expect("ground truth supplied");
                        Ok((success, Some(detail)))
                    }
                }
            };
            match run() {
                Ok((success_prob, detail)) => Ok(InstanceOutcome {
                    record: ResultRecord {
                        instance_id: inst.id.clone(),
                        method: method.to_owned(),
                        params: params.clone(),
                        n: inst.problem.n(),
                        success_prob,
                        seed: inst_seed,
                        wall_ms: if timing { started.elapsed().as_millis() as u64 } else { 0 },
                    },
                    detail,
                }),
                Err(e) => Err((inst.id.clone(), e.to_string())),
            }
        })
        .collect();

    let mut output =
        ExperimentOutput { records: Vec::new(), qasa_details: Vec::new(), failures: Vec::new() };
    for outcome in outcomes {
        match outcome {
            Ok(o) => {
                output.records.push(o.record);
                if let Some(d) = o.detail {
                    output.qasa_details.push(d);
                }
            }
            Err(failure) => {
                log::warn!("instance {} failed: {}", failure.0, failure.1);
                output.failures.push(failure);
            }
        }
    }
    Ok(output)
}

/// Parse a records file; returns an empty list when the file is missing.
pub fn load_records(path: impl AsRef<Path>) -> Result<Vec<ResultRecord>> {
    let path = path.as_ref();
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == RECORDS_HEADER => {}
        Some((_, header)) => {
            return Err(Error::Format {
                line: 1,
                msg: format!("unexpected header '{header}'"),
            })
        }
        None => return Ok(Vec::new()),
    }
    lines
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(idx, line)| ResultRecord::parse_csv_line(line, idx + 1))
        .collect()
}

/// Append records to a file, writing the header first when the file does
/// not exist yet.
pub fn write_records(path: impl AsRef<Path>, records: &[ResultRecord]) -> Result<()> {
    use std::io::Write;
    let path = path.as_ref();
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let fresh = !path.exists();
    let mut file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    if fresh {
        writeln!(file, "{RECORDS_HEADER}")?;
    }
    for record in records {
        writeln!(file, "{}", record.to_csv_line())?;
    }
    Ok(())
}
