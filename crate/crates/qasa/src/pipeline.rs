//! The QASA hybrid heuristic: partial quantum anneal → Gibbs fit →
//! warm-started truncated simulated annealing.
//!
//! One run proceeds in three steps:
//!
//! 1. discretise the annealing schedule to `p` layers and evolve only the
//!    first `p'` ≤ `p` of them, reading out an outcome distribution
//!    (exact top-m probabilities by default, shot samples on request);
//! 2. fit an inverse temperature to that distribution
//!    ([`crate::gibbs::estimate_beta_with`]) and snap it to the nearest
//!    rung `b'` of the SA ladder;
//! 3. run simulated annealing from rung `b'` (skipping the `b' − 1`
//!    hottest rungs), warm-started at the lowest-energy bitstring observed
//!    in step 1, and estimate the success probability over repeated runs.
//!
//! The quantum stage is noiseless and deterministic, so all SA repetitions
//! share its single outcome by default; in shot mode each repetition
//! redraws its own samples (and therefore its own fit and warm start).
//! When the fit fails (every observed state at the same energy, as on a
//! zero-coefficient instance) the run falls back to plain SA from rung 1
//! with random initialisation, recorded in the diagnostics.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gibbs::{
    beta_to_start_step_with, estimate_beta_with, Aggregation, AnchorRule, BetaEstimate, StepMetric,
};
use crate::ising::{GroundTruth, IsingProblem, SpinConfiguration};
use crate::sa::{
    anneal, build_beta_schedule, estimate_success, repetition_seed, InverseTemperatureSchedule,
    SaParams, Sweeps, DEFAULT_BETA0, DEFAULT_BETA_MAX, DEFAULT_REPETITIONS, DEFAULT_STEPS,
};
use crate::schedule::{AnnealSchedule, DiscretizeOptions, DEFAULT_TAU_NS};
use crate::seed::{derive_seed, fnv1a64};
use crate::sim::{BasisEnergyTable, OutcomeDistribution, Statevector};

/// Seed-derivation tag for per-repetition shot redraws.
const SHOT_STREAM_TAG: u64 = 0x5348_4f54; // "SHOT"

/// Full configuration of a QASA run. Defaults follow the benchmark
/// protocol: `p = 200`, `τ = 0.8` ns, `m = 50`, ladder `β ∈ [0.01, 100)`
/// over `b = 200` rungs, `n` sweeps per rung, 2000 repetitions.
#[derive(Debug, Clone)]
pub struct QasaConfig {
    /// Full discretisation depth.
    pub p: usize,
    /// Partial depth actually evolved (`1 ≤ p' ≤ p`).
    pub p_prime: usize,
    pub tau_ns: f64,
    /// Top-m cutoff for the fit (clipped to the state space).
    pub m: usize,
    /// SA ladder parameters.
    pub b: usize,
    pub beta0: f64,
    pub beta_max: f64,
    pub sweeps: Sweeps,
    pub repetitions: usize,
    pub seed: u64,
    /// Shot-sampled readout with this many shots; exact readout when absent.
    pub shots: Option<u64>,
    /// Use the terminal half-step mixer angle at layer `p'` even when
    /// `p' < p`.
    pub terminal_delta: bool,
    /// Omit the per-step time factor from the problem angles.
    pub bare_gamma: bool,
    pub anchor: AnchorRule,
    pub aggregation: Aggregation,
    pub step_metric: StepMetric,
    /// On estimation failure, keep the observed best bitstring as the SA
    /// start instead of re-randomising.
    pub keep_warm_config_on_fallback: bool,
    /// The annealing schedule to discretise.
    pub schedule: AnnealSchedule,
}

impl QasaConfig {
    pub fn new(p_prime: usize, seed: u64) -> Self {
        Self {
            p: 200,
            p_prime,
            tau_ns: DEFAULT_TAU_NS,
            m: crate::gibbs::DEFAULT_TOP_M,
            b: DEFAULT_STEPS,
            beta0: DEFAULT_BETA0,
            beta_max: DEFAULT_BETA_MAX,
            sweeps: Sweeps::PerVariable,
            repetitions: DEFAULT_REPETITIONS,
            seed,
            shots: None,
            terminal_delta: false,
            bare_gamma: false,
            anchor: AnchorRule::default(),
            aggregation: Aggregation::default(),
            step_metric: StepMetric::default(),
            keep_warm_config_on_fallback: false,
            schedule: AnnealSchedule::bundled(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.p_prime < 1 || self.p_prime > self.p {
            return Err(Error::invalid(format!(
                "p' = {} outside [1, p = {}]",
                self.p_prime, self.p
            )));
        }
        if self.m < 2 {
            return Err(Error::invalid("m must be at least 2"));
        }
        if self.repetitions < 1 {
            return Err(Error::invalid("repetitions must be at least 1"));
        }
        if let Some(shots) = self.shots {
            if shots < 1 {
                return Err(Error::invalid("shots must be at least 1"));
            }
        }
        Ok(())
    }

    fn discretize_options(&self) -> DiscretizeOptions {
        DiscretizeOptions {
            include_tau_in_gamma: !self.bare_gamma,
            terminal_delta: self.terminal_delta,
        }
    }
}

/// Non-essential run information. Timing fields are measurements and do
/// not participate in equality.
#[derive(Debug, Clone)]
pub struct QasaDiagnostics {
    /// Energy-degenerate pairs excluded from the fit (0 on fallback).
    pub skipped_pairs: usize,
    /// The fit failed and the SA stage ran as plain annealing from rung 1.
    pub fallback: bool,
    /// SA rungs actually executed: `b − b' + 1`.
    pub sa_steps_executed: usize,
    pub diqa_best_energy: f64,
    pub final_energy: f64,
    pub diqa_wall_ms: u64,
    pub sa_wall_ms: u64,
}

impl PartialEq for QasaDiagnostics {
    fn eq(&self, other: &Self) -> bool {
        self.skipped_pairs == other.skipped_pairs
            && self.fallback == other.fallback
            && self.sa_steps_executed == other.sa_steps_executed
            && self.diqa_best_energy == other.diqa_best_energy
            && self.final_energy == other.final_energy
    }
}

/// Outcome of one QASA run.
#[derive(Debug, Clone, PartialEq)]
pub struct QasaResult {
    /// The fit, absent when it failed and the fallback ran.
    pub beta_estimate: Option<BetaEstimate>,
    /// 1-based SA start rung (1 on fallback).
    pub b_prime: usize,
    /// Lowest-energy bitstring observed in the quantum stage.
    pub diqa_best: SpinConfiguration,
    /// Final configuration of the first SA repetition.
    pub final_config: SpinConfiguration,
    /// Fraction of repetitions ending in a ground state; present when
    /// ground truth was supplied.
    pub success_probability: Option<f64>,
    pub diagnostics: QasaDiagnostics,
}

/// Step-2 artifacts shared by the exact and shot paths.
struct FitOutcome {
    beta_estimate: Option<BetaEstimate>,
    b_prime: usize,
    diqa_best: SpinConfiguration,
    warm_start: Option<SpinConfiguration>,
    start_index: usize,
    fallback: bool,
}

fn fit_stage(
    dist: &OutcomeDistribution,
    table: &BasisEnergyTable,
    ladder: &InverseTemperatureSchedule,
    config: &QasaConfig,
    n: usize,
) -> Result<FitOutcome> {
    let (best_index, _) = dist
        .lowest_energy_entry(table)
        .ok_or_else(|| Error::EstimationFailure("empty outcome distribution".into()))?;
    let diqa_best = SpinConfiguration::from_index(n, best_index);

    match estimate_beta_with(dist, table, config.m, config.anchor, config.aggregation) {
        Ok(estimate) => {
            let b_prime = beta_to_start_step_with(estimate.beta(), ladder, config.step_metric);
            Ok(FitOutcome {
                beta_estimate: Some(estimate),
                b_prime,
                warm_start: Some(diqa_best.clone()),
                diqa_best,
                start_index: b_prime - 1,
                fallback: false,
            })
        }
        Err(Error::EstimationFailure(_)) => Ok(FitOutcome {
            beta_estimate: None,
            b_prime: 1,
            warm_start: config.keep_warm_config_on_fallback.then(|| diqa_best.clone()),
            diqa_best,
            start_index: 0,
            fallback: true,
        }),
        Err(other) => Err(other),
    }
}

/// Run QASA on one instance. Deterministic for a fixed config and seed.
pub fn run_qasa(
    problem: &IsingProblem,
    config: &QasaConfig,
    truth: Option<&GroundTruth>,
) -> Result<QasaResult> {
    config.validate()?;
    let n = problem.n();
    let ladder = build_beta_schedule(config.beta0, config.beta_max, config.b)?;

    // Step 1: partial anneal.
    let diqa_start = std::time::Instant::now();
    let angles = config.schedule.discretize_prefix(
        config.p,
        config.p_prime,
        config.tau_ns,
        config.discretize_options(),
    )?;
    let table = BasisEnergyTable::build(problem)?;
    let mut state = Statevector::uniform(n)?;
    for l in 0..angles.p() {
        state.apply_problem_phase(&table, angles.gamma(l))?;
        state.apply_mixer(angles.delta(l));
    }
    let diqa_wall_ms = diqa_start.elapsed().as_millis() as u64;

    let sa_start = std::time::Instant::now();
    let dim = 1usize << n;
    let result = match config.shots {
        None => {
            // Steps 2–3 with the single exact readout shared by all
            // repetitions.
            let dist = state.extract_top_m(config.m.min(dim))?;
            let fit = fit_stage(&dist, &table, &ladder, config, n)?;
            let params = SaParams {
                sweeps: config.sweeps,
                start_index: fit.start_index,
                initial: fit.warm_start.clone(),
                seed: config.seed,
            };
            let final_config = anneal(problem, &ladder, &SaParams {
                seed: repetition_seed(config.seed, 0),
                ..params.clone()
            })?;
            let success_probability = match truth {
                Some(truth) => {
                    Some(estimate_success(problem, truth, &ladder, &params, config.repetitions)?)
                }
                None => None,
            };
            build_result(problem, fit, final_config, success_probability, config, diqa_wall_ms)?
        }
        Some(shots) => {
            // Shot mode: each repetition redraws its own samples, so the
            // fit and warm start vary per repetition.
            let run_rep = |rep: usize| -> Result<(SpinConfiguration, FitOutcome)> {
                let dist =
                    state.sample(shots, derive_seed(config.seed, &[SHOT_STREAM_TAG, rep as u64]))?;
                let fit = fit_stage(&dist, &table, &ladder, config, n)?;
                let params = SaParams {
                    sweeps: config.sweeps,
                    start_index: fit.start_index,
                    initial: fit.warm_start.clone(),
                    seed: repetition_seed(config.seed, rep),
                };
                Ok((anneal(problem, &ladder, &params)?, fit))
            };
            let outcomes: Vec<(SpinConfiguration, FitOutcome)> = (0..config.repetitions)
                .into_par_iter()
                .map(run_rep)
                .collect::<Result<_>>()?;
            let success_probability = truth.map(|truth| {
                let hits =
                    outcomes.iter().filter(|(sigma, _)| truth.contains(sigma)).count();
                hits as f64 / outcomes.len() as f64
            });
            let mut iter = outcomes.into_iter();
            let (final_config, fit) = iter.next().expect("at least one repetition");
            build_result(problem, fit, final_config, success_probability, config, diqa_wall_ms)?
        }
    };
    let mut result = result;
    result.diagnostics.sa_wall_ms = sa_start.elapsed().as_millis() as u64;
    Ok(result)
}

fn build_result(
    problem: &IsingProblem,
    fit: FitOutcome,
    final_config: SpinConfiguration,
    success_probability: Option<f64>,
    config: &QasaConfig,
    diqa_wall_ms: u64,
) -> Result<QasaResult> {
    let diagnostics = QasaDiagnostics {
        skipped_pairs: fit.beta_estimate.as_ref().map_or(0, BetaEstimate::skipped_pairs),
        fallback: fit.fallback,
        sa_steps_executed: config.b - fit.b_prime + 1,
        diqa_best_energy: problem.energy(&fit.diqa_best)?,
        final_energy: problem.energy(&final_config)?,
        diqa_wall_ms,
        sa_wall_ms: 0,
    };
    Ok(QasaResult {
        beta_estimate: fit.beta_estimate,
        b_prime: fit.b_prime,
        diqa_best: fit.diqa_best,
        final_config,
        success_probability,
        diagnostics,
    })
}

/// One instance of a batch run.
#[derive(Debug, Clone, Copy)]
pub struct BatchInstance<'a> {
    pub id: &'a str,
    pub problem: &'a IsingProblem,
    pub truth: Option<&'a GroundTruth>,
}

/// Run QASA over a corpus. Each instance gets a seed derived from the
/// master seed and its id, so the output is keyed by id and independent
/// of instance order and thread scheduling. Per-instance failures are
/// recorded without aborting the batch.
pub fn run_qasa_batch(
    instances: &[BatchInstance<'_>],
    config: &QasaConfig,
) -> Vec<(String, Result<QasaResult>)> {
    let mut results: Vec<(String, Result<QasaResult>)> = instances
        .par_iter()
        .map(|inst| {
            let mut inst_config = config.clone();
            inst_config.seed = derive_seed(config.seed, &[fnv1a64(inst.id)]);
            (inst.id.to_owned(), run_qasa(inst.problem, &inst_config, inst.truth))
        })
        .collect();
    results.sort_by(|a, b| a.0.cmp(&b.0));
    results
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::{brute_force, generate_problem_with_seed};

    fn small_config(p_prime: usize, seed: u64) -> QasaConfig {
        QasaConfig { repetitions: 50, ..QasaConfig::new(p_prime, seed) }
    }

    #[test]
    fn zero_instance_falls_back_to_plain_sa_with_full_success() {
        let p = IsingProblem::new(6, vec![0.0; 6], vec![]).unwrap();
        let truth = brute_force(&p).unwrap();
        let config = QasaConfig { repetitions: 100, ..QasaConfig::new(200, 7) };
        let result = run_qasa(&p, &config, Some(&truth)).unwrap();
        assert!(result.diagnostics.fallback);
        assert!(result.beta_estimate.is_none());
        assert_eq!(result.b_prime, 1);
        assert_eq!(result.diagnostics.sa_steps_executed, 200);
        assert_eq!(result.success_probability, Some(1.0));
    }

    /// With the fit failed and the warm configuration discarded, the SA
    /// stage must be the plain annealing code path exactly: same seeds,
    /// same traces, same outputs.
    #[test]
    fn fallback_reduces_to_plain_sa_trace() {
        let p = IsingProblem::new(8, vec![0.0; 8], vec![]).unwrap();
        let truth = brute_force(&p).unwrap();
        let config = small_config(100, 33);
        let result = run_qasa(&p, &config, Some(&truth)).unwrap();

        let ladder = build_beta_schedule(config.beta0, config.beta_max, config.b).unwrap();
        let params = SaParams { sweeps: config.sweeps, ..SaParams::new(config.seed) };
        let direct =
            estimate_success(&p, &truth, &ladder, &params, config.repetitions).unwrap();
        assert_eq!(result.success_probability, Some(direct));

        let first = anneal(&p, &ladder, &SaParams {
            seed: repetition_seed(config.seed, 0),
            ..params
        })
        .unwrap();
        assert_eq!(result.final_config, first);
    }

    #[test]
    fn runs_are_deterministic_per_seed() {
        let p = generate_problem_with_seed(8, 6, 51).unwrap();
        let truth = brute_force(&p).unwrap();
        let config = small_config(100, 99);
        let a = run_qasa(&p, &config, Some(&truth)).unwrap();
        let b = run_qasa(&p, &config, Some(&truth)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shot_mode_is_deterministic_too() {
        let p = generate_problem_with_seed(8, 6, 52).unwrap();
        let truth = brute_force(&p).unwrap();
        let config = QasaConfig {
            shots: Some(2000),
            repetitions: 20,
            ..QasaConfig::new(100, 5)
        };
        let a = run_qasa(&p, &config, Some(&truth)).unwrap();
        let b = run_qasa(&p, &config, Some(&truth)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn step_accounting_holds() {
        let p = generate_problem_with_seed(10, 6, 53).unwrap();
        let truth = brute_force(&p).unwrap();
        for p_prime in [50, 100, 150, 200] {
            let config = small_config(p_prime, 11);
            let result = run_qasa(&p, &config, Some(&truth)).unwrap();
            assert_eq!(
                result.diagnostics.sa_steps_executed,
                config.b - result.b_prime + 1,
                "p' = {p_prime}"
            );
            assert!((1..=config.b).contains(&result.b_prime));
        }
    }

    #[test]
    fn diagnostics_energies_are_consistent() {
        let p = generate_problem_with_seed(10, 6, 54).unwrap();
        let truth = brute_force(&p).unwrap();
        let result = run_qasa(&p, &small_config(100, 3), Some(&truth)).unwrap();
        assert_eq!(result.diagnostics.diqa_best_energy, p.energy(&result.diqa_best).unwrap());
        assert_eq!(result.diagnostics.final_energy, p.energy(&result.final_config).unwrap());
    }

    #[test]
    fn missing_truth_yields_no_success_probability() {
        let p = generate_problem_with_seed(8, 6, 55).unwrap();
        let result = run_qasa(&p, &small_config(100, 3), None).unwrap();
        assert!(result.success_probability.is_none());
        assert!(result.beta_estimate.is_some());
    }

    #[test]
    fn invalid_configs_rejected() {
        let p = generate_problem_with_seed(6, 4, 56).unwrap();
        assert!(run_qasa(&p, &QasaConfig::new(0, 1), None).is_err());
        assert!(run_qasa(&p, &QasaConfig { p_prime: 300, ..QasaConfig::new(1, 1) }, None).is_err());
        assert!(run_qasa(&p, &QasaConfig { m: 1, ..QasaConfig::new(100, 1) }, None).is_err());
        assert!(run_qasa(&p, &QasaConfig { shots: Some(0), ..QasaConfig::new(100, 1) }, None)
            .is_err());
    }

    #[test]
    fn empty_batch_gives_empty_results() {
        let config = small_config(100, 1);
        assert!(run_qasa_batch(&[], &config).is_empty());
    }

    #[test]
    fn batch_is_deterministic_and_keyed_by_id() {
        let p1 = generate_problem_with_seed(8, 6, 60).unwrap();
        let p2 = generate_problem_with_seed(8, 6, 61).unwrap();
        let t1 = brute_force(&p1).unwrap();
        let t2 = brute_force(&p2).unwrap();
        let forward = vec![
            BatchInstance { id: "a", problem: &p1, truth: Some(&t1) },
            BatchInstance { id: "b", problem: &p2, truth: Some(&t2) },
        ];
        let backward = vec![forward[1], forward[0]];
        let config = small_config(100, 17);
        let run1 = run_qasa_batch(&forward, &config);
        let run2 = run_qasa_batch(&backward, &config);
        assert_eq!(run1.len(), 2);
        for ((id1, r1), (id2, r2)) in run1.iter().zip(&run2) {
            assert_eq!(id1, id2);
            assert_eq!(r1.as_ref().unwrap(), r2.as_ref().unwrap());
        }
    }
}
