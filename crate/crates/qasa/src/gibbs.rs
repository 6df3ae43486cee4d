//! Inverse-temperature estimation from an outcome distribution.
//!
//! If outcomes followed a Gibbs distribution `P(σ) ∝ e^{−βE(σ)}`, the
//! intractable partition function would cancel from any probability ratio,
//! leaving
//!
//! ```text
//!   β = (ln P(σ⁽¹⁾) − ln P(σ⁽²⁾)) / (E(σ⁽²⁾) − E(σ⁽¹⁾))
//! ```
//!
//! Real distributions are only approximately Gibbs, so an anchor state
//! `σ⁽¹⁾` is paired with each of the remaining top-m states and the
//! per-pair values are aggregated (median by default). Pairs whose
//! energies tie carry no information and are skipped.
//!
//! The resulting estimate maps onto a starting rung `b'` of a geometric SA
//! ladder by nearest value in log space (the natural metric for a
//! geometric ladder; a linear-space variant is available).

use crate::error::{Error, Result};
use crate::ising::TIE_EPSILON;
use crate::sa::InverseTemperatureSchedule;
use crate::sim::{BasisEnergyTable, OutcomeDistribution};

/// Default number of highest-probability states used for the fit.
pub const DEFAULT_TOP_M: usize = 50;

/// How the anchor state `σ⁽¹⁾` is chosen among the top-m states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AnchorRule {
    /// The state with the second-largest probability. With exact readout on
    /// small instances the largest-probability state is typically a ground
    /// state, which would make the fit trivial; anchoring on the runner-up
    /// exercises the estimator.
    #[default]
    SecondLargest,
    /// The state with the largest probability.
    Largest,
    /// The state with the lowest energy among the top-m.
    LowestEnergy,
}

impl std::str::FromStr for AnchorRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "second" | "second-largest" => Ok(AnchorRule::SecondLargest),
            "first" | "largest" => Ok(AnchorRule::Largest),
            "lowest-energy" => Ok(AnchorRule::LowestEnergy),
            other => Err(Error::invalid(format!("unknown anchor rule '{other}'"))),
        }
    }
}

/// How per-pair β values are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    #[default]
    Median,
    Mean,
}

impl std::str::FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "median" => Ok(Aggregation::Median),
            "mean" => Ok(Aggregation::Mean),
            other => Err(Error::invalid(format!("unknown aggregation '{other}'"))),
        }
    }
}

/// Distance metric for snapping β onto a ladder rung.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepMetric {
    #[default]
    Log,
    Linear,
}

impl std::str::FromStr for StepMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "log" => Ok(StepMetric::Log),
            "linear" => Ok(StepMetric::Linear),
            other => Err(Error::invalid(format!("unknown step metric '{other}'"))),
        }
    }
}

/// The fitted inverse temperature with its supporting pair values.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaEstimate {
    beta: f64,
    pair_values: Vec<f64>,
    anchor_index: u64,
    skipped_pairs: usize,
}

impl BetaEstimate {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The per-pair β samples that entered the aggregate.
    pub fn pair_values(&self) -> &[f64] {
        &self.pair_values
    }

    /// Basis index of the anchor state `σ⁽¹⁾`.
    pub fn anchor_index(&self) -> u64 {
        self.anchor_index
    }

    /// Pairs excluded because their energies tie within [`TIE_EPSILON`].
    pub fn skipped_pairs(&self) -> usize {
        self.skipped_pairs
    }
}

/// The Gibbs ratio for one pair of states.
pub fn beta_from_pair(p1: f64, e1: f64, p2: f64, e2: f64) -> Result<f64> {
    if !(p1 > 0.0) || !(p2 > 0.0) {
        return Err(Error::Domain(format!(
            "pair probabilities must be positive, got {p1} and {p2}"
        )));
    }
    if (e1 - e2).abs() < TIE_EPSILON {
        return Err(Error::DegeneratePair);
    }
    Ok((p1.ln() - p2.ln()) / (e2 - e1))
}

/// Fit β from the top-m states of `dist` (ties by ascending index), with
/// `σ⁽¹⁾` chosen by `anchor` and median aggregation.
pub fn estimate_beta(
    dist: &OutcomeDistribution,
    table: &BasisEnergyTable,
    m: usize,
    anchor: AnchorRule,
) -> Result<BetaEstimate> {
    estimate_beta_with(dist, table, m, anchor, Aggregation::Median)
}

/// [`estimate_beta`] with an explicit aggregation rule.
pub fn estimate_beta_with(
    dist: &OutcomeDistribution,
    table: &BasisEnergyTable,
    m: usize,
    anchor: AnchorRule,
    agg: Aggregation,
) -> Result<BetaEstimate> {
    if m < 2 {
        return Err(Error::invalid(format!("m = {m} must be at least 2")));
    }
    let top: Vec<(u64, f64)> = dist
        .top_by_probability(m)
        .into_iter()
        .filter(|&(_, p)| p > 0.0)
        .collect();
    if top.len() < 2 {
        return Err(Error::EstimationFailure(format!(
            "need at least 2 entries with positive probability, found {}",
            top.len()
        )));
    }

    let anchor_pos = match anchor {
        AnchorRule::Largest => 0,
        AnchorRule::SecondLargest => 1,
        AnchorRule::LowestEnergy => top
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                table.energy(a.0).total_cmp(&table.energy(b.0)).then(a.0.cmp(&b.0))
            })
            .map(|(pos, _)| pos)
            .expect("top is non-empty"),
    };
    let (anchor_index, anchor_prob) = top[anchor_pos];
    let anchor_energy = table.energy(anchor_index);

    let mut pair_values = Vec::with_capacity(top.len() - 1);
    let mut skipped_pairs = 0usize;
    for (pos, &(index, prob)) in top.iter().enumerate() {
        if pos == anchor_pos {
            continue;
        }
        match beta_from_pair(anchor_prob, anchor_energy, prob, table.energy(index)) {
            Ok(value) => pair_values.push(value),
            Err(Error::DegeneratePair) => skipped_pairs += 1,
            Err(other) => return Err(other),
        }
    }
    if pair_values.is_empty() {
        return Err(Error::EstimationFailure(
            "every candidate pair is energy-degenerate".into(),
        ));
    }

    let beta = match agg {
        Aggregation::Median => crate::stats::median(&pair_values),
        Aggregation::Mean => pair_values.iter().sum::<f64>() / pair_values.len() as f64,
    };
    Ok(BetaEstimate { beta, pair_values, anchor_index, skipped_pairs })
}

/// Map a fitted β onto the 1-based rung number `b'` of the ladder whose
/// value is closest to it (log-space by default). Out-of-range values
/// clamp to the first or last rung; a non-positive fit clamps to 1 with a
/// warning, meaning "start from scratch".
pub fn beta_to_start_step(beta: f64, schedule: &InverseTemperatureSchedule) -> usize {
    beta_to_start_step_with(beta, schedule, StepMetric::Log)
}

/// [`beta_to_start_step`] with an explicit metric.
pub fn beta_to_start_step_with(
    beta: f64,
    schedule: &InverseTemperatureSchedule,
    metric: StepMetric,
) -> usize {
    if !(beta > 0.0) {
        log::warn!("non-positive beta estimate {beta}; starting the ladder from rung 1");
        return 1;
    }
    let betas = schedule.betas();
    if beta <= betas[0] {
        return 1;
    }
    if beta >= betas[betas.len() - 1] {
        return betas.len();
    }
    let distance = |rung: f64| match metric {
        StepMetric::Log => (rung.ln() - beta.ln()).abs(),
        StepMetric::Linear => (rung - beta).abs(),
    };
    let (best, _) = betas
        .iter()
        .enumerate()
        .map(|(i, &rung)| (i, distance(rung)))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("schedule is non-empty");
    best + 1
}
