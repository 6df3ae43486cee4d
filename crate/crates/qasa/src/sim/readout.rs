//! Measurement readout: success probability, top-m extraction, and shot
//! sampling.

use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Statevector;
use crate::error::{Error, Result};
use crate::ising::GroundTruth;

/// Whether a distribution holds exact statevector probabilities or
/// shot-estimated frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistributionSource {
    Exact,
    ShotSampled,
}

/// A sparse map from basis index to probability.
///
/// Entries are stored by ascending basis index. An exact distribution
/// truncated to the top-m states sums to at most 1; a shot-sampled one
/// holds `count/shots` frequencies and sums to exactly 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    source: DistributionSource,
    /// 0 for exact distributions.
    shots: u64,
    entries: Vec<(u64, f64)>,
}

impl OutcomeDistribution {
    /// Build an exact distribution from `(index, probability)` pairs;
    /// indices must be strictly ascending and probabilities nonnegative.
    pub fn exact(entries: Vec<(u64, f64)>) -> Result<Self> {
        if entries.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::invalid("distribution entries must have strictly ascending indices"));
        }
        if entries.iter().any(|&(_, p)| !(p >= 0.0)) {
            return Err(Error::invalid("distribution probabilities must be nonnegative"));
        }
        Ok(Self { source: DistributionSource::Exact, shots: 0, entries })
    }

    pub fn source(&self) -> DistributionSource {
        self.source
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    /// `(basis index, probability)` pairs by ascending index.
    pub fn entries(&self) -> &[(u64, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn probability(&self, index: u64) -> f64 {
        match self.entries.binary_search_by_key(&index, |&(k, _)| k) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0.0,
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.entries.iter().map(|&(_, p)| p).sum()
    }

    /// The `m` highest-probability entries, ties broken by ascending basis
    /// index; clips `m` to the available entry count.
    pub fn top_by_probability(&self, m: usize) -> Vec<(u64, f64)> {
        let mut sorted = self.entries.clone();
        sorted.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        sorted.truncate(m);
        sorted
    }

    /// The entry with the lowest energy under `energies`, ties broken by
    /// ascending basis index.
    pub fn lowest_energy_entry(&self, energies: &super::BasisEnergyTable) -> Option<(u64, f64)> {
        self.entries
            .iter()
            .copied()
            .min_by(|a, b| energies.energy(a.0).total_cmp(&energies.energy(b.0)).then(a.0.cmp(&b.0)))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dist: OutcomeDistribution = serde_json::from_str(text)?;
        if dist.entries.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::invalid("distribution entries must have strictly ascending indices"));
        }
        if dist.entries.iter().any(|&(_, p)| !(p >= 0.0)) {
            return Err(Error::invalid("distribution probabilities must be nonnegative"));
        }
        Ok(dist)
    }

    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(self).expect("distribution serialisation cannot fail");
        s.push('\n');
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_json())?)
    }
}

impl Statevector {
    /// Probability mass on the ground-state set: `Σ |amp_k|²` over all
    /// minimisers recorded in `truth`.
    pub fn success_probability(&self, truth: &GroundTruth) -> Result<f64> {
        if truth.n() != self.n_qubits() {
            return Err(Error::invalid(format!(
                "ground truth covers {} variables, state has {}",
                truth.n(),
                self.n_qubits()
            )));
        }
        Ok(truth.ground_state_indices().iter().map(|&k| self.probability(k)).sum())
    }

    /// The `m` highest-probability basis states with their exact
    /// probabilities; ties broken by ascending basis index.
    pub fn extract_top_m(&self, m: usize) -> Result<OutcomeDistribution> {
        let dim = self.amplitudes().len();
        if m < 1 || m > dim {
            return Err(Error::invalid(format!("m = {m} outside [1, 2^n = {dim}]")));
        }
        let mut pairs: Vec<(u64, f64)> = self
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(k, a)| (k as u64, a.norm_sqr()))
            .collect();
        // Highest probability first, ties by ascending index.
        let cmp = |a: &(u64, f64), b: &(u64, f64)| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0));
        if m < dim {
            pairs.select_nth_unstable_by(m - 1, cmp);
            pairs.truncate(m);
        }
        pairs.sort_by_key(|&(k, _)| k);
        Ok(OutcomeDistribution { source: DistributionSource::Exact, shots: 0, entries: pairs })
    }

    /// Multinomial sample of `shots` measurement outcomes; deterministic
    /// for a fixed seed.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<OutcomeDistribution> {
        if shots < 1 {
            return Err(Error::invalid("shots must be at least 1"));
        }
        let mut cumulative = Vec::with_capacity(self.amplitudes().len());
        let mut acc = 0.0f64;
        for a in self.amplitudes() {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        let total = acc;

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = std::collections::BTreeMap::<u64, u64>::new();
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * total;
            let k = cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1);
            *counts.entry(k as u64).or_insert(0) += 1;
        }
        let entries = counts
            .into_iter()
            .map(|(k, c)| (k, c as f64 / shots as f64))
            .collect();
        Ok(OutcomeDistribution { source: DistributionSource::ShotSampled, shots, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::{brute_force, generate_problem_with_seed, IsingProblem};
    use crate::sim::BasisEnergyTable;
    use num_complex::Complex64;

    fn one_hot(n: usize, k: usize) -> Statevector {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[k] = Complex64::new(1.0, 0.0);
        Statevector::from_amplitudes(amps).unwrap()
    }

    #[test]
    fn uniform_success_probability_is_degeneracy_fraction() {
        let p = generate_problem_with_seed(8, 6, 77).unwrap();
        let truth = brute_force(&p).unwrap();
        let st = Statevector::uniform(8).unwrap();
        let got = st.success_probability(&truth).unwrap();
        let want = truth.degeneracy() as f64 / 256.0;
        assert!((got - want).abs() <= 1e-12);
    }

    #[test]
    fn concentrated_state_has_unit_success() {
        let p = generate_problem_with_seed(6, 4, 78).unwrap();
        let truth = brute_force(&p).unwrap();
        let k = truth.ground_state_indices()[0];
        let st = one_hot(6, k as usize);
        assert!((st.success_probability(&truth).unwrap() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn success_probability_size_mismatch_rejected() {
        let p = generate_problem_with_seed(6, 4, 79).unwrap();
        let truth = brute_force(&p).unwrap();
        let st = Statevector::uniform(5).unwrap();
        assert!(st.success_probability(&truth).is_err());
    }

    #[test]
    fn zero_problem_success_is_one_after_any_evolution() {
        let p = IsingProblem::new(5, vec![0.0; 5], vec![]).unwrap();
        let truth = brute_force(&p).unwrap();
        let angles =
            crate::schedule::AngleSequence::from_angles(vec![-0.4, 0.7], vec![0.3, 1.1], 0.8)
                .unwrap();
        let st = crate::sim::evolve(&p, &angles).unwrap();
        assert!((st.success_probability(&truth).unwrap() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn top_m_ties_break_by_ascending_index() {
        let st = Statevector::uniform(3).unwrap();
        let top = st.extract_top_m(3).unwrap();
        let expect = 1.0 / 8.0;
        assert_eq!(top.entries().len(), 3);
        for (k, &(index, prob)) in top.entries().iter().enumerate() {
            assert_eq!(index, k as u64);
            assert!((prob - expect).abs() <= 1e-15);
        }
        assert_eq!(top.source(), DistributionSource::Exact);
        assert_eq!(top.shots(), 0);
    }

    #[test]
    fn top_one_of_one_hot_state() {
        let st = one_hot(4, 9);
        let top = st.extract_top_m(1).unwrap();
        assert_eq!(top.entries(), &[(9u64, 1.0)]);
    }

    #[test]
    fn top_m_matches_full_sort_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let st = crate::sim::state::tests::random_state(10, &mut rng);
        let top = st.extract_top_m(50).unwrap();

        // Oracle: stable full sort of all probabilities.
        let mut all: Vec<(u64, f64)> =
            (0..1024u64).map(|k| (k, st.probability(k))).collect();
        all.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        all.truncate(50);
        all.sort_by_key(|&(k, _)| k);
        assert_eq!(top.entries(), all.as_slice());
    }

    #[test]
    fn top_m_rejects_out_of_range() {
        let st = Statevector::uniform(3).unwrap();
        assert!(st.extract_top_m(0).is_err());
        assert!(st.extract_top_m(9).is_err());
    }

    #[test]
    fn sampling_one_hot_state() {
        let st = one_hot(4, 5);
        let dist = st.sample(1000, 7).unwrap();
        assert_eq!(dist.entries(), &[(5u64, 1.0)]);
        assert_eq!(dist.source(), DistributionSource::ShotSampled);
        assert_eq!(dist.shots(), 1000);
    }

    #[test]
    fn sampling_uniform_state_within_binomial_bounds() {
        let st = Statevector::uniform(2).unwrap();
        let shots = 1_000_000u64;
        let dist = st.sample(shots, 99).unwrap();
        // Each outcome ~ Binomial(shots, 1/4); 5σ bound.
        let p = 0.25;
        let sd = (p * (1.0 - p) / shots as f64).sqrt();
        for k in 0..4u64 {
            assert!((dist.probability(k) - p).abs() <= 5.0 * sd, "index {k}");
        }
        assert!((dist.total_mass() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let p = generate_problem_with_seed(6, 4, 80).unwrap();
        let angles =
            crate::schedule::AngleSequence::from_angles(vec![-0.4; 3], vec![0.5; 3], 0.8).unwrap();
        let st = crate::sim::evolve(&p, &angles).unwrap();
        let a = st.sample(5000, 1234).unwrap();
        let b = st.sample(5000, 1234).unwrap();
        assert_eq!(a, b);
        let c = st.sample(5000, 1235).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn readouts_are_global_phase_invariant() {
        let p = generate_problem_with_seed(6, 4, 81).unwrap();
        let truth = brute_force(&p).unwrap();
        let angles =
            crate::schedule::AngleSequence::from_angles(vec![-0.3; 2], vec![0.4; 2], 0.8).unwrap();
        let st = crate::sim::evolve(&p, &angles).unwrap();
        let mut rotated = st.clone();
        rotated.apply_global_phase(1.234);

        let a = st.success_probability(&truth).unwrap();
        let b = rotated.success_probability(&truth).unwrap();
        assert!((a - b).abs() <= 1e-12);

        let ta = st.extract_top_m(10).unwrap();
        let tb = rotated.extract_top_m(10).unwrap();
        let idx = |d: &OutcomeDistribution| d.entries().iter().map(|&(k, _)| k).collect::<Vec<_>>();
        assert_eq!(idx(&ta), idx(&tb));
        for (x, y) in ta.entries().iter().zip(tb.entries()) {
            assert!((x.1 - y.1).abs() <= 1e-12);
        }

        assert_eq!(st.sample(2000, 5).unwrap(), rotated.sample(2000, 5).unwrap());
    }

    #[test]
    fn lowest_energy_entry_scans_all_entries() {
        let p = IsingProblem::new(2, vec![1.0, -1.0], vec![(0, 1, 0.5)]).unwrap();
        let table = BasisEnergyTable::build(&p).unwrap();
        let st = Statevector::uniform(2).unwrap();
        let dist = st.extract_top_m(4).unwrap();
        // index 1 has energy −2.5, the global minimum.
        assert_eq!(dist.lowest_energy_entry(&table).unwrap().0, 1);
    }

    #[test]
    fn distribution_json_roundtrip_and_validation() {
        let st = Statevector::uniform(3).unwrap();
        let dist = st.extract_top_m(4).unwrap();
        let text = dist.to_json();
        assert_eq!(OutcomeDistribution::from_json(&text).unwrap(), dist);
        assert!(OutcomeDistribution::from_json(
            r#"{"source":"exact","shots":0,"entries":[[1,0.5],[0,0.5]]}"#
        )
        .is_err());
        assert!(OutcomeDistribution::from_json(
            r#"{"source":"exact","shots":0,"entries":[[0,-0.5]]}"#
        )
        .is_err());
    }
}
