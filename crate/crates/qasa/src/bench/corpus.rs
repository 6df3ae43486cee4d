//! Corpus generation and persistence.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::{brute_force, generate_problem_with_seed, GroundTruth, IsingProblem};
use crate::seed::derive_seed;

/// The benchmark sizes of the full reference corpus: even `n` from 10 to
/// 22 (7 sizes; at 100 instances each that is 700 problems).
pub fn paper_default_sizes() -> Vec<usize> {
    (5..=11).map(|i| 2 * i).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
struct ManifestEntry {
    id: String,
    n: usize,
    seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
struct Manifest {
    version: u32,
    seed: u64,
    degree: usize,
    count_per_size: usize,
    sizes: Vec<usize>,
    instances: Vec<ManifestEntry>,
}

/// One corpus member: a problem, its exact ground truth, and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusInstance {
    pub id: String,
    pub problem: IsingProblem,
    pub truth: GroundTruth,
    pub seed: u64,
}

/// How much of a stored corpus to re-verify on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    /// Re-run the enumeration on every 20th instance (5%), plus the first.
    #[default]
    SpotCheck,
    /// Re-run the enumeration on every instance.
    Full,
    None,
}

/// A generated or loaded instance collection, ordered by instance id.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    manifest: Manifest,
    instances: Vec<CorpusInstance>,
}

impl Corpus {
    pub fn instances(&self) -> &[CorpusInstance] {
        &self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.manifest.seed
    }

    pub fn sizes(&self) -> &[usize] {
        &self.manifest.sizes
    }

    pub fn get(&self, id: &str) -> Option<&CorpusInstance> {
        self.instances
            .binary_search_by(|inst| inst.id.as_str().cmp(id))
            .ok()
            .map(|pos| &self.instances[pos])
    }

    /// Instances of one size, in id order.
    pub fn of_size(&self, n: usize) -> impl Iterator<Item = &CorpusInstance> {
        self.instances.iter().filter(move |inst| inst.problem.n() == n)
    }

    /// Write the manifest and per-instance files under `dir`. Output bytes
    /// depend only on the corpus content.
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        let instances_dir = dir.join("instances");
        std::fs::create_dir_all(&instances_dir)?;
        let mut manifest_text = serde_json::to_string_pretty(&self.manifest)?;
        manifest_text.push('\n');
        std::fs::write(dir.join("manifest.json"), manifest_text)?;
        for inst in &self.instances {
            inst.problem.save(instances_dir.join(format!("{}.problem.json", inst.id)))?;
            inst.truth.save(instances_dir.join(format!("{}.truth.json", inst.id)))?;
        }
        Ok(())
    }

    /// Load a corpus directory, re-verifying stored ground truths per
    /// `verify`.
    pub fn load(dir: impl AsRef<Path>, verify: VerifyMode) -> Result<Self> {
        let dir = dir.as_ref();
        let manifest_text = std::fs::read_to_string(dir.join("manifest.json"))?;
        let manifest: Manifest = serde_json::from_str(&manifest_text)?;
        let instances_dir = dir.join("instances");
        let instances: Vec<CorpusInstance> = manifest
            .instances
            .par_iter()
            .enumerate()
            .map(|(pos, entry)| -> Result<CorpusInstance> {
                let problem =
                    IsingProblem::load(instances_dir.join(format!("{}.problem.json", entry.id)))?;
                let truth =
                    GroundTruth::load(instances_dir.join(format!("{}.truth.json", entry.id)))?;
                if problem.n() != entry.n {
                    return Err(Error::invalid(format!(
                        "instance {}: problem has n = {}, manifest says {}",
                        entry.id,
                        problem.n(),
                        entry.n
                    )));
                }
                let reverify = match verify {
                    VerifyMode::None => false,
                    VerifyMode::Full => true,
                    VerifyMode::SpotCheck => pos % 20 == 0,
                };
                if reverify && brute_force(&problem)? != truth {
                    return Err(Error::invalid(format!(
                        "instance {}: stored ground truth does not re-verify",
                        entry.id
                    )));
                }
                Ok(CorpusInstance { id: entry.id.clone(), problem, truth, seed: entry.seed })
            })
            .collect::<Result<_>>()?;
        Ok(Self { manifest, instances })
    }
}

/// Generate a corpus: `count_per_size` instances at each size, with ground
/// truths from exhaustive enumeration. Instance seeds derive from the
/// master seed, the size, and the index, so any subset regenerates
/// identically.
pub fn generate_corpus(
    sizes: &[usize],
    count_per_size: usize,
    degree: usize,
    seed: u64,
) -> Result<Corpus> {
    if sizes.is_empty() || count_per_size == 0 {
        return Err(Error::invalid("corpus needs at least one size and one instance per size"));
    }
    let mut sorted_sizes = sizes.to_vec();
    sorted_sizes.sort_unstable();
    sorted_sizes.dedup();

    let specs: Vec<(usize, usize)> = sorted_sizes
        .iter()
        .flat_map(|&n| (0..count_per_size).map(move |i| (n, i)))
        .collect();
    let instances: Vec<CorpusInstance> = specs
        .par_iter()
        .map(|&(n, i)| -> Result<CorpusInstance> {
            let inst_seed = derive_seed(seed, &[n as u64, i as u64]);
            let problem = generate_problem_with_seed(n, degree, inst_seed)?;
            let truth = brute_force(&problem)?;
            Ok(CorpusInstance { id: instance_id(n, i), problem, truth, seed: inst_seed })
        })
        .collect::<Result<_>>()?;

    let manifest = Manifest {
        version: 1,
        seed,
        degree,
        count_per_size,
        sizes: sorted_sizes,
        instances: instances
            .iter()
            .map(|inst| ManifestEntry { id: inst.id.clone(), n: inst.problem.n(), seed: inst.seed })
            .collect(),
    };
    Ok(Corpus { manifest, instances })
}

fn instance_id(n: usize, index: usize) -> String {
    format!("n{n:02}_i{index:03}")
}
