//! Problem and ground-truth file formats.
//!
//! A problem file is a single JSON object:
//!
//! ```json
//! {
//!   "n": 10,
//!   "h": [0.5, -1.2, ...],                 // length n
//!   "couplings": [[0, 1, -0.3], ...],      // [i, j, J] with i < j
//!   "seed": 42                             // optional provenance
//! }
//! ```
//!
//! Numbers are written in shortest round-trip form, so one-decimal
//! coefficients survive a save/load cycle bit-exactly. A ground-truth
//! sidecar holds `{ "n", "min_energy", "ground_states": [indices] }`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Coupling, GroundTruth, IsingProblem};
use crate::error::Result;

/// Serialised form of an [`IsingProblem`].
#[derive(Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: usize,
    pub h: Vec<f64>,
    pub couplings: Vec<Coupling>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl From<&IsingProblem> for ProblemFile {
    fn from(p: &IsingProblem) -> Self {
        ProblemFile {
            n: p.n(),
            h: p.h().to_vec(),
            couplings: p.couplings().to_vec(),
            seed: p.seed(),
        }
    }
}

impl IsingProblem {
    /// Parse and validate a problem from its JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text)?;
        let mut p = IsingProblem::new(file.n, file.h, file.couplings)?;
        if let Some(seed) = file.seed {
            p = p.with_seed(seed);
        }
        Ok(p)
    }

    /// Serialise to pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&ProblemFile::from(self))
            .expect("problem serialisation cannot fail");
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

impl GroundTruth {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(self).expect("ground truth serialisation cannot fail");
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
