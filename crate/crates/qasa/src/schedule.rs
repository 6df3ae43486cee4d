//! Annealing schedules and their discretisation into circuit angles.
//!
//! A schedule is a sampled curve `(s, A(s), B(s))` with `s ∈ [0, 1]` and
//! `A`, `B` in GHz: `A` is the transverse (mixer) envelope, decreasing to
//! zero, and `B` is the problem envelope, growing from zero. Discretising
//! the anneal into `p` layers on the grid `s_l = l/p` gives one
//! (problem-phase, mixer) angle pair per layer:
//!
//! ```text
//!   δ_l = −τ (A(s_{l+1}) + A(s_l)) / 2      l = 1, …, p−1   (bridged)
//!   δ_p = −τ A(s_p) / 2                                      (terminal half step)
//!   γ_l = τ B(s_l)
//! ```
//!
//! with `A`, `B` first converted from GHz to angular units by a factor of
//! `1/4π` (`1/2π` for cycles → radians and `1/2` from the annealing
//! Hamiltonian's convention). With `τ` in nanoseconds and the envelopes in
//! GHz the products above are radians. The bridged/terminal split is the
//! second-order Suzuki-Trotter form: interior mixer angles average the two
//! surrounding grid points and the final layer takes a half step.
//!
//! The crate bundles one hardware-style schedule table (see
//! [`AnnealSchedule::bundled`]) and a two-point linear fallback
//! ([`AnnealSchedule::synthetic_linear`]).

use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};

/// GHz → angular units: 1/(4π).
pub const GHZ_TO_ANGULAR: f64 = 1.0 / (4.0 * std::f64::consts::PI);

/// Default per-step time in nanoseconds.
pub const DEFAULT_TAU_NS: f64 = 0.8;

/// Default endpoints of the synthetic linear fallback schedule, in GHz.
pub const SYNTHETIC_A0_GHZ: f64 = 6.0;
pub const SYNTHETIC_B1_GHZ: f64 = 12.0;

/// One row of a schedule table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchedulePoint {
    pub s: f64,
    pub a_ghz: f64,
    pub b_ghz: f64,
}

/// A validated, interpolatable annealing schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealSchedule {
    samples: Vec<SchedulePoint>,
}

impl AnnealSchedule {
    /// Validate a sample list: `s` strictly increasing from exactly 0 to
    /// exactly 1. Monotonicity violations of `A`/`B` and a nonzero `A(1)`
    /// are logged as warnings, not errors.
    pub fn new(samples: Vec<SchedulePoint>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid("schedule needs at least 2 samples"));
        }
        if samples[0].s != 0.0 {
            return Err(Error::invalid(format!("first s is {}, expected 0", samples[0].s)));
        }
        if samples[samples.len() - 1].s != 1.0 {
            return Err(Error::invalid(format!(
                "last s is {}, expected 1",
                samples[samples.len() - 1].s
            )));
        }
        for w in samples.windows(2) {
            if w[1].s <= w[0].s {
                return Err(Error::invalid(format!(
                    "s values must be strictly increasing ({} then {})",
                    w[0].s, w[1].s
                )));
            }
        }
        let tol = 1e-9;
        if samples.windows(2).any(|w| w[1].a_ghz > w[0].a_ghz + tol) {
            log::warn!("schedule: A(s) is not non-increasing");
        }
        if samples.windows(2).any(|w| w[1].b_ghz < w[0].b_ghz - tol) {
            log::warn!("schedule: B(s) is not non-decreasing");
        }
        let a_end = samples[samples.len() - 1].a_ghz;
        if a_end.abs() > 1e-6 {
            log::warn!("schedule: A(1) = {a_end} GHz; expected ~0 for a complete anneal");
        }
        Ok(Self { samples })
    }

    /// Parse a delimiter-separated table with a header row naming columns
    /// `s`, `A_GHz`, `B_GHz` (any order, case-insensitive; comma or
    /// whitespace delimited). Lines starting with `#` are comments.
    pub fn parse(reader: impl BufRead) -> Result<Self> {
        let mut samples = Vec::new();
        let mut columns: Option<(usize, usize, usize)> = None;
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = if trimmed.contains(',') {
                trimmed.split(',').map(str::trim).collect()
            } else {
                trimmed.split_whitespace().collect()
            };
            match columns {
                None => {
                    let find = |name: &str| {
                        fields.iter().position(|f| f.eq_ignore_ascii_case(name)).ok_or_else(|| {
                            Error::Format {
                                line: lineno,
                                msg: format!("header missing column '{name}'"),
                            }
                        })
                    };
                    columns = Some((find("s")?, find("A_GHz")?, find("B_GHz")?));
                }
                Some((si, ai, bi)) => {
                    let parse = |pos: usize, name: &str| -> Result<f64> {
                        fields
                            .get(pos)
                            .ok_or_else(|| Error::Format {
                                line: lineno,
                                msg: format!("missing '{name}' field"),
                            })?
                            .parse::<f64>()
                            .map_err(|e| Error::Format {
                                line: lineno,
                                msg: format!("bad '{name}' value: {e}"),
                            })
                    };
                    samples.push(SchedulePoint {
                        s: parse(si, "s")?,
                        a_ghz: parse(ai, "A_GHz")?,
                        b_ghz: parse(bi, "B_GHz")?,
                    });
                }
            }
        }
        if columns.is_none() {
            return Err(Error::Format { line: 1, msg: "empty schedule file".into() });
        }
        // Re-map validation failures onto a format error so callers see a
        // file-level diagnostic.
        Self::new(samples).map_err(|e| match e {
            Error::InvalidArgument(msg) => Error::Format { line: 0, msg },
            other => other,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::parse(std::io::BufReader::new(file))
    }

    /// The hardware-style schedule table shipped with the crate: a smooth
    /// 201-row approximation to the published `dwave_2000Q_6` annealing
    /// schedule shape (see the data file header for the exact generating
    /// curve). All schedule-dependent reference numbers in this crate are
    /// stated against this table.
    pub fn bundled() -> Self {
        static CSV: &str = include_str!("../data/dwave_2000q6_style.csv");
        Self::parse(std::io::Cursor::new(CSV)).expect("bundled schedule table is valid")
    }

    /// Two-point linear fallback: `A(s) = a0·(1−s)`, `B(s) = b1·s`.
    /// Piecewise-linear interpolation reproduces these exactly.
    pub fn synthetic_linear(a0_ghz: f64, b1_ghz: f64) -> Self {
        Self {
            samples: vec![
                SchedulePoint { s: 0.0, a_ghz: a0_ghz, b_ghz: 0.0 },
                SchedulePoint { s: 1.0, a_ghz: 0.0, b_ghz: b1_ghz },
            ],
        }
    }

    pub fn samples(&self) -> &[SchedulePoint] {
        &self.samples
    }

    /// Piecewise-linear interpolation of `(A, B)` in GHz at `s ∈ [0, 1]`;
    /// exact at sample points.
    pub fn evaluate(&self, s: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::invalid(format!("s = {s} outside [0, 1]")));
        }
        let samples = &self.samples;
        // partition_point: first sample with s_k >= s.
        let hi = samples.partition_point(|pt| pt.s < s);
        if samples[hi].s == s {
            return Ok((samples[hi].a_ghz, samples[hi].b_ghz));
        }
        let (lo, hi) = (&samples[hi - 1], &samples[hi]);
        let t = (s - lo.s) / (hi.s - lo.s);
        Ok((lo.a_ghz + t * (hi.a_ghz - lo.a_ghz), lo.b_ghz + t * (hi.b_ghz - lo.b_ghz)))
    }

    /// Discretise into the full `p`-layer angle sequence (grid `s_l = l/p`,
    /// terminal half-step mixer angle at layer `p`).
    pub fn discretize(&self, p: usize, tau_ns: f64, opts: DiscretizeOptions) -> Result<AngleSequence> {
        self.discretize_prefix(p, p, tau_ns, opts)
    }

    /// The first `p_prime` layers of the full `p`-layer sequence, for an
    /// anneal that is interrupted after `p_prime` steps.
    ///
    /// For `p_prime < p` the last layer keeps the bridged mixer angle by
    /// default, since the anneal is interrupted rather than completed;
    /// setting [`DiscretizeOptions::terminal_delta`] applies the terminal
    /// half-step form at `p_prime` instead. At `p_prime = p` the terminal
    /// form always applies.
    pub fn discretize_prefix(
        &self,
        p: usize,
        p_prime: usize,
        tau_ns: f64,
        opts: DiscretizeOptions,
    ) -> Result<AngleSequence> {
        if p < 1 {
            return Err(Error::invalid("p must be at least 1"));
        }
        if p_prime < 1 || p_prime > p {
            return Err(Error::invalid(format!("p' = {p_prime} outside [1, p = {p}]")));
        }
        if !(tau_ns > 0.0) {
            return Err(Error::invalid(format!("tau = {tau_ns} ns must be positive")));
        }

        let grid: Vec<f64> = (1..=p_prime).map(|l| l as f64 / p as f64).collect();
        let a_of = |l: usize| -> Result<f64> {
            // 1-based layer index on the full grid.
            Ok(self.evaluate(l as f64 / p as f64)?.0 * GHZ_TO_ANGULAR)
        };

        let mut deltas = Vec::with_capacity(p_prime);
        let mut gammas = Vec::with_capacity(p_prime);
        for l in 1..=p_prime {
            let terminal = l == p || (l == p_prime && opts.terminal_delta);
            let delta = if terminal {
                -tau_ns * a_of(l)? / 2.0
            } else {
                -tau_ns * (a_of(l + 1)? + a_of(l)?) / 2.0
            };
            deltas.push(delta);
            let b = self.evaluate(l as f64 / p as f64)?.1 * GHZ_TO_ANGULAR;
            gammas.push(if opts.include_tau_in_gamma { tau_ns * b } else { b });
        }

        Ok(AngleSequence { deltas, gammas, tau_ns, grid })
    }
}

/// Options for [`AnnealSchedule::discretize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscretizeOptions {
    /// Multiply the problem angles by the per-step time `τ` (default). When
    /// false, `γ_l` is the bare converted envelope value `B(s_l)/4π`.
    pub include_tau_in_gamma: bool,
    /// Apply the terminal half-step mixer form at the end of a truncated
    /// prefix (`p' < p`). Ignored for full sequences, where layer `p` is
    /// always terminal.
    pub terminal_delta: bool,
}

impl Default for DiscretizeOptions {
    fn default() -> Self {
        Self { include_tau_in_gamma: true, terminal_delta: false }
    }
}

/// A discretised angle sequence: one `(γ_l, δ_l)` pair per layer.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSequence {
    deltas: Vec<f64>,
    gammas: Vec<f64>,
    tau_ns: f64,
    grid: Vec<f64>,
}

impl AngleSequence {
    /// Construct directly from angle lists (mostly useful in tests).
    pub fn from_angles(deltas: Vec<f64>, gammas: Vec<f64>, tau_ns: f64) -> Result<Self> {
        if deltas.len() != gammas.len() {
            return Err(Error::invalid("deltas and gammas must have equal length"));
        }
        if deltas.is_empty() {
            return Err(Error::invalid("angle sequence must have at least one layer"));
        }
        let p = deltas.len();
        let grid = (1..=p).map(|l| l as f64 / p as f64).collect();
        Ok(Self { deltas, gammas, tau_ns, grid })
    }

    /// Layer count.
    pub fn p(&self) -> usize {
        self.deltas.len()
    }

    /// Mixer angle of layer `l` (0-based).
    pub fn delta(&self, l: usize) -> f64 {
        self.deltas[l]
    }

    /// Problem-phase angle of layer `l` (0-based).
    pub fn gamma(&self, l: usize) -> f64 {
        self.gammas[l]
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn tau_ns(&self) -> f64 {
        self.tau_ns
    }

    /// The `s_l` grid values behind each layer.
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }
}
