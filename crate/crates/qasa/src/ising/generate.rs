//! Random degree-regular instance generation.
//!
//! The coupling graph is sampled with the configuration model: each vertex
//! contributes `degree` stubs, the stub list is shuffled and paired, and
//! the outcome is rejected (and resampled wholesale) whenever it contains a
//! self-loop or a multi-edge. Conditioning on simplicity this way is
//! near-uniform over simple regular graphs and cheap at the sizes used
//! here.
//!
//! Coefficients are drawn uniformly over the one-decimal grids
//! `h_i ∈ {−2.0, −1.9, …, 2.0}` and `J_ij ∈ {−1.0, …, 1.0}` by integer
//! draw, so every grid value carries equal probability mass and the stored
//! floats are exactly the one-decimal values.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Coupling, IsingProblem};
use crate::error::{Error, Result};

const H_GRID_TENTHS: i32 = 20; // h ∈ [-2, 2]
const J_GRID_TENTHS: i32 = 10; // J ∈ [-1, 1]

/// Sample a simple `degree`-regular instance on `n` vertices.
///
/// Requires `n · degree` even and `degree < n`. Deterministic for a fixed
/// generator state.
pub fn generate_problem<R: Rng + ?Sized>(n: usize, degree: usize, rng: &mut R) -> Result<IsingProblem> {
    if degree >= n {
        return Err(Error::invalid(format!(
            "degree {degree} infeasible for n = {n}: need degree < n"
        )));
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "degree {degree} infeasible for n = {n}: n * degree must be even"
        )));
    }

    let edges = sample_simple_regular_edges(n, degree, rng);
    let h: Vec<f64> = (0..n).map(|_| grid_draw(rng, H_GRID_TENTHS)).collect();
    let couplings: Vec<Coupling> =
        edges.into_iter().map(|(i, j)| (i, j, grid_draw(rng, J_GRID_TENTHS))).collect();
    IsingProblem::new(n, h, couplings)
}

/// As [`generate_problem`], owning its generator: seeds a fresh stream and
/// records the seed on the instance for provenance.
pub fn generate_problem_with_seed(n: usize, degree: usize, seed: u64) -> Result<IsingProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(generate_problem(n, degree, &mut rng)?.with_seed(seed))
}

/// Uniform draw from the grid `{-limit, …, limit} / 10`.
fn grid_draw<R: Rng + ?Sized>(rng: &mut R, limit_tenths: i32) -> f64 {
    f64::from(rng.gen_range(-limit_tenths..=limit_tenths)) / 10.0
}

/// Configuration-model pairing with whole-sample rejection of non-simple
/// outcomes. Returns edges as `(i, j)` with `i < j`, sorted.
fn sample_simple_regular_edges<R: Rng + ?Sized>(
    n: usize,
    degree: usize,
    rng: &mut R,
) -> Vec<(usize, usize)> {
    let m = n * degree / 2;
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    let mut seen = std::collections::HashSet::with_capacity(m);
    loop {
        stubs.shuffle(rng);
        seen.clear();
        let mut simple = true;
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                simple = false;
                break;
            }
        }
        if simple {
            let mut edges: Vec<(usize, usize)> = seen.drain().collect();
            edges.sort_unstable();
            return edges;
        }
    }
}
