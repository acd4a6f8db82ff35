//! Seeded Monte Carlo estimation of the two volumes a hyperplane cuts from
//! an implicit body.
//!
//! Samples are drawn in fixed-size chunks. Chunk `c` uses a ChaCha8 stream
//! keyed by `(seed, c)`, so the sample at a given index never depends on how
//! chunks are scheduled across threads, and hit counts are summed as
//! integers.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::body::{AffineFunctional, ImplicitBody};
use crate::error::{Error, Result};

const CHUNK: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    /// Volume of the part where the functional is negative.
    pub side_minus: f64,
    /// Volume of the part where the functional is non-negative.
    pub side_plus: f64,
    /// The larger of the two per-side standard errors.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    #[serde(skip)]
    hits_minus: u64,
    #[serde(skip)]
    hits_plus: u64,
    #[serde(skip)]
    box_volume: f64,
}

impl McEstimate {
    fn from_counts(hits_minus: u64, hits_plus: u64, samples: u64, seed: u64, box_volume: f64) -> Self {
        let se = |h: u64| binomial_stderr(h, samples, box_volume);
        let n = samples as f64;
        Self {
            side_minus: box_volume * hits_minus as f64 / n,
            side_plus: box_volume * hits_plus as f64 / n,
            stderr: se(hits_minus).max(se(hits_plus)),
            samples,
            seed,
            hits_minus,
            hits_plus,
            box_volume,
        }
    }

    pub fn stderr_minus(&self) -> f64 {
        binomial_stderr(self.hits_minus, self.samples, self.box_volume)
    }

    pub fn stderr_plus(&self) -> f64 {
        binomial_stderr(self.hits_plus, self.samples, self.box_volume)
    }

    /// Estimate of the whole body volume.
    pub fn total(&self) -> f64 {
        self.side_minus + self.side_plus
    }

    pub fn total_stderr(&self) -> f64 {
        binomial_stderr(self.hits_minus + self.hits_plus, self.samples, self.box_volume)
    }

    pub fn hits(&self) -> (u64, u64) {
        (self.hits_minus, self.hits_plus)
    }
}

fn binomial_stderr(hits: u64, samples: u64, box_volume: f64) -> f64 {
    if samples == 0 {
        return f64::INFINITY;
    }
    let n = samples as f64;
    let p = hits as f64 / n;
    box_volume * (p * (1.0 - p) / n).sqrt()
}

#[inline]
fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn chunk_counts(body: &ImplicitBody, plane: &AffineFunctional, seed: u64, chunk: u64, count: u64) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let lower = body.lower();
    let upper = body.upper();
    let mut x = vec![0.0; body.dim()];
    let (mut minus, mut plus) = (0u64, 0u64);
    for _ in 0..count {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = lower[i] + (upper[i] - lower[i]) * unit_f64(&mut rng);
        }
        if body.contains(&x) {
            if plane.eval(&x) < 0.0 {
                minus += 1;
            } else {
                plus += 1;
            }
        }
    }
    (minus, plus)
}

/// Uniform rejection sampling in the body's bounding box; points inside the
/// body are split by the sign of `plane`.
pub fn mc_cut_volume(body: &ImplicitBody, plane: &AffineFunctional, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::Domain("Monte Carlo sample count must be positive".into()));
    }
    if plane.normal.len() != body.dim() {
        return Err(Error::Domain(format!(
            "hyperplane dimension {} does not match body dimension {}",
            plane.normal.len(),
            body.dim()
        )));
    }
    let box_volume = body.box_volume();
    if box_volume.is_nan() || box_volume <= 0.0 {
        return Err(Error::Domain("bounding box has zero volume".into()));
    }
    let chunks = samples.div_ceil(CHUNK);
    let (minus, plus) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = CHUNK.min(samples - c * CHUNK);
            chunk_counts(body, plane, seed, c, count)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(McEstimate::from_counts(minus, plus, samples, seed, box_volume))
}
