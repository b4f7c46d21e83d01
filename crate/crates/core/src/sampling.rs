//! Seeded pair sampling shared by construction-time checks and the lab.
//!
//! Trials are split into fixed-size chunks; chunk `c` draws from a ChaCha8
//! stream `c` of the configured seed, so results do not depend on how rayon
//! schedules the chunks.

use crate::error::Result;
use crate::hilbert::Vector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicUsize, Ordering};

const CHUNK: usize = 1024;

/// Seed used by construction-time certificate checks.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
/// Pairs sampled by construction-time certificate checks.
pub const CONSTRUCTION_TRIALS: usize = 1000;

/// Axis-aligned cube `[lo, hi]ⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingBox {
    pub lo: f64,
    pub hi: f64,
}

impl Default for SamplingBox {
    fn default() -> Self {
        SamplingBox { lo: -10.0, hi: 10.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerSettings {
    pub trials: usize,
    pub seed: u64,
    #[serde(rename = "box", default)]
    pub sampling_box: SamplingBox,
    /// Half the pairs are drawn as `y = x + r·u` with `r` log-uniform in
    /// `[1e-3, 1e3]` and `u` a uniform unit direction.
    #[serde(default)]
    pub heavy_tail: bool,
}

impl SamplerSettings {
    pub fn new(trials: usize, seed: u64) -> Self {
        SamplerSettings {
            trials,
            seed,
            sampling_box: SamplingBox::default(),
            heavy_tail: false,
        }
    }

    pub fn heavy_tail(mut self, on: bool) -> Self {
        self.heavy_tail = on;
        self
    }

    pub fn with_box(mut self, lo: f64, hi: f64) -> Self {
        self.sampling_box = SamplingBox { lo, hi };
        self
    }

    pub(crate) fn construction() -> Self {
        SamplerSettings::new(CONSTRUCTION_TRIALS, DEFAULT_SEED)
    }
}

pub(crate) fn point<R: Rng>(rng: &mut R, dim: usize, b: SamplingBox) -> Vector {
    Vector::raw((0..dim).map(|_| rng.random_range(b.lo..=b.hi)).collect())
}

pub(crate) fn unit_direction<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let g = Vector::raw((0..dim).map(|_| rng.sample(StandardNormal)).collect());
        let n = g.norm();
        if n > 1e-12 {
            return g.scale(1.0 / n);
        }
    }
}

pub(crate) fn pair<R: Rng>(rng: &mut R, dim: usize, s: &SamplerSettings) -> (Vector, Vector) {
    let x = point(rng, dim, s.sampling_box);
    if s.heavy_tail && rng.random_bool(0.5) {
        let r = 10f64.powf(rng.random_range(-3.0..=3.0));
        let u = unit_direction(rng, dim);
        let y = x.axpy(r, &u);
        (x, y)
    } else {
        let y = point(rng, dim, s.sampling_box);
        (x, y)
    }
}

/// Runs `check(trial, rng)` for every trial and returns the lowest trial
/// index that produced a hit.
pub(crate) fn search<T, F>(settings: &SamplerSettings, check: F) -> Result<Option<(usize, T)>>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> Result<Option<T>> + Sync,
{
    let chunks = settings.trials.div_ceil(CHUNK);
    let best = AtomicUsize::new(usize::MAX);
    let found: Vec<Result<Option<(usize, T)>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(settings.trials);
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
            rng.set_stream(c as u64);
            for trial in start..end {
                if trial > best.load(Ordering::Relaxed) {
                    return Ok(None);
                }
                if let Some(hit) = check(trial, &mut rng)? {
                    best.fetch_min(trial, Ordering::Relaxed);
                    return Ok(Some((trial, hit)));
                }
            }
            Ok(None)
        })
        .collect();
    let mut out: Option<(usize, T)> = None;
    for r in found {
        if let Some((i, hit)) = r? {
            if out.as_ref().is_none_or(|(j, _)| i < *j) {
                out = Some((i, hit));
            }
        }
    }
    Ok(out)
}
