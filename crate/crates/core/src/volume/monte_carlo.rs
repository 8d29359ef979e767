use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{facet_system_cn1, FloatSystem};
use crate::instance::Instance;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MonteCarloEstimate {
    /// `|estimate - exact|` in units of the standard error.
    pub fn z_score(&self, exact: &Rational) -> f64 {
        let diff = (self.estimate - exact.to_f64()).abs();
        if self.std_error == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / self.std_error
        }
    }
}

/// Volume of `[0,b_1] x ... x [a_n,b_n] x [0, b_n Pi]`, the sampling box.
pub fn bounding_box_volume(inst: &Instance) -> Rational {
    inst.pi() * (inst.b_n() - inst.a_n()) * inst.full_product()
}

struct Sampler {
    system: FloatSystem,
    lo: Vec<f64>,
    hi: Vec<f64>,
    y_max: f64,
}

impl Sampler {
    fn new(inst: &Instance) -> Self {
        Sampler {
            system: FloatSystem::new(&facet_system_cn1(inst)),
            lo: inst.lower_bounds().iter().map(Rational::to_f64).collect(),
            hi: inst.upper_bounds().iter().map(Rational::to_f64).collect(),
            y_max: inst.full_product().to_f64(),
        }
    }

    fn hits(&self, rng: &mut ChaCha8Rng, samples: u64) -> u64 {
        let mut x = vec![0.0; self.lo.len()];
        let mut hits = 0;
        for _ in 0..samples {
            for ((xi, lo), hi) in x.iter_mut().zip(&self.lo).zip(&self.hi) {
                *xi = lo + (hi - lo) * rng.random::<f64>();
            }
            let y = self.y_max * rng.random::<f64>();
            if self.system.contains(&x, y) {
                hits += 1;
            }
        }
        hits
    }
}

fn estimate(inst: &Instance, hits: u64, samples: u64, seed: u64) -> MonteCarloEstimate {
    let box_volume = bounding_box_volume(inst).to_f64();
    let p = hits as f64 / samples as f64;
    MonteCarloEstimate {
        estimate: p * box_volume,
        std_error: box_volume * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "Monte Carlo needs at least one sample".to_string(),
        ));
    }
    Ok(())
}

/// Hit-or-miss estimate from uniform samples in the bounding box,
/// classified against the complete inequality system. Deterministic in
/// `(seed, samples)`.
pub fn monte_carlo_volume(inst: &Instance, samples: u64, seed: u64) -> Result<MonteCarloEstimate> {
    check_samples(samples)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = Sampler::new(inst).hits(&mut rng, samples);
    Ok(estimate(inst, hits, samples, seed))
}

/// Parallel variant. Shard `s` draws from ChaCha stream `s` of `seed`, so the
/// result is deterministic in `(seed, samples, shards)`.
pub fn monte_carlo_volume_sharded(
    inst: &Instance,
    samples: u64,
    seed: u64,
    shards: u64,
) -> Result<MonteCarloEstimate> {
    check_samples(samples)?;
    if shards == 0 {
        return Err(Error::InvalidArgument(
            "need at least one shard".to_string(),
        ));
    }
    let sampler = Sampler::new(inst);
    let (per, extra) = (samples / shards, samples % shards);
    let hits: u64 = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            sampler.hits(&mut rng, per + u64::from(s < extra))
        })
        .sum();
    Ok(estimate(inst, hits, samples, seed))
}
