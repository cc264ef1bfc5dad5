//! Numeric helpers shared across the crate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Chunk width used by [`pairwise_sum`]. Fixed so that serial and
/// parallel reductions produce bit-identical results.
const PAIRWISE_CHUNK: usize = 512;

fn pairwise_sum_raw(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum_raw(&values[..mid]) + pairwise_sum_raw(&values[mid..])
        }
    }
}

/// Pairwise summation over fixed-width chunks.
///
/// The chunk boundaries do not depend on the number of workers, so a
/// parallel reduction over the same chunks gives the identical result.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_CHUNK {
        return pairwise_sum_raw(values);
    }
    let partials: Vec<f64> = values.chunks(PAIRWISE_CHUNK).map(pairwise_sum_raw).collect();
    pairwise_sum(&partials)
}

/// log(sum(exp(x))) guarded against overflow.
pub fn log_sum_exp(log_terms: &[f64]) -> f64 {
    let max = log_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = log_terms.iter().map(|&x| (x - max).exp()).sum();
    max + sum.ln()
}

/// ln Γ(x).
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// ln n! via the log-gamma function.
pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Log-density of N(x; mean, var) with `var` a variance.
pub fn normal_ln_pdf(x: f64, mean: f64, var: f64) -> f64 {
    let d = x - mean;
    -0.5 * ((2.0 * std::f64::consts::PI * var).ln() + d * d / var)
}

/// Linearly interpolated quantile (type 7) of an unsorted sample.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    assert!(!values.is_empty(), "quantile of empty sample");
    assert!((0.0..=1.0).contains(&q), "quantile level outside [0,1]");
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("NaN in quantile input"));
    let h = q * (sorted.len() as f64 - 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn mean(values: &[f64]) -> f64 {
    pairwise_sum(values) / values.len() as f64
}

pub fn sample_variance(values: &[f64]) -> f64 {
    let m = mean(values);
    let sq: Vec<f64> = values.iter().map(|v| (v - m) * (v - m)).collect();
    pairwise_sum(&sq) / (values.len() as f64 - 1.0)
}

/// Deterministic RNG stream addressed by (seed, chain, iteration, group, unit).
///
/// Every sampler update owns its own stream, so any parallel schedule of
/// independent updates draws exactly the same random numbers as the
/// sequential sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamKey {
    pub seed: u64,
    pub chain: u32,
    pub iteration: u64,
    pub group: u32,
    pub unit: u64,
}

impl StreamKey {
    pub fn rng(&self) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[0..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..12].copy_from_slice(&self.chain.to_le_bytes());
        key[12..20].copy_from_slice(&self.iteration.to_le_bytes());
        key[20..24].copy_from_slice(&self.group.to_le_bytes());
        key[24..32].copy_from_slice(&self.unit.to_le_bytes());
        ChaCha8Rng::from_seed(key)
    }
}

/// Convenience constructor for a stream key.
pub fn stream(seed: u64, chain: u32, iteration: u64, group: u32, unit: u64) -> ChaCha8Rng {
    StreamKey { seed, chain, iteration, group, unit }.rng()
}
