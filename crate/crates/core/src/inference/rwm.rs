//! Random-walk Metropolis kernel with diminishing step adaptation.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Result of one Metropolis step.
#[derive(Debug, Clone)]
pub struct RwmOutcome {
    pub values: Vec<f64>,
    pub accepted: bool,
    /// min(1, exp(delta log-target)); smoother than the accept indicator
    /// for step adaptation.
    pub accept_prob: f64,
    /// Log-target at the returned state.
    pub log_target: f64,
}

/// One random-walk Metropolis update with an isotropic Gaussian proposal
/// of scale `step` per coordinate.
///
/// The target must be finite at the current state; a proposal may
/// evaluate to negative infinity (certain rejection) without error.
pub fn rwm_update<F, R>(
    current: &[f64],
    step: f64,
    mut log_target: F,
    rng: &mut R,
) -> Result<RwmOutcome>
where
    F: FnMut(&[f64]) -> Result<f64>,
    R: Rng + ?Sized,
{
    let current_lt = log_target(current)?;
    if !current_lt.is_finite() {
        return Err(Error::Numeric(format!(
            "log-target is {current_lt} at the current state; sampler invariant violated"
        )));
    }
    let proposal: Vec<f64> = current
        .iter()
        .map(|&x| {
            let z: f64 = StandardNormal.sample(rng);
            x + step * z
        })
        .collect();
    let proposal_lt = log_target(&proposal)?;
    let accept_prob = (proposal_lt - current_lt).min(0.0).exp();
    let u: f64 = rng.gen();
    if u < accept_prob {
        Ok(RwmOutcome { values: proposal, accepted: true, accept_prob, log_target: proposal_lt })
    } else {
        Ok(RwmOutcome {
            values: current.to_vec(),
            accepted: false,
            accept_prob,
            log_target: current_lt,
        })
    }
}

/// Robbins-Monro adaptation of a log step size toward a target
/// acceptance rate, updated once per window of proposals with gain
/// shrinking as 1/sqrt(batch). Frozen after burn-in.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdaptiveScale {
    log_step: f64,
    target: f64,
    window: usize,
    acc: f64,
    count: usize,
    batches: u64,
    frozen: bool,
}

impl AdaptiveScale {
    pub fn new(initial_step: f64, target: f64, window: usize) -> Self {
        AdaptiveScale {
            log_step: initial_step.ln(),
            target,
            window: window.max(1),
            acc: 0.0,
            count: 0,
            batches: 0,
            frozen: false,
        }
    }

    pub fn step(&self) -> f64 {
        self.log_step.exp()
    }

    pub fn observe(&mut self, accept_prob: f64) {
        if self.frozen {
            return;
        }
        self.acc += accept_prob;
        self.count += 1;
        if self.count == self.window {
            self.batches += 1;
            let rate = self.acc / self.count as f64;
            self.log_step += (rate - self.target) / (self.batches as f64).sqrt();
            self.log_step = self.log_step.clamp(-20.0, 20.0);
            self.acc = 0.0;
            self.count = 0;
        }
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::{normal_ln_pdf, sample_variance, stream};

    #[test]
    fn zero_step_always_accepts_in_place() {
        let mut rng = stream(1, 0, 0, 0, 0);
        let target = |x: &[f64]| Ok(normal_ln_pdf(x[0], 0.0, 1.0));
        let out = rwm_update(&[0.7], 0.0, target, &mut rng).unwrap();
        assert!(out.accepted);
        assert_eq!(out.values, vec![0.7]);
        assert_eq!(out.accept_prob, 1.0);
    }

    #[test]
    fn non_finite_current_target_is_an_error() {
        let mut rng = stream(2, 0, 0, 0, 0);
        let target = |_: &[f64]| Ok(f64::NEG_INFINITY);
        assert!(rwm_update(&[0.0], 1.0, target, &mut rng).is_err());
    }

    #[test]
    fn standard_normal_long_run_variance() {
        // 50k steps at the classic 1-d optimal scale 2.4.
        let mut rng = stream(3, 0, 0, 0, 0);
        let mut x = vec![0.0];
        let mut samples = Vec::with_capacity(50_000);
        for _ in 0..50_000 {
            let out =
                rwm_update(&x, 2.4, |v| Ok(normal_ln_pdf(v[0], 0.0, 1.0)), &mut rng).unwrap();
            x = out.values;
            samples.push(x[0]);
        }
        let var = sample_variance(&samples);
        assert!((var - 1.0).abs() < 0.05, "variance {var}");
    }

    #[test]
    fn adaptation_converges_to_target_rate_in_ten_dims() {
        let mut rng = stream(4, 0, 0, 0, 0);
        let dim = 10;
        let target = |v: &[f64]| Ok(v.iter().map(|x| normal_ln_pdf(*x, 0.0, 1.0)).sum());
        let mut scale = AdaptiveScale::new(1.0, 0.234, 25);
        let mut x = vec![0.0; dim];
        // Warm-up with adaptation on.
        for _ in 0..60_000 {
            let out = rwm_update(&x, scale.step(), target, &mut rng).unwrap();
            scale.observe(out.accept_prob);
            x = out.values;
        }
        scale.freeze();
        let mut accepted = 0usize;
        let trials = 25_000;
        for _ in 0..trials {
            let out = rwm_update(&x, scale.step(), target, &mut rng).unwrap();
            if out.accepted {
                accepted += 1;
            }
            x = out.values;
        }
        let rate = accepted as f64 / trials as f64;
        assert!((rate - 0.234).abs() < 0.05, "acceptance rate {rate} at step {}", scale.step());
    }
}
