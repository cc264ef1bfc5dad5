//! Stored posterior draws.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::ModelIndex;
use crate::inference::SamplerConfig;
use crate::rate::RateParams;
use crate::spatial::{Centroids, MixtureParams, PlayerDist};

/// One complete parameter state. Doubles as the ground-truth record of a
/// synthetic season.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub rate: RateParams,
    pub player: PlayerDist,
    pub assist_mix: MixtureParams,
    pub delta_mix: MixtureParams,
}

/// Proposal bookkeeping for one Metropolis parameter group of one chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupAcceptance {
    pub chain: usize,
    pub group: String,
    pub proposals: u64,
    pub accepted: u64,
    /// Step scale after adaptation froze.
    pub final_step: f64,
}

impl GroupAcceptance {
    pub fn rate(&self) -> f64 {
        if self.proposals == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposals as f64
        }
    }
}

/// The sampler's output: every stored parameter state plus the context
/// (index, centroids, coordinate scale, configuration) needed to
/// interpret them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorDraws {
    pub index: ModelIndex,
    pub centroids_assist: Centroids,
    pub centroids_delta: Centroids,
    /// Model coordinates = raw pitch coordinates times this factor.
    pub coord_scale: f64,
    pub config: SamplerConfig,
    /// Stored states per chain, in iteration order.
    pub chains: Vec<Vec<ModelParams>>,
    pub acceptance: Vec<GroupAcceptance>,
}

impl PosteriorDraws {
    /// Total stored draws across chains.
    pub fn n_stored(&self) -> usize {
        self.chains.iter().map(Vec::len).sum()
    }

    /// All stored draws, chains concatenated.
    pub fn iter(&self) -> impl Iterator<Item = &ModelParams> {
        self.chains.iter().flatten()
    }

    /// Iteration number of the i-th stored draw within a chain.
    pub fn iteration_of(&self, slot: usize) -> usize {
        self.config.burn_in + slot * self.config.thin
    }

    pub fn is_empty(&self) -> bool {
        self.n_stored() == 0
    }

    /// Per-draw series of a scalar extracted from each state.
    pub fn series<F: Fn(&ModelParams) -> f64>(&self, f: F) -> Vec<f64> {
        self.iter().map(f).collect()
    }

    pub fn theta_series(&self, team: usize, block: usize) -> Vec<f64> {
        self.series(|p| p.rate.theta[block][team])
    }

    pub fn gamma_series(&self, block: usize) -> Vec<f64> {
        self.series(|p| p.rate.gamma[block])
    }

    /// Every stored state must satisfy the model's structural
    /// invariants (sum-to-zero abilities, normalized weights, SPD
    /// covariances).
    pub fn validate(&self) -> Result<()> {
        if self.coord_scale <= 0.0 || !self.coord_scale.is_finite() {
            return Err(Error::Domain(format!(
                "coordinate scale {} must be positive",
                self.coord_scale
            )));
        }
        for params in self.iter() {
            params.rate.validate()?;
            params.player.validate()?;
            params.assist_mix.validate()?;
            params.delta_mix.validate()?;
        }
        Ok(())
    }
}
