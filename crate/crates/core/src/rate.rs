//! Poisson chance-count model.
//!
//! A team's chance count in one block of one fixture is Poisson with
//! log-rate
//!
//! ```text
//! log lambda = theta[team] - theta[opponent] + is_home * gamma[block]
//!              + alpha * G + beta * R
//! ```
//!
//! where the per-block team abilities `theta` sum to zero across teams
//! within each block. The constraint is hard: the sampler works on
//! `J - 1` free coordinates per block and the last team's ability is
//! the negated sum of the others.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::BLOCKS;
use crate::util::{ln_factorial, normal_ln_pdf, pairwise_sum};

/// Rate-model parameters. `theta` is indexed `[block][team]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateParams {
    pub theta: Vec<Vec<f64>>,
    pub gamma: [f64; BLOCKS],
    /// Game-state coefficient, shared across blocks.
    pub alpha: f64,
    /// Red-card-state coefficient, shared across blocks.
    pub beta: f64,
    /// Prior variance of the team abilities.
    pub tau: f64,
}

impl RateParams {
    /// All abilities and effects zero, `tau` at one.
    pub fn zero(n_teams: usize) -> Self {
        RateParams {
            theta: vec![vec![0.0; n_teams]; BLOCKS],
            gamma: [0.0; BLOCKS],
            alpha: 0.0,
            beta: 0.0,
            tau: 1.0,
        }
    }

    pub fn n_teams(&self) -> usize {
        self.theta.first().map(Vec::len).unwrap_or(0)
    }

    /// Check the sum-to-zero constraint (to 1e-12 per block) and `tau > 0`.
    pub fn validate(&self) -> Result<()> {
        if self.tau <= 0.0 || !self.tau.is_finite() {
            return Err(Error::Domain(format!("tau = {} must be positive", self.tau)));
        }
        if self.theta.len() != BLOCKS {
            return Err(Error::Domain(format!(
                "theta has {} blocks, expected {BLOCKS}",
                self.theta.len()
            )));
        }
        for (r, block) in self.theta.iter().enumerate() {
            let sum = pairwise_sum(block);
            if sum.abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "theta block t{} sums to {sum:e}, violating the sum-to-zero constraint",
                    r + 1
                )));
            }
        }
        Ok(())
    }

    /// Free coordinates: the first `J - 1` abilities of each block.
    pub fn free_theta(&self) -> Vec<Vec<f64>> {
        self.theta.iter().map(|block| block[..block.len() - 1].to_vec()).collect()
    }
}

/// Reconstruct one block's full ability vector from its free coordinates.
pub fn theta_from_free(free: &[f64]) -> Vec<f64> {
    let mut full = free.to_vec();
    full.push(-pairwise_sum(free));
    full
}

/// One likelihood term's covariates. `team`, `opponent` index into the
/// team list; `block` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PanelRow {
    pub team: usize,
    pub opponent: usize,
    pub block: usize,
    pub is_home: bool,
    pub n: u64,
    pub g: i64,
    pub r: i64,
}

/// The Poisson rate for one panel row.
pub fn compute_lambda(params: &RateParams, row: &PanelRow) -> Result<f64> {
    let block = params
        .theta
        .get(row.block)
        .ok_or_else(|| Error::Lookup(format!("block index {} out of range", row.block)))?;
    let theta_team = *block
        .get(row.team)
        .ok_or_else(|| Error::Lookup(format!("team index {} out of range", row.team)))?;
    let theta_opp = *block
        .get(row.opponent)
        .ok_or_else(|| Error::Lookup(format!("opponent index {} out of range", row.opponent)))?;
    let home = if row.is_home { params.gamma[row.block] } else { 0.0 };
    let lp = theta_team - theta_opp + home + params.alpha * row.g as f64 + params.beta * row.r as f64;
    let lambda = lp.exp();
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::Numeric(format!(
            "rate exp({lp}) is not a positive finite number"
        )));
    }
    Ok(lambda)
}

/// One row's Poisson log-likelihood contribution with `ln n!` supplied by
/// the caller (it is constant per row, so samplers precompute it).
pub fn log_lik_term(params: &RateParams, row: &PanelRow, ln_n_fact: f64) -> Result<f64> {
    let lambda = compute_lambda(params, row)?;
    Ok(row.n as f64 * lambda.ln() - lambda - ln_n_fact)
}

/// Poisson log-likelihood of the whole panel.
pub fn log_likelihood(params: &RateParams, panel: &[PanelRow]) -> Result<f64> {
    if panel.is_empty() {
        return Err(Error::Domain("log_likelihood over an empty panel".into()));
    }
    let terms = panel
        .iter()
        .map(|row| log_lik_term(params, row, ln_factorial(row.n)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&terms))
}

/// Prior settings for the rate parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePriors {
    /// Standard deviation of the zero-mean normal prior on gamma, alpha
    /// and beta.
    pub normal_sd: f64,
    /// Shape of the Gamma prior on tau.
    pub tau_shape: f64,
    /// Rate of the Gamma prior on tau.
    pub tau_rate: f64,
}

impl Default for RatePriors {
    fn default() -> Self {
        RatePriors { normal_sd: 10.0, tau_shape: 1.0, tau_rate: 0.01 }
    }
}

impl RatePriors {
    pub fn tau_ln_pdf(&self, tau: f64) -> f64 {
        self.tau_rate.ln() * self.tau_shape - crate::util::ln_gamma(self.tau_shape)
            + (self.tau_shape - 1.0) * tau.ln()
            - self.tau_rate * tau
    }
}

/// Log-prior of the rate parameters: each free theta coordinate is
/// N(0, tau) with tau a variance, gamma/alpha/beta are N(0, sd^2) and
/// tau carries a Gamma(shape, rate) prior.
pub fn log_prior(params: &RateParams, priors: &RatePriors) -> Result<f64> {
    if params.tau <= 0.0 {
        return Err(Error::Domain(format!("tau = {} must be positive", params.tau)));
    }
    let var = priors.normal_sd * priors.normal_sd;
    let mut terms = Vec::new();
    for block in &params.theta {
        for &t in &block[..block.len() - 1] {
            terms.push(normal_ln_pdf(t, 0.0, params.tau));
        }
    }
    for &g in &params.gamma {
        terms.push(normal_ln_pdf(g, 0.0, var));
    }
    terms.push(normal_ln_pdf(params.alpha, 0.0, var));
    terms.push(normal_ln_pdf(params.beta, 0.0, var));
    terms.push(priors.tau_ln_pdf(params.tau));
    Ok(pairwise_sum(&terms))
}

/// Center every block of raw abilities so the output satisfies the
/// sum-to-zero constraint. A second correction pass soaks up the
/// rounding residual of the first.
pub fn project_sum_to_zero(raw_theta: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(raw_theta.len());
    for (r, block) in raw_theta.iter().enumerate() {
        if block.len() < 2 {
            return Err(Error::Domain(format!(
                "block t{} has {} team(s); projection needs at least 2",
                r + 1,
                block.len()
            )));
        }
        let mut centered: Vec<f64> = {
            let m = pairwise_sum(block) / block.len() as f64;
            block.iter().map(|v| v - m).collect()
        };
        let residual = pairwise_sum(&centered) / centered.len() as f64;
        for v in &mut centered {
            *v -= residual;
        }
        out.push(centered);
    }
    Ok(out)
}
