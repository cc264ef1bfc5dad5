//! Chain summaries: moments, quantiles, effective sample size,
//! Monte Carlo standard errors and (for multi-chain runs) the potential
//! scale reduction factor.

use serde::{Deserialize, Serialize};

use crate::draws::{GroupAcceptance, PosteriorDraws};
use crate::error::{Error, Result};
use crate::ingest::BLOCKS;
use crate::util::{mean, quantile, sample_variance};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSummary {
    pub name: String,
    pub mean: f64,
    pub sd: f64,
    pub q025: f64,
    pub q975: f64,
    pub ess: f64,
    pub mcse: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ChainDiagnostics {
    pub params: Vec<ParamSummary>,
    pub acceptance: Vec<GroupAcceptance>,
    /// Potential scale reduction per parameter; empty for single-chain runs.
    pub psrf: Vec<(String, f64)>,
    pub warnings: Vec<String>,
}

/// Effective sample size via Geyer's initial positive (and monotone)
/// sequence of paired autocorrelations. Returns `(ess, degenerate)`
/// where a degenerate chain is one with zero variance.
pub fn effective_sample_size(x: &[f64]) -> (f64, bool) {
    let n = x.len();
    if n < 4 {
        return (n as f64, false);
    }
    let m = mean(x);
    let autocov = |k: usize| -> f64 {
        let mut s = 0.0;
        for i in 0..n - k {
            s += (x[i] - m) * (x[i + k] - m);
        }
        s / n as f64
    };
    let c0 = autocov(0);
    if c0 <= 0.0 {
        return (n as f64, true);
    }
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut k = 0usize;
    while k + 1 < n {
        let gamma = (autocov(k) + autocov(k + 1)) / c0;
        if gamma <= 0.0 {
            break;
        }
        let gamma = gamma.min(prev);
        sum += gamma;
        prev = gamma;
        k += 2;
    }
    let tau = (2.0 * sum - 1.0).max(1e-12);
    ((n as f64 / tau).clamp(1.0, n as f64), false)
}

/// Basic potential scale reduction factor over same-length chains.
pub fn potential_scale_reduction(chains: &[Vec<f64>]) -> f64 {
    let m = chains.len();
    if m < 2 {
        return 1.0;
    }
    let n = chains.iter().map(Vec::len).min().unwrap_or(0);
    if n < 2 {
        return 1.0;
    }
    let means: Vec<f64> = chains.iter().map(|c| mean(&c[..n])).collect();
    let within = mean(&chains.iter().map(|c| sample_variance(&c[..n])).collect::<Vec<_>>());
    let between_over_n = sample_variance(&means);
    if within <= 0.0 {
        return 1.0;
    }
    let var_plus = (n as f64 - 1.0) / n as f64 * within + between_over_n;
    (var_plus / within).sqrt()
}

fn summarize(name: String, values: &[f64], warnings: &mut Vec<String>) -> ParamSummary {
    let m = mean(values);
    let var = if values.len() > 1 { sample_variance(values) } else { 0.0 };
    let sd = var.max(0.0).sqrt();
    let (ess, degenerate) = effective_sample_size(values);
    if degenerate {
        warnings.push(format!("parameter {name} has a degenerate (constant) chain"));
    }
    ParamSummary {
        name,
        mean: m,
        sd,
        q025: quantile(values, 0.025),
        q975: quantile(values, 0.975),
        ess,
        mcse: if ess > 0.0 { sd / ess.sqrt() } else { 0.0 },
    }
}

/// Names and extractors for every scalar rate parameter.
pub(crate) fn rate_param_names(draws: &PosteriorDraws) -> Vec<(String, usize, usize, u8)> {
    // (name, a, b, kind) with kind 0=theta(a=block,b=team), 1=gamma(a=block),
    // 2=alpha, 3=beta, 4=tau.
    let mut out = Vec::new();
    for (t, team) in draws.index.teams().iter().enumerate() {
        for r in 0..BLOCKS {
            out.push((format!("theta[{team}][t{}]", r + 1), r, t, 0));
        }
    }
    for r in 0..BLOCKS {
        out.push((format!("gamma[t{}]", r + 1), r, 0, 1));
    }
    out.push(("alpha".into(), 0, 0, 2));
    out.push(("beta".into(), 0, 0, 3));
    out.push(("tau".into(), 0, 0, 4));
    out
}

pub(crate) fn extract_series(
    draws: &[crate::draws::ModelParams],
    a: usize,
    b: usize,
    kind: u8,
) -> Vec<f64> {
    draws
        .iter()
        .map(|p| match kind {
            0 => p.rate.theta[a][b],
            1 => p.rate.gamma[a],
            2 => p.rate.alpha,
            3 => p.rate.beta,
            _ => p.rate.tau,
        })
        .collect()
}

/// Summaries for every rate parameter over the stored draws (chains
/// pooled), plus per-chain PSRF when more than one chain was run.
pub fn diagnostics(draws: &PosteriorDraws) -> Result<ChainDiagnostics> {
    if draws.n_stored() < 10 {
        return Err(Error::Domain(format!(
            "diagnostics need at least 10 stored draws, have {}",
            draws.n_stored()
        )));
    }
    let mut warnings = Vec::new();
    let pooled: Vec<&crate::draws::ModelParams> = draws.iter().collect();
    let mut params = Vec::new();
    let mut psrf = Vec::new();
    for (name, a, b, kind) in rate_param_names(draws) {
        let values: Vec<f64> = pooled
            .iter()
            .map(|p| match kind {
                0 => p.rate.theta[a][b],
                1 => p.rate.gamma[a],
                2 => p.rate.alpha,
                3 => p.rate.beta,
                _ => p.rate.tau,
            })
            .collect();
        params.push(summarize(name.clone(), &values, &mut warnings));
        if draws.chains.len() > 1 {
            let per_chain: Vec<Vec<f64>> =
                draws.chains.iter().map(|c| extract_series(c, a, b, kind)).collect();
            psrf.push((name, potential_scale_reduction(&per_chain)));
        }
    }
    Ok(ChainDiagnostics {
        params,
        acceptance: draws.acceptance.clone(),
        psrf,
        warnings,
    })
}
