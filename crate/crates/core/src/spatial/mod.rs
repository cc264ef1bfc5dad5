//! Chance composition: categorical player models and Gaussian mixtures
//! over assist locations and assist-to-chance offsets.
//!
//! The mixture component means are fixed up front by k-means on the
//! pooled locations (all players, all blocks); inference updates only
//! the per-(player, block) weights, the shared per-component
//! covariances and the latent component assignments.

mod gauss;
mod kmeans;
mod mixture;

pub use gauss::{
    inverse_wishart_ln_pdf, inverse_wishart_sample, mvn_ln_pdf, mvn_sample, wishart_sample, Cov2,
};
pub use kmeans::kmeans;
pub use mixture::{
    assignment_probabilities, composition_log_posterior, gmm_log_density, sample_categorical,
    sample_dirichlet, sigma_posterior, update_kappa, update_phi, update_sigma, DirichletPosterior,
    LatentAssignments, MixtureParams, MixturePriors, PlayerDist,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which location space a mixture lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// Raw assist locations on the pitch.
    Assist,
    /// Offsets from assist to chance location.
    Delta,
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Space::Assist => write!(f, "assist"),
            Space::Delta => write!(f, "delta"),
        }
    }
}

/// Fixed mixture component means. Never updated by inference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Centroids {
    pub mu: Vec<[f64; 2]>,
    pub space: Space,
}

impl Centroids {
    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

/// Serialize a pair of centroid sets as `component,x,y,space` CSV so a
/// fitted clustering can be reused across runs.
pub fn centroids_to_csv(assist: &Centroids, delta: &Centroids) -> String {
    let mut out = String::from("component,x,y,space\n");
    for (set, tag) in [(assist, "assist"), (delta, "delta")] {
        for (i, mu) in set.mu.iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", i + 1, mu[0], mu[1], tag));
        }
    }
    out
}

/// Parse the CSV layout produced by [`centroids_to_csv`].
pub fn centroids_from_csv(text: &str) -> Result<(Centroids, Centroids)> {
    let mut assist = Vec::new();
    let mut delta = Vec::new();
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == "component,x,y,space" => {}
        other => {
            return Err(Error::Schema(format!(
                "bad centroid CSV header: {:?}",
                other.unwrap_or("")
            )))
        }
    }
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Schema(format!("centroid CSV line {} malformed", i + 2)));
        }
        let x: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| Error::Schema(format!("bad x on centroid CSV line {}", i + 2)))?;
        let y: f64 = parts[2]
            .trim()
            .parse()
            .map_err(|_| Error::Schema(format!("bad y on centroid CSV line {}", i + 2)))?;
        match parts[3].trim() {
            "assist" => assist.push([x, y]),
            "delta" => delta.push([x, y]),
            other => return Err(Error::Schema(format!("unknown space tag `{other}`"))),
        }
    }
    Ok((
        Centroids { mu: assist, space: Space::Assist },
        Centroids { mu: delta, space: Space::Delta },
    ))
}
