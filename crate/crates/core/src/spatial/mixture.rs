//! Mixture weights, categorical player distributions, conjugate updates
//! and the composition log-posterior.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use super::gauss::{inverse_wishart_ln_pdf, inverse_wishart_sample, mvn_ln_pdf, Cov2};
use super::{Centroids, Space};
use crate::error::{Error, Result};
use crate::index::{IndexedChance, ModelIndex};
use crate::util::{ln_gamma, log_sum_exp, pairwise_sum};

/// Per-(team, block) categorical distributions over the team's roster,
/// for the assisting and the chance-taking player. Indexed
/// `[team][block][player-within-roster]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerDist {
    pub phi_assist: Vec<Vec<Vec<f64>>>,
    pub phi_chance: Vec<Vec<Vec<f64>>>,
}

impl PlayerDist {
    /// Uniform distributions over each roster (the Dirichlet(1) prior mean).
    pub fn uniform(index: &ModelIndex) -> Self {
        let make = || {
            (0..index.n_teams())
                .map(|t| {
                    let p = index.roster(t).len();
                    let row = if p == 0 { Vec::new() } else { vec![1.0 / p as f64; p] };
                    vec![row; crate::ingest::BLOCKS]
                })
                .collect::<Vec<_>>()
        };
        PlayerDist { phi_assist: make(), phi_chance: make() }
    }

    pub fn validate(&self) -> Result<()> {
        for group in [&self.phi_assist, &self.phi_chance] {
            for team in group {
                for vec in team {
                    if vec.is_empty() {
                        continue;
                    }
                    if vec.iter().any(|&v| v < 0.0 || !v.is_finite()) {
                        return Err(Error::Domain("phi entries must be finite and >= 0".into()));
                    }
                    let sum = pairwise_sum(vec);
                    if (sum - 1.0).abs() > 1e-12 {
                        return Err(Error::Domain(format!("phi vector sums to {sum}, not 1")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Mixture weights per (player cell, block) and the shared per-component
/// covariances for one location space. Indexed `[cell][block][component]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    pub kappa: Vec<Vec<Vec<f64>>>,
    pub sigma: Vec<Cov2>,
    pub space: Space,
}

impl MixtureParams {
    /// Uniform weights and identity covariances (the prior initialization).
    pub fn prior_init(n_cells: usize, m: usize, space: Space) -> Self {
        let row = if m == 0 { Vec::new() } else { vec![1.0 / m as f64; m] };
        MixtureParams {
            kappa: vec![vec![row; crate::ingest::BLOCKS]; n_cells],
            sigma: vec![Cov2::identity(); m],
            space,
        }
    }

    pub fn n_components(&self) -> usize {
        self.sigma.len()
    }

    pub fn validate(&self) -> Result<()> {
        for cell in &self.kappa {
            for vec in cell {
                if vec.len() != self.sigma.len() {
                    return Err(Error::Domain("kappa length differs from component count".into()));
                }
                let sum = pairwise_sum(vec);
                if (sum - 1.0).abs() > 1e-12 {
                    return Err(Error::Domain(format!("kappa vector sums to {sum}, not 1")));
                }
            }
        }
        for (m, s) in self.sigma.iter().enumerate() {
            if !s.is_spd() {
                return Err(Error::Domain(format!("sigma[{m}] = {s:?} is not SPD")));
            }
        }
        Ok(())
    }
}

/// Latent component assignments, one per observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatentAssignments {
    pub space: Space,
    /// 0-based component index per observation.
    pub z: Vec<usize>,
}

// ---------------------------------------------------------------------------
// Gaussian mixture evaluation

/// Log-density of the Gaussian mixture at `point`:
/// `log sum_m kappa[m] N(point; mu[m], sigma[m])`, computed with
/// log-sum-exp.
pub fn gmm_log_density(
    point: [f64; 2],
    kappa: &[f64],
    centroids: &Centroids,
    sigma: &[Cov2],
) -> Result<f64> {
    if kappa.len() != centroids.len() || sigma.len() != centroids.len() {
        return Err(Error::Domain(format!(
            "mixture dimensions disagree: {} weights, {} centroids, {} covariances",
            kappa.len(),
            centroids.len(),
            sigma.len()
        )));
    }
    if centroids.is_empty() {
        return Err(Error::Domain("mixture has no components".into()));
    }
    let mut terms = Vec::with_capacity(kappa.len());
    for m in 0..kappa.len() {
        let ln_pdf = mvn_ln_pdf(point, centroids.mu[m], &sigma[m]).map_err(|_| {
            Error::Numeric(format!("component {} covariance {:?} is singular", m + 1, sigma[m]))
        })?;
        terms.push(if kappa[m] > 0.0 { kappa[m].ln() + ln_pdf } else { f64::NEG_INFINITY });
    }
    Ok(log_sum_exp(&terms))
}

/// Posterior component membership probabilities for one point:
/// `p[m] proportional to kappa[m] N(point; mu[m], sigma[m])`.
///
/// If every component underflows to zero density the result falls back
/// to the uniform distribution (with a warning) rather than failing.
pub fn assignment_probabilities(
    point: [f64; 2],
    kappa: &[f64],
    centroids: &Centroids,
    sigma: &[Cov2],
) -> Result<Vec<f64>> {
    if kappa.len() != centroids.len() || sigma.len() != centroids.len() {
        return Err(Error::Domain(format!(
            "mixture dimensions disagree: {} weights, {} centroids, {} covariances",
            kappa.len(),
            centroids.len(),
            sigma.len()
        )));
    }
    let mut terms = Vec::with_capacity(kappa.len());
    for m in 0..kappa.len() {
        let ln_pdf = mvn_ln_pdf(point, centroids.mu[m], &sigma[m]).map_err(|_| {
            Error::Numeric(format!("component {} covariance {:?} is singular", m + 1, sigma[m]))
        })?;
        terms.push(if kappa[m] > 0.0 { kappa[m].ln() + ln_pdf } else { f64::NEG_INFINITY });
    }
    let lse = log_sum_exp(&terms);
    if !lse.is_finite() {
        log::warn!(
            "all mixture components numerically zero at ({}, {}); using uniform membership",
            point[0],
            point[1]
        );
        return Ok(vec![1.0 / kappa.len() as f64; kappa.len()]);
    }
    Ok(terms.iter().map(|t| (t - lse).exp()).collect())
}

// ---------------------------------------------------------------------------
// Conjugate updates

/// A Dirichlet distribution in concentration form; the conjugate
/// posterior of the categorical likelihoods used throughout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletPosterior {
    pub concentration: Vec<f64>,
}

impl DirichletPosterior {
    pub fn mean(&self) -> Vec<f64> {
        let total = pairwise_sum(&self.concentration);
        self.concentration.iter().map(|a| a / total).collect()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        sample_dirichlet(&self.concentration, rng)
    }

    /// Log-density at a probability vector.
    pub fn ln_pdf(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.concentration.len() {
            return Err(Error::Domain("Dirichlet dimension mismatch".into()));
        }
        let total = pairwise_sum(&self.concentration);
        let mut v = ln_gamma(total);
        for (&a, &xi) in self.concentration.iter().zip(x) {
            v -= ln_gamma(a);
            if a != 1.0 {
                v += (a - 1.0) * xi.ln();
            }
        }
        Ok(v)
    }
}

/// Conjugate update of a categorical player distribution: the posterior
/// concentration is `prior + count` per player.
pub fn update_phi(counts: &[u64], prior_concentration: f64) -> Result<DirichletPosterior> {
    if !(prior_concentration > 0.0 && prior_concentration.is_finite()) {
        return Err(Error::Domain(format!(
            "prior concentration {prior_concentration} must be positive"
        )));
    }
    Ok(DirichletPosterior {
        concentration: counts.iter().map(|&c| prior_concentration + c as f64).collect(),
    })
}

/// Conjugate update of mixture weights from component assignment counts.
/// Identical arithmetic to [`update_phi`]; kept separate because it is
/// applied per (player, block) over components rather than over rosters.
pub fn update_kappa(
    assignment_counts: &[u64],
    prior_concentration: f64,
) -> Result<DirichletPosterior> {
    update_phi(assignment_counts, prior_concentration)
}

/// Posterior (scale, df) of one component's covariance: scatter about
/// the FIXED centroid added to the prior scale, one df per point.
pub fn sigma_posterior(
    assigned_points: &[[f64; 2]],
    centroid: [f64; 2],
    prior_scale: &Cov2,
    prior_df: f64,
) -> Result<(Cov2, f64)> {
    if !prior_scale.is_spd() {
        return Err(Error::Domain(format!("prior scale {prior_scale:?} is not SPD")));
    }
    if prior_df <= 1.0 {
        return Err(Error::Domain(format!(
            "prior df {prior_df} must exceed 1 for a proper 2-d inverse Wishart"
        )));
    }
    let (mut sxx, mut sxy, mut syy) = (
        Vec::with_capacity(assigned_points.len()),
        Vec::with_capacity(assigned_points.len()),
        Vec::with_capacity(assigned_points.len()),
    );
    for p in assigned_points {
        let dx = p[0] - centroid[0];
        let dy = p[1] - centroid[1];
        sxx.push(dx * dx);
        sxy.push(dx * dy);
        syy.push(dy * dy);
    }
    let scatter =
        Cov2 { xx: pairwise_sum(&sxx), xy: pairwise_sum(&sxy), yy: pairwise_sum(&syy) };
    Ok((prior_scale.add(&scatter), prior_df + assigned_points.len() as f64))
}

/// Draw one component covariance from its inverse Wishart full
/// conditional.
pub fn update_sigma<R: Rng + ?Sized>(
    assigned_points: &[[f64; 2]],
    centroid: [f64; 2],
    prior_scale: &Cov2,
    prior_df: f64,
    rng: &mut R,
) -> Result<Cov2> {
    let (scale, df) = sigma_posterior(assigned_points, centroid, prior_scale, prior_df)?;
    inverse_wishart_sample(&scale, df, rng)
}

/// Draw from a Dirichlet distribution by normalizing Gamma draws.
pub fn sample_dirichlet<R: Rng + ?Sized>(concentration: &[f64], rng: &mut R) -> Vec<f64> {
    let draws: Vec<f64> = concentration
        .iter()
        .map(|&a| Gamma::new(a, 1.0).expect("positive concentration").sample(rng))
        .collect();
    let total: f64 = draws.iter().sum();
    if total > 0.0 {
        draws.iter().map(|d| d / total).collect()
    } else {
        vec![1.0 / concentration.len() as f64; concentration.len()]
    }
}

/// Draw a category index from an (unnormalized) probability vector.
pub fn sample_categorical<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let total: f64 = probs.iter().sum();
    debug_assert!(total > 0.0, "categorical weights must not all be zero");
    let mut u = rng.gen_range(0.0..total);
    for (i, p) in probs.iter().enumerate() {
        if u < *p {
            return i;
        }
        u -= p;
    }
    probs.len() - 1
}

// ---------------------------------------------------------------------------
// Joint composition posterior

/// Prior settings for the composition model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixturePriors {
    /// Dirichlet concentration for the player distributions.
    pub phi_concentration: f64,
    /// Dirichlet concentration for the mixture weights.
    pub kappa_concentration: f64,
    /// Inverse Wishart prior scale for component covariances.
    pub iw_scale: Cov2,
    /// Inverse Wishart prior degrees of freedom.
    pub iw_df: f64,
}

impl Default for MixturePriors {
    fn default() -> Self {
        MixturePriors {
            phi_concentration: 1.0,
            kappa_concentration: 1.0,
            iw_scale: Cov2::identity(),
            iw_df: 2.0,
        }
    }
}

/// Log-posterior of the composition model (up to the normalizing
/// constant): categorical log-likelihoods of the observed assist and
/// chance players, mixture log-likelihoods of the assist and offset
/// locations, and all composition priors.
///
/// Assist locations are attributed to the assisting player's weights,
/// offsets to the chance taker's.
pub fn composition_log_posterior(
    index: &ModelIndex,
    player: &PlayerDist,
    assist_mix: &MixtureParams,
    delta_mix: &MixtureParams,
    assist_centroids: &Centroids,
    delta_centroids: &Centroids,
    observations: &[IndexedChance],
    priors: &MixturePriors,
) -> Result<f64> {
    let mut terms = Vec::new();
    for obs in observations {
        let phi_a = player
            .phi_assist
            .get(obs.team)
            .and_then(|t| t[obs.block].get(obs.assist_in_team))
            .ok_or_else(|| {
                Error::Consistency(format!(
                    "assist player (team {}, roster slot {}) outside phi support",
                    obs.team, obs.assist_in_team
                ))
            })?;
        let phi_c = player
            .phi_chance
            .get(obs.team)
            .and_then(|t| t[obs.block].get(obs.chance_in_team))
            .ok_or_else(|| {
                Error::Consistency(format!(
                    "chance player (team {}, roster slot {}) outside phi support",
                    obs.team, obs.chance_in_team
                ))
            })?;
        let kappa_a = assist_mix.kappa.get(obs.assist_cell).ok_or_else(|| {
            Error::Consistency(format!("assist cell {} outside kappa support", obs.assist_cell))
        })?;
        let kappa_d = delta_mix.kappa.get(obs.chance_cell).ok_or_else(|| {
            Error::Consistency(format!("chance cell {} outside kappa support", obs.chance_cell))
        })?;
        terms.push(phi_a.ln());
        terms.push(phi_c.ln());
        terms.push(gmm_log_density(
            obs.assist_loc,
            &kappa_a[obs.block],
            assist_centroids,
            &assist_mix.sigma,
        )?);
        terms.push(gmm_log_density(
            obs.delta,
            &kappa_d[obs.block],
            delta_centroids,
            &delta_mix.sigma,
        )?);
    }

    // Priors.
    for (group, conc) in [
        (&player.phi_assist, priors.phi_concentration),
        (&player.phi_chance, priors.phi_concentration),
    ] {
        for team in group {
            for vec in team {
                if vec.is_empty() {
                    continue;
                }
                let prior = DirichletPosterior { concentration: vec![conc; vec.len()] };
                terms.push(prior.ln_pdf(vec)?);
            }
        }
    }
    for mix in [assist_mix, delta_mix] {
        let m = mix.n_components();
        if m == 0 {
            continue;
        }
        let prior = DirichletPosterior { concentration: vec![priors.kappa_concentration; m] };
        for cell in &mix.kappa {
            for vec in cell {
                terms.push(prior.ln_pdf(vec)?);
            }
        }
        for s in &mix.sigma {
            terms.push(inverse_wishart_ln_pdf(s, &priors.iw_scale, priors.iw_df)?);
        }
    }
    let _ = index;
    Ok(pairwise_sum(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::stream;
    use approx::assert_abs_diff_eq;

    fn unit_sigma(m: usize) -> Vec<Cov2> {
        vec![Cov2::identity(); m]
    }

    #[test]
    fn single_standard_component_density() {
        let cen = Centroids { mu: vec![[0.0, 0.0]], space: Space::Assist };
        let v = gmm_log_density([0.0, 0.0], &[1.0], &cen, &unit_sigma(1)).unwrap();
        assert_abs_diff_eq!(v, -1.8379, epsilon = 1e-4);
        assert_abs_diff_eq!(v.exp(), 1.0 / (2.0 * std::f64::consts::PI), epsilon = 1e-12);
    }

    #[test]
    fn identical_components_collapse() {
        let cen = Centroids { mu: vec![[1.0, 2.0], [1.0, 2.0]], space: Space::Assist };
        let single = Centroids { mu: vec![[1.0, 2.0]], space: Space::Assist };
        let two = gmm_log_density([0.0, 0.5], &[0.5, 0.5], &cen, &unit_sigma(2)).unwrap();
        let one = gmm_log_density([0.0, 0.5], &[1.0], &single, &unit_sigma(1)).unwrap();
        assert_abs_diff_eq!(two, one, epsilon = 1e-12);
    }

    #[test]
    fn two_component_hand_value() {
        // Point (2,0) is two units from both (0,0) and (4,0); the mixture
        // density collapses to N density times the weight sum.
        let cen = Centroids { mu: vec![[0.0, 0.0], [4.0, 0.0]], space: Space::Assist };
        let v = gmm_log_density([2.0, 0.0], &[0.3, 0.7], &cen, &unit_sigma(2)).unwrap();
        let expected = (1.0 / (2.0 * std::f64::consts::PI)) * (-2.0f64).exp();
        assert_abs_diff_eq!(v, expected.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(v, -3.8379, epsilon = 1e-4);
    }

    #[test]
    fn gmm_rejects_dimension_mismatch() {
        let cen = Centroids { mu: vec![[0.0, 0.0]], space: Space::Assist };
        assert!(gmm_log_density([0.0, 0.0], &[0.5, 0.5], &cen, &unit_sigma(1)).is_err());
    }

    #[test]
    fn gmm_names_singular_component() {
        let cen = Centroids { mu: vec![[0.0, 0.0], [1.0, 1.0]], space: Space::Assist };
        let sigma = vec![Cov2::identity(), Cov2 { xx: 1.0, xy: 1.0, yy: 1.0 }];
        let err = gmm_log_density([0.0, 0.0], &[0.5, 0.5], &cen, &sigma).unwrap_err();
        assert!(err.to_string().contains("component 2"), "got {err}");
    }

    #[test]
    fn membership_at_a_far_separated_centroid() {
        // Separation of 10 standard deviations.
        let cen = Centroids { mu: vec![[0.0, 0.0], [10.0, 0.0]], space: Space::Assist };
        let p = assignment_probabilities([0.0, 0.0], &[0.5, 0.5], &cen, &unit_sigma(2)).unwrap();
        assert!(p[0] > 0.99, "p = {p:?}");
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn membership_of_identical_components_is_kappa() {
        let cen = Centroids { mu: vec![[3.0, 1.0], [3.0, 1.0]], space: Space::Assist };
        let p = assignment_probabilities([0.0, 0.0], &[0.2, 0.8], &cen, &unit_sigma(2)).unwrap();
        assert_abs_diff_eq!(p[0], 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 0.8, epsilon = 1e-12);
    }

    #[test]
    fn membership_symmetric_point_splits_evenly() {
        let cen = Centroids { mu: vec![[-1.0, 0.0], [1.0, 0.0]], space: Space::Assist };
        let p = assignment_probabilities([0.0, 5.0], &[0.5, 0.5], &cen, &unit_sigma(2)).unwrap();
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn membership_underflow_falls_back_to_uniform() {
        let cen = Centroids { mu: vec![[0.0, 0.0], [1.0, 0.0]], space: Space::Assist };
        let sigma = vec![Cov2::identity().scale(1e-12); 2];
        let p = assignment_probabilities([2000.0, 0.0], &[0.5, 0.5], &cen, &sigma).unwrap();
        assert_eq!(p, vec![0.5, 0.5]);
    }

    #[test]
    fn membership_matches_direct_responsibility_computation() {
        // Independent plain-arithmetic responsibilities (no log-sum-exp).
        let cen = Centroids { mu: vec![[0.0, 0.0], [3.0, 1.0], [-2.0, 4.0]], space: Space::Assist };
        let sigma = vec![
            Cov2::identity(),
            Cov2 { xx: 2.0, xy: 0.4, yy: 1.0 },
            Cov2 { xx: 0.5, xy: -0.1, yy: 1.5 },
        ];
        let kappa = [0.2, 0.5, 0.3];
        let mut rng = stream(21, 0, 0, 0, 0);
        for _ in 0..200 {
            let point = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
            let direct: Vec<f64> = (0..3)
                .map(|m| {
                    let det = sigma[m].det();
                    let dx = point[0] - cen.mu[m][0];
                    let dy = point[1] - cen.mu[m][1];
                    kappa[m] / (2.0 * std::f64::consts::PI * det.sqrt())
                        * (-0.5 * sigma[m].inv_quad_form(dx, dy)).exp()
                })
                .collect();
            let total: f64 = direct.iter().sum();
            let direct: Vec<f64> = direct.iter().map(|d| d / total).collect();
            let ours = assignment_probabilities(point, &kappa, &cen, &sigma).unwrap();
            for (a, b) in ours.iter().zip(&direct) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn gmm_density_normalizes_numerically() {
        let cen = Centroids { mu: vec![[0.0, 0.0], [6.0, 2.0]], space: Space::Assist };
        let sigma = vec![Cov2 { xx: 1.5, xy: 0.3, yy: 0.8 }, Cov2::identity()];
        let kappa = [0.4, 0.6];
        // Grid spanning +- 8 standard deviations of every component.
        let max_sd = sigma.iter().map(|s| s.xx.max(s.yy).sqrt()).fold(0.0f64, f64::max);
        let (x0, x1) = (-8.0 * max_sd, 6.0 + 8.0 * max_sd);
        let (y0, y1) = (-8.0 * max_sd, 2.0 + 8.0 * max_sd);
        let n = 500;
        let (dx, dy) = ((x1 - x0) / n as f64, (y1 - y0) / n as f64);
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                let p = [x0 + (i as f64 + 0.5) * dx, y0 + (j as f64 + 0.5) * dy];
                total += gmm_log_density(p, &kappa, &cen, &sigma).unwrap().exp();
            }
        }
        total *= dx * dy;
        assert!((0.99..=1.01).contains(&total), "mass {total}");
    }

    #[test]
    fn phi_update_arithmetic() {
        let post = update_phi(&[2, 0, 1], 1.0).unwrap();
        assert_eq!(post.concentration, vec![3.0, 1.0, 2.0]);
        let mean = post.mean();
        assert_abs_diff_eq!(mean[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mean[1], 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mean[2], 1.0 / 3.0, epsilon = 1e-15);

        // No data: posterior is the prior.
        let prior_only = update_phi(&[0, 0, 0], 1.0).unwrap();
        assert_eq!(prior_only.concentration, vec![1.0; 3]);
        assert_abs_diff_eq!(prior_only.mean()[0], 1.0 / 3.0, epsilon = 1e-15);

        // Scaling counts pulls the mean toward the empirical frequencies.
        let scaled = update_phi(&[20, 0, 10], 1.0).unwrap();
        assert!((scaled.mean()[0] - 2.0 / 3.0).abs() < 0.04);
    }

    #[test]
    fn kappa_update_matches_and_permutes() {
        let m8 = update_kappa(&[0; 8], 1.0).unwrap();
        for v in m8.mean() {
            assert_abs_diff_eq!(v, 0.125, epsilon = 1e-15);
        }
        let post = update_kappa(&[5, 0, 0, 0, 0, 0, 0, 0], 1.0).unwrap();
        let mean = post.mean();
        assert_abs_diff_eq!(mean[0], 6.0 / 13.0, epsilon = 1e-15);
        for v in &mean[1..] {
            assert_abs_diff_eq!(*v, 1.0 / 13.0, epsilon = 1e-15);
        }

        // Permutation equivariance.
        let counts = [3u64, 1, 4, 1, 5, 9, 2, 6];
        let mut permuted = counts;
        permuted.reverse();
        let a = update_kappa(&counts, 1.0).unwrap().mean();
        let mut b = update_kappa(&permuted, 1.0).unwrap().mean();
        b.reverse();
        assert_eq!(a, b);
    }

    #[test]
    fn nonpositive_prior_concentration_rejected() {
        assert!(update_phi(&[1, 2], 0.0).is_err());
        assert!(update_phi(&[1, 2], -1.0).is_err());
    }

    #[test]
    fn sigma_posterior_scatter_arithmetic() {
        // No data: the posterior is the prior.
        let (scale, df) = sigma_posterior(&[], [0.0, 0.0], &Cov2::identity(), 2.0).unwrap();
        assert_eq!(scale, Cov2::identity());
        assert_eq!(df, 2.0);

        // Two points at (+-1, 0) about a fixed centroid at the origin.
        let points = [[1.0, 0.0], [-1.0, 0.0]];
        let (scale, df) = sigma_posterior(&points, [0.0, 0.0], &Cov2::identity(), 2.0).unwrap();
        assert_eq!(scale, Cov2 { xx: 3.0, xy: 0.0, yy: 1.0 });
        assert_eq!(df, 4.0);
    }

    #[test]
    fn sigma_posterior_rejects_bad_prior() {
        let bad = Cov2 { xx: 1.0, xy: 2.0, yy: 1.0 };
        assert!(sigma_posterior(&[], [0.0, 0.0], &bad, 2.0).is_err());
        assert!(sigma_posterior(&[], [0.0, 0.0], &Cov2::identity(), 1.0).is_err());
    }

    #[test]
    fn sigma_draws_concentrate_on_truth() {
        // 10^4 points from N(mu, S*): the posterior mean of 50 draws is
        // within 5% of S* in Frobenius norm.
        let truth = Cov2 { xx: 2.0, xy: 0.6, yy: 1.2 };
        let mu = [3.0, -1.0];
        let mut rng = stream(31, 0, 0, 0, 0);
        let points: Vec<[f64; 2]> =
            (0..10_000).map(|_| super::super::mvn_sample(mu, &truth, &mut rng).unwrap()).collect();
        let mut acc = Cov2 { xx: 0.0, xy: 0.0, yy: 0.0 };
        for _ in 0..50 {
            let draw = update_sigma(&points, mu, &Cov2::identity(), 2.0, &mut rng).unwrap();
            acc = acc.add(&draw);
        }
        let mean = acc.scale(1.0 / 50.0);
        let rel = mean.frobenius_distance(&truth)
            / (truth.xx * truth.xx + 2.0 * truth.xy * truth.xy + truth.yy * truth.yy).sqrt();
        assert!(rel < 0.05, "relative error {rel}");
    }

    #[test]
    fn sigma_draws_always_spd() {
        let mut rng = stream(32, 0, 0, 0, 0);
        for i in 0..10_000 {
            let n = i % 7;
            let points: Vec<[f64; 2]> = (0..n)
                .map(|_| [rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0)])
                .collect();
            let df = 2.0 + rng.gen_range(0.0..5.0);
            let draw = update_sigma(&points, [0.0, 0.0], &Cov2::identity(), df, &mut rng).unwrap();
            assert!(draw.cholesky().is_ok(), "draw {draw:?} not SPD");
        }
    }

    #[test]
    fn dirichlet_ln_pdf_normalizes_in_two_dims() {
        // Dirichlet(2, 3) on the simplex is Beta(2, 3); integrate over x.
        let d = DirichletPosterior { concentration: vec![2.0, 3.0] };
        let n = 20_000;
        let mut total = 0.0;
        for i in 0..n {
            let x = (i as f64 + 0.5) / n as f64;
            total += d.ln_pdf(&[x, 1.0 - x]).unwrap().exp() / n as f64;
        }
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-3);
    }

    #[test]
    fn gibbs_subchain_matches_closed_form_dirichlet() {
        // Conjugacy oracle: two far-separated components with fixed
        // covariances make the latent assignments deterministic, so the
        // kappa marginal is exactly Dirichlet(1 + counts). Run the
        // two-step Gibbs subchain and compare the posterior mean.
        let cen = Centroids { mu: vec![[0.0, 0.0], [60.0, 0.0]], space: Space::Assist };
        let sigma = unit_sigma(2);
        let mut points = vec![[0.1, 0.2]; 7];
        points.extend(vec![[59.8, -0.1]; 3]);

        let mut rng = stream(41, 0, 0, 0, 0);
        let mut kappa = vec![0.5, 0.5];
        let draws = 5000;
        let mut sum0 = 0.0;
        for _ in 0..draws {
            let mut counts = [0u64; 2];
            for p in &points {
                let probs = assignment_probabilities(*p, &kappa, &cen, &sigma).unwrap();
                counts[sample_categorical(&probs, &mut rng)] += 1;
            }
            kappa = update_kappa(&counts, 1.0).unwrap().sample(&mut rng);
            sum0 += kappa[0];
        }
        let mean0 = sum0 / draws as f64;
        // Closed form: Dirichlet(8, 4), mean 8/12; MC standard error of a
        // Beta(8,4) mean over 5000 draws.
        let expected = 8.0 / 12.0;
        let se = (expected * (1.0 - expected) / (13.0f64)).sqrt() / (draws as f64).sqrt();
        assert!(
            (mean0 - expected).abs() <= 3.0 * se,
            "mean {mean0} vs {expected} (3se = {})",
            3.0 * se
        );
    }
}
