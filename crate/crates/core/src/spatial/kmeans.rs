//! Lloyd's algorithm with k-means++ seeding for the fixed mixture
//! centroids.

use rand::Rng;

use super::{Centroids, Space};
use crate::error::{Error, Result};
use crate::util::stream;

const MAX_ITERATIONS: usize = 200;

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

fn nearest(point: [f64; 2], centroids: &[[f64; 2]]) -> usize {
    let mut best = 0usize;
    let mut best_d = dist2(point, centroids[0]);
    for (i, c) in centroids.iter().enumerate().skip(1) {
        let d = dist2(point, *c);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

fn seed_plus_plus<R: Rng>(points: &[[f64; 2]], m: usize, rng: &mut R) -> Vec<[f64; 2]> {
    let mut centroids = Vec::with_capacity(m);
    centroids.push(points[rng.gen_range(0..points.len())]);
    let mut d2: Vec<f64> = points.iter().map(|p| dist2(*p, centroids[0])).collect();
    while centroids.len() < m {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut u = rng.gen_range(0.0..total);
            let mut chosen = points.len() - 1;
            for (i, w) in d2.iter().enumerate() {
                if u < *w {
                    chosen = i;
                    break;
                }
                u -= w;
            }
            chosen
        } else {
            // All remaining points coincide with a centroid; fall back to
            // a uniform pick.
            rng.gen_range(0..points.len())
        };
        centroids.push(points[next]);
        for (i, p) in points.iter().enumerate() {
            d2[i] = d2[i].min(dist2(*p, centroids[centroids.len() - 1]));
        }
    }
    centroids
}

/// k-means with k-means++ seeding.
///
/// Runs Lloyd iterations until no assignment changes (or 200 rounds).
/// An emptied cluster is re-seeded at the point currently farthest from
/// its assigned centroid. The returned centroids are sorted by `(y, x)`
/// so the output is deterministic for a given `(points, m, seed)`.
pub fn kmeans(points: &[[f64; 2]], m: usize, seed: u64, space: Space) -> Result<Centroids> {
    if m == 0 {
        return Err(Error::Domain("k-means needs at least one component".into()));
    }
    if points.len() < m {
        return Err(Error::Domain(format!(
            "k-means needs at least {m} points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(Error::Domain("k-means input contains non-finite coordinates".into()));
    }

    let mut rng = stream(seed, 0, 0, 0, 0);
    let mut centroids = seed_plus_plus(points, m, &mut rng);
    let mut assignment: Vec<usize> = points.iter().map(|p| nearest(*p, &centroids)).collect();

    for _ in 0..MAX_ITERATIONS {
        // Means per cluster.
        let mut sums = vec![[0.0f64; 2]; m];
        let mut counts = vec![0usize; m];
        for (p, &a) in points.iter().zip(&assignment) {
            sums[a][0] += p[0];
            sums[a][1] += p[1];
            counts[a] += 1;
        }
        for k in 0..m {
            if counts[k] > 0 {
                centroids[k] = [sums[k][0] / counts[k] as f64, sums[k][1] / counts[k] as f64];
            } else {
                // Standard repair: restart the empty cluster at the point
                // farthest from its current centroid.
                let (far, _) = points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (i, dist2(*p, centroids[assignment[i]])))
                    .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .expect("points nonempty");
                centroids[k] = points[far];
                assignment[far] = k;
            }
        }

        let next: Vec<usize> = points.iter().map(|p| nearest(*p, &centroids)).collect();
        let converged = next == assignment;
        assignment = next;
        if converged {
            break;
        }
    }

    centroids.sort_by(|a, b| (a[1], a[0]).partial_cmp(&(b[1], b[0])).unwrap());
    Ok(Centroids { mu: centroids, space })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::stream;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn symmetric_pairs_give_midpoints() {
        let points = [[0.0, 0.0], [0.0, 2.0], [10.0, 0.0], [10.0, 2.0]];
        let cen = kmeans(&points, 2, 1, Space::Assist).unwrap();
        assert_eq!(cen.mu.len(), 2);
        assert!(cen.mu.contains(&[0.0, 1.0]), "centroids {:?}", cen.mu);
        assert!(cen.mu.contains(&[10.0, 1.0]), "centroids {:?}", cen.mu);
    }

    #[test]
    fn m_equals_point_count_returns_points() {
        let points = [[0.0, 0.0], [3.0, 1.0], [7.0, 2.0]];
        let cen = kmeans(&points, 3, 5, Space::Assist).unwrap();
        let mut sorted = points.to_vec();
        sorted.sort_by(|a, b| (a[1], a[0]).partial_cmp(&(b[1], b[0])).unwrap());
        assert_eq!(cen.mu, sorted);
    }

    #[test]
    fn recovers_tight_blobs() {
        let centers = [[0.0, 0.0], [100.0, 0.0], [0.0, 100.0], [100.0, 100.0]];
        let noise = Normal::new(0.0, 0.1).unwrap();
        let mut rng = stream(42, 0, 0, 0, 0);
        let mut points = Vec::new();
        for c in centers {
            for _ in 0..50 {
                points.push([c[0] + noise.sample(&mut rng), c[1] + noise.sample(&mut rng)]);
            }
        }
        let cen = kmeans(&points, 4, 7, Space::Delta).unwrap();
        for c in centers {
            let found = cen
                .mu
                .iter()
                .any(|mu| (mu[0] - c[0]).abs() < 0.1 && (mu[1] - c[1]).abs() < 0.1);
            assert!(found, "no centroid within 0.1 of {c:?}: {:?}", cen.mu);
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut rng = stream(3, 0, 0, 0, 0);
        let noise = Normal::new(0.0, 20.0).unwrap();
        let points: Vec<[f64; 2]> =
            (0..500).map(|_| [noise.sample(&mut rng), noise.sample(&mut rng) + 200.0]).collect();
        let a = kmeans(&points, 8, 11, Space::Assist).unwrap();
        let b = kmeans(&points, 8, 11, Space::Assist).unwrap();
        assert_eq!(a.mu, b.mu);
        let c = kmeans(&points, 8, 12, Space::Assist).unwrap();
        assert_eq!(c.mu.len(), 8);
    }

    #[test]
    fn too_few_points_is_a_domain_error() {
        let points = [[0.0, 0.0]];
        assert!(kmeans(&points, 2, 0, Space::Assist).is_err());
    }

    #[test]
    fn duplicate_heavy_input_still_yields_m_centroids() {
        // 60 copies of one point plus a handful of others.
        let mut points = vec![[5.0, 5.0]; 60];
        points.push([0.0, 0.0]);
        points.push([10.0, 0.0]);
        let cen = kmeans(&points, 3, 9, Space::Assist).unwrap();
        assert_eq!(cen.mu.len(), 3);
    }

    #[test]
    fn centroids_sorted_by_y_then_x() {
        let points = [[1.0, 5.0], [0.0, 5.0], [2.0, 1.0], [3.0, 1.0], [9.0, 9.0], [8.0, 9.0]];
        let cen = kmeans(&points, 3, 2, Space::Assist).unwrap();
        for w in cen.mu.windows(2) {
            assert!((w[0][1], w[0][0]) <= (w[1][1], w[1][0]));
        }
    }
}
