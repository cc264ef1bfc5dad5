//! Bivariate Gaussian and (inverse-)Wishart primitives on symmetric
//! 2x2 covariance matrices.

use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::ln_gamma;

/// A symmetric 2x2 matrix stored as its three free entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cov2 {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl Cov2 {
    pub fn identity() -> Self {
        Cov2 { xx: 1.0, xy: 0.0, yy: 1.0 }
    }

    pub fn diagonal(xx: f64, yy: f64) -> Self {
        Cov2 { xx, xy: 0.0, yy }
    }

    pub fn det(&self) -> f64 {
        self.xx * self.yy - self.xy * self.xy
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy
    }

    /// Positive-definiteness via the leading minors.
    pub fn is_spd(&self) -> bool {
        self.xx > 0.0 && self.det() > 0.0 && self.xx.is_finite() && self.yy.is_finite() && self.xy.is_finite()
    }

    /// Lower-triangular Cholesky factor (l11, l21, l22).
    pub fn cholesky(&self) -> Result<(f64, f64, f64)> {
        if !self.is_spd() {
            return Err(Error::Numeric(format!("matrix {self:?} is not positive-definite")));
        }
        let l11 = self.xx.sqrt();
        let l21 = self.xy / l11;
        let l22 = (self.yy - l21 * l21).sqrt();
        if !(l11.is_finite() && l21.is_finite() && l22.is_finite() && l22 > 0.0) {
            return Err(Error::Numeric(format!("Cholesky of {self:?} failed")));
        }
        Ok((l11, l21, l22))
    }

    pub fn inverse(&self) -> Result<Cov2> {
        let det = self.det();
        if det <= 0.0 || !det.is_finite() {
            return Err(Error::Numeric(format!("matrix {self:?} is singular")));
        }
        Ok(Cov2 { xx: self.yy / det, xy: -self.xy / det, yy: self.xx / det })
    }

    /// v' S^-1 v for v = (dx, dy).
    pub fn inv_quad_form(&self, dx: f64, dy: f64) -> f64 {
        (self.yy * dx * dx - 2.0 * self.xy * dx * dy + self.xx * dy * dy) / self.det()
    }

    pub fn add(&self, other: &Cov2) -> Cov2 {
        Cov2 { xx: self.xx + other.xx, xy: self.xy + other.xy, yy: self.yy + other.yy }
    }

    pub fn scale(&self, s: f64) -> Cov2 {
        Cov2 { xx: self.xx * s, xy: self.xy * s, yy: self.yy * s }
    }

    /// Frobenius norm of the difference.
    pub fn frobenius_distance(&self, other: &Cov2) -> f64 {
        let dxx = self.xx - other.xx;
        let dxy = self.xy - other.xy;
        let dyy = self.yy - other.yy;
        (dxx * dxx + 2.0 * dxy * dxy + dyy * dyy).sqrt()
    }
}

/// Log-density of the bivariate normal N(point; mean, cov).
pub fn mvn_ln_pdf(point: [f64; 2], mean: [f64; 2], cov: &Cov2) -> Result<f64> {
    let det = cov.det();
    if det <= 0.0 || !det.is_finite() {
        return Err(Error::Numeric(format!("covariance {cov:?} is singular")));
    }
    let dx = point[0] - mean[0];
    let dy = point[1] - mean[1];
    Ok(-(2.0 * std::f64::consts::PI).ln() - 0.5 * det.ln() - 0.5 * cov.inv_quad_form(dx, dy))
}

/// Draw from N(mean, cov).
pub fn mvn_sample<R: Rng + ?Sized>(mean: [f64; 2], cov: &Cov2, rng: &mut R) -> Result<[f64; 2]> {
    let (l11, l21, l22) = cov.cholesky()?;
    let z1: f64 = StandardNormal.sample(rng);
    let z2: f64 = StandardNormal.sample(rng);
    Ok([mean[0] + l11 * z1, mean[1] + l21 * z1 + l22 * z2])
}

/// Draw from the Wishart distribution W(df, scale) via the Bartlett
/// decomposition. Requires df > 1 in two dimensions.
pub fn wishart_sample<R: Rng + ?Sized>(df: f64, scale: &Cov2, rng: &mut R) -> Result<Cov2> {
    if df <= 1.0 {
        return Err(Error::Domain(format!("Wishart degrees of freedom {df} must exceed 1")));
    }
    let (l11, l21, l22) = scale.cholesky()?;
    let c1: f64 = ChiSquared::new(df)
        .map_err(|e| Error::Domain(format!("chi-squared({df}): {e}")))?
        .sample(rng);
    let c2: f64 = ChiSquared::new(df - 1.0)
        .map_err(|e| Error::Domain(format!("chi-squared({}): {e}", df - 1.0)))?
        .sample(rng);
    let n21: f64 = StandardNormal.sample(rng);
    // A = [[sqrt(c1), 0], [n21, sqrt(c2)]], LA = L * A, W = LA * LA'.
    let a11 = c1.sqrt();
    let a21 = n21;
    let a22 = c2.sqrt();
    let b11 = l11 * a11;
    let b21 = l21 * a11 + l22 * a21;
    let b22 = l22 * a22;
    Ok(Cov2 { xx: b11 * b11, xy: b11 * b21, yy: b21 * b21 + b22 * b22 })
}

/// Draw from the inverse Wishart distribution with scale matrix `scale`
/// and `df` degrees of freedom.
pub fn inverse_wishart_sample<R: Rng + ?Sized>(
    scale: &Cov2,
    df: f64,
    rng: &mut R,
) -> Result<Cov2> {
    let w = wishart_sample(df, &scale.inverse()?, rng)?;
    w.inverse()
}

/// Log-density of the inverse Wishart distribution in two dimensions.
pub fn inverse_wishart_ln_pdf(sigma: &Cov2, scale: &Cov2, df: f64) -> Result<f64> {
    if !sigma.is_spd() || !scale.is_spd() {
        return Err(Error::Numeric("inverse Wishart density needs SPD matrices".into()));
    }
    let p = 2.0;
    // ln Gamma_2(a) = ln(pi)/2 + ln Gamma(a) + ln Gamma(a - 1/2)
    let ln_gamma2 = 0.5 * std::f64::consts::PI.ln() + ln_gamma(df / 2.0) + ln_gamma(df / 2.0 - 0.5);
    let sigma_inv = sigma.inverse()?;
    let trace = scale.xx * sigma_inv.xx + 2.0 * scale.xy * sigma_inv.xy + scale.yy * sigma_inv.yy;
    Ok(0.5 * df * scale.det().ln() - 0.5 * df * p * 2f64.ln() - ln_gamma2
        - 0.5 * (df + p + 1.0) * sigma.det().ln()
        - 0.5 * trace)
}
