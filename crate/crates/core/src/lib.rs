//! Bayesian modeling of soccer chance creation.
//!
//! The library covers the full pipeline:
//!
//! * [`ingest`] — parsing event-level match data, deriving game/red-card
//!   state and 15-minute block membership, and building the per-block
//!   chance-count panel.
//! * [`rate`] — the Poisson chance-count model: log-linear rate with team
//!   abilities (sum-to-zero per block), a per-block home effect and
//!   game/red-card state coefficients.
//! * [`spatial`] — chance composition: categorical assist/chance player
//!   distributions and Gaussian mixtures over assist locations and
//!   assist-to-chance offsets, with k-means-fixed component centroids.
//! * [`inference`] — Gibbs sweep over the model's independent full
//!   conditionals with adaptive random-walk Metropolis for the
//!   non-conjugate rate parameters, plus chain diagnostics.
//! * [`simulate`] — the generative model run forward for synthetic
//!   seasons, posterior-predictive counts and simulation-based
//!   calibration.
//! * [`report`] — posterior summaries (ability tables, home-effect
//!   intervals, mixture radars, density surfaces, involvement
//!   probabilities) plus Voronoi/SVG rendering.
//! * [`store`] — line-delimited draw storage with a run manifest.

pub mod draws;
pub mod error;
pub mod geom;
pub mod index;
pub mod inference;
pub mod ingest;
pub mod rate;
pub mod report;
pub mod sbc;
pub mod simulate;
pub mod spatial;
pub mod store;
pub mod svg;
pub mod util;

pub use error::{Error, Result};
