//! Reinforcement-learning network formation: exact round-by-round
//! simulation of the mutual-choice urn game, its mean-field ODE on the
//! occupation simplex, equilibrium classification by Jacobian spectra, and
//! seeded Monte Carlo campaigns.

pub mod eig;
pub mod error;
pub mod meanfield;
pub mod model;
pub mod ode;
pub mod scalar;
pub mod simplex;

pub use error::{Error, Result};
pub use scalar::Real;

/// Concrete production aliases (`f64` scalars).
pub type Game = model::WeightedGame<f64>;
pub type Nature = model::NatureDistribution<f64>;
pub type Point = simplex::SimplexPoint<f64>;
pub type Field = meanfield::FieldValues<f64>;
