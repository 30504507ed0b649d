//! Numerical laboratory for averaged Szegő projections on sliding circle
//! families and their convergence to weighted Bergman projections.
//!
//! The strip `S = {|Im z| < 1}` carries the measure `dx dy / (1 - y²)^α`.
//! Every point of `S` lies on exactly two unit circles centred on the real
//! axis; averaging the weighted Szegő projections of those two circles gives
//! a self-adjoint contraction whose iterates converge to the Bergman
//! projection. The crate discretises that operator, the supporting integral
//! identities, and a planar analogue on the image of a perturbed ball.

pub mod annihilators;
pub mod battery;
pub mod config;
pub mod disc;
pub mod error;
pub mod estimates;
pub mod geometry;
pub mod iteration;
pub mod projector;
pub mod quad;
pub mod report;
pub mod run;
pub mod szego;
pub mod toeplitz;

pub use error::{Error, Result};
pub use geometry::{build_strip_grid, GridFunction, StripGrid};
pub use projector::{Interp, PiOperator};
