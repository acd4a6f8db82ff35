//! Independent numeric ground truth: adaptive quadrature, implicit bodies
//! and seeded Monte Carlo cut volumes.

mod body;
mod mc;
mod quad;
mod tube_quad;

pub use body::{AffineFunctional, ImplicitBody};
pub use mc::{mc_cut_volume, McEstimate};
pub use quad::{adaptive_quad, adaptive_quad_2d, integrate_fallible, QuadOptions, Quadrature, DEFAULT_MAX_INTERVALS};
pub use tube_quad::quad_dvdb;
