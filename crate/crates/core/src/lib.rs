//! Exact cut-volume functions of tubular neighbourhoods of even-dimensional
//! spheres and of classical quadrics, together with the numeric oracles that
//! check them.
//!
//! * [`exact`]: rationals, π-graded scalars, sparse polynomials, Wallis
//!   integrals and unit-ball volumes.
//! * [`tube`]: the exact `∂V/∂b` and `P(a, b)` polynomials of the tube and
//!   its two-valued cut volume.
//! * [`oracle`]: adaptive quadrature and Monte Carlo.
//! * [`classical`]: caps of balls, ellipsoids, paraboloids and two-sheeted
//!   hyperboloids.
//! * [`fitter`]: least-squares polynomial detection.

pub mod classical;
pub mod error;
pub mod exact;
pub mod fitter;
pub mod oracle;
pub mod tube;

pub use error::{Error, Result};
pub use exact::{BiPoly, PiNumber, Rational, UniPoly};
pub use tube::{Hyperplane, NormalForm, TubeEngine, TubeSpec, TwoValuedVolume};
