//! Exact arithmetic: big rationals, π-graded scalars, sparse polynomials
//! and the closed-form integrals the engines are built from.

mod pi_number;
mod poly;
pub mod rational;
mod wallis;

pub use pi_number::PiNumber;
pub use poly::{BiPoly, Exponent, Poly, UniPoly};
pub use rational::{format_rational, parse_rational, Rational};
pub use wallis::{unit_ball_volume, wallis, wallis_symmetric};

/// Antiderivative of `p` in `b`, vanishing at `b = 0`.
pub fn poly_antiderivative_b(p: &BiPoly) -> BiPoly {
    p.antiderivative_b()
}
