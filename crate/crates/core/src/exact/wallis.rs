use num::One;

use super::pi_number::PiNumber;
use super::rational::{rat, Rational};

/// Exact value of `∫₀^{π/2} sin^p θ · cos^q θ dθ`.
///
/// Reduces `p` and then `q` by two at a time with
/// `(p+q)·W(p,q) = (p-1)·W(p-2,q)` (and its mirror in `q`) down to one of the
/// four base cases `W(0,0) = π/2`, `W(1,0) = W(0,1) = 1`, `W(1,1) = 1/2`.
pub fn wallis(p: u32, q: u32) -> PiNumber {
    let mut factor = Rational::one();
    let (mut p, mut q) = (p, q);
    while p >= 2 {
        factor *= rat((p - 1) as i64, (p + q) as i64);
        p -= 2;
    }
    while q >= 2 {
        factor *= rat((q - 1) as i64, (p + q) as i64);
        q -= 2;
    }
    let base = match (p, q) {
        (0, 0) => PiNumber::term(rat(1, 2), 1),
        (1, 1) => PiNumber::from_rational(rat(1, 2)),
        _ => PiNumber::one(),
    };
    base.scale(&factor)
}

/// `∫_{-π/2}^{π/2} sin^p φ · cos^q φ dφ`: twice the Wallis integral for even
/// `p`, zero for odd `p`.
pub fn wallis_symmetric(p: u32, q: u32) -> PiNumber {
    if p % 2 == 1 {
        PiNumber::zero()
    } else {
        wallis(p, q).scale(&rat(2, 1))
    }
}

/// Volume of the unit ball in `R^p`, via `v_p = (2π/p)·v_{p-2}` from
/// `v_0 = 1`, `v_1 = 2`.
pub fn unit_ball_volume(p: u32) -> PiNumber {
    let mut v = if p.is_multiple_of(2) {
        PiNumber::one()
    } else {
        PiNumber::from_integer(2)
    };
    let mut d = if p.is_multiple_of(2) { 2 } else { 3 };
    while d <= p {
        v = &v * &PiNumber::term(rat(2, d as i64), 1);
        d += 2;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wallis_examples() {
        assert_eq!(wallis(0, 0), PiNumber::term(rat(1, 2), 1));
        assert_eq!(wallis(1, 1), PiNumber::from_rational(rat(1, 2)));
        assert_eq!(wallis(2, 2), PiNumber::term(rat(1, 16), 1));
        assert_eq!(wallis(0, 3), PiNumber::from_rational(rat(2, 3)));
    }

    #[test]
    fn wallis_recurrence_and_swap() {
        for p in 2..=20u32 {
            for q in 0..=20u32 {
                let lhs = wallis(p, q).scale(&rat((p + q) as i64, 1));
                let rhs = wallis(p - 2, q).scale(&rat((p - 1) as i64, 1));
                assert_eq!(lhs, rhs, "recurrence at ({p},{q})");
            }
        }
        for p in 0..=12 {
            for q in 0..=12 {
                assert_eq!(wallis(p, q), wallis(q, p));
            }
        }
    }

    #[test]
    fn wallis_pi_grade() {
        for p in 0..=10 {
            for q in 0..=10 {
                let expected = if p % 2 == 0 && q % 2 == 0 { 1 } else { 0 };
                assert_eq!(wallis(p, q).grade(), Some(expected));
            }
        }
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(unit_ball_volume(0), PiNumber::one());
        assert_eq!(unit_ball_volume(1), PiNumber::from_integer(2));
        assert_eq!(unit_ball_volume(2), PiNumber::pi_pow(1));
        assert_eq!(unit_ball_volume(3), PiNumber::term(rat(4, 3), 1));
        assert_eq!(unit_ball_volume(4), PiNumber::term(rat(1, 2), 2));
        assert_eq!(unit_ball_volume(5), PiNumber::term(rat(8, 15), 2));
        assert_eq!(unit_ball_volume(6), PiNumber::term(rat(1, 6), 3));
    }
}
