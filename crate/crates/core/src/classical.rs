//! Cut volumes of quadrics: balls and ellipsoids, elliptic paraboloids, and
//! one sheet of the two-sheeted hyperboloid.
//!
//! Odd-dimensional ball caps are polynomials in the cut height; the sheet of
//! `x_1² − |x'|² = 1` has, up to sign, the same cap polynomial. Paraboloid
//! segments are `K·u^{(N+1)/2}` with `u = d + |c|²/4`, hence polynomial for
//! odd `N` and with polynomial square for even `N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, rat};
use crate::exact::{unit_ball_volume, PiNumber, Rational, UniPoly};
use crate::oracle::{adaptive_quad, AffineFunctional};

/// What is known about the algebraic nature of a cut-volume function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// The volume is a polynomial in the hyperplane parameters.
    Polynomial,
    /// The volume itself is not polynomial but its square is.
    SquareIsPolynomial,
    /// Polynomial in a normalised offset that is itself algebraic in the
    /// hyperplane coefficients (odd-dimensional ellipsoids).
    Algebraic,
    TranscendentalSuspected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadricCut {
    pub volume: f64,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidSpec {
    semiaxes: Vec<f64>,
}

impl EllipsoidSpec {
    pub fn new(semiaxes: Vec<f64>) -> Result<Self> {
        if semiaxes.is_empty() {
            return Err(Error::InvalidSpec("an ellipsoid needs at least one semiaxis".into()));
        }
        if let Some(s) = semiaxes.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidSpec(format!("semiaxes must be positive, got {s}")));
        }
        Ok(Self { semiaxes })
    }

    pub fn semiaxes(&self) -> &[f64] {
        &self.semiaxes
    }

    pub fn dim(&self) -> usize {
        self.semiaxes.len()
    }
}

fn check_odd(n: usize) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenDimension(n));
    }
    Ok(n as u32)
}

/// Volume of `{|x| ≤ 1, x_1 ≥ h}` in `R^N`, `N` odd, as an exact polynomial
/// in `h`: `v_{N−1} ∫_h^1 (1 − t²)^{(N−1)/2} dt`.
pub fn ball_cap_poly(n: usize) -> Result<UniPoly> {
    let n = check_odd(n)?;
    let s = (n - 1) / 2;
    let v = unit_ball_volume(n - 1);
    let mut p = UniPoly::zero();
    for j in 0..=s {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        // C(s,j)(−1)^j ∫_h^1 t^{2j} dt = C(s,j)(−1)^j (1 − h^{2j+1})/(2j+1)
        let c = Rational::from_integer(binomial(s, j) * sign) / rat(2 * j as i64 + 1, 1);
        p.add_term(0, v.scale(&c));
        p.add_term(2 * j + 1, v.scale(&-c));
    }
    Ok(p)
}

/// Cap of one sheet of `x_1² − |x'|² = 1` in `R^N` cut by `x_1 = h ≥ 1`:
/// `v_{N−1} ∫_1^h (t² − 1)^{(N−1)/2} dt`, `N` odd.
pub fn hyperboloid_cap_poly(n: usize) -> Result<UniPoly> {
    let n = check_odd(n)?;
    let s = (n - 1) / 2;
    let v = unit_ball_volume(n - 1);
    let mut p = UniPoly::zero();
    for j in 0..=s {
        let sign = if (s - j) % 2 == 0 { 1 } else { -1 };
        // C(s,j)(−1)^{s−j} (h^{2j+1} − 1)/(2j+1)
        let c = Rational::from_integer(binomial(s, j) * sign) / rat(2 * j as i64 + 1, 1);
        p.add_term(2 * j + 1, v.scale(&c));
        p.add_term(0, v.scale(&-c));
    }
    Ok(p)
}

/// Volume of `{|x| ≤ 1, x_1 ≥ h}` in `R^N` for any `N ≥ 1`. Even `N` goes
/// through quadrature of `v_{N−1} ∫_0^{arccos h} sin^N u du`.
pub fn ball_cap(n: usize, h: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    if !(-1.0..=1.0).contains(&h) {
        return Err(Error::Domain(format!("cap height {h} outside [-1, 1]")));
    }
    if n % 2 == 1 {
        return Ok(ball_cap_poly(n)?.eval(h));
    }
    let v = unit_ball_volume(n as u32 - 1).to_f64();
    let upper = h.acos();
    let integral = adaptive_quad(|u| u.sin().powi(n as i32), 0.0, upper, 1e-14)?;
    Ok(v * integral)
}

/// Volume of the part of the ellipsoid on the side `⟨normal, x⟩ ≥ offset`.
///
/// The diagonal map `x = diag(s)·u` sends the unit ball onto the ellipsoid,
/// turning the plane into `⟨diag(s)·normal, u⟩ = offset`; the volume is the
/// corresponding unit-ball cap times `Π s_i`.
pub fn ellipsoid_cut(e: &EllipsoidSpec, plane: &AffineFunctional) -> Result<QuadricCut> {
    let n = e.dim();
    if plane.normal.len() != n {
        return Err(Error::Domain(format!(
            "plane has {} coefficients, ellipsoid lives in R^{n}",
            plane.normal.len()
        )));
    }
    let pulled: f64 = plane
        .normal
        .iter()
        .zip(&e.semiaxes)
        .map(|(c, s)| (c * s) * (c * s))
        .sum::<f64>()
        .sqrt();
    if pulled == 0.0 {
        return Err(Error::Domain("plane normal vanishes".into()));
    }
    let h = plane.offset / pulled;
    if h.abs() > 1.0 {
        return Err(Error::NoIntersection);
    }
    let det: f64 = e.semiaxes.iter().product();
    Ok(QuadricCut {
        volume: det * ball_cap(n, h)?,
        certificate: if n % 2 == 1 {
            Certificate::Algebraic
        } else {
            Certificate::TranscendentalSuspected
        },
    })
}

/// `K = 2·v_{N−1}/(N+1)` in `V = K·(d + |c|²/4)^{(N+1)/2}`.
pub fn paraboloid_constant(n: usize) -> Result<PiNumber> {
    if n < 2 {
        return Err(Error::Domain(format!("paraboloid needs N ≥ 2, got {n}")));
    }
    Ok(unit_ball_volume(n as u32 - 1).scale(&rat(2, n as i64 + 1)))
}

/// Volume of `{x_N ≥ |x'|², x_N ≤ ⟨c, x'⟩ + d}` in `R^N`.
pub fn paraboloid_cut(n: usize, c: &[f64], d: f64) -> Result<QuadricCut> {
    let k = paraboloid_constant(n)?.to_f64();
    if c.len() != n - 1 {
        return Err(Error::Domain(format!(
            "expected {} plane slopes, got {}",
            n - 1,
            c.len()
        )));
    }
    let u = d + 0.25 * c.iter().map(|v| v * v).sum::<f64>();
    let volume = if u <= 0.0 { 0.0 } else { k * u.sqrt().powi(n as i32 + 1) };
    Ok(QuadricCut {
        volume,
        certificate: if n % 2 == 1 {
            Certificate::Polynomial
        } else {
            Certificate::SquareIsPolynomial
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use std::f64::consts::PI;

    fn pi_term(q: Rational, e: u32) -> PiNumber {
        PiNumber::term(q, e)
    }

    #[test]
    fn ball_cap_poly_examples() {
        let p1 = ball_cap_poly(1).unwrap();
        assert_eq!(
            p1,
            UniPoly::from_terms([(0, PiNumber::one()), (1, PiNumber::from_integer(-1))])
        );

        let p3 = ball_cap_poly(3).unwrap();
        assert_eq!(
            p3,
            UniPoly::from_terms([
                (0, pi_term(rat(2, 3), 1)),
                (1, pi_term(int(-1), 1)),
                (3, pi_term(rat(1, 3), 1)),
            ])
        );

        // (π²/2)(8/15 − h + (2/3)h³ − h⁵/5)
        let p5 = ball_cap_poly(5).unwrap();
        assert_eq!(
            p5,
            UniPoly::from_terms([
                (0, pi_term(rat(4, 15), 2)),
                (1, pi_term(rat(-1, 2), 2)),
                (3, pi_term(rat(1, 3), 2)),
                (5, pi_term(rat(-1, 10), 2)),
            ])
        );
        assert!(matches!(ball_cap_poly(4), Err(Error::EvenDimension(4))));
    }

    #[test]
    fn ball_cap_endpoints() {
        for n in 1..=7 {
            let full = unit_ball_volume(n as u32).to_f64();
            assert!(ball_cap(n, 1.0).unwrap().abs() < 1e-13);
            assert!((ball_cap(n, -1.0).unwrap() - full).abs() < 1e-12);
            assert!((ball_cap(n, 0.0).unwrap() - full / 2.0).abs() < 1e-12);
        }
        assert!(ball_cap(3, 1.5).is_err());
    }

    #[test]
    fn even_cap_matches_disk_segment() {
        let h: f64 = 0.5;
        let expected = h.acos() - h * (1.0 - h * h).sqrt();
        assert!((ball_cap(2, h).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn hyperboloid_examples() {
        let p = hyperboloid_cap_poly(3).unwrap();
        assert_eq!(p, ball_cap_poly(3).unwrap());
        for n in [1, 3, 5, 7] {
            assert!(hyperboloid_cap_poly(n).unwrap().eval_exact(&int(1)).is_zero());
        }
        assert!(matches!(hyperboloid_cap_poly(2), Err(Error::EvenDimension(2))));
    }

    #[test]
    fn ellipsoid_examples() {
        let unit = EllipsoidSpec::new(vec![1.0; 3]).unwrap();
        let cut = ellipsoid_cut(&unit, &AffineFunctional::new(vec![1.0, 0.0, 0.0], 0.3)).unwrap();
        assert!((cut.volume - ball_cap(3, 0.3).unwrap()).abs() < 1e-14);
        assert_eq!(cut.certificate, Certificate::Algebraic);

        let e = EllipsoidSpec::new(vec![2.0, 1.0, 1.0]).unwrap();
        let half = ellipsoid_cut(&e, &AffineFunctional::new(vec![1.0, 0.0, 0.0], 0.0)).unwrap();
        assert!((half.volume - 4.0 * PI / 3.0).abs() < 1e-13);
        let tangent = ellipsoid_cut(&e, &AffineFunctional::new(vec![1.0, 0.0, 0.0], 2.0)).unwrap();
        assert!(tangent.volume.abs() < 1e-13);
        let miss = ellipsoid_cut(&e, &AffineFunctional::new(vec![1.0, 0.0, 0.0], 2.5));
        assert!(matches!(miss, Err(Error::NoIntersection)));
        assert!(EllipsoidSpec::new(vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn ellipsoid_permutation_invariance() {
        let e = EllipsoidSpec::new(vec![0.5, 1.5, 2.0, 1.0]).unwrap();
        let plane = AffineFunctional::new(vec![0.3, -0.2, 0.7, 0.1], 0.4);
        let base = ellipsoid_cut(&e, &plane).unwrap().volume;
        let perm = [2, 0, 3, 1];
        let e2 = EllipsoidSpec::new(perm.iter().map(|&i| e.semiaxes()[i]).collect()).unwrap();
        let plane2 = AffineFunctional::new(perm.iter().map(|&i| plane.normal[i]).collect(), 0.4);
        let permuted = ellipsoid_cut(&e2, &plane2).unwrap().volume;
        assert!((base - permuted).abs() < 1e-12);
    }

    #[test]
    fn paraboloid_examples() {
        let cut = paraboloid_cut(3, &[0.0, 0.0], 1.0).unwrap();
        assert!((cut.volume - PI / 2.0).abs() < 1e-14);
        assert_eq!(cut.certificate, Certificate::Polynomial);

        let r: f64 = 0.7;
        let cut = paraboloid_cut(3, &[0.0, 0.0], r * r).unwrap();
        assert!((cut.volume - PI / 2.0 * r.powi(4)).abs() < 1e-14);

        let cut = paraboloid_cut(2, &[0.0], 1.0).unwrap();
        assert!((cut.volume - 4.0 / 3.0).abs() < 1e-14);
        assert_eq!(cut.certificate, Certificate::SquareIsPolynomial);

        let empty = paraboloid_cut(4, &[1.0, 0.0, 0.0], -0.25).unwrap();
        assert_eq!(empty.volume, 0.0);
        assert!(paraboloid_cut(3, &[0.0], 1.0).is_err());
    }

    #[test]
    fn certificate_tags() {
        let v = serde_json::to_value(Certificate::SquareIsPolynomial).unwrap();
        assert_eq!(v, "square-is-polynomial");
        let v = serde_json::to_value(Certificate::TranscendentalSuspected).unwrap();
        assert_eq!(v, "transcendental-suspected");
    }
}
