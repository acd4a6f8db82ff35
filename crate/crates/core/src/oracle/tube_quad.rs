use super::quad::{adaptive_quad, adaptive_quad_2d};
use crate::error::{Error, Result};
use crate::exact::unit_ball_volume;
use crate::tube::{in_lacuna, NormalForm, TubeSpec};

/// Numeric `∂V/∂b` at `(a, b)`, straight from the fibre integral in the
/// original coordinates `(y_1, ρ = |y'|)`, without any trigonometric
/// substitution:
///
/// `∫_{−ε}^{ε} ∫_0^{√(ε²−y_1²)} (m−1)·v_{m−1}·ρ^{m−2}·v_{2k}·[(A+s)^k − (A−s)^k] dρ dy_1`
///
/// with `A = 1 − (a·y_1 + b)²`, `s = √(ε² − y_1² − ρ²)`; for `m = 1` the
/// inner integral is absent.
pub fn quad_dvdb(spec: &TubeSpec, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !in_lacuna(spec, NormalForm { a, b }) {
        return Err(Error::OutsideLacuna { a, b });
    }
    let k = spec.k() as i32;
    let m = spec.m();
    let eps = spec.epsilon_f64();
    let eps2 = eps * eps;
    let v2k = unit_ball_volume(2 * spec.k()).to_f64();

    let layer = move |y1: f64, s: f64| {
        let t = a * y1 + b;
        let base = 1.0 - t * t;
        v2k * ((base + s).powi(k) - (base - s).powi(k))
    };

    if m == 1 {
        return adaptive_quad(|y| layer(y, (eps2 - y * y).max(0.0).sqrt()), -eps, eps, tol);
    }

    let fibre = (m - 1) as f64 * unit_ball_volume(m - 1).to_f64();
    let rho_pow = (m - 2) as i32;
    adaptive_quad_2d(
        |y1, rho| {
            let s = (eps2 - y1 * y1 - rho * rho).max(0.0).sqrt();
            fibre * rho.powi(rho_pow) * layer(y1, s)
        },
        -eps,
        eps,
        |y1| (0.0, (eps2 - y1 * y1).max(0.0).sqrt()),
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use std::f64::consts::PI;

    #[test]
    fn k1_m1_is_constant() {
        let spec = TubeSpec::new(1, 1, rat(1, 2)).unwrap();
        for (a, b) in [(0.0, 0.0), (0.3, 0.1), (0.1, 0.5)] {
            let v = quad_dvdb(&spec, a, b, 1e-12).unwrap();
            assert!((v - PI * PI / 4.0).abs() < 1e-10, "{v}");
        }
    }

    #[test]
    fn k2_m1_at_origin() {
        let spec = TubeSpec::new(2, 1, rat(1, 2)).unwrap();
        let v = quad_dvdb(&spec, 0.0, 0.0, 1e-12).unwrap();
        assert!((v - PI.powi(3) / 4.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn k1_m2_constant() {
        let spec = TubeSpec::new(1, 2, rat(1, 2)).unwrap();
        let v = quad_dvdb(&spec, 0.2, 0.1, 1e-12).unwrap();
        assert!((v - 4.0 / 3.0 * PI * PI / 8.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn outside_lacuna() {
        let spec = TubeSpec::new(1, 1, rat(1, 2)).unwrap();
        assert!(matches!(
            quad_dvdb(&spec, 0.0, 0.8, 1e-10),
            Err(Error::OutsideLacuna { .. })
        ));
    }
}
