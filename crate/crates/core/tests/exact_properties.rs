use lacuna_core::exact::rational::{rat, Rational};
use lacuna_core::exact::{unit_ball_volume, wallis, BiPoly, PiNumber};
use lacuna_core::oracle::{adaptive_quad, mc_cut_volume, AffineFunctional, ImplicitBody};
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_2;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn pi_number() -> impl Strategy<Value = PiNumber> {
    prop::collection::vec((0u32..4, small_rational()), 0..4).prop_map(PiNumber::from_terms)
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), pi_number()), 0..5).prop_map(BiPoly::from_terms)
}

proptest! {
    #[test]
    fn pi_number_ring_laws(x in pi_number(), y in pi_number(), z in pi_number()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        for (_, q) in (&x * &y).terms() {
            prop_assert!(!num::Zero::is_zero(q));
        }
    }

    #[test]
    fn bipoly_ring_laws(p in bipoly(), q in bipoly(), r in bipoly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn antiderivative_is_right_inverse_of_derivative(p in bipoly()) {
        let integrated = p.antiderivative_b();
        prop_assert_eq!(integrated.derivative_b(), p);
        prop_assert!(integrated.terms().all(|((_, j), _)| j >= 1));
    }

    #[test]
    fn json_roundtrip(p in bipoly()) {
        let s = p.to_json();
        let back = BiPoly::from_json(&s).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_json(), s);
    }

    #[test]
    fn exact_eval_matches_float_eval(p in bipoly(), a in small_rational(), b in small_rational()) {
        let exact = p.eval_exact(&a, &b).to_f64();
        let fa = num::ToPrimitive::to_f64(&a).unwrap();
        let fb = num::ToPrimitive::to_f64(&b).unwrap();
        let float = p.eval(fa, fb);
        prop_assert!((exact - float).abs() <= 1e-9 * (1.0 + exact.abs()));
    }
}

#[test]
fn wallis_matches_quadrature() {
    for p in 0..=10 {
        for q in 0..=10 {
            let exact = wallis(p, q).to_f64();
            let numeric = adaptive_quad(
                |t| t.sin().powi(p as i32) * t.cos().powi(q as i32),
                0.0,
                FRAC_PI_2,
                1e-14,
            )
            .unwrap();
            assert!(
                (exact - numeric).abs() <= 1e-10 * exact.abs(),
                "wallis({p},{q}) = {exact}, quadrature {numeric}"
            );
        }
    }
    let w22 = adaptive_quad(|t| (t.sin() * t.cos()).powi(2), 0.0, FRAC_PI_2, 1e-13).unwrap();
    assert!((w22 - std::f64::consts::PI / 16.0).abs() < 1e-12);
}

#[test]
fn halving_tolerance_never_hurts_on_wallis_set() {
    for p in 0..=10 {
        for q in 0..=10 {
            let exact = wallis(p, q).to_f64();
            let f = |t: f64| t.sin().powi(p as i32) * t.cos().powi(q as i32);
            let mut tol = 1e-4;
            let mut prev = f64::INFINITY;
            while tol > 1e-13 {
                let dev = (adaptive_quad(f, 0.0, FRAC_PI_2, tol).unwrap() - exact).abs();
                // deviations already at rounding level may jitter
                assert!(dev <= prev + 1e-15, "({p},{q}) tol {tol}: {dev} > {prev}");
                prev = dev;
                tol *= 0.5;
            }
        }
    }
}

#[test]
fn unit_ball_volume_five_by_monte_carlo() {
    let exact = unit_ball_volume(5);
    assert_eq!(exact, PiNumber::term(rat(8, 15), 2));
    let body = ImplicitBody::ball(5);
    let plane = AffineFunctional::new(vec![1.0, 0.0, 0.0, 0.0, 0.0], 10.0);
    let est = mc_cut_volume(&body, &plane, 4_000_000, 2024).unwrap();
    let dev = (est.total() - exact.to_f64()).abs();
    assert!(
        dev <= 3.0 * est.total_stderr(),
        "MC {} vs {} (se {})",
        est.total(),
        exact.to_f64(),
        est.total_stderr()
    );
}

#[test]
fn unit_ball_volume_grade() {
    for p in 0..=12u32 {
        assert_eq!(unit_ball_volume(p).grade(), Some(p / 2));
    }
}
