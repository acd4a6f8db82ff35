use lacuna_core::exact::rational::rat;
use lacuna_core::fitter::{
    detect_degree, disk_segment_samples, fit_poly, lacuna_grid_samples, monomial_exponents, SampleSet,
};
use lacuna_core::tube::{tube_cut_poly, TubeSpec};
use proptest::prelude::*;

fn poly_value(coeffs: &[f64], exps: &[Vec<u32>], x: &[f64]) -> f64 {
    coeffs
        .iter()
        .zip(exps)
        .map(|(c, e)| c * x.iter().zip(e).map(|(xi, &k)| xi.powi(k as i32)).product::<f64>())
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recovers_random_bivariate_polynomials(
        degree in 0u32..=5,
        raw in prop::collection::vec(-4i32..=4, 21),
    ) {
        let exps = monomial_exponents(2, degree);
        let coeffs: Vec<f64> = raw.iter().take(exps.len()).map(|&c| c as f64 / 2.0).collect();
        let s = SampleSet::grid_2d(
            ["a", "b"], (-1.0, 1.0), (-1.0, 1.0), (12, 12),
            |a, b| poly_value(&coeffs, &exps, &[a, b]), "random",
        ).unwrap();
        let rep = fit_poly(&s, degree).unwrap();
        for (got, want) in rep.coefficients.iter().zip(&coeffs) {
            prop_assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
        prop_assert!(rep.max_abs_residual < 1e-10);
    }

    #[test]
    fn detection_is_monotone_in_tolerance(lo in 0.0f64..0.5, width in 0.2f64..0.5) {
        let s = disk_segment_samples(lo - 0.5, lo - 0.5 + width, 60).unwrap();
        let mut last = 0;
        for tol in [1e-3, 1e-5, 1e-7, 1e-9, 1e-11] {
            let d = detect_degree(&s, 40, tol).unwrap().degree.unwrap_or(u32::MAX);
            prop_assert!(d >= last, "tighter tolerance {tol} gave lower degree {d} < {last}");
            last = d;
        }
    }
}

#[test]
fn monomial_order_is_graded_lex() {
    assert_eq!(
        monomial_exponents(2, 2),
        vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
    );
    assert_eq!(monomial_exponents(1, 3).len(), 4);
}

#[test]
fn tube_cut_polynomial_is_detected_at_degree_three() {
    let spec = TubeSpec::new(2, 1, rat(1, 2)).unwrap();
    let p = tube_cut_poly(&spec);
    let s = lacuna_grid_samples(&spec, &p, 12, "tube P").unwrap();
    let det = detect_degree(&s, 8, 1e-9 * s.value_scale()).unwrap();
    assert_eq!(det.degree, Some(3));
    assert!(det.report.max_abs_residual < 1e-10);
    for d in 0..3 {
        assert!(det.table[d].max_abs_residual > 1e-6, "degree {d} fit unexpectedly good");
    }
}

#[test]
fn disk_segment_area_is_not_polynomial() {
    let s = disk_segment_samples(-0.95, 0.95, 200).unwrap();
    for dmax in [5, 10, 15] {
        assert_eq!(detect_degree(&s, dmax, 1e-6).unwrap().degree, None, "dmax={dmax}");
    }
    let table = lacuna_core::fitter::residual_table(&s, 15).unwrap();
    let floor = table[8..]
        .iter()
        .map(|r| r.max_abs_residual)
        .fold(f64::INFINITY, f64::min);
    assert!(floor >= 5e-6, "residual floor {floor}");
}

#[test]
fn csv_roundtrip_preserves_samples() {
    let s = disk_segment_samples(-0.5, 0.5, 17).unwrap();
    let mut buf = Vec::new();
    s.write_csv(&mut buf).unwrap();
    let back = SampleSet::read_csv(buf.as_slice(), "disk segment area").unwrap();
    assert_eq!(back.points(), s.points());
    assert_eq!(back.variables(), s.variables());
}
