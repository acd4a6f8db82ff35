//! Deterministic globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate drops below the requested absolute tolerance. The error estimate
//! of a panel is `|K15 − G7|`, which for smooth integrands overestimates the
//! true error of the Kronrod value by several orders of magnitude.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Bisection budget per integral.
pub const DEFAULT_MAX_INTERVALS: usize = 4000;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    /// Absolute error target.
    pub tol: f64,
    pub max_intervals: usize,
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            max_intervals: DEFAULT_MAX_INTERVALS,
        }
    }
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn gk15<F>(f: &mut F, lo: f64, hi: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Adaptive integration of a fallible integrand; used directly for nested
/// integrals where the inner integral may fail.
pub fn integrate_fallible<F>(mut f: F, lo: f64, hi: f64, opts: QuadOptions) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<f64>,
{
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::Domain(format!(
            "quadrature tolerance must be positive, got {}",
            opts.tol
        )));
    }
    if lo == hi {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            intervals: 1,
        });
    }
    let (lo, hi, sign) = if lo < hi { (lo, hi, 1.0) } else { (hi, lo, -1.0) };

    let mut heap = BinaryHeap::new();
    let first = gk15(&mut f, lo, hi)?;
    let mut total_error = first.error;
    heap.push(first);

    while total_error > opts.tol {
        if heap.len() >= opts.max_intervals {
            return Err(Error::QuadratureFailure {
                estimate: total_error,
                target: opts.tol,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // cannot bisect further in double precision
            return Err(Error::QuadratureFailure {
                estimate: total_error,
                target: opts.tol,
                intervals: heap.len() + 1,
            });
        }
        let left = gk15(&mut f, worst.lo, mid)?;
        let right = gk15(&mut f, mid, worst.hi)?;
        heap.push(left);
        heap.push(right);
        // re-sum instead of updating incrementally so cancellation in the
        // running total cannot drift below the true estimate
        total_error = heap.iter().map(|p| p.error).sum();
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error_estimate: f64 = panels.iter().map(|p| p.error).sum();
    Ok(Quadrature {
        value: sign * value,
        error_estimate,
        intervals: panels.len(),
    })
}

/// `∫_lo^hi f` to absolute tolerance `tol`.
pub fn adaptive_quad<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    integrate_fallible(|x| Ok(f(x)), lo, hi, QuadOptions::with_tol(tol)).map(|q| q.value)
}

/// `∫_{x_lo}^{x_hi} ∫_{y_lo(x)}^{y_hi(x)} f(x, y) dy dx` by nested 1D
/// refinement. The inner integrals get a tolerance tightened by the outer
/// interval length so that their errors cannot exceed `tol` in total.
pub fn adaptive_quad_2d<F, B>(f: F, x_lo: f64, x_hi: f64, y_bounds: B, tol: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
    B: Fn(f64) -> (f64, f64),
{
    let width = (x_hi - x_lo).abs().max(f64::MIN_POSITIVE);
    let inner_tol = 0.5 * tol / width;
    let outer = QuadOptions::with_tol(0.5 * tol);
    integrate_fallible(
        |x| {
            let (lo, hi) = y_bounds(x);
            integrate_fallible(|y| Ok(f(x, y)), lo, hi, QuadOptions::with_tol(inner_tol)).map(|q| q.value)
        },
        x_lo,
        x_hi,
        outer,
    )
    .map(|q| q.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn polynomial() {
        let v = adaptive_quad(|x| x * x, 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn cosine() {
        let v = adaptive_quad(f64::cos, 0.0, FRAC_PI_2, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let v = adaptive_quad(|x| x, 1.0, 0.0, 1e-12).unwrap();
        assert!((v + 0.5).abs() < 1e-14);
    }

    #[test]
    fn sqrt_endpoint() {
        // quarter-disk area
        let v = adaptive_quad(|x| (1.0 - x * x).max(0.0).sqrt(), 0.0, 1.0, 1e-11).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-11);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let opts = QuadOptions {
            tol: 1e-14,
            max_intervals: 3,
        };
        let err = integrate_fallible(|x| Ok((50.0 * x).sin().abs()), 0.0, 10.0, opts).unwrap_err();
        assert!(matches!(err, Error::QuadratureFailure { .. }));
    }

    #[test]
    fn nonpositive_tolerance_rejected() {
        assert!(adaptive_quad(|x| x, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn nested_disk_area() {
        let v = adaptive_quad_2d(
            |_, _| 1.0,
            -1.0,
            1.0,
            |x| {
                let r = (1.0 - x * x).max(0.0).sqrt();
                (-r, r)
            },
            1e-10,
        )
        .unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-10);
    }
}
