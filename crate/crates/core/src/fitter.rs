//! Least-squares polynomial fitting used as an algebraicity detector.
//!
//! A target that agrees with a polynomial on a domain is fitted to rounding
//! level once the degree is high enough; a transcendental target (the disk
//! segment area is the standard example) leaves a residual floor that no
//! degree removes.

use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tube::TubeSpec;
use crate::BiPoly;

/// Default detection tolerance, relative to the largest absolute sample value.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-9;

/// Pivots of `R` below this fraction of the largest one count as zero.
const RANK_THRESHOLD: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    variables: Vec<String>,
    points: Vec<(Vec<f64>, f64)>,
    description: String,
}

impl SampleSet {
    pub fn new(variables: Vec<String>, points: Vec<(Vec<f64>, f64)>, description: impl Into<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSpec("a sample set needs at least one point".into()));
        }
        for (x, v) in &points {
            if x.len() != variables.len() {
                return Err(Error::InvalidSpec(format!(
                    "sample has {} inputs, expected {}",
                    x.len(),
                    variables.len()
                )));
            }
            if !v.is_finite() || x.iter().any(|xi| !xi.is_finite()) {
                return Err(Error::InvalidSpec("sample values must be finite".into()));
            }
        }
        Ok(Self {
            variables,
            points,
            description: description.into(),
        })
    }

    /// `n` equally spaced samples of `f` on `[lo, hi]`.
    pub fn grid_1d<F: Fn(f64) -> f64>(var: &str, lo: f64, hi: f64, n: usize, f: F, description: &str) -> Result<Self> {
        let pts = linspace(lo, hi, n).map(|x| (vec![x], f(x))).collect();
        Self::new(vec![var.to_string()], pts, description)
    }

    /// Tensor grid of `nx × ny` samples.
    pub fn grid_2d<F: Fn(f64, f64) -> f64>(
        vars: [&str; 2],
        x: (f64, f64),
        y: (f64, f64),
        (nx, ny): (usize, usize),
        f: F,
        description: &str,
    ) -> Result<Self> {
        let ys: Vec<f64> = linspace(y.0, y.1, ny).collect();
        let mut pts = Vec::with_capacity(nx * ny);
        for xi in linspace(x.0, x.1, nx) {
            for &yj in &ys {
                pts.push((vec![xi, yj], f(xi, yj)));
            }
        }
        Self::new(vars.iter().map(|s| s.to_string()).collect(), pts, description)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn points(&self) -> &[(Vec<f64>, f64)] {
        &self.points
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn value_scale(&self) -> f64 {
        self.points.iter().map(|(_, v)| v.abs()).fold(0.0, f64::max)
    }

    /// The same inputs with every value squared.
    pub fn squared(&self) -> Self {
        Self {
            variables: self.variables.clone(),
            points: self.points.iter().map(|(x, v)| (x.clone(), v * v)).collect(),
            description: format!("({})^2", self.description),
        }
    }

    /// CSV with a header of variable names followed by `value`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = self.variables.clone();
        header.push("value".into());
        wtr.write_record(&header)?;
        for (x, v) in &self.points {
            let row: Vec<String> = x.iter().chain(std::iter::once(v)).map(|f| format!("{f:?}")).collect();
            wtr.write_record(&row)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R, description: &str) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let header = rdr.headers()?.clone();
        let cols: Vec<String> = header.iter().map(str::to_string).collect();
        match cols.last() {
            Some(last) if last == "value" => {}
            _ => return Err(Error::Parse("CSV header must end with a `value` column".into())),
        }
        let variables = cols[..cols.len() - 1].to_vec();
        let mut points = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let nums: Vec<f64> = rec
                .iter()
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("not a number: {f:?}")))
                })
                .collect::<Result<_>>()?;
            let (value, x) = nums.split_last().ok_or_else(|| Error::Parse("empty CSV row".into()))?;
            points.push((x.to_vec(), *value));
        }
        Self::new(variables, points, description)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if n == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

/// Exponent vectors of all monomials of total degree ≤ `degree`, graded and
/// then lexicographic with the first variable largest.
pub fn monomial_exponents(num_vars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for t in 0..=degree {
        push_exponents(num_vars, t, &mut Vec::new(), &mut out);
    }
    out
}

fn push_exponents(num_vars: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == num_vars {
        let mut e = prefix.clone();
        e.push(remaining);
        out.push(e);
        return;
    }
    if num_vars == 0 {
        out.push(Vec::new());
        return;
    }
    for i in (0..=remaining).rev() {
        prefix.push(i);
        push_exponents(num_vars, remaining - i, prefix, out);
        prefix.pop();
    }
}

fn monomial_value(x: &[f64], exps: &[u32]) -> f64 {
    x.iter().zip(exps).map(|(xi, &e)| xi.powi(e as i32)).product()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub degree: u32,
    pub variables: Vec<String>,
    /// Monomial coefficients, graded-lex order (see [`monomial_exponents`]).
    pub coefficients: Vec<f64>,
    pub max_abs_residual: f64,
    pub rms_residual: f64,
}

impl FitReport {
    pub fn eval(&self, x: &[f64]) -> f64 {
        monomial_exponents(self.variables.len(), self.degree)
            .iter()
            .zip(&self.coefficients)
            .map(|(e, c)| c * monomial_value(x, e))
            .sum()
    }
}

/// Least-squares fit by Householder QR of the column-normalised design
/// matrix.
pub fn fit_poly(s: &SampleSet, degree: u32) -> Result<FitReport> {
    let nv = s.variables.len();
    if nv > 2 {
        return Err(Error::InvalidSpec(format!(
            "fitting supports at most 2 variables, got {nv}"
        )));
    }
    let exps = monomial_exponents(nv, degree);
    let cols = exps.len();
    let rows = s.len();
    if rows < cols {
        return Err(Error::RankDeficient {
            rank: rows,
            columns: cols,
        });
    }

    let mut a = DMatrix::from_fn(rows, cols, |i, j| monomial_value(&s.points[i].0, &exps[j]));
    let y = DVector::from_iterator(rows, s.points.iter().map(|(_, v)| *v));

    let norms: Vec<f64> = (0..cols).map(|j| a.column(j).norm()).collect();
    for (j, n) in norms.iter().enumerate() {
        if *n == 0.0 {
            return Err(Error::RankDeficient {
                rank: cols - 1,
                columns: cols,
            });
        }
        a.column_mut(j).scale_mut(1.0 / n);
    }

    let qr = a.clone().qr();
    let r = qr.r();
    let pivots: Vec<f64> = (0..cols).map(|i| r[(i, i)].abs()).collect();
    let largest = pivots.iter().cloned().fold(0.0, f64::max);
    let rank = pivots.iter().filter(|p| **p > RANK_THRESHOLD * largest).count();
    if rank < cols {
        return Err(Error::RankDeficient { rank, columns: cols });
    }
    let qty = qr.q().transpose() * &y;
    let scaled = r
        .solve_upper_triangular(&qty)
        .ok_or(Error::RankDeficient { rank, columns: cols })?;
    let coefficients: Vec<f64> = scaled.iter().zip(&norms).map(|(c, n)| c / n).collect();

    let residual = &a * &scaled - &y;
    let max_abs_residual = residual.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let rms_residual = (residual.norm_squared() / rows as f64).sqrt();

    Ok(FitReport {
        degree,
        variables: s.variables.clone(),
        coefficients,
        max_abs_residual,
        rms_residual,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    /// Smallest degree whose fit meets the tolerance.
    pub degree: Option<u32>,
    pub tol: f64,
    /// The accepted fit, or the best one when nothing was accepted.
    pub report: FitReport,
    /// Every fit tried, in increasing degree.
    pub table: Vec<FitReport>,
}

/// Fits degrees `0..=dmax` in turn and stops at the first whose max-abs
/// residual is below `tol`.
pub fn detect_degree(s: &SampleSet, dmax: u32, tol: f64) -> Result<Detection> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut table = Vec::new();
    for d in 0..=dmax {
        let rep = fit_poly(s, d)?;
        let hit = rep.max_abs_residual < tol;
        table.push(rep);
        if hit {
            return Ok(Detection {
                degree: Some(d),
                tol,
                report: table.last().cloned().expect("just pushed"),
                table,
            });
        }
    }
    let best = table
        .iter()
        .min_by(|x, y| x.max_abs_residual.total_cmp(&y.max_abs_residual))
        .cloned()
        .expect("dmax ≥ 0 gives at least one fit");
    Ok(Detection {
        degree: None,
        tol,
        report: best,
        table,
    })
}

/// Residuals of the fits of every degree `0..=dmax`.
pub fn residual_table(s: &SampleSet, dmax: u32) -> Result<Vec<FitReport>> {
    (0..=dmax).map(|d| fit_poly(s, d)).collect()
}

/// Area of `{x² + y² ≤ 1, x ≥ b}`.
pub fn disk_segment_area(b: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&b) {
        return Err(Error::Domain(format!("segment offset {b} outside [-1, 1]")));
    }
    Ok(b.acos() - b * (1.0 - b * b).sqrt())
}

/// Samples of the disk segment area on a uniform grid.
pub fn disk_segment_samples(lo: f64, hi: f64, n: usize) -> Result<SampleSet> {
    if lo < -1.0 || hi > 1.0 {
        return Err(Error::Domain("segment offsets must lie in [-1, 1]".into()));
    }
    SampleSet::grid_1d(
        "b",
        lo,
        hi,
        n,
        |b| b.acos() - b * (1.0 - b * b).sqrt(),
        "disk segment area",
    )
}

/// The box `[0, t]²` with `t = √(1−ε)/(1+ε)` lies inside the lacuna.
pub fn lacuna_box_side(spec: &TubeSpec) -> f64 {
    let eps = spec.epsilon_f64();
    let t = (1.0 - eps).sqrt() / (1.0 + eps);
    t * (1.0 - 1e-12)
}

/// Tensor-grid samples of a polynomial in `(a, b)` over the lacuna box.
pub fn lacuna_grid_samples(spec: &TubeSpec, poly: &BiPoly, per_axis: usize, description: &str) -> Result<SampleSet> {
    let t = lacuna_box_side(spec);
    SampleSet::grid_2d(
        ["a", "b"],
        (0.0, t),
        (0.0, t),
        (per_axis, per_axis),
        |a, b| poly.eval(a, b),
        description,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        assert_eq!(
            monomial_exponents(2, 2),
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(monomial_exponents(1, 3), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(monomial_exponents(2, 4).len(), 15);
    }

    #[test]
    fn linear_fit() {
        let s = SampleSet::grid_1d("b", 0.0, 1.0, 10, |b| 2.0 * b + 1.0, "line").unwrap();
        let rep = fit_poly(&s, 1).unwrap();
        assert!(rep.max_abs_residual < 1e-12);
        assert!((rep.coefficients[0] - 1.0).abs() < 1e-12);
        assert!((rep.coefficients[1] - 2.0).abs() < 1e-12);
        assert_eq!(detect_degree(&s, 5, 1e-9).unwrap().degree, Some(1));
    }

    #[test]
    fn constant_fit() {
        let s = SampleSet::grid_1d("b", -1.0, 1.0, 4, |_| 3.5, "const").unwrap();
        let rep = fit_poly(&s, 0).unwrap();
        assert!(rep.max_abs_residual < 1e-14);
        assert!((rep.coefficients[0] - 3.5).abs() < 1e-14);
    }

    #[test]
    fn too_few_points_is_rank_deficient() {
        let s = SampleSet::grid_1d("b", 0.0, 1.0, 3, |b| b, "short").unwrap();
        assert!(matches!(fit_poly(&s, 3), Err(Error::RankDeficient { .. })));
        // repeated abscissae
        let pts = vec![(vec![0.5], 1.0); 6];
        let s = SampleSet::new(vec!["b".into()], pts, "dup").unwrap();
        assert!(matches!(fit_poly(&s, 2), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn disk_segment_values() {
        assert!((disk_segment_area(0.0).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(disk_segment_area(1.0).unwrap(), 0.0);
        let expected = std::f64::consts::PI / 3.0 - 3f64.sqrt() / 4.0;
        assert!((disk_segment_area(0.5).unwrap() - expected).abs() < 1e-15);
        assert!(disk_segment_area(1.01).is_err());
    }

    #[test]
    fn csv_roundtrip() {
        let s = SampleSet::grid_2d(["a", "b"], (0.0, 1.0), (0.0, 0.5), (3, 4), |a, b| a * b + 0.1, "t").unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("a,b,value\n"));
        let back = SampleSet::read_csv(&buf[..], "t").unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn csv_requires_value_column() {
        let bad = "a,b\n1,2\n";
        assert!(SampleSet::read_csv(bad.as_bytes(), "bad").is_err());
    }
}
