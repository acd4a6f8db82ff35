//! The `verify` subcommand: exact tube polynomials against quadrature of the
//! fibre integral and against Monte Carlo cut volumes, over a grid of
//! `(k, m)`.

use anyhow::Result;
use clap::Args;
use serde::Serialize;

use lacuna_core::exact::format_rational;
use lacuna_core::fitter::lacuna_box_side;
use lacuna_core::oracle::{mc_cut_volume, quad_dvdb};
use lacuna_core::tube::{in_lacuna, Hyperplane, NormalForm, TubeEngine, TubeSpec, DEFAULT_TOTAL_TOL};

use crate::{csv_string, parse_eps, to_json, Format, Output};

/// Below this many samples the Monte Carlo comparison is reported as
/// low-power and not counted.
pub const MIN_MC_SAMPLES: u64 = 100_000;

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub kmax: u32,
    #[arg(long, default_value_t = 2)]
    pub mmax: u32,
    #[arg(long, default_value = "1/2")]
    pub eps: String,
    /// Lacuna points per (k, m) for the quadrature comparison.
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    /// Monte Carlo samples per (k, m).
    #[arg(long, default_value_t = 2_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relative agreement required between exact and quadrature ∂V/∂b.
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Monte Carlo acceptance band in standard errors.
    #[arg(long, default_value_t = 3.0)]
    pub sigmas: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    LowPower,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: f64,
    pub observed: f64,
    pub deviation: f64,
    pub bound: f64,
}

impl Check {
    fn compare(name: String, expected: f64, observed: f64, bound: f64) -> Self {
        let deviation = (observed - expected).abs();
        Self {
            name,
            status: if deviation <= bound { Status::Pass } else { Status::Fail },
            expected,
            observed,
            deviation,
            bound,
        }
    }

    fn exact(name: String, holds: bool) -> Self {
        Self {
            name,
            status: if holds { Status::Pass } else { Status::Fail },
            expected: 1.0,
            observed: if holds { 1.0 } else { 0.0 },
            deviation: if holds { 0.0 } else { 1.0 },
            bound: 0.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub low_power: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub eps: String,
    pub kmax: u32,
    pub mmax: u32,
    pub samples: u64,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub ok: bool,
}

/// Van der Corput radical inverse, for evenly spread deterministic points.
fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let (mut f, mut r) = (inv, 0.0);
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

/// Deterministic lacuna points from the 2-3 Halton sequence.
pub fn lacuna_points(spec: &TubeSpec, count: usize) -> Vec<NormalForm> {
    let t = lacuna_box_side(spec);
    (1..=count as u64)
        .map(|i| NormalForm {
            a: t * radical_inverse(i, 2),
            b: t * radical_inverse(i, 3),
        })
        .collect()
}

fn structure_holds(spec: &TubeSpec, engine: &TubeEngine) -> bool {
    let q = engine.dvdb();
    let even = q.terms().all(|((i, j), _)| i % 2 == 0 && j % 2 == 0);
    let degree = q.total_degree().is_none_or(|d| d <= 2 * (spec.k() - 1));
    even && degree && q.uniform_pi_grade() == Some(spec.pi_grade())
}

pub fn verify_report(args: &VerifyArgs) -> Result<VerifyReport> {
    let eps = parse_eps(&args.eps)?;
    let mut checks = Vec::new();
    for k in 1..=args.kmax {
        for m in 1..=args.mmax {
            let spec = TubeSpec::new(k, m, eps.clone())?;
            let engine = TubeEngine::new(spec.clone(), DEFAULT_TOTAL_TOL)?;
            let tag = format!("k={k} m={m}");

            checks.push(Check::exact(
                format!("structure {tag}"),
                structure_holds(&spec, &engine),
            ));

            for (idx, nf) in lacuna_points(&spec, args.points).into_iter().enumerate() {
                let exact = engine.dvdb().eval(nf.a, nf.b);
                let quad = quad_dvdb(&spec, nf.a, nf.b, 1e-3 * args.rel_tol * exact.abs())?;
                checks.push(Check::compare(
                    format!("quadrature {tag} point {idx} (a={:.6}, b={:.6})", nf.a, nf.b),
                    exact,
                    quad,
                    args.rel_tol * exact.abs(),
                ));
            }

            let through_origin = engine.volumes_at(NormalForm { a: 0.3, b: 0.0 })?;
            checks.push(Check::exact(
                format!("symmetry {tag}"),
                through_origin.bigger == through_origin.smaller,
            ));

            let mut nf = NormalForm { a: 0.1, b: 0.05 };
            if !in_lacuna(&spec, nf) {
                nf = NormalForm { a: 0.0, b: 0.0 };
            }
            let v = engine.volumes_at(nf)?;
            let h = Hyperplane::from_normal_form(spec.n() as usize, m as usize, nf);
            let seed = args.seed.wrapping_add(((k as u64) << 32) | m as u64);
            let est = mc_cut_volume(&spec.implicit_body(), &h.functional(), args.samples, seed)?;
            for (side, expected, observed, se) in [
                ("bigger", v.bigger, est.side_minus, est.stderr_minus()),
                ("smaller", v.smaller, est.side_plus, est.stderr_plus()),
            ] {
                let mut c = Check::compare(
                    format!("monte-carlo {tag} {side} (a={}, b={})", nf.a, nf.b),
                    expected,
                    observed,
                    args.sigmas * se + v.tolerance,
                );
                if args.samples < MIN_MC_SAMPLES {
                    c.status = Status::LowPower;
                }
                checks.push(c);
            }
        }
    }
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let summary = Summary {
        pass: count(Status::Pass),
        fail: count(Status::Fail),
        low_power: count(Status::LowPower),
    };
    let ok = summary.fail == 0;
    Ok(VerifyReport {
        eps: format_rational(&eps),
        kmax: args.kmax,
        mmax: args.mmax,
        samples: args.samples,
        seed: args.seed,
        checks,
        summary,
        ok,
    })
}

pub fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<Output> {
    let report = verify_report(args)?;
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let rows = report.checks.iter().map(|c| {
                vec![
                    format!("\"{}\"", c.name),
                    serde_json::to_value(c.status)
                        .ok()
                        .and_then(|v| v.as_str().map(str::to_string))
                        .unwrap_or_default(),
                    format!("{:?}", c.expected),
                    format!("{:?}", c.observed),
                    format!("{:?}", c.deviation),
                    format!("{:?}", c.bound),
                ]
            });
            csv_string(&["name", "status", "expected", "observed", "deviation", "bound"], rows)
        }
    };
    Ok(Output { text, ok: report.ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lacuna_core::exact::rational::rat;

    #[test]
    fn halton_points_stay_in_lacuna() {
        let spec = TubeSpec::new(2, 2, rat(1, 2)).unwrap();
        let pts = lacuna_points(&spec, 50);
        assert_eq!(pts.len(), 50);
        assert!(pts.iter().all(|nf| in_lacuna(&spec, *nf)));
    }

    #[test]
    fn radical_inverse_values() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(1, 3) - 1.0 / 3.0).abs() < 1e-15);
    }
}
