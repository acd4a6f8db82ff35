//! Subcommand implementations for the `lacuna` binary.
//!
//! Every command returns its output as a string (JSON or CSV) plus a success
//! flag, so the binary only has to route it to stdout or a file and pick the
//! exit status.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod verify;

use lacuna_core::classical::{
    ball_cap, ball_cap_poly, ellipsoid_cut, hyperboloid_cap_poly, paraboloid_cut, Certificate, EllipsoidSpec,
    QuadricCut,
};
use lacuna_core::exact::{parse_rational, Rational};
use lacuna_core::fitter::{
    detect_degree, disk_segment_samples, fit_poly, lacuna_grid_samples, residual_table, SampleSet, DEFAULT_RELATIVE_TOL,
};
use lacuna_core::oracle::{mc_cut_volume, AffineFunctional};
use lacuna_core::tube::{normal_form, Hyperplane, NormalForm, TubeEngine, TubeSpec, DEFAULT_TOTAL_TOL};
use serde::Serialize;
use serde_json::json;

/// Directory used for relative `--out` paths when set.
pub const OUT_DIR_ENV: &str = "LACUNA_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "lacuna",
    version,
    about = "Exact and numeric cut volumes of tubes and quadrics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of stdout. Relative paths are resolved
    /// against $LACUNA_OUT_DIR when it is set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact ∂V/∂b and P(a, b) polynomials of the tube.
    TubePoly(TubeArgs),
    /// Two-valued cut volume of the tube for one hyperplane.
    TubeVolumes(TubeVolumeArgs),
    /// Monte Carlo cut volume of the tube for one hyperplane.
    Mc(McArgs),
    /// Cross-check exact polynomials against quadrature and Monte Carlo.
    Verify(verify::VerifyArgs),
    /// Least-squares polynomial fit / degree detection.
    Fit(FitArgs),
    /// Cut volumes and cap polynomials of quadrics.
    Classical(ClassicalArgs),
    /// Residual floor of polynomial fits to the disk segment area.
    NewtonDemo(NewtonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct TubeArgs {
    /// Sphere S^{2k}.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Codimension of R^{2k+1} in the ambient space.
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Tube thickness as an exact rational "p/q".
    #[arg(long, default_value = "1/2")]
    pub eps: String,
}

impl TubeArgs {
    pub fn spec(&self) -> Result<TubeSpec> {
        let eps = parse_eps(&self.eps)?;
        Ok(TubeSpec::new(self.k, self.m, eps)?)
    }
}

fn parse_eps(s: &str) -> Result<Rational> {
    parse_rational(s).with_context(|| format!("--eps expects a rational \"p/q\", got {s:?}"))
}

#[derive(Debug, Clone, Args)]
pub struct PlaneArgs {
    /// Normal-form slope a (x_1 = a·y_1 + b).
    #[arg(long)]
    pub a: Option<f64>,
    /// Normal-form offset b.
    #[arg(long)]
    pub b: Option<f64>,
    /// General hyperplane: comma-separated x-coefficients.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    /// General hyperplane: comma-separated y-coefficients.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Option<Vec<f64>>,
    /// General hyperplane: right-hand side.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
}

impl PlaneArgs {
    pub fn hyperplane(&self, spec: &TubeSpec) -> Result<Hyperplane> {
        let (n, m) = (spec.n() as usize, spec.m() as usize);
        match (self.a, self.b, &self.alpha, &self.gamma, self.beta) {
            (Some(a), Some(b), None, None, None) => {
                if a < 0.0 || b < 0.0 {
                    bail!("normal-form coordinates --a and --b must be non-negative");
                }
                Ok(Hyperplane::from_normal_form(n, m, NormalForm { a, b }))
            }
            (None, None, Some(alpha), Some(gamma), Some(beta)) => {
                if alpha.len() != n || gamma.len() != m {
                    bail!("expected {n} alpha and {m} gamma coefficients");
                }
                Ok(Hyperplane::new(alpha.clone(), gamma.clone(), beta))
            }
            _ => bail!("give either --a and --b, or all of --alpha, --gamma and --beta"),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TubeVolumeArgs {
    #[command(flatten)]
    pub tube: TubeArgs,
    #[command(flatten)]
    pub plane: PlaneArgs,
    /// Absolute tolerance for the total volume quadrature.
    #[arg(long, default_value_t = DEFAULT_TOTAL_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub tube: TubeArgs,
    #[command(flatten)]
    pub plane: PlaneArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// CSV sample file (header: variable names, then "value"). Without it,
    /// samples of the tube's P(a, b) over the lacuna box are generated.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub tube: TubeArgs,
    /// Grid points per axis for generated samples.
    #[arg(long, default_value_t = 12)]
    pub grid: usize,
    /// Fit exactly this degree.
    #[arg(long, conflicts_with = "dmax")]
    pub degree: Option<u32>,
    /// Detect the smallest adequate degree up to this bound.
    #[arg(long)]
    pub dmax: Option<u32>,
    /// Absolute detection tolerance; defaults to 1e-9 times the largest |value|.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Body {
    Ball,
    Ellipsoid,
    Paraboloid,
    Hyperboloid,
}

#[derive(Debug, Clone, Args)]
pub struct ClassicalArgs {
    #[arg(long, value_enum)]
    pub body: Body,
    /// Ambient dimension; for ellipsoids it defaults to the number of semiaxes.
    #[arg(long = "N", alias = "dim")]
    pub dim: Option<usize>,
    /// Cap height for balls (x_1 ≥ h) and hyperboloid sheets (x_1 ≤ h).
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<f64>,
    /// Ellipsoid semiaxes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub semiaxes: Option<Vec<f64>>,
    /// Ellipsoid cutting plane normal, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub normal: Option<Vec<f64>>,
    /// Ellipsoid cutting plane offset (⟨normal, x⟩ ≥ offset is measured).
    #[arg(long, allow_hyphen_values = true)]
    pub offset: Option<f64>,
    /// Paraboloid plane slopes c (x_N = ⟨c, x'⟩ + d), comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Option<Vec<f64>>,
    /// Paraboloid plane offset d.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<f64>,
    /// Number of points in the plot-ready CSV curve.
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct NewtonArgs {
    #[arg(long, default_value_t = 15)]
    pub dmax: u32,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Sampled offsets are in [-bmax, bmax].
    #[arg(long, default_value_t = 0.95)]
    pub bmax: f64,
}

/// Output of a command: the rendered text and whether all checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::TubePoly(args) => cmd_tube_poly(args, cli.format),
        Command::TubeVolumes(args) => cmd_tube_volumes(args),
        Command::Mc(args) => cmd_mc(args),
        Command::Verify(args) => verify::cmd_verify(args, cli.format),
        Command::Fit(args) => cmd_fit(args, cli.format),
        Command::Classical(args) => cmd_classical(args, cli.format),
        Command::NewtonDemo(args) => cmd_newton_demo(args, cli.format),
    }
}

pub fn cmd_tube_poly(args: &TubeArgs, format: Format) -> Result<Output> {
    let spec = args.spec()?;
    let dvdb = lacuna_core::tube::tube_dvdb(&spec);
    let cut = dvdb.antiderivative_b();
    if format == Format::Csv {
        let rows = cut.terms().flat_map(|((i, j), c)| {
            c.terms()
                .map(|(pi, q)| {
                    vec![
                        i.to_string(),
                        j.to_string(),
                        pi.to_string(),
                        lacuna_core::exact::format_rational(q),
                    ]
                })
                .collect::<Vec<_>>()
        });
        return Ok(Output::ok(csv_string(&["a", "b", "pi", "q"], rows)));
    }
    let report = json!({
        "k": spec.k(),
        "m": spec.m(),
        "eps": lacuna_core::exact::format_rational(spec.epsilon()),
        "ambient_dim": spec.ambient_dim(),
        "pi_grade": spec.pi_grade(),
        "degree": cut.total_degree(),
        "dvdb": dvdb,
        "cut": cut,
    });
    Ok(Output::ok(to_json(&report)?))
}

pub fn cmd_tube_volumes(args: &TubeVolumeArgs) -> Result<Output> {
    let spec = args.tube.spec()?;
    let h = args.plane.hyperplane(&spec)?;
    let nf = normal_form(&h)?;
    let engine = TubeEngine::new(spec, args.tol)?;
    let v = engine.volumes(&h)?;
    Ok(Output::ok(to_json(&json!({ "normal_form": nf, "volumes": v }))?))
}

pub fn cmd_mc(args: &McArgs) -> Result<Output> {
    let spec = args.tube.spec()?;
    let h = args.plane.hyperplane(&spec)?;
    let est = mc_cut_volume(&spec.implicit_body(), &h.functional(), args.samples, args.seed)?;
    Ok(Output::ok(to_json(&est)?))
}

fn load_samples(args: &FitArgs) -> Result<SampleSet> {
    match &args.input {
        Some(path) => {
            let f = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
            Ok(SampleSet::read_csv(f, &path.display().to_string())?)
        }
        None => {
            let spec = args.tube.spec()?;
            let p = lacuna_core::tube::tube_cut_poly(&spec);
            let desc = format!("tube P(a,b), k={}, m={}, eps={}", spec.k(), spec.m(), args.tube.eps);
            Ok(lacuna_grid_samples(&spec, &p, args.grid, &desc)?)
        }
    }
}

pub fn cmd_fit(args: &FitArgs, format: Format) -> Result<Output> {
    let samples = load_samples(args)?;
    if format == Format::Csv {
        let mut buf = Vec::new();
        samples.write_csv(&mut buf)?;
        return Ok(Output::ok(String::from_utf8(buf)?));
    }
    let tol = args
        .tol
        .unwrap_or(DEFAULT_RELATIVE_TOL * samples.value_scale().max(f64::MIN_POSITIVE));
    match (args.degree, args.dmax) {
        (Some(d), _) => {
            let rep = fit_poly(&samples, d)?;
            let ok = rep.max_abs_residual < tol;
            let text = to_json(&json!({
                "samples": samples.len(),
                "description": samples.description(),
                "tol": tol,
                "within_tol": ok,
                "report": rep,
            }))?;
            Ok(Output { text, ok: true })
        }
        (None, dmax) => {
            let det = detect_degree(&samples, dmax.unwrap_or(8), tol)?;
            let text = to_json(&json!({
                "samples": samples.len(),
                "description": samples.description(),
                "detected": detected_json(det.degree),
                "tol": det.tol,
                "report": det.report,
                "residuals": det.table.iter().map(|r| json!({
                    "degree": r.degree,
                    "max_abs_residual": r.max_abs_residual,
                    "rms_residual": r.rms_residual,
                })).collect::<Vec<_>>(),
            }))?;
            Ok(Output::ok(text))
        }
    }
}

fn detected_json(d: Option<u32>) -> serde_json::Value {
    match d {
        Some(d) => json!(d),
        None => json!("none"),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn cut_json(cut: &QuadricCut) -> serde_json::Value {
    json!({ "volume": cut.volume, "certificate": cut.certificate })
}

pub fn cmd_classical(args: &ClassicalArgs, format: Format) -> Result<Output> {
    let n = match (args.dim, &args.semiaxes) {
        (Some(n), _) => n,
        (None, Some(axes)) if args.body == Body::Ellipsoid => axes.len(),
        _ => bail!("--N is required"),
    };
    match args.body {
        Body::Ball => {
            let poly = if n % 2 == 1 { Some(ball_cap_poly(n)?) } else { None };
            if format == Format::Csv {
                let rows = linspace(-1.0, 1.0, args.points)
                    .into_iter()
                    .map(|h| Ok(vec![format!("{h:?}"), format!("{:?}", ball_cap(n, h)?)]))
                    .collect::<Result<Vec<_>>>()?;
                return Ok(Output::ok(csv_string(&["h", "volume"], rows)));
            }
            let certificate = if n % 2 == 1 {
                Certificate::Polynomial
            } else {
                Certificate::TranscendentalSuspected
            };
            let mut report = json!({
                "body": "ball",
                "N": n,
                "variable": "h",
                "certificate": certificate,
                "polynomial": poly,
            });
            if let Some(h) = args.h {
                report["cut"] = json!({ "h": h, "volume": ball_cap(n, h)? });
            }
            Ok(Output::ok(to_json(&report)?))
        }
        Body::Hyperboloid => {
            let poly = hyperboloid_cap_poly(n)?;
            if format == Format::Csv {
                let rows = linspace(1.0, 2.0, args.points)
                    .into_iter()
                    .map(|h| vec![format!("{h:?}"), format!("{:?}", poly.eval(h))]);
                return Ok(Output::ok(csv_string(&["h", "volume"], rows)));
            }
            let mut report = json!({
                "body": "hyperboloid",
                "N": n,
                "variable": "h",
                "certificate": Certificate::Polynomial,
                "polynomial": poly,
            });
            if let Some(h) = args.h {
                if h < 1.0 {
                    bail!("hyperboloid cap height must be at least 1");
                }
                report["cut"] = json!({ "h": h, "volume": poly.eval(h) });
            }
            Ok(Output::ok(to_json(&report)?))
        }
        Body::Ellipsoid => {
            let axes = args.semiaxes.clone().unwrap_or_else(|| vec![1.0; n]);
            if axes.len() != n {
                bail!("expected {n} semiaxes, got {}", axes.len());
            }
            let spec = EllipsoidSpec::new(axes)?;
            let mut normal = vec![0.0; n];
            normal[0] = 1.0;
            let normal = args.normal.clone().unwrap_or(normal);
            if format == Format::Csv {
                let reach: f64 = normal
                    .iter()
                    .zip(spec.semiaxes())
                    .map(|(c, s)| (c * s).powi(2))
                    .sum::<f64>()
                    .sqrt();
                let rows = linspace(-reach, reach, args.points)
                    .into_iter()
                    .map(|o| {
                        let cut = ellipsoid_cut(&spec, &AffineFunctional::new(normal.clone(), o))?;
                        Ok(vec![format!("{o:?}"), format!("{:?}", cut.volume)])
                    })
                    .collect::<Result<Vec<_>>>()?;
                return Ok(Output::ok(csv_string(&["offset", "volume"], rows)));
            }
            let offset = args.offset.unwrap_or(0.0);
            let cut = ellipsoid_cut(&spec, &AffineFunctional::new(normal.clone(), offset))?;
            let report = json!({
                "body": "ellipsoid",
                "N": n,
                "semiaxes": spec.semiaxes(),
                "normal": normal,
                "offset": offset,
                "cut": cut_json(&cut),
                "certificate": cut.certificate,
            });
            Ok(Output::ok(to_json(&report)?))
        }
        Body::Paraboloid => {
            if n < 2 {
                bail!("paraboloid needs N >= 2");
            }
            let c = args.c.clone().unwrap_or_else(|| vec![0.0; n - 1]);
            if format == Format::Csv {
                let rows = linspace(0.0, 1.0, args.points)
                    .into_iter()
                    .map(|d| {
                        let cut = paraboloid_cut(n, &c, d)?;
                        Ok(vec![format!("{d:?}"), format!("{:?}", cut.volume)])
                    })
                    .collect::<Result<Vec<_>>>()?;
                return Ok(Output::ok(csv_string(&["d", "volume"], rows)));
            }
            let d = args.d.unwrap_or(1.0);
            let cut = paraboloid_cut(n, &c, d)?;
            let k = lacuna_core::classical::paraboloid_constant(n)?;
            let report = json!({
                "body": "paraboloid",
                "N": n,
                "c": c,
                "d": d,
                "cut": cut_json(&cut),
                "certificate": cut.certificate,
                "closed_form": {
                    "coefficient": k.to_string(),
                    "power_of_u": format!("{}/2", n + 1),
                    "u": "d + |c|^2/4",
                },
            });
            Ok(Output::ok(to_json(&report)?))
        }
    }
}

pub fn cmd_newton_demo(args: &NewtonArgs, format: Format) -> Result<Output> {
    if !(args.bmax > 0.0 && args.bmax <= 1.0) {
        bail!("--bmax must lie in (0, 1]");
    }
    let samples = disk_segment_samples(-args.bmax, args.bmax, args.samples)?;
    if format == Format::Csv {
        let det = detect_degree(&samples, args.dmax, args.tol)?;
        let rows = samples.points().iter().map(|(x, v)| {
            vec![
                format!("{:?}", x[0]),
                format!("{v:?}"),
                format!("{:?}", det.report.eval(x)),
            ]
        });
        return Ok(Output::ok(csv_string(&["b", "value", "best_fit"], rows)));
    }
    let det = detect_degree(&samples, args.dmax, args.tol)?;
    let table = residual_table(&samples, args.dmax)?;
    let report = json!({
        "target": "disk segment area arccos(b) - b*sqrt(1-b^2)",
        "samples": samples.len(),
        "interval": [-args.bmax, args.bmax],
        "tol": args.tol,
        "dmax": args.dmax,
        "detected": detected_json(det.degree),
        "residuals": table.iter().map(|r| json!({
            "degree": r.degree,
            "max_abs_residual": r.max_abs_residual,
            "rms_residual": r.rms_residual,
        })).collect::<Vec<_>>(),
    });
    Ok(Output::ok(to_json(&report)?))
}

/// Resolves `--out` against `$LACUNA_OUT_DIR`.
pub fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}
