//! Cut volumes of the tubular neighbourhood
//! `W = {(x, y) ∈ R^n × R^m : (|x|² − 1)² + |y|² ≤ ε²}` of the unit sphere
//! `S^{2k} ⊂ R^{2k+1}`, with `n = 2k + 1`.
//!
//! Every hyperplane not parallel to `R^m` is equivalent under `O(n) × O(m)`
//! to `L(a, b) = {x_1 = a·y_1 + b}` with `a, b ≥ 0`. Inside the lacuna the
//! derivative `∂V/∂b` is the area of the projected section, a polynomial in
//! `(a², b²)`, and the bigger cut volume is `C(ε)/2 + P(a, b)` with `P` its
//! antiderivative in `b`.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, is_strictly_between_zero_and_one, rational_pow, rational_to_f64};
use crate::exact::{unit_ball_volume, wallis, wallis_symmetric, BiPoly, PiNumber, Rational};
use crate::oracle::{adaptive_quad, AffineFunctional, ImplicitBody};

/// The body: `k` fixes the sphere `S^{2k}`, `m` the normal codimension, and
/// `epsilon ∈ (0, 1)` the thickness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeSpec {
    k: u32,
    m: u32,
    epsilon: Rational,
}

impl TubeSpec {
    pub fn new(k: u32, m: u32, epsilon: Rational) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSpec("k must be a positive integer".into()));
        }
        if m == 0 {
            return Err(Error::InvalidSpec("m must be a positive integer".into()));
        }
        if !is_strictly_between_zero_and_one(&epsilon) {
            return Err(Error::InvalidSpec(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        Ok(Self { k, m, epsilon })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn epsilon_f64(&self) -> f64 {
        rational_to_f64(&self.epsilon)
    }

    /// Dimension of the sphere's ambient factor, `2k + 1`.
    pub fn n(&self) -> u32 {
        2 * self.k + 1
    }

    /// Ambient dimension `N = n + m`.
    pub fn ambient_dim(&self) -> u32 {
        self.n() + self.m
    }

    /// The π-exponent carried by every coefficient of `∂V/∂b`.
    pub fn pi_grade(&self) -> u32 {
        self.k + self.m.div_ceil(2)
    }

    pub fn implicit_body(&self) -> ImplicitBody {
        ImplicitBody::tube(self.n() as usize, self.m as usize, self.epsilon_f64())
    }
}

/// `⟨alpha, x⟩ + ⟨gamma, y⟩ = beta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub alpha: Vec<f64>,
    pub gamma: Vec<f64>,
    pub beta: f64,
}

impl Hyperplane {
    pub fn new(alpha: Vec<f64>, gamma: Vec<f64>, beta: f64) -> Self {
        Self { alpha, gamma, beta }
    }

    /// The normal form hyperplane `x_1 = a·y_1 + b` in `R^n × R^m`.
    pub fn from_normal_form(n: usize, m: usize, nf: NormalForm) -> Self {
        let mut alpha = vec![0.0; n];
        alpha[0] = 1.0;
        let mut gamma = vec![0.0; m];
        gamma[0] = -nf.a;
        Self::new(alpha, gamma, nf.b)
    }

    /// `⟨alpha, x⟩ + ⟨gamma, y⟩ − beta`, oriented so that the origin is on
    /// the negative side whenever `beta > 0`.
    pub fn functional(&self) -> AffineFunctional {
        let sign = if self.beta < 0.0 { -1.0 } else { 1.0 };
        let normal = self.alpha.iter().chain(&self.gamma).map(|v| sign * v).collect();
        AffineFunctional::new(normal, sign * self.beta)
    }
}

/// Reduced coordinates of a hyperplane: `a` is the cotangent of its angle
/// with `R^n`, `b` the distance from the origin within `R^n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub a: f64,
    pub b: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoValuedVolume {
    /// The part containing the origin.
    pub bigger: f64,
    pub smaller: f64,
    /// `C(ε)`, from quadrature.
    pub total: f64,
    /// `P(a, b)`, evaluated from the exact polynomial.
    pub offset: f64,
    /// Absolute error bound on `total` (and hence on both sides).
    pub tolerance: f64,
}

pub fn normal_form(h: &Hyperplane) -> Result<NormalForm> {
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let alpha = norm(&h.alpha);
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::DegenerateHyperplane);
    }
    Ok(NormalForm {
        a: norm(&h.gamma) / alpha,
        b: h.beta.abs() / alpha,
    })
}

/// Sufficient condition `(a·ε + b)² ≤ 1 − ε` for every fibre section to be a
/// full spherical layer.
pub fn in_lacuna(spec: &TubeSpec, nf: NormalForm) -> bool {
    let eps = spec.epsilon_f64();
    let s = nf.a * eps + nf.b;
    nf.a >= 0.0 && nf.b >= 0.0 && s.is_finite() && s * s <= 1.0 - eps
}

/// Exact `∂V/∂b` on the lacuna as a polynomial in `(a, b)`.
///
/// The layer area `v_{2k}[(A + s)^k − (A − s)^k]`, with
/// `A = 1 − (a·y_1 + b)²` and `s = √(ε² − |y|²)`, keeps only odd powers of
/// `s`. After `y_1 = ε sin φ`, `|y'| = ε cos φ sin θ` one has
/// `s = ε cos φ cos θ`, and each monomial `a^r b^q sin^r φ` of `A^{k−i}`
/// integrates against `cos^{m+i} φ` (and `sin^{m−2} θ cos^{i+1} θ` when
/// `m > 1`) by Wallis integrals. The expansion runs with `a·ε` in place of
/// `a`; the substitution `a → ε·a` restores it at the end.
pub fn tube_dvdb(spec: &TubeSpec) -> BiPoly {
    let (k, m) = (spec.k, spec.m);
    let eps = &spec.epsilon;

    // (m − 1)·v_{m−1}: the surface measure of the (m−1)-ball fibres.
    let fibre = if m == 1 {
        PiNumber::one()
    } else {
        unit_ball_volume(m - 1).scale(&Rational::from_integer((m - 1).into()))
    };
    let prefactor = &(&fibre * &unit_ball_volume(2 * k)) * &PiNumber::from_integer(2);

    let mut q = BiPoly::zero();
    for i in (1..=k).step_by(2) {
        let outer = Rational::from_integer(binomial(k, i)) * rational_pow(eps, m + i);
        let theta = if m == 1 { PiNumber::one() } else { wallis(m - 2, i + 1) };
        let base = prefactor.scale(&outer) * theta;

        // A^{n} = Σ_l C(n,l)(−1)^l (a' S + b)^{2l}, (a' S + b)^{2l} = Σ_r C(2l,r) a'^r S^r b^{2l−r}
        let n = k - i;
        for l in 0..=n {
            let sign = if l % 2 == 0 { 1 } else { -1 };
            let c_l = Rational::from_integer(binomial(n, l) * sign);
            for r in (0..=2 * l).step_by(2) {
                let phi = wallis_symmetric(r, m + i);
                let c = &c_l * Rational::from_integer(binomial(2 * l, r));
                q.add_term((r, 2 * l - r), (&base * &phi).scale(&c));
            }
        }
    }
    q.scale_a(eps)
}

/// `P(a, b) = ∫_0^b ∂V/∂b`, so that the cut volumes are `C(ε)/2 ± P`.
pub fn tube_cut_poly(spec: &TubeSpec) -> BiPoly {
    tube_dvdb(spec).antiderivative_b()
}

/// Default absolute tolerance for `C(ε)`.
pub const DEFAULT_TOTAL_TOL: f64 = 1e-10;

/// `C(ε)`: the volume of the whole tube.
///
/// Integrates the shell volume `v_n[(1 + s)^{n/2} − (1 − s)^{n/2}]`,
/// `s = √(ε² − ρ²)`, against the `m`-ball measure `m·v_m·ρ^{m−1} dρ`, after
/// `ρ = ε sin t` which removes the square-root endpoint.
pub fn tube_total_volume(spec: &TubeSpec, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let eps = spec.epsilon_f64();
    let n = spec.n() as f64;
    let m = spec.m as i32;
    let v_n = unit_ball_volume(spec.n()).to_f64();
    let ball_m = unit_ball_volume(spec.m).to_f64() * m as f64;
    let scale = ball_m * eps.powi(m) * v_n;
    let integrand = |t: f64| {
        let s = eps * t.cos();
        t.sin().powi(m - 1) * t.cos() * ((1.0 + s).powf(0.5 * n) - (1.0 - s).powf(0.5 * n))
    };
    let integral = adaptive_quad(integrand, 0.0, std::f64::consts::FRAC_PI_2, tol / scale)?;
    Ok(scale * integral)
}

/// Both cut volumes for an arbitrary hyperplane in the lacuna.
pub fn tube_volumes(spec: &TubeSpec, h: &Hyperplane, tol: f64) -> Result<TwoValuedVolume> {
    TubeEngine::new(spec.clone(), tol)?.volumes(h)
}

/// Caches the exact polynomials and `C(ε)` for repeated evaluation.
#[derive(Clone, Debug)]
pub struct TubeEngine {
    spec: TubeSpec,
    dvdb: BiPoly,
    cut: BiPoly,
    total: f64,
    tol: f64,
}

impl TubeEngine {
    pub fn new(spec: TubeSpec, tol: f64) -> Result<Self> {
        let dvdb = tube_dvdb(&spec);
        let cut = dvdb.antiderivative_b();
        let total = tube_total_volume(&spec, tol)?;
        Ok(Self {
            spec,
            dvdb,
            cut,
            total,
            tol,
        })
    }

    pub fn spec(&self) -> &TubeSpec {
        &self.spec
    }

    pub fn dvdb(&self) -> &BiPoly {
        &self.dvdb
    }

    pub fn cut_poly(&self) -> &BiPoly {
        &self.cut
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn volumes_at(&self, nf: NormalForm) -> Result<TwoValuedVolume> {
        if !in_lacuna(&self.spec, nf) {
            return Err(Error::OutsideLacuna { a: nf.a, b: nf.b });
        }
        let offset = self.cut.eval(nf.a, nf.b);
        let half = 0.5 * self.total;
        Ok(TwoValuedVolume {
            bigger: half + offset,
            smaller: half - offset,
            total: self.total,
            offset,
            tolerance: self.tol,
        })
    }

    pub fn volumes(&self, h: &Hyperplane) -> Result<TwoValuedVolume> {
        if h.alpha.len() != self.spec.n() as usize || h.gamma.len() != self.spec.m as usize {
            return Err(Error::Domain(format!(
                "hyperplane has {}+{} coefficients, body lives in R^{}×R^{}",
                h.alpha.len(),
                h.gamma.len(),
                self.spec.n(),
                self.spec.m
            )));
        }
        self.volumes_at(normal_form(h)?)
    }

    /// Exact `P(a, b)` at a rational point of the lacuna.
    pub fn offset_exact(&self, a: &Rational, b: &Rational) -> Result<PiNumber> {
        if a.is_negative() || b.is_negative() {
            return Err(Error::Domain("normal-form coordinates must be non-negative".into()));
        }
        let nf = NormalForm {
            a: rational_to_f64(a),
            b: rational_to_f64(b),
        };
        if !in_lacuna(&self.spec, nf) {
            return Err(Error::OutsideLacuna { a: nf.a, b: nf.b });
        }
        Ok(if b.is_zero() {
            PiNumber::zero()
        } else {
            self.cut.eval_exact(a, b)
        })
    }
}
