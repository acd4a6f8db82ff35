use std::fmt;
use std::sync::Arc;

type Membership = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// A body given by a membership predicate and an enclosing axis-aligned box.
#[derive(Clone)]
pub struct ImplicitBody {
    dim: usize,
    contains: Membership,
    lower: Vec<f64>,
    upper: Vec<f64>,
    tag: String,
}

impl fmt::Debug for ImplicitBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ImplicitBody")
            .field("dim", &self.dim)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("tag", &self.tag)
            .finish()
    }
}

impl ImplicitBody {
    /// Panics if the box bounds do not match in length.
    pub fn new<F>(tag: impl Into<String>, lower: Vec<f64>, upper: Vec<f64>, contains: F) -> Self
    where
        F: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        assert_eq!(lower.len(), upper.len(), "box bounds must have equal length");
        Self {
            dim: lower.len(),
            contains: Arc::new(contains),
            lower,
            upper,
            tag: tag.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        (self.contains)(x)
    }

    pub fn box_volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| (hi - lo).max(0.0))
            .product()
    }

    /// `{x : Σ (x_i / s_i)² ≤ 1}`.
    pub fn ellipsoid(semiaxes: &[f64]) -> Self {
        let axes = semiaxes.to_vec();
        let upper = axes.clone();
        let lower = axes.iter().map(|s| -s).collect();
        Self::new(format!("ellipsoid{axes:?}"), lower, upper, move |x| {
            x.iter().zip(&axes).map(|(xi, s)| (xi / s) * (xi / s)).sum::<f64>() <= 1.0
        })
    }

    pub fn ball(dim: usize) -> Self {
        let mut b = Self::ellipsoid(&vec![1.0; dim]);
        b.tag = format!("ball{dim}");
        b
    }

    /// Tubular neighbourhood `(|x|² − 1)² + |y|² ≤ ε²` of the unit sphere in
    /// `R^n × R^m`, coordinates ordered `(x_1..x_n, y_1..y_m)`.
    pub fn tube(n: usize, m: usize, epsilon: f64) -> Self {
        let rx = (1.0 + epsilon).sqrt();
        let mut lower = vec![-rx; n];
        lower.extend(std::iter::repeat_n(-epsilon, m));
        let upper = lower.iter().map(|v| -v).collect();
        let eps2 = epsilon * epsilon;
        Self::new(format!("tube(n={n},m={m},eps={epsilon})"), lower, upper, move |p| {
            let (x, y) = p.split_at(n);
            let r2: f64 = x.iter().map(|v| v * v).sum();
            let y2: f64 = y.iter().map(|v| v * v).sum();
            (r2 - 1.0) * (r2 - 1.0) + y2 <= eps2
        })
    }

    /// `{x_N ≥ |x'|²}` clipped to a box that contains the segment cut off by
    /// `x_N ≤ ⟨c, x'⟩ + d`.
    pub fn paraboloid_segment_box(c: &[f64], d: f64) -> Self {
        let c2: f64 = c.iter().map(|v| v * v).sum();
        let r = (d + 0.25 * c2).max(0.0).sqrt();
        let mut lower: Vec<f64> = c.iter().map(|ci| 0.5 * ci - r).collect();
        let mut upper: Vec<f64> = c.iter().map(|ci| 0.5 * ci + r).collect();
        let top = 0.5 * c2 + c2.sqrt() * r + d;
        lower.push(0.0);
        upper.push(top.max(0.0));
        let n = c.len();
        Self::new(format!("paraboloid(N={})", n + 1), lower, upper, move |x| {
            let (xp, xn) = x.split_at(n);
            xn[0] >= xp.iter().map(|v| v * v).sum::<f64>()
        })
    }
}

/// The affine functional `⟨normal, x⟩ − offset`; its zero set is the cutting
/// hyperplane.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFunctional {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl AffineFunctional {
    pub fn new(normal: Vec<f64>, offset: f64) -> Self {
        Self { normal, offset }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.normal.iter().zip(x).map(|(n, xi)| n * xi).sum::<f64>() - self.offset
    }
}
