use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

/// An exact real of the form `Σ q_e · π^e` with rational `q_e`.
///
/// Every constant that appears in the cut-volume computations (unit-ball
/// volumes, Wallis integrals, powers of a rational ε) lives in this ring, so
/// the whole symbolic pipeline can stay exact.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PiNumber {
    terms: BTreeMap<u32, Rational>,
}

impl PiNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// `coef · π^exponent`.
    pub fn term(coef: Rational, exponent: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exponent, coef);
        }
        Self { terms }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::term(q, 0)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `π^exponent`.
    pub fn pi_pow(exponent: u32) -> Self {
        Self::term(Rational::one(), exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(e, q)| (*e, q))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The π-exponent when the number is a single monomial `q·π^e`.
    pub fn grade(&self) -> Option<u32> {
        match self.terms.len() {
            1 => self.terms.keys().next().copied(),
            _ => None,
        }
    }

    pub fn coefficient(&self, exponent: u32) -> Rational {
        self.terms.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    /// Builds a number from raw `(exponent, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, q) in iter {
            out.add_term(e, q);
        }
        out
    }

    fn add_term(&mut self, exponent: u32, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(Rational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(e, q)| q.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(*e as i32))
            .sum()
    }
}

impl From<Rational> for PiNumber {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl Add for &PiNumber {
    type Output = PiNumber;
    fn add(self, rhs: &PiNumber) -> PiNumber {
        let mut out = self.clone();
        for (e, q) in &rhs.terms {
            out.add_term(*e, q.clone());
        }
        out
    }
}

impl Sub for &PiNumber {
    type Output = PiNumber;
    fn sub(self, rhs: &PiNumber) -> PiNumber {
        let mut out = self.clone();
        for (e, q) in &rhs.terms {
            out.add_term(*e, -q.clone());
        }
        out
    }
}

impl Mul for &PiNumber {
    type Output = PiNumber;
    fn mul(self, rhs: &PiNumber) -> PiNumber {
        let mut out = PiNumber::zero();
        for (e1, q1) in &self.terms {
            for (e2, q2) in &rhs.terms {
                out.add_term(e1 + e2, q1 * q2);
            }
        }
        out
    }
}

impl Neg for &PiNumber {
    type Output = PiNumber;
    fn neg(self) -> PiNumber {
        PiNumber {
            terms: self.terms.iter().map(|(e, q)| (*e, -q.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for PiNumber {
            type Output = PiNumber;
            fn $method(self, rhs: PiNumber) -> PiNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&PiNumber> for PiNumber {
            type Output = PiNumber;
            fn $method(self, rhs: &PiNumber) -> PiNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PiNumber {
    type Output = PiNumber;
    fn neg(self) -> PiNumber {
        -&self
    }
}

impl fmt::Display for PiNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, q)) in self.terms.iter().enumerate() {
            let sign = if q.is_negative() { "-" } else { "+" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if q.is_negative() {
                write!(f, "-")?;
            }
            let abs = q.abs();
            match *e {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "({abs})π")?,
                _ => write!(f, "({abs})π^{e}")?,
            }
        }
        Ok(())
    }
}
