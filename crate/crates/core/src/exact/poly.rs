//! Sparse polynomials with [`PiNumber`] coefficients.
//!
//! [`BiPoly`] is a polynomial in the normal-form coordinates `(a, b)`;
//! [`UniPoly`] is a polynomial in a single height variable. Both keep their
//! terms in a `BTreeMap`, so iteration (and therefore serialisation) is in
//! lexicographic exponent order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::pi_number::PiNumber;
use super::rational::{format_rational, parse_rational, rational_pow, Rational};
use crate::error::Result;

/// Exponent key of a monomial.
pub trait Exponent: Ord + Copy + fmt::Debug {
    fn zero() -> Self;
    fn combine(self, other: Self) -> Self;
}

impl Exponent for u32 {
    fn zero() -> Self {
        0
    }
    fn combine(self, other: Self) -> Self {
        self + other
    }
}

impl Exponent for (u32, u32) {
    fn zero() -> Self {
        (0, 0)
    }
    fn combine(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<E: Exponent> {
    terms: BTreeMap<E, PiNumber>,
}

/// Polynomial in `(a, b)`; keys are `(a-exponent, b-exponent)`.
pub type BiPoly = Poly<(u32, u32)>;
/// Polynomial in one variable.
pub type UniPoly = Poly<u32>;

impl<E: Exponent> Default for Poly<E> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<E: Exponent> Poly<E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: PiNumber) -> Self {
        Self::monomial(E::zero(), c)
    }

    pub fn monomial(exp: E, coef: PiNumber) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coef);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (E, PiNumber)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: E, coef: PiNumber) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot = &*slot + &coef;
                if slot.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coef);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (E, &PiNumber)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: E) -> PiNumber {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &PiNumber) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, k)| (*e, k * c)))
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, k)| (*e, k.scale(q))))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(PiNumber::one()), |acc, _| &acc * self)
    }

    /// Common π-exponent of all coefficients, if every coefficient is a
    /// single `q·π^e` term with the same `e`.
    pub fn uniform_pi_grade(&self) -> Option<u32> {
        let mut grade = None;
        for c in self.terms.values() {
            let g = c.grade()?;
            match grade {
                None => grade = Some(g),
                Some(prev) if prev != g => return None,
                _ => {}
            }
        }
        grade
    }
}

impl<E: Exponent> Add for &Poly<E> {
    type Output = Poly<E>;
    fn add(self, rhs: &Poly<E>) -> Poly<E> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<E: Exponent> Sub for &Poly<E> {
    type Output = Poly<E>;
    fn sub(self, rhs: &Poly<E>) -> Poly<E> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<E: Exponent> Mul for &Poly<E> {
    type Output = Poly<E>;
    fn mul(self, rhs: &Poly<E>) -> Poly<E> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.combine(*e2), c1 * c2);
            }
        }
        out
    }
}

impl<E: Exponent> Neg for &Poly<E> {
    type Output = Poly<E>;
    fn neg(self) -> Poly<E> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<E: Exponent> Add for Poly<E> {
    type Output = Poly<E>;
    fn add(self, rhs: Poly<E>) -> Poly<E> {
        &self + &rhs
    }
}

impl<E: Exponent> Sub for Poly<E> {
    type Output = Poly<E>;
    fn sub(self, rhs: Poly<E>) -> Poly<E> {
        &self - &rhs
    }
}

impl<E: Exponent> Mul for Poly<E> {
    type Output = Poly<E>;
    fn mul(self, rhs: Poly<E>) -> Poly<E> {
        &self * &rhs
    }
}

impl BiPoly {
    pub fn var_a() -> Self {
        Self::monomial((1, 0), PiNumber::one())
    }

    pub fn var_b() -> Self {
        Self::monomial((0, 1), PiNumber::one())
    }

    /// Antiderivative in `b` with zero constant of integration.
    pub fn antiderivative_b(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            let inv = Rational::new(1.into(), (j + 1).into());
            ((i, j + 1), c.scale(&inv))
        }))
    }

    /// Partial derivative in `b`.
    pub fn derivative_b(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c.scale(&Rational::from_integer(j.into())))),
        )
    }

    /// The substitution `a -> λ·a`.
    pub fn scale_a(&self, lambda: &Rational) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| ((i, j), c.scale(&rational_pow(lambda, i)))),
        )
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_a(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn degree_b(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    pub fn eval(&self, a: f64, b: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_f64() * a.powi(i as i32) * b.powi(j as i32))
            .sum()
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, a: &Rational, b: &Rational) -> PiNumber {
        self.terms.iter().fold(PiNumber::zero(), |acc, (&(i, j), c)| {
            acc + c.scale(&(rational_pow(a, i) * rational_pow(b, j)))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polynomial serialisation is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl UniPoly {
    pub fn var() -> Self {
        Self::monomial(1, PiNumber::one())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|(&e, c)| c.to_f64() * x.powi(e as i32)).sum()
    }

    pub fn eval_exact(&self, x: &Rational) -> PiNumber {
        self.terms
            .iter()
            .fold(PiNumber::zero(), |acc, (&e, c)| acc + c.scale(&rational_pow(x, e)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polynomial serialisation is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("[{c}]{}{}", mono("a", i), mono("b", j)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&e, c)| format!("[{c}]{}", mono("h", e)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn mono(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => format!("·{var}"),
        _ => format!("·{var}^{e}"),
    }
}

// ---- wire format ----

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CoefWire {
    pi: u32,
    q: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BiTermWire {
    a: u32,
    b: u32,
    coef: Vec<CoefWire>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BiPolyWire {
    terms: Vec<BiTermWire>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct UniTermWire {
    e: u32,
    coef: Vec<CoefWire>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct UniPolyWire {
    terms: Vec<UniTermWire>,
}

fn coef_to_wire(c: &PiNumber) -> Vec<CoefWire> {
    c.terms()
        .map(|(pi, q)| CoefWire {
            pi,
            q: format_rational(q),
        })
        .collect()
}

fn coef_from_wire(w: &[CoefWire]) -> Result<PiNumber> {
    let mut out = PiNumber::zero();
    for c in w {
        out = out + PiNumber::term(parse_rational(&c.q)?, c.pi);
    }
    Ok(out)
}

impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BiPolyWire {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| BiTermWire {
                    a,
                    b,
                    coef: coef_to_wire(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = BiPolyWire::deserialize(d)?;
        let mut p = BiPoly::zero();
        for t in wire.terms {
            let c = coef_from_wire(&t.coef).map_err(serde::de::Error::custom)?;
            p.add_term((t.a, t.b), c);
        }
        Ok(p)
    }
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        UniPolyWire {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| UniTermWire {
                    e,
                    coef: coef_to_wire(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = UniPolyWire::deserialize(d)?;
        let mut p = UniPoly::zero();
        for t in wire.terms {
            let c = coef_from_wire(&t.coef).map_err(serde::de::Error::custom)?;
            p.add_term(t.e, c);
        }
        Ok(p)
    }
}
