//! Quasi-homogeneous polynomial algebra in two variables.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals
//! and a [`Weight`] assigns the generalized degree `p1*g1 + p2*g2` to the
//! monomial `x1^p1 x2^p2`. Polynomials are sparse maps ordered
//! lexicographically by `(p1, p2)`, which fixes the coordinate order used by
//! every matrix built elsewhere in the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `n * (n-1) * ... * (n-k+1)`.
fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// Grading vector `(g1, g2)` of coprime positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    gamma1: u32,
    gamma2: u32,
}

impl Weight {
    pub fn new(gamma1: u32, gamma2: u32) -> Result<Self> {
        if gamma1 == 0 || gamma2 == 0 {
            return Err(Error::ZeroWeight(gamma1, gamma2));
        }
        if gamma1.gcd(&gamma2) != 1 {
            return Err(Error::WeightNotCoprime(gamma1, gamma2));
        }
        Ok(Weight { gamma1, gamma2 })
    }

    /// The standard grading `(1, 1)`.
    pub fn unit() -> Self {
        Weight {
            gamma1: 1,
            gamma2: 1,
        }
    }

    pub fn gamma1(&self) -> u32 {
        self.gamma1
    }

    pub fn gamma2(&self) -> u32 {
        self.gamma2
    }

    pub fn gamma(&self, component: usize) -> u32 {
        match component {
            1 => self.gamma1,
            2 => self.gamma2,
            _ => panic!("component index must be 1 or 2"),
        }
    }

    pub fn delta(&self) -> u32 {
        self.gamma1 + self.gamma2
    }

    pub fn gdeg(&self, m: Monomial) -> u32 {
        m.p1 * self.gamma1 + m.p2 * self.gamma2
    }

    /// All monomials of generalized degree `k`, in ascending lexicographic order.
    pub fn monomials(&self, k: u32) -> Vec<Monomial> {
        (0..=k / self.gamma1)
            .filter_map(|p1| {
                let rest = k - p1 * self.gamma1;
                rest.is_multiple_of(self.gamma2).then(|| Monomial::new(p1, rest / self.gamma2))
            })
            .collect()
    }

    /// Dimension of the space of QHPs of generalized degree `k`.
    pub fn dim(&self, k: u32) -> usize {
        self.monomials(k).len()
    }

    /// The Euler field `(g1 x1, g2 x2)`, of generalized degree zero.
    pub fn euler_field(&self) -> Vqhp {
        let c1 = Polynomial::monomial(Monomial::new(1, 0), int(self.gamma1 as i64));
        let c2 = Polynomial::monomial(Monomial::new(0, 1), int(self.gamma2 as i64));
        Vqhp::from_polys(*self, 0, c1, c2).expect("euler field is graded")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.gamma1, self.gamma2)
    }
}

/// Exponent pair of `x1^p1 x2^p2`. The derived order is lexicographic on `(p1, p2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub p1: u32,
    pub p2: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { p1: 0, p2: 0 };

    pub fn new(p1: u32, p2: u32) -> Self {
        Monomial { p1, p2 }
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial::new(self.p1 + other.p1, self.p2 + other.p2)
    }

    /// `p1! * p2!`, the apolar norm of the monomial.
    pub fn norm(self) -> BigInt {
        factorial(self.p1) * factorial(self.p2)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p1, self.p2) {
            (0, 0) => write!(f, "1"),
            (a, 0) => write!(f, "{}", var_pow("x1", a)),
            (0, b) => write!(f, "{}", var_pow("x2", b)),
            (a, b) => write!(f, "{}*{}", var_pow("x1", a), var_pow("x2", b)),
        }
    }
}

fn var_pow(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

/// Which variable a partial derivative acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X1,
    X2,
}

/// Sparse polynomial with rational coefficients; never stores a zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn x1() -> Self {
        Polynomial::monomial(Monomial::new(1, 0), Rational::one())
    }

    pub fn x2() -> Self {
        Polynomial::monomial(Monomial::new(0, 1), Rational::one())
    }

    /// Adds `c * x^m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn derivative(&self, var: Var) -> Polynomial {
        self.differentiate(
            if var == Var::X1 { 1 } else { 0 },
            if var == Var::X2 { 1 } else { 0 },
        )
    }

    /// Applies `d1^a1 d2^a2`.
    pub fn differentiate(&self, a1: u32, a2: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.p1 < a1 || m.p2 < a2 {
                continue;
            }
            let f = falling(m.p1, a1) * falling(m.p2, a2);
            out.add_term(Monomial::new(m.p1 - a1, m.p2 - a2), c * Rational::from_integer(f));
        }
        out
    }

    /// Substitutes `x -> D` in `self` and applies the resulting operator to `q`.
    pub fn apply_as_operator(&self, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out = &out + &q.differentiate(m.p1, m.p2).scale(c);
        }
        out
    }

    /// Multiplies by `x^m`.
    pub fn shift(&self, m: Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.times(m), c.clone())).collect(),
        }
    }

    /// Keeps only terms of generalized degree `<= max`.
    pub fn truncate(&self, w: Weight, max: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| w.gdeg(**m) <= max)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Product with every term of generalized degree above `max` discarded.
    pub fn mul_truncated(&self, other: &Polynomial, w: Weight, max: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, ca) in &self.terms {
            let da = w.gdeg(*a);
            if da > max {
                continue;
            }
            for (b, cb) in &other.terms {
                if da + w.gdeg(*b) <= max {
                    out.add_term(a.times(*b), ca * cb);
                }
            }
        }
        out
    }

    /// The terms of generalized degree exactly `k`.
    pub fn homogeneous_part(&self, w: Weight, k: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| w.gdeg(**m) == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The common generalized degree of all terms, if there is one.
    pub fn quasi_degree(&self, w: Weight) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| w.gdeg(*m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn max_gdeg(&self, w: Weight) -> Option<u32> {
        self.terms.keys().map(|m| w.gdeg(*m)).max()
    }

    pub fn min_gdeg(&self, w: Weight) -> Option<u32> {
        self.terms.keys().map(|m| w.gdeg(*m)).min()
    }

    /// Integer power.
    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Coefficient vector over the given monomial list.
    pub fn coords(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|m| self.coeff(*m)).collect()
    }

    pub fn from_coords(basis: &[Monomial], coords: &[Rational]) -> Polynomial {
        Polynomial::from_terms(basis.iter().copied().zip(coords.iter().cloned()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.times(*b), ca * cb);
            }
        }
        out
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if *m == Monomial::ONE {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

/// Apolar inner product `p(D) q(x)` evaluated at the origin.
///
/// Conjugation of coefficients is the identity over the rationals.
pub fn inner(p: &Polynomial, q: &Polynomial) -> Rational {
    let (small, large) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    let mut acc = Rational::zero();
    for (m, c) in small.terms() {
        if let Some(d) = large.terms.get(m) {
            acc += c * d * Rational::from_integer(m.norm());
        }
    }
    acc
}

/// A polynomial tagged with its generalized degree; every term has that degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Qhp {
    poly: Polynomial,
    gdeg: u32,
    weight: Weight,
}

impl Qhp {
    pub fn new(poly: Polynomial, gdeg: u32, weight: Weight) -> Result<Self> {
        if let Some(bad) = poly.monomials().find(|m| weight.gdeg(*m) != gdeg) {
            return Err(Error::DegreeMismatch {
                expected: gdeg as i64,
                found: weight.gdeg(bad) as i64,
            });
        }
        Ok(Qhp { poly, gdeg, weight })
    }

    pub fn zero(weight: Weight, gdeg: u32) -> Self {
        Qhp {
            poly: Polynomial::zero(),
            gdeg,
            weight,
        }
    }

    pub fn from_monomial(weight: Weight, m: Monomial, c: Rational) -> Self {
        Qhp {
            poly: Polynomial::monomial(m, c),
            gdeg: weight.gdeg(m),
            weight,
        }
    }

    /// Builds the QHP from coordinates over `weight.monomials(gdeg)`.
    pub fn from_coords(weight: Weight, gdeg: u32, coords: &[Rational]) -> Self {
        let basis = weight.monomials(gdeg);
        Qhp {
            poly: Polynomial::from_coords(&basis, coords),
            gdeg,
            weight,
        }
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.poly.coords(&self.weight.monomials(self.gdeg))
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn gdeg(&self) -> u32 {
        self.gdeg
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.poly.coeff(m)
    }

    pub fn scale(&self, c: &Rational) -> Qhp {
        Qhp {
            poly: self.poly.scale(c),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Qhp) -> Result<Qhp> {
        self.check_same(other)?;
        Ok(Qhp {
            poly: &self.poly + &other.poly,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Qhp) -> Result<Qhp> {
        self.check_same(other)?;
        Ok(Qhp {
            poly: &self.poly - &other.poly,
            ..self.clone()
        })
    }

    pub fn mul(&self, other: &Qhp) -> Qhp {
        Qhp {
            poly: &self.poly * &other.poly,
            gdeg: self.gdeg + other.gdeg,
            weight: self.weight,
        }
    }

    fn check_same(&self, other: &Qhp) -> Result<()> {
        if self.gdeg != other.gdeg {
            return Err(Error::DegreeMismatch {
                expected: self.gdeg as i64,
                found: other.gdeg as i64,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Qhp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Vector field `(P1, P2)` of generalized degree `k`: `P1` has degree
/// `k + g1` and `P2` has degree `k + g2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vqhp {
    comp1: Qhp,
    comp2: Qhp,
    gdeg: u32,
}

impl Vqhp {
    pub fn new(comp1: Qhp, comp2: Qhp) -> Result<Self> {
        let w = comp1.weight;
        if comp2.weight != w {
            return Err(Error::InvalidParams("components carry different weights".into()));
        }
        let k = comp1.gdeg as i64 - w.gamma1 as i64;
        if k < 0 {
            return Err(Error::DegreeMismatch {
                expected: w.gamma1 as i64,
                found: comp1.gdeg as i64,
            });
        }
        if comp2.gdeg as i64 - w.gamma2 as i64 != k {
            return Err(Error::DegreeMismatch {
                expected: k + w.gamma2 as i64,
                found: comp2.gdeg as i64,
            });
        }
        Ok(Vqhp {
            comp1,
            comp2,
            gdeg: k as u32,
        })
    }

    pub fn from_polys(w: Weight, gdeg: u32, p1: Polynomial, p2: Polynomial) -> Result<Self> {
        Ok(Vqhp {
            comp1: Qhp::new(p1, gdeg + w.gamma1, w)?,
            comp2: Qhp::new(p2, gdeg + w.gamma2, w)?,
            gdeg,
        })
    }

    pub fn zero(w: Weight, gdeg: u32) -> Self {
        Vqhp {
            comp1: Qhp::zero(w, gdeg + w.gamma1),
            comp2: Qhp::zero(w, gdeg + w.gamma2),
            gdeg,
        }
    }

    /// Standard basis of the space of VQHPs of degree `gdeg`: first-component
    /// monomials in lexicographic order, then second-component monomials.
    pub fn basis_slots(w: Weight, gdeg: u32) -> Vec<(usize, Monomial)> {
        let mut out: Vec<_> = w
            .monomials(gdeg + w.gamma1)
            .into_iter()
            .map(|m| (1, m))
            .collect();
        out.extend(w.monomials(gdeg + w.gamma2).into_iter().map(|m| (2, m)));
        out
    }

    pub fn from_slot(w: Weight, gdeg: u32, slot: (usize, Monomial), c: Rational) -> Self {
        let p = Polynomial::monomial(slot.1, c);
        let (p1, p2) = if slot.0 == 1 {
            (p, Polynomial::zero())
        } else {
            (Polynomial::zero(), p)
        };
        Vqhp::from_polys(w, gdeg, p1, p2).expect("slot has the requested degree")
    }

    pub fn coords(&self) -> Vec<Rational> {
        let mut v = self.comp1.coords();
        v.extend(self.comp2.coords());
        v
    }

    pub fn from_coords(w: Weight, gdeg: u32, coords: &[Rational]) -> Self {
        let n1 = w.dim(gdeg + w.gamma1);
        Vqhp {
            comp1: Qhp::from_coords(w, gdeg + w.gamma1, &coords[..n1]),
            comp2: Qhp::from_coords(w, gdeg + w.gamma2, &coords[n1..]),
            gdeg,
        }
    }

    pub fn comp1(&self) -> &Qhp {
        &self.comp1
    }

    pub fn comp2(&self) -> &Qhp {
        &self.comp2
    }

    pub fn component(&self, i: usize) -> &Qhp {
        match i {
            1 => &self.comp1,
            2 => &self.comp2,
            _ => panic!("component index must be 1 or 2"),
        }
    }

    pub fn gdeg(&self) -> u32 {
        self.gdeg
    }

    pub fn weight(&self) -> Weight {
        self.comp1.weight
    }

    pub fn is_zero(&self) -> bool {
        self.comp1.is_zero() && self.comp2.is_zero()
    }

    pub fn coeff(&self, component: usize, m: Monomial) -> Rational {
        self.component(component).coeff(m)
    }

    pub fn scale(&self, c: &Rational) -> Vqhp {
        Vqhp {
            comp1: self.comp1.scale(c),
            comp2: self.comp2.scale(c),
            gdeg: self.gdeg,
        }
    }

    pub fn add(&self, other: &Vqhp) -> Result<Vqhp> {
        Ok(Vqhp {
            comp1: self.comp1.add(&other.comp1)?,
            comp2: self.comp2.add(&other.comp2)?,
            gdeg: self.gdeg,
        })
    }

    pub fn sub(&self, other: &Vqhp) -> Result<Vqhp> {
        Ok(Vqhp {
            comp1: self.comp1.sub(&other.comp1)?,
            comp2: self.comp2.sub(&other.comp2)?,
            gdeg: self.gdeg,
        })
    }

    pub fn neg(&self) -> Vqhp {
        self.scale(&-Rational::one())
    }

    /// `q * self`, of degree `q.gdeg + self.gdeg`.
    pub fn mul_qhp(&self, q: &Qhp) -> Vqhp {
        Vqhp {
            comp1: self.comp1.mul(q),
            comp2: self.comp2.mul(q),
            gdeg: self.gdeg + q.gdeg,
        }
    }

    /// Nonzero coefficients as `(component, monomial, value)`.
    pub fn slots(&self) -> impl Iterator<Item = (usize, Monomial, &Rational)> {
        self.comp1
            .poly
            .terms()
            .map(|(m, c)| (1, *m, c))
            .chain(self.comp2.poly.terms().map(|(m, c)| (2, *m, c)))
    }
}

impl fmt::Display for Vqhp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.comp1, self.comp2)
    }
}

/// `f1 * d1 g + f2 * d2 g`.
pub fn apply_field(f: &Vqhp, g: &Polynomial) -> Polynomial {
    let a = f.comp1.poly() * &g.derivative(Var::X1);
    let b = f.comp2.poly() * &g.derivative(Var::X2);
    &a + &b
}

/// Graded version of [`apply_field`]: the result has degree `f.gdeg + g.gdeg`.
pub fn apply_field_qhp(f: &Vqhp, g: &Qhp) -> Qhp {
    Qhp {
        poly: apply_field(f, g.poly()),
        gdeg: f.gdeg + g.gdeg,
        weight: g.weight,
    }
}

/// `[f, g] = (f(g1) - g(f1), f(g2) - g(f2))`, of degree `f.gdeg + g.gdeg`.
pub fn lie_bracket(f: &Vqhp, g: &Vqhp) -> Vqhp {
    let c1 = &apply_field(f, g.comp1.poly()) - &apply_field(g, f.comp1.poly());
    let c2 = &apply_field(f, g.comp2.poly()) - &apply_field(g, f.comp2.poly());
    let w = f.weight();
    let k = f.gdeg + g.gdeg;
    Vqhp {
        comp1: Qhp {
            poly: c1,
            gdeg: k + w.gamma1,
            weight: w,
        },
        comp2: Qhp {
            poly: c2,
            gdeg: k + w.gamma2,
            weight: w,
        },
        gdeg: k,
    }
}

/// `d1 f1 + d2 f2`, a QHP of the same generalized degree as `f`.
pub fn divergence(f: &Vqhp) -> Qhp {
    let p = &f.comp1.poly().derivative(Var::X1) + &f.comp2.poly().derivative(Var::X2);
    Qhp {
        poly: p,
        gdeg: f.gdeg,
        weight: f.weight(),
    }
}

/// A graded vector series truncated at generalized degree `truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSeries {
    weight: Weight,
    truncation: u32,
    terms: BTreeMap<u32, Vqhp>,
}

impl VectorSeries {
    pub fn new(weight: Weight, truncation: u32) -> Self {
        VectorSeries {
            weight,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Inserts (replacing) the term of degree `f.gdeg()`. Zero terms and terms
    /// above the truncation are dropped.
    pub fn set(&mut self, f: Vqhp) -> Result<()> {
        if f.weight() != self.weight {
            return Err(Error::InvalidParams("series term has a foreign weight".into()));
        }
        let k = f.gdeg();
        if f.is_zero() || k > self.truncation {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, f);
        }
        Ok(())
    }

    /// Term of degree `k` (zero if absent).
    pub fn get(&self, k: u32) -> Vqhp {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Vqhp::zero(self.weight, k))
    }

    pub fn terms(&self) -> impl Iterator<Item = &Vqhp> {
        self.terms.values()
    }

    /// Least degree with a nonzero term; `None` for the zero series.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all terms as a pair of component polynomials.
    pub fn to_polys(&self) -> (Polynomial, Polynomial) {
        let mut a = Polynomial::zero();
        let mut b = Polynomial::zero();
        for t in self.terms.values() {
            a = &a + t.comp1.poly();
            b = &b + t.comp2.poly();
        }
        (a, b)
    }
}
