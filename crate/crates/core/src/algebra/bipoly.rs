use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::univariate::{GcdRing, Univariate, ZBi};
use super::Rational;
use crate::error::{Error, Result};

/// Exponent pair `U^u V^v`. Ordered graded-lexicographically with U > V.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub u: u32,
    pub v: u32,
}

impl Monomial {
    pub fn new(u: u32, v: u32) -> Self {
        Monomial { u, v }
    }

    pub fn total_degree(&self) -> u32 {
        self.u + self.v
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total_degree(), self.u).cmp(&(other.total_degree(), other.u))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in Q[U,V]. Terms are kept in descending monomial order
/// with no zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn monomial(c: Rational, u: u32, v: u32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { terms: vec![(Monomial::new(u, v), c)] }
    }

    pub fn u() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// The linear form `a*U + b*V`.
    pub fn linear(a: i64, b: i64) -> Self {
        let mut terms = Vec::new();
        if a != 0 {
            terms.push((Monomial::new(1, 0), Rational::from_integer(a.into())));
        }
        if b != 0 {
            terms.push((Monomial::new(0, 1), Rational::from_integer(b.into())));
        }
        BiPoly { terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        BiPoly { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::new(0, 0) && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.total_degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn coeff(&self, u: u32, v: u32) -> Rational {
        let m = Monomial::new(u, v);
        self.terms.iter().find(|(t, _)| *t == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.total_degree())
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Rational| if negate_other { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, sign(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + sign(cb);
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (*m, sign(c))));
        BiPoly { terms: out }
    }

    /// Value at `(U, V) = (u, v)`.
    pub fn evaluate(&self, u: &Rational, v: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| acc + c * pow_rat(u, m.u) * pow_rat(v, m.v))
    }

    /// Swaps the roles of U and V.
    pub fn swap_uv(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Monomial::new(m.v, m.u), c.clone())))
    }

    /// Canonical gcd: primitive over Z with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdUndefined);
        }
        let (_, a) = self.split_content();
        let (_, b) = other.split_content();
        let g = a.gcd(&b).grlex_normal().0;
        Ok(Self::from_zbi(&Rational::one(), &g))
    }

    /// `Some(self / d)` when the division is exact.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (ca, a) = self.split_content();
        let (cd, b) = d.split_content();
        let q = a.div_exact(&b)?;
        Some(Self::from_zbi(&(ca / cd), &q))
    }

    /// Writes `self = c * P` with `P` in Z[U,V] primitive and with positive
    /// graded-lexicographic leading coefficient. Zero maps to `(0, 0)`.
    pub(crate) fn split_content(&self) -> (Rational, ZBi) {
        if self.is_zero() {
            return (Rational::zero(), ZBi::zero());
        }
        let lcm = self.terms.iter().fold(BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()));
        let ints: Vec<(Monomial, BigInt)> =
            self.terms.iter().map(|(m, c)| (*m, c.numer() * (&lcm / c.denom()))).collect();
        let mut g = ints.iter().fold(BigInt::from(0), |acc, (_, c)| Integer::gcd(&acc, c));
        if ints[0].1.is_negative() {
            g = -g;
        }
        let max_u = ints.iter().map(|(m, _)| m.u).max().unwrap() as usize;
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); max_u + 1];
        for (m, c) in &ints {
            let row = &mut rows[m.u as usize];
            if row.len() <= m.v as usize {
                row.resize(m.v as usize + 1, BigInt::from(0));
            }
            row[m.v as usize] = c / &g;
        }
        let z = Univariate::from_coeffs(rows.into_iter().map(Univariate::from_coeffs).collect());
        (Rational::new(g, lcm), z)
    }

    pub(crate) fn from_zbi(c: &Rational, p: &ZBi) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = p.c.iter().enumerate().flat_map(|(i, row)| {
            row.c
                .iter()
                .enumerate()
                .filter(|(_, x)| !GcdRing::is_zero(*x))
                .map(move |(j, x)| (Monomial::new(i as u32, j as u32), c * Rational::from_integer(x.clone())))
        });
        Self::from_terms(terms)
    }
}

pub(crate) fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = Monomial::new(ma.u + mb.u, ma.v + mb.v);
                *acc.entry(m).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        BiPoly { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $f(self, rhs: BiPoly) -> BiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("U", m.u), ("V", m.v)] {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.total_degree() == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
