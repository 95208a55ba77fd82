use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::bipoly::{pow_rat, BiPoly};
use super::univariate::{GcdRing, ZBi};
use super::Rational;
use crate::error::{Error, Result};

/// An element of Q(U,V) in canonical form.
///
/// Stored as `coef * num / den` where `num` and `den` are coprime primitive
/// integer polynomials with positive graded-lexicographic leading
/// coefficients. The public numerator is `coef * num`; the denominator is
/// `den`. Zero is `0/1`. Canonical storage makes `==` and `Hash` structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    coef: Rational,
    num: ZBi,
    den: ZBi,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { coef: Rational::zero(), num: ZBi::one(), den: ZBi::one() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc { coef: c, num: ZBi::one(), den: ZBi::one() }
    }

    pub fn u() -> Self {
        Self::from_poly(&BiPoly::u())
    }

    pub fn v() -> Self {
        Self::from_poly(&BiPoly::v())
    }

    /// `a*U + b*V`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_poly(&BiPoly::linear(a, b))
    }

    pub fn from_poly(p: &BiPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        let (c, z) = p.split_content();
        RatFunc { coef: c, num: z, den: ZBi::one() }
    }

    pub fn new(num: &BiPoly, den: &BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (cn, n) = num.split_content();
        let (cd, d) = den.split_content();
        Ok(Self::reduce(cn / cd, n, d))
    }

    /// Cancels the gcd and normalizes signs. `n` and `d` must be primitive.
    fn reduce(coef: Rational, n: ZBi, d: ZBi) -> Self {
        if coef.is_zero() || n.is_zero() {
            return Self::zero();
        }
        let g = n.gcd(&d);
        let (n, d) = if g.is_unit() { (n, d) } else { (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap()) };
        Self::normalize(coef, n, d)
    }

    fn normalize(mut coef: Rational, n: ZBi, d: ZBi) -> Self {
        let (n, flip_n) = n.grlex_normal();
        let (d, flip_d) = d.grlex_normal();
        if flip_n != flip_d {
            coef = -coef;
        }
        RatFunc { coef, num: n, den: d }
    }

    /// Numerator in Q[U,V].
    pub fn numer(&self) -> BiPoly {
        BiPoly::from_zbi(&self.coef, &self.num)
    }

    /// Denominator: primitive in Z[U,V] with positive leading coefficient.
    pub fn denom(&self) -> BiPoly {
        BiPoly::from_zbi(&Rational::one(), &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coef.is_one() && self.num.is_unit() && self.den.is_unit()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_constant() && self.num.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<BiPoly> {
        self.is_polynomial().then(|| self.numer())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        self.is_constant().then(|| self.coef.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        RatFunc { coef: &self.coef * c, num: self.num.clone(), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { coef: self.coef.recip(), num: self.den.clone(), den: self.num.clone() })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at `(U, V) = (u, v)`.
    pub fn evaluate(&self, u: &Rational, v: &Rational) -> Result<Rational> {
        let den = self.denom().evaluate(u, v);
        if den.is_zero() {
            return Err(Error::VanishingDenominator { u: u.to_string(), v: v.to_string() });
        }
        Ok(self.numer().evaluate(u, v) / den)
    }

    /// Projection to the non-equivariant ring: the constant term, for polynomials only.
    pub fn classical_limit(&self) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if !self.is_polynomial() {
            return Err(Error::NotPolynomial);
        }
        let den = BiPoly::from_zbi(&Rational::one(), &self.den).constant_term();
        Ok(self.numer().constant_term() / den)
    }

    /// Swaps U and V.
    pub fn swap_uv(&self) -> Self {
        Self::new(&self.numer().swap_uv(), &self.denom().swap_uv()).unwrap()
    }

    fn split_rational(c: &Rational) -> (BigInt, BigInt) {
        (c.numer().clone(), c.denom().clone())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.num == rhs.num && self.den == rhs.den {
            let c = &self.coef + &rhs.coef;
            if c.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc { coef: c, num: self.num.clone(), den: self.den.clone() };
        }
        let (p1, q1) = RatFunc::split_rational(&self.coef);
        let (p2, q2) = RatFunc::split_rational(&rhs.coef);
        let l = q1.lcm(&q2);
        let t1 = ZBi::from_bigint(p1 * (&l / &q1));
        let t2 = ZBi::from_bigint(p2 * (&l / &q2));
        let (g, d1, d2) = if self.den == rhs.den {
            (self.den.clone(), ZBi::one(), ZBi::one())
        } else {
            let g = self.den.gcd(&rhs.den);
            let d1 = self.den.div_exact(&g).unwrap();
            let d2 = rhs.den.div_exact(&g).unwrap();
            (g, d1, d2)
        };
        let num = t1.mul(&self.num).mul(&d2).add(&t2.mul(&rhs.num).mul(&d1));
        if num.is_zero() {
            return RatFunc::zero();
        }
        let cont_int = num.int_content();
        let num = num.div_int(&cont_int);
        let h = num.gcd(&g);
        let (num, g) = if h.is_unit() { (num, g) } else { (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap()) };
        let den = g.mul(&d1).mul(&d2);
        RatFunc::normalize(Rational::new(cont_int, l), num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let coef = &self.coef * &rhs.coef;
        let cancel = |n: &ZBi, d: &ZBi| -> (ZBi, ZBi) {
            if n.is_unit() || d.is_unit() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d);
            if g.is_unit() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        RatFunc::normalize(coef, n1.mul(&n2), d1.mul(&d2))
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] for a `Result`.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { coef: -&self.coef, num: self.num.clone(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &RatFunc) -> RatFunc {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::one(), |a, b| &a * &b)
    }
}

impl From<BiPoly> for RatFunc {
    fn from(p: BiPoly) -> Self {
        RatFunc::from_poly(&p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::from_rational(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numer();
        if self.den.is_unit() {
            return write!(f, "{num}");
        }
        if num.terms().len() > 1 {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        write!(f, "/({})", self.denom())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_ratfunc(s)
    }
}

impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Used by evaluate-based spot checks in tests.
#[allow(dead_code)]
pub(crate) fn eval_poly_rat(p: &BiPoly, u: &Rational, v: &Rational) -> Rational {
    p.terms().iter().fold(Rational::zero(), |acc, (m, c)| acc + c * pow_rat(u, m.u) * pow_rat(v, m.v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn field_operations() {
        assert_eq!(r("(-2*U)/(-U)"), RatFunc::from_int(2));
        let x = r("(U+V)/(U-V)");
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(&r("1/U") * &r("1/V"), r("1/(U*V)"));
        assert_eq!(&r("1/U") + &r("1/V"), r("(U+V)/(U*V)"));
        assert_eq!(r("1/(U-V)") + r("1/(V-U)"), RatFunc::zero());
        assert!(r("1/U").checked_div(&RatFunc::zero()).is_err());
    }

    #[test]
    fn canonical_denominator_is_primitive_and_positive() {
        let x = r("(3*U)/(-6*U^2 + 2*V)");
        assert_eq!(x.denom(), r("3*U^2 - V").as_polynomial().unwrap());
        assert_eq!(x.numer(), r("-3/2*U").as_polynomial().unwrap());
        assert_eq!(x.to_string(), "-3/2*U/(3*U^2 - V)");
        assert_eq!(r("(2*U^2 - 3*U*V + V^2)/(U*V)").to_string(), "(2*U^2 - 3*U*V + V^2)/(U*V)");
    }

    #[test]
    fn evaluation() {
        assert_eq!(r("U/V").evaluate(&q(2, 1), &q(3, 1)).unwrap(), q(2, 3));
        assert_eq!(r("1/(U*V)").evaluate(&q(1, 1), &q(1, 1)).unwrap(), q(1, 1));
        assert_eq!(r("(-2*U+V)/(-U+V)").evaluate(&q(1, 1), &q(3, 1)).unwrap(), q(1, 2));
        assert!(matches!(r("1/(U-V)").evaluate(&q(2, 1), &q(2, 1)), Err(Error::VanishingDenominator { .. })));
    }

    #[test]
    fn classical_limit() {
        assert_eq!(RatFunc::from_int(6).classical_limit().unwrap(), q(6, 1));
        assert_eq!(r("-2*U+3").classical_limit().unwrap(), q(3, 1));
        assert_eq!(r("1/(U*V)").classical_limit(), Err(Error::NotPolynomial));
        assert_eq!(RatFunc::zero().classical_limit().unwrap(), q(0, 1));
    }
}
