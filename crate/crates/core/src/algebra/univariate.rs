//! Dense univariate polynomials over a gcd domain.
//!
//! `Univariate<BigInt>` is Z[V]; nesting once more gives Z[V][U], the
//! recursive representation the gcd and exact-division routines run on.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait GcdRing: Clone + PartialEq + Eq + Hash + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `Some(q)` with `self = q * o`, or `None` if `o` does not divide `self`.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    /// Unit-normal greatest common divisor; `gcd(0, x)` is the normal form of `x`.
    fn gcd(&self, o: &Self) -> Self;
    /// Sign of the innermost leading coefficient.
    fn lead_negative(&self) -> bool;
    fn is_unit(&self) -> bool;

    fn normal(&self) -> Self {
        if self.lead_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl GcdRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn lead_negative(&self) -> bool {
        self.is_negative()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// Coefficients in ascending degree order, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Univariate<R> {
    pub(crate) c: Vec<R>,
}

impl<R: GcdRing> Univariate<R> {
    pub(crate) fn from_coeffs(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Univariate { c }
    }

    pub(crate) fn constant(r: R) -> Self {
        Self::from_coeffs(vec![r])
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lc(&self) -> &R {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    fn valuation(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    fn shift_down(&self, k: usize) -> Self {
        Univariate { c: self.c[k..].to_vec() }
    }

    fn shift_up(&self, k: usize) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        Univariate { c }
    }

    pub(crate) fn scale(&self, r: &R) -> Self {
        if r.is_zero() {
            return Self::from_coeffs(vec![]);
        }
        Univariate { c: self.c.iter().map(|x| x.mul(r)).collect() }
    }

    fn div_scalar(&self, r: &R) -> Self {
        Univariate { c: self.c.iter().map(|x| x.div_exact(r).expect("content divides every coefficient")).collect() }
    }

    pub(crate) fn content(&self) -> R {
        let mut g = R::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_unit() {
                break;
            }
        }
        g
    }

    pub(crate) fn primitive(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let c = self.content();
        if c.is_unit() && !c.lead_negative() {
            return self.clone();
        }
        self.div_scalar(&c)
    }

    /// Sparse pseudo-remainder of `self` by `b` (b nonzero).
    fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let lb = b.lc();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc().clone();
            r = r.scale(lb).sub(&b.scale(&lr).shift_up(dr - db));
        }
        r
    }
}

impl<R: GcdRing> GcdRing for Univariate<R> {
    fn zero() -> Self {
        Univariate { c: vec![] }
    }
    fn one() -> Self {
        Univariate { c: vec![R::one()] }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(c)
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(c)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(c)
    }
    fn neg(&self) -> Self {
        Univariate { c: self.c.iter().map(|x| x.neg()).collect() }
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let db = o.degree()?;
        if self.c.is_empty() {
            return Some(Self::zero());
        }
        let da = self.degree().unwrap();
        if da < db {
            return None;
        }
        let mut q = vec![R::zero(); da - db + 1];
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let t = r.lc().div_exact(o.lc())?;
            r = r.sub(&o.scale(&t).shift_up(dr - db));
            q[dr - db] = t;
        }
        Some(Self::from_coeffs(q))
    }
    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normal();
        }
        if o.is_zero() {
            return self.normal();
        }
        let v = self.valuation().min(o.valuation());
        let a = self.shift_down(self.valuation());
        let b = o.shift_down(o.valuation());
        let ca = a.content();
        let cb = b.content();
        let c = ca.gcd(&cb);
        if a.c.len() == 1 || b.c.len() == 1 {
            return Self::constant(c).shift_up(v).normal();
        }
        let mut a = a.div_scalar(&ca);
        let mut b = b.div_scalar(&cb);
        if a.c.len() < b.c.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.c.len() == 1 {
                a = Self::one();
                break;
            }
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive().scale(&c).shift_up(v).normal()
    }
    fn lead_negative(&self) -> bool {
        self.c.last().is_some_and(|x| x.lead_negative())
    }
    fn is_unit(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_unit()
    }
}

/// Z[V][U]: outer index is the U-degree, inner index the V-degree.
pub(crate) type ZBi = Univariate<Univariate<BigInt>>;

impl ZBi {
    /// Coefficient of the leading term in graded-lexicographic order with U > V.
    pub(crate) fn grlex_lead(&self) -> Option<&BigInt> {
        let mut best: Option<((usize, usize), &BigInt)> = None;
        for (i, row) in self.c.iter().enumerate() {
            if let Some(j) = row.degree() {
                let key = (i + j, i);
                if best.is_none_or(|(k, _)| key > k) {
                    best = Some((key, &row.c[j]));
                }
            }
        }
        best.map(|(_, c)| c)
    }

    pub(crate) fn grlex_normal(&self) -> (Self, bool) {
        match self.grlex_lead() {
            Some(c) if c.is_negative() => (self.neg(), true),
            _ => (self.clone(), false),
        }
    }

    pub(crate) fn is_constant(&self) -> bool {
        self.c.len() <= 1 && self.c.first().is_none_or(|r| r.c.len() <= 1)
    }

    pub(crate) fn from_bigint(n: BigInt) -> Self {
        Self::constant(Univariate::constant(n))
    }

    /// Positive gcd of all integer coefficients.
    pub(crate) fn int_content(&self) -> BigInt {
        let mut g = BigInt::from(0);
        for row in &self.c {
            for x in &row.c {
                g = Integer::gcd(&g, x);
                if g.is_one() {
                    return g;
                }
            }
        }
        g
    }

    pub(crate) fn div_int(&self, n: &BigInt) -> Self {
        Univariate { c: self.c.iter().map(|row| row.div_scalar(n)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zv(c: &[i64]) -> Univariate<BigInt> {
        Univariate::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn integer_polynomial_gcd() {
        // (V+1)(V-2) and (V+1)(V+3)
        let a = zv(&[-2, -1, 1]);
        let b = zv(&[3, 4, 1]);
        assert_eq!(a.gcd(&b), zv(&[1, 1]));
        assert_eq!(zv(&[0, 0, 6]).gcd(&zv(&[0, 4])), zv(&[0, 2]));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = zv(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&zv(&[1, 1])), Some(zv(&[-1, 1])));
        assert_eq!(a.div_exact(&zv(&[2, 1])), None);
        assert_eq!(zv(&[2, 4]).div_exact(&zv(&[4])), None);
    }
}
