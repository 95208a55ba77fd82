//! Strategies and property bodies shared by the property tests and the acceptance runner.

#![allow(dead_code)]

use hilbfock::algebra::{BiPoly, Monomial, RatFunc, Rational};
use hilbfock::partition::Partition;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Sparse polynomials of degree < 3 in each variable with small integer and half-integer coefficients.
pub fn poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..3, 0u32..3, -4i64..=4, prop::sample::select(vec![1i64, 2])), 0..4)
        .prop_map(|ts| BiPoly::from_terms(ts.into_iter().map(|(i, j, c, d)| (Monomial::new(i, j), rational(c, d)))))
}

pub fn nonzero_poly() -> impl Strategy<Value = BiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(&n, &d).unwrap())
}

pub fn point() -> impl Strategy<Value = (Rational, Rational)> {
    (-6i64..=6, 1i64..=3, -6i64..=6, 1i64..=3).prop_map(|(a, b, c, d)| (rational(a, b), rational(c, d)))
}

pub fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=6, 0..=6).prop_map(Partition::from_unsorted)
}

pub fn field_laws(x: &RatFunc, y: &RatFunc, z: &RatFunc) -> Result<(), TestCaseError> {
    prop_assert_eq!(x + y, y + x);
    prop_assert_eq!(x * y, y * x);
    prop_assert_eq!(&(x + y) + z, x + &(y + z));
    prop_assert_eq!(&(x * y) * z, x * &(y * z));
    prop_assert_eq!(x * &(y + z), &(x * y) + &(x * z));
    prop_assert!((x + &(-x)).is_zero());
    prop_assert_eq!(x + &RatFunc::zero(), x.clone());
    prop_assert_eq!(x * &RatFunc::one(), x.clone());
    if !x.is_zero() {
        prop_assert!((x * &x.inverse().unwrap()).is_one());
        prop_assert_eq!(&(y / x) * x, y.clone());
    }
    Ok(())
}

pub fn gcd_correct(a: &BiPoly, b: &BiPoly, c: &BiPoly) -> Result<(), TestCaseError> {
    let (a, b) = (a * c, b * c);
    prop_assume!(!a.is_zero() || !b.is_zero());
    let g = a.gcd(&b).unwrap();
    prop_assert!(!g.is_zero());
    let ca = a.div_exact(&g);
    let cb = b.div_exact(&g);
    prop_assert!(ca.is_some() && cb.is_some(), "gcd {} does not divide {} and {}", g, a, b);
    let (ca, cb) = (ca.unwrap(), cb.unwrap());
    prop_assert!(ca.gcd(&cb).unwrap().is_constant(), "cofactors {} and {} share a factor", ca, cb);
    if !c.is_zero() {
        prop_assert!(g.div_exact(c).is_some(), "common factor {} lost from gcd {}", c, g);
    }
    prop_assert_eq!(g, b.gcd(&a).unwrap());
    Ok(())
}

pub fn canonical_idempotent(x: &RatFunc, k: &BiPoly) -> Result<(), TestCaseError> {
    let text = x.to_string();
    let back: RatFunc = text.parse().unwrap();
    prop_assert_eq!(&back, x);
    prop_assert_eq!(back.to_string(), text);
    let widened = RatFunc::new(&(&x.numer() * k), &(&x.denom() * k)).unwrap();
    prop_assert_eq!(widened.to_string(), x.to_string());
    Ok(())
}

/// Term-by-term evaluation, independent of the library's Horner path.
fn eval_terms(p: &BiPoly, u: &Rational, v: &Rational) -> Rational {
    let mut s = rational(0, 1);
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for _ in 0..m.u {
            t *= u;
        }
        for _ in 0..m.v {
            t *= v;
        }
        s += t;
    }
    s
}

pub fn evaluate_homomorphism(x: &RatFunc, y: &RatFunc, pt: &(Rational, Rational)) -> Result<(), TestCaseError> {
    let (u, v) = pt;
    let d = |r: &RatFunc| eval_terms(&r.denom(), u, v);
    prop_assume!(d(x) != rational(0, 1) && d(y) != rational(0, 1));
    let ex = x.evaluate(u, v).unwrap();
    let ey = y.evaluate(u, v).unwrap();
    prop_assert_eq!(&ex, &(eval_terms(&x.numer(), u, v) / d(x)));
    prop_assert_eq!((x + y).evaluate(u, v).unwrap(), &ex + &ey);
    prop_assert_eq!((x * y).evaluate(u, v).unwrap(), &ex * &ey);
    Ok(())
}

pub fn conjugation_involution(l: &Partition) -> Result<(), TestCaseError> {
    let c = l.conjugate();
    prop_assert_eq!(c.weight(), l.weight());
    prop_assert_eq!(&c.conjugate(), l);
    prop_assert_eq!(c.len(), l.part(0));
    Ok(())
}

pub fn z_recursion(l: &Partition) -> Result<(), TestCaseError> {
    prop_assume!(!l.is_empty());
    let mut s = rational(0, 1);
    for j in l.multiplicities().keys() {
        s += l.z() / l.without_part(*j).unwrap().z();
    }
    prop_assert_eq!(s, rational(l.weight() as i64, 1));
    Ok(())
}

pub fn border_counts(l: &Partition) -> Result<(), TestCaseError> {
    let (add, rem) = l.border_cells();
    prop_assert_eq!(add.len(), rem.len() + 1);
    for c in add {
        let m = l.add_cell(c).unwrap();
        prop_assert_eq!(m.remove_cell(c).unwrap(), l.clone());
    }
    Ok(())
}
