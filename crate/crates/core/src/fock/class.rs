use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{RatFunc, Rational};
use crate::error::{Error, Result};
use crate::localization::fix_pairing;
use crate::partition::Partition;

/// A class in the fixed-point basis: finitely many nonzero coordinates.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockClass {
    coords: BTreeMap<Partition, RatFunc>,
}

impl FockClass {
    pub fn zero() -> Self {
        FockClass::default()
    }

    /// The vacuum `fix(∅)`.
    pub fn vacuum() -> Self {
        Self::fix(Partition::empty())
    }

    pub fn fix(lambda: Partition) -> Self {
        Self::from_coords([(lambda, RatFunc::one())])
    }

    pub fn from_coords<I: IntoIterator<Item = (Partition, RatFunc)>>(it: I) -> Self {
        let mut c = FockClass::zero();
        for (p, x) in it {
            c.add_term(p, &x);
        }
        c
    }

    pub fn add_term(&mut self, lambda: Partition, x: &RatFunc) {
        if x.is_zero() {
            return;
        }
        match self.coords.get_mut(&lambda) {
            Some(y) => {
                let s = &*y + x;
                if s.is_zero() {
                    self.coords.remove(&lambda);
                } else {
                    *y = s;
                }
            }
            None => {
                self.coords.insert(lambda, x.clone());
            }
        }
    }

    pub fn coord(&self, lambda: &Partition) -> RatFunc {
        self.coords.get(lambda).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Nonzero coordinates in partition order.
    pub fn coords(&self) -> impl Iterator<Item = (&Partition, &RatFunc)> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.coords.keys().map(Partition::weight).collect()
    }

    pub fn component(&self, n: usize) -> FockClass {
        FockClass {
            coords: self.coords.iter().filter(|(p, _)| p.weight() == n).map(|(p, x)| (p.clone(), x.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> FockClass {
        if c.is_zero() {
            return FockClass::zero();
        }
        FockClass { coords: self.coords.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> FockClass {
        self.scale(&RatFunc::from_rational(c.clone()))
    }

    pub fn add(&self, other: &FockClass) -> FockClass {
        let mut out = self.clone();
        for (p, x) in &other.coords {
            out.add_term(p.clone(), x);
        }
        out
    }

    pub fn sub(&self, other: &FockClass) -> FockClass {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    /// Pointwise product of localized coordinates.
    pub fn cup(&self, other: &FockClass) -> FockClass {
        FockClass::from_coords(self.coords.iter().filter_map(|(p, x)| other.coords.get(p).map(|y| (p.clone(), x * y))))
    }

    /// `Σ_λ x_λ y_λ / Tan(λ)`; both classes must live in a single common degree.
    pub fn inner(&self, other: &FockClass) -> Result<RatFunc> {
        let degrees: BTreeSet<usize> = self.degrees().union(&other.degrees()).copied().collect();
        if degrees.len() > 1 {
            return Err(Error::MixedDegrees(degrees.into_iter().collect()));
        }
        Ok(self.coords.iter().filter_map(|(p, x)| other.coords.get(p).map(|y| &(x * y) * &fix_pairing(p))).sum())
    }

    /// True if every coordinate is a polynomial.
    pub fn is_integral(&self) -> bool {
        self.coords.values().all(RatFunc::is_polynomial)
    }
}

impl fmt::Display for FockClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, x)) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let s = x.to_string();
            if s.contains(' ') || s.contains('/') {
                write!(f, "({s})*fix{p}")?;
            } else {
                write!(f, "{s}*fix{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FockClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockClass({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn inner_and_cup() {
        let a = FockClass::fix(p("[2]"));
        let b = FockClass::fix(p("[1,1]"));
        assert_eq!(a.inner(&a).unwrap(), fix_pairing(&p("[2]")));
        assert!(a.inner(&b).unwrap().is_zero());
        assert_eq!(a.cup(&a), a);
        assert_eq!(a.inner(&FockClass::vacuum()), Err(Error::MixedDegrees(vec![0, 2])));
    }

    #[test]
    fn cancellation_drops_coordinates() {
        let a = FockClass::fix(p("[2]"));
        assert!(a.sub(&a).is_zero());
    }
}
