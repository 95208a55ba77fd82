//! Weight data at the torus-fixed points.

use std::fmt;

use crate::algebra::{BiPoly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::partition::{Cell, Partition};

/// Integer linear form `u*U + v*V`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LinearForm {
    pub u: i64,
    pub v: i64,
}

impl LinearForm {
    pub fn new(u: i64, v: i64) -> Self {
        LinearForm { u, v }
    }

    pub fn of_cell(c: Cell) -> Self {
        LinearForm::new(c.a as i64, c.b as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0 && self.v == 0
    }

    pub fn to_poly(self) -> BiPoly {
        BiPoly::linear(self.u, self.v)
    }

    pub fn swap(self) -> Self {
        LinearForm::new(self.v, self.u)
    }
}

impl std::ops::Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, o: LinearForm) -> LinearForm {
        LinearForm::new(self.u - o.u, self.v - o.v)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

pub fn product(forms: &[LinearForm]) -> BiPoly {
    forms.iter().fold(BiPoly::one(), |acc, w| &acc * &w.to_poly())
}

/// Multiset of linear forms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WeightMultiset {
    pub forms: Vec<LinearForm>,
}

impl WeightMultiset {
    pub fn entries(&self) -> Vec<BiPoly> {
        self.forms.iter().map(|w| w.to_poly()).collect()
    }

    pub fn product(&self) -> BiPoly {
        product(&self.forms)
    }

    /// Entries sorted, for multiset comparison.
    pub fn sorted(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = self.forms.iter().map(|w| (w.u, w.v)).collect();
        v.sort_unstable();
        v
    }
}

/// Two weights per cell: `w+ = arm*U - (leg+1)*V` and `w- = -(arm+1)*U + leg*V`.
pub fn tangent_weights(lambda: &Partition) -> WeightMultiset {
    let conj = lambda.conjugate();
    let mut forms = Vec::with_capacity(2 * lambda.weight());
    for c in lambda.cells() {
        let arm = (conj.part(c.b) - c.a - 1) as i64;
        let leg = (lambda.part(c.a) - c.b - 1) as i64;
        forms.push(LinearForm::new(arm, -(leg + 1)));
        forms.push(LinearForm::new(-(arm + 1), leg));
    }
    WeightMultiset { forms }
}

/// `Tan(λ)`: product of the tangent weights.
pub fn tan(lambda: &Partition) -> BiPoly {
    tangent_weights(lambda).product()
}

/// `⟨fix(λ), fix(λ)⟩ = 1/Tan(λ)`.
pub fn fix_pairing(lambda: &Partition) -> RatFunc {
    RatFunc::from_poly(&tan(lambda)).inverse().expect("tangent weights are nonzero")
}

/// How the kernel weights of the one-box correspondence are read.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum KerReading {
    /// `Π_f (w(f) - w(c))` over removable cells `f`.
    #[default]
    Arrow,
    /// The indexed display, whose `i > k + 1` factors carry the opposite V-sign.
    Display,
}

/// Coker and Ker weight lists for adding the addable cell `c` to `λ`.
pub fn coker_ker_factors(
    lambda: &Partition,
    c: Cell,
    reading: KerReading,
) -> Result<(Vec<LinearForm>, Vec<LinearForm>)> {
    let addable = lambda.addable();
    let Some(k) = addable.iter().position(|&x| x == c) else {
        return Err(Error::NotAddable { partition: lambda.to_string(), cell: c.to_string() });
    };
    let wc = LinearForm::of_cell(c);
    let coker =
        addable.iter().filter(|&&x| x != c).map(|&x| LinearForm::of_cell(x) - wc - LinearForm::new(1, 1)).collect();
    let ker = match reading {
        KerReading::Arrow => lambda.removable().into_iter().map(|f| LinearForm::of_cell(f) - wc).collect(),
        KerReading::Display => {
            let x = |i: usize| addable[i].a as i64;
            let y = |i: usize| addable[i].b as i64;
            let (xk, yk) = (x(k), y(k));
            (0..addable.len())
                .filter(|&i| i != k)
                .map(|i| {
                    if i < k {
                        LinearForm::new(x(i + 1) - 1 - xk, y(i) - 1 - yk)
                    } else {
                        LinearForm::new(x(i) - xk - 1, -(y(i - 1) - yk + 1))
                    }
                })
                .collect()
        }
    };
    Ok((coker, ker))
}

/// `(Coker, Ker)` products for adding `c` to `λ`.
pub fn coker_ker(lambda: &Partition, c: Cell) -> Result<(BiPoly, BiPoly)> {
    let (co, ke) = coker_ker_factors(lambda, c, KerReading::Arrow)?;
    Ok((product(&co), product(&ke)))
}

/// `Coker/Ker` as a rational function.
pub fn coker_over_ker(lambda: &Partition, c: Cell, reading: KerReading) -> Result<RatFunc> {
    let (co, ke) = coker_ker_factors(lambda, c, reading)?;
    let num = RatFunc::from_poly(&product(&co));
    let den = RatFunc::from_poly(&product(&ke));
    num.checked_div(&den)
}

/// Eigenvalue of the boundary operator on `fix(λ)`:
/// `-Σ_j λ∨_j(λ∨_j - 1) U - Σ_i λ_i(λ_i - 1) V`.
pub fn boundary_eigenvalue(lambda: &Partition) -> BiPoly {
    let e = boundary_formula(lambda);
    let two_e1 = chern_restriction(lambda, 1).scale(&Rational::from_integer((-2).into()));
    assert_eq!(e, two_e1, "boundary eigenvalue disagrees with -2 e1 at {lambda}");
    e
}

/// The part-length formula for the boundary eigenvalue, without the cross-check.
pub fn boundary_formula(lambda: &Partition) -> BiPoly {
    let s = |p: &Partition| p.parts().iter().map(|&x| (x * x.saturating_sub(1)) as i64).sum::<i64>();
    BiPoly::linear(-s(&lambda.conjugate()), -s(lambda))
}

/// Restriction of `c_k` of the tautological bundle to `fix(λ)`: `e_k` of the cell weights.
pub fn chern_restriction(lambda: &Partition, k: usize) -> BiPoly {
    let n = lambda.weight();
    if k > n {
        return BiPoly::zero();
    }
    // e[j] after processing a prefix of the cells.
    let mut e = vec![BiPoly::one()];
    e.resize(k + 1, BiPoly::zero());
    for (_, w) in lambda.cells_and_weight() {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * &w;
            e[j] = &e[j] + &t;
        }
    }
    e.swap_remove(k)
}

/// `Σ_{μ∈λ[1]} Δ(λ,μ)² Tan(λ)/Tan(μ) - Σ_{ν∈λ[-1]} Δ(ν,λ)² Tan(ν)/Tan(λ)` with `Δ = Coker/Ker`.
pub fn bott_closure(lambda: &Partition, reading: KerReading) -> Result<RatFunc> {
    let tl = RatFunc::from_poly(&tan(lambda));
    let mut acc = RatFunc::zero();
    for (c, mu) in lambda.up() {
        let d = coker_over_ker(lambda, c, reading)?;
        let r = tl.checked_div(&RatFunc::from_poly(&tan(&mu)))?;
        acc = &acc + &(&(&d * &d) * &r);
    }
    for (c, nu) in lambda.down() {
        let d = coker_over_ker(&nu, c, reading)?;
        let r = RatFunc::from_poly(&tan(&nu)).checked_div(&tl)?;
        acc = &acc - &(&(&d * &d) * &r);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> BiPoly {
        s.parse::<RatFunc>().unwrap().as_polynomial().unwrap()
    }

    #[test]
    fn tangent_weights_small() {
        let w = |s: &str| {
            let mut v = tangent_weights(&p(s)).entries();
            v.sort_by_key(|x| x.to_string());
            v
        };
        let mut expect = vec![poly("-U"), poly("-V")];
        expect.sort_by_key(|x| x.to_string());
        assert_eq!(w("[1]"), expect);
        let mut expect = vec![poly("-U"), poly("-V"), poly("-U+V"), poly("-2*V")];
        expect.sort_by_key(|x| x.to_string());
        assert_eq!(w("[2]"), expect);
        assert_eq!(tan(&p("[1]")), poly("U*V"));
    }

    #[test]
    fn coker_ker_examples() {
        assert_eq!(coker_ker(&p("[1]"), Cell::new(1, 0)).unwrap(), (poly("-2*U"), poly("-U")));
        assert_eq!(coker_ker(&p("[1]"), Cell::new(0, 1)).unwrap(), (poly("-2*V"), poly("-V")));
        assert_eq!(coker_ker(&p("[2]"), Cell::new(0, 2)).unwrap(), (poly("-3*V"), poly("-V")));
        assert!(coker_ker(&p("[2]"), Cell::new(1, 1)).is_err());
    }

    #[test]
    fn readings_agree_near_the_added_cell() {
        for lambda in [p("[1]"), p("[2,1]"), p("[3,1]")] {
            let last = *lambda.addable().last().unwrap();
            assert_eq!(
                coker_ker_factors(&lambda, last, KerReading::Arrow).unwrap(),
                coker_ker_factors(&lambda, last, KerReading::Display).unwrap()
            );
        }
        let first = Cell::new(0, 2);
        assert_ne!(
            coker_ker_factors(&p("[2,1]"), first, KerReading::Arrow).unwrap(),
            coker_ker_factors(&p("[2,1]"), first, KerReading::Display).unwrap()
        );
    }

    #[test]
    fn boundary_and_chern() {
        assert_eq!(boundary_eigenvalue(&Partition::empty()), BiPoly::zero());
        assert_eq!(boundary_eigenvalue(&p("[2]")), poly("-2*V"));
        assert_eq!(boundary_eigenvalue(&p("[1,1]")), poly("-2*U"));
        assert_eq!(chern_restriction(&p("[2]"), 0), BiPoly::one());
        assert_eq!(chern_restriction(&p("[2]"), 1), poly("V"));
        assert_eq!(chern_restriction(&p("[3]"), 2), poly("2*V^2"));
        assert_eq!(chern_restriction(&p("[2]"), 3), BiPoly::zero());
    }

    #[test]
    fn pairing() {
        assert_eq!(fix_pairing(&Partition::empty()), RatFunc::one());
        assert_eq!(fix_pairing(&p("[1]")), "1/(U*V)".parse().unwrap());
        assert_eq!(fix_pairing(&p("[2]")), "1/((-U)*(-V)*(-U+V)*(-2*V))".parse().unwrap());
    }

    #[test]
    fn bott_closure_small() {
        let unit: RatFunc = "1/(U*V)".parse().unwrap();
        for lambda in [Partition::empty(), p("[1]"), p("[2]"), p("[2,1]")] {
            assert_eq!(bott_closure(&lambda, KerReading::Arrow).unwrap(), unit, "{lambda}");
        }
    }
}
