use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{identity, solve_linear, Matrix, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};

use super::class::FockClass;
use super::operator::Operator;
use super::space::FockSpace;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Basis {
    Fix,
    Nak,
    Es,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Fix => "fix",
            Basis::Nak => "nak",
            Basis::Es => "es",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fix" => Ok(Basis::Fix),
            "nak" => Ok(Basis::Nak),
            "es" => Ok(Basis::Es),
            _ => Err(Error::Parse(format!("unknown basis {s:?}; expected fix, nak or es"))),
        }
    }
}

fn require_integral(what: &str, lambda: &Partition, c: FockClass) -> Result<FockClass> {
    if c.is_integral() {
        Ok(c)
    } else {
        Err(Error::BasisNotIntegral(format!("{what}{lambda} has a non-polynomial fix coordinate")))
    }
}

/// `nak(λ) = q_{λ_l} ∘ ... ∘ q_{λ_1} (φ)`.
pub fn nak_class(space: &FockSpace, lambda: &Partition) -> Result<FockClass> {
    let ops: Vec<Operator> = lambda.parts().iter().rev().map(|&p| Operator::q(p as i64).unwrap()).collect();
    let c = space.apply_all(&ops, &FockClass::vacuum())?;
    require_integral("nak", lambda, c)
}

/// `es(λ) = q_{λ_1,X} ∘ ... ∘ q_{λ_l,X} (φ) / u_λ`.
pub fn es_class(space: &FockSpace, lambda: &Partition) -> Result<FockClass> {
    let ops: Vec<Operator> = lambda.parts().iter().map(|&p| Operator::qx(p as i64).unwrap()).collect();
    let c = space.apply_all(&ops, &FockClass::vacuum())?.scale_rational(&lambda.u().recip());
    require_integral("es", lambda, c)
}

pub fn nak_es_classes(space: &FockSpace, lambda: &Partition) -> Result<(FockClass, FockClass)> {
    Ok((nak_class(space, lambda)?, es_class(space, lambda)?))
}

fn basis_class(space: &FockSpace, basis: Basis, lambda: &Partition) -> Result<FockClass> {
    match basis {
        Basis::Fix => Ok(FockClass::fix(lambda.clone())),
        Basis::Nak => nak_class(space, lambda),
        Basis::Es => es_class(space, lambda),
    }
}

/// Column `j` holds the coordinates of the `j`-th source basis vector in the target basis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BasisMatrix {
    pub n: usize,
    pub from: String,
    pub to: String,
    pub order: Vec<Partition>,
    pub entries: Matrix,
}

impl BasisMatrix {
    pub fn entry(&self, row: &Partition, col: &Partition) -> Option<&RatFunc> {
        let i = self.order.iter().position(|p| p == row)?;
        let j = self.order.iter().position(|p| p == col)?;
        Some(&self.entries[i][j])
    }
}

/// Columns of the `basis` vectors of weight `n` in fix coordinates.
fn fix_columns(space: &FockSpace, basis: Basis, order: &[Partition]) -> Result<Vec<Vec<RatFunc>>> {
    order
        .iter()
        .map(|lambda| {
            let c = basis_class(space, basis, lambda)?;
            Ok(order.iter().map(|mu| c.coord(mu)).collect())
        })
        .collect()
}

pub fn basis_matrix(space: &FockSpace, n: usize, from: Basis, to: Basis) -> Result<BasisMatrix> {
    if n > space.max_weight() {
        return Err(Error::TruncationOverflow { degree: n, max_weight: space.max_weight() });
    }
    let order = partitions_of(n);
    let size = order.len();
    let columns = if from == to {
        identity(size)
    } else {
        let src = fix_columns(space, from, &order)?;
        if to == Basis::Fix {
            src
        } else {
            let tgt = fix_columns(space, to, &order)?;
            let m: Matrix = (0..size).map(|i| (0..size).map(|j| tgt[j][i].clone()).collect()).collect();
            solve_linear(&m, &src)?
        }
    };
    let entries = (0..size).map(|i| (0..size).map(|j| columns[j][i].clone()).collect()).collect();
    Ok(BasisMatrix { n, from: from.to_string(), to: to.to_string(), order, entries })
}

/// Entrywise value at `U = V = 0`; every entry must be a polynomial.
pub fn classical_projection(m: &Matrix) -> Result<Vec<Vec<Rational>>> {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    x.classical_limit().map_err(|_| Error::BasisNotIntegral(format!("entry ({i},{j}) = {x}")))
                })
                .collect()
        })
        .collect()
}

/// Comparison of the weight-`n` component of `exp(Σ_m (-1)^{m-1}/m q_m) φ`
/// with the class `μ ↦ Π_{c∈μ} (1 + w(c))`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LehnReport {
    pub n: usize,
    pub agrees: bool,
    pub exponential: Vec<(Partition, RatFunc)>,
    pub chern_polynomial: Vec<(Partition, RatFunc)>,
}

pub fn lehn_diagnostic(space: &FockSpace, n: usize) -> Result<LehnReport> {
    // Degree-n part of the exponential: Σ_λ (-1)^{n-l}/z_λ nak(λ).
    let mut exp = FockClass::zero();
    for lambda in partitions_of(n) {
        let sign = if (n - lambda.len()).is_multiple_of(2) { 1 } else { -1 };
        let c = lambda.z().recip() * Rational::from_integer(sign.into());
        exp = exp.add(&nak_class(space, &lambda)?.scale_rational(&c));
    }
    let chern = FockClass::from_coords(partitions_of(n).into_iter().map(|mu| {
        let v: RatFunc =
            mu.cells_and_weight().into_iter().map(|(_, w)| RatFunc::from_poly(&w) + RatFunc::one()).product();
        (mu, v)
    }));
    let collect = |c: &FockClass| partitions_of(n).into_iter().map(|p| (p.clone(), c.coord(&p))).collect();
    Ok(LehnReport { n, agrees: exp == chern, exponential: collect(&exp), chern_polynomial: collect(&chern) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Truncation;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn nak_small() {
        let f = FockSpace::new(Truncation::default());
        let c = nak_class(&f, &p("[1,1]")).unwrap();
        assert_eq!(c, FockClass::from_coords([(p("[1,1]"), r("2")), (p("[2]"), r("2"))]));
        let c = nak_class(&f, &p("[1,1,1]")).unwrap();
        for mu in partitions_of(3) {
            assert_eq!(c.coord(&mu), r("6"));
        }
        assert_eq!(es_class(&f, &p("[1]")).unwrap(), FockClass::fix(p("[1]")));
    }

    #[test]
    fn matrices_invert() {
        let f = FockSpace::new(Truncation::default());
        let a = basis_matrix(&f, 3, Basis::Nak, Basis::Es).unwrap();
        let b = basis_matrix(&f, 3, Basis::Es, Basis::Nak).unwrap();
        assert_eq!(crate::algebra::mat_mul(&a.entries, &b.entries).unwrap(), identity(3));
        assert_eq!(basis_matrix(&f, 2, Basis::Fix, Basis::Fix).unwrap().entries, identity(2));
        assert_eq!(basis_matrix(&f, 0, Basis::Nak, Basis::Es).unwrap().entries, identity(1));
    }
}
