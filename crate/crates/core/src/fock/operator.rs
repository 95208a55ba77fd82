use std::fmt;

use crate::algebra::{RatFunc, Rational};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};

/// Expression tree of a graded operator. Blocks are computed and memoized
/// by [`super::FockSpace`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum OpExpr {
    Identity,
    Q1,
    Qm1,
    Boundary,
    Rho,
    RhoDual,
    /// `q_i` for `|i| >= 2`, by the bracket recursions.
    Q(i64),
    /// `q_n` from skew standard tableaux.
    QTableau(usize),
    /// `q_{i,X}` for `i >= 2`.
    QX(usize),
    Adjoint(Box<OpExpr>),
    /// `Compose(f, g) = f ∘ g`.
    Compose(Box<OpExpr>, Box<OpExpr>),
    Sum(Vec<(RatFunc, OpExpr)>),
    Commutator(Box<OpExpr>, Box<OpExpr>),
}

impl OpExpr {
    pub fn degree(&self) -> i64 {
        match self {
            OpExpr::Identity | OpExpr::Boundary => 0,
            OpExpr::Q1 | OpExpr::Rho => 1,
            OpExpr::Qm1 | OpExpr::RhoDual => -1,
            OpExpr::Q(i) => *i,
            OpExpr::QTableau(n) | OpExpr::QX(n) => *n as i64,
            OpExpr::Adjoint(f) => -f.degree(),
            OpExpr::Compose(f, g) | OpExpr::Commutator(f, g) => f.degree() + g.degree(),
            OpExpr::Sum(terms) => terms.first().map_or(0, |(_, e)| e.degree()),
        }
    }

    /// Largest weight above the source weight touched while computing a block.
    pub fn excursion(&self) -> i64 {
        match self {
            OpExpr::Identity | OpExpr::Boundary | OpExpr::Qm1 => 0,
            OpExpr::Q1 | OpExpr::Rho => 1,
            OpExpr::RhoDual => 0,
            OpExpr::Q(_) | OpExpr::QX(_) => self.definition().expect("recursive operator").excursion(),
            OpExpr::QTableau(n) => *n as i64,
            OpExpr::Adjoint(f) => -f.degree() + f.excursion(),
            OpExpr::Compose(f, g) => g.excursion().max(g.degree() + f.excursion()),
            OpExpr::Commutator(f, g) => {
                let fg = g.excursion().max(g.degree() + f.excursion());
                let gf = f.excursion().max(f.degree() + g.excursion());
                fg.max(gf)
            }
            OpExpr::Sum(terms) => terms.iter().map(|(_, e)| e.excursion()).max().unwrap_or(0),
        }
    }

    /// Defining expression of a recursively defined operator.
    pub(crate) fn definition(&self) -> Option<OpExpr> {
        match *self {
            OpExpr::Q(i) if i >= 2 => {
                // (i-1) q_i = [rho, q_{i-1}]
                let br = OpExpr::Commutator(Box::new(OpExpr::Rho), Box::new(q_expr(i - 1)));
                Some(OpExpr::Sum(vec![(RatFunc::from_rational(ratio(1, i - 1)), br)]))
            }
            OpExpr::Q(i) if i <= -2 => {
                // (i+1) q_i = [rho_dual, q_{i+1}]
                let br = OpExpr::Commutator(Box::new(OpExpr::RhoDual), Box::new(q_expr(i + 1)));
                Some(OpExpr::Sum(vec![(RatFunc::from_rational(ratio(1, i + 1)), br)]))
            }
            OpExpr::QX(i) if i >= 2 => {
                // i q_{i,X} = (-1)^{i+1} q_i + U Σ_{j<i} (-1)^j q_j q_{i-j,X}
                let i = i as i64;
                let inv = ratio(1, i);
                let sign = |k: i64| if k % 2 == 0 { 1 } else { -1 };
                let mut terms = vec![(RatFunc::from_rational(ratio(sign(i + 1), i)), q_expr(i))];
                for j in 1..i {
                    let c = RatFunc::u().scale(&(&inv * Rational::from_integer(sign(j).into())));
                    let comp = OpExpr::Compose(Box::new(q_expr(j)), Box::new(qx_expr((i - j) as usize)));
                    terms.push((c, comp));
                }
                Some(OpExpr::Sum(terms))
            }
            OpExpr::RhoDual => {
                // 2 rho_dual = q_{-1} d - d q_{-1}
                let br = OpExpr::Commutator(Box::new(OpExpr::Qm1), Box::new(OpExpr::Boundary));
                Some(OpExpr::Sum(vec![(RatFunc::from_rational(ratio(1, 2)), br)]))
            }
            _ => None,
        }
    }
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn q_expr(i: i64) -> OpExpr {
    match i {
        1 => OpExpr::Q1,
        -1 => OpExpr::Qm1,
        _ => OpExpr::Q(i),
    }
}

fn qx_expr(i: usize) -> OpExpr {
    if i == 1 {
        OpExpr::Q1
    } else {
        OpExpr::QX(i)
    }
}

/// A graded linear operator on the Fock space with a fixed conformal degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Operator {
    expr: OpExpr,
}

impl Operator {
    pub fn from_expr(expr: OpExpr) -> Self {
        Operator { expr }
    }

    pub fn expr(&self) -> &OpExpr {
        &self.expr
    }

    pub fn degree(&self) -> i64 {
        self.expr.degree()
    }

    pub fn excursion(&self) -> i64 {
        self.expr.excursion()
    }

    pub fn identity() -> Self {
        Self::from_expr(OpExpr::Identity)
    }

    pub fn q1() -> Self {
        Self::from_expr(OpExpr::Q1)
    }

    pub fn qm1() -> Self {
        Self::from_expr(OpExpr::Qm1)
    }

    pub fn boundary() -> Self {
        Self::from_expr(OpExpr::Boundary)
    }

    pub fn rho() -> Self {
        Self::from_expr(OpExpr::Rho)
    }

    pub fn rho_dual() -> Self {
        Self::from_expr(OpExpr::RhoDual)
    }

    /// Nakajima operator `q_i`; `q_0` is rejected.
    pub fn q(i: i64) -> Result<Self> {
        if i == 0 {
            return Err(Error::QZero);
        }
        Ok(Self::from_expr(q_expr(i)))
    }

    pub fn q_tableau(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositiveIndex(0));
        }
        Ok(Self::from_expr(OpExpr::QTableau(n)))
    }

    /// `q_{i,X}` for `i >= 1`.
    pub fn qx(i: i64) -> Result<Self> {
        if i <= 0 {
            return Err(Error::NonPositiveIndex(i));
        }
        Ok(Self::from_expr(qx_expr(i as usize)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator) -> Operator {
        Self::from_expr(OpExpr::Compose(Box::new(self.expr.clone()), Box::new(other.expr.clone())))
    }

    /// `ops[0] ∘ ops[1] ∘ ...`; the identity for an empty list.
    pub fn compose_all(ops: &[Operator]) -> Operator {
        match ops.split_last() {
            None => Operator::identity(),
            Some((last, rest)) => rest.iter().rev().fold(last.clone(), |acc, f| f.compose(&acc)),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Operator {
        Self::from_expr(OpExpr::Sum(vec![(c.clone(), self.expr.clone())]))
    }

    pub fn linear_combination(terms: Vec<(RatFunc, Operator)>) -> Result<Operator> {
        let Some(d) = terms.first().map(|(_, f)| f.degree()) else {
            return Ok(Operator::from_expr(OpExpr::Sum(Vec::new())));
        };
        if let Some((_, f)) = terms.iter().find(|(_, f)| f.degree() != d) {
            return Err(Error::DegreeMismatch { left: d, right: f.degree() });
        }
        Ok(Self::from_expr(OpExpr::Sum(terms.into_iter().map(|(c, f)| (c, f.expr)).collect())))
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        Self::linear_combination(vec![(RatFunc::one(), self.clone()), (RatFunc::one(), other.clone())])
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        Self::linear_combination(vec![(RatFunc::one(), self.clone()), (RatFunc::from_int(-1), other.clone())])
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &Operator) -> Operator {
        Self::from_expr(OpExpr::Commutator(Box::new(self.expr.clone()), Box::new(other.expr.clone())))
    }

    pub fn adjoint(&self) -> Operator {
        Self::from_expr(OpExpr::Adjoint(Box::new(self.expr.clone())))
    }

    /// `q_λ = q_{λ_1} ∘ ... ∘ q_{λ_l}`.
    pub fn q_partition(lambda: &Partition) -> Operator {
        let ops: Vec<Operator> = lambda.parts().iter().map(|&p| Operator::q(p as i64).unwrap()).collect();
        Operator::compose_all(&ops)
    }

    /// `q_{λ,X} = q_{λ_1,X} ∘ ... ∘ q_{λ_l,X}`.
    pub fn qx_partition(lambda: &Partition) -> Operator {
        let ops: Vec<Operator> = lambda.parts().iter().map(|&p| Operator::qx(p as i64).unwrap()).collect();
        Operator::compose_all(&ops)
    }
}

/// Direction of a base-change expansion between `q_i` and `q_{i,X}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Expansion {
    /// `q_i` as a combination of `q_{λ,X}`.
    QToQx,
    /// `q_{i,X}` as a combination of `q_λ`.
    QxToQ,
}

/// `(-1)^{i+1} Σ_{|λ|=i} c_λ U^{l(λ)-1} q_λ` with `c_λ = 1/z_λ` (`QxToQ`), or
/// the same sum over `t_λ q_{λ,X}` (`QToQx`).
pub fn base_change_expansion(i: usize, direction: Expansion) -> Result<Operator> {
    if i == 0 {
        return Err(Error::NonPositiveIndex(0));
    }
    let sign = if i % 2 == 1 { 1 } else { -1 };
    let terms = partitions_of(i)
        .into_iter()
        .map(|lambda| {
            let u = RatFunc::u().pow(lambda.len() as u32 - 1);
            let (c, f) = match direction {
                Expansion::QxToQ => (lambda.z().recip(), Operator::q_partition(&lambda)),
                Expansion::QToQx => (lambda.t().unwrap(), Operator::qx_partition(&lambda)),
            };
            (u.scale(&(c * Rational::from_integer(sign.into()))), f)
        })
        .collect();
    Operator::linear_combination(terms)
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpExpr::Identity => write!(f, "id"),
            OpExpr::Q1 => write!(f, "q1"),
            OpExpr::Qm1 => write!(f, "q-1"),
            OpExpr::Boundary => write!(f, "boundary"),
            OpExpr::Rho => write!(f, "rho"),
            OpExpr::RhoDual => write!(f, "rho_dual"),
            OpExpr::Q(i) => write!(f, "q{i}"),
            OpExpr::QTableau(n) => write!(f, "qt{n}"),
            OpExpr::QX(i) => write!(f, "qx{i}"),
            OpExpr::Adjoint(e) => write!(f, "adj({e})"),
            OpExpr::Compose(a, b) => write!(f, "{a} {b}"),
            OpExpr::Commutator(a, b) => write!(f, "[{a},{b}]"),
            OpExpr::Sum(terms) => {
                write!(f, "(")?;
                for (k, (c, e)) in terms.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({c})*{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator({})", self.expr)
    }
}
