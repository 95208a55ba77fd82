use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::{BiPoly, Matrix, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::localization::{boundary_eigenvalue, coker_over_ker, tan, KerReading};
use crate::partition::{partitions_of, skew_standard_tableaux, Partition};

use super::class::FockClass;
use super::operator::{OpExpr, Operator};

/// Largest truncation accepted by the command-line front end.
pub const MAX_WEIGHT_CAP: usize = 10;
pub const DEFAULT_MAX_WEIGHT: usize = 6;

/// Components of weight above `max_weight` are undefined.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Truncation {
    pub max_weight: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { max_weight: DEFAULT_MAX_WEIGHT }
    }
}

impl Truncation {
    pub fn new(max_weight: usize) -> Self {
        Truncation { max_weight }
    }
}

/// Matrix of an operator from weight `source` to weight `source + degree`.
/// Rows are indexed by target partitions and columns by source partitions,
/// both in reverse-lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub source: i64,
    pub target: i64,
    pub rows: Vec<Partition>,
    pub cols: Vec<Partition>,
    pub entries: Matrix,
}

fn parts_at(n: i64) -> Vec<Partition> {
    if n < 0 {
        Vec::new()
    } else {
        partitions_of(n as usize)
    }
}

impl Block {
    fn zero(source: i64, target: i64) -> Self {
        let rows = parts_at(target);
        let cols = parts_at(source);
        let entries = vec![vec![RatFunc::zero(); cols.len()]; rows.len()];
        Block { source, target, rows, cols, entries }
    }

    pub fn entry(&self, target: &Partition, source: &Partition) -> RatFunc {
        let i = self.rows.iter().position(|p| p == target);
        let j = self.cols.iter().position(|p| p == source);
        match (i, j) {
            (Some(i), Some(j)) => self.entries[i][j].clone(),
            _ => RatFunc::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(RatFunc::is_zero)
    }

    /// `self ∘ g`.
    fn after(&self, g: &Block) -> Block {
        debug_assert_eq!(self.source, g.target);
        let entries = (0..self.rows.len())
            .map(|i| {
                (0..g.cols.len())
                    .map(|j| {
                        (0..g.rows.len())
                            .filter(|&k| !self.entries[i][k].is_zero() && !g.entries[k][j].is_zero())
                            .map(|k| &self.entries[i][k] * &g.entries[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Block { source: g.source, target: self.target, rows: self.rows.clone(), cols: g.cols.clone(), entries }
    }

    fn add_scaled(&mut self, c: &RatFunc, other: &Block) {
        for (row, orow) in self.entries.iter_mut().zip(&other.entries) {
            for (x, y) in row.iter_mut().zip(orow) {
                if !y.is_zero() {
                    *x = &*x + &(c * y);
                }
            }
        }
    }
}

type Memo = RwLock<HashMap<(OpExpr, i64), Arc<Block>>>;

/// Computes and memoizes operator blocks under a truncation.
///
/// The memo is shared between threads; a block may be computed twice by
/// racing callers but only the first insertion is kept.
pub struct FockSpace {
    truncation: Truncation,
    reading: KerReading,
    memo: Memo,
    tan_memo: RwLock<HashMap<Partition, RatFunc>>,
}

impl FockSpace {
    pub fn new(truncation: Truncation) -> Self {
        Self::with_reading(truncation, KerReading::Arrow)
    }

    /// A space whose one-box coefficients use the given Ker reading.
    pub fn with_reading(truncation: Truncation, reading: KerReading) -> Self {
        FockSpace { truncation, reading, memo: RwLock::default(), tan_memo: RwLock::default() }
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn max_weight(&self) -> usize {
        self.truncation.max_weight
    }

    pub fn reading(&self) -> KerReading {
        self.reading
    }

    /// Largest source weight on which `op` can be evaluated, if any.
    pub fn max_source(&self, op: &Operator) -> Option<usize> {
        let m = self.max_weight() as i64 - op.excursion();
        (m >= 0).then_some(m as usize)
    }

    pub fn tan(&self, lambda: &Partition) -> RatFunc {
        if let Some(t) = self.tan_memo.read().unwrap().get(lambda) {
            return t.clone();
        }
        let t = RatFunc::from_poly(&tan(lambda));
        self.tan_memo.write().unwrap().entry(lambda.clone()).or_insert(t).clone()
    }

    fn check(&self, source: i64, target: i64) -> Result<()> {
        let top = source.max(target);
        if source >= 0 && target >= 0 && top > self.max_weight() as i64 {
            return Err(Error::TruncationOverflow { degree: top as usize, max_weight: self.max_weight() });
        }
        Ok(())
    }

    /// Matrix block of `op` on source weight `n`.
    pub fn block(&self, op: &Operator, n: usize) -> Result<Arc<Block>> {
        self.check(n as i64, n as i64)?;
        self.block_expr(op.expr(), n as i64)
    }

    fn block_expr(&self, e: &OpExpr, n: i64) -> Result<Arc<Block>> {
        let key = (e.clone(), n);
        if let Some(b) = self.memo.read().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(self.compute(e, n)?);
        Ok(self.memo.write().unwrap().entry(key).or_insert(b).clone())
    }

    fn compute(&self, e: &OpExpr, n: i64) -> Result<Block> {
        let d = e.degree();
        if n < 0 || n + d < 0 {
            return Ok(Block::zero(n, n + d));
        }
        match e {
            OpExpr::Identity => {
                self.check(n, n)?;
                let mut b = Block::zero(n, n);
                for i in 0..b.rows.len() {
                    b.entries[i][i] = RatFunc::one();
                }
                Ok(b)
            }
            OpExpr::Boundary => {
                self.check(n, n)?;
                let mut b = Block::zero(n, n);
                for i in 0..b.rows.len() {
                    b.entries[i][i] = RatFunc::from_poly(&boundary_eigenvalue(&b.rows[i]));
                }
                Ok(b)
            }
            OpExpr::Q1 => self.one_box(n, |_, _, _| Ok(RatFunc::one())),
            OpExpr::Rho => self.one_box(n, |_, _, c: &BiPoly| Ok(RatFunc::from_poly(&-c))),
            OpExpr::Qm1 => {
                self.check(n, n - 1)?;
                let up = self.one_box(n - 1, |_, _, _| Ok(RatFunc::one()))?;
                let mut b = Block::zero(n, n - 1);
                for (j, mu) in b.cols.clone().iter().enumerate() {
                    for (i, lambda) in b.rows.clone().iter().enumerate() {
                        let x = &up.entries[j][i];
                        if !x.is_zero() {
                            b.entries[i][j] = &(x * &self.tan(lambda)) / &self.tan(mu);
                        }
                    }
                }
                Ok(b)
            }
            OpExpr::RhoDual => {
                let b = self.compute_definition(e, n)?;
                let adj = self.block_expr(&OpExpr::Adjoint(Box::new(OpExpr::Rho)), n)?;
                assert_eq!(b, *adj, "rho_dual from the bracket formula differs from adjoint(rho) at weight {n}");
                Ok(b)
            }
            OpExpr::Q(_) | OpExpr::QX(_) => self.compute_definition(e, n),
            OpExpr::QTableau(k) => self.tableau_block(*k, n),
            OpExpr::Adjoint(f) => {
                let inner = self.block_expr(f, n + d)?;
                let mut b = Block::zero(n, n + d);
                for (i, lambda) in b.rows.clone().iter().enumerate() {
                    for (j, mu) in b.cols.clone().iter().enumerate() {
                        let x = &inner.entries[j][i];
                        if !x.is_zero() {
                            b.entries[i][j] = &(x * &self.tan(lambda)) / &self.tan(mu);
                        }
                    }
                }
                Ok(b)
            }
            OpExpr::Compose(f, g) => {
                let gb = self.block_expr(g, n)?;
                let fb = self.block_expr(f, n + g.degree())?;
                Ok(fb.after(&gb))
            }
            OpExpr::Commutator(f, g) => {
                let fg = self.block_expr(f, n + g.degree())?.after(&*self.block_expr(g, n)?);
                let gf = self.block_expr(g, n + f.degree())?.after(&*self.block_expr(f, n)?);
                let mut b = fg;
                b.add_scaled(&RatFunc::from_int(-1), &gf);
                Ok(b)
            }
            OpExpr::Sum(terms) => {
                let mut b = Block::zero(n, n + d);
                for (c, t) in terms {
                    b.add_scaled(c, &*self.block_expr(t, n)?);
                }
                Ok(b)
            }
        }
    }

    fn compute_definition(&self, e: &OpExpr, n: i64) -> Result<Block> {
        let def = e.definition().expect("operator has a defining expression");
        Ok((*self.block_expr(&def, n)?).clone())
    }

    /// Block from weight `n` to `n + 1` with entry `Coker/Ker · f(λ, μ, w(μ∖λ))`.
    fn one_box<F>(&self, n: i64, f: F) -> Result<Block>
    where
        F: Fn(&Partition, &Partition, &BiPoly) -> Result<RatFunc>,
    {
        self.check(n, n + 1)?;
        let mut b = Block::zero(n, n + 1);
        for (j, lambda) in b.cols.clone().iter().enumerate() {
            for (c, mu) in lambda.up() {
                let i = b.rows.iter().position(|p| *p == mu).expect("target partition enumerated");
                let delta = coker_over_ker(lambda, c, self.reading)?;
                b.entries[i][j] = &delta * &f(lambda, &mu, &c.weight())?;
            }
        }
        Ok(b)
    }

    fn tableau_block(&self, k: usize, n: i64) -> Result<Block> {
        let d = k as i64;
        self.check(n, n + d)?;
        let mut b = Block::zero(n, n + d);
        let rows = b.rows.clone();
        for (j, lambda) in b.cols.clone().iter().enumerate() {
            for (i, mu) in rows.iter().enumerate() {
                if !mu.contains_partition(lambda) {
                    continue;
                }
                let mut acc = RatFunc::zero();
                for t in skew_standard_tableaux(lambda, mu)? {
                    let weights: Vec<BiPoly> = t.order.iter().map(|c| c.weight()).collect();
                    let p = tableau_coefficient(&weights);
                    if p.is_zero() {
                        continue;
                    }
                    let chain = t.chain();
                    let mut prod = RatFunc::from_poly(&p);
                    for (w, c) in chain.windows(2).zip(&t.order) {
                        debug_assert!(w[1].contains_partition(&w[0]));
                        prod = &prod * &coker_over_ker(&w[0], *c, self.reading)?;
                    }
                    acc = &acc + &prod;
                }
                b.entries[i][j] = acc;
            }
        }
        Ok(b)
    }

    /// Applies `op` to every homogeneous component of `x`.
    pub fn apply(&self, op: &Operator, x: &FockClass) -> Result<FockClass> {
        let mut out = FockClass::zero();
        for n in x.degrees() {
            let b = self.block(op, n)?;
            for (j, src) in b.cols.iter().enumerate() {
                let xj = x.coord(src);
                if xj.is_zero() {
                    continue;
                }
                for (i, tgt) in b.rows.iter().enumerate() {
                    let e = &b.entries[i][j];
                    if !e.is_zero() {
                        out.add_term(tgt.clone(), &(e * &xj));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `ops[0] ∘ ... ∘ ops[last]` applied to `x`, innermost first.
    pub fn apply_all(&self, ops: &[Operator], x: &FockClass) -> Result<FockClass> {
        ops.iter().rev().try_fold(x.clone(), |acc, f| self.apply(f, &acc))
    }
}

/// `P_M` for a tableau with cell weights `m_1, ..., m_n`, by the recursion
/// `(n-1) Q_M = -m_n Q_{M^-} + m_1 Q_{M^+}`.
pub fn tableau_coefficient(m: &[BiPoly]) -> BiPoly {
    let n = m.len();
    if n <= 1 {
        return BiPoly::one();
    }
    let lower = tableau_coefficient(&m[..n - 1]);
    let upper = tableau_coefficient(&m[1..]);
    let s = &(&m[0] * &upper) - &(&m[n - 1] * &lower);
    s.scale(&Rational::new(1.into(), ((n - 1) as i64).into()))
}

/// Closed form of `P_M`:
/// `(-1)^{n-1}/(n-1)! Σ_i (-1)^{i-1} C(n-1, i-1) Π_{k≠i} m_k`.
pub fn tableau_coefficient_closed(m: &[BiPoly]) -> BiPoly {
    let n = m.len();
    if n <= 1 {
        return BiPoly::one();
    }
    let mut acc = BiPoly::zero();
    for i in 0..n {
        let prod = m.iter().enumerate().filter(|&(k, _)| k != i).fold(BiPoly::one(), |p, (_, x)| &p * x);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        acc = &acc + &prod.scale(&Rational::from_integer((sign * binomial(n - 1, i)).into()));
    }
    let fact: i64 = (1..n as i64).product();
    let lead = if n % 2 == 1 { 1 } else { -1 };
    acc.scale(&Rational::new(lead.into(), fact.into()))
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn class(terms: &[(&str, &str)]) -> FockClass {
        FockClass::from_coords(terms.iter().map(|(l, c)| (p(l), r(c))))
    }

    #[test]
    fn q1_on_small_classes() {
        let f = FockSpace::new(Truncation::default());
        let q1 = Operator::q1();
        assert!(f.apply(&q1, &FockClass::zero()).unwrap().is_zero());
        assert_eq!(f.apply(&q1, &FockClass::vacuum()).unwrap(), FockClass::fix(p("[1]")));
        assert_eq!(f.apply(&q1, &FockClass::fix(p("[1]"))).unwrap(), class(&[("[1,1]", "2"), ("[2]", "2")]));
    }

    #[test]
    fn rho_and_boundary() {
        let f = FockSpace::new(Truncation::default());
        assert!(f.apply(&Operator::rho(), &FockClass::vacuum()).unwrap().is_zero());
        assert_eq!(
            f.apply(&Operator::rho(), &FockClass::fix(p("[1]"))).unwrap(),
            class(&[("[1,1]", "-2*U"), ("[2]", "-2*V")])
        );
        assert_eq!(f.apply(&Operator::boundary(), &FockClass::fix(p("[2]"))).unwrap(), class(&[("[2]", "-2*V")]));
    }

    #[test]
    fn nakajima_on_vacuum() {
        let f = FockSpace::new(Truncation::default());
        let vac = FockClass::vacuum();
        assert_eq!(f.apply(&Operator::q(2).unwrap(), &vac).unwrap(), class(&[("[1,1]", "-2*U"), ("[2]", "-2*V")]));
        assert_eq!(
            f.apply(&Operator::q(3).unwrap(), &vac).unwrap(),
            class(&[("[3]", "6*V^2"), ("[2,1]", "3*U*V"), ("[1,1,1]", "6*U^2")])
        );
        assert_eq!(
            f.apply(&Operator::q_tableau(3).unwrap(), &vac).unwrap(),
            f.apply(&Operator::q(3).unwrap(), &vac).unwrap()
        );
    }

    #[test]
    fn overflow_and_negative_targets() {
        let f = FockSpace::new(Truncation::new(2));
        let x = FockClass::fix(p("[2]"));
        assert_eq!(f.apply(&Operator::q1(), &x), Err(Error::TruncationOverflow { degree: 3, max_weight: 2 }));
        assert!(f.apply(&Operator::qm1(), &FockClass::vacuum()).unwrap().is_zero());
        assert!(f.apply(&Operator::q(-2).unwrap(), &FockClass::fix(p("[1]"))).unwrap().is_zero());
    }

    #[test]
    fn tableau_coefficient_forms_agree() {
        let w = |a: i64, b: i64| BiPoly::linear(a, b);
        let m = [w(0, 0), w(0, 1), w(1, 0), w(1, 1)];
        assert_eq!(tableau_coefficient(&m), tableau_coefficient_closed(&m));
        assert_eq!(tableau_coefficient(&m[..2]), -w(0, 1));
    }
}
