//! Partitions, their diagrams, and skew standard tableaux.
//!
//! A cell `(a, b)` lies in the diagram of `λ` iff `a < l(λ)` and `b < λ[a]`
//! (zero-based parts): parts stack along `a`, each part extends along `b`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{BiPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cell {
    pub a: usize,
    pub b: usize,
}

impl Cell {
    pub fn new(a: usize, b: usize) -> Self {
        Cell { a, b }
    }

    /// The linear form `a*U + b*V`.
    pub fn weight(&self) -> BiPoly {
        BiPoly::linear(self.a as i64, self.b as i64)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Weakly decreasing list of positive parts.
///
/// Ordered by weight, then reverse-lexicographically, so that
/// `[3] < [2,1] < [1,1,1]`. Sorted collections of partitions follow the
/// serialization order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts into decreasing order and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Zero-based part `λ[a]`, zero past the end.
    pub fn part(&self, a: usize) -> usize {
        self.parts.get(a).copied().unwrap_or(0)
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.b < self.part(c.a)
    }

    pub fn contains_partition(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && inner.parts.iter().zip(&self.parts).all(|(x, y)| x <= y)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition { parts: (1..=first).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect() }
    }

    /// Cells in `(a, b)` ascending order.
    pub fn cells(&self) -> Vec<Cell> {
        self.parts.iter().enumerate().flat_map(|(a, &p)| (0..p).map(move |b| Cell::new(a, b))).collect()
    }

    pub fn cells_and_weight(&self) -> Vec<(Cell, BiPoly)> {
        self.cells().into_iter().map(|c| (c, c.weight())).collect()
    }

    /// Addable cells, `a` ascending.
    pub fn addable(&self) -> Vec<Cell> {
        (0..=self.len())
            .filter(|&a| a == 0 || self.part(a - 1) > self.part(a))
            .map(|a| Cell::new(a, self.part(a)))
            .collect()
    }

    /// Removable cells, `a` ascending.
    pub fn removable(&self) -> Vec<Cell> {
        (0..self.len()).filter(|&a| self.part(a) > self.part(a + 1)).map(|a| Cell::new(a, self.part(a) - 1)).collect()
    }

    pub fn border_cells(&self) -> (Vec<Cell>, Vec<Cell>) {
        (self.addable(), self.removable())
    }

    pub fn add_cell(&self, c: Cell) -> Result<Partition> {
        if !self.addable().contains(&c) {
            return Err(Error::NotAddable { partition: self.to_string(), cell: c.to_string() });
        }
        let mut parts = self.parts.clone();
        if c.a == parts.len() {
            parts.push(1);
        } else {
            parts[c.a] += 1;
        }
        Ok(Partition { parts })
    }

    pub fn remove_cell(&self, c: Cell) -> Result<Partition> {
        if !self.removable().contains(&c) {
            return Err(Error::InvalidPartition(format!("cell {c} is not removable from {self}")));
        }
        let mut parts = self.parts.clone();
        parts[c.a] -= 1;
        if parts[c.a] == 0 {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Partitions obtained by adding one cell, with the added cell.
    pub fn up(&self) -> Vec<(Cell, Partition)> {
        self.addable().into_iter().map(|c| (c, self.add_cell(c).unwrap())).collect()
    }

    /// Partitions obtained by removing one cell, with the removed cell.
    pub fn down(&self) -> Vec<(Cell, Partition)> {
        self.removable().into_iter().map(|c| (c, self.remove_cell(c).unwrap())).collect()
    }

    /// The single cell of `outer \ self`, if `outer` is `self` plus one cell.
    pub fn added_cell(&self, outer: &Partition) -> Option<Cell> {
        if outer.weight() != self.weight() + 1 || !outer.contains_partition(self) {
            return None;
        }
        (0..outer.len()).find(|&a| outer.part(a) != self.part(a)).map(|a| Cell::new(a, self.part(a)))
    }

    /// Multiplicity of each part value.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z_λ = Π λ_i · Π_j α_j!`.
    pub fn z(&self) -> Rational {
        let prod: BigInt = self.parts.iter().map(|&p| BigInt::from(p)).product();
        Rational::from_integer(prod) * self.u()
    }

    /// `u_λ = Π_j α_j!`.
    pub fn u(&self) -> Rational {
        Rational::from_integer(self.multiplicities().values().map(|&a| factorial(a)).product())
    }

    /// `t_λ`: sum over distinct part values `j` of
    /// `j / (α_j - 1)! · (l - 1)! / Π_{i≠j} α_i!`. Undefined for the empty partition.
    pub fn t(&self) -> Option<Rational> {
        if self.is_empty() {
            return None;
        }
        let mult = self.multiplicities();
        let lf = factorial(self.len() - 1);
        let total = mult
            .iter()
            .map(|(&j, &aj)| {
                let others: BigInt = mult.iter().filter(|(&i, _)| i != j).map(|(_, &ai)| factorial(ai)).product();
                Rational::new(BigInt::from(j) * &lf, factorial(aj - 1) * others)
            })
            .sum();
        Some(total)
    }

    /// `(z, u, t)`; `t` is `None` for the empty partition.
    pub fn symmetry_constants(&self) -> (Rational, Rational, Option<Rational>) {
        (self.z(), self.u(), self.t())
    }

    /// Removes one part equal to `j`.
    pub fn without_part(&self, j: usize) -> Option<Partition> {
        let i = self.parts.iter().position(|&p| p == j)?;
        let mut parts = self.parts.clone();
        parts.remove(i);
        Some(Partition { parts })
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[3,1]`, `[]`, and the bare list `3,1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')).unwrap_or(t).trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))?;
        Partition::new(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A standard filling of `outer \ inner`: the cells in the order they are added.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewStandardTableau {
    pub inner: Partition,
    pub outer: Partition,
    pub order: Vec<Cell>,
}

impl SkewStandardTableau {
    /// The chain `inner = λ_0 ⊂ λ_1 ⊂ ... ⊂ λ_n = outer`.
    pub fn chain(&self) -> Vec<Partition> {
        let mut out = vec![self.inner.clone()];
        for &c in &self.order {
            let next = out.last().unwrap().add_cell(c).expect("tableau prefix is a partition");
            out.push(next);
        }
        out
    }
}

pub fn skew_standard_tableaux(inner: &Partition, outer: &Partition) -> Result<Vec<SkewStandardTableau>> {
    if !outer.contains_partition(inner) {
        return Err(Error::NotContained { inner: inner.to_string(), outer: outer.to_string() });
    }
    fn rec(cur: &Partition, outer: &Partition, order: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
        if cur == outer {
            out.push(order.clone());
            return;
        }
        for (c, next) in cur.up() {
            if outer.contains(c) {
                order.push(c);
                rec(&next, outer, order, out);
                order.pop();
            }
        }
    }
    let mut orders = Vec::new();
    rec(inner, outer, &mut Vec::new(), &mut orders);
    Ok(orders
        .into_iter()
        .map(|order| SkewStandardTableau { inner: inner.clone(), outer: outer.clone(), order })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn cells_follow_staircase() {
        assert_eq!(
            p("[2]").cells_and_weight(),
            vec![(Cell::new(0, 0), BiPoly::zero()), (Cell::new(0, 1), BiPoly::v())]
        );
        assert_eq!(
            p("[1,1]").cells_and_weight(),
            vec![(Cell::new(0, 0), BiPoly::zero()), (Cell::new(1, 0), BiPoly::u())]
        );
    }

    #[test]
    fn border() {
        let c = |a, b| Cell::new(a, b);
        assert_eq!(Partition::empty().border_cells(), (vec![c(0, 0)], vec![]));
        assert_eq!(p("[1]").border_cells(), (vec![c(0, 1), c(1, 0)], vec![c(0, 0)]));
        assert_eq!(p("[2,1]").border_cells(), (vec![c(0, 2), c(1, 1), c(2, 0)], vec![c(0, 1), c(1, 0)]));
    }

    #[test]
    fn ordering_is_reverse_lex() {
        assert_eq!(partitions_of(3), vec![p("[3]"), p("[2,1]"), p("[1,1,1]")]);
        assert!(p("[2]") < p("[1,1]"));
        assert!(p("[1,1]") < p("[3]"));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("[3,1]").to_string(), "[3,1]");
        assert_eq!(p("[]"), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[1,0]".parse::<Partition>().is_err());
    }

    #[test]
    fn constants() {
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(p("[1,1]").z(), q(2, 1));
        assert_eq!(p("[1,1]").u(), q(2, 1));
        assert_eq!(p("[1,1]").t(), Some(q(1, 1)));
        assert_eq!(p("[4]").t(), Some(q(4, 1)));
        assert_eq!(p("[2,1,1]").z(), q(4, 1));
        assert_eq!(Partition::empty().t(), None);
    }
}
