//! Registry of operator identities, each checked exactly over a finite window.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{BiPoly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::fock::{
    base_change_expansion, basis_matrix, classical_projection, es_class, nak_class, tableau_coefficient,
    tableau_coefficient_closed, Basis, Block, Expansion, FockClass, FockSpace, Operator,
};
use crate::localization::{bott_closure, boundary_formula, chern_restriction};
use crate::partition::{partitions_of, skew_standard_tableaux, Partition};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    /// Source partition.
    pub lambda: String,
    /// Target partition.
    pub mu: String,
    pub expected: String,
    pub got: String,
    /// Which sub-check failed.
    pub context: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub status: Status,
    pub window: Value,
    pub comparisons: usize,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

enum Halt {
    Mismatch,
    Failed(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Failed(e)
    }
}

type Step = std::result::Result<(), Halt>;

/// Accumulates comparisons and stops at the first mismatch.
struct Checker {
    comparisons: usize,
    counterexample: Option<Counterexample>,
    window: BTreeMap<String, Value>,
    note: Option<String>,
}

impl Checker {
    fn new() -> Self {
        Checker { comparisons: 0, counterexample: None, window: BTreeMap::new(), note: None }
    }

    fn window(&mut self, key: &str, v: Value) {
        self.window.insert(key.to_string(), v);
    }

    fn eq<T: PartialEq + ToString>(&mut self, ctx: &str, lambda: &str, mu: &str, expected: &T, got: &T) -> Step {
        self.comparisons += 1;
        if expected == got {
            return Ok(());
        }
        self.counterexample = Some(Counterexample {
            lambda: lambda.to_string(),
            mu: mu.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
            context: ctx.to_string(),
        });
        Err(Halt::Mismatch)
    }

    fn blocks(&mut self, ctx: &str, expected: &Block, got: &Block) -> Step {
        assert_eq!((&expected.rows, &expected.cols), (&got.rows, &got.cols), "block shapes differ in {ctx}");
        for (i, mu) in got.rows.iter().enumerate() {
            for (j, lambda) in got.cols.iter().enumerate() {
                self.eq(ctx, &lambda.to_string(), &mu.to_string(), &expected.entries[i][j], &got.entries[i][j])?;
            }
        }
        Ok(())
    }

    /// Compares two operators on every source weight in `0..=max_source`.
    fn operators(&mut self, f: &FockSpace, ctx: &str, expected: &Operator, got: &Operator, max_source: i64) -> Step {
        for n in 0..=max_source {
            let n = n as usize;
            let e = f.block(expected, n)?;
            let g = f.block(got, n)?;
            self.blocks(&format!("{ctx} at weight {n}"), &e, &g)?;
        }
        Ok(())
    }

    /// Compares `got` with `c · Id` on every source weight in `0..=max_source`.
    fn scalar(
        &mut self,
        f: &FockSpace,
        ctx: &str,
        c: &dyn Fn(usize) -> RatFunc,
        got: &Operator,
        max_source: i64,
    ) -> Step {
        for n in 0..=max_source {
            let n = n as usize;
            let g = f.block(got, n)?;
            let cn = c(n);
            for (i, mu) in g.rows.iter().enumerate() {
                for (j, lambda) in g.cols.iter().enumerate() {
                    let e = if i == j { cn.clone() } else { RatFunc::zero() };
                    self.eq(
                        &format!("{ctx} at weight {n}"),
                        &lambda.to_string(),
                        &mu.to_string(),
                        &e,
                        &g.entries[i][j],
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// Largest source weight `n` with `n + excursion(op) <= min(window, T)`.
fn source_limit(f: &FockSpace, op: &Operator, window: usize) -> i64 {
    window.min(f.max_weight()) as i64 - op.excursion()
}

fn q(i: i64) -> Operator {
    Operator::q(i).expect("nonzero index")
}

fn int(n: i64) -> RatFunc {
    RatFunc::from_int(n)
}

fn inv_uv() -> RatFunc {
    "1/(U*V)".parse().unwrap()
}

type CheckFn = fn(&FockSpace, &mut Checker, &Params) -> Step;

/// Optional overrides of the default windows. `weight` caps every weight
/// window, `index` caps operator indices.
#[derive(Clone, Copy, Debug, Default)]
pub struct Params {
    pub weight: Option<usize>,
    pub index: Option<i64>,
}

impl Params {
    fn weight(&self, default: usize) -> usize {
        self.weight.map_or(default, |w| w.min(default))
    }

    fn index(&self, default: i64) -> i64 {
        self.index.map_or(default, |i| i.min(default))
    }
}

const REGISTRY: &[(&str, CheckFn)] = &[
    ("adjoint-duality", adjoint_duality),
    ("basis-integrality", basis_integrality),
    ("bott-closure", bott_closure_check),
    ("boundary-chern", boundary_chern),
    ("derivative-rule", derivative_rule),
    ("nak-fix-golden", nak_fix_golden),
    ("nak2es-classical", nak2es_classical),
    ("positive-commute", positive_commute),
    ("q1-commutators", q1_commutators),
    ("qiqj", qiqj),
    ("qn-tableau", qn_tableau),
    ("qx-closed", qx_closed),
    ("rho-bracket", rho_bracket),
    ("rho-qi", rho_qi),
    ("rho-rhodual", rho_rhodual),
    ("small-diagonal", small_diagonal),
];

/// Registered identity ids in report order.
pub fn identity_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|(id, _)| *id).collect()
}

pub fn check_identity(space: &FockSpace, id: &str) -> Result<IdentityReport> {
    check_identity_with(space, id, &Params::default())
}

pub fn check_identity_with(space: &FockSpace, id: &str, params: &Params) -> Result<IdentityReport> {
    let Some((id, run)) = REGISTRY.iter().find(|(k, _)| *k == id) else {
        return Err(Error::UnknownIdentity(id.to_string()));
    };
    let mut ck = Checker::new();
    ck.window("max_weight", json!(space.max_weight()));
    let status = match run(space, &mut ck, params) {
        Ok(()) => Status::Pass,
        Err(Halt::Mismatch) => Status::Fail,
        Err(Halt::Failed(e)) => return Err(e),
    };
    Ok(IdentityReport {
        id: id.to_string(),
        status,
        window: Value::Object(ck.window.into_iter().collect()),
        comparisons: ck.comparisons,
        counterexample: ck.counterexample,
        note: ck.note,
    })
}

/// Every registered identity at its default window, ordered by id.
pub fn run_all(space: &FockSpace) -> Result<Vec<IdentityReport>> {
    REGISTRY.par_iter().map(|(id, _)| check_identity(space, id)).collect()
}

fn adjoint_duality(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6);
    let wq = p.weight(5);
    let imax = p.index(3);
    ck.window("weight", json!(w));
    ck.window("weight_qi", json!(wq));
    ck.window("index", json!([-imax, imax]));
    let pairs = [
        ("adjoint(q1) = q-1", Operator::q1().adjoint(), Operator::qm1()),
        ("adjoint(boundary) = boundary", Operator::boundary().adjoint(), Operator::boundary()),
        ("adjoint(adjoint(rho)) = rho", Operator::rho().adjoint().adjoint(), Operator::rho()),
        ("rho_dual = adjoint(rho)", Operator::rho().adjoint(), Operator::rho_dual()),
    ];
    for (ctx, lhs, rhs) in &pairs {
        let lim = source_limit(f, lhs, w).min(source_limit(f, rhs, w));
        ck.operators(f, ctx, rhs, lhs, lim)?;
    }
    for i in (-imax..=imax).filter(|&i| i != 0) {
        let lhs = q(i).adjoint();
        let rhs = q(-i);
        let lim = source_limit(f, &lhs, wq).min(source_limit(f, &rhs, wq));
        ck.operators(f, &format!("adjoint(q{i}) = q{}", -i), &rhs, &lhs, lim)?;
    }
    Ok(())
}

fn basis_integrality(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6).min(f.max_weight());
    ck.window("weight", json!(w));
    for n in 0..=w {
        for lambda in partitions_of(n) {
            for (name, c) in [("nak", nak_class(f, &lambda)), ("es", es_class(f, &lambda))] {
                let c = match c {
                    Err(Error::BasisNotIntegral(m)) => {
                        return ck.eq(name, &lambda.to_string(), "", &"polynomial".to_string(), &m);
                    }
                    other => other?,
                };
                ck.eq(name, &lambda.to_string(), "", &true, &c.is_integral())?;
            }
        }
        let m = basis_matrix(f, n, Basis::Nak, Basis::Es)?;
        for (i, mu) in m.order.iter().enumerate() {
            for (j, lambda) in m.order.iter().enumerate() {
                let x = &m.entries[i][j];
                ck.eq("nak->es entry is polynomial", &lambda.to_string(), &mu.to_string(), &true, &x.is_polynomial())?;
            }
        }
    }
    Ok(())
}

fn bott_closure_check(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6).min(f.max_weight());
    ck.window("weight", json!(w));
    ck.window("ker_reading", json!(format!("{:?}", f.reading())));
    for n in 0..=w {
        for lambda in partitions_of(n) {
            let got = bott_closure(&lambda, f.reading())?;
            ck.eq("Bott closure", &lambda.to_string(), &lambda.to_string(), &inv_uv(), &got)?;
        }
    }
    Ok(())
}

fn boundary_chern(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(12);
    ck.window("weight", json!(w));
    ck.window("operator_weight", json!(w.min(f.max_weight())));
    let two = Rational::from_integer((-2).into());
    for n in 0..=w {
        for lambda in partitions_of(n) {
            let expected = chern_restriction(&lambda, 1).scale(&two);
            let l = lambda.to_string();
            ck.eq("eigenvalue formula = -2 e1", &l, &l, &expected, &boundary_formula(&lambda))?;
        }
    }
    // The operator itself: -2 times multiplication by c1.
    for n in 0..=w.min(f.max_weight()) {
        let b = f.block(&Operator::boundary(), n)?;
        for (i, mu) in b.rows.iter().enumerate() {
            for (j, lambda) in b.cols.iter().enumerate() {
                let e = if i == j {
                    RatFunc::from_poly(&chern_restriction(lambda, 1).scale(&two))
                } else {
                    RatFunc::zero()
                };
                ck.eq("boundary block", &lambda.to_string(), &mu.to_string(), &e, &b.entries[i][j])?;
            }
        }
    }
    Ok(())
}

fn derivative_rule(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6);
    ck.window("weight", json!(w));
    ck.window("operators", json!(["q1", "q2", "rho"]));
    let e1 = |l: &Partition| RatFunc::from_poly(&chern_restriction(l, 1));
    for op in [Operator::q1(), q(2), Operator::rho()] {
        let br = Operator::boundary().commutator(&op);
        for n in 0..=source_limit(f, &br, w) {
            let n = n as usize;
            let fb = f.block(&op, n)?;
            let bb = f.block(&br, n)?;
            for (i, mu) in fb.rows.iter().enumerate() {
                for (j, lambda) in fb.cols.iter().enumerate() {
                    let added = &e1(mu) - &e1(lambda);
                    let expected = &(&int(-2) * &fb.entries[i][j]) * &added;
                    let ctx = format!("[boundary,{op}] at weight {n}");
                    ck.eq(&ctx, &lambda.to_string(), &mu.to_string(), &expected, &bb.entries[i][j])?;
                }
            }
        }
    }
    Ok(())
}

/// nak -> fix columns for n = 2, 3 as displayed in the worked example.
fn golden_nak_fix() -> Vec<(&'static str, Vec<(&'static str, &'static str)>)> {
    vec![
        ("[]", vec![("[]", "1")]),
        ("[1,1]", vec![("[1,1]", "2"), ("[2]", "2")]),
        ("[2]", vec![("[1,1]", "-2*U"), ("[2]", "-2*V")]),
        ("[3]", vec![("[3]", "6*V^2"), ("[2,1]", "3*U*V"), ("[1,1,1]", "6*U^2")]),
        ("[2,1]", vec![("[3]", "-6*V"), ("[2,1]", "-2*(U+V)"), ("[1,1,1]", "-6*U")]),
        ("[1,1,1]", vec![("[3]", "6"), ("[2,1]", "6"), ("[1,1,1]", "6")]),
    ]
}

fn nak_fix_golden(f: &FockSpace, ck: &mut Checker, _: &Params) -> Step {
    let degrees: Vec<usize> = [0, 2, 3].into_iter().filter(|&n| n <= f.max_weight()).collect();
    ck.window("degrees", json!(degrees));
    for n in degrees {
        let m = basis_matrix(f, n, Basis::Nak, Basis::Fix)?;
        for (src, col) in golden_nak_fix() {
            let lambda: Partition = src.parse()?;
            if lambda.weight() != n {
                continue;
            }
            for mu in &m.order {
                let expected = col
                    .iter()
                    .find(|(t, _)| t.parse::<Partition>().unwrap() == *mu)
                    .map_or(RatFunc::zero(), |(_, c)| c.parse().unwrap());
                let got = m.entry(mu, &lambda).unwrap();
                ck.eq("nak->fix", src, &mu.to_string(), &expected, got)?;
            }
        }
    }
    Ok(())
}

fn nak2es_classical(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6).min(f.max_weight());
    ck.window("weight", json!(w));
    for n in 0..=w {
        let m = basis_matrix(f, n, Basis::Nak, Basis::Es)?;
        let cla = match classical_projection(&m.entries) {
            Ok(c) => c,
            Err(Error::BasisNotIntegral(msg)) => {
                return ck.eq("nak->es integrality", "", "", &"polynomial".to_string(), &msg);
            }
            Err(e) => return Err(e.into()),
        };
        for (i, mu) in m.order.iter().enumerate() {
            for (j, lambda) in m.order.iter().enumerate() {
                let expected = if i == j {
                    let sign = if (lambda.weight() + lambda.len()) % 2 == 0 { 1 } else { -1 };
                    let prod: i64 = lambda.parts().iter().map(|&x| x as i64).product();
                    Rational::from_integer((sign * prod).into())
                } else {
                    Rational::from_integer(0.into())
                };
                ck.eq("classical nak->es", &lambda.to_string(), &mu.to_string(), &expected, &cla[i][j])?;
            }
        }
    }
    Ok(())
}

fn positive_commute(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6);
    let imax = p.index(4);
    ck.window("weight", json!(w));
    ck.window("index", json!(imax));
    let zero = |_: usize| RatFunc::zero();
    for i in 1..=imax {
        for j in 1..=imax {
            let br = q(i).commutator(&q(j));
            ck.scalar(f, &format!("[q{i},q{j}]"), &zero, &br, source_limit(f, &br, w))?;
        }
    }
    Ok(())
}

fn q1_commutators(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6);
    let imax = p.index(4);
    ck.window("weight", json!(w));
    ck.window("index", json!([-imax, imax]));
    let br = Operator::qm1().commutator(&Operator::q1());
    ck.scalar(f, "[q-1,q1]", &|_| inv_uv(), &br, source_limit(f, &br, w))?;
    for i in (-imax..=imax).filter(|&i| i != 0 && i != -1) {
        let br = q(i).commutator(&Operator::q1());
        ck.scalar(f, &format!("[q{i},q1]"), &|_| RatFunc::zero(), &br, source_limit(f, &br, w))?;
    }
    Ok(())
}

fn qiqj(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6);
    let imax = p.index(4);
    ck.window("weight", json!(w));
    ck.window("index", json!(imax));
    ck.window("sources", json!("|λ| <= weight - max(i,j)"));
    for i in 1..=imax {
        for j in 1..=imax {
            let br = q(i).commutator(&q(-j));
            let c = if i == j {
                let sign = if i % 2 == 1 { 1 } else { -1 };
                &int(sign * i) * &inv_uv()
            } else {
                RatFunc::zero()
            };
            let lim = (w as i64 - i.max(j)).min(source_limit(f, &br, w));
            ck.scalar(f, &format!("[q{i},q-{j}]"), &|_| c.clone(), &br, lim)?;
        }
    }
    for i in 1..=imax {
        for j in 1..=imax {
            let br = q(i).commutator(&q(j));
            ck.scalar(f, &format!("[q{i},q{j}]"), &|_| RatFunc::zero(), &br, source_limit(f, &br, w))?;
        }
    }
    Ok(())
}

fn qn_tableau(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let nmax = p.index(4) as usize;
    let smax = p.weight(3);
    let straight = p.weight(5);
    ck.window("index", json!(nmax));
    ck.window("source_weight", json!(smax));
    ck.window("closed_form_shapes", json!(format!("skew shapes used above, straight shapes up to {straight}")));
    for n in 1..=nmax {
        let qt = Operator::q_tableau(n).unwrap();
        let qn = q(n as i64);
        let lim = (smax as i64).min(source_limit(f, &qt, f.max_weight()));
        ck.operators(f, &format!("qt{n} = q{n}"), &qn, &qt, lim)?;
        for s in (0..=lim).map(|s| s as usize) {
            for lambda in partitions_of(s) {
                for mu in partitions_of(s + n) {
                    if !mu.contains_partition(&lambda) {
                        continue;
                    }
                    check_closed_form(ck, &lambda, &mu)?;
                }
            }
        }
    }
    for n in 1..=straight {
        for mu in partitions_of(n) {
            check_closed_form(ck, &Partition::empty(), &mu)?;
        }
    }
    Ok(())
}

fn check_closed_form(ck: &mut Checker, lambda: &Partition, mu: &Partition) -> Step {
    for t in skew_standard_tableaux(lambda, mu)? {
        let m: Vec<BiPoly> = t.order.iter().map(|c| c.weight()).collect();
        let ctx = format!("P_M closed form, order {:?}", t.order.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        ck.eq(&ctx, &lambda.to_string(), &mu.to_string(), &tableau_coefficient(&m), &tableau_coefficient_closed(&m))?;
    }
    Ok(())
}

fn qx_closed(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(7);
    let imax = p.index(5);
    let wc = p.weight(6);
    let jmax = p.index(3);
    ck.window("weight", json!(w.min(f.max_weight())));
    ck.window("index", json!(imax));
    ck.window("commute_weight", json!(wc.min(f.max_weight())));
    ck.window("commute_index", json!(jmax));
    for i in 1..=imax {
        let qx = Operator::qx(i).unwrap();
        let a = base_change_expansion(i as usize, Expansion::QxToQ)?;
        ck.operators(f, &format!("qx{i} = Σ q_λ/z_λ"), &qx, &a, source_limit(f, &a, w))?;
        let b = base_change_expansion(i as usize, Expansion::QToQx)?;
        ck.operators(f, &format!("q{i} = Σ t_λ q_λ,X"), &q(i), &b, source_limit(f, &b, w))?;
    }
    for i in 1..=jmax {
        for j in 1..=jmax {
            let br = Operator::qx(i).unwrap().commutator(&Operator::qx(j).unwrap());
            ck.scalar(f, &format!("[qx{i},qx{j}]"), &|_| RatFunc::zero(), &br, source_limit(f, &br, wc))?;
        }
    }
    Ok(())
}

fn rho_bracket(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(7);
    ck.window("weight", json!(w.min(f.max_weight())));
    let lhs = Operator::rho().scale(&int(2));
    let rhs = Operator::boundary().commutator(&Operator::q1());
    ck.operators(f, "2 rho = [boundary, q1]", &lhs, &rhs, source_limit(f, &rhs, w))
}

fn rho_qi(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6);
    let imax = p.index(4);
    ck.window("weight", json!(w));
    ck.window("index", json!([-imax, imax]));
    for i in (-imax..=imax).filter(|&i| i != 0) {
        let br = Operator::rho().commutator(&q(i));
        let ctx = format!("[rho,q{i}] = {}q{}", i.abs(), i + 1);
        let lim = source_limit(f, &br, w);
        if i == -1 {
            ck.scalar(f, &ctx, &|_| RatFunc::zero(), &br, lim)?;
        } else {
            let rhs = q(i + 1).scale(&int(i.abs()));
            ck.operators(f, &ctx, &rhs, &br, lim.min(source_limit(f, &rhs, w)))?;
        }
    }
    Ok(())
}

fn rho_rhodual(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let br = Operator::rho().commutator(&Operator::rho_dual());
    let lim = (p.weight(6) as i64).min(f.max_weight() as i64 - br.excursion());
    ck.window("source_weight", json!(lim.max(0)));
    ck.scalar(f, "[rho,rho_dual]", &|n| int(2 * n as i64), &br, lim)?;
    ck.note = Some("realized sign: [rho, rho_dual] = +2n Id".into());
    Ok(())
}

fn small_diagonal(f: &FockSpace, ck: &mut Checker, p: &Params) -> Step {
    let w = p.weight(6).min(f.max_weight());
    ck.window("weight", json!(w));
    for n in 1..=w {
        let c = f.apply(&q(n as i64), &FockClass::vacuum())?;
        let sign = if n % 2 == 1 { 1 } else { -1 };
        for mu in partitions_of(n) {
            let e = RatFunc::from_poly(&chern_restriction(&mu, n - 1))
                .scale(&Rational::from_integer((sign * n as i64).into()));
            ck.eq(&format!("q{n} vac"), "[]", &mu.to_string(), &e, &c.coord(&mu))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Truncation;

    #[test]
    fn registry_is_sorted() {
        let ids = identity_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn unknown_id() {
        let f = FockSpace::new(Truncation::new(2));
        assert_eq!(check_identity(&f, "bogus-id"), Err(Error::UnknownIdentity("bogus-id".into())));
    }
}
