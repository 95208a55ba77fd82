//! JSON, CSV and LaTeX emitters. Rows and columns always follow partition order.

use std::fmt::Write;

use clap::ValueEnum;
use hilbfock::algebra::{BiPoly, Monomial};
use hilbfock::fock::Block;
use hilbfock::identities::IdentityReport;
use hilbfock::{FockClass, Partition, RatFunc, Rational};
use num_integer::Integer;
use num_traits::{One, Signed};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

pub struct Table<'a> {
    pub title: String,
    pub row_label: &'a str,
    pub col_label: &'a str,
    pub rows: &'a [Partition],
    pub cols: &'a [Partition],
    pub cells: Vec<Vec<Cell>>,
}

/// A matrix entry: either a rational function or a plain rational.
pub enum Cell {
    Func(RatFunc),
    Num(Rational),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Func(x) => x.to_string(),
            Cell::Num(q) => q.to_string(),
        }
    }

    fn latex(&self) -> String {
        match self {
            Cell::Func(x) => ratfunc_latex(x),
            Cell::Num(q) => rational_latex(q),
        }
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn cells_json(cells: &[Vec<Cell>]) -> Value {
    Value::Array(cells.iter().map(|row| Value::Array(row.iter().map(|c| json!(c.text())).collect())).collect())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row<I: IntoIterator<Item = String>>(out: &mut String, fields: I) {
    let line: Vec<String> = fields.into_iter().map(|f| csv_field(&f)).collect();
    out.push_str(&line.join(","));
    out.push('\n');
}

pub fn table_csv(out: &mut String, t: &Table) {
    csv_row(
        out,
        std::iter::once(format!("{}\\{}", t.row_label, t.col_label)).chain(t.cols.iter().map(|c| c.to_string())),
    );
    for (mu, row) in t.rows.iter().zip(&t.cells) {
        csv_row(out, std::iter::once(mu.to_string()).chain(row.iter().map(Cell::text)));
    }
}

fn partition_latex(p: &Partition) -> String {
    if p.is_empty() {
        return "\\emptyset".into();
    }
    let parts: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn table_latex(out: &mut String, t: &Table) {
    let _ = writeln!(out, "% {}", t.title);
    let _ = writeln!(out, "\\begin{{array}}{{c|{}}}", "c".repeat(t.cols.len()));
    let head: Vec<String> =
        t.cols.iter().map(|c| format!("\\mathrm{{{}}}{}", t.col_label, partition_latex(c))).collect();
    let _ = writeln!(out, " & {} \\\\", head.join(" & "));
    out.push_str("\\hline\n");
    for (mu, row) in t.rows.iter().zip(&t.cells) {
        let cells: Vec<String> = row.iter().map(Cell::latex).collect();
        let _ = writeln!(out, "\\mathrm{{{}}}{} & {} \\\\", t.row_label, partition_latex(mu), cells.join(" & "));
    }
    out.push_str("\\end{array}\n");
}

fn rational_latex(q: &Rational) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        let sign = if q.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", q.numer().abs(), q.denom())
    }
}

fn monomial_latex(m: &Monomial) -> String {
    let mut s = String::new();
    for (var, e) in [("U", m.u), ("V", m.v)] {
        match e {
            0 => {}
            1 => s.push_str(var),
            _ => {
                let _ = write!(s, "{var}^{{{e}}}");
            }
        }
    }
    s
}

/// Terms in graded order, highest degree first, `U` before `V`.
fn poly_latex(p: &BiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<&(Monomial, Rational)> = p.terms().iter().collect();
    terms.sort_by_key(|(m, _)| std::cmp::Reverse((m.total_degree(), m.u)));
    let mut s = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let mono = monomial_latex(m);
        let mag = c.abs();
        let coeff = if mag.is_one() && !mono.is_empty() { String::new() } else { rational_latex(&mag) };
        match (i, c.is_negative()) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&coeff);
        s.push_str(&mono);
    }
    s
}

/// `\frac{..}{..}` only when the denominator is nonconstant.
pub fn ratfunc_latex(x: &RatFunc) -> String {
    let num = x.numer();
    let den = x.denom();
    if den.is_constant() {
        return poly_latex(&num.scale(&den.constant_term().recip()));
    }
    let lcm = num.terms().iter().fold(num_bigint::BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let k = Rational::from_integer(lcm);
    format!("\\frac{{{}}}{{{}}}", poly_latex(&num.scale(&k)), poly_latex(&den.scale(&k)))
}

pub fn block_json(b: &Block) -> Value {
    json!({
        "source": b.source,
        "target": b.target,
        "rows": b.rows,
        "cols": b.cols,
        "entries": cells_json(&func_cells(b)),
    })
}

pub fn func_cells(b: &Block) -> Vec<Vec<Cell>> {
    b.entries.iter().map(|row| row.iter().cloned().map(Cell::Func).collect()).collect()
}

pub fn class_json(expr: &str, c: &FockClass) -> Value {
    let coords: Vec<Value> = c.coords().map(|(p, x)| json!({ "partition": p, "coefficient": x })).collect();
    json!({ "expr": expr, "coords": coords })
}

pub fn class_csv(c: &FockClass) -> String {
    let mut out = String::new();
    csv_row(&mut out, ["partition".to_string(), "coefficient".to_string()]);
    for (p, x) in c.coords() {
        csv_row(&mut out, [p.to_string(), x.to_string()]);
    }
    out
}

pub fn class_latex(c: &FockClass) -> String {
    if c.is_zero() {
        return "0\n".into();
    }
    let terms: Vec<String> = c
        .coords()
        .map(|(p, x)| {
            let coeff = ratfunc_latex(x);
            let coeff = if x.is_one() {
                String::new()
            } else if x.is_polynomial() && x.numer().terms().len() == 1 {
                coeff
            } else {
                format!("\\left({coeff}\\right)")
            };
            format!("{coeff}\\,\\mathrm{{fix}}{}", partition_latex(p))
        })
        .collect();
    let mut s = terms.join(" + ").replace("+ -", "- ");
    s.push('\n');
    s
}

pub fn reports_csv(reports: &[IdentityReport]) -> String {
    let mut out = String::new();
    csv_row(&mut out, ["id", "status", "comparisons", "lambda", "mu", "expected", "got", "context"].map(String::from));
    for r in reports {
        let status = if r.passed() { "pass" } else { "fail" };
        let mut row = vec![r.id.clone(), status.into(), r.comparisons.to_string()];
        match &r.counterexample {
            Some(c) => {
                row.extend([c.lambda.clone(), c.mu.clone(), c.expected.clone(), c.got.clone(), c.context.clone()])
            }
            None => row.extend(std::iter::repeat_n(String::new(), 5)),
        }
        csv_row(&mut out, row);
    }
    out
}

pub fn reports_latex(reports: &[IdentityReport]) -> String {
    let mut out = String::from("\\begin{tabular}{llr}\nidentity & status & comparisons \\\\\n\\hline\n");
    for r in reports {
        let status = if r.passed() { "pass" } else { "fail" };
        let _ = writeln!(out, "\\texttt{{{}}} & {status} & {} \\\\", r.id, r.comparisons);
    }
    out.push_str("\\end{tabular}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn latex_forms() {
        assert_eq!(ratfunc_latex(&r("-2*V")), "-2V");
        assert_eq!(ratfunc_latex(&r("2*U^2 - 3*U*V + V^2")), "2U^{2} - 3UV + V^{2}");
        assert_eq!(ratfunc_latex(&r("1/(U*V)")), "\\frac{1}{UV}");
        assert_eq!(ratfunc_latex(&r("U/2")), "\\frac{1}{2}U");
        assert_eq!(ratfunc_latex(&r("(U/2 + 1)/(U - V)")), "\\frac{U + 2}{2U - 2V}");
        assert_eq!(ratfunc_latex(&RatFunc::zero()), "0");
    }

    #[test]
    fn csv_quoting() {
        let mut out = String::new();
        csv_row(&mut out, ["[2,1]".to_string(), "-2*U".to_string()]);
        assert_eq!(out, "\"[2,1]\",-2*U\n");
    }
}
