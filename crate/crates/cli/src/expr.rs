//! Operator names and class expressions accepted on the command line.

use hilbfock::fock::{es_class, nak_class};
use hilbfock::{Error, FockClass, FockSpace, Operator, Partition, Result};

/// `q<i>`, `qx<i>`, `qt<n>`, `rho`, `rho_dual`, `boundary`, `id`, or `[A,B]`.
pub fn parse_operator(s: &str) -> Result<Operator> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| Error::Parse(format!("unbalanced bracket in {s:?}")))?;
        let (a, b) = split_top_level(inner).ok_or_else(|| Error::Parse(format!("expected [A,B], got {s:?}")))?;
        return Ok(parse_operator(a)?.commutator(&parse_operator(b)?));
    }
    match s {
        "rho" => return Ok(Operator::rho()),
        "rho_dual" => return Ok(Operator::rho_dual()),
        "boundary" => return Ok(Operator::boundary()),
        "id" => return Ok(Operator::identity()),
        _ => {}
    }
    let index =
        |rest: &str| -> Result<i64> { rest.parse().map_err(|_| Error::Parse(format!("unknown operator {s:?}"))) };
    if let Some(rest) = s.strip_prefix("qx") {
        Operator::qx(index(rest)?)
    } else if let Some(rest) = s.strip_prefix("qt") {
        let n = index(rest)?;
        if n < 1 {
            return Err(Error::NonPositiveIndex(n));
        }
        Operator::q_tableau(n as usize)
    } else if let Some(rest) = s.strip_prefix('q') {
        Operator::q(index(rest)?)
    } else {
        Err(Error::Parse(format!("unknown operator {s:?}")))
    }
}

/// Splits `A,B` at the comma that is not nested in brackets.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Whitespace-separated tokens, keeping `[A, B]` together.
fn tokens(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced bracket in {s:?}")));
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else if !c.is_whitespace() {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced bracket in {s:?}")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// `nak[λ]`, `es[λ]`, `fix[λ]`, or operators applied right to left to `vac`.
pub fn eval_class(space: &FockSpace, s: &str) -> Result<FockClass> {
    let s = s.trim();
    for (prefix, kind) in [("nak", 0), ("es", 1), ("fix", 2)] {
        if let Some(rest) = s.strip_prefix(prefix) {
            if rest.starts_with('[') {
                let lambda: Partition = rest.parse()?;
                return match kind {
                    0 => nak_class(space, &lambda),
                    1 => es_class(space, &lambda),
                    _ => Ok(FockClass::fix(lambda)),
                };
            }
        }
    }
    let toks = tokens(s)?;
    match toks.split_last() {
        Some((last, ops)) if last == "vac" => {
            let ops = ops.iter().map(|t| parse_operator(t)).collect::<Result<Vec<_>>>()?;
            space.apply_all(&ops, &FockClass::vacuum())
        }
        _ => Err(Error::Parse(format!("expected nak[..], es[..], fix[..] or operators applied to vac, got {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_names() {
        for name in ["q1", "q-3", "qx2", "qt3", "rho", "rho_dual", "boundary", "[q-1,q1]", "[rho,[q1,q2]]"] {
            assert!(parse_operator(name).is_ok(), "{name}");
        }
        assert_eq!(parse_operator("q0").unwrap_err(), Error::QZero);
        assert!(matches!(parse_operator("qq"), Err(Error::Parse(_))));
        assert!(matches!(parse_operator("[q1]"), Err(Error::Parse(_))));
    }

    #[test]
    fn class_tokens() {
        assert_eq!(tokens("q2 [q1, q-1]  vac").unwrap(), vec!["q2", "[q1,q-1]", "vac"]);
        assert!(tokens("[q1 vac").is_err());
    }
}
