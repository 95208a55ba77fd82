//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any line fails.

#[path = "../../core/tests/common/props.rs"]
mod props;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hilbfock::fock::{FockSpace, Operator, Truncation};
use hilbfock::identities::{check_identity, run_all, IdentityReport};
use hilbfock::RatFunc;
use proptest::test_runner::{Config, TestError, TestRunner};

type Outcome = Result<String, String>;

struct Runner {
    failed: usize,
}

impl Runner {
    fn criterion(&mut self, id: &str, title: &str, bound: Duration, run: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= bound => (true, d),
            Ok(d) => (false, format!("{d}; over the {} s budget", bound.as_secs())),
            Err(d) => (false, d),
        };
        if !ok {
            self.failed += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} {id:>2} {title}: {detail} ({:.2} s)", elapsed.as_secs_f64());
    }
}

fn sub(name: &str, r: &Outcome) -> bool {
    let (tag, d) = match r {
        Ok(d) => ("pass", d),
        Err(d) => ("fail", d),
    };
    println!("        {tag} {name}: {d}");
    r.is_ok()
}

fn space(t: usize) -> FockSpace {
    FockSpace::new(Truncation::new(t))
}

fn report(r: IdentityReport) -> Outcome {
    let summary = format!("{} comparisons", r.comparisons);
    match &r.counterexample {
        None => Ok(match &r.note {
            Some(n) => format!("{summary}, {n}"),
            None => summary,
        }),
        Some(c) => {
            Err(format!("{}: {} at ({}, {}) expected {} got {}", r.id, c.context, c.lambda, c.mu, c.expected, c.got))
        }
    }
}

fn identity(f: &FockSpace, id: &str) -> Outcome {
    check_identity(f, id).map_err(|e| format!("{id}: {e}")).and_then(report)
}

fn q(i: i64) -> Operator {
    Operator::q(i).unwrap()
}

/// `op` restricted to weights `0..=max_source` equals `c · Id`.
fn scalar(f: &FockSpace, name: &str, op: &Operator, c: &RatFunc, max_source: i64) -> Result<usize, String> {
    let mut count = 0;
    for n in 0..=max_source {
        let b = f.block(op, n as usize).map_err(|e| e.to_string())?;
        for (i, mu) in b.rows.iter().enumerate() {
            for (j, lambda) in b.cols.iter().enumerate() {
                let e = if i == j { c.clone() } else { RatFunc::zero() };
                count += 1;
                if b.entries[i][j] != e {
                    return Err(format!("{name} at ({lambda}, {mu}) expected {e} got {}", b.entries[i][j]));
                }
            }
        }
    }
    Ok(count)
}

fn heisenberg(f: &FockSpace, diagonal: bool) -> Outcome {
    let inv_uv: RatFunc = "1/(U*V)".parse().unwrap();
    let mut count = 0;
    for i in 1..=4i64 {
        for j in 1..=4i64 {
            if (i == j) != diagonal {
                continue;
            }
            let c = if i == j {
                &RatFunc::from_int(i * if i % 2 == 1 { 1 } else { -1 }) * &inv_uv
            } else {
                RatFunc::zero()
            };
            count += scalar(f, &format!("[q{i},q-{j}]"), &q(i).commutator(&q(-j)), &c, 6 - i.max(j))?;
        }
    }
    Ok(format!("{count} comparisons"))
}

fn failure<T: std::fmt::Debug>(e: TestError<T>) -> String {
    format!("{e}")
}

fn properties() -> Outcome {
    let mut runner = TestRunner::new(Config { failure_persistence: None, ..Config::with_cases(500) });
    let mut names = Vec::new();
    let mut check = |name: &str, r: Result<(), String>| -> Result<(), String> {
        r.map_err(|e| format!("{name}: {e}"))?;
        names.push(name.to_string());
        Ok(())
    };
    use props::*;
    check(
        "field laws",
        runner.run(&(ratfunc(), ratfunc(), ratfunc()), |(x, y, z)| field_laws(&x, &y, &z)).map_err(failure),
    )?;
    check("gcd", runner.run(&(poly(), poly(), poly()), |(a, b, c)| gcd_correct(&a, &b, &c)).map_err(failure))?;
    check(
        "canonical form",
        runner.run(&(ratfunc(), nonzero_poly()), |(x, k)| canonical_idempotent(&x, &k)).map_err(failure),
    )?;
    check(
        "evaluation",
        runner.run(&(ratfunc(), ratfunc(), point()), |(x, y, p)| evaluate_homomorphism(&x, &y, &p)).map_err(failure),
    )?;
    check("conjugation", runner.run(&partition(), |l| conjugation_involution(&l)).map_err(failure))?;
    check("z recursion", runner.run(&partition(), |l| z_recursion(&l)).map_err(failure))?;
    Ok(format!("500 cases each: {}", names.join(", ")))
}

fn verify_all(t: usize) -> Outcome {
    let reports = run_all(&space(t)).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.id.as_str()).collect();
    if failed.is_empty() {
        Ok(format!("{} identities pass", reports.len()))
    } else {
        Err(format!("{} of {} identities fail: {}", failed.len(), reports.len(), failed.join(", ")))
    }
}

fn main() -> ExitCode {
    let mut r = Runner { failed: 0 };
    let secs = Duration::from_secs;

    r.criterion("1", "golden nak->fix base change at n=2,3", secs(1), || identity(&space(6), "nak-fix-golden"));

    r.criterion("2", "Heisenberg relations [qi,q-j] and [qi,qj] for i,j <= 4", secs(60), || {
        let f = space(6);
        let parts = [
            ("[qi,q-i] = i(-1)^(i+1)/(UV) Id", heisenberg(&f, true)),
            ("[qi,q-j] = 0 for i != j", heisenberg(&f, false)),
            ("[qi,qj] = 0", identity(&f, "positive-commute")),
        ];
        let mut ok = true;
        for (name, res) in &parts {
            ok &= sub(name, res);
        }
        let whole = identity(&f, "qiqj");
        match (ok, whole) {
            (true, Ok(d)) => Ok(d),
            (_, Err(e)) => Err(e),
            (false, Ok(_)) => Err("a sub-check failed".into()),
        }
    });

    r.criterion("3", "[rho,rho_dual] = 2n Id on degree n <= 6", secs(10), || identity(&space(7), "rho-rhodual"));
    r.criterion("4", "[rho,qi] = |i| q(i+1) for 0 < |i| <= 4", secs(30), || identity(&space(6), "rho-qi"));
    r.criterion("5", "boundary eigenvalue = -2 e1 for |lambda| <= 12", secs(1), || {
        identity(&space(6), "boundary-chern")
    });
    r.criterion("6", "qn vac = (-1)^(n-1) n e_(n-1) for n <= 6", secs(10), || identity(&space(6), "small-diagonal"));
    r.criterion("7", "tableau formula equals qn, closed form equals recursion", secs(30), || {
        identity(&space(6), "qn-tableau")
    });
    r.criterion("8", "q(i,X) expansions for i <= 5 up to weight 7", secs(60), || identity(&space(7), "qx-closed"));

    r.criterion("9", "nak->es integral and classically diagonal", secs(60), || {
        let f = space(6);
        let a = sub("polynomial entries for n <= 6", &identity(&f, "basis-integrality"));
        let cla = identity(&f, "nak2es-classical");
        sub("diagonal (-1)^(|l|+l(l)) prod(l_i)", &cla);
        match (a, cla) {
            (true, Ok(d)) => Ok(d),
            (_, Err(e)) => Err(e),
            (false, Ok(_)) => Err("integrality failed".into()),
        }
    });

    r.criterion("10", "Bott closure sum = 1/(UV) for |lambda| <= 6", secs(5), || identity(&space(6), "bott-closure"));
    r.criterion("11", "property suites", secs(30), properties);
    r.criterion("--", "verify all at max_weight 6", secs(300), || verify_all(6));
    r.criterion("--", "verify all at max_weight 2", secs(300), || verify_all(2));

    if r.failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} line(s) failed", r.failed);
        ExitCode::FAILURE
    }
}
