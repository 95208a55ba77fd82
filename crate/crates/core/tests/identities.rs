use hilbfock::fock::{FockSpace, Truncation};
use hilbfock::identities::{check_identity, identity_ids, run_all, Status};
use hilbfock::localization::KerReading;
use hilbfock::Error;

fn space(t: usize) -> FockSpace {
    FockSpace::new(Truncation::new(t))
}

fn mutated(t: usize) -> FockSpace {
    FockSpace::with_reading(Truncation::new(t), KerReading::Display)
}

#[test]
fn registry_covers_operator_invariants() {
    let ids = identity_ids();
    for id in [
        "adjoint-duality",
        "basis-integrality",
        "boundary-chern",
        "derivative-rule",
        "nak-fix-golden",
        "nak2es-classical",
        "positive-commute",
        "qiqj",
        "qn-tableau",
        "qx-closed",
        "rho-bracket",
        "rho-qi",
        "rho-rhodual",
        "small-diagonal",
    ] {
        assert!(ids.contains(&id), "{id}");
    }
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, ids);
}

#[test]
fn golden_base_change() {
    let r = check_identity(&space(3), "nak-fix-golden").unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.comparisons, 1 + 4 + 9);
    let r = check_identity(&space(2), "nak-fix-golden").unwrap();
    assert!(r.passed());
    assert_eq!(r.comparisons, 5);
}

#[test]
fn identities_pass_at_both_truncations() {
    for t in [2, 6] {
        let f = space(t);
        for id in [
            "adjoint-duality",
            "basis-integrality",
            "bott-closure",
            "boundary-chern",
            "derivative-rule",
            "nak-fix-golden",
            "positive-commute",
            "q1-commutators",
            "qn-tableau",
            "qx-closed",
            "rho-bracket",
            "rho-qi",
            "rho-rhodual",
            "small-diagonal",
        ] {
            let r = check_identity(&f, id).unwrap();
            assert!(r.passed(), "T={t}: {}", r.to_json());
            assert!(r.comparisons > 0, "{id}");
        }
    }
}

#[test]
fn status_matches_counterexample() {
    for r in run_all(&space(4)).unwrap() {
        assert_eq!(r.passed(), r.counterexample.is_none(), "{}", r.id);
    }
}

#[test]
fn reports_are_ordered_and_deterministic() {
    let a = run_all(&space(4)).unwrap();
    let ids: Vec<&str> = a.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, identity_ids());
    let b = run_all(&space(4)).unwrap();
    let text =
        |rs: &[hilbfock::identities::IdentityReport]| rs.iter().map(|r| r.to_json()).collect::<Vec<_>>().join("\n");
    assert_eq!(text(&a), text(&b));
}

#[test]
fn report_json_shape() {
    let r = check_identity(&space(3), "rho-rhodual").unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["id"], "rho-rhodual");
    assert_eq!(v["status"], "pass");
    assert!(v["window"].is_object());
    assert!(v["counterexample"].is_null());
}

#[test]
fn unknown_identity() {
    assert!(matches!(check_identity(&space(3), "bogus-id"), Err(Error::UnknownIdentity(_))));
}

#[test]
fn flipped_ker_reading_is_detected() {
    let f = mutated(6);
    let r = check_identity(&f, "qiqj").unwrap();
    assert_eq!(r.status, Status::Fail);
    let c = r.counterexample.unwrap();
    assert!(!c.lambda.is_empty() && !c.mu.is_empty());
    assert_ne!(c.expected, c.got);

    let r = check_identity(&f, "bott-closure").unwrap();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.counterexample.unwrap().lambda, "[2,1]");

    for id in ["positive-commute", "q1-commutators", "rho-rhodual", "small-diagonal"] {
        let r = check_identity(&f, id).unwrap();
        assert_eq!(r.status, Status::Fail, "{id} should detect the mutation");
        assert!(check_identity(&space(6), id).unwrap().passed(), "{id}");
    }
}
