mod common {
    pub mod props;
}

use common::props::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ratfunc_field_laws(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        field_laws(&x, &y, &z)?;
    }

    #[test]
    fn gcd_divides_and_leaves_coprime_cofactors(a in poly(), b in poly(), c in poly()) {
        gcd_correct(&a, &b, &c)?;
    }

    #[test]
    fn canonical_form_is_idempotent(x in ratfunc(), k in nonzero_poly()) {
        canonical_idempotent(&x, &k)?;
    }

    #[test]
    fn evaluate_is_a_homomorphism(x in ratfunc(), y in ratfunc(), pt in point()) {
        evaluate_homomorphism(&x, &y, &pt)?;
    }

    #[test]
    fn conjugation_is_an_involution(l in partition()) {
        conjugation_involution(&l)?;
    }

    #[test]
    fn z_sums_to_weight(l in partition()) {
        z_recursion(&l)?;
    }

    #[test]
    fn one_more_addable_than_removable(l in partition()) {
        border_counts(&l)?;
    }
}
