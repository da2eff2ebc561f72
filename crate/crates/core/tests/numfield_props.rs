mod support;

use folint_core::numfield::{Field, FieldElement, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;
use support::{field_axioms, test_fields};

fn element(k: Field) -> impl Strategy<Value = FieldElement> {
    let n = k.degree();
    prop::collection::vec((-12i64..=12, 1i64..=5), n).prop_map(move |cs| {
        k.element(
            cs.into_iter()
                .map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
                .collect(),
        )
    })
}

fn triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
    prop::sample::select(test_fields()).prop_flat_map(|k| (element(k.clone()), element(k.clone()), element(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn field_axioms_hold((a, b, c) in triple()) {
        prop_assert_eq!(field_axioms(&a, &b, &c), Ok(()));
    }

    #[test]
    fn norm_is_multiplicative((a, b, _c) in triple()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn powers_add_exponents((a, _b, _c) in triple(), m in 0u32..5, n in 0u32..5) {
        prop_assert_eq!(a.pow(m) * a.pow(n), a.pow(m + n));
    }
}
