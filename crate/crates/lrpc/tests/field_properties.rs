//! Field-axiom property tests across representative parameter choices,
//! covering both the packed binary path and the generic odd-prime path.

use lrpc::{Field, FieldElement, Rng};
use proptest::prelude::*;

fn element_strategy(field: &'static Field) -> impl Strategy<Value = FieldElement> {
    proptest::collection::vec(0..field.q(), field.m())
        .prop_map(move |coeffs| field.element(coeffs).unwrap())
}

fn nonzero_strategy(field: &'static Field) -> impl Strategy<Value = FieldElement> {
    element_strategy(field).prop_filter("nonzero", |el| !el.is_zero())
}

macro_rules! field_axioms {
    ($mod_name:ident, $q:expr, $m:expr) => {
        mod $mod_name {
            use super::*;
            use std::sync::OnceLock;

            fn field() -> &'static Field {
                static FIELD: OnceLock<Field> = OnceLock::new();
                FIELD.get_or_init(|| Field::new($q, $m).unwrap())
            }

            proptest! {
                #![proptest_config(ProptestConfig::with_cases(1000))]

                #[test]
                fn add_is_associative_and_commutative(
                    a in element_strategy(field()),
                    b in element_strategy(field()),
                    c in element_strategy(field()),
                ) {
                    let f = field();
                    let left = f.add(&f.add(&a, &b).unwrap(), &c).unwrap();
                    let right = f.add(&a, &f.add(&b, &c).unwrap()).unwrap();
                    prop_assert_eq!(&left, &right);
                    prop_assert_eq!(f.add(&a, &b).unwrap(), f.add(&b, &a).unwrap());
                }

                #[test]
                fn mul_is_associative_and_commutative(
                    a in element_strategy(field()),
                    b in element_strategy(field()),
                    c in element_strategy(field()),
                ) {
                    let f = field();
                    let left = f.mul(&f.mul(&a, &b).unwrap(), &c).unwrap();
                    let right = f.mul(&a, &f.mul(&b, &c).unwrap()).unwrap();
                    prop_assert_eq!(&left, &right);
                    prop_assert_eq!(f.mul(&a, &b).unwrap(), f.mul(&b, &a).unwrap());
                }

                #[test]
                fn mul_distributes_over_add(
                    a in element_strategy(field()),
                    b in element_strategy(field()),
                    c in element_strategy(field()),
                ) {
                    let f = field();
                    let left = f.mul(&a, &f.add(&b, &c).unwrap()).unwrap();
                    let right =
                        f.add(&f.mul(&a, &b).unwrap(), &f.mul(&a, &c).unwrap()).unwrap();
                    prop_assert_eq!(left, right);
                }

                #[test]
                fn mul_then_divide_round_trips(
                    a in element_strategy(field()),
                    b in nonzero_strategy(field()),
                ) {
                    let f = field();
                    let quotient = f.mul(&f.mul(&a, &b).unwrap(), &f.inv(&b).unwrap()).unwrap();
                    prop_assert_eq!(quotient, a);
                }

                #[test]
                fn frobenius_power_fixes_every_element(a in element_strategy(field())) {
                    // x^{q^m} = x, via repeated-squaring exponentiation.
                    let f = field();
                    let order = (f.q() as u128).pow(f.m() as u32);
                    prop_assert_eq!(f.pow(&a, order).unwrap(), a);
                }
            }
        }
    };
}

field_axioms!(binary_packed, 2, 41);
field_axioms!(binary_word_edge, 2, 12);
field_axioms!(ternary, 3, 9);
field_axioms!(larger_prime, 7, 3);

#[test]
fn random_element_sequences_reproduce() {
    let field = Field::new(2, 31).unwrap();
    let run = |seed: u64| {
        let mut rng = Rng::new(seed);
        (0..200)
            .map(|_| field.random_element(&mut rng))
            .collect::<Vec<_>>()
    };
    assert_eq!(run(42), run(42));
    assert_ne!(run(42), run(1));
}
