//! Property tests over the exact arithmetic layers.

use proptest::prelude::*;

use qbohr_core::matrix::Mat;
use qbohr_core::scalar::Scalar;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (
        -20i64..=20,
        1i64..=12,
        prop_oneof![Just(0u8), Just(1u8), Just(2u8)],
    )
        .prop_map(|(n, d, kind)| match kind {
            0 => Scalar::from_ratio(n, d),
            1 => Scalar::gaussian(
                num::BigRational::new(n.into(), d.into()),
                num::BigRational::new((n - 3).into(), d.into()),
            ),
            _ => Scalar::primitive_root(5)
                .mul(&Scalar::from_ratio(n, d))
                .add(&Scalar::from_int(1)),
        })
}

fn same_kind_pair() -> impl Strategy<Value = (Scalar, Scalar)> {
    (
        -20i64..=20,
        1i64..=12,
        -20i64..=20,
        1i64..=12,
        prop_oneof![Just(0u8), Just(1u8), Just(2u8)],
    )
        .prop_map(|(n1, d1, n2, d2, kind)| {
            let make = |n: i64, d: i64| match kind {
                0 => Scalar::from_ratio(n, d),
                1 => Scalar::gaussian(
                    num::BigRational::new(n.into(), d.into()),
                    num::BigRational::new((n + 1).into(), d.into()),
                ),
                _ => Scalar::primitive_root(5)
                    .mul(&Scalar::from_ratio(n, d))
                    .add(&Scalar::from_ratio(d, 7)),
            };
            (make(n1, d1), make(n2, d2))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws_hold((a, b) in same_kind_pair(), c in scalar_strategy()) {
        // commutativity and associativity against a rational third element
        let c = match (&a, &c) {
            (Scalar::Rational(_), other) => other.clone(),
            _ => Scalar::from_ratio(3, 2),
        };
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // conjugation is a ring involution
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        // inverses
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv()), Scalar::one());
        }
    }

    #[test]
    fn rank_factorization_reconstructs(rows in 1usize..5, cols in 1usize..5,
                                       entries in proptest::collection::vec(-4i64..=4, 25)) {
        let m = Mat::from_fn(rows, cols, |r, c| {
            Scalar::from_int(entries[(r * cols + c) % entries.len()])
        });
        let (c_mat, r_mat) = m.rank_factorize();
        prop_assert_eq!(&c_mat * &r_mat, m.clone());
        prop_assert_eq!(c_mat.cols(), m.rank());
    }

    #[test]
    fn nullspace_vectors_annihilate(rows in 1usize..5, cols in 1usize..5,
                                    entries in proptest::collection::vec(-4i64..=4, 25)) {
        let m = Mat::from_fn(rows, cols, |r, c| {
            Scalar::from_int(entries[(r * cols + c) % entries.len()])
        });
        for v in m.nullspace() {
            for r in 0..m.rows() {
                let mut acc = Scalar::zero();
                for c in 0..m.cols() {
                    acc = acc.add(&m.at(r, c).mul(&v[c]));
                }
                prop_assert!(acc.is_zero());
            }
        }
    }
}

// every engine value is immutable after construction and freely shareable
#[test]
fn values_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<qbohr_core::Scalar>();
    assert_send_sync::<qbohr_core::Mat>();
    assert_send_sync::<qbohr_core::FiniteElement>();
    assert_send_sync::<qbohr_core::Multiplier>();
    assert_send_sync::<qbohr_core::TensorMultiplier>();
    assert_send_sync::<qbohr_core::QuantumGroupModel>();
    assert_send_sync::<qbohr_core::ReducedFunctional>();
    assert_send_sync::<qbohr_core::bohr::HopfPresentation>();
}
