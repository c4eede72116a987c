//! Property tests of the expression language: printing is a canonical form,
//! so parse after print is the identity on parsed values.

use proptest::prelude::*;

use qbohr_cli::expr::{parse_element, print_expr};
use qbohr_core::model::lattice_model;

fn expr_strategy() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (-3i64..=3).prop_map(|n| format!("delta({n})")),
        prop_oneof![
            Just("char(2)".to_string()),
            Just("char(3)".to_string()),
            Just("char(1/2)".to_string()),
            Just("char(-2)".to_string()),
        ],
        Just("poly(1)".to_string()),
        Just("poly(2)".to_string()),
        Just("unit".to_string()),
        (-3i64..=3, 1i64..=3).prop_map(|(n, d)| format!("{n}/{d}")),
    ];
    atom.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} * {b})")),
            inner.clone().prop_map(|a| format!("adj({a})")),
            inner.prop_map(|a| format!("antipode({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_then_parse_is_identity(text in expr_strategy()) {
        let model = lattice_model(1);
        let value = parse_element(&model, &text).unwrap();
        let printed = print_expr(&model, &value).unwrap();
        let reparsed = parse_element(&model, &printed).unwrap();
        prop_assert_eq!(reparsed, value, "printed: {}", printed);
    }
}
