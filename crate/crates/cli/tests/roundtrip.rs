use attneg_cli::{parse, serialize};
use proptest::prelude::*;

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn prop_formula() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["p", "q", "true", "false"]).prop_map(String::from),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| format!("~({f})")),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| format!("({f}) & ({g})")),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| format!("({f}) | ({g})")),
            (inner.clone(), inner).prop_map(|(f, g)| format!("({f}) -> ({g})")),
        ]
    })
}

fn pred_formula() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("exists X (~R(X,X))".to_string()),
        Just("forall X Y (R(X,Y) -> ~R(Y,X))".to_string()),
        Just("In(a) & R(a,a)".to_string()),
        Just("exists X (In(X) | X = a)".to_string()),
    ]
}

/// Plain or higher-order documents, written with irregular spacing and
/// comments, in an arbitrary fact order.
fn plain_doc() -> impl Strategy<Value = String> {
    (
        1usize..=4,
        prop::collection::vec((0usize..4, 0usize..4), 0..6),
        prop::option::of(pred_formula()),
        any::<bool>(),
    )
        .prop_flat_map(|(n, atts, wff, comment)| {
            let mut facts: Vec<String> = NAMES[..n].iter().map(|a| format!("arg( {a} ).")).collect();
            for (x, y) in atts {
                if x < n && y < n {
                    facts.push(format!("att({},{}).", NAMES[x], NAMES[y]));
                }
            }
            if let Some(w) = wff {
                facts.push(format!("wff(phi, \"{w}\")."));
                facts.push("att(a, phi).".into());
            }
            if comment {
                facts.push("# a comment\n".into());
            }
            Just(facts).prop_shuffle()
        })
        .prop_map(|facts| facts.join("\n"))
}

fn inst_doc() -> impl Strategy<Value = String> {
    (prop_formula(), prop_formula()).prop_map(|(f, g)| {
        format!("arg(a). arg(b). att(a, b).\ninst(a, \"{f}\").\ninst(b, \"{g}\").\n")
    })
}

fn adf_doc() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["~b", "a & ~b | b", "true", "false", "~a & ~b"]).prop_map(|c| {
        format!("arg(a). arg(b).\nacc(a, \"{c}\").\nacc(b, \"~a\").\n")
    })
}

fn other_doc() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("arg(z). arg(y1). arg(y2). datt(z, [y1, y2]).".to_string()),
        Just("arg(z). arg(y1). arg(y2). catt([y2, y1], z). att(z, y1).".to_string()),
        Just("arg(a). arg(b). psi \"forall X (~R(X,X))\".".to_string()),
    ]
}

proptest! {
    #[test]
    fn parse_serialize_parse(text in prop_oneof![plain_doc(), inst_doc(), adf_doc(), other_doc()]) {
        let doc = parse(&text).unwrap();
        let once = serialize(&doc);
        let again = parse(&once).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(serialize(&again), once);
    }
}
