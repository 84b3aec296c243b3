mod common;

use attneg_core::meta::{attack_formula, solve_higher_brute, GeneralizedModel};
use attneg_core::pred::{eval_pred, pred_value};
use attneg_core::translate::value_to_label;
use attneg_core::{
    enumerate_complete, solve_higher, HigherNetwork, JointAttacks, Labelling, PredFormula,
    RMode, StarOptions, ThreeVal, Unit, Valuation, WffSupport, World,
};
use common::*;
use proptest::prelude::*;

fn holds_at_t(f: &PredFormula, m: &GeneralizedModel) -> bool {
    eval_pred(World::T, f, &m.interp, &Valuation::new()).unwrap()
}

#[test]
fn empty_w_with_pinned_r_gives_complete_labellings() {
    let opts = StarOptions {
        r_mode: RMode::Pinned,
        ..StarOptions::default()
    };
    for n in 1..=3 {
        for f in all_frameworks(n) {
            let hn = HigherNetwork::from_framework(&f);
            let mut labs: Vec<Labelling> = solve_higher(&hn, &opts)
                .unwrap()
                .iter()
                .map(|m| {
                    f.arguments()
                        .iter()
                        .map(|a| (a.clone(), value_to_label(m.in_of(a.as_str()).unwrap())))
                        .collect()
                })
                .collect();
            labs.sort();
            assert_eq!(labs, enumerate_complete(&f), "{f}");
        }
    }
}

fn fig4_opts() -> StarOptions {
    StarOptions {
        joint: JointAttacks::Declared,
        r_mode: RMode::Mentioned,
        ..StarOptions::default()
    }
}

fn relativised(attacker: &Unit, target: &Unit) -> PredFormula {
    match attack_formula(attacker, target) {
        PredFormula::Imp(lhs, rhs) => PredFormula::imp(*lhs, PredFormula::or(PredFormula::N, *rhs)),
        _ => unreachable!("attack formulas are implications"),
    }
}

#[test]
fn fig4_models_respect_attacks_up_to_n() {
    let hn = fig4();
    let models = solve_higher(&hn, &fig4_opts()).unwrap();
    assert!(!models.is_empty());
    let mut literal_failures = 0;
    for m in &models {
        for (x, y) in hn.hattacks() {
            let (ux, uy) = (hn.unit(x).unwrap(), hn.unit(y).unwrap());
            assert!(holds_at_t(&relativised(&ux, &uy), m), "{x} -> {y}");
            if !holds_at_t(&attack_formula(&ux, &uy), m) {
                literal_failures += 1;
            }
        }
    }
    // Undecided statuses break the literal reading, as x → ¬y does on an
    // undecided two-cycle.
    assert!(literal_failures > 0);
}

#[test]
fn fig4_classical_model_obeys_literal_attacks() {
    let hn = fig4();
    for m in solve_higher(&hn, &fig4_opts()).unwrap() {
        let decided = m.interp.in_values().all(|(_, v)| v.is_decided())
            && m.interp.r_values().all(|(_, v)| v.is_decided());
        if decided {
            for (x, y) in hn.hattacks() {
                let f = attack_formula(&hn.unit(x).unwrap(), &hn.unit(y).unwrap());
                assert!(holds_at_t(&f, &m));
            }
        }
    }
}

const WFFS: [&str; 4] = [
    "exists X (~R(X,X))",
    "forall X (R(a,X))",
    "In(a) | R(a,a)",
    "exists X (In(X) & R(X,a))",
];

fn small_network() -> impl Strategy<Value = HigherNetwork> {
    (
        1usize..=2,
        prop::option::of(prop::sample::select(&WFFS[..])),
        prop::collection::vec((0usize..4, 0usize..4), 0..4),
    )
        .prop_map(|(n, wff, atts)| {
            let mut hn = HigherNetwork::new(ids(&NAMES[..n])).unwrap();
            if let Some(w) = wff {
                hn.add_wff("w", p(w)).unwrap();
            }
            let units: Vec<String> = hn.units().iter().map(|u| u.name().to_string()).collect();
            for (i, j) in atts {
                let (x, y) = (&units[i % units.len()], &units[j % units.len()]);
                hn.add_attack(x, y).unwrap();
            }
            hn
        })
}

fn all_options() -> Vec<StarOptions> {
    let mut v = Vec::new();
    for joint in [JointAttacks::Implicit, JointAttacks::Declared] {
        for wff_support in [WffSupport::PerAttacker, WffSupport::Aggregate] {
            for r_mode in [RMode::Free, RMode::Pinned, RMode::Mentioned] {
                v.push(StarOptions {
                    joint,
                    wff_support,
                    r_mode,
                    ..StarOptions::default()
                });
            }
        }
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn search_matches_brute_force(hn in small_network()) {
        for opts in all_options() {
            prop_assert_eq!(solve_higher(&hn, &opts), solve_higher_brute(&hn, &opts));
        }
    }

    #[test]
    fn wff_statuses_are_persistent_values(hn in small_network()) {
        for m in solve_higher(&hn, &StarOptions::default()).unwrap() {
            for (name, f) in hn.wffs() {
                let v = m.status(name).unwrap();
                prop_assert_eq!(v, pred_value(f, &m.interp).unwrap());
                prop_assert!(ThreeVal::from_worlds(v.at(World::T), v.at(World::S)).is_some());
            }
        }
    }

    #[test]
    fn unattacked_wffs_hold_at_s(hn in small_network()) {
        for opts in all_options() {
            for m in solve_higher(&hn, &opts).unwrap() {
                for (name, _) in hn.wffs() {
                    if hn.hattacks().iter().all(|(_, y)| y != name) {
                        prop_assert_ne!(m.status(name), Some(ThreeVal::FF));
                    }
                }
            }
        }
    }
}
