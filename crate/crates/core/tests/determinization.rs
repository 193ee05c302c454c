mod common;

use common::*;
use explorable::automaton::{Automaton, Condition};
use explorable::determinize::{
    breakpoint_construction, reachability_monitor, resolve_monitor, subset_construction, Provenance,
};
use explorable::error::Error;
use explorable::generators::{gen_fig4, Fig4Side};
use explorable::membership::member_finite;
use explorable::word::{lassos_up_to, words_up_to};
use proptest::prelude::*;

fn check_shape(m: &Automaton) {
    assert!(m.is_complete(), "monitor incomplete");
    assert!(m.is_deterministic(), "monitor nondeterministic");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn subset_matches_run_enumeration(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let a = random_automaton(&mut r, n, 2, Condition::Finite, 2);
        let m = subset_construction(&a).unwrap().automaton;
        check_shape(&m);
        prop_assert!(m.num_states() <= 1 << n);
        for w in words_up_to(2, 6) {
            prop_assert_eq!(member_finite(&m, &w).unwrap(), oracle_finite(&a, &w), "{:?}", w);
        }
    }

    #[test]
    fn breakpoint_matches_lasso_oracle(seed in any::<u64>(), n in 1usize..4, safety in any::<bool>()) {
        let mut r = rng(seed);
        let cond = if safety { Condition::Safety } else { Condition::CoBuchi };
        let a = random_automaton(&mut r, n, 2, cond, 2);
        let m = breakpoint_construction(&a).unwrap().automaton;
        check_shape(&m);
        // +1 for the sink that canonical_parity adds to safety inputs
        let states = if safety { n + 1 } else { n };
        prop_assert!(m.num_states() <= 3usize.pow(states as u32));
        for w in lassos_up_to(2, 5) {
            prop_assert_eq!(oracle_lasso(&m, &w), oracle_lasso(&a, &w), "{:?}", w);
        }
    }

    #[test]
    fn reachability_monitor_matches_lasso_oracle(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let a = random_automaton(&mut r, n, 2, Condition::Reachability, 2);
        let m = reachability_monitor(&a).unwrap().automaton;
        check_shape(&m);
        prop_assert!(m.num_states() <= (1 << n) + 1);
        for w in lassos_up_to(2, 5) {
            prop_assert_eq!(oracle_lasso(&m, &w), oracle_lasso(&a, &w), "{:?}", w);
        }
    }
}

#[test]
fn fig4_left_breakpoint_bound() {
    let a = gen_fig4(Fig4Side::Left);
    let m = breakpoint_construction(&a).unwrap();
    assert_eq!(m.provenance, Provenance::Breakpoint);
    check_shape(&m.automaton);
    assert!(m.automaton.num_states() <= 27);
    for w in lassos_up_to(a.num_letters(), 6) {
        assert_eq!(oracle_lasso(&m.automaton, &w), oracle_lasso(&a, &w), "{w:?}");
    }
}

#[test]
fn buchi_without_monitor_is_refused() {
    let mut r = rng(3);
    let a = random_automaton(&mut r, 2, 2, Condition::Buchi, 2);
    assert!(matches!(resolve_monitor(&a, None), Err(Error::MissingMonitor(_))));
}

#[test]
fn wrong_user_monitor_is_refused() {
    let mut a = Automaton::new("all", letters(2), 1, 0, Condition::Buchi);
    a.add_transition(0, 0, 0, 2);
    a.add_transition(0, 1, 0, 2);
    let mut none = Automaton::new("none", letters(2), 1, 0, Condition::Buchi);
    none.add_transition(0, 0, 0, 1);
    none.add_transition(0, 1, 0, 1);
    assert!(matches!(resolve_monitor(&a, Some(&none)), Err(Error::MonitorMismatch { .. })));
    let ok = resolve_monitor(&a, Some(&a)).unwrap();
    assert_eq!(ok.provenance, Provenance::UserSupplied);
}
