mod common;

use common::*;
use explorable::automaton::{canonical_parity, complete, validate, Automaton, Condition};
use explorable::format::{parse_automaton, print_automaton};
use explorable::generators::{gen_ak, gen_bk, gen_c, gen_fig4, Fig4Side};
use explorable::membership::{member_finite, member_lasso, simulate_deterministic_lasso};
use explorable::word::{lassos_up_to, words_up_to};
use proptest::prelude::*;

const INFINITE: [Condition; 6] = [
    Condition::Safety,
    Condition::Reachability,
    Condition::Buchi,
    Condition::CoBuchi,
    Condition::Parity { lo: 0, hi: 3 },
    Condition::Parity { lo: 1, hi: 4 },
];

fn partial(seed: u64, cond: Condition) -> Automaton {
    let mut r = rng(seed);
    let full = random_automaton(&mut r, 3, 2, cond, 2);
    // drop a few transitions so completion has work to do
    let mut a = Automaton::new("partial", full.alphabet().to_vec(), 3, 0, cond);
    for (i, t) in full.transitions().enumerate() {
        if i % 3 != 1 {
            a.add_transition(t.src, t.letter, t.dst, t.ranks[0]);
        }
    }
    for q in 0..3 {
        a.set_accepting(q, full.is_accepting(q));
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn completion_is_idempotent_and_keeps_finite_language(seed in any::<u64>()) {
        let a = partial(seed, Condition::Finite);
        let c = complete(&a);
        prop_assert!(c.is_complete());
        prop_assert_eq!(complete(&c), c.clone());
        for w in words_up_to(2, 5) {
            prop_assert_eq!(member_finite(&c, &w).unwrap(), oracle_finite(&a, &w));
        }
    }

    #[test]
    fn completion_keeps_lasso_language(seed in any::<u64>(), ci in 0usize..6) {
        let a = partial(seed, INFINITE[ci]);
        let c = complete(&a);
        prop_assert_eq!(complete(&c), c.clone());
        for w in lassos_up_to(2, 5) {
            prop_assert_eq!(oracle_lasso(&c, &w), oracle_lasso(&a, &w), "{:?}", w);
        }
    }

    #[test]
    fn canonical_parity_keeps_lasso_language(seed in any::<u64>(), ci in 0usize..6) {
        let a = partial(seed, INFINITE[ci]);
        let p = canonical_parity(&a).unwrap();
        prop_assert!(p.condition().as_parity().is_some());
        for w in lassos_up_to(2, 6) {
            prop_assert_eq!(oracle_lasso(&p, &w), oracle_lasso(&a, &w), "{:?}", w);
        }
    }

    #[test]
    fn member_lasso_matches_oracle_and_is_invariant(seed in any::<u64>(), ci in 0usize..6) {
        let a = partial(seed, INFINITE[ci]);
        for w in lassos_up_to(2, 5) {
            let m = member_lasso(&a, &w).unwrap();
            prop_assert_eq!(m, oracle_lasso(&a, &w));
            prop_assert_eq!(member_lasso(&a, &w.unrolled()).unwrap(), m);
            for by in 1..w.period.len() {
                prop_assert_eq!(member_lasso(&a, &w.rotated(by)).unwrap(), m);
            }
        }
    }

    #[test]
    fn deterministic_simulation_agrees(seed in any::<u64>(), ci in 2usize..6) {
        let mut r = rng(seed);
        let d = random_deterministic(&mut r, 4, 2, INFINITE[ci]);
        for w in lassos_up_to(2, 6) {
            prop_assert_eq!(simulate_deterministic_lasso(&d, &w), member_lasso(&d, &w).unwrap());
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), ci in 0usize..7) {
        let cond = if ci == 6 { Condition::Finite } else { INFINITE[ci] };
        let a = partial(seed, cond);
        let text = print_automaton(&a);
        prop_assert_eq!(parse_automaton("rt", &text).unwrap(), a);
    }
}

#[test]
fn generators_are_valid_and_round_trip() {
    let all = [
        gen_ak(1),
        gen_ak(3),
        gen_c(),
        gen_bk(2),
        gen_fig4(Fig4Side::Left),
        gen_fig4(Fig4Side::Right),
    ];
    for a in all {
        assert!(validate(&a).is_empty(), "{}: {:?}", a.name, validate(&a));
        let c = complete(&a);
        assert_eq!(complete(&c), c);
        assert_eq!(parse_automaton("g", &print_automaton(&a)).unwrap(), a);
    }
}

#[test]
fn parse_errors_name_file_and_line() {
    let err = parse_automaton("bad.aut", "automaton x\nalphabet: a\nstates: 2\ninitial: 7\n").unwrap_err();
    let text = err.to_string();
    assert!(text.contains("bad.aut"), "{text}");
}
