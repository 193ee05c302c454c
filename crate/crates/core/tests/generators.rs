mod common;

use common::*;
use explorable::automaton::validate;
use explorable::explore::is_k_explorable;
use explorable::generators::atm::{atm_accepts, atm_accepts_minimax, atm_reduce, parse_atm, print_atm, Atm, AtmTransition, Dir};
use explorable::generators::{gen_ak, gen_bk, gen_c, gen_fig4, Fig4Side};
use proptest::prelude::*;
use rand::Rng;

fn random_atm(seed: u64) -> Atm {
    let mut r = rng(seed);
    let n = r.gen_range(2..5);
    let existential: Vec<bool> = (0..n).map(|q| q % 2 == 0).collect();
    let mut transitions = Vec::new();
    for _ in 0..r.gen_range(1..7) {
        let src = r.gen_range(0..n);
        let choices: Vec<usize> = (0..n).filter(|&d| d % 2 != src % 2).collect();
        let t = AtmTransition {
            src,
            read: r.gen_range(0..2),
            dst: choices[r.gen_range(0..choices.len())],
            write: r.gen_range(0..2),
            dir: if r.gen_bool(0.5) { Dir::L } else { Dir::R },
        };
        if !transitions.contains(&t) {
            transitions.push(t);
        }
    }
    Atm {
        existential,
        accepting: r.gen_range(1..n),
        space: 2,
        transitions,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn atm_semantics_agree(seed in any::<u64>(), w0 in 0u8..2, w1 in 0u8..2) {
        let m = random_atm(seed);
        prop_assert!(m.violations().is_empty());
        let word = [w0, w1];
        prop_assert_eq!(atm_accepts(&m, &word).unwrap(), atm_accepts_minimax(&m, &word).unwrap());
    }

    #[test]
    fn atm_text_round_trip(seed in any::<u64>()) {
        let m = random_atm(seed);
        prop_assert_eq!(parse_atm("rt.atm", &print_atm(&m)).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn atm_reductions_are_valid(seed in any::<u64>()) {
        let m = random_atm(seed);
        let a = atm_reduce(&m, &[0, 1]);
        prop_assert!(validate(&a).is_empty(), "{:?}", validate(&a));
    }
}

#[test]
fn ak_needs_exactly_k_tokens() {
    for k in 1..=3 {
        let a = gen_ak(k);
        assert!(is_k_explorable(&a, k, None).unwrap());
        if k > 1 {
            assert!(!is_k_explorable(&a, k - 1, None).unwrap());
        }
    }
}

#[test]
fn bk_threshold_is_a_power_of_two() {
    for k in 1..=2 {
        let b = gen_bk(k);
        let t = 1 << k;
        assert!(is_k_explorable(&b, t, None).unwrap());
        assert!(!is_k_explorable(&b, t - 1, None).unwrap());
    }
}

#[test]
fn c_is_not_small_explorable() {
    for k in 1..=3 {
        assert!(!is_k_explorable(&gen_c(), k, None).unwrap());
    }
}

#[test]
fn fig4_left_is_not_small_explorable() {
    let a = gen_fig4(Fig4Side::Left);
    for k in 1..=3 {
        assert!(!is_k_explorable(&a, k, None).unwrap());
    }
}

#[test]
fn bad_atm_files_are_rejected() {
    assert!(parse_atm("x.atm", "atm\nstates: 2\nexistential: 1\naccepting: 1\nspace: 1\n").is_err());
    assert!(parse_atm("x.atm", "atm\nstates: 2\nexistential: 0\naccepting: 1\nspace: 1\nt 0 0 0 0 R\n").is_err());
}
