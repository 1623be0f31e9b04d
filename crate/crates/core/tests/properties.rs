mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::*;
use regwin::analysis::{AnalyzedRdfa, EventuallyPeriodicSet};
use regwin::automata::{AutomatonFile, Language, Symbol};
use regwin::oracle::{
    active_window, distance_to_language, prefix_distance_to_language, Dist, WindowBuffer,
};
use regwin::testers::{
    derive_seed, path_summary_of, prime_pool, CounterModel, DeterministicTester, ExactTester,
    OneSidedSuffixFreeTester, Tester, ThresholdCounter, TwoSidedTester,
};

fn pattern() -> impl Strategy<Value = &'static str> {
    proptest::sample::select(CORPUS)
}

fn stream(max: usize) -> impl Strategy<Value = Vec<Symbol>> {
    proptest::collection::vec(0..SIGMA.len(), 0..=max)
}

fn to_string(word: &[Symbol]) -> String {
    sigma().decode(word)
}

fn dist_of(d: Option<usize>) -> Dist {
    d.map_or(Dist::Infinite, Dist::Finite)
}

#[test]
fn matcher_reference_cases() {
    assert!(Matcher::new("a*").matches(""));
    assert!(!Matcher::new("a*").matches("ab"));
    assert!(Matcher::new("(.a)*").matches("baaa"));
    assert!(!Matcher::new("(.a)*").matches("ab"));
    assert!(Matcher::new("(aa)*b(aaa)*").matches("aabaaa"));
    assert!(Matcher::new("ab|bab").matches("bab"));
    assert!(!Matcher::new("ab|bab").matches("abab"));
}

#[test]
fn compiled_corpus_matches_reference_matcher() {
    for &p in CORPUS {
        let lang = language(p);
        let m = Matcher::new(p);
        for len in 0..=10 {
            for w in words(len) {
                let word = encode(&w);
                assert_eq!(lang.contains(&word), m.matches(&w), "{p} on {w:?}");
                assert_eq!(lang.rdfa().accepts(&word), m.matches(&w), "{p} rdfa on {w:?}");
            }
        }
    }
}

#[test]
fn json_round_trip_preserves_languages() {
    for &p in CORPUS {
        let lang = language(p);
        for file in [AutomatonFile::from_dfa(lang.dfa()), AutomatonFile::from_rdfa(lang.rdfa())] {
            let text = file.to_json().unwrap();
            let back = Language::from_loaded(AutomatonFile::from_json(&text).unwrap().load().unwrap())
                .unwrap();
            assert!(back.dfa().equivalent(lang.dfa()).unwrap(), "{p}");
        }
    }
}

#[test]
fn one_sided_member_windows_accepted_for_every_prime() {
    let lang = language("b(aa)*");
    let analyzed = AnalyzedRdfa::new(lang.rdfa()).unwrap();
    let parts: Vec<_> = regwin::testers::enumerate_path_descriptions(&analyzed)
        .unwrap()
        .into_iter()
        .map(Arc::new)
        .collect();
    for n in (1..40).step_by(2) {
        let window = format!("b{}", "a".repeat(n - 1));
        for prefix in ["", "ab", "bbbab"] {
            let stream = encode(&format!("{prefix}{window}"));
            for p in prime_pool(n) {
                let mut t = OneSidedSuffixFreeTester::with_prime(parts.clone(), n, p);
                t.feed_all(&stream);
                assert!(t.decide().is_accept(), "n={n} p={p} prefix={prefix}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn language_membership_agrees(p in pattern(), w in stream(14)) {
        prop_assert_eq!(language(p).contains(&w), Matcher::new(p).matches(&to_string(&w)));
    }

    #[test]
    fn complement_and_minimize_preserve_semantics(p in pattern(), w in stream(12)) {
        let dfa = language(p).dfa().clone();
        prop_assert_eq!(dfa.complement().accepts(&w), !dfa.accepts(&w));
        prop_assert_eq!(dfa.minimize().accepts(&w), dfa.accepts(&w));
    }

    #[test]
    fn window_buffer_is_last_n(n in 0usize..10, w in stream(30)) {
        let mut buf = WindowBuffer::new(n, 0);
        for &a in &w {
            buf.push(a);
        }
        let expected = last_n(&to_string(&w), n, 'a');
        prop_assert_eq!(to_string(&buf.contents()), expected.clone());
        prop_assert_eq!(to_string(&active_window(&w, n, 0)), expected);
    }

    #[test]
    fn distances_agree_with_enumeration(p in pattern(), w in stream(8)) {
        let lang = language(p);
        let text = to_string(&w);
        let mem = members(&Matcher::new(p), w.len());
        let d = distance_to_language(&w, lang.dfa());
        let pd = prefix_distance_to_language(&w, lang.rdfa());
        prop_assert_eq!(d, dist_of(dist_to(&text, &mem)));
        prop_assert_eq!(pd, dist_of(pdist_to(&text, &mem)));
        prop_assert!(pd >= d);
    }

    #[test]
    fn deterministic_summaries_match_explicit_runs(p in pattern(), n in 0usize..10, w in stream(30)) {
        let analyzed = Arc::new(AnalyzedRdfa::new(language(p).rdfa()).unwrap());
        let mut tester = DeterministicTester::new(analyzed.clone(), n);
        tester.feed_all(&w);
        let window = active_window(&w, n, 0);
        if tester.is_exact_fallback() {
            prop_assert!(n < analyzed.num_states());
        } else {
            for q in 0..analyzed.num_states() {
                prop_assert_eq!(tester.summary(q).unwrap(), &path_summary_of(&window, q, &analyzed));
            }
        }
        let exact = {
            let mut e = ExactTester::from_rdfa(analyzed.rdfa(), n);
            e.feed_all(&w);
            e.decide().is_accept()
        };
        // Members are always accepted.
        prop_assert!(!exact || tester.decide().is_accept());
    }

    #[test]
    fn compact_summaries_match_explicit_runs(
        p in pattern(),
        n in 1usize..10,
        threshold in 1u64..12,
        w in stream(14),
    ) {
        let analyzed = Arc::new(AnalyzedRdfa::new(language(p).rdfa()).unwrap());
        let g = analyzed.g();
        let model = CounterModel::Threshold(ThresholdCounter::new(threshold));
        let mut tester = TwoSidedTester::with_model(analyzed.clone(), n, model, 0);
        tester.feed_all(&w);
        let padded: Vec<Symbol> = std::iter::repeat_n(0, n).chain(w.iter().copied()).collect();
        for q in 0..analyzed.num_states() {
            let explicit = path_summary_of(&padded, q, &analyzed);
            let triples = tester.summary(q).unwrap().triples();
            prop_assert_eq!(triples.len(), explicit.pairs().len());
            for (i, triple) in triples.iter().enumerate() {
                let newer: usize = explicit.pairs()[i + 1..].iter().map(|x| x.0).sum();
                prop_assert_eq!(triple.q, explicit.pairs()[i].1);
                prop_assert_eq!(triple.r, newer % g);
                prop_assert_eq!(triple.c, (newer as u64).min(threshold));
            }
        }
        let q0 = analyzed.rdfa().initial();
        let explicit = path_summary_of(&padded, q0, &analyzed);
        let pairs = explicit.pairs();
        let newer = |i: usize| pairs[i + 1..].iter().map(|x| x.0).sum::<usize>();
        let chosen = (0..pairs.len()).find(|&i| (newer(i) as u64) < threshold).unwrap();
        let expected = analyzed.acc_mod(pairs[chosen].1)[(n % g + g - newer(chosen) % g) % g];
        prop_assert_eq!(tester.decide().is_accept(), expected);
    }

    #[test]
    fn two_sided_accepts_members_with_exact_counters(p in pattern(), n in 1usize..10, w in stream(20)) {
        // With a threshold of n − t the counter state is exact and the
        // compact summary accepts every member window.
        let analyzed = Arc::new(AnalyzedRdfa::new(language(p).rdfa()).unwrap());
        prop_assume!(n > analyzed.t());
        let model = CounterModel::Threshold(ThresholdCounter::new((n - analyzed.t()) as u64));
        let mut tester = TwoSidedTester::with_model(analyzed.clone(), n, model, 0);
        tester.feed_all(&w);
        if Matcher::new(p).matches(&to_string(&active_window(&w, n, 0))) {
            prop_assert!(tester.decide().is_accept());
        }
    }

    #[test]
    fn canonical_sets_keep_membership(t in 0usize..8, d in 1usize..7, bits in any::<u64>()) {
        let set = EventuallyPeriodicSet::from_fn(t, d, |x| bits >> (x % 64) & 1 == 1);
        let canon = set.canonical();
        prop_assert!(canon.period() <= set.period());
        for x in 0..(t + 4 * d) {
            prop_assert_eq!(canon.contains(x), set.contains(x));
        }
    }

    #[test]
    fn derived_seeds_are_deterministic(parts in proptest::collection::vec(any::<u64>(), 0..5)) {
        prop_assert_eq!(derive_seed(&parts), derive_seed(&parts));
    }
}
