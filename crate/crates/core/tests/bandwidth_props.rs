mod common;

use std::collections::BTreeSet;
use tempoclass::bandwidth::{enumerate_words, symbolic_capacity, GridSystem, Limits};
use tempoclass::rational::{int, ratio};
use tempoclass::ta::accepts;
use tempoclass::{classify, corpus, Rational, TimedAutomaton, TimedWord};

type Events = Vec<(String, Rational)>;

fn enumerated(a: &TimedAutomaton, g: &Rational, t: &Rational, events: usize) -> BTreeSet<Events> {
    let sys = GridSystem::from_automaton(a, g).unwrap();
    let limits = Limits { max_words: 1_000_000, max_events: events, max_delay: Some(100) };
    enumerate_words(&sys, t, limits).unwrap().into_iter().map(|w| w.events().to_vec()).collect()
}

/// Every word with at most `events` events on the grid `1/den` up to `horizon`, filtered by `accepts`.
fn brute_force(a: &TimedAutomaton, den: i64, horizon: i64, events: usize) -> BTreeSet<Events> {
    let mut out = BTreeSet::new();
    let mut frontier: Vec<Events> = vec![Vec::new()];
    for _ in 0..=events {
        let mut next = Vec::new();
        for w in frontier {
            if accepts(a, &TimedWord::new(w.clone())) {
                out.insert(w.clone());
            }
            if w.len() == events {
                continue;
            }
            let from = w.last().map_or(0, |(_, d)| (d * int(den)).to_integer().try_into().unwrap());
            for tick in from..=horizon * den {
                for l in &a.alphabet {
                    let mut v = w.clone();
                    v.push((l.clone(), ratio(tick, den)));
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for name in corpus::NAMES {
        let a = corpus::automaton(name);
        let got = enumerated(&a, &ratio(1, 2), &int(4), 4);
        let want = brute_force(&a, 2, 4, 4);
        assert!(!want.is_empty(), "{name}");
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn periodic_automaton_words_up_to_ten() {
    let got = enumerated(&corpus::automaton("a5"), &int(1), &int(10), 10);
    let mut want = BTreeSet::new();
    let ev = |l: &str, d: i64| (l.to_string(), int(d));
    want.insert(Vec::new());
    for x in ["a", "b"] {
        want.insert(vec![ev(x, 3)]);
        want.insert(vec![ev(x, 3), ev("b", 5)]);
        for y in ["a", "b"] {
            want.insert(vec![ev(x, 3), ev("b", 5), ev(y, 8)]);
            want.insert(vec![ev(x, 3), ev("b", 5), ev(y, 8), ev("b", 10)]);
        }
    }
    assert_eq!(want.len(), 13);
    assert_eq!(got, want);
}

#[test]
fn alternating_automaton_words_alternate() {
    let a = corpus::automaton("a6");
    let words = enumerated(&a, &ratio(1, 2), &int(2), 6);
    assert!(words.len() > 1);
    for w in &words {
        assert!(accepts(&a, &TimedWord::new(w.clone())));
        for (i, (l, _)) in w.iter().enumerate() {
            assert_eq!(l, if i % 2 == 0 { "a" } else { "b" }, "{w:?}");
        }
    }
}

#[test]
fn zero_duration_words_only_use_date_zero() {
    for name in corpus::NAMES {
        for w in enumerated(&corpus::automaton(name), &ratio(1, 2), &int(0), 3) {
            assert!(w.iter().all(|(_, d)| *d == int(0)), "{name}: {w:?}");
        }
    }
}

fn bits(v: Option<f64>) -> f64 {
    v.unwrap_or(f64::NEG_INFINITY)
}

#[test]
fn symbolic_capacity_is_monotone() {
    let ts = [int(2), int(4), int(8)];
    let eps = [ratio(1, 2), ratio(1, 4), ratio(1, 8)];
    for name in corpus::NAMES {
        let a = corpus::automaton(name);
        let table: Vec<Vec<f64>> =
            ts.iter().map(|t| eps.iter().map(|e| bits(symbolic_capacity(&a, t, e).unwrap())).collect()).collect();
        for i in 0..ts.len() {
            for j in 0..eps.len() {
                if i + 1 < ts.len() {
                    assert!(table[i + 1][j] >= table[i][j] - 1.0, "{name}: not monotone in T: {table:?}");
                }
                if j + 1 < eps.len() {
                    assert!(table[i][j + 1] >= table[i][j] - 1.0, "{name}: not monotone in ε: {table:?}");
                }
            }
        }
    }
}

/// Grid sampling loses the runs of a8 and a10: their cycles need a gap that grows every lap
/// yet stays below one, which a fixed grid step can only sustain for finitely many laps.
const GRID_BLIND: [&str; 2] = ["a8", "a10"];

#[test]
fn empirical_class_matches_structural_class() {
    for name in corpus::NAMES {
        let structural = classify(&corpus::automaton(name)).unwrap().class;
        let f = common::fit(name).unwrap();
        let empirical = f.model.class();
        if GRID_BLIND.contains(&name) {
            eprintln!("{name}: structural {structural:?}, grid fit {:?} (constant {:.3})", f.model, f.constant);
            continue;
        }
        assert_eq!(empirical, structural, "{name}: fit {:?}, ratio {}", f.model, f.residual_ratio);
    }
}
