mod common;

use rand::seq::SliceRandom;
use rand::Rng;
use tempoclass::bandwidth::{enumerate_words, GridSystem, Limits};
use tempoclass::rational::{int, ratio};
use tempoclass::ta::{check_run, count_runs, step, Run};
use tempoclass::{corpus, parse_automaton, serialize_automaton, TimedAutomaton, TimedWord};

fn random_automata(count: usize, seed: u64) -> Vec<TimedAutomaton> {
    let mut rng = common::rng(seed);
    (0..count)
        .map(|_| {
            let text = common::random_automaton_text(&mut rng, 3, 3, 3);
            parse_automaton(&text).unwrap_or_else(|e| panic!("{e}\n{text}"))
        })
        .collect()
}

fn everything() -> Vec<TimedAutomaton> {
    corpus::NAMES.iter().map(|n| corpus::automaton(n)).chain(random_automata(300, 11)).collect()
}

#[test]
fn serialization_round_trips() {
    for a in everything() {
        let text = serialize_automaton(&a);
        let back = parse_automaton(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(back, a, "\n{text}");
        assert_eq!(serialize_automaton(&back), text);
    }
}

#[test]
fn stepped_runs_replay() {
    let mut rng = common::rng(3);
    let mut replayed = 0;
    for a in everything() {
        let Some(start) = a.initial_state() else { continue };
        for _ in 0..100 {
            let mut s = start.clone();
            let mut steps = Vec::new();
            let mut states = vec![s.clone()];
            for _ in 0..rng.gen_range(1..=8) {
                let t = &s.date + ratio(rng.gen_range(0..=16), 8);
                let enabled: Vec<(usize, _)> =
                    (0..a.edges.len()).filter_map(|e| step(&a, &s, e, &t).map(|n| (e, n))).collect();
                let Some((e, next)) = enabled.choose(&mut rng).cloned() else { continue };
                steps.push((e, t));
                states.push(next.clone());
                s = next;
            }
            let run = Run { start: start.clone(), steps };
            let out = check_run(&a, &run).unwrap_or_else(|e| panic!("{}: {e}", a.name));
            assert_eq!(out.states, states);
            assert_eq!(out.word.len(), run.steps.len());
            let last = states.last().unwrap();
            assert_eq!(out.accepted, a.is_final(last.location, &last.clocks));
            replayed += 1;
        }
    }
    assert!(replayed >= 1000);
}

#[test]
fn deterministic_automata_have_at_most_one_run() {
    let mut rng = common::rng(4);
    let g = ratio(1, 4);
    let t = int(3);
    for a in everything() {
        for _ in 0..300 {
            let len = rng.gen_range(0..=6);
            let mut dates: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=24)).collect();
            dates.sort();
            let w = TimedWord::new(
                dates.into_iter().map(|d| (a.alphabet.choose(&mut rng).unwrap().clone(), ratio(d, 4))).collect(),
            );
            assert!(count_runs(&a, &w) <= 1, "{}: {w}", a.name);
        }
        let sys = GridSystem::from_automaton(&a, &g).unwrap();
        let limits = Limits { max_words: 200_000, max_events: 3, max_delay: None };
        for w in enumerate_words(&sys, &t, limits).unwrap() {
            assert_eq!(count_runs(&a, &w), 1, "{}: accepted {w}", a.name);
        }
    }
}
