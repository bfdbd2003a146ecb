use super::TimedAutomaton;
use crate::rational::{int, Rational};
use crate::words::TimedWord;
use num_traits::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub location: usize,
    pub clocks: Vec<Rational>,
    /// Absolute date at which the state was entered.
    pub date: Rational,
}

/// A start state and a sequence of `(edge, absolute date)` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub start: State,
    pub steps: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub word: TimedWord,
    pub states: Vec<State>,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("step {step}: date goes backwards")]
    NonMonotone { step: usize },
    #[error("step {step}: edge does not leave the current location")]
    WrongSource { step: usize },
    #[error("step {step}: guard violated")]
    GuardViolated { step: usize },
    #[error("step {step}: no such edge")]
    NoSuchEdge { step: usize },
}

fn delayed(clocks: &[Rational], delay: &Rational) -> Vec<Rational> {
    clocks.iter().map(|c| c + delay).collect()
}

/// Fires edge `edge` at absolute date `t`; `None` when any run constraint fails.
pub fn step(a: &TimedAutomaton, s: &State, edge: usize, t: &Rational) -> Option<State> {
    let e = a.edges.get(edge)?;
    if e.src != s.location || t < &s.date {
        return None;
    }
    let mut clocks = delayed(&s.clocks, &(t - &s.date));
    if !e.guard.holds(&clocks) {
        return None;
    }
    for &r in &e.resets {
        clocks[r] = Rational::zero();
    }
    Some(State { location: e.dst, clocks, date: t.clone() })
}

/// Replays a run, returning its word and whether it is accepting.
pub fn check_run(a: &TimedAutomaton, run: &Run) -> Result<RunOutcome, RunError> {
    let mut states = vec![run.start.clone()];
    let mut events = Vec::new();
    for (i, (edge, t)) in run.steps.iter().enumerate() {
        let step_no = i + 1;
        let cur = states.last().unwrap();
        let e = a.edges.get(*edge).ok_or(RunError::NoSuchEdge { step: step_no })?;
        if t < &cur.date {
            return Err(RunError::NonMonotone { step: step_no });
        }
        if e.src != cur.location {
            return Err(RunError::WrongSource { step: step_no });
        }
        let next = step(a, cur, *edge, t).ok_or(RunError::GuardViolated { step: step_no })?;
        events.push((a.alphabet[e.label].clone(), t.clone()));
        states.push(next);
    }
    let first = &run.start;
    let initial = a.locations[first.location]
        .initial
        .as_ref()
        .is_some_and(|v| v.iter().zip(&first.clocks).all(|(n, c)| int(*n as i64) == *c))
        && first.date.is_zero();
    let last = states.last().unwrap();
    let accepted = initial && a.is_final(last.location, &last.clocks);
    Ok(RunOutcome { word: TimedWord::new(events), states, accepted })
}

/// Configurations reachable after reading `word` from the initial states (any number of runs).
fn simulate(a: &TimedAutomaton, word: &TimedWord) -> Vec<(State, usize)> {
    // Each configuration carries the number of distinct runs reaching it.
    let mut configs: Vec<(State, usize)> = a
        .initial_locations()
        .into_iter()
        .map(|q| {
            let v = a.locations[q].initial.as_ref().unwrap();
            (State { location: q, clocks: v.iter().map(|&n| int(n as i64)).collect(), date: int(0) }, 1)
        })
        .collect();
    for (letter, t) in word.events() {
        let Some(li) = a.letter_index(letter) else { return Vec::new() };
        let mut next: Vec<(State, usize)> = Vec::new();
        for (s, n) in &configs {
            for (ei, e) in a.edges.iter().enumerate() {
                if e.label != li || e.src != s.location {
                    continue;
                }
                if let Some(s2) = step(a, s, ei, t) {
                    match next.iter_mut().find(|(x, _)| *x == s2) {
                        Some((_, m)) => *m += n,
                        None => next.push((s2, *n)),
                    }
                }
            }
        }
        configs = next;
        if configs.is_empty() {
            break;
        }
    }
    configs
}

/// Membership of a timed word in L(A), for possibly nondeterministic A.
pub fn accepts(a: &TimedAutomaton, word: &TimedWord) -> bool {
    simulate(a, word).iter().any(|(s, _)| a.is_final(s.location, &s.clocks))
}

/// Number of distinct runs from an initial state reading `word` (accepting or not).
pub fn count_runs(a: &TimedAutomaton, word: &TimedWord) -> usize {
    simulate(a, word).iter().map(|(_, n)| n).sum()
}

/// Distinct locations reachable from `start`, used by tests and diagnostics.
pub fn reachable_locations(a: &TimedAutomaton, start: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(q) = stack.pop() {
        for e in a.edges.iter().filter(|e| e.src == q) {
            if seen.insert(e.dst) {
                stack.push(e.dst);
            }
        }
    }
    seen
}
