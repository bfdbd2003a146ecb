//! Timed-automaton data model, textual format, determinism and run semantics.

mod determinism;
mod parse;
mod semantics;

pub use determinism::{check_deterministic, relabel_deterministic, DeterminismReport, Relabeling, Violation};
pub use parse::{parse_automaton, serialize_automaton};
pub use semantics::{accepts, check_run, count_runs, reachable_locations, step, Run, RunError, RunOutcome, State};

use crate::rational::{int, Rational};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TaError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}: undeclared {kind} `{name}`")]
    Undeclared { line: usize, kind: &'static str, name: String },
    #[error("line {line}: equality guard conflicts with other constraints on `{clock}`")]
    EqualityConflict { line: usize, clock: String },
    #[error("automaton has no initial location")]
    NoInitial,
    #[error("relabeling needs a unique initial location, found {0}")]
    AmbiguousInitial(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    pub fn holds(self, value: &Rational, bound: &Rational) -> bool {
        match self {
            Relation::Lt => value < bound,
            Relation::Le => value <= bound,
            Relation::Gt => value > bound,
            Relation::Ge => value >= bound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClockConstraint {
    pub clock: usize,
    pub relation: Relation,
    pub bound: u32,
}

impl ClockConstraint {
    pub fn holds(&self, clocks: &[Rational]) -> bool {
        self.relation.holds(&clocks[self.clock], &int(self.bound as i64))
    }
}

/// Per-clock interval `lo ⋈ x ⋈ hi`, with strictness flags and integer endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: u32,
    pub lo_strict: bool,
    pub hi: Option<u32>,
    pub hi_strict: bool,
}

impl Interval {
    pub const FULL: Interval = Interval { lo: 0, lo_strict: false, hi: None, hi_strict: false };

    pub fn is_empty(&self) -> bool {
        match self.hi {
            None => false,
            Some(hi) => self.lo > hi || (self.lo == hi && (self.lo_strict || self.hi_strict)),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_strict) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo, self.lo_strict),
            std::cmp::Ordering::Less => (other.lo, other.lo_strict),
            std::cmp::Ordering::Equal => (self.lo, self.lo_strict || other.lo_strict),
        };
        let (hi, hi_strict) = match (self.hi, other.hi) {
            (None, None) => (None, false),
            (Some(h), None) => (Some(h), self.hi_strict),
            (None, Some(h)) => (Some(h), other.hi_strict),
            (Some(a), Some(b)) => match a.cmp(&b) {
                std::cmp::Ordering::Less => (Some(a), self.hi_strict),
                std::cmp::Ordering::Greater => (Some(b), other.hi_strict),
                std::cmp::Ordering::Equal => (Some(a), self.hi_strict || other.hi_strict),
            },
        };
        Interval { lo, lo_strict, hi, hi_strict }
    }

    /// Some point of a non-empty interval (midpoint when bounded, else just above `lo`).
    pub fn witness(&self) -> Rational {
        match self.hi {
            Some(hi) => (int(self.lo as i64) + int(hi as i64)) / int(2),
            None => int(self.lo as i64 + 1),
        }
    }
}

/// Conjunction of clock constraints; the empty conjunction is `true`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Guard {
    pub constraints: Vec<ClockConstraint>,
}

impl Guard {
    pub fn always() -> Guard {
        Guard::default()
    }

    pub fn holds(&self, clocks: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.holds(clocks))
    }

    pub fn max_bound(&self) -> u32 {
        self.constraints.iter().map(|c| c.bound).max().unwrap_or(0)
    }

    pub fn intervals(&self, clocks: usize) -> Vec<Interval> {
        let mut out = vec![Interval::FULL; clocks];
        for c in &self.constraints {
            let b = c.bound;
            let iv = match c.relation {
                Relation::Lt => Interval { hi: Some(b), hi_strict: true, ..Interval::FULL },
                Relation::Le => Interval { hi: Some(b), hi_strict: false, ..Interval::FULL },
                Relation::Gt => Interval { lo: b, lo_strict: true, ..Interval::FULL },
                Relation::Ge => Interval { lo: b, lo_strict: false, ..Interval::FULL },
            };
            out[c.clock] = out[c.clock].intersect(&iv);
        }
        out
    }

    pub fn is_satisfiable(&self, clocks: usize) -> bool {
        self.intervals(clocks).iter().all(|iv| !iv.is_empty())
    }

    /// A clock vector satisfying both guards, if any.
    pub fn common_witness(&self, other: &Guard, clocks: usize) -> Option<Vec<Rational>> {
        let a = self.intervals(clocks);
        let b = other.intervals(clocks);
        a.iter()
            .zip(&b)
            .map(|(x, y)| {
                let iv = x.intersect(y);
                (!iv.is_empty()).then(|| iv.witness())
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: usize,
    pub guard: Guard,
    /// Sorted, deduplicated.
    pub resets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub name: String,
    /// The unique initial clock vector, when the location is initial.
    pub initial: Option<Vec<u32>>,
    /// Final constraint; `None` means the location is not accepting.
    pub accepting: Option<Guard>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimedAutomaton {
    pub name: String,
    pub clocks: Vec<String>,
    pub alphabet: Vec<String>,
    pub locations: Vec<Location>,
    pub edges: Vec<Edge>,
    pub max_constant: u32,
}

impl TimedAutomaton {
    pub fn num_clocks(&self) -> usize {
        self.clocks.len()
    }

    pub fn compute_max_constant(&self) -> u32 {
        let guards = self.edges.iter().map(|e| e.guard.max_bound());
        let finals = self.locations.iter().filter_map(|l| l.accepting.as_ref()).map(Guard::max_bound);
        let inits = self
            .locations
            .iter()
            .filter_map(|l| l.initial.as_ref())
            .flat_map(|v| v.iter().copied());
        guards.chain(finals).chain(inits).max().unwrap_or(0)
    }

    pub fn initial_locations(&self) -> Vec<usize> {
        (0..self.locations.len()).filter(|&i| self.locations[i].initial.is_some()).collect()
    }

    /// The unique initial state, if exactly one location is initial.
    pub fn initial_state(&self) -> Option<State> {
        match self.initial_locations().as_slice() {
            [q] => {
                let v = self.locations[*q].initial.as_ref().unwrap();
                Some(State {
                    location: *q,
                    clocks: v.iter().map(|&c| int(c as i64)).collect(),
                    date: int(0),
                })
            }
            _ => None,
        }
    }

    pub fn is_final(&self, location: usize, clocks: &[Rational]) -> bool {
        self.locations[location].accepting.as_ref().is_some_and(|g| g.holds(clocks))
    }

    pub fn edge_id(&self, edge: usize) -> String {
        format!("d{}", edge + 1)
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    pub fn location_index(&self, name: &str) -> Option<usize> {
        self.locations.iter().position(|l| l.name == name)
    }
}
