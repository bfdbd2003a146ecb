use super::{TaError, TimedAutomaton};
use crate::rational::Rational;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub first: usize,
    pub second: usize,
    /// A clock vector satisfying both guards.
    pub witness: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminismReport {
    pub unique_initial: bool,
    pub violations: Vec<Violation>,
}

impl DeterminismReport {
    pub fn is_deterministic(&self) -> bool {
        self.unique_initial && self.violations.is_empty()
    }
}

fn overlapping_pairs(a: &TimedAutomaton) -> Vec<Violation> {
    let n = a.num_clocks();
    let mut out = Vec::new();
    for (i, e1) in a.edges.iter().enumerate() {
        for (j, e2) in a.edges.iter().enumerate().skip(i + 1) {
            if e1.src != e2.src || e1.label != e2.label {
                continue;
            }
            if let Some(witness) = e1.guard.common_witness(&e2.guard, n) {
                out.push(Violation { first: i, second: j, witness });
            }
        }
    }
    out
}

/// Unique initial vector and pairwise-disjoint guards for same-label edges of a location.
pub fn check_deterministic(a: &TimedAutomaton) -> DeterminismReport {
    DeterminismReport { unique_initial: a.initial_locations().len() == 1, violations: overlapping_pairs(a) }
}

#[derive(Debug, Clone)]
pub struct Relabeling {
    pub automaton: TimedAutomaton,
    /// New letter index to original letter index.
    pub renaming: Vec<usize>,
}

/// Gives every edge involved in a guard overlap its own fresh letter.
pub fn relabel_deterministic(a: &TimedAutomaton) -> Result<Relabeling, TaError> {
    let initials = a.initial_locations().len();
    if initials != 1 {
        return Err(TaError::AmbiguousInitial(initials));
    }
    let conflicting: std::collections::BTreeSet<usize> =
        overlapping_pairs(a).iter().flat_map(|v| [v.first, v.second]).collect();
    let mut out = a.clone();
    let mut renaming: Vec<usize> = (0..a.alphabet.len()).collect();
    let mut counters: BTreeMap<usize, usize> = BTreeMap::new();
    for &ei in &conflicting {
        let original = a.edges[ei].label;
        let k = counters.entry(original).or_insert(0);
        let name = loop {
            *k += 1;
            let candidate = format!("{}_{}", a.alphabet[original], k);
            if !out.alphabet.contains(&candidate) {
                break candidate;
            }
        };
        out.alphabet.push(name);
        renaming.push(original);
        out.edges[ei].label = out.alphabet.len() - 1;
    }
    Ok(Relabeling { automaton: out, renaming })
}
