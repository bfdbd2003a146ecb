//! The ten reference automata, embedded as source text.

use crate::ta::{parse_automaton, TimedAutomaton};

pub const NAMES: [&str; 10] = ["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10"];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "a1" => include_str!("../corpus/a1.ta"),
        "a2" => include_str!("../corpus/a2.ta"),
        "a3" => include_str!("../corpus/a3.ta"),
        "a4" => include_str!("../corpus/a4.ta"),
        "a5" => include_str!("../corpus/a5.ta"),
        "a6" => include_str!("../corpus/a6.ta"),
        "a7" => include_str!("../corpus/a7.ta"),
        "a8" => include_str!("../corpus/a8.ta"),
        "a9" => include_str!("../corpus/a9.ta"),
        "a10" => include_str!("../corpus/a10.ta"),
        _ => return None,
    })
}

/// Parses a corpus member; panics on unknown names (test and bench convenience).
pub fn automaton(name: &str) -> TimedAutomaton {
    let src = source(name).unwrap_or_else(|| panic!("unknown corpus automaton {name}"));
    parse_automaton(src).expect("corpus automata parse")
}
