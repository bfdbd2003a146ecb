//! Bandwidth classification of deterministic timed automata.
//!
//! A timed automaton is region-split into an RsTA, its edges are abstracted into
//! orbit matrices over three small semirings, and the reachable orbit monoids are
//! saturated to decide whether the language is meager, normal or obese. The
//! [`bandwidth`] module estimates ε-capacities on grid surrogates to cross-check
//! the structural verdicts empirically.

pub mod bandwidth;
pub mod classify;
pub mod corpus;
pub mod dbm;
pub mod orbit;
pub mod rational;
pub mod region;
pub mod ta;
pub mod words;

pub use classify::{classify, Class, Fatness, ObesityType, Verdict};
pub use rational::Rational;
pub use region::{region_split, Region, Rsta};
pub use ta::{parse_automaton, serialize_automaton, TimedAutomaton};
pub use words::TimedWord;
