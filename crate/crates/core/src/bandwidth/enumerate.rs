use super::system::{Config, GridError, GridSystem};
use crate::rational::Rational;
use crate::words::TimedWord;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("enumeration exceeded {0} words")]
    TooManyWords(usize),
}

/// Bounds on explicit enumeration.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_words: usize,
    /// Longest word explored; needed because zero delays allow unboundedly many events.
    pub max_events: usize,
    /// Longest single delay, in time units; `None` means the maximal constant plus one.
    pub max_delay: Option<u32>,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_words: 200_000, max_events: 6, max_delay: None }
    }
}

/// A word as `(letter index, date in grid steps)`.
pub type RawWord = Vec<(u16, u32)>;

struct Search<'a> {
    sys: &'a GridSystem,
    horizon: u32,
    delay_cap: u32,
    limits: Limits,
    found: BTreeSet<RawWord>,
}

impl Search<'_> {
    fn visit(&mut self, config: &Config, date: u32, word: &mut RawWord) -> Result<(), EnumError> {
        if self.sys.is_final(config) {
            self.found.insert(word.clone());
            if self.found.len() > self.limits.max_words {
                return Err(EnumError::TooManyWords(self.limits.max_words));
            }
        }
        if word.len() >= self.limits.max_events {
            return Ok(());
        }
        let max_d = self.delay_cap.min(self.horizon - date);
        for d in 0..=max_d {
            let delayed = self.sys.delay(config, d);
            let next: Vec<(u16, Config)> = self.sys.fire(&delayed).collect();
            for (letter, c) in next {
                word.push((letter, date + d));
                self.visit(&c, date + d, word)?;
                word.pop();
            }
        }
        Ok(())
    }
}

/// All accepted words with dates on the grid `g`, duration at most `t`, per-step delays at
/// most the delay cap and at most `max_events` events, as raw words in sorted order.
pub fn enumerate_raw(sys: &GridSystem, t: &Rational, limits: Limits) -> Result<Vec<RawWord>, EnumError> {
    let step = sys.step();
    let horizon = step.ticks_exact(t).ok_or_else(|| GridError::NotMultiple(crate::rational::format_rational(t)))? as u32;
    let cap_units = limits.max_delay.unwrap_or(sys.max_constant() + 1);
    let delay_cap = step.ticks_floor(&Rational::from_integer(cap_units.into())) as u32;
    let Some(init) = sys.initial() else { return Ok(Vec::new()) };
    let mut s = Search { sys, horizon, delay_cap, limits, found: BTreeSet::new() };
    s.visit(&init, 0, &mut Vec::new())?;
    Ok(s.found.into_iter().collect())
}

pub fn raw_to_word(sys: &GridSystem, raw: &RawWord) -> TimedWord {
    let step = sys.step();
    TimedWord::new(raw.iter().map(|&(l, d)| (sys.alphabet[l as usize].clone(), step.date(d as u64))).collect())
}

/// [`enumerate_raw`] converted to timed words ordered by (duration, length, events).
pub fn enumerate_words(sys: &GridSystem, t: &Rational, limits: Limits) -> Result<Vec<TimedWord>, EnumError> {
    let mut words: Vec<TimedWord> = enumerate_raw(sys, t, limits)?.iter().map(|r| raw_to_word(sys, r)).collect();
    words.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
    Ok(words)
}
