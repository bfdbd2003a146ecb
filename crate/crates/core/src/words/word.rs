use crate::rational::{format_rational, parse_rational, Rational};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("line {line}: expected `<letter> <date>`")]
    Malformed { line: usize },
    #[error("line {line}: bad date `{text}`")]
    BadDate { line: usize, text: String },
    #[error("line {line}: dates must be non-negative and non-decreasing")]
    NonMonotone { line: usize },
}

/// A finite sequence of `(letter, absolute date)` with non-decreasing dates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TimedWord {
    events: Vec<(String, Rational)>,
}

impl TimedWord {
    /// Panics if dates are negative or decreasing.
    pub fn new(events: Vec<(String, Rational)>) -> TimedWord {
        assert!(Self::well_formed(&events), "dates must be non-negative and non-decreasing");
        TimedWord { events }
    }

    pub fn empty() -> TimedWord {
        TimedWord::default()
    }

    fn well_formed(events: &[(String, Rational)]) -> bool {
        events.first().map_or(true, |(_, t)| *t >= Rational::zero()) && events.windows(2).all(|w| w[0].1 <= w[1].1)
    }

    pub fn events(&self) -> &[(String, Rational)] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn duration(&self) -> Rational {
        self.events.last().map_or_else(Rational::zero, |(_, t)| t.clone())
    }

    /// Number of events strictly later than their predecessor (t₀ = 0).
    pub fn non_instant_count(&self) -> usize {
        let mut prev = Rational::zero();
        let mut n = 0;
        for (_, t) in &self.events {
            if *t > prev {
                n += 1;
            }
            prev = t.clone();
        }
        n
    }

    pub fn untimed(&self) -> Vec<&str> {
        self.events.iter().map(|(a, _)| a.as_str()).collect()
    }

    /// Parses one event per line: `<letter> <date>`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<TimedWord, WordError> {
        let mut events = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let mut parts = body.split_whitespace();
            let (Some(letter), Some(date), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(WordError::Malformed { line });
            };
            let t = parse_rational(date).ok_or_else(|| WordError::BadDate { line, text: date.to_string() })?;
            let prev = events.last().map_or_else(Rational::zero, |(_, p): &(String, Rational)| p.clone());
            if t < prev {
                return Err(WordError::NonMonotone { line });
            }
            events.push((letter.to_string(), t));
        }
        Ok(TimedWord { events })
    }

    /// Sort key used for deterministic greedy insertion: duration, length, then events.
    pub fn order_key(&self) -> (Rational, usize, &[(String, Rational)]) {
        (self.duration(), self.len(), &self.events)
    }
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, t) in &self.events {
            writeln!(f, "{a} {}", format_rational(t))?;
        }
        Ok(())
    }
}

/// Parses a set file: words separated by blank lines.
pub fn parse_word_set(text: &str) -> Result<Vec<TimedWord>, WordError> {
    let mut out = Vec::new();
    let mut block = String::new();
    let mut offset = 0;
    let flush = |block: &mut String, offset: usize, out: &mut Vec<TimedWord>| -> Result<(), WordError> {
        if !block.trim().is_empty() {
            let w = TimedWord::parse(block).map_err(|e| shift(e, offset))?;
            out.push(w);
        }
        block.clear();
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            flush(&mut block, offset, &mut out)?;
            offset = i + 1;
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    flush(&mut block, offset, &mut out)?;
    Ok(out)
}

fn shift(e: WordError, by: usize) -> WordError {
    match e {
        WordError::Malformed { line } => WordError::Malformed { line: line + by },
        WordError::BadDate { line, text } => WordError::BadDate { line: line + by, text },
        WordError::NonMonotone { line } => WordError::NonMonotone { line: line + by },
    }
}
