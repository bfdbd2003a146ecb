use super::{distance, Metric, TimedWord};
use crate::rational::Rational;
use thiserror::Error;

/// Largest set handled by the exhaustive oracles.
pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("exact search limited to {EXACT_LIMIT} words, got {0}")]
    TooLarge(usize),
}

/// Pairwise `d ≤ ε` relation, computed with the integer metric when possible.
fn closeness(words: &[TimedWord], eps: &Rational) -> Vec<Vec<bool>> {
    let n = words.len();
    let metric = Metric::new(words);
    let mut close = vec![vec![false; n]; n];
    for i in 0..n {
        close[i][i] = true;
        for j in i + 1..n {
            let c = match &metric {
                Some(m) => m.within(i, j, eps),
                None => distance(&words[i], &words[j]).le(eps),
            };
            close[i][j] = c;
            close[j][i] = c;
        }
    }
    close
}

fn insertion_order(words: &[TimedWord]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..words.len()).collect();
    idx.sort_by(|&a, &b| words[a].order_key().cmp(&words[b].order_key()));
    idx
}

/// Maximal subset with pairwise distance `> ε`, scanning in the canonical insertion order.
pub fn greedy_separated(words: &[TimedWord], eps: &Rational) -> Vec<TimedWord> {
    let metric = Metric::new(words);
    let far = |i: usize, j: usize| match &metric {
        Some(m) => !m.within(i, j, eps),
        None => !distance(&words[i], &words[j]).le(eps),
    };
    let mut chosen: Vec<usize> = Vec::new();
    for i in insertion_order(words) {
        if chosen.iter().all(|&j| far(i, j)) {
            chosen.push(i);
        }
    }
    chosen.into_iter().map(|i| words[i].clone()).collect()
}

/// Greedy set cover by closed ε-balls centred on members; ties go to the earliest word in
/// insertion order.
pub fn greedy_net(words: &[TimedWord], eps: &Rational) -> Vec<TimedWord> {
    let close = closeness(words, eps);
    let n = words.len();
    let order = insertion_order(words);
    let mut gain: Vec<usize> = (0..n).map(|i| close[i].iter().filter(|&&c| c).count()).collect();
    let mut covered = vec![false; n];
    let mut remaining = n;
    let mut net = Vec::new();
    while remaining > 0 {
        let mut best = order[0];
        for &i in &order {
            if gain[i] > gain[best] {
                best = i;
            }
        }
        for j in 0..n {
            if close[best][j] && !covered[j] {
                covered[j] = true;
                remaining -= 1;
                for k in 0..n {
                    if close[k][j] {
                        gain[k] -= 1;
                    }
                }
            }
        }
        net.push(words[best].clone());
    }
    net
}

fn masks(words: &[TimedWord], eps: &Rational) -> Result<Vec<u32>, CoverError> {
    if words.len() > EXACT_LIMIT {
        return Err(CoverError::TooLarge(words.len()));
    }
    let close = closeness(words, eps);
    Ok(close
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, &c)| c).fold(0u32, |m, (j, _)| m | (1 << j)))
        .collect())
}

/// log₂ of the largest ε-separated subset (exhaustive). An empty set gives `-inf`.
pub fn exact_capacity(words: &[TimedWord], eps: &Rational) -> Result<f64, CoverError> {
    let close = masks(words, eps)?;
    let n = words.len();
    let mut best = 0u32;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones();
        if size <= best {
            continue;
        }
        let independent = (0..n).filter(|&i| mask & (1 << i) != 0).all(|i| close[i] & mask == 1 << i);
        if independent {
            best = size;
        }
    }
    Ok((best as f64).log2())
}

/// log₂ of the smallest ε-net drawn from the set itself (exhaustive). An empty set gives `-inf`.
pub fn exact_entropy(words: &[TimedWord], eps: &Rational) -> Result<f64, CoverError> {
    let close = masks(words, eps)?;
    let n = words.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best = n as u32;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones();
        if size >= best {
            continue;
        }
        let cover = (0..n).filter(|&i| mask & (1 << i) != 0).fold(0u32, |c, i| c | close[i]);
        if cover == full {
            best = size;
        }
    }
    Ok((best as f64).log2())
}
