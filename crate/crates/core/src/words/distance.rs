use super::TimedWord;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;

/// A pseudo-distance value; `Infinite` arises from `min ∅`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(Rational),
    Infinite,
}

impl Distance {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Distance::Finite(r) => Some(r),
            Distance::Infinite => None,
        }
    }

    pub fn le(&self, eps: &Rational) -> bool {
        matches!(self, Distance::Finite(d) if d <= eps)
    }

    pub fn add(&self, other: &Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(r) => write!(f, "{}", crate::rational::format_rational(r)),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// max over events of `w` of the gap to the nearest same-letter event of `v`.
pub fn directed_distance(w: &TimedWord, v: &TimedWord) -> Distance {
    let mut worst = Distance::Finite(Rational::zero());
    for (a, t) in w.events() {
        let nearest = v
            .events()
            .iter()
            .filter(|(b, _)| b == a)
            .map(|(_, s)| (t - s).abs())
            .min();
        let d = nearest.map_or(Distance::Infinite, Distance::Finite);
        if d > worst {
            worst = d;
        }
        if worst == Distance::Infinite {
            break;
        }
    }
    worst
}

pub fn distance(w: &TimedWord, v: &TimedWord) -> Distance {
    directed_distance(w, v).max(directed_distance(v, w))
}

/// Words rescaled to a common integer time unit so that many pairwise distances are cheap.
pub struct Metric {
    scale: BigInt,
    words: Vec<Vec<Vec<i128>>>,
}

const INF: i128 = i128::MAX;

impl Metric {
    /// Returns `None` when the common denominator or scaled dates overflow `i128`.
    pub fn new(words: &[TimedWord]) -> Option<Metric> {
        let mut scale = BigInt::one();
        for w in words {
            for (_, t) in w.events() {
                scale = scale.lcm(t.denom());
            }
        }
        let mut letters: HashMap<&str, usize> = HashMap::new();
        for w in words {
            for (a, _) in w.events() {
                let n = letters.len();
                letters.entry(a.as_str()).or_insert(n);
            }
        }
        let mut out = Vec::with_capacity(words.len());
        for w in words {
            let mut by_letter = vec![Vec::new(); letters.len()];
            for (a, t) in w.events() {
                let scaled = (t.numer() * (&scale / t.denom())).to_i128()?;
                by_letter[letters[a.as_str()]].push(scaled);
            }
            for dates in &mut by_letter {
                dates.dedup();
            }
            out.push(by_letter);
        }
        Some(Metric { scale, words: out })
    }

    fn directed(&self, i: usize, j: usize) -> i128 {
        let (w, v) = (&self.words[i], &self.words[j]);
        let mut worst = 0i128;
        for (dates, other) in w.iter().zip(v) {
            if dates.is_empty() {
                continue;
            }
            if other.is_empty() {
                return INF;
            }
            for &t in dates {
                let k = other.partition_point(|&s| s < t);
                let mut best = INF;
                if k < other.len() {
                    best = best.min(other[k] - t);
                }
                if k > 0 {
                    best = best.min(t - other[k - 1]);
                }
                worst = worst.max(best);
            }
        }
        worst
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// d(wᵢ, wⱼ) ≤ ε, decided exactly.
    pub fn within(&self, i: usize, j: usize, eps: &Rational) -> bool {
        let d = self.directed(i, j).max(self.directed(j, i));
        if d == INF {
            return false;
        }
        // d/scale ≤ p/q  ⇔  d·q ≤ p·scale
        BigInt::from(d) * eps.denom() <= eps.numer() * &self.scale
    }

    pub fn distance(&self, i: usize, j: usize) -> Distance {
        let d = self.directed(i, j).max(self.directed(j, i));
        if d == INF {
            Distance::Infinite
        } else {
            Distance::Finite(Rational::new(BigInt::from(d), self.scale.clone()))
        }
    }
}
