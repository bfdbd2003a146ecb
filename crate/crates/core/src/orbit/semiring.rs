use serde::Serialize;
use std::fmt::Debug;
use std::hash::Hash;

/// A finite commutative semiring used as matrix entries of orbits.
pub trait Semiring: Copy + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    const ALL: &'static [Self];
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn label(self) -> &'static str;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Semiring for bool {
    const ALL: &'static [bool] = &[false, true];

    fn zero() -> bool {
        false
    }

    fn one() -> bool {
        true
    }

    fn add(self, other: bool) -> bool {
        self || other
    }

    fn mul(self, other: bool) -> bool {
        self && other
    }

    fn label(self) -> &'static str {
        if self {
            "1"
        } else {
            "0"
        }
    }
}

/// Λ_f: how many timings connect two vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Freedom {
    Zero,
    Narrow,
    Wide,
}

impl Semiring for Freedom {
    const ALL: &'static [Freedom] = &[Freedom::Zero, Freedom::Narrow, Freedom::Wide];

    fn zero() -> Freedom {
        Freedom::Zero
    }

    fn one() -> Freedom {
        Freedom::Narrow
    }

    fn add(self, other: Freedom) -> Freedom {
        use Freedom::*;
        match (self, other) {
            (Zero, x) | (x, Zero) => x,
            _ => Wide,
        }
    }

    fn mul(self, other: Freedom) -> Freedom {
        use Freedom::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Narrow, Narrow) => Narrow,
            _ => Wide,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Freedom::Zero => "0",
            Freedom::Narrow => "narrow",
            Freedom::Wide => "wide",
        }
    }
}

/// Λ_d: coarse duration class of the timings connecting two vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Speed {
    Zero,
    Instant,
    Fast,
    Slow,
}

impl Semiring for Speed {
    const ALL: &'static [Speed] = &[Speed::Zero, Speed::Instant, Speed::Fast, Speed::Slow];

    fn zero() -> Speed {
        Speed::Zero
    }

    fn one() -> Speed {
        Speed::Instant
    }

    fn add(self, other: Speed) -> Speed {
        use Speed::*;
        match (self, other) {
            (Zero, x) | (x, Zero) => x,
            (Instant, Instant) => Instant,
            (Slow, Slow) => Slow,
            _ => Fast,
        }
    }

    fn mul(self, other: Speed) -> Speed {
        use Speed::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Slow, _) | (_, Slow) => Slow,
            (Fast, _) | (_, Fast) => Fast,
            (Instant, Instant) => Instant,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Speed::Zero => "0",
            Speed::Instant => "instant",
            Speed::Fast => "fast",
            Speed::Slow => "slow",
        }
    }
}
