//! Exact counting of coarse signatures of grid words by a subset construction.
//!
//! A signature records, per time slot, the set of letters occurring in it. Counting the
//! distinct signatures of accepted words needs no enumeration: configurations consistent with
//! a signature prefix are determinized, and prefixes are counted per configuration set.

use super::system::{Config, GridSystem};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeSet, HashMap};

/// A configuration tagged with "the last event left the automaton in a final state".
type Tagged = (Config, bool);
type ConfigSet = Vec<Tagged>;

/// Zero-delay closure of `set`, grouped by the non-empty set of letters read.
fn closure(sys: &GridSystem, set: &[Tagged]) -> HashMap<u64, BTreeSet<Tagged>> {
    let mut seen: BTreeSet<(u64, Tagged)> = BTreeSet::new();
    let mut stack: Vec<(u64, Tagged)> = set.iter().map(|t| (0u64, t.clone())).collect();
    let mut out: HashMap<u64, BTreeSet<Tagged>> = HashMap::new();
    while let Some((mask, (c, flag))) = stack.pop() {
        if !seen.insert((mask, (c.clone(), flag))) {
            continue;
        }
        if mask != 0 {
            out.entry(mask).or_default().insert((c.clone(), flag));
        }
        for (letter, next) in sys.fire(&c) {
            let f = sys.is_final(&next);
            let m = mask | (1u64 << letter);
            if !seen.contains(&(m, (next.clone(), f))) {
                stack.push((m, (next, f)));
            }
        }
    }
    out
}

fn advance(sys: &GridSystem, set: &[Tagged]) -> ConfigSet {
    let mut out: ConfigSet = set.iter().map(|(c, f)| (sys.delay(c, 1), *f)).collect();
    out.sort();
    out.dedup();
    out
}

fn initial_set(sys: &GridSystem) -> Option<(ConfigSet, bool)> {
    let init = sys.initial()?;
    let f = sys.is_final(&init);
    Some((vec![(init, f)], f))
}

/// Number of distinct signatures of accepted words with dates in `{0, s, …, horizon·s}`,
/// slots being the single grid points. Words with distinct signatures are more than `s`
/// apart, so the count lower-bounds the capacity at any `ε < s`.
pub fn count_point_signatures(sys: &GridSystem, horizon: u32) -> BigUint {
    count_signatures(sys, horizon, 1)
}

/// Same with slots of `width` consecutive grid points. Words sharing a signature lie within
/// half a slot of the word placing every event at slot centers.
pub fn count_signatures(sys: &GridSystem, horizon: u32, width: u32) -> BigUint {
    assert!(width >= 1 && sys.num_letters() <= 64);
    let Some((init, init_final)) = initial_set(sys) else { return BigUint::zero() };
    let mut total = if init_final { BigUint::from(1u32) } else { BigUint::zero() };
    let mut layer: HashMap<ConfigSet, BigUint> = HashMap::from([(init, BigUint::from(1u32))]);
    let mut point = 0u32;
    while point <= horizon && !layer.is_empty() {
        let end = (point + width - 1).min(horizon);
        let mut next: HashMap<ConfigSet, BigUint> = HashMap::new();
        for (set, count) in layer {
            // Per slot: letter union so far ↦ consistent tagged configurations.
            let mut inner: HashMap<u64, BTreeSet<Tagged>> = HashMap::from([(0, set.into_iter().collect())]);
            for p in point..=end {
                let mut grown: HashMap<u64, BTreeSet<Tagged>> = HashMap::new();
                for (mask, configs) in inner {
                    let as_vec: Vec<Tagged> = configs.iter().cloned().collect();
                    for (m, cs) in closure(sys, &as_vec) {
                        grown.entry(mask | m).or_default().extend(cs);
                    }
                    grown.entry(mask).or_default().extend(configs);
                }
                inner = grown
                    .into_iter()
                    .map(|(m, cs)| {
                        if p < horizon {
                            let v: Vec<Tagged> = cs.into_iter().collect();
                            (m, advance(sys, &v).into_iter().collect())
                        } else {
                            (m, cs)
                        }
                    })
                    .collect();
            }
            for (mask, cs) in inner {
                if mask != 0 && cs.iter().any(|(_, f)| *f) {
                    total += &count;
                }
                if end < horizon {
                    let key: ConfigSet = cs.into_iter().collect();
                    *next.entry(key).or_insert_with(BigUint::zero) += &count;
                }
            }
        }
        layer = next;
        point = end + 1;
    }
    total
}

/// `log₂ n`, or `None` for zero.
pub fn log2_big(n: &BigUint) -> Option<f64> {
    if n.is_zero() {
        return None;
    }
    let bits = n.bits();
    if bits <= 53 {
        return Some(n.to_f64().unwrap().log2());
    }
    let shift = bits - 53;
    let top = (n >> shift).to_f64().unwrap();
    Some(top.log2() + shift as f64)
}
