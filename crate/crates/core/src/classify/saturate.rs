use crate::orbit::{Abstraction, EdgeOrbits, OrbitElement};
use crate::region::Rsta;
use rayon::prelude::*;
use std::collections::HashMap;
use thiserror::Error;

/// Default bound on the number of stored orbit elements.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Reachable orbits, each with a witness edge sequence, in discovery order.
#[derive(Debug, Clone)]
pub struct ReachSet<S> {
    elements: Vec<OrbitElement<S>>,
    witnesses: Vec<Vec<usize>>,
    index: HashMap<OrbitElement<S>, usize>,
}

impl<S: Abstraction> ReachSet<S> {
    fn new() -> ReachSet<S> {
        ReachSet { elements: Vec::new(), witnesses: Vec::new(), index: HashMap::new() }
    }

    fn insert(&mut self, e: OrbitElement<S>, witness: Vec<usize>) -> bool {
        if self.index.contains_key(&e) {
            return false;
        }
        self.index.insert(e.clone(), self.elements.len());
        self.elements.push(e);
        self.witnesses.push(witness);
        true
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &OrbitElement<S>) -> bool {
        self.index.contains_key(e)
    }

    pub fn witness(&self, e: &OrbitElement<S>) -> Option<&[usize]> {
        self.index.get(e).map(|&i| self.witnesses[i].as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OrbitElement<S>, &[usize])> {
        self.elements.iter().zip(self.witnesses.iter().map(Vec::as_slice))
    }

    /// Cyclic triples with their location and witness.
    pub fn cyclic(&self) -> impl Iterator<Item = (usize, &OrbitElement<S>, &[usize])> {
        self.iter().filter_map(|(e, w)| e.cyclic_location().map(|q| (q, e, w)))
    }

    pub fn max_witness_len(&self) -> usize {
        self.witnesses.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[derive(Debug, Error)]
#[error("{kind}-orbit saturation exceeded the cap of {cap} elements")]
pub struct CapExceeded<S> {
    pub kind: &'static str,
    pub cap: usize,
    pub partial: ReachSet<S>,
}

/// Breadth-first closure of `{1} ∪ {γ(δ)}` under composition along paths, restricted to the
/// edges accepted by `allow`. Each element keeps a shortest witness.
///
/// Levels are expanded in parallel and merged in frontier order, so the result does not depend
/// on scheduling.
pub fn saturate_with<S: Abstraction>(
    a: &Rsta,
    orbits: &EdgeOrbits<S>,
    cap: usize,
    allow: impl Fn(usize) -> bool + Sync,
) -> Result<ReachSet<S>, CapExceeded<S>> {
    let mut set = ReachSet::new();
    set.insert(OrbitElement::One, Vec::new());
    let mut frontier: Vec<usize> = Vec::new();
    for (ei, o) in orbits.orbits.iter().enumerate() {
        if allow(ei) && *o != OrbitElement::Zero && set.insert(o.clone(), vec![ei]) {
            frontier.push(set.len() - 1);
        }
    }
    while !frontier.is_empty() {
        if set.len() > cap {
            return Err(CapExceeded { kind: S::KIND.name(), cap, partial: set });
        }
        let candidates: Vec<Vec<(OrbitElement<S>, usize, usize)>> = frontier
            .par_iter()
            .map(|&i| {
                let e = &set.elements[i];
                let (_, dst) = e.endpoints().expect("frontier holds triples");
                a.outgoing(dst)
                    .iter()
                    .filter(|&&ei| allow(ei))
                    .map(|&ei| (e.compose(&orbits.orbits[ei]), i, ei))
                    .filter(|(c, _, _)| *c != OrbitElement::Zero && !set.contains(c))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (c, parent, ei) in candidates.into_iter().flatten() {
            let mut w = set.witnesses[parent].clone();
            w.push(ei);
            if set.insert(c, w) {
                next.push(set.len() - 1);
                if set.len() > cap {
                    return Err(CapExceeded { kind: S::KIND.name(), cap, partial: set });
                }
            }
        }
        frontier = next;
    }
    Ok(set)
}

pub fn saturate<S: Abstraction>(a: &Rsta, orbits: &EdgeOrbits<S>, cap: usize) -> Result<ReachSet<S>, CapExceeded<S>> {
    saturate_with(a, orbits, cap, |_| true)
}

/// Path orbits of length at most `2^h`, built by repeated squaring of the level set.
#[derive(Debug, Clone)]
pub struct Doubling<S> {
    levels: Vec<ReachSet<S>>,
    stable: bool,
}

impl<S: Abstraction> Doubling<S> {
    pub fn new(orbits: &EdgeOrbits<S>) -> Doubling<S> {
        let mut base = ReachSet::new();
        base.insert(OrbitElement::One, Vec::new());
        for (ei, o) in orbits.orbits.iter().enumerate() {
            if *o != OrbitElement::Zero {
                base.insert(o.clone(), vec![ei]);
            }
        }
        Doubling { levels: vec![base], stable: false }
    }

    fn square(prev: &ReachSet<S>) -> ReachSet<S> {
        let mut by_src: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, e) in prev.elements.iter().enumerate() {
            if let Some((src, _)) = e.endpoints() {
                by_src.entry(src).or_default().push(i);
            }
        }
        let products: Vec<Vec<(OrbitElement<S>, usize, usize)>> = (0..prev.len())
            .into_par_iter()
            .map(|i| {
                let x = &prev.elements[i];
                let ys: Vec<usize> = match x.endpoints() {
                    None => (0..prev.len()).collect(),
                    Some((_, dst)) => by_src.get(&dst).cloned().unwrap_or_default(),
                };
                ys.into_iter()
                    .map(|j| (x.compose(&prev.elements[j]), i, j))
                    .filter(|(c, _, _)| *c != OrbitElement::Zero && !prev.contains(c))
                    .collect()
            })
            .collect();
        let mut next = prev.clone();
        for (c, i, j) in products.into_iter().flatten() {
            if !next.contains(&c) {
                let mut w = prev.witnesses[i].clone();
                w.extend_from_slice(&prev.witnesses[j]);
                next.insert(c, w);
            }
        }
        next
    }

    /// Level `h`, computing missing levels; levels stop growing at the fixpoint.
    pub fn level(&mut self, h: usize) -> &ReachSet<S> {
        while self.levels.len() <= h && !self.stable {
            let next = Self::square(self.levels.last().unwrap());
            if next.len() == self.levels.last().unwrap().len() {
                self.stable = true;
            } else {
                self.levels.push(next);
            }
        }
        let k = h.min(self.levels.len() - 1);
        &self.levels[k]
    }

    /// Whether some path of length at most `2^h` has orbit `e`.
    pub fn is_path_orbit(&mut self, e: &OrbitElement<S>, h: usize) -> bool {
        self.level(h).contains(e)
    }

    /// The full reachable set, reached after at most `log₂` of its size many squarings.
    pub fn closure(&mut self, cap: usize) -> Result<ReachSet<S>, CapExceeded<S>> {
        let mut h = 0;
        loop {
            let len = self.level(h).len();
            if len > cap {
                return Err(CapExceeded { kind: S::KIND.name(), cap, partial: self.level(h).clone() });
            }
            if self.stable && h + 1 >= self.levels.len() {
                return Ok(self.level(h).clone());
            }
            h += 1;
        }
    }
}

/// One-shot form of [`Doubling::is_path_orbit`].
pub fn is_path_orbit<S: Abstraction>(orbits: &EdgeOrbits<S>, e: &OrbitElement<S>, h: usize) -> bool {
    Doubling::new(orbits).is_path_orbit(e, h)
}
