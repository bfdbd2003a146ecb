//! Alur–Dill regions and the region-split transformation.

mod closed;
mod split;

pub use closed::{closed_predecessor, closed_successor, ClosedError};
pub use split::{region_split, Rsta, RstaEdge, RstaLocation, SplitError};

use crate::rational::{floor_i64, int, Rational};
use crate::ta::{ClockConstraint, Guard, Relation};
use num_traits::Zero;
use std::fmt;

/// An integer point of a region closure.
pub type Vertex = Vec<u32>;

/// A region over `n` clocks for maximal constant `M`.
///
/// Bounded clocks carry an integer part; among them, `zero` holds the ones with zero
/// fractional part and `blocks` groups the others by equal fractional part, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    max_constant: u32,
    int_parts: Vec<Option<u32>>,
    zero: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

/// Closed description of a region closure: per-clock bounds and diagonal constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureConstraints {
    /// `(lo, hi)` with `hi = None` for unbounded clocks.
    pub bounds: Vec<(i64, Option<i64>)>,
    /// `(c1, c2, d)` meaning `x_c1 − x_c2 ≤ d`.
    pub diagonals: Vec<(usize, usize, i64)>,
}

impl Region {
    /// The region `{0}^n`.
    pub fn origin(clocks: usize, max_constant: u32) -> Region {
        Region { max_constant, int_parts: vec![Some(0); clocks], zero: (0..clocks).collect(), blocks: Vec::new() }
    }

    /// The canonical region containing `x`.
    pub fn of(x: &[Rational], max_constant: u32) -> Region {
        let m = max_constant as i64;
        let mut int_parts = Vec::with_capacity(x.len());
        let mut zero = Vec::new();
        let mut fracs: Vec<(Rational, usize)> = Vec::new();
        for (c, v) in x.iter().enumerate() {
            assert!(*v >= Rational::zero(), "clock values are non-negative");
            let k = floor_i64(v);
            let frac = v - int(k);
            if k > m || (k == m && !frac.is_zero()) {
                int_parts.push(None);
            } else {
                int_parts.push(Some(k as u32));
                if frac.is_zero() {
                    zero.push(c);
                } else {
                    fracs.push((frac, c));
                }
            }
        }
        fracs.sort();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut last: Option<Rational> = None;
        for (f, c) in fracs {
            if last.as_ref() == Some(&f) {
                blocks.last_mut().unwrap().push(c);
            } else {
                blocks.push(vec![c]);
                last = Some(f);
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        Region { max_constant, int_parts, zero, blocks }
    }

    pub fn num_clocks(&self) -> usize {
        self.int_parts.len()
    }

    pub fn max_constant(&self) -> u32 {
        self.max_constant
    }

    pub fn int_part(&self, clock: usize) -> Option<u32> {
        self.int_parts[clock]
    }

    pub fn zero_clocks(&self) -> &[usize] {
        &self.zero
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_above(&self, clock: usize) -> bool {
        self.int_parts[clock].is_none()
    }

    pub fn above_clocks(&self) -> Vec<usize> {
        (0..self.num_clocks()).filter(|&c| self.is_above(c)).collect()
    }

    /// No clock exceeds `M`.
    pub fn is_bounded(&self) -> bool {
        self.int_parts.iter().all(Option::is_some)
    }

    /// Dimension of the simplex: number of distinct positive fractional parts.
    pub fn dim(&self) -> usize {
        self.blocks.len()
    }

    /// Pure delays leave the region after a positive amount of time (no clock sits on an
    /// integer), so edges guarded by it are not punctual.
    pub fn is_open_in_time(&self) -> bool {
        self.zero.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        Region::of(x, self.max_constant) == *self
    }

    /// Vertices of the closure of a bounded region, in lexicographic order.
    pub fn vertices(&self) -> Option<Vec<Vertex>> {
        if !self.is_bounded() {
            return None;
        }
        let base: Vec<u32> = self.int_parts.iter().map(|k| k.unwrap()).collect();
        let b = self.blocks.len();
        let mut out = Vec::with_capacity(b + 1);
        for k in 0..=b {
            let mut v = base.clone();
            for block in &self.blocks[b - k..] {
                for &c in block {
                    v[c] += 1;
                }
            }
            out.push(v);
        }
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
        Some(out)
    }

    /// Barycentric coordinates of a point of the closure w.r.t. [`Region::vertices`].
    pub fn barycentric(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        if !self.is_bounded() {
            return None;
        }
        let b = self.blocks.len();
        let frac = |j: usize| -> Rational {
            if j == 0 {
                return Rational::zero();
            }
            let c = self.blocks[j - 1][0];
            &x[c] - int(self.int_parts[c].unwrap() as i64)
        };
        let mut lambda = vec![Rational::zero(); b + 1];
        lambda[0] = int(1) - frac(b);
        for j in 1..=b {
            lambda[b - j + 1] = frac(j) - frac(j - 1);
        }
        Some(lambda)
    }

    /// Membership of the vector `values · num / den` without building rationals.
    pub fn contains_scaled(&self, values: &[u64], num: u64, den: u64) -> bool {
        let m = self.max_constant as u128;
        let (num, den) = (num as u128, den as u128);
        let mut frac = vec![0u128; values.len()];
        for (c, &v) in values.iter().enumerate() {
            let scaled = v as u128 * num;
            let (k, f) = (scaled / den, scaled % den);
            let above = k > m || (k == m && f > 0);
            match self.int_parts[c] {
                None if above => continue,
                None => return false,
                Some(_) if above => return false,
                Some(ki) if k != ki as u128 => return false,
                Some(_) => {}
            }
            if self.zero.contains(&c) != (f == 0) {
                return false;
            }
            frac[c] = f;
        }
        let mut last = 0u128;
        for block in &self.blocks {
            let f = frac[block[0]];
            if f <= last || block.iter().any(|&c| frac[c] != f) {
                return false;
            }
            last = f;
        }
        true
    }

    /// An interior point: fractional parts evenly spaced in (0, 1).
    pub fn sample_point(&self) -> Vec<Rational> {
        let b = self.blocks.len() as i64;
        let mut x = vec![Rational::zero(); self.num_clocks()];
        for (c, k) in self.int_parts.iter().enumerate() {
            x[c] = match k {
                Some(k) => int(*k as i64),
                None => int(self.max_constant as i64 + 1),
            };
        }
        for (j, block) in self.blocks.iter().enumerate() {
            for &c in block {
                x[c] += Rational::new((j as i64 + 1).into(), (b + 1).into());
            }
        }
        x
    }

    /// The immediate time successor, or `None` for the absorbing all-above region.
    pub fn time_successor(&self) -> Option<Region> {
        let mut next = self.clone();
        if !self.zero.is_empty() {
            let mut fresh = Vec::new();
            for &c in &self.zero {
                if self.int_parts[c] == Some(self.max_constant) {
                    next.int_parts[c] = None;
                } else {
                    fresh.push(c);
                }
            }
            next.zero.clear();
            if !fresh.is_empty() {
                next.blocks.insert(0, fresh);
            }
            Some(next)
        } else if let Some(top) = next.blocks.pop() {
            for &c in &top {
                next.int_parts[c] = Some(next.int_parts[c].unwrap() + 1);
            }
            next.zero = top;
            Some(next)
        } else {
            None
        }
    }

    /// The region itself followed by every region swept by delaying, ending in all-above.
    pub fn successor_chain(&self) -> Vec<Region> {
        let mut out = vec![self.clone()];
        while let Some(next) = out.last().unwrap().time_successor() {
            out.push(next);
        }
        out
    }

    /// Image under resetting `clocks` to zero.
    pub fn reset(&self, clocks: &[usize]) -> Region {
        let mut next = self.clone();
        for &c in clocks {
            next.int_parts[c] = Some(0);
            for b in &mut next.blocks {
                b.retain(|&d| d != c);
            }
            if !next.zero.contains(&c) {
                next.zero.push(c);
            }
        }
        next.blocks.retain(|b| !b.is_empty());
        next.zero.sort_unstable();
        next
    }

    /// Truth of a constraint with integer bound `≤ M` on the whole region; clocks in `large`
    /// are treated as exceeding `M` whatever the region says.
    pub fn satisfies_constraint(&self, cc: &ClockConstraint, large: &[usize]) -> bool {
        let b = cc.bound;
        let part = if large.contains(&cc.clock) { None } else { self.int_parts[cc.clock] };
        let positive = !self.zero.contains(&cc.clock);
        match part {
            None => matches!(cc.relation, Relation::Gt | Relation::Ge) && b <= self.max_constant,
            Some(k) if !positive => match cc.relation {
                Relation::Lt => k < b,
                Relation::Le => k <= b,
                Relation::Gt => k > b,
                Relation::Ge => k >= b,
            },
            Some(k) => match cc.relation {
                Relation::Lt | Relation::Le => k < b,
                Relation::Gt | Relation::Ge => k >= b,
            },
        }
    }

    pub fn satisfies(&self, guard: &Guard, large: &[usize]) -> bool {
        guard.constraints.iter().all(|cc| self.satisfies_constraint(cc, large))
    }

    /// Bounds and fractional-order constraints describing the closure.
    pub fn closure(&self) -> ClosureConstraints {
        let m = self.max_constant as i64;
        let bounds = self
            .int_parts
            .iter()
            .enumerate()
            .map(|(c, k)| match k {
                None => (m, None),
                Some(k) if self.zero.contains(&c) => (*k as i64, Some(*k as i64)),
                Some(k) => (*k as i64, Some(*k as i64 + 1)),
            })
            .collect();
        let k = |c: usize| self.int_parts[c].unwrap() as i64;
        let mut diagonals = Vec::new();
        for block in &self.blocks {
            for w in block.windows(2) {
                diagonals.push((w[0], w[1], k(w[0]) - k(w[1])));
                diagonals.push((w[1], w[0], k(w[1]) - k(w[0])));
            }
        }
        for w in self.blocks.windows(2) {
            let (lo, hi) = (w[0][0], w[1][0]);
            diagonals.push((lo, hi, k(lo) - k(hi)));
        }
        ClosureConstraints { bounds, diagonals }
    }

    /// Clock names are needed to print; see [`Region::display`].
    pub fn display<'a>(&'a self, clocks: &'a [String]) -> RegionDisplay<'a> {
        RegionDisplay { region: self, clocks }
    }
}

pub struct RegionDisplay<'a> {
    region: &'a Region,
    clocks: &'a [String],
}

impl fmt::Display for RegionDisplay<'_> {
    /// Conjunction of `floor(c)=k`, `c>M`, `frac(c)=0`, `frac(c)<frac(c')` and
    /// `frac(c)=frac(c')` atoms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.region;
        let mut atoms = Vec::new();
        for (c, k) in r.int_parts.iter().enumerate() {
            match k {
                Some(k) => atoms.push(format!("floor({})={k}", self.clocks[c])),
                None => atoms.push(format!("{}>{}", self.clocks[c], r.max_constant)),
            }
        }
        for &c in &r.zero {
            atoms.push(format!("frac({})=0", self.clocks[c]));
        }
        for block in &r.blocks {
            for w in block.windows(2) {
                atoms.push(format!("frac({})=frac({})", self.clocks[w[0]], self.clocks[w[1]]));
            }
        }
        if let Some(first) = r.blocks.first() {
            if r.zero.is_empty() {
                atoms.push(format!("frac({})>0", self.clocks[first[0]]));
            }
        }
        for w in r.blocks.windows(2) {
            atoms.push(format!("frac({})<frac({})", self.clocks[w[0][0]], self.clocks[w[1][0]]));
        }
        if atoms.is_empty() {
            return write!(f, "true");
        }
        write!(f, "{}", atoms.join(" && "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn pt(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| ratio(n, d)).collect()
    }

    #[test]
    fn region_of_examples() {
        assert_eq!(Region::of(&pt(&[(0, 1), (0, 1)]), 2), Region::origin(2, 2));
        assert_eq!(Region::of(&pt(&[(3, 10), (7, 10)]), 2), Region::of(&pt(&[(5, 10), (9, 10)]), 2));
        let r = Region::of(&pt(&[(5, 2), (1, 1)]), 2);
        assert!(r.is_above(0));
        assert_eq!(r.int_part(1), Some(1));
        assert_eq!(r.zero_clocks(), &[1]);
    }

    #[test]
    fn vertices_examples() {
        let q = Region::of(&pt(&[(1, 2), (0, 1)]), 2);
        assert_eq!(q.vertices().unwrap(), vec![vec![0, 0], vec![1, 0]]);
        let p = Region::of(&pt(&[(0, 1), (1, 2)]), 2);
        assert_eq!(p.vertices().unwrap(), vec![vec![0, 0], vec![0, 1]]);
        let one = Region::of(&pt(&[(1, 1), (1, 1)]), 2);
        assert_eq!(one.vertices().unwrap(), vec![vec![1, 1]]);
        let tri = Region::of(&pt(&[(2, 3), (1, 3)]), 2);
        assert_eq!(tri.vertices().unwrap(), vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn successor_chain_from_origin() {
        let chain = Region::origin(2, 1).successor_chain();
        assert_eq!(chain[1], Region::of(&pt(&[(1, 2), (1, 2)]), 1));
        assert_eq!(chain[2], Region::of(&pt(&[(1, 1), (1, 1)]), 1));
        assert!(chain.last().unwrap().above_clocks().len() == 2);
        let top = chain.last().unwrap();
        assert_eq!(top.successor_chain(), vec![top.clone()]);
    }

    #[test]
    fn successor_of_strip() {
        let r = Region::of(&pt(&[(1, 2), (0, 1)]), 2);
        assert_eq!(r.successor_chain()[1], Region::of(&pt(&[(2, 3), (1, 3)]), 2));
    }

    #[test]
    fn resets() {
        let tri = Region::of(&pt(&[(2, 3), (1, 3)]), 2);
        assert_eq!(tri.reset(&[0, 1]), Region::origin(2, 2));
        assert_eq!(tri.reset(&[0]), Region::of(&pt(&[(0, 1), (1, 3)]), 2));
        assert_eq!(tri.reset(&[]), tri);
    }

    #[test]
    fn barycentric_of_sample_is_positive() {
        let tri = Region::of(&pt(&[(2, 3), (1, 3)]), 2);
        let x = tri.sample_point();
        assert!(tri.contains(&x));
        let l = tri.barycentric(&x).unwrap();
        assert!(l.iter().all(|v| *v > Rational::zero()));
        assert_eq!(l.iter().fold(Rational::zero(), |a, b| a + b), int(1));
    }
}
