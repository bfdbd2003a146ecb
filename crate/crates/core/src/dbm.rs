//! Difference-bound matrices over event dates `t₀ = 0, t₁, …, tₙ`.
//!
//! Entry `(i, j)` bounds `t_j − t_i`.

use crate::rational::{format_rational, int, Rational};
use crate::region::Rsta;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite { value: Rational, strict: bool },
    Inf,
}

impl Bound {
    pub fn le(value: Rational) -> Bound {
        Bound::Finite { value, strict: false }
    }

    pub fn lt(value: Rational) -> Bound {
        Bound::Finite { value, strict: true }
    }

    pub fn zero() -> Bound {
        Bound::le(Rational::zero())
    }

    pub fn add(&self, other: &Bound) -> Bound {
        match (self, other) {
            (Bound::Finite { value: a, strict: s }, Bound::Finite { value: b, strict: t }) => {
                Bound::Finite { value: a + b, strict: *s || *t }
            }
            _ => Bound::Inf,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Finite { value, .. } => Some(value),
            Bound::Inf => None,
        }
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Inf, Bound::Inf) => Ordering::Equal,
            (Bound::Inf, _) => Ordering::Greater,
            (_, Bound::Inf) => Ordering::Less,
            (Bound::Finite { value: a, strict: s }, Bound::Finite { value: b, strict: t }) => {
                // At equal value the strict bound is tighter.
                a.cmp(b).then_with(|| t.cmp(s))
            }
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dbm {
    n: usize,
    entries: Vec<Bound>,
}

/// Feasible values of one date: `lo ⋈ t ⋈ hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub lo_strict: bool,
    pub hi: Option<Rational>,
    pub hi_strict: bool,
}

impl Interval {
    pub fn is_point(&self) -> bool {
        self.hi.as_ref() == Some(&self.lo) && !self.lo_strict && !self.hi_strict
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = if self.lo_strict { *t > self.lo } else { *t >= self.lo };
        let below = match &self.hi {
            None => true,
            Some(h) if self.hi_strict => t < h,
            Some(h) => t <= h,
        };
        above && below
    }
}

impl Dbm {
    /// Only the diagonal constrained (`t_i − t_i ≤ 0`).
    pub fn unconstrained(n: usize) -> Dbm {
        let mut entries = vec![Bound::Inf; (n + 1) * (n + 1)];
        for i in 0..=n {
            entries[i * (n + 1) + i] = Bound::zero();
        }
        Dbm { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Bound {
        &self.entries[i * (self.n + 1) + j]
    }

    pub fn set(&mut self, i: usize, j: usize, b: Bound) {
        self.entries[i * (self.n + 1) + j] = b;
    }

    /// Tightens entry `(i, j)` to `min(current, b)`.
    pub fn constrain(&mut self, i: usize, j: usize, b: Bound) {
        let k = i * (self.n + 1) + j;
        if b < self.entries[k] {
            self.entries[k] = b;
        }
    }

    /// Floyd–Warshall closure; `None` when a negative cycle makes the polytope empty.
    pub fn canonicalize(&self) -> Option<Dbm> {
        let size = self.n + 1;
        let mut d = self.clone();
        for k in 0..size {
            for i in 0..size {
                let ik = d.entries[i * size + k].clone();
                if ik == Bound::Inf {
                    continue;
                }
                for j in 0..size {
                    let via = ik.add(&d.entries[k * size + j]);
                    if via < d.entries[i * size + j] {
                        d.entries[i * size + j] = via;
                    }
                }
            }
        }
        let zero = Bound::zero();
        (0..size).all(|i| d.entries[i * size + i] >= zero).then_some(d)
    }

    /// Range of `t_i` in a canonical, non-empty matrix.
    pub fn project(&self, i: usize) -> Interval {
        let (lo, lo_strict) = match self.get(i, 0) {
            Bound::Finite { value, strict } => (-value.clone(), *strict),
            Bound::Inf => unreachable!("t_i ≥ t₀ is not implied; callers add it"),
        };
        let (hi, hi_strict) = match self.get(0, i) {
            Bound::Finite { value, strict } => (Some(value.clone()), *strict),
            Bound::Inf => (None, false),
        };
        Interval { lo, lo_strict, hi, hi_strict }
    }

    /// Whether the dates `t` (with `t[0] = 0`) satisfy every entry.
    pub fn satisfied_by(&self, t: &[Rational]) -> bool {
        for i in 0..=self.n {
            for j in 0..=self.n {
                if let Bound::Finite { value, strict } = self.get(i, j) {
                    let diff = &t[j] - &t[i];
                    if diff > *value || (*strict && diff == *value) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `n+1` lines of comma-separated bounds; `inf`, and a `<` suffix for strict bounds.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..=self.n {
            let row: Vec<String> = (0..=self.n)
                .map(|j| match self.get(i, j) {
                    Bound::Inf => "inf".to_string(),
                    Bound::Finite { value, strict } => {
                        format!("{}{}", format_rational(value), if *strict { "<" } else { "" })
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

/// A free parameter of a timing matrix: an entry of the start vertex `x` or end vertex `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    X(usize),
    Y(usize),
}

/// One constraint written into a timing matrix: `t_j − t_i ≤ constant + Σ sign·param`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contribution {
    pub i: usize,
    pub j: usize,
    pub constant: i64,
    pub params: Vec<(Param, i64)>,
}

#[derive(Debug, Clone)]
pub struct TimingDbm {
    pub dbm: Dbm,
    /// Constraints between dates that collapsed to a constant check and failed.
    pub trivially_empty: bool,
    pub trace: Vec<Contribution>,
}

impl TimingDbm {
    pub fn canonical(&self) -> Option<Dbm> {
        if self.trivially_empty {
            return None;
        }
        self.dbm.canonicalize()
    }

    /// Middle entries carry integer constants only; `x` parameters touch index 0 and `y`
    /// parameters touch index `n`.
    pub fn conforms_to_parametric_form(&self) -> bool {
        let n = self.dbm.n;
        self.trace.iter().all(|c| {
            c.params.iter().all(|(p, s)| {
                (*s == 1 || *s == -1)
                    && match p {
                        Param::X(_) => c.i == 0 || c.j == 0,
                        Param::Y(_) => c.i == n || c.j == n,
                    }
            })
        })
    }
}

struct Builder<'a> {
    x: &'a [Rational],
    y: &'a [Rational],
    dbm: Dbm,
    empty: bool,
    trace: Vec<Contribution>,
}

impl Builder<'_> {
    fn value(&self, params: &[(Param, i64)]) -> Rational {
        params.iter().fold(Rational::zero(), |acc, (p, s)| {
            let v = match p {
                Param::X(c) => &self.x[*c],
                Param::Y(c) => &self.y[*c],
            };
            acc + v * int(*s)
        })
    }

    /// `t_j − t_i ≤ constant + params`, or a constant check when `i = j`.
    fn add(&mut self, i: usize, j: usize, constant: i64, params: Vec<(Param, i64)>) {
        let bound = int(constant) + self.value(&params);
        if i == j {
            if bound < Rational::zero() {
                self.empty = true;
            }
            return;
        }
        self.dbm.constrain(i, j, Bound::le(bound));
        self.trace.push(Contribution { i, j, constant, params });
    }
}

/// Where a clock was last reset: event index (0 means never, with initial value `x_c`).
fn offset(last: usize, clock: usize) -> Vec<(Param, i64)> {
    if last == 0 {
        vec![(Param::X(clock), 1)]
    } else {
        Vec::new()
    }
}

fn negate(p: &[(Param, i64)]) -> Vec<(Param, i64)> {
    p.iter().map(|(q, s)| (*q, -s)).collect()
}

/// Constraints "clock vector at date `t_at` lies in the closure of `region`" given the last
/// reset indices. Clock `c` equals `t_at − t_last[c] + offset`.
fn closure_at(b: &mut Builder, region: &crate::region::Region, at: usize, last: &[usize]) {
    let closure = region.closure();
    for (c, (lo, hi)) in closure.bounds.iter().enumerate() {
        let off = offset(last[c], c);
        let a = last[c];
        // t_at − t_a ≤ hi − off ;  t_a − t_at ≤ off − lo
        if let Some(hi) = hi {
            b.add(a, at, *hi, negate(&off));
        }
        b.add(at, a, -lo, off);
    }
    for (c1, c2, d) in closure.diagonals {
        // (t_at − t_a1 + off1) − (t_at − t_a2 + off2) ≤ d  ⇒  t_a2 − t_a1 ≤ d − off1 + off2
        let (a1, a2) = (last[c1], last[c2]);
        let mut params = negate(&offset(a1, c1));
        params.extend(offset(a2, c2));
        b.add(a1, a2, d, params);
    }
}

/// Timing polytope of `L_π̄(x, y)`: closed guards, closed intermediate starting regions, and
/// final clock values pinned to `y`.
pub fn path_timing_dbm(a: &Rsta, path: &[usize], x: &[Rational], y: &[Rational]) -> TimingDbm {
    assert!(a.is_path(path), "malformed path");
    let n = path.len();
    let clocks = a.num_clocks();
    let mut b = Builder { x, y, dbm: Dbm::unconstrained(n), empty: false, trace: Vec::new() };
    let mut last = vec![0usize; clocks];
    for (k, &ei) in path.iter().enumerate() {
        let j = k + 1;
        b.add(j, j - 1, 0, Vec::new());
        let e = &a.edges[ei];
        closure_at(&mut b, &e.guard, j, &last);
        for &r in &e.resets {
            last[r] = j;
        }
        if j < n {
            closure_at(&mut b, &a.locations[e.dst].region, j, &last);
        }
    }
    for c in 0..clocks {
        // t_n − t_a + off = y_c
        let a_idx = last[c];
        let off = offset(a_idx, c);
        let mut up = vec![(Param::Y(c), 1)];
        up.extend(negate(&off));
        b.add(a_idx, n, 0, up.clone());
        b.add(n, a_idx, 0, negate(&up));
    }
    TimingDbm { dbm: b.dbm, trivially_empty: b.empty, trace: b.trace }
}

/// Shape of a timed language on a path between two points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LanguageClass {
    Empty,
    Singleton { timing: Vec<Rational>, duration: Rational },
    Wide { duration: Interval },
}

pub fn classify_dbm(dbm: Option<Dbm>) -> LanguageClass {
    let Some(d) = dbm else { return LanguageClass::Empty };
    let n = d.n();
    let projections: Vec<Interval> = (1..=n).map(|i| d.project(i)).collect();
    if projections.iter().all(Interval::is_point) {
        let timing: Vec<Rational> = projections.iter().map(|p| p.lo.clone()).collect();
        let duration = timing.last().cloned().unwrap_or_else(Rational::zero);
        LanguageClass::Singleton { timing, duration }
    } else {
        LanguageClass::Wide { duration: d.project(n) }
    }
}

/// Class of `L_π̄(v, v′)` for integer points `v`, `v′`.
pub fn language_class(a: &Rsta, path: &[usize], v: &[u32], w: &[u32]) -> LanguageClass {
    let x: Vec<Rational> = v.iter().map(|&c| int(c as i64)).collect();
    let y: Vec<Rational> = w.iter().map(|&c| int(c as i64)).collect();
    classify_dbm(path_timing_dbm(a, path, &x, &y).canonical())
}
