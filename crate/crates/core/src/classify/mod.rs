//! Structural meagerness, obesity and thickness, and the three-way classification.

mod saturate;

pub use saturate::{is_path_orbit, saturate, saturate_with, CapExceeded, Doubling, ReachSet, DEFAULT_CAP};

use crate::orbit::{Abstraction, EdgeOrbits, Freedom, OrbitElement, Semiring, Speed};
use crate::region::{region_split, Rsta, SplitError};
use crate::ta::TimedAutomaton;
use serde::Serialize;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Meager,
    Normal,
    Obese,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ObesityType {
    #[serde(rename = "none")]
    None,
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Fatness {
    Thin,
    Thick,
}

/// How the reachable orbit sets are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Breadth-first saturation with shortest witnesses.
    #[default]
    Bfs,
    /// Repeated squaring of path-length levels (the divide-and-conquer formulation).
    Savitch,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub cap: usize,
    pub mode: Mode,
}

impl Default for Options {
    fn default() -> Options {
        Options { cap: DEFAULT_CAP, mode: Mode::Bfs }
    }
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("{kind}-orbit saturation exceeded the cap of {cap} elements")]
    Cap { kind: &'static str, cap: usize, partial_size: usize },
}

impl<S: Abstraction> From<CapExceeded<S>> for ClassifyError {
    fn from(e: CapExceeded<S>) -> ClassifyError {
        ClassifyError::Cap { kind: e.kind, cap: e.cap, partial_size: e.partial.len() }
    }
}

/// A cycle and matrix position supporting part of a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub role: &'static str,
    pub kind: &'static str,
    pub cycle: Vec<String>,
    #[serde(skip)]
    pub edges: Vec<usize>,
    pub position: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Stats {
    pub locations: usize,
    pub edges: usize,
    pub regions: usize,
    pub monoid_size: usize,
    pub monoid_sizes: MonoidSizes,
    pub witness_max_len: usize,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidSizes {
    pub p: usize,
    pub f: usize,
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub class: Class,
    pub obesity_type: ObesityType,
    pub fatness: Fatness,
    pub structurally_meager: bool,
    pub witnesses: Vec<Witness>,
    pub stats: Stats,
}

fn cycle_ids(a: &Rsta, edges: &[usize]) -> Vec<String> {
    edges.iter().map(|&e| a.edge_id(e)).collect()
}

fn witness(a: &Rsta, role: &'static str, kind: &'static str, edges: &[usize], position: Option<[usize; 2]>) -> Witness {
    Witness { role, kind, cycle: cycle_ids(a, edges), edges: edges.to_vec(), position }
}

/// First cyclic f-orbit with `wide` on its diagonal, if any.
pub fn meagerness_witness(a: &Rsta, f: &ReachSet<Freedom>) -> Option<Witness> {
    f.cyclic().find_map(|(_, e, w)| {
        let m = e.matrix()?;
        (0..m.rows()).find(|&u| m.get(u, u) == Freedom::Wide).map(|u| witness(a, "wide-self-loop", "f", w, Some([u, u])))
    })
}

pub fn is_structurally_meager(a: &Rsta, f: &ReachSet<Freedom>) -> bool {
    meagerness_witness(a, f).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obesity {
    TypeI(Witness),
    TypeII { zeno: Witness, resetting: Witness },
}

/// Scans cyclic d-orbits for a fast diagonal entry, then for the Zeno pattern closed by a
/// realizable p-orbit on the same location.
pub fn obesity(a: &Rsta, d: &ReachSet<Speed>, p: &ReachSet<bool>) -> Option<Obesity> {
    for (_, e, w) in d.cyclic() {
        let m = e.matrix().unwrap();
        if let Some(u) = (0..m.rows()).find(|&u| m.get(u, u) == Speed::Fast) {
            return Some(Obesity::TypeI(witness(a, "fast-self-loop", "d", w, Some([u, u]))));
        }
    }
    for (q, e, w) in d.cyclic() {
        let m = e.matrix().unwrap();
        let n = m.rows();
        for u in 0..n {
            for v in 0..n {
                if u == v || m.get(u, u) != Speed::Instant || m.get(v, v) != Speed::Instant || m.get(u, v) != Speed::Slow {
                    continue;
                }
                let back = p.cyclic().find(|(q2, e2, _)| *q2 == q && e2.matrix().unwrap().get(v, u));
                if let Some((_, _, w2)) = back {
                    return Some(Obesity::TypeII {
                        zeno: witness(a, "zeno-cycle", "d", w, Some([u, v])),
                        resetting: witness(a, "resetting-cycle", "p", w2, Some([v, u])),
                    });
                }
            }
        }
    }
    None
}

/// A forgetful cycle: all-ones p-orbit, searched among cycles of non-punctual edges.
pub fn forgetful_cycle(a: &Rsta, p_open: &ReachSet<bool>) -> Option<Witness> {
    p_open.cyclic().find_map(|(_, e, w)| {
        let m = e.matrix().unwrap();
        let complete = (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j)));
        complete.then(|| witness(a, "forgetful-cycle", "p", w, None))
    })
}

/// Edges whose guard region is left by a positive delay.
pub fn is_open_edge(a: &Rsta, e: usize) -> bool {
    a.edges[e].guard.is_open_in_time()
}

/// All diagonal entries instant and at least one slow entry.
pub fn structurally_zeno(e: &OrbitElement<Speed>) -> bool {
    let (Some(_), Some(m)) = (e.cyclic_location(), e.matrix()) else { return false };
    (0..m.rows()).all(|u| m.get(u, u) == Speed::Instant)
        && (0..m.rows()).any(|u| (0..m.cols()).any(|v| m.get(u, v) == Speed::Slow))
}

fn reach<S: Abstraction>(a: &Rsta, orbits: &EdgeOrbits<S>, opts: &Options) -> Result<ReachSet<S>, ClassifyError> {
    Ok(match opts.mode {
        Mode::Bfs => saturate(a, orbits, opts.cap)?,
        Mode::Savitch => Doubling::new(orbits).closure(opts.cap)?,
    })
}

/// Everything the classifier computes on an RsTA, exposed for reports and tests.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub p: ReachSet<bool>,
    pub f: ReachSet<Freedom>,
    pub d: ReachSet<Speed>,
    pub p_open: ReachSet<bool>,
}

pub fn analyse(a: &Rsta, opts: &Options) -> Result<Analysis, ClassifyError> {
    let (p_orbits, (f_orbits, d_orbits)) =
        rayon::join(|| EdgeOrbits::<bool>::new(a), || rayon::join(|| EdgeOrbits::<Freedom>::new(a), || EdgeOrbits::<Speed>::new(a)));
    let p = reach(a, &p_orbits, opts)?;
    let f = reach(a, &f_orbits, opts)?;
    let d = reach(a, &d_orbits, opts)?;
    let p_open = saturate_with(a, &p_orbits, opts.cap, |e| is_open_edge(a, e))?;
    Ok(Analysis { p, f, d, p_open })
}

pub fn classify_rsta(a: &Rsta, opts: &Options) -> Result<Verdict, ClassifyError> {
    let start = Instant::now();
    let an = analyse(a, opts)?;
    let mut witnesses = Vec::new();
    let non_meager = meagerness_witness(a, &an.f);
    let obese = obesity(a, &an.d, &an.p);
    let (class, obesity_type) = match (&obese, &non_meager) {
        (Some(Obesity::TypeI(_)), _) => (Class::Obese, ObesityType::I),
        (Some(Obesity::TypeII { .. }), _) => (Class::Obese, ObesityType::II),
        (None, Some(_)) => (Class::Normal, ObesityType::None),
        (None, None) => (Class::Meager, ObesityType::None),
    };
    let structurally_meager = non_meager.is_none();
    witnesses.extend(non_meager);
    match obese {
        Some(Obesity::TypeI(w)) => witnesses.push(w),
        Some(Obesity::TypeII { zeno, resetting }) => witnesses.extend([zeno, resetting]),
        None => {}
    }
    let forgetful = forgetful_cycle(a, &an.p_open);
    let fatness = if forgetful.is_some() { Fatness::Thick } else { Fatness::Thin };
    witnesses.extend(forgetful);
    let witness_max_len = [an.p.max_witness_len(), an.f.max_witness_len(), an.d.max_witness_len()].into_iter().max().unwrap();
    Ok(Verdict {
        class,
        obesity_type,
        fatness,
        structurally_meager,
        witnesses,
        stats: Stats {
            locations: a.locations.len(),
            edges: a.edges.len(),
            regions: a.region_count(),
            monoid_size: an.d.len(),
            monoid_sizes: MonoidSizes { p: an.p.len(), f: an.f.len(), d: an.d.len() },
            witness_max_len,
            wall_time_ms: start.elapsed().as_millis() as u64,
        },
    })
}

pub fn classify_with(a: &TimedAutomaton, opts: &Options) -> Result<Verdict, ClassifyError> {
    classify_rsta(&region_split(a)?, opts)
}

/// Region-splits `a` and classifies it with default options.
pub fn classify(a: &TimedAutomaton) -> Result<Verdict, ClassifyError> {
    classify_with(a, &Options::default())
}

/// Labels of a matrix row-major, for compact comparisons in tests and reports.
pub fn labels<S: Semiring>(e: &OrbitElement<S>) -> Vec<Vec<&'static str>> {
    e.matrix().map_or_else(Vec::new, |m| m.to_rows().iter().map(|r| r.iter().map(|x| x.label()).collect()).collect())
}
