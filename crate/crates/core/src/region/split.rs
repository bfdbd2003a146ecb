use super::{Region, Vertex};
use crate::rational::{int, Rational};
use crate::ta::{check_deterministic, TimedAutomaton};
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("initial clock vector exceeds the maximal constant {0}")]
    InitialAboveMax(u32),
}

/// A split location: an original location, the clocks known to exceed `M` (kept reset in
/// the split automaton), and the bounded starting region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RstaLocation {
    pub original: usize,
    pub large: Vec<usize>,
    pub region: Region,
    pub accepting: bool,
}

/// An edge guarded by a single (possibly unbounded) region of the delayed clock vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RstaEdge {
    pub src: usize,
    pub dst: usize,
    pub label: usize,
    pub guard: Region,
    pub resets: Vec<usize>,
    pub original: usize,
}

/// Region-split automaton; every location's starting constraint is one bounded region.
#[derive(Debug, Clone)]
pub struct Rsta {
    pub clocks: Vec<String>,
    pub alphabet: Vec<String>,
    pub location_names: Vec<String>,
    pub max_constant: u32,
    pub locations: Vec<RstaLocation>,
    pub edges: Vec<RstaEdge>,
    /// `None` when the language is empty and everything was pruned.
    pub initial: Option<usize>,
    pub initial_vector: Vec<u32>,
    vertices: Vec<Vec<Vertex>>,
    outgoing: Vec<Vec<usize>>,
}

impl Rsta {
    pub fn vertices(&self, location: usize) -> &[Vertex] {
        &self.vertices[location]
    }

    pub fn outgoing(&self, location: usize) -> &[usize] {
        &self.outgoing[location]
    }

    pub fn num_clocks(&self) -> usize {
        self.clocks.len()
    }

    pub fn edge_id(&self, edge: usize) -> String {
        format!("e{}", edge + 1)
    }

    pub fn location_label(&self, location: usize) -> String {
        let l = &self.locations[location];
        format!("{}[{}]", self.location_names[l.original], l.region.display(&self.clocks))
    }

    /// Number of distinct regions used as starting constraints.
    pub fn region_count(&self) -> usize {
        let mut regions: Vec<&Region> = self.locations.iter().map(|l| &l.region).collect();
        regions.sort();
        regions.dedup();
        regions.len()
    }

    /// Whether consecutive edges form a path.
    pub fn is_path(&self, edges: &[usize]) -> bool {
        edges.windows(2).all(|w| self.edges[w[0]].dst == self.edges[w[1]].src)
    }

    /// Fires `edge` after `delay` from clock vector `x`; `None` if the delayed vector is not in
    /// the guard region.
    pub fn fire(&self, edge: usize, x: &[Rational], delay: &Rational) -> Option<Vec<Rational>> {
        let e = &self.edges[edge];
        let mut y: Vec<Rational> = x.iter().map(|c| c + delay).collect();
        if !e.guard.contains(&y) {
            return None;
        }
        for &r in &e.resets {
            y[r] = int(0);
        }
        Some(y)
    }

    pub fn initial_clocks(&self) -> Vec<Rational> {
        self.initial_vector.iter().map(|&c| int(c as i64)).collect()
    }

    /// Text form: the automaton grammar plus `starting` lines and region-valued edge guards.
    pub fn serialize(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "automaton {name}_split");
        if !self.clocks.is_empty() {
            let _ = writeln!(out, "clocks {}", self.clocks.join(" "));
        }
        let _ = writeln!(out, "alphabet {}", self.alphabet.join(" "));
        for (i, l) in self.locations.iter().enumerate() {
            let _ = write!(out, "location l{i}");
            if self.initial == Some(i) {
                let parts: Vec<String> =
                    self.clocks.iter().zip(&self.initial_vector).map(|(c, v)| format!("{c}={v}")).collect();
                let _ = write!(out, " initial {}", parts.join(","));
            }
            if l.accepting {
                out.push_str(" accepting");
            }
            let _ = writeln!(out, "  # from {}", self.location_names[l.original]);
            let _ = writeln!(out, "starting l{i} {}", l.region.display(&self.clocks));
        }
        for (i, e) in self.edges.iter().enumerate() {
            let _ = write!(
                out,
                "edge l{} -> l{} on {} where {}",
                e.src,
                e.dst,
                self.alphabet[e.label],
                e.guard.display(&self.clocks)
            );
            if !e.resets.is_empty() {
                let names: Vec<&str> = e.resets.iter().map(|&c| self.clocks[c].as_str()).collect();
                let _ = write!(out, " reset {}", names.join(","));
            }
            let _ = writeln!(out, "  # e{} from d{}", i + 1, e.original + 1);
        }
        out
    }
}

/// Splits every location by the starting region (after the bounded-starting transform) and
/// prunes sublocations that are unreachable or cannot reach an accepting one.
pub fn region_split(a: &TimedAutomaton) -> Result<Rsta, SplitError> {
    if !check_deterministic(a).is_deterministic() {
        return Err(SplitError::NotDeterministic);
    }
    let m = a.max_constant;
    let q0 = a.initial_locations()[0];
    let init = a.locations[q0].initial.clone().unwrap();
    if init.iter().any(|&v| v > m) {
        return Err(SplitError::InitialAboveMax(m));
    }
    let x0: Vec<Rational> = init.iter().map(|&v| int(v as i64)).collect();

    let mut index: HashMap<(usize, Vec<usize>, Region), usize> = HashMap::new();
    let mut locations: Vec<RstaLocation> = Vec::new();
    let mut edges: Vec<RstaEdge> = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |key: (usize, Vec<usize>, Region), locations: &mut Vec<RstaLocation>, queue: &mut VecDeque<usize>| {
        if let Some(&i) = index.get(&key) {
            return i;
        }
        let (q, large, region) = key.clone();
        let accepting = a.locations[q].accepting.as_ref().is_some_and(|f| region.satisfies(f, &large));
        locations.push(RstaLocation { original: q, large, region, accepting });
        let i = locations.len() - 1;
        index.insert(key, i);
        queue.push_back(i);
        i
    };

    let start = intern((q0, Vec::new(), Region::of(&x0, m)), &mut locations, &mut queue);
    while let Some(li) = queue.pop_front() {
        let loc = locations[li].clone();
        let chain = loc.region.successor_chain();
        for (ei, e) in a.edges.iter().enumerate() {
            if e.src != loc.original {
                continue;
            }
            for guard in &chain {
                if !guard.satisfies(&e.guard, &loc.large) {
                    continue;
                }
                let mut large: Vec<usize> =
                    loc.large.iter().copied().chain(guard.above_clocks()).filter(|c| !e.resets.contains(c)).collect();
                large.sort_unstable();
                large.dedup();
                let mut resets: Vec<usize> = e.resets.iter().copied().chain(large.iter().copied()).collect();
                resets.sort_unstable();
                resets.dedup();
                let target = guard.reset(&resets);
                let dst = intern((e.dst, large, target), &mut locations, &mut queue);
                edges.push(RstaEdge { src: li, dst, label: e.label, guard: guard.clone(), resets, original: ei });
            }
        }
    }

    // Co-reachability by backward search on the finite split graph.
    let n = locations.len();
    let mut alive: Vec<bool> = locations.iter().map(|l| l.accepting).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for e in &edges {
            if alive[e.dst] && !alive[e.src] {
                alive[e.src] = true;
                changed = true;
            }
        }
    }
    let mut remap = vec![usize::MAX; n];
    let mut kept = Vec::new();
    for i in 0..n {
        if alive[i] {
            remap[i] = kept.len();
            kept.push(locations[i].clone());
        }
    }
    let kept_edges: Vec<RstaEdge> = edges
        .into_iter()
        .filter(|e| alive[e.src] && alive[e.dst])
        .map(|e| RstaEdge { src: remap[e.src], dst: remap[e.dst], ..e })
        .collect();
    let initial = alive[start].then(|| remap[start]);
    let vertices = kept.iter().map(|l| l.region.vertices().expect("starting regions are bounded")).collect();
    let mut outgoing = vec![Vec::new(); kept.len()];
    for (i, e) in kept_edges.iter().enumerate() {
        outgoing[e.src].push(i);
    }
    Ok(Rsta {
        clocks: a.clocks.clone(),
        alphabet: a.alphabet.clone(),
        location_names: a.locations.iter().map(|l| l.name.clone()).collect(),
        max_constant: m,
        locations: kept,
        edges: kept_edges,
        initial,
        initial_vector: init,
        vertices,
        outgoing,
    })
}
