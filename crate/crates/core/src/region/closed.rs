use super::{Rsta, Vertex};
use crate::dbm::{language_class, LanguageClass};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedError {
    #[error("vertex {0:?} is not a vertex of the starting region")]
    NotAVertex(Vertex),
    #[error("empty vertex set")]
    Empty,
}

fn indices(all: &[Vertex], face: &[Vertex]) -> Result<Vec<usize>, ClosedError> {
    if face.is_empty() {
        return Err(ClosedError::Empty);
    }
    face.iter().map(|v| all.iter().position(|w| w == v).ok_or_else(|| ClosedError::NotAVertex(v.clone()))).collect()
}

/// Vertices of the closed successor of the face spanned by `face` (a subset of the source
/// vertices) through the closure of `edge`. The successor of a region closure is again the
/// closure of a region, spanned by the destination vertices reachable from the face.
pub fn closed_successor(a: &Rsta, edge: usize, face: &[Vertex]) -> Result<Vec<Vertex>, ClosedError> {
    let e = &a.edges[edge];
    let src = a.vertices(e.src);
    let dst = a.vertices(e.dst);
    let from = indices(src, face)?;
    Ok(dst
        .iter()
        .filter(|w| from.iter().any(|&i| language_class(a, &[edge], &src[i], w) != LanguageClass::Empty))
        .cloned()
        .collect())
}

/// Symmetric to [`closed_successor`]: source vertices that reach the given destination face.
pub fn closed_predecessor(a: &Rsta, edge: usize, face: &[Vertex]) -> Result<Vec<Vertex>, ClosedError> {
    let e = &a.edges[edge];
    let src = a.vertices(e.src);
    let dst = a.vertices(e.dst);
    let to = indices(dst, face)?;
    Ok(src
        .iter()
        .filter(|v| to.iter().any(|&j| language_class(a, &[edge], v, &dst[j]) != LanguageClass::Empty))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rational::{int, ratio, Rational};
    use crate::region::region_split;

    fn a6_main() -> (Rsta, usize) {
        let r = region_split(&corpus::automaton("a6")).unwrap();
        let q = r.locations.iter().position(|l| l.original == 0 && l.region.contains(&[ratio(1, 2), int(0)])).unwrap();
        let d1 = *r.outgoing(q).iter().find(|&&e| r.edges[e].guard.is_open_in_time()).unwrap();
        (r, d1)
    }

    /// Closed reachability of a single clock vector by interval arithmetic: delays in the
    /// closed guard interval, then resets.
    fn interval_successors(r: &Rsta, edge: usize, x: &[Rational]) -> Vec<Vec<Rational>> {
        let e = &r.edges[edge];
        let c = e.guard.closure();
        let mut lo = int(0);
        let mut hi: Option<Rational> = None;
        for (k, (l, h)) in c.bounds.iter().enumerate() {
            lo = lo.max(int(*l) - &x[k]);
            if let Some(h) = h {
                let cand = int(*h) - &x[k];
                hi = Some(hi.map_or(cand.clone(), |v: Rational| v.min(cand)));
            }
        }
        let hi = hi.unwrap_or_else(|| lo.clone() + int(1));
        if lo > hi {
            return Vec::new();
        }
        [lo, hi]
            .iter()
            .map(|t| {
                let mut y: Vec<Rational> = x.iter().map(|v| v + t).collect();
                for &r in &e.resets {
                    y[r] = int(0);
                }
                y
            })
            .collect()
    }

    #[test]
    fn a6_vertex_successors() {
        let (r, d1) = a6_main();
        assert_eq!(closed_successor(&r, d1, &[vec![0, 0]]).unwrap(), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(closed_successor(&r, d1, &[vec![1, 0]]).unwrap(), vec![vec![0, 0]]);
        let ends = interval_successors(&r, d1, &[int(0), int(0)]);
        assert_eq!(ends, vec![vec![int(0), int(0)], vec![int(0), int(1)]]);
        assert_eq!(interval_successors(&r, d1, &[int(1), int(0)]), vec![vec![int(0), int(0)]; 2]);
    }

    #[test]
    fn full_closures_map_onto_each_other() {
        for name in corpus::NAMES {
            let r = region_split(&corpus::automaton(name)).unwrap();
            for (i, e) in r.edges.iter().enumerate() {
                assert_eq!(closed_successor(&r, i, r.vertices(e.src)).unwrap(), r.vertices(e.dst), "{name} e{i}");
                assert_eq!(closed_predecessor(&r, i, r.vertices(e.dst)).unwrap(), r.vertices(e.src), "{name} e{i}");
            }
        }
    }

    #[test]
    fn rejects_foreign_vertex() {
        let (r, d1) = a6_main();
        assert_eq!(closed_successor(&r, d1, &[vec![2, 2]]), Err(ClosedError::NotAVertex(vec![2, 2])));
    }
}
