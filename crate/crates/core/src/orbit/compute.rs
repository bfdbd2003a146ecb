use super::{Freedom, Matrix, OrbitElement, Semiring, Speed};
use crate::dbm::{language_class, LanguageClass};
use crate::rational::int;
use crate::region::Rsta;
use rayon::prelude::*;

/// Which orbit monoid to work in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    P,
    F,
    D,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::P => "p",
            Kind::F => "f",
            Kind::D => "d",
        }
    }
}

/// Semirings that abstract the language between two vertices.
pub trait Abstraction: Semiring {
    const KIND: Kind;
    fn abstract_class(class: &LanguageClass) -> Self;
}

impl Abstraction for bool {
    const KIND: Kind = Kind::P;

    fn abstract_class(class: &LanguageClass) -> bool {
        *class != LanguageClass::Empty
    }
}

impl Abstraction for Freedom {
    const KIND: Kind = Kind::F;

    fn abstract_class(class: &LanguageClass) -> Freedom {
        match class {
            LanguageClass::Empty => Freedom::Zero,
            LanguageClass::Singleton { .. } => Freedom::Narrow,
            LanguageClass::Wide { .. } => Freedom::Wide,
        }
    }
}

impl Abstraction for Speed {
    const KIND: Kind = Kind::D;

    fn abstract_class(class: &LanguageClass) -> Speed {
        match class {
            LanguageClass::Empty => Speed::Zero,
            LanguageClass::Singleton { duration, .. } if *duration == int(0) => Speed::Instant,
            LanguageClass::Singleton { duration, .. } if *duration >= int(1) => Speed::Slow,
            LanguageClass::Wide { duration } if duration.lo >= int(1) => Speed::Slow,
            _ => Speed::Fast,
        }
    }
}

/// Orbit of a path computed entry by entry from its timing polytopes.
pub fn direct_path_orbit<S: Abstraction>(a: &Rsta, path: &[usize]) -> OrbitElement<S> {
    let (Some(&first), Some(&last)) = (path.first(), path.last()) else { return OrbitElement::One };
    if !a.is_path(path) {
        return OrbitElement::Zero;
    }
    let src = a.edges[first].src;
    let dst = a.edges[last].dst;
    let (vs, ws) = (a.vertices(src), a.vertices(dst));
    let matrix = Matrix::from_fn(vs.len(), ws.len(), |i, j| S::abstract_class(&language_class(a, path, &vs[i], &ws[j])));
    OrbitElement::triple(src, matrix, dst)
}

pub fn edge_orbit<S: Abstraction>(a: &Rsta, edge: usize) -> OrbitElement<S> {
    direct_path_orbit(a, &[edge])
}

/// All edge orbits of an RsTA, computed once.
#[derive(Debug, Clone)]
pub struct EdgeOrbits<S> {
    pub orbits: Vec<OrbitElement<S>>,
}

impl<S: Abstraction> EdgeOrbits<S> {
    pub fn new(a: &Rsta) -> EdgeOrbits<S> {
        EdgeOrbits { orbits: (0..a.edges.len()).into_par_iter().map(|e| edge_orbit(a, e)).collect() }
    }

    /// Orbit of an edge sequence by composition; non-paths give `Zero`.
    pub fn path_orbit(&self, path: &[usize]) -> OrbitElement<S> {
        path.iter().fold(OrbitElement::One, |acc, &e| acc.compose(&self.orbits[e]))
    }
}

pub fn path_orbit<S: Abstraction>(a: &Rsta, path: &[usize]) -> OrbitElement<S> {
    path.iter().fold(OrbitElement::One, |acc, &e| acc.compose(&edge_orbit(a, e)))
}
