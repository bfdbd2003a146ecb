use super::Semiring;

/// A dense matrix over a semiring, rows indexing source vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Semiring> Matrix<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Matrix<S> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Matrix<S> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[S]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(S::zero(), |acc, k| acc.add(self.get(i, k).mul(other.get(k, j))))
        })
    }

    /// Entry-wise image under a map of semirings.
    pub fn map<T: Semiring>(&self, f: impl Fn(S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// Every row and every column has a non-zero entry.
    pub fn is_total(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).any(|j| !self.get(i, j).is_zero()))
            && (0..self.cols).all(|j| (0..self.rows).any(|i| !self.get(i, j).is_zero()))
    }
}

/// An element of an orbit monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitElement<S> {
    Zero,
    One,
    Triple { src: usize, matrix: Matrix<S>, dst: usize },
}

impl<S: Semiring> OrbitElement<S> {
    /// Builds a triple, normalizing an all-zero matrix to `Zero`.
    pub fn triple(src: usize, matrix: Matrix<S>, dst: usize) -> OrbitElement<S> {
        if matrix.is_zero() {
            OrbitElement::Zero
        } else {
            OrbitElement::Triple { src, matrix, dst }
        }
    }

    pub fn compose(&self, other: &OrbitElement<S>) -> OrbitElement<S> {
        match (self, other) {
            (OrbitElement::Zero, _) | (_, OrbitElement::Zero) => OrbitElement::Zero,
            (OrbitElement::One, x) | (x, OrbitElement::One) => x.clone(),
            (
                OrbitElement::Triple { src, matrix: a, dst: mid },
                OrbitElement::Triple { src: mid2, matrix: b, dst },
            ) => {
                if mid != mid2 {
                    OrbitElement::Zero
                } else {
                    OrbitElement::triple(*src, a.mul(b), *dst)
                }
            }
        }
    }

    /// `Some(location)` for a triple starting and ending at the same location.
    pub fn cyclic_location(&self) -> Option<usize> {
        match self {
            OrbitElement::Triple { src, dst, .. } if src == dst => Some(*src),
            _ => None,
        }
    }

    pub fn matrix(&self) -> Option<&Matrix<S>> {
        match self {
            OrbitElement::Triple { matrix, .. } => Some(matrix),
            _ => None,
        }
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        match self {
            OrbitElement::Triple { src, dst, .. } => Some((*src, *dst)),
            _ => None,
        }
    }

    pub fn map<T: Semiring>(&self, f: impl Fn(S) -> T) -> OrbitElement<T> {
        match self {
            OrbitElement::Zero => OrbitElement::Zero,
            OrbitElement::One => OrbitElement::One,
            OrbitElement::Triple { src, matrix, dst } => OrbitElement::triple(*src, matrix.map(f), *dst),
        }
    }

    /// The p-orbit with the same support.
    pub fn support(&self) -> OrbitElement<bool> {
        self.map(|x| !x.is_zero())
    }

    pub fn power(&self, k: usize) -> OrbitElement<S> {
        (0..k).fold(OrbitElement::One, |acc, _| acc.compose(self))
    }
}

/// Smallest `k ≥ 1` with `e^k` idempotent, together with `e^k`.
pub fn idempotent_power<S: Semiring>(e: &OrbitElement<S>) -> (usize, OrbitElement<S>) {
    let mut p = e.clone();
    let mut k = 1;
    loop {
        if p.compose(&p) == p {
            return (k, p);
        }
        p = p.compose(e);
        k += 1;
    }
}
