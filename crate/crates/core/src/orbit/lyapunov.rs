use super::{OrbitElement, Semiring};
use crate::rational::Rational;
use num_traits::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("orbit element is not cyclic")]
pub struct NotCyclic;

/// SCCs of the support graph of a cyclic orbit and the Lyapunov family they induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccFamily {
    /// Strongly connected components in topological order, each sorted.
    pub components: Vec<Vec<usize>>,
    /// Vertex sets `S₀ ∪ … ∪ S_{i−1}` for `i = 1..s`; each defines `ℓ(x) = Σ λ_v(x)`.
    pub lyapunov: Vec<Vec<usize>>,
}

impl SccFamily {
    /// Values of every Lyapunov function at barycentric coordinates `lambda`.
    pub fn evaluate(&self, lambda: &[Rational]) -> Vec<Rational> {
        self.lyapunov
            .iter()
            .map(|set| set.iter().fold(Rational::zero(), |acc, &v| acc + &lambda[v]))
            .collect()
    }
}

pub fn scc_decomposition<S: Semiring>(e: &OrbitElement<S>) -> Result<SccFamily, NotCyclic> {
    let (Some(_), Some(m)) = (e.cyclic_location(), e.matrix()) else { return Err(NotCyclic) };
    let n = m.rows();
    let mut g = DiGraph::<usize, ()>::with_capacity(n, n * n);
    let nodes: Vec<_> = (0..n).map(|i| g.add_node(i)).collect();
    for i in 0..n {
        for j in 0..n {
            if !m.get(i, j).is_zero() {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    // Tarjan yields components in reverse topological order.
    let mut components: Vec<Vec<usize>> =
        tarjan_scc(&g).into_iter().rev().map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|x| g[x]).collect();
            c.sort_unstable();
            c
        }).collect();
    components.shrink_to_fit();
    let mut lyapunov = Vec::new();
    let mut acc: Vec<usize> = Vec::new();
    for c in &components[..components.len().saturating_sub(1)] {
        acc.extend(c);
        let mut set = acc.clone();
        set.sort_unstable();
        lyapunov.push(set);
    }
    Ok(SccFamily { components, lyapunov })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::Matrix;

    fn b(rows: &[&[u8]]) -> Matrix<bool> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| x == 1).collect()).collect())
    }

    #[test]
    fn upper_triangular_two_sccs() {
        let f = scc_decomposition(&OrbitElement::triple(0, b(&[&[1, 1], &[0, 1]]), 0)).unwrap();
        assert_eq!(f.components, vec![vec![0], vec![1]]);
        assert_eq!(f.lyapunov, vec![vec![0]]);
    }

    #[test]
    fn complete_graph_single_scc() {
        let f = scc_decomposition(&OrbitElement::triple(0, b(&[&[1, 1], &[1, 1]]), 0)).unwrap();
        assert_eq!(f.components.len(), 1);
        assert!(f.lyapunov.is_empty());
    }

    #[test]
    fn non_cyclic_rejected() {
        assert_eq!(scc_decomposition(&OrbitElement::triple(0, b(&[&[1]]), 1)), Err(NotCyclic));
        assert_eq!(scc_decomposition(&OrbitElement::<bool>::One), Err(NotCyclic));
    }
}
