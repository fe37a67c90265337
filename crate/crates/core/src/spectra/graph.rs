//! Small dense graphs and their characteristic polynomials by exact
//! Faddeev–LeVerrier iteration. Only used for the cyclic auxiliary graph `Q`
//! and its subdivisions, and as an independent cross-check for trees.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::IntPoly;
use crate::tree::Tree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    adj: Vec<Vec<bool>>,
}

impl SmallGraph {
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; order]; order];
        for &(u, v) in edges {
            assert!(u != v && u < order && v < order, "bad edge {u}-{v}");
            adj[u][v] = true;
            adj[v][u] = true;
        }
        SmallGraph { adj }
    }

    pub fn from_tree(t: &Tree) -> Self {
        Self::from_edges(t.order(), &t.edges())
    }

    /// Cycle `C_len` on vertices `0..len` with `pendants` leaves hung on
    /// vertex 0.
    pub fn cycle_with_pendants(len: usize, pendants: usize) -> Self {
        assert!(len >= 3);
        let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        edges.extend((0..pendants).map(|j| (0, len + j)));
        Self::from_edges(len + pendants, &edges)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// `det(xI - A)` via `M_k = A M_{k-1} + c_{n-k+1} I`,
    /// `c_{n-k} = -tr(A M_k) / k`; every division is exact.
    pub fn char_poly(&self) -> IntPoly {
        let n = self.order();
        let a: Vec<Vec<BigInt>> = self
            .adj
            .iter()
            .map(|row| row.iter().map(|&b| BigInt::from(u8::from(b))).collect())
            .collect();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::from(1);
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            // M_k = A * M_{k-1} + c_{n-k+1} I
            let mut next = mat_mul(&a, &m);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] += &coeffs[n - k + 1];
            }
            m = next;
            let am = mat_mul(&a, &m);
            let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
            let (q, r) = num_integer::Integer::div_rem(&-trace, &BigInt::from(k));
            debug_assert!(r.is_zero());
            coeffs[n - k] = q;
        }
        IntPoly::new(coeffs)
    }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// The graph `Q`: a 6-cycle with two pendant vertices on one cycle vertex.
pub fn graph_q() -> SmallGraph {
    SmallGraph::cycle_with_pendants(6, 2)
}

/// `Q` after subdividing a cycle edge `steps` times.
pub fn graph_q_subdivided(steps: usize) -> SmallGraph {
    SmallGraph::cycle_with_pendants(6 + steps, 2)
}

/// Exact characteristic polynomial of `Q`.
pub fn char_poly_fixed_graph_q() -> IntPoly {
    graph_q().char_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{path, star};

    #[test]
    fn determinant_route_on_small_trees() {
        assert_eq!(
            SmallGraph::from_tree(&path(2)).char_poly(),
            IntPoly::from_i64s(&[-1, 0, 1])
        );
        assert_eq!(
            SmallGraph::from_tree(&star(4)).char_poly(),
            IntPoly::from_i64s(&[0, 0, 0, -4, 0, 1])
        );
    }

    #[test]
    fn six_cycle() {
        // phi(C_6) = x^6 - 6x^4 + 9x^2 - 4
        let c6 = SmallGraph::cycle_with_pendants(6, 0);
        assert_eq!(c6.char_poly(), IntPoly::from_i64s(&[-4, 0, 9, 0, -6, 0, 1]));
    }

    #[test]
    fn graph_q_polynomial() {
        // y (y - 5)(y - 2)(y - 1) with y = x^2
        let want = IntPoly::from_i64s(&[0, 0, -10, 0, 17, 0, -8, 0, 1]);
        assert_eq!(char_poly_fixed_graph_q(), want);
        let (h, q) = want.even_part().unwrap();
        assert_eq!((h, q), (2, IntPoly::from_i64s(&[-10, 17, -8, 1])));
    }
}
