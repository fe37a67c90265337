//! Characteristic polynomials of trees and the spectral statistics built on
//! them: `m(T)`, eigenvalue multiplicities, nullity, integrality, the
//! join formula and two certified eigenvalue inequalities.

mod charpoly;
mod graph;
mod inequalities;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{integer, IntPoly, PolyError, RootCounter, SpectrumSummary};
use crate::tree::{CanonicalCode, Tree, TreeError};

pub use charpoly::{char_poly, char_poly_without, forest_char_poly, CharPolyCache};
pub use graph::{char_poly_fixed_graph_q, graph_q, graph_q_subdivided, SmallGraph};
pub use inequalities::{
    courant_weyl_check, squared_shift_check, CourantWeylVerdict, Method, ShiftVerdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectraError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("vertex set is not a bipartition class of the tree")]
    InvalidBipartitionClass,
    #[error("number of copies must be at least 1")]
    InvalidJoinCount,
    #[error("comparison still inconclusive at interval width 2^-{0}")]
    PrecisionExhausted(u32),
}

/// Everything the crate derives from a tree's characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSpectrum {
    pub code: CanonicalCode,
    pub char_poly: IntPoly,
    pub summary: SpectrumSummary,
    /// Eigenvalues in `(-1, 1)`, with multiplicity.
    pub m_value: usize,
    pub nullity: usize,
}

impl TreeSpectrum {
    pub fn of(tree: &Tree) -> Self {
        let phi = char_poly(tree);
        let summary = spectrum_summary(&phi);
        TreeSpectrum {
            code: tree.canonical_code().clone(),
            m_value: m_value_of(&phi),
            nullity: summary.nullity,
            summary,
            char_poly: phi,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.summary.is_integral
    }
}

fn spectrum_summary(phi: &IntPoly) -> SpectrumSummary {
    crate::poly::integer_roots(phi).expect("characteristic polynomials are monic")
}

fn m_value_of(phi: &IntPoly) -> usize {
    RootCounter::new(phi)
        .expect("characteristic polynomials are nonzero")
        .count_open(&integer(-1), &integer(1))
        .with_multiplicity
}

/// Number of eigenvalues in the open interval `(-1, 1)`.
pub fn m_value(tree: &Tree) -> usize {
    m_value_of(&char_poly(tree))
}

/// Multiplicity of the integer `lambda` as an eigenvalue.
pub fn multiplicity(tree: &Tree, lambda: &BigInt) -> usize {
    poly_multiplicity(&char_poly(tree), lambda)
}

/// Multiplicity of `lambda` in a forest: the sum over its components.
pub fn forest_multiplicity<'a, I: IntoIterator<Item = &'a Tree>>(
    forest: I,
    lambda: &BigInt,
) -> usize {
    forest.into_iter().map(|t| multiplicity(t, lambda)).sum()
}

fn poly_multiplicity(p: &IntPoly, lambda: &BigInt) -> usize {
    let factor = IntPoly::linear(lambda);
    let mut current = p.clone();
    let mut m = 0;
    while let Ok(q) = current.exact_divide(&factor) {
        current = q;
        m += 1;
    }
    m
}

/// Nullity as the power of `x` dividing the characteristic polynomial.
pub fn nullity_poly(tree: &Tree) -> usize {
    char_poly(tree).valuation()
}

/// Nullity as `n - 2 * (maximum matching size)`. The matching is found by
/// repeatedly matching a leaf with its neighbour and deleting both.
pub fn nullity_matching(tree: &Tree) -> usize {
    let n = tree.order();
    let mut degree = tree.degrees();
    let mut removed = vec![false; n];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut matched = 0;
    while let Some(leaf) = leaves.pop() {
        if removed[leaf] || degree[leaf] != 1 {
            continue;
        }
        let partner = tree
            .neighbors(leaf)
            .iter()
            .copied()
            .find(|&w| !removed[w])
            .expect("a leaf has one live neighbour");
        removed[leaf] = true;
        removed[partner] = true;
        matched += 1;
        for &w in tree.neighbors(partner) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    leaves.push(w);
                }
            }
        }
    }
    n - 2 * matched
}

/// Integrality verdict; the summary carries the integer spectrum and the
/// residual factor.
pub fn is_integral(tree: &Tree) -> SpectrumSummary {
    spectrum_summary(&char_poly(tree))
}

/// `phi(T_2)^(k-1) * (phi(T_1) phi(T_2) - k phi(T_1 - v_1) phi(T_2 - v_2))`,
/// the characteristic polynomial of `T_1` with `v_1` joined to `v_2` in each
/// of `k` copies of `T_2`.
pub fn join_formula(
    t1: &Tree,
    v1: usize,
    t2: &Tree,
    v2: usize,
    k: usize,
) -> Result<IntPoly, SpectraError> {
    t1.check_vertex(v1)?;
    t2.check_vertex(v2)?;
    if k == 0 {
        return Err(SpectraError::InvalidJoinCount);
    }
    let p1 = char_poly(t1);
    let p2 = char_poly(t2);
    let d1 = char_poly_without(t1, v1);
    let d2 = char_poly_without(t2, v2);
    let inner = &(&p1 * &p2) - &(&d1 * &d2).scale(&BigInt::from(k));
    Ok(&p2.pow(k as u32 - 1) * &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;
    use crate::tree::{double_star, join_copies, path, random_tree, s_tree, star};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// `x (x^2 - p - 3) (x^2 - 1)^(p + 1)`
    fn spider_poly(q: i64) -> IntPoly {
        &(&IntPoly::x() * &p(&[-q - 3, 0, 1])) * &p(&[-1, 0, 1]).pow(q as u32 + 1)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&path(1)), IntPoly::x());
        assert_eq!(char_poly(&path(2)), p(&[-1, 0, 1]));
        assert_eq!(char_poly(&star(4)), p(&[0, 0, 0, -4, 0, 1]));
        for q in 0..=5 {
            assert_eq!(char_poly(&s_tree(&[q as usize]).unwrap()), spider_poly(q));
        }
    }

    #[test]
    fn char_poly_matches_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rand::Rng::gen_range(&mut rng, 1..=13);
            let t = random_tree(n, &mut rng);
            assert_eq!(
                char_poly(&t),
                SmallGraph::from_tree(&t).char_poly(),
                "{t:?}"
            );
        }
    }

    #[test]
    fn cache_eviction_keeps_results() {
        let mut small = CharPolyCache::new(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let t = random_tree(10, &mut rng);
            assert_eq!(small.char_poly(&t), SmallGraph::from_tree(&t).char_poly());
            assert!(small.len() <= 3);
        }
        assert!(small.misses() > 0);
    }

    #[test]
    fn statistics() {
        assert_eq!(m_value(&path(2)), 0);
        assert_eq!(m_value(&path(4)), 2);
        assert_eq!(m_value(&path(1)), 1);
        assert_eq!(multiplicity(&star(4), &0.into()), 3);
        assert_eq!(multiplicity(&s_tree(&[1]).unwrap(), &1.into()), 2);
        assert_eq!(multiplicity(&path(2), &2.into()), 0);
        for t in [star(4), path(2), s_tree(&[3]).unwrap(), double_star(2, 2)] {
            assert_eq!(nullity_poly(&t), nullity_matching(&t));
        }
        assert_eq!(nullity_matching(&star(4)), 3);
        assert_eq!(nullity_matching(&s_tree(&[4]).unwrap()), 1);
    }

    #[test]
    fn integrality() {
        let d = is_integral(&double_star(2, 2));
        assert!(d.is_integral);
        assert_eq!(d.nullity, 2);
        for k in [-2, -1, 1, 2] {
            assert_eq!(d.multiplicity(&k.into()), 1);
        }
        assert!(!is_integral(&path(4)).is_integral);
        assert_eq!(is_integral(&path(4)).residual, p(&[1, 0, -3, 0, 1]));
        assert!(is_integral(&s_tree(&[6]).unwrap()).is_integral);
    }

    #[test]
    fn tree_spectrum_fields() {
        let t = s_tree(&[1]).unwrap();
        let s = TreeSpectrum::of(&t);
        assert_eq!(s.nullity, 1);
        assert_eq!(s.m_value, 1);
        assert_eq!(s.char_poly.degree(), Some(7));
        assert!(s.is_integral());
        assert_eq!(s.summary.factored(), "x*(x^2-4)*(x^2-1)^2");
    }

    #[test]
    fn join_examples() {
        assert_eq!(
            join_formula(&path(1), 0, &path(2), 0, 2).unwrap(),
            char_poly(&path(5))
        );
        assert_eq!(
            join_formula(&path(1), 0, &path(1), 0, 4).unwrap(),
            char_poly(&star(4))
        );
        assert_eq!(
            join_formula(&path(1), 0, &path(1), 0, 0),
            Err(SpectraError::InvalidJoinCount)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let a = random_tree(rand::Rng::gen_range(&mut rng, 1..=6), &mut rng);
            let b = random_tree(rand::Rng::gen_range(&mut rng, 1..=5), &mut rng);
            let v1 = rand::Rng::gen_range(&mut rng, 0..a.order());
            let v2 = rand::Rng::gen_range(&mut rng, 0..b.order());
            let k = rand::Rng::gen_range(&mut rng, 1..=3);
            let joined = join_copies(&a, v1, &b, v2, k).unwrap();
            assert_eq!(join_formula(&a, v1, &b, v2, k).unwrap(), char_poly(&joined));
        }
    }

    #[test]
    fn sum_of_squares_and_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..80 {
            let n = rand::Rng::gen_range(&mut rng, 2..=16);
            let t = random_tree(n, &mut rng);
            let phi = char_poly(&t);
            assert_eq!(phi.coeff(n - 2), BigInt::from(-(n as i64 - 1)));
            let (h, _) = phi.even_part().unwrap();
            assert_eq!(h % 2, n % 2);
        }
    }

    #[test]
    fn interlacing_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let probes: Vec<_> = (-12..=12).map(|k| rational(k, 4)).collect();
        for _ in 0..25 {
            let n = rand::Rng::gen_range(&mut rng, 2..=10);
            let t = random_tree(n, &mut rng);
            let whole = RootCounter::new(&char_poly(&t)).unwrap();
            for v in 0..n {
                let sub = RootCounter::new(&char_poly_without(&t, v)).unwrap();
                for a in &probes {
                    let (big, small) = (whole.count_above(a), sub.count_above(a));
                    assert!(small <= big && big <= small + 1);
                }
            }
        }
    }

    #[test]
    fn pendant_edge_keeps_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..40 {
            let n = rand::Rng::gen_range(&mut rng, 3..=14);
            let t = random_tree(n, &mut rng);
            let leaf = (0..n).find(|&v| t.degree(v) == 1).unwrap();
            let u = t.neighbors(leaf)[0];
            let rest = t.components_without(&[leaf, u]);
            let h: usize = rest.iter().map(|(c, _)| nullity_poly(c)).sum();
            assert_eq!(h, nullity_poly(&t));
        }
    }
}
