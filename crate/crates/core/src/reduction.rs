//! Pendant paths of length two: detection, stripping down to the reduced
//! core, and checks of how stripping and adding them moves the spectrum.

use num_bigint::BigInt;
use serde::Serialize;

use crate::spectra::{m_value, multiplicity};
use crate::tree::{
    attach_pendants, enumerate_free_trees, AttachSpec, CanonicalCode, Tree, TreeError,
};

/// Pendant `P_2` counts per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PendantP2Report {
    pub per_vertex: Vec<usize>,
    pub total: usize,
    pub is_reduced: bool,
}

/// Middle vertices of the pendant paths `v - w - u` hanging at `v`, in
/// ascending order: `w` has degree 2 and its other neighbour `u` is a leaf.
pub fn pendant_mids(tree: &Tree, v: usize) -> Vec<usize> {
    let mut mids: Vec<usize> = tree
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| {
            tree.degree(w) == 2 && {
                let u = other_neighbor(tree, w, v);
                tree.degree(u) == 1
            }
        })
        .collect();
    mids.sort_unstable();
    mids
}

fn other_neighbor(tree: &Tree, w: usize, v: usize) -> usize {
    let ns = tree.neighbors(w);
    if ns[0] == v {
        ns[1]
    } else {
        ns[0]
    }
}

pub fn pendant_report(tree: &Tree) -> PendantP2Report {
    let per_vertex: Vec<usize> = (0..tree.order())
        .map(|v| pendant_mids(tree, v).len())
        .collect();
    let total = per_vertex.iter().sum();
    PendantP2Report {
        per_vertex,
        total,
        is_reduced: total == 0,
    }
}

/// Removes the pendant `P_2` at `v` whose middle vertex has the smallest
/// label. Surviving vertices keep their relative order.
pub fn strip_pendant_p2(tree: &Tree, v: usize) -> Result<Tree, TreeError> {
    tree.check_vertex(v)?;
    let w = *pendant_mids(tree, v)
        .first()
        .ok_or(TreeError::NoPendantP2(v))?;
    let u = other_neighbor(tree, w, v);
    let mut parts = tree.components_without(&[w, u]);
    debug_assert_eq!(parts.len(), 1);
    Ok(parts.remove(0).0)
}

/// One strip performed by [`reduce_with_trace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripStep {
    /// Attachment vertex, labeled in the tree before the strip.
    pub vertex: usize,
    pub code_before: CanonicalCode,
    pub m_before: usize,
    pub m_after: usize,
}

/// Strips pendant `P_2`s until none remain. Each round strips at the first
/// vertex, in canonical vertex order, that carries one.
pub fn reduce_with_trace(tree: &Tree) -> (Tree, Vec<StripStep>) {
    let mut current = tree.clone();
    let mut steps = Vec::new();
    let mut m_current = m_value(&current);
    loop {
        let order = current.canonical_vertex_order();
        let Some(v) = order
            .into_iter()
            .find(|&v| !pendant_mids(&current, v).is_empty())
        else {
            return (current, steps);
        };
        let next = strip_pendant_p2(&current, v).expect("vertex carries a pendant P2");
        let m_next = m_value(&next);
        steps.push(StripStep {
            vertex: v,
            code_before: current.canonical_code().clone(),
            m_before: m_current,
            m_after: m_next,
        });
        current = next;
        m_current = m_next;
    }
}

pub fn reduce_core(tree: &Tree) -> Tree {
    let mut current = tree.clone();
    loop {
        let order = current.canonical_vertex_order();
        match order
            .into_iter()
            .find(|&v| !pendant_mids(&current, v).is_empty())
        {
            Some(v) => {
                current = strip_pendant_p2(&current, v).expect("vertex carries a pendant P2")
            }
            None => return current,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityVerdict {
    pub holds: bool,
    pub m: usize,
    /// `(vertex, m after stripping one pendant P_2 there)`
    pub strips: Vec<(usize, usize)>,
}

/// Strips one pendant `P_2` at each vertex that has one (separately) and
/// checks that `m` never increases.
pub fn delp2_monotonicity_check(tree: &Tree) -> Result<MonotonicityVerdict, TreeError> {
    let m = m_value(tree);
    let strips: Vec<(usize, usize)> = (0..tree.order())
        .filter(|&v| !pendant_mids(tree, v).is_empty())
        .map(|v| (v, m_value(&strip_pendant_p2(tree, v).expect("checked"))))
        .collect();
    if strips.is_empty() {
        return Err(TreeError::NoPendantP2(0));
    }
    Ok(MonotonicityVerdict {
        holds: strips.iter().all(|&(_, after)| after <= m),
        m,
        strips,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthVerdict {
    pub holds: bool,
    pub m_before: usize,
    pub m_after: usize,
    pub mult_one_before: usize,
    pub mult_one_after: usize,
}

/// Adds one more pendant `P_2` at a vertex that already has one and checks
/// that `m` stays put while the multiplicity of 1 grows by exactly one.
pub fn delp2_growth_check(tree: &Tree, v: usize) -> Result<GrowthVerdict, TreeError> {
    tree.check_vertex(v)?;
    if pendant_mids(tree, v).is_empty() {
        return Err(TreeError::NoPendantP2(v));
    }
    let grown = attach_pendants(tree, &AttachSpec::new(vec![(v, 1)])?)?;
    let one = BigInt::from(1);
    let m_before = m_value(tree);
    let m_after = m_value(&grown);
    let mult_one_before = multiplicity(tree, &one);
    let mult_one_after = multiplicity(&grown, &one);
    Ok(GrowthVerdict {
        holds: m_before == m_after && mult_one_after == mult_one_before + 1,
        m_before,
        m_after,
        mult_one_before,
        mult_one_after,
    })
}

/// Every reduced tree of order at most `order_cap` with exactly `k`
/// eigenvalues in `(-1, 1)`, in enumeration order.
pub fn reduced_census(k: usize, order_cap: usize) -> Vec<Tree> {
    (1..=order_cap)
        .flat_map(|n| enumerate_free_trees(n, None).expect("order is positive"))
        .filter(|t| pendant_report(t).is_reduced && m_value(t) == k)
        .collect()
}
