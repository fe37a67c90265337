//! Constructors for the tree families and structural edits.
//!
//! Labeling convention: the defining path (spine) comes first, then vertices
//! added by each construction step in the order they are attached. For
//! `c_tree(r)` with `n = r.len()` the spine is `v_1, ..., v_{2n+1}` at indices
//! `0..=2n`, so `v_j` is index `j - 1` and the central vertices `v_{2i}` are
//! the odd indices `1, 3, ..., 2n - 1`.

use serde::{Deserialize, Serialize};

use super::{Tree, TreeError};

struct Builder {
    adj: Vec<Vec<usize>>,
}

impl Builder {
    fn with_path(n: usize) -> Self {
        let mut b = Builder {
            adj: vec![Vec::new(); n],
        };
        for i in 1..n {
            b.link(i - 1, i);
        }
        b
    }

    fn from_tree(t: &Tree) -> Self {
        Builder {
            adj: t.adjacency().to_vec(),
        }
    }

    fn link(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    /// Adds a vertex adjacent to `to` and returns its index.
    fn sprout(&mut self, to: usize) -> usize {
        let v = self.adj.len();
        self.adj.push(Vec::new());
        self.link(to, v);
        v
    }

    fn finish(self) -> Tree {
        Tree::from_adjacency_unchecked(self.adj)
    }
}

/// `P_n`
pub fn path(n: usize) -> Tree {
    assert!(n >= 1, "path needs at least one vertex");
    Builder::with_path(n).finish()
}

/// `K_{1,k}` with the centre at index 0.
pub fn star(k: usize) -> Tree {
    let mut b = Builder::with_path(1);
    for _ in 0..k {
        b.sprout(0);
    }
    b.finish()
}

/// Edge `0-1` with `a` leaves on vertex 0 and `b` leaves on vertex 1.
pub fn double_star(a: usize, b: usize) -> Tree {
    let mut t = Builder::with_path(2);
    for _ in 0..a {
        t.sprout(0);
    }
    for _ in 0..b {
        t.sprout(1);
    }
    t.finish()
}

/// Indices of the central vertices `v_2, v_4, ..., v_{2n}` of `c_tree` and
/// `s_tree` built from `n` parameters.
pub fn c_tree_central(n: usize) -> Vec<usize> {
    (1..=n).map(|i| 2 * i - 1).collect()
}

fn build_c(r: &[usize]) -> Result<Builder, TreeError> {
    if r.is_empty() {
        return Err(TreeError::EmptyParameters);
    }
    let n = r.len();
    let mut b = Builder::with_path(2 * n + 1);
    for (centre, &count) in c_tree_central(n).into_iter().zip(r) {
        for _ in 0..count {
            b.sprout(centre);
        }
    }
    Ok(b)
}

/// `C(r_1, ..., r_n)`: the path `P_{2n+1}` with `r_i` extra leaves on `v_{2i}`.
pub fn c_tree(r: &[usize]) -> Result<Tree, TreeError> {
    Ok(build_c(r)?.finish())
}

/// `S(r_1, ..., r_n)`: `C(r)` with one new vertex hung on every leaf of
/// `C(r)` and on each of `v_3, v_5, ..., v_{2n-1}`.
pub fn s_tree(r: &[usize]) -> Result<Tree, TreeError> {
    let mut b = build_c(r)?;
    let n = r.len();
    let leaves: Vec<usize> = (0..b.adj.len()).filter(|&v| b.adj[v].len() == 1).collect();
    for v in leaves {
        b.sprout(v);
    }
    for i in 1..n {
        // v_{2i+1}
        b.sprout(2 * i);
    }
    Ok(b.finish())
}

/// Pendant-path attachment list `(vertex, copies)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachSpec {
    entries: Vec<(usize, usize)>,
}

impl AttachSpec {
    pub fn new(entries: Vec<(usize, usize)>) -> Result<Self, TreeError> {
        for (i, &(v, s)) in entries.iter().enumerate() {
            if s == 0 {
                return Err(TreeError::ZeroPendantCount(v));
            }
            if entries[..i].iter().any(|&(w, _)| w == v) {
                return Err(TreeError::DuplicateVertex(v));
            }
        }
        Ok(AttachSpec { entries })
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|&(_, s)| s).sum()
    }

    /// Same entries ordered by non-increasing pendant count (ties by vertex).
    pub fn sorted_desc(&self) -> AttachSpec {
        let mut entries = self.entries.clone();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        AttachSpec { entries }
    }
}

/// `T(v_1, ..., v_k; s_1, ..., s_k)`: hangs `s_i` copies of a pendant `P_2`
/// on `v_i`. Each copy adds the vertex next to `v_i` first, then its leaf.
pub fn attach_pendants(t: &Tree, spec: &AttachSpec) -> Result<Tree, TreeError> {
    for &(v, _) in spec.entries() {
        t.check_vertex(v)?;
    }
    let mut b = Builder::from_tree(t);
    for &(v, copies) in spec.entries() {
        for _ in 0..copies {
            let mid = b.sprout(v);
            b.sprout(mid);
        }
    }
    Ok(b.finish())
}

/// `T` with `r` new leaves on every vertex of `vertices`, added vertex by
/// vertex in the given order.
pub fn attach_leaves(t: &Tree, vertices: &[usize], r: usize) -> Result<Tree, TreeError> {
    for (i, &v) in vertices.iter().enumerate() {
        t.check_vertex(v)?;
        if vertices[..i].contains(&v) {
            return Err(TreeError::DuplicateVertex(v));
        }
    }
    let mut b = Builder::from_tree(t);
    for &v in vertices {
        for _ in 0..r {
            b.sprout(v);
        }
    }
    Ok(b.finish())
}

/// Uniformly random labeled tree of order `n` decoded from a random Prüfer
/// sequence.
pub fn random_tree<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    assert!(n >= 1, "a tree needs at least one vertex");
    if n <= 2 {
        return path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut b = Builder {
        adj: vec![Vec::new(); n],
    };
    for &v in &seq {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        b.link(leaf, v);
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    b.link(last[0], last[1]);
    b.finish()
}

/// `T_1` plus `k` copies of `T_2`, with `v_1` joined to every copy of `v_2`.
/// `T_1` keeps its labels; copy `j` of `T_2` is offset by
/// `|T_1| + j * |T_2|`.
pub fn join_copies(
    t1: &Tree,
    v1: usize,
    t2: &Tree,
    v2: usize,
    k: usize,
) -> Result<Tree, TreeError> {
    t1.check_vertex(v1)?;
    t2.check_vertex(v2)?;
    let mut adj = t1.adjacency().to_vec();
    for _ in 0..k {
        let offset = adj.len();
        adj.extend(
            t2.adjacency()
                .iter()
                .map(|ns| ns.iter().map(|&w| w + offset).collect::<Vec<_>>()),
        );
        adj[v1].push(offset + v2);
        adj[offset + v2].push(v1);
    }
    Ok(Tree::from_adjacency_unchecked(adj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sorted_degrees(t: &Tree) -> Vec<usize> {
        let mut d = t.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn paths_and_stars() {
        assert_eq!(path(1).edge_count(), 0);
        assert_eq!(path(2).edge_count(), 1);
        assert_eq!(sorted_degrees(&path(5)), vec![1, 1, 2, 2, 2]);
        assert_eq!(star(0).order(), 1);
        assert_eq!(star(4).order(), 5);
        assert_eq!(star(4).degree(0), 4);
        assert!(star(2).is_isomorphic(&path(3)));
    }

    #[test]
    fn c_trees() {
        let t = c_tree(&[1, 3, 0, 2]).unwrap();
        assert_eq!(t.order(), 9 + 6);
        let central = c_tree_central(4);
        assert_eq!(central, vec![1, 3, 5, 7]);
        let deg: Vec<usize> = central.iter().map(|&v| t.degree(v)).collect();
        assert_eq!(deg, vec![3, 5, 2, 4]);
        assert!(c_tree(&[0]).unwrap().is_isomorphic(&path(3)));
        assert!(c_tree(&[2]).unwrap().is_isomorphic(&star(4)));
        assert_eq!(c_tree(&[]).unwrap_err(), TreeError::EmptyParameters);
    }

    #[test]
    fn s_trees() {
        // S(1): spider with three legs of length two
        let s1 = s_tree(&[1]).unwrap();
        assert_eq!(s1.order(), 7);
        assert_eq!(sorted_degrees(&s1), vec![1, 1, 1, 2, 2, 2, 3]);
        assert!(s_tree(&[0]).unwrap().is_isomorphic(&path(5)));

        let s = s_tree(&[1, 3, 0, 2]).unwrap();
        // (2n+1+sum r) + (2+sum r) + (n-1)
        assert_eq!(s.order(), 15 + 8 + 3);
        // v3, v5, v7 gained one pendant vertex each
        for v in [2, 4, 6] {
            assert_eq!(s.degree(v), 3);
        }
        assert_eq!(s_tree(&[]).unwrap_err(), TreeError::EmptyParameters);
    }

    #[test]
    fn attach_examples() {
        let single = AttachSpec::new(vec![(0, 1)]).unwrap();
        assert!(attach_pendants(&path(1), &single)
            .unwrap()
            .is_isomorphic(&path(3)));

        let spider = attach_pendants(&path(3), &AttachSpec::new(vec![(1, 1)]).unwrap()).unwrap();
        assert_eq!(spider.order(), 5);
        assert_eq!(sorted_degrees(&spider), vec![1, 1, 1, 2, 3]);

        let t = attach_pendants(&star(3), &AttachSpec::new(vec![(0, 2)]).unwrap()).unwrap();
        assert_eq!(t.order(), 8);
        assert_eq!(t.degree(0), 5);

        let same = attach_pendants(&path(4), &AttachSpec::default()).unwrap();
        assert_eq!(same.edges(), path(4).edges());
    }

    #[test]
    fn attach_errors() {
        assert_eq!(
            AttachSpec::new(vec![(0, 1), (0, 2)]).unwrap_err(),
            TreeError::DuplicateVertex(0)
        );
        assert_eq!(
            AttachSpec::new(vec![(1, 0)]).unwrap_err(),
            TreeError::ZeroPendantCount(1)
        );
        let spec = AttachSpec::new(vec![(7, 1)]).unwrap();
        assert!(matches!(
            attach_pendants(&path(2), &spec),
            Err(TreeError::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn join_builds_star_and_path() {
        let t = join_copies(&path(1), 0, &path(1), 0, 4).unwrap();
        assert!(t.is_isomorphic(&star(4)));
        let t = join_copies(&path(1), 0, &path(2), 0, 2).unwrap();
        assert!(t.is_isomorphic(&path(5)));
    }

    proptest! {
        #[test]
        fn c_and_s_tree_sizes(r in proptest::collection::vec(0usize..5, 1..5)) {
            let n = r.len();
            let sum: usize = r.iter().sum();
            let c = c_tree(&r).unwrap();
            let degree_sum: usize = c.degrees().iter().sum();
            prop_assert_eq!(degree_sum, 2 * (2 * n + sum));
            let s = s_tree(&r).unwrap();
            prop_assert_eq!(s.order(), (2 * n + 1 + sum) + (2 + sum) + (n - 1));
        }

        #[test]
        fn attach_order_is_irrelevant_up_to_isomorphism(
            counts in proptest::collection::vec(1usize..4, 1..4),
            rot in 0usize..4,
        ) {
            let base = c_tree(&[1, 0, 2]).unwrap();
            let entries: Vec<(usize, usize)> =
                counts.iter().enumerate().map(|(i, &s)| (2 * i, s)).collect();
            let mut permuted = entries.clone();
            let len = permuted.len();
            permuted.rotate_left(rot % len);
            permuted.reverse();
            let a = attach_pendants(&base, &AttachSpec::new(entries.clone()).unwrap()).unwrap();
            let b = attach_pendants(&base, &AttachSpec::new(permuted).unwrap()).unwrap();
            prop_assert_eq!(a.order(), base.order() + 2 * counts.iter().sum::<usize>());
            prop_assert_eq!(a.canonical_code(), b.canonical_code());
        }
    }
}
