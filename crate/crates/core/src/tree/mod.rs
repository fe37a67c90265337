//! Labeled trees, the tree families used throughout the crate, and
//! isomorphism-free enumeration of free trees.

mod build;
mod canonical;
mod enumerate;

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

pub use build::{
    attach_leaves, attach_pendants, c_tree, c_tree_central, double_star, join_copies, path,
    random_tree, s_tree, star, AttachSpec,
};
pub(crate) use canonical::centers;
pub use canonical::{rooted_code, CanonicalCode};
pub use enumerate::{enumerate_free_trees, EnumerationCursor, FreeTrees, Shard};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("edges do not connect all vertices")]
    Disconnected,
    #[error("invalid level sequence: {0}")]
    InvalidLevelSequence(String),
    #[error("vertex {0} appears more than once in the attachment list")]
    DuplicateVertex(usize),
    #[error("pendant count at vertex {0} must be at least 1")]
    ZeroPendantCount(usize),
    #[error("parameter list must not be empty")]
    EmptyParameters,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid shard {index}/{count}")]
    InvalidShard { index: usize, count: usize },
    #[error("no pendant P2 at vertex {0}")]
    NoPendantP2(usize),
}

/// Immutable labeled tree on vertices `0..n`.
#[derive(Clone)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
    code: OnceLock<CanonicalCode>,
}

impl Tree {
    /// Validates and builds a tree from an edge list.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if order == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != order - 1 {
            return Err(TreeError::EdgeCount {
                expected: order - 1,
                found: edges.len(),
            });
        }
        let mut adj = vec![Vec::new(); order];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(TreeError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(TreeError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let tree = Tree::from_adjacency_unchecked(adj);
        if tree.bfs_order(0).len() != order {
            return Err(TreeError::Disconnected);
        }
        Ok(tree)
    }

    /// The caller guarantees `adj` is symmetric and describes a tree.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<Vec<usize>>) -> Self {
        Tree {
            adj,
            code: OnceLock::new(),
        }
    }

    /// Builds the tree described by a level sequence (root at level 0, each
    /// vertex's parent is the closest earlier vertex one level up).
    pub fn from_level_sequence(levels: &[usize]) -> Result<Self, TreeError> {
        let bad = |m: &str| Err(TreeError::InvalidLevelSequence(m.to_string()));
        match levels.first() {
            None => return Err(TreeError::Empty),
            Some(0) => {}
            Some(_) => return bad("sequence must start at level 0"),
        }
        let mut adj = vec![Vec::new(); levels.len()];
        let mut stack: Vec<usize> = vec![0];
        for (i, &level) in levels.iter().enumerate().skip(1) {
            if level == 0 {
                return bad("only the root may sit at level 0");
            }
            if level > levels[i - 1] + 1 {
                return bad("level jumps by more than one");
            }
            while levels[*stack.last().expect("root stays on the stack")] >= level {
                stack.pop();
            }
            let parent = *stack.last().expect("root stays on the stack");
            adj[parent].push(i);
            adj[i].push(parent);
            stack.push(i);
        }
        Ok(Tree::from_adjacency_unchecked(adj))
    }

    pub fn from_code(code: &CanonicalCode) -> Result<Self, TreeError> {
        Self::from_level_sequence(code.levels())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.order() - 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, ns) in self.adj.iter().enumerate() {
            for &v in ns {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), TreeError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(TreeError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub(crate) fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut order = Vec::with_capacity(self.order());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Parent array for the tree rooted at `root` (`usize::MAX` for the root)
    /// and the BFS order used to build it.
    pub(crate) fn rooted(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let order = self.bfs_order(root);
        let mut parent = vec![usize::MAX; self.order()];
        for &v in &order {
            for &w in &self.adj[v] {
                if w != parent[v] {
                    parent[w] = v;
                }
            }
        }
        parent[root] = usize::MAX;
        (parent, order)
    }

    /// Canonical code; equal codes means isomorphic trees.
    pub fn canonical_code(&self) -> &CanonicalCode {
        self.code.get_or_init(|| canonical::canonical_form(self).0)
    }

    /// Vertices listed in the order they appear in the canonical level
    /// sequence.
    pub fn canonical_vertex_order(&self) -> Vec<usize> {
        canonical::canonical_form(self).1
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.order() == other.order() && self.canonical_code() == other.canonical_code()
    }

    /// Two-colouring of the vertices; class 0 contains vertex 0.
    pub fn bipartition(&self) -> [Vec<usize>; 2] {
        let (parent, order) = self.rooted(0);
        let mut color = vec![0u8; self.order()];
        for &v in order.iter().skip(1) {
            color[v] = 1 - color[parent[v]];
        }
        let mut classes = [Vec::new(), Vec::new()];
        for (v, &c) in color.iter().enumerate() {
            classes[c as usize].push(v);
        }
        classes
    }

    /// Connected components after deleting `removed`, each relabeled with
    /// the surviving vertices in ascending original order. The second item
    /// maps new labels back to original ones.
    pub fn components_without(&self, removed: &[usize]) -> Vec<(Tree, Vec<usize>)> {
        let n = self.order();
        let mut gone = vec![false; n];
        for &v in removed {
            gone[v] = true;
        }
        let mut comp = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if gone[start] || comp[start] != usize::MAX {
                continue;
            }
            let id = members.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut verts = Vec::new();
            while let Some(v) = stack.pop() {
                verts.push(v);
                for &w in &self.adj[v] {
                    if !gone[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            members.push(verts);
        }
        members
            .into_iter()
            .map(|verts| {
                let mut index = vec![usize::MAX; n];
                for (i, &v) in verts.iter().enumerate() {
                    index[v] = i;
                }
                let adj = verts
                    .iter()
                    .map(|&v| {
                        self.adj[v]
                            .iter()
                            .filter(|&&w| !gone[w])
                            .map(|&w| index[w])
                            .collect()
                    })
                    .collect();
                (Tree::from_adjacency_unchecked(adj), verts)
            })
            .collect()
    }

    /// Components of `T - v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Vec<Tree>, TreeError> {
        self.check_vertex(v)?;
        Ok(self
            .components_without(&[v])
            .into_iter()
            .map(|(t, _)| t)
            .collect())
    }

    /// Serializes in the edge-list text format: the order on the first line,
    /// then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.order());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the edge-list text format; errors carry 1-based line numbers.
    pub fn parse_text(text: &str) -> Result<Self, TreeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first_line, header) = lines.next().ok_or(TreeError::Parse {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let order: usize = header.parse().map_err(|_| TreeError::Parse {
            line: first_line,
            message: format!("expected vertex count, found {header:?}"),
        })?;
        let mut edges = Vec::new();
        for (line, content) in lines {
            let fields: Vec<&str> = content.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| TreeError::Parse {
                    line,
                    message: format!("bad vertex {s:?}"),
                })
            };
            if fields.len() != 2 {
                return Err(TreeError::Parse {
                    line,
                    message: format!("expected two endpoints, found {}", fields.len()),
                });
            }
            let (u, v) = (parse(fields[0])?, parse(fields[1])?);
            for w in [u, v] {
                if w >= order {
                    return Err(TreeError::Parse {
                        line,
                        message: format!("vertex {w} out of range for order {order}"),
                    });
                }
            }
            edges.push((u, v));
        }
        Tree::from_edges(order, &edges).map_err(|e| match e {
            e @ TreeError::Parse { .. } => e,
            other => TreeError::Parse {
                line: first_line,
                message: other.to_string(),
            },
        })
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("order", &self.order())
            .field("code", &self.canonical_code().to_string())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edge_lists() {
        assert_eq!(Tree::from_edges(0, &[]).unwrap_err(), TreeError::Empty);
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1)]),
            Err(TreeError::EdgeCount {
                expected: 2,
                found: 1
            })
        ));
        assert_eq!(
            Tree::from_edges(3, &[(0, 1), (1, 1)]).unwrap_err(),
            TreeError::SelfLoop(1)
        );
        assert_eq!(
            Tree::from_edges(3, &[(0, 1), (1, 0)]).unwrap_err(),
            TreeError::DuplicateEdge(0, 1)
        );
        assert_eq!(
            Tree::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap_err(),
            TreeError::Disconnected
        );
        assert!(matches!(
            Tree::from_edges(2, &[(0, 5)]),
            Err(TreeError::VertexOutOfRange {
                vertex: 5,
                order: 2
            })
        ));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let t = path(4);
        let back = Tree::parse_text(&t.to_text()).unwrap();
        assert!(back.is_isomorphic(&t));
        assert_eq!(back.edges(), t.edges());

        let err = Tree::parse_text("3\n0 1\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            TreeError::Parse {
                line: 3,
                message: "bad vertex \"x\"".into()
            }
        );
        let err = Tree::parse_text("3\n0 1 2\n").unwrap_err();
        assert!(matches!(err, TreeError::Parse { line: 2, .. }));
        assert!(matches!(
            Tree::parse_text("abc").unwrap_err(),
            TreeError::Parse { line: 1, .. }
        ));
        assert!(Tree::parse_text("1\n").unwrap().order() == 1);
    }

    #[test]
    fn level_sequence_round_trip() {
        let t = Tree::from_level_sequence(&[0, 1, 2, 2, 1]).unwrap();
        assert_eq!(t.order(), 5);
        assert_eq!(t.canonical_code().to_string(), "0,1,2,2,1");
        assert!(Tree::from_level_sequence(&[0, 2]).is_err());
        assert!(Tree::from_level_sequence(&[1]).is_err());
        assert!(Tree::from_level_sequence(&[0, 1, 0]).is_err());
    }

    #[test]
    fn delete_vertex_examples() {
        let comps = star(4).delete_vertex(0).unwrap();
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.order() == 1));

        let comps = path(3).delete_vertex(0).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].is_isomorphic(&path(2)));

        let s1 = s_tree(&[1]).unwrap();
        let centre = (0..s1.order()).find(|&v| s1.degree(v) == 3).unwrap();
        let comps = s1.delete_vertex(centre).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.is_isomorphic(&path(2))));

        assert!(path(2).delete_vertex(2).is_err());
    }

    #[test]
    fn bipartition_classes() {
        let [a, b] = path(5).bipartition();
        assert_eq!(a, vec![0, 2, 4]);
        assert_eq!(b, vec![1, 3]);
    }
}
