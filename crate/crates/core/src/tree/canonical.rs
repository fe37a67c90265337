use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Tree, TreeError};

/// Level sequence of a tree rooted at its centre, with children ordered so
/// that the sequence is lexicographically maximal. For bicentral trees the
/// larger of the two centre-rooted sequences is kept.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<usize>);

impl CanonicalCode {
    pub fn levels(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({self})")
    }
}

impl FromStr for CanonicalCode {
    type Err = TreeError;

    /// Parses a comma-separated level sequence and re-canonicalizes it, so
    /// any valid level sequence of the tree is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let levels = s
            .split(',')
            .map(|tok| {
                tok.trim().parse::<usize>().map_err(|_| {
                    TreeError::InvalidLevelSequence(format!("bad level {:?}", tok.trim()))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Tree::from_level_sequence(&levels)?.canonical_code().clone())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// One or two central vertices, found by peeling leaves.
pub(crate) fn centers(tree: &Tree) -> Vec<usize> {
    let n = tree.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree = tree.degrees();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in tree.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Canonical level sequence of the subtree hanging from each vertex when the
/// tree is rooted at `root`, plus the vertex order realizing it.
fn rooted_form(tree: &Tree, root: usize) -> (Vec<usize>, Vec<usize>) {
    let (parent, bfs) = tree.rooted(root);
    let n = tree.order();
    let mut codes: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut orders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in bfs.iter().rev() {
        let mut kids: Vec<usize> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w != parent[v])
            .collect();
        kids.sort_by(|&a, &b| codes[b].cmp(&codes[a]));
        let mut code = vec![0];
        let mut order = vec![v];
        for k in kids {
            code.extend(codes[k].iter().map(|l| l + 1));
            order.append(&mut orders[k]);
            codes[k] = Vec::new();
        }
        codes[v] = code;
        orders[v] = order;
    }
    (
        std::mem::take(&mut codes[root]),
        std::mem::take(&mut orders[root]),
    )
}

/// Lexicographically maximal level sequence of the tree rooted at `root`.
pub fn rooted_code(tree: &Tree, root: usize) -> Vec<usize> {
    rooted_form(tree, root).0
}

pub(crate) fn canonical_form(tree: &Tree) -> (CanonicalCode, Vec<usize>) {
    centers(tree)
        .into_iter()
        .map(|c| rooted_form(tree, c))
        .max_by(|a, b| a.0.cmp(&b.0))
        .map(|(code, order)| (CanonicalCode(code), order))
        .expect("a tree has at least one centre")
}
