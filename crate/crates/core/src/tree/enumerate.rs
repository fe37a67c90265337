//! Constant-amortized-time generation of free trees.
//!
//! This is the Wright–Richmond–Odlyzko–McKay generator layered on the
//! Beyer–Hedetniemi successor rule for rooted level sequences. Layouts are
//! produced in strictly decreasing lexicographic order, one per isomorphism
//! class, and each layout is a level sequence of the tree rooted at a centre.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Tree, TreeError};

/// Shard `index` of `count`: owns every tree whose global emission index is
/// congruent to `index` modulo `count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub fn new(index: usize, count: usize) -> Result<Self, TreeError> {
        if count == 0 || index >= count {
            return Err(TreeError::InvalidShard { index, count });
        }
        Ok(Shard { index, count })
    }

    pub fn whole() -> Self {
        Shard { index: 0, count: 1 }
    }

    pub fn owns(&self, position: u64) -> bool {
        position % self.count as u64 == self.index as u64
    }
}

impl Default for Shard {
    fn default() -> Self {
        Self::whole()
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

impl FromStr for Shard {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TreeError::InvalidShard { index: 0, count: 0 };
        let (i, m) = s.split_once('/').ok_or_else(bad)?;
        let i = i.trim().parse().map_err(|_| bad())?;
        let m = m.trim().parse().map_err(|_| bad())?;
        Shard::new(i, m)
    }
}

/// Resumable position of a free-tree enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCursor {
    pub order: usize,
    /// Layout of the last tree produced by the generator (before shard
    /// filtering); `None` before the first one.
    pub current: Option<Vec<usize>>,
    /// Number of trees the generator has produced so far, across all shards.
    pub position: u64,
    pub exhausted: bool,
    pub shard: Shard,
}

impl EnumerationCursor {
    pub fn start(order: usize, shard: Shard) -> Result<Self, TreeError> {
        if order == 0 {
            return Err(TreeError::Empty);
        }
        Shard::new(shard.index, shard.count)?;
        Ok(EnumerationCursor {
            order,
            current: None,
            position: 0,
            exhausted: false,
            shard,
        })
    }
}

/// Iterator over the free trees of one order, restricted to a shard.
#[derive(Clone, Debug)]
pub struct FreeTrees {
    cursor: EnumerationCursor,
}

/// Every free tree of order `n` owned by `shard` (all of them when `None`).
pub fn enumerate_free_trees(n: usize, shard: Option<Shard>) -> Result<FreeTrees, TreeError> {
    FreeTrees::resume(EnumerationCursor::start(n, shard.unwrap_or_default())?)
}

impl FreeTrees {
    pub fn resume(cursor: EnumerationCursor) -> Result<Self, TreeError> {
        if cursor.order == 0 {
            return Err(TreeError::Empty);
        }
        Shard::new(cursor.shard.index, cursor.shard.count)?;
        if let Some(layout) = &cursor.current {
            if layout.len() != cursor.order {
                return Err(TreeError::InvalidLevelSequence(
                    "cursor layout does not match its order".into(),
                ));
            }
            Tree::from_level_sequence(layout)?;
        }
        Ok(FreeTrees { cursor })
    }

    /// State after the most recently returned tree.
    pub fn cursor(&self) -> &EnumerationCursor {
        &self.cursor
    }

    fn initial_layout(n: usize) -> Vec<usize> {
        (0..=n / 2).chain(1..n.div_ceil(2)).collect()
    }

    /// Next layout from the generator, ignoring shards.
    fn advance(&mut self) -> Option<Vec<usize>> {
        if self.cursor.exhausted {
            return None;
        }
        let n = self.cursor.order;
        let next = match &self.cursor.current {
            None if n == 1 => Some(vec![0]),
            None => next_tree(Self::initial_layout(n)),
            Some(_) if n == 1 => None,
            Some(prev) => next_rooted_tree(prev, None).and_then(next_tree),
        };
        match next {
            Some(layout) => {
                self.cursor.current = Some(layout.clone());
                self.cursor.position += 1;
                Some(layout)
            }
            None => {
                self.cursor.exhausted = true;
                None
            }
        }
    }

    /// Next layout owned by this shard.
    pub fn next_layout(&mut self) -> Option<Vec<usize>> {
        loop {
            let layout = self.advance()?;
            if self.cursor.shard.owns(self.cursor.position - 1) {
                return Some(layout);
            }
        }
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        self.next_layout()
            .map(|l| Tree::from_level_sequence(&l).expect("generator yields level sequences"))
    }
}

/// Beyer–Hedetniemi successor of a rooted level sequence.
fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] + 1 != pred[p] {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

/// Splits off the first subtree of the root: returns it re-rooted at level
/// zero, and the remaining tree.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let rest = std::iter::once(0)
        .chain(layout[m..].iter().copied())
        .collect();
    (left, rest)
}

/// Returns the candidate if it is the canonical centre-rooted layout of a
/// free tree, otherwise jumps to the next candidate that is.
fn next_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_tree(&candidate);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid
        && rest_height == left_height
        && (left.len() > rest.len() || (left.len() == rest.len() && left > rest))
    {
        valid = false;
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (slot, level) in next[len - (h + 1)..].iter_mut().zip(1..) {
            *slot = level;
        }
    }
    Some(next)
}
