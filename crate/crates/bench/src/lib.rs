//! Fixed inputs shared by the benchmarks.

use inttree_core::tree::{c_tree, enumerate_free_trees, s_tree, Tree};

/// A spread of tree shapes at roughly `n` vertices: a path, a spider and a
/// caterpillar.
pub fn sample_trees(n: usize) -> Vec<(String, Tree)> {
    let legs = (n.saturating_sub(1) / 2).max(3);
    let spider = s_tree(&[legs - 3]).expect("nonempty");
    let cat = c_tree(&vec![1; (n / 3).max(2)]).expect("nonempty");
    vec![
        ("path".into(), inttree_core::tree::path(n)),
        ("spider".into(), spider),
        ("caterpillar".into(), cat),
    ]
}

/// Number of free trees of order `n`, by full enumeration.
pub fn count_free_trees(n: usize) -> usize {
    enumerate_free_trees(n, None)
        .expect("order is positive")
        .count()
}
