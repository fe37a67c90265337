use inttree_bench::{count_free_trees, sample_trees};

#[test]
fn samples_are_near_the_requested_order() {
    for n in [10, 20, 40] {
        for (name, t) in sample_trees(n) {
            assert!(
                t.order() + 3 >= n && t.order() <= n + 3,
                "{name} has order {}",
                t.order()
            );
        }
    }
}

#[test]
fn counts() {
    assert_eq!(count_free_trees(10), 106);
}
