use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use inttree_core::poly::IntPoly;
use inttree_core::spectra::{char_poly, nullity_matching, nullity_poly, SmallGraph, TreeSpectrum};
use inttree_core::tree::{random_tree, CanonicalCode, Tree};

fn tree_strategy(max: usize) -> impl Strategy<Value = Tree> {
    (1..=max, any::<u64>())
        .prop_map(|(n, seed)| random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rooted_dp_matches_determinant_oracle(t in tree_strategy(14)) {
        prop_assert_eq!(char_poly(&t), SmallGraph::from_tree(&t).char_poly());
    }

    #[test]
    fn char_poly_is_label_invariant(t in tree_strategy(16)) {
        let relabeled = Tree::from_code(t.canonical_code()).unwrap();
        prop_assert_eq!(char_poly(&t), char_poly(&relabeled));
    }

    #[test]
    fn nullity_oracles_agree(t in tree_strategy(30)) {
        prop_assert_eq!(nullity_poly(&t), nullity_matching(&t));
    }

    #[test]
    fn text_and_code_round_trip(t in tree_strategy(20)) {
        let parsed = Tree::parse_text(&t.to_text()).unwrap();
        prop_assert!(parsed.is_isomorphic(&t));
        let code: CanonicalCode = t.canonical_code().to_string().parse().unwrap();
        prop_assert_eq!(&code, t.canonical_code());
    }

    #[test]
    fn summary_reassembles(t in tree_strategy(16)) {
        let s = TreeSpectrum::of(&t);
        prop_assert_eq!(s.summary.reassemble(), s.char_poly.clone());
        let text = s.char_poly.to_string();
        prop_assert_eq!(text.parse::<IntPoly>().unwrap(), s.char_poly);
    }
}
