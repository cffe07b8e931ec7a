//! Round trips between Stirling words, increasing trees, inversion vectors
//! and k-ary trees on randomly drawn inputs.

use proptest::prelude::*;

use swordgen::oracle::DEFAULT_CAP;
use swordgen::trees::{
    inversion_vector, kcatalan_word_to_tree, ktree_to_word, stirling_word_to_tree,
    tree_to_stirling_word, word_from_inversion_vector, InvVector, KTree, STree,
};
use swordgen::{LanguageSpec, Shape};

fn shape_and_box_point() -> impl Strategy<Value = (Shape, InvVector)> {
    prop::collection::vec(1usize..=3, 1..=5).prop_flat_map(|m| {
        let shape = Shape::new(m).unwrap();
        let coords: Vec<_> = shape.prefixes().iter().map(|&t| 0..=t).collect();
        (Just(shape), coords.prop_map(InvVector))
    })
}

proptest! {
    #[test]
    fn box_points_are_stirling_words((shape, iv) in shape_and_box_point()) {
        let w = word_from_inversion_vector(&shape, &iv).unwrap();
        prop_assert!(LanguageSpec::new(shape.clone(), "212".parse().map(|p| vec![p]).unwrap()).accepts(&w));
        prop_assert_eq!(inversion_vector(&w).unwrap(), iv);
        let tree = stirling_word_to_tree(&w).unwrap();
        prop_assert_eq!(tree.size(), shape.m());
        prop_assert_eq!(tree_to_stirling_word(&tree).unwrap(), w);
        let text = tree.to_string();
        prop_assert_eq!(text.parse::<STree>().unwrap(), tree);
    }

    #[test]
    fn kary_trees_round_trip(k in 2usize..=4, m in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let shape = Shape::new(vec![k - 1; m]).unwrap();
        let spec = LanguageSpec::new(shape, swordgen::patterns::parse_pattern_list("132,121").unwrap());
        let lang = swordgen::oracle::language(&spec, DEFAULT_CAP).unwrap();
        let w = &lang.words[pick.index(lang.len())];
        let tree = kcatalan_word_to_tree(w, k).unwrap();
        prop_assert_eq!(tree.internal(), m);
        prop_assert_eq!(&ktree_to_word(&tree, k).unwrap(), w);
        prop_assert_eq!(KTree::parse(&tree.render()).unwrap(), tree);
    }
}
