mod common;

use common::category;
use multicat_core::connectivity::{
    connected_components, is_weakly_initial, multi_initial_family, multi_terminal_family,
};
use multicat_core::fincat::opposite;
use proptest::prelude::*;

proptest! {
    #[test]
    fn arrows_stay_in_their_block(c in category()) {
        let p = connected_components(&c);
        for m in c.morphisms() {
            prop_assert_eq!(p.block_of[c.dom(m).idx()], p.block_of[c.cod(m).idx()]);
        }
        let total: usize = p.blocks.iter().map(Vec::len).sum();
        prop_assert_eq!(total, c.object_count());
    }

    #[test]
    fn multi_initial_witnesses_are_unique(c in category()) {
        if let Ok(f) = multi_initial_family(&c) {
            prop_assert!(is_weakly_initial(&c, &f.members));
            for y in c.objects() {
                let (m, a) = f.witness[y.idx()];
                prop_assert_eq!(c.hom(m, y), &[a][..]);
                for &other in f.members.iter().filter(|&&o| o != m) {
                    prop_assert!(c.hom(other, y).is_empty());
                }
            }
        } else {
            // some component has no object with exactly one arrow to each of its objects
            let p = connected_components(&c);
            let lacks = p.blocks.iter().any(|b| {
                !b.iter().any(|&x| b.iter().all(|&y| c.hom(x, y).len() == 1))
            });
            prop_assert!(lacks);
        }
    }

    #[test]
    fn terminal_is_initial_in_opposite(c in category()) {
        let a = multi_terminal_family(&c).map(|f| f.members);
        let b = multi_initial_family(&opposite(&c)).map(|f| f.members);
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(x), Ok(y)) = (a, b) {
            prop_assert_eq!(x, y);
        }
    }
}
