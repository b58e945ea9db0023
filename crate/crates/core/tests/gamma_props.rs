mod common;

use std::sync::Arc;

use common::category;
use multicat_core::gamma::{
    all_cone_specs, build_b_gamma, gamma_local_morphisms, is_gamma_local, is_strongly_gamma_local,
    GammaClass,
};
use multicat_core::FinCategory;
use proptest::prelude::*;
use proptest::sample::Index;

fn with_gamma() -> impl Strategy<Value = (Arc<FinCategory>, GammaClass)> {
    (category(), any::<Index>(), any::<Index>(), 0usize..3).prop_map(|(c, i, j, n)| {
        let specs = all_cone_specs(&c);
        let n = if specs.is_empty() { 0 } else { n };
        let cones = [i, j]
            .iter()
            .take(n)
            .map(|k| specs[k.index(specs.len())].clone())
            .collect();
        let g = GammaClass::new(&c, cones).unwrap();
        (c, g)
    })
}

proptest! {
    #[test]
    fn local_objects_glide((c, g) in with_gamma()) {
        let r = gamma_local_morphisms(&c, &g);
        for u in r.iter() {
            if is_gamma_local(&c, &g, c.cod(u)) {
                prop_assert!(is_gamma_local(&c, &g, c.dom(u)));
            }
            if is_strongly_gamma_local(&c, &g, c.cod(u)) {
                prop_assert!(is_strongly_gamma_local(&c, &g, c.dom(u)));
            }
        }
    }

    #[test]
    fn strong_implies_plain((c, g) in with_gamma()) {
        for a in c.objects() {
            prop_assert!(!is_strongly_gamma_local(&c, &g, a) || is_gamma_local(&c, &g, a));
        }
    }

    #[test]
    fn local_morphisms_form_a_right_class((c, g) in with_gamma()) {
        let r = gamma_local_morphisms(&c, &g);
        for f in c.morphisms() {
            for h in c.out_of(c.cod(f)) {
                let hf = c.comp(h, f);
                if r.contains(f) && r.contains(h) {
                    prop_assert!(r.contains(hf));
                }
                if r.contains(h) && r.contains(hf) {
                    prop_assert!(r.contains(f));
                }
            }
        }
    }

    #[test]
    fn plain_contains_strong((c, g) in with_gamma()) {
        let (plain, _) = build_b_gamma(&c, &g, false).unwrap();
        let (strong, _) = build_b_gamma(&c, &g, true).unwrap();
        for o in strong.objects() {
            prop_assert!(plain.object(strong.obj_name(o)).is_ok());
        }
    }
}
