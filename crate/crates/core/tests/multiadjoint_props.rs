mod common;

use common::{functor, lra_functor};
use multicat_core::connectivity::connected_components;
use multicat_core::fincat::{comma, Limits};
use multicat_core::multiadjoint::{
    all_local_units, beck_chevalley, is_local_right_adjoint, CommaIndex,
};
use multicat_core::orthogonality::is_stable;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn stable_iff_local_right_adjoint(u in functor()) {
        prop_assert_eq!(is_stable(&u).holds(), is_local_right_adjoint(&u).holds());
    }

    #[test]
    fn units_factor_every_arrow(u in functor()) {
        let Ok(records) = all_local_units(&u) else { return Ok(()) };
        let (s, t) = (u.source(), u.target());
        for rec in &records {
            for &(a, f) in &rec.comma.objects {
                let (entry, factor) = rec.unit_for(&u, a, f);
                prop_assert_eq!(s.cod(factor), a);
                prop_assert_eq!(s.dom(factor), entry.apex);
                prop_assert_eq!(t.comp(u.on_mor(factor), entry.unit), f);
            }
        }
    }

    #[test]
    fn one_unit_per_component(u in functor()) {
        let Ok(records) = all_local_units(&u) else { return Ok(()) };
        for rec in &records {
            let (cat, _) = comma(&u, rec.base, &Limits::default()).unwrap();
            let p = connected_components(&cat);
            prop_assert_eq!(p.len(), rec.entries.len());
            for x in cat.objects() {
                for y in cat.objects() {
                    let same = p.block_of[x.idx()] == p.block_of[y.idx()];
                    prop_assert_eq!(same, rec.block_of[x.idx()] == rec.block_of[y.idx()]);
                }
            }
        }
    }

    #[test]
    fn arrows_between_units_are_isomorphisms(u in functor()) {
        let Ok(records) = all_local_units(&u) else { return Ok(()) };
        let s = u.source();
        for rec in &records {
            let idx = CommaIndex::new(&u, rec.base);
            for e1 in &rec.entries {
                for e2 in &rec.entries {
                    for m in idx.hom(e1.comma_object, e2.comma_object) {
                        prop_assert!(s.is_iso(m));
                    }
                }
            }
        }
    }

    #[test]
    fn beck_chevalley_mates_are_isomorphisms(u in lra_functor()) {
        let (s, t) = (u.source(), u.target());
        for m in s.morphisms() {
            for &f in t.into_obj(u.on_obj(s.dom(m))).collect::<Vec<_>>().iter() {
                let r = beck_chevalley(&u, m, f).unwrap();
                prop_assert!(r.is_iso);
            }
        }
    }
}
