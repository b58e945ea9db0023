mod common;

use common::category;
use multicat_core::cones::{colimit, is_limit, limit};
use multicat_core::corpus::small_diagrams;
use multicat_core::fincat::{opposite, Limits};
use multicat_core::multilimits::{multicolimit, multilimit, verify_multicolimit_hom_formula};
use proptest::prelude::*;

proptest! {
    #[test]
    fn limits_are_singleton_multilimits(c in category()) {
        let limits = Limits::default();
        for d in small_diagrams(&c) {
            let multi = multilimit(&c, &d, &limits);
            match limit(&c, &d) {
                Some(_) => {
                    let m = multi.unwrap();
                    prop_assert_eq!(m.members.len(), 1);
                    prop_assert!(is_limit(&c, &d, &m.members[0]));
                }
                None => prop_assert!(multi.map(|m| m.members.len() != 1).unwrap_or(true)),
            }
            let co = multicolimit(&c, &d, &limits);
            match colimit(&c, &d) {
                Some(k) => {
                    let m = co.unwrap();
                    prop_assert_eq!(m.members.len(), 1);
                    prop_assert_eq!(m.members[0].apex == k.apex || c.iso_between(k.apex, m.members[0].apex).is_some(), true);
                }
                None => prop_assert!(co.map(|m| m.members.len() != 1).unwrap_or(true)),
            }
        }
    }

    #[test]
    fn multicolimit_is_multilimit_in_opposite(c in category()) {
        let limits = Limits::default();
        let op = opposite(&c);
        for d in small_diagrams(&c) {
            let a = multicolimit(&c, &d, &limits).map(|m| m.members);
            let b = multilimit(&op, &d.reversed(), &limits).map(|m| m.members);
            prop_assert_eq!(a.is_ok(), b.is_ok());
            if let (Ok(x), Ok(y)) = (a, b) {
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn hom_formula_holds(c in category()) {
        let limits = Limits::default();
        for d in small_diagrams(&c) {
            if let Ok(m) = multicolimit(&c, &d, &limits) {
                prop_assert!(verify_multicolimit_hom_formula(&c, &d, &m).holds());
            }
        }
    }
}
