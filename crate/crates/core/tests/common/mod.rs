#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use multicat_core::enumerate::{enumerate_categories, functors};
use multicat_core::{FinCategory, FinFunctor};
use proptest::prelude::*;
use proptest::sample::Index;

/// Every category with at most 3 objects and 5 morphisms, up to isomorphism.
pub fn corpus() -> &'static [Arc<FinCategory>] {
    static CORPUS: OnceLock<Vec<Arc<FinCategory>>> = OnceLock::new();
    CORPUS.get_or_init(|| enumerate_categories(3, 5))
}

/// The part of the corpus with at most 4 morphisms, used where functors are enumerated.
pub fn small() -> &'static [Arc<FinCategory>] {
    static SMALL: OnceLock<Vec<Arc<FinCategory>>> = OnceLock::new();
    SMALL.get_or_init(|| {
        corpus()
            .iter()
            .filter(|c| c.morphism_count() <= 4)
            .cloned()
            .collect()
    })
}

pub fn category() -> impl Strategy<Value = Arc<FinCategory>> {
    any::<Index>().prop_map(|i| {
        let c = corpus();
        c[i.index(c.len())].clone()
    })
}

pub fn functor() -> impl Strategy<Value = FinFunctor> {
    (any::<Index>(), any::<Index>(), any::<Index>()).prop_filter_map(
        "no functor between the two",
        |(a, b, k)| {
            let c = small();
            let (s, t) = (&c[a.index(c.len())], &c[b.index(c.len())]);
            let fs = functors(s, t);
            if fs.is_empty() {
                None
            } else {
                Some(fs[k.index(fs.len())].clone())
            }
        },
    )
}

pub fn mask(n: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), n)
}

/// Functors between small corpus categories that are local right adjoints.
pub fn lra_functor() -> impl Strategy<Value = FinFunctor> {
    (any::<Index>(), any::<Index>(), any::<Index>()).prop_filter_map(
        "no local right adjoint between the two",
        |(a, b, k)| {
            let c = small();
            let (s, t) = (&c[a.index(c.len())], &c[b.index(c.len())]);
            let fs: Vec<FinFunctor> = functors(s, t)
                .into_iter()
                .filter(|u| multicat_core::multiadjoint::is_local_right_adjoint(u).holds())
                .collect();
            if fs.is_empty() {
                None
            } else {
                Some(fs[k.index(fs.len())].clone())
            }
        },
    )
}
