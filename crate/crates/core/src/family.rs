//! The free product completion restricted to finite families: hom-sets,
//! products, the embedding, free product extensions of functors and the
//! relative left adjoint of a right multi-adjoint.
//!
//! The completion itself is never materialized. Families are handled one at
//! a time and every quantification over families takes a size bound.

use std::sync::Arc;

use crate::error::{CatError, Result};
use crate::fincat::{FinCategory, FinFunctor, Limits, Mor, Obj};
use crate::multiadjoint::{all_local_units, LocalUnitRecord};

/// A finite family `(A_i)` of objects of `ambient`, with printable index labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFamily {
    ambient: Arc<FinCategory>,
    pub index: Vec<String>,
    pub assignment: Vec<Obj>,
}

impl FinFamily {
    /// Indices are labelled `0, 1, …`.
    pub fn new(ambient: &Arc<FinCategory>, assignment: Vec<Obj>) -> FinFamily {
        FinFamily {
            ambient: ambient.clone(),
            index: (0..assignment.len()).map(|i| i.to_string()).collect(),
            assignment,
        }
    }

    pub fn labelled(
        ambient: &Arc<FinCategory>,
        index: Vec<String>,
        assignment: Vec<Obj>,
    ) -> FinFamily {
        assert_eq!(index.len(), assignment.len());
        FinFamily {
            ambient: ambient.clone(),
            index,
            assignment,
        }
    }

    pub fn ambient(&self) -> &Arc<FinCategory> {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn member(&self, i: usize) -> Obj {
        self.assignment[i]
    }

    pub fn names(&self) -> Vec<String> {
        self.ambient.obj_names(&self.assignment)
    }
}

/// A morphism `(A_i)_I → (B_j)_J`: `reindex[j] ∈ I` and
/// `components[j] : A_{reindex[j]} → B_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyMorphism {
    pub reindex: Vec<usize>,
    pub components: Vec<Mor>,
}

fn same_ambient(f: &FinFamily, g: &FinFamily) -> Result<()> {
    if Arc::ptr_eq(&f.ambient, &g.ambient) || f.ambient == g.ambient {
        Ok(())
    } else {
        Err(CatError::AmbientMismatch(format!(
            "{} and {}",
            f.ambient.name(),
            g.ambient.name()
        )))
    }
}

/// `Π_j Σ_i |hom(A_i, B_j)|`, saturating.
pub fn family_hom_count(f: &FinFamily, g: &FinFamily) -> Result<u64> {
    same_ambient(f, g)?;
    let c = &f.ambient;
    Ok(g.assignment.iter().fold(1u64, |acc, &b| {
        let s: u64 = f.assignment.iter().map(|&a| c.hom(a, b).len() as u64).sum();
        acc.saturating_mul(s)
    }))
}

/// Every morphism `f → g`, ordered lexicographically by `(reindex[j],
/// components[j])` over `j`.
pub fn family_hom(f: &FinFamily, g: &FinFamily, limits: &Limits) -> Result<Vec<FamilyMorphism>> {
    let n = family_hom_count(f, g)?;
    limits.check("family hom-set", usize::try_from(n).unwrap_or(usize::MAX))?;
    let c = &f.ambient;
    let choices: Vec<Vec<(usize, Mor)>> = g
        .assignment
        .iter()
        .map(|&b| {
            f.assignment
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| c.hom(a, b).iter().map(move |&m| (i, m)))
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = FamilyMorphism {
        reindex: Vec::with_capacity(g.len()),
        components: Vec::with_capacity(g.len()),
    };
    fn go(choices: &[Vec<(usize, Mor)>], cur: &mut FamilyMorphism, out: &mut Vec<FamilyMorphism>) {
        let j = cur.reindex.len();
        if j == choices.len() {
            out.push(cur.clone());
            return;
        }
        for &(i, m) in &choices[j] {
            cur.reindex.push(i);
            cur.components.push(m);
            go(choices, cur, out);
            cur.reindex.pop();
            cur.components.pop();
        }
    }
    go(&choices, &mut cur, &mut out);
    Ok(out)
}

pub fn family_identity(f: &FinFamily) -> FamilyMorphism {
    FamilyMorphism {
        reindex: (0..f.len()).collect(),
        components: f.assignment.iter().map(|&a| f.ambient.id(a)).collect(),
    }
}

/// `second ∘ first`.
pub fn family_compose(
    c: &FinCategory,
    second: &FamilyMorphism,
    first: &FamilyMorphism,
) -> FamilyMorphism {
    FamilyMorphism {
        reindex: second.reindex.iter().map(|&k| first.reindex[k]).collect(),
        components: second
            .reindex
            .iter()
            .zip(&second.components)
            .map(|(&k, &g)| c.comp(g, first.components[k]))
            .collect(),
    }
}

/// Checks that `m` is a morphism `f → g`.
pub fn check_family_morphism(f: &FinFamily, g: &FinFamily, m: &FamilyMorphism) -> Result<()> {
    same_ambient(f, g)?;
    let c = &f.ambient;
    let ok = m.reindex.len() == g.len()
        && m.components.len() == g.len()
        && m.reindex
            .iter()
            .zip(&m.components)
            .zip(&g.assignment)
            .all(|((&i, &h), &b)| {
                i < f.len()
                    && h.idx() < c.morphism_count()
                    && c.dom(h) == f.assignment[i]
                    && c.cod(h) == b
            });
    if ok {
        Ok(())
    } else {
        Err(CatError::LawViolation {
            law: "family morphism endpoints".into(),
            witness: m
                .components
                .iter()
                .map(|&h| c.mor_name(h).to_string())
                .collect(),
        })
    }
}

/// Product with index the disjoint union, labelled `(k,i)`, and its
/// projections.
pub fn family_product(
    ambient: &Arc<FinCategory>,
    families: &[FinFamily],
) -> Result<(FinFamily, Vec<FamilyMorphism>)> {
    let mut index = Vec::new();
    let mut assignment = Vec::new();
    let mut projections = Vec::with_capacity(families.len());
    for (k, fam) in families.iter().enumerate() {
        if !(Arc::ptr_eq(ambient, &fam.ambient) || **ambient == *fam.ambient) {
            return Err(CatError::AmbientMismatch(format!(
                "{} and {}",
                ambient.name(),
                fam.ambient.name()
            )));
        }
        let offset = assignment.len();
        for (label, &a) in fam.index.iter().zip(&fam.assignment) {
            index.push(format!("({k},{label})"));
            assignment.push(a);
        }
        projections.push(FamilyMorphism {
            reindex: (offset..offset + fam.len()).collect(),
            components: fam.assignment.iter().map(|&a| ambient.id(a)).collect(),
        });
    }
    Ok((FinFamily::labelled(ambient, index, assignment), projections))
}

/// The singleton family `ι(a)`.
pub fn embed(c: &Arc<FinCategory>, a: Obj) -> FinFamily {
    FinFamily::labelled(c, vec!["*".into()], vec![a])
}

pub fn embed_morphism(m: Mor) -> FamilyMorphism {
    FamilyMorphism {
        reindex: vec![0],
        components: vec![m],
    }
}

/// Families of size at most `bound` up to reordering of the index, as
/// non-decreasing object sequences, shortest first.
pub fn families_up_to(c: &Arc<FinCategory>, bound: usize) -> Vec<FinFamily> {
    let mut out = Vec::new();
    fn go(
        c: &Arc<FinCategory>,
        len: usize,
        from: u32,
        cur: &mut Vec<Obj>,
        out: &mut Vec<FinFamily>,
    ) {
        if cur.len() == len {
            out.push(FinFamily::new(c, cur.clone()));
            return;
        }
        for o in from..c.object_count() as u32 {
            cur.push(Obj(o));
            go(c, len, o, cur, out);
            cur.pop();
        }
    }
    for len in 0..=bound {
        go(c, len, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// A product decomposition at which `hom(−, F)` fails to turn products into
/// coproducts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoconnectedFailure {
    pub factors: Vec<FinFamily>,
    pub product_hom: u64,
    pub coproduct_hom: u64,
}

/// `hom(P × Q, F) ≅ hom(P, F) + hom(Q, F)` through the projections, for all
/// families with `|P| + |Q| ≤ probe_bound`, and `hom(1, F) = ∅` for the
/// empty product. The empty family therefore fails.
pub fn coconnected_failure(
    f: &FinFamily,
    probe_bound: usize,
    limits: &Limits,
) -> Result<Option<CoconnectedFailure>> {
    let c = f.ambient.clone();
    let terminal = FinFamily::new(&c, vec![]);
    let n = family_hom_count(&terminal, f)?;
    if n != 0 {
        return Ok(Some(CoconnectedFailure {
            factors: vec![],
            product_hom: n,
            coproduct_hom: 0,
        }));
    }
    let probes = families_up_to(&c, probe_bound);
    for p in &probes {
        for q in &probes {
            if p.len() + q.len() > probe_bound {
                continue;
            }
            let (prod, proj) = family_product(&c, &[p.clone(), q.clone()])?;
            let direct = family_hom(&prod, f, limits)?;
            let mut image: Vec<FamilyMorphism> = Vec::new();
            for (fac, pr) in [p, q].into_iter().zip(&proj) {
                for m in family_hom(fac, f, limits)? {
                    image.push(family_compose(&c, &m, pr));
                }
            }
            let total = image.len();
            image.sort();
            image.dedup();
            if image.len() != total || total != direct.len() {
                return Ok(Some(CoconnectedFailure {
                    factors: vec![p.clone(), q.clone()],
                    product_hom: direct.len() as u64,
                    coproduct_hom: total as u64,
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_coconnected(f: &FinFamily, probe_bound: usize, limits: &Limits) -> Result<bool> {
    Ok(coconnected_failure(f, probe_bound, limits)?.is_none())
}

/// The free product extension `ΠU`, acting pointwise.
#[derive(Clone, Debug)]
pub struct PiFunctor {
    pub functor: FinFunctor,
}

pub fn pi_functor(u: &FinFunctor) -> PiFunctor {
    PiFunctor { functor: u.clone() }
}

impl PiFunctor {
    pub fn on_family(&self, f: &FinFamily) -> FinFamily {
        FinFamily::labelled(
            self.functor.target(),
            f.index.clone(),
            f.assignment
                .iter()
                .map(|&a| self.functor.on_obj(a))
                .collect(),
        )
    }

    pub fn on_morphism(&self, m: &FamilyMorphism) -> FamilyMorphism {
        FamilyMorphism {
            reindex: m.reindex.clone(),
            components: m
                .components
                .iter()
                .map(|&h| self.functor.on_mor(h))
                .collect(),
        }
    }
}

/// The relative left adjoint `L` of a right multi-adjoint along the
/// embedding, extended to finite families.
#[derive(Clone, Debug)]
pub struct RelativeLeftAdjoint {
    pub functor: FinFunctor,
    pub units: Vec<LocalUnitRecord>,
}

pub fn relative_left_adjoint(u: &FinFunctor) -> Result<RelativeLeftAdjoint> {
    let units = all_local_units(u).map_err(|w| {
        CatError::NotMultiAdjoint(format!(
            "no unit for the component {{{}}} under {}",
            w.describe(u).join(", "),
            u.target().obj_name(w.base)
        ))
    })?;
    Ok(RelativeLeftAdjoint {
        functor: u.clone(),
        units,
    })
}

impl RelativeLeftAdjoint {
    fn source(&self) -> &Arc<FinCategory> {
        self.functor.source()
    }

    /// `L(B)`: the apexes of the local units under `B`, labelled by the units.
    pub fn on_object(&self, b: Obj) -> FinFamily {
        let t = self.functor.target();
        let rec = &self.units[b.idx()];
        FinFamily::labelled(
            self.source(),
            rec.entries
                .iter()
                .map(|e| t.mor_name(e.unit).to_string())
                .collect(),
            rec.entries.iter().map(|e| e.apex).collect(),
        )
    }

    /// `(unit index, L_A(g))` for `g : B → U(A)`.
    pub fn factor(&self, b: Obj, a: Obj, g: Mor) -> (usize, Mor) {
        let rec = &self.units[b.idx()];
        let x = rec.comma.index_of(&self.functor, a, g);
        (rec.block_of[x], rec.factor[x])
    }

    /// `L(f) : L(B₁) → L(B₂)` for `f : B₁ → B₂`.
    pub fn on_morphism(&self, f: Mor) -> FamilyMorphism {
        let t = self.functor.target();
        let (b1, b2) = (t.dom(f), t.cod(f));
        let (reindex, components) = self.units[b2.idx()]
            .entries
            .iter()
            .map(|e| self.factor(b1, e.apex, t.comp(e.unit, f)))
            .unzip();
        FamilyMorphism {
            reindex,
            components,
        }
    }

    /// Offsets of each `L(B_i)` inside `L(F)`.
    fn offsets(&self, f: &FinFamily) -> Vec<usize> {
        let mut acc = 0;
        f.assignment
            .iter()
            .map(|&b| {
                let o = acc;
                acc += self.units[b.idx()].entries.len();
                o
            })
            .collect()
    }

    /// `L(F)`: the concatenation of the `L(B_i)`, labelled `(i,unit)`.
    pub fn on_family(&self, f: &FinFamily) -> FinFamily {
        let mut index = Vec::new();
        let mut assignment = Vec::new();
        for (label, &b) in f.index.iter().zip(&f.assignment) {
            let lb = self.on_object(b);
            index.extend(lb.index.iter().map(|x| format!("({label},{x})")));
            assignment.extend(lb.assignment);
        }
        FinFamily::labelled(self.source(), index, assignment)
    }

    /// `L(m) : L(F) → L(G)` for `m : F → G` in the target completion.
    pub fn on_family_morphism(
        &self,
        f: &FinFamily,
        g: &FinFamily,
        m: &FamilyMorphism,
    ) -> FamilyMorphism {
        let t = self.functor.target();
        let off = self.offsets(f);
        let mut out = FamilyMorphism {
            reindex: Vec::new(),
            components: Vec::new(),
        };
        for (j, &b) in g.assignment.iter().enumerate() {
            let (i, fj) = (m.reindex[j], m.components[j]);
            for e in &self.units[b.idx()].entries {
                let (x, comp) = self.factor(f.assignment[i], e.apex, t.comp(e.unit, fj));
                out.reindex.push(off[i] + x);
                out.components.push(comp);
            }
        }
        out
    }

    /// The bijection `Π𝒜[L(F), G] → Πℬ[F, ΠU(G)]`: paste with the units.
    pub fn transpose(&self, f: &FinFamily, phi: &FamilyMorphism) -> FamilyMorphism {
        let (u, t) = (&self.functor, self.functor.target());
        let owner: Vec<(usize, usize)> = f
            .assignment
            .iter()
            .enumerate()
            .flat_map(|(i, &b)| (0..self.units[b.idx()].entries.len()).map(move |x| (i, x)))
            .collect();
        let (reindex, components) = phi
            .reindex
            .iter()
            .zip(&phi.components)
            .map(|(&k, &h)| {
                let (i, x) = owner[k];
                let unit = self.units[f.assignment[i].idx()].entries[x].unit;
                (i, t.comp(u.on_mor(h), unit))
            })
            .unzip();
        FamilyMorphism {
            reindex,
            components,
        }
    }

    /// Inverse of [`Self::transpose`]: factor each component through its unit.
    pub fn untranspose(
        &self,
        f: &FinFamily,
        g: &FinFamily,
        psi: &FamilyMorphism,
    ) -> FamilyMorphism {
        let off = self.offsets(f);
        let (reindex, components) = psi
            .reindex
            .iter()
            .zip(&psi.components)
            .zip(&g.assignment)
            .map(|((&i, &h), &a)| {
                let (x, comp) = self.factor(f.assignment[i], a, h);
                (off[i] + x, comp)
            })
            .unzip();
        FamilyMorphism {
            reindex,
            components,
        }
    }
}

/// Outcome of [`verify_pi_adjunction`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiAdjunctionReport {
    pub bound: usize,
    /// Pairs `(F, G)` whose hom-set cardinalities were compared.
    pub cardinality_pairs: usize,
    /// Pairs `(F, ι(A))` whose transposition was checked to be bijective.
    pub bijections: usize,
    /// Naturality squares checked.
    pub naturality_squares: usize,
    pub violations: Vec<String>,
}

impl PiAdjunctionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `Π𝒜[L(F), G] ≃ Πℬ[F, ΠU(G)]` for all families of size at most
/// `bound`: cardinalities for every pair, an explicit bijection for every
/// `G = ι(A)`, and naturality along `ι(f)` and `ι(h)`. Since family
/// morphisms into `G` are tuples of morphisms into the `ι(G_j)` and the
/// transposition acts per tuple entry, these cover every pair.
pub fn verify_pi_adjunction(
    u: &FinFunctor,
    bound: usize,
    limits: &Limits,
) -> Result<PiAdjunctionReport> {
    let l = relative_left_adjoint(u)?;
    let (s, t) = (u.source(), u.target());
    let mut report = PiAdjunctionReport {
        bound,
        ..Default::default()
    };
    let target_fams = families_up_to(t, bound);
    let source_fams = families_up_to(s, bound);
    // per-object sums: Σ over members of L(F) of |hom(−, A)| and Σ over F of |hom(−, U A)|
    for fam in &target_fams {
        let lf = l.on_family(fam);
        let left: Vec<u64> = s
            .objects()
            .map(|a| {
                lf.assignment
                    .iter()
                    .map(|&x| s.hom(x, a).len() as u64)
                    .sum()
            })
            .collect();
        let right: Vec<u64> = s
            .objects()
            .map(|a| {
                fam.assignment
                    .iter()
                    .map(|&b| t.hom(b, u.on_obj(a)).len() as u64)
                    .sum()
            })
            .collect();
        for g in &source_fams {
            report.cardinality_pairs += 1;
            let lhs = g
                .assignment
                .iter()
                .fold(1u64, |p, a| p.saturating_mul(left[a.idx()]));
            let rhs = g
                .assignment
                .iter()
                .fold(1u64, |p, a| p.saturating_mul(right[a.idx()]));
            if lhs != rhs {
                report.violations.push(format!(
                    "|hom(L({}), {})| = {lhs} but |hom({}, U({}))| = {rhs}",
                    fam.names().join(","),
                    g.names().join(","),
                    fam.names().join(","),
                    g.names().join(",")
                ));
            }
        }
        for a in s.objects() {
            let ia = embed(s, a);
            let homs = family_hom(&lf, &ia, limits)?;
            let mut images: Vec<FamilyMorphism> =
                homs.iter().map(|phi| l.transpose(fam, phi)).collect();
            report.bijections += 1;
            let target_count = right[a.idx()] as usize;
            for (phi, psi) in homs.iter().zip(&images) {
                if l.untranspose(fam, &ia, psi) != *phi {
                    report.violations.push(format!(
                        "transposition not invertible at L({}) → {}",
                        fam.names().join(","),
                        s.obj_name(a)
                    ));
                }
            }
            images.sort();
            images.dedup();
            if images.len() != homs.len() || homs.len() != target_count {
                report.violations.push(format!(
                    "transposition at ({}, {}) is not a bijection ({} → {})",
                    fam.names().join(","),
                    s.obj_name(a),
                    homs.len(),
                    target_count
                ));
            }
        }
    }
    // naturality along ι(f) : ι(B') → ι(B) and ι(h) : ι(A) → ι(A')
    for b in t.objects() {
        let ib = embed(t, b);
        let lb = l.on_object(b);
        for a in s.objects() {
            for phi in family_hom(&lb, &embed(s, a), limits)? {
                let tphi = l.transpose(&ib, &phi);
                for f in t.into_obj(b) {
                    report.naturality_squares += 1;
                    let ib1 = embed(t, t.dom(f));
                    let lf = l.on_family_morphism(&ib1, &ib, &embed_morphism(f));
                    let lhs = l.transpose(&ib1, &family_compose(s, &phi, &lf));
                    let rhs = family_compose(t, &tphi, &embed_morphism(f));
                    if lhs != rhs {
                        report.violations.push(format!(
                            "naturality in the target fails along {}",
                            t.mor_name(f)
                        ));
                    }
                }
                for h in s.out_of(a) {
                    report.naturality_squares += 1;
                    let lhs = l.transpose(&ib, &family_compose(s, &embed_morphism(h), &phi));
                    let rhs = family_compose(t, &embed_morphism(u.on_mor(h)), &tphi);
                    if lhs != rhs {
                        report.violations.push(format!(
                            "naturality in the source fails along {}",
                            s.mor_name(h)
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;

    #[test]
    fn homs_in_the_discrete_completion() {
        let c = d2();
        let lim = Limits::default();
        let xy = FinFamily::new(&c, vec![Obj(0), Obj(1)]);
        let x = embed(&c, Obj(0));
        let homs = family_hom(&xy, &x, &lim).unwrap();
        assert_eq!(
            homs,
            vec![FamilyMorphism {
                reindex: vec![0],
                components: vec![c.id(Obj(0))]
            }]
        );
        assert!(family_hom(&xy, &xy, &lim)
            .unwrap()
            .contains(&family_identity(&xy)));
        let empty = FinFamily::new(&c, vec![]);
        assert_eq!(family_hom(&empty, &x, &lim).unwrap().len(), 0);
        assert_eq!(family_hom(&x, &empty, &lim).unwrap().len(), 1);
        assert_eq!(
            family_hom(&embed(&c, Obj(0)), &embed(&c, Obj(1)), &lim)
                .unwrap()
                .len(),
            0
        );
    }

    #[test]
    fn products_concatenate() {
        let c = d2();
        let (p, proj) = family_product(&c, &[]).unwrap();
        assert!(p.is_empty() && proj.is_empty());
        let (p, proj) = family_product(&c, &[embed(&c, Obj(0)), embed(&c, Obj(1))]).unwrap();
        assert_eq!(p.assignment, vec![Obj(0), Obj(1)]);
        assert_eq!(proj[1].reindex, vec![1]);
        let big = FinFamily::new(&c, vec![Obj(0); 3]);
        let (p, _) = family_product(&c, &[p, big]).unwrap();
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn embedding_is_full_and_faithful() {
        let c = chain3();
        let lim = Limits::default();
        for x in c.objects() {
            for y in c.objects() {
                let homs = family_hom(&embed(&c, x), &embed(&c, y), &lim).unwrap();
                assert_eq!(homs.len(), c.hom(x, y).len());
            }
        }
    }

    #[test]
    fn coconnected_families() {
        let c = d2();
        let lim = Limits::default();
        assert!(is_coconnected(&embed(&c, Obj(0)), 3, &lim).unwrap());
        let xy = FinFamily::new(&c, vec![Obj(0), Obj(1)]);
        let fail = coconnected_failure(&xy, 2, &lim).unwrap().unwrap();
        assert_eq!(fail.factors.iter().map(|f| f.len()).sum::<usize>(), 2);
        assert!(!is_coconnected(&FinFamily::new(&c, vec![]), 2, &lim).unwrap());
    }

    #[test]
    fn relative_left_adjoint_of_the_v_inclusion() {
        let u = d2_into_v();
        let l = relative_left_adjoint(&u).unwrap();
        let t = u.target();
        assert_eq!(
            l.on_object(t.object("bot").unwrap()).assignment,
            vec![Obj(0), Obj(1)]
        );
        assert_eq!(l.on_object(t.object("a").unwrap()).assignment, vec![Obj(0)]);
        let idb = t.id(Obj(0));
        let lb = l.on_object(Obj(0));
        assert_eq!(l.on_morphism(idb), family_identity(&lb));
        let report = verify_pi_adjunction(&u, 3, &Limits::default()).unwrap();
        assert!(report.holds(), "{:?}", report.violations);
        let lim = Limits::default();
        let n = family_hom(&lb, &embed(u.source(), Obj(0)), &lim)
            .unwrap()
            .len();
        assert_eq!(n, 1);
        assert!(matches!(
            relative_left_adjoint(&cospan_to_one()),
            Err(CatError::NotMultiAdjoint(_))
        ));
    }

    #[test]
    fn identity_functor_adjunction() {
        let c = chain3();
        let id = FinFunctor::identity(&c);
        let l = relative_left_adjoint(&id).unwrap();
        for b in c.objects() {
            assert_eq!(l.on_object(b).assignment, vec![b]);
        }
        assert!(verify_pi_adjunction(&id, 2, &Limits::default())
            .unwrap()
            .holds());
        let pu = pi_functor(&id);
        let f = FinFamily::new(&c, vec![Obj(2), Obj(0)]);
        assert_eq!(pu.on_family(&f), f);
    }

    #[test]
    fn pi_extension_commutes_with_embedding() {
        let u = d2_into_v();
        let pu = pi_functor(&u);
        for a in u.source().objects() {
            assert_eq!(
                pu.on_family(&embed(u.source(), a)),
                embed(u.target(), u.on_obj(a))
            );
        }
    }
}
