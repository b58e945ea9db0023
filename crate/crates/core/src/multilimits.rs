//! Multi-limits and multi-colimits of finite diagrams, their preservation by
//! functors, and the construction of multicolimits in a full multireflective
//! subcategory from the local units of a colimit in the ambient category.

use std::sync::Arc;

use crate::cones::{
    all_cocones, all_cones, colimit, is_limit, limit, mediators, Cone, DiagramSpec,
};
use crate::connectivity::{multi_initial_family, multi_terminal_family};
use crate::error::{CatError, Result};
use crate::fincat::{
    identity_name, opposite, DerivedBuilder, FinCategory, FinFunctor, Limits, Mor, Obj,
};
use crate::multiadjoint::local_units;

/// Cones (or cocones) over a diagram as the objects of a category whose
/// arrows are apex maps commuting with every leg.
#[derive(Clone, Debug)]
pub struct ConeCategory {
    pub category: Arc<FinCategory>,
    /// Object `k` of `category` is `cones[k]`.
    pub cones: Vec<Cone>,
    /// Ambient apex map under each arrow of `category`.
    pub apex_map: Vec<Mor>,
}

/// How one (co)cone factors through the family: the member and the unique
/// mediating apex map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factoring {
    pub cone: Cone,
    pub member: usize,
    pub via: Mor,
}

/// A multi-terminal family of cones or a multi-initial family of cocones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiFamily {
    pub members: Vec<Cone>,
    pub witness: Vec<Factoring>,
}

impl MultiFamily {
    pub fn apexes(&self) -> Vec<Obj> {
        self.members.iter().map(|m| m.apex).collect()
    }
}

fn build(
    c: &FinCategory,
    name: String,
    cones: Vec<Cone>,
    limits: &Limits,
    commutes: impl Fn(&Cone, &Cone) -> Vec<Mor>,
) -> Result<ConeCategory> {
    limits.check(&name, cones.len())?;
    let mut b = DerivedBuilder::new(name, (0..cones.len()).map(|k| format!("cone{k}")).collect());
    let mut apex_map = Vec::new();
    let mut identity = vec![Mor(0); cones.len()];
    let mut index = std::collections::HashMap::new();
    for (i, x) in cones.iter().enumerate() {
        for (j, y) in cones.iter().enumerate() {
            for m in commutes(x, y) {
                let own = i == j && c.is_identity(m);
                let label = if own {
                    identity_name(&format!("cone{i}"))
                } else {
                    format!("{}@{i}~{j}", c.mor_name(m))
                };
                let k = b.push(label, Obj(i as u32), Obj(j as u32));
                if own {
                    identity[i] = k;
                }
                index.insert((i, j, m), k);
                apex_map.push(m);
            }
            limits.check("cone category", b.len())?;
        }
    }
    let ends: Vec<(usize, usize)> = (0..b.len())
        .map(|k| {
            let (_, d, t) = &b.morphisms[k];
            (d.idx(), t.idx())
        })
        .collect();
    let category = Arc::new(b.finish(identity, |g, f| {
        let h = c.comp(apex_map[g.idx()], apex_map[f.idx()]);
        index[&(ends[f.idx()].0, ends[g.idx()].1, h)]
    }));
    Ok(ConeCategory {
        category,
        cones,
        apex_map,
    })
}

/// Objects are cones over `d`; an arrow `x → y` is `m : x.apex → y.apex`
/// with `y.legs[i] ∘ m = x.legs[i]`.
pub fn cone_category(c: &FinCategory, d: &DiagramSpec, limits: &Limits) -> Result<ConeCategory> {
    let cones = all_cones(c, d);
    build(c, format!("Cone({})", c.name()), cones, limits, |x, y| {
        mediators(c, y, x)
    })
}

/// Objects are cocones under `d`; an arrow `x → y` is `m : x.apex → y.apex`
/// with `m ∘ x.legs[i] = y.legs[i]`.
pub fn cocone_category(c: &FinCategory, d: &DiagramSpec, limits: &Limits) -> Result<ConeCategory> {
    let cocones = all_cocones(c, d);
    build(
        c,
        format!("Cocone({})", c.name()),
        cocones,
        limits,
        |x, y| cocone_mediators(c, x, y),
    )
}

/// Arrows `m : from.apex → to.apex` with `m ∘ from.legs[i] = to.legs[i]`.
pub fn cocone_mediators(c: &FinCategory, from: &Cone, to: &Cone) -> Vec<Mor> {
    c.hom(from.apex, to.apex)
        .iter()
        .copied()
        .filter(|&m| {
            from.legs
                .iter()
                .zip(&to.legs)
                .all(|(&f, &t)| c.comp(m, f) == t)
        })
        .collect()
}

fn absent(cc: &ConeCategory, component: &[Obj]) -> CatError {
    CatError::Absent(
        component
            .iter()
            .map(|&o| cc.category.obj_name(o).to_string())
            .collect(),
    )
}

/// Multi-terminal family of the cone category. Empty when there are no cones.
pub fn multilimit(c: &FinCategory, d: &DiagramSpec, limits: &Limits) -> Result<MultiFamily> {
    let cc = cone_category(c, d, limits)?;
    let fam = multi_terminal_family(&cc.category).map_err(|a| absent(&cc, &a.component))?;
    Ok(assemble(&cc, &fam.members, &fam.witness))
}

/// Multi-initial family of the cocone category. Empty when there are no
/// cocones.
pub fn multicolimit(c: &FinCategory, d: &DiagramSpec, limits: &Limits) -> Result<MultiFamily> {
    let cc = cocone_category(c, d, limits)?;
    let fam = multi_initial_family(&cc.category).map_err(|a| absent(&cc, &a.component))?;
    Ok(assemble(&cc, &fam.members, &fam.witness))
}

fn assemble(cc: &ConeCategory, members: &[Obj], witness: &[(Obj, Mor)]) -> MultiFamily {
    MultiFamily {
        members: members.iter().map(|o| cc.cones[o.idx()].clone()).collect(),
        witness: witness
            .iter()
            .enumerate()
            .map(|(k, &(m, via))| Factoring {
                cone: cc.cones[k].clone(),
                member: members.iter().position(|&x| x == m).unwrap_or(usize::MAX),
                via: cc.apex_map[via.idx()],
            })
            .collect(),
    }
}

/// One target multilimit member with the source members whose images factor
/// through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationRow {
    pub target_member: Cone,
    /// `(source member index, mediator U(L_j).apex → M_k.apex)`
    pub sources: Vec<(usize, Mor)>,
    /// The mediators exhibit the member as the coproduct of the images.
    pub is_coproduct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    pub source: MultiFamily,
    pub target: MultiFamily,
    pub rows: Vec<PreservationRow>,
}

impl PreservationReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.is_coproduct)
    }

    /// The source multilimit is empty, so every target member must be an
    /// empty coproduct.
    pub fn is_vacuous(&self) -> bool {
        self.source.members.is_empty()
    }
}

/// Partitions the images of the source multilimit by the target member they
/// factor through and checks `M_k ≅ ∐_{j ∈ J_k} U(L_j)` via the mediators.
pub fn preserves_multilimits(
    u: &FinFunctor,
    d: &DiagramSpec,
    limits: &Limits,
) -> Result<PreservationReport> {
    let (s, t) = (u.source(), u.target());
    let source = multilimit(s, d, limits)?;
    let image = d.image(u);
    let target = multilimit(t, &image, limits)?;
    let mut rows: Vec<PreservationRow> = target
        .members
        .iter()
        .map(|m| PreservationRow {
            target_member: m.clone(),
            sources: Vec::new(),
            is_coproduct: false,
        })
        .collect();
    for (j, l) in source.members.iter().enumerate() {
        let ul = Cone {
            apex: u.on_obj(l.apex),
            legs: l.legs.iter().map(|&m| u.on_mor(m)).collect(),
        };
        let w = target
            .witness
            .iter()
            .find(|w| w.cone == ul)
            .ok_or_else(|| {
                CatError::InternalInconsistency(
                    "image cone missing from the target cone list".into(),
                )
            })?;
        rows[w.member].sources.push((j, w.via));
    }
    let op = opposite(t);
    for row in &mut rows {
        let disc = DiagramSpec {
            nodes: row.sources.iter().map(|&(_, m)| t.dom(m)).collect(),
            edges: Vec::new(),
        };
        let cocone = Cone {
            apex: row.target_member.apex,
            legs: row.sources.iter().map(|&(_, m)| m).collect(),
        };
        row.is_coproduct = is_limit(&op, &disc, &cocone);
    }
    Ok(PreservationReport {
        source,
        target,
        rows,
    })
}

fn require_full_inclusion(u: &FinFunctor) -> Result<()> {
    if !u.is_full() {
        return Err(CatError::NotFull(u.name().to_string()));
    }
    if !u.is_faithful() {
        return Err(CatError::NotFaithful(u.name().to_string()));
    }
    Ok(())
}

/// The unique preimage of `g` under a full and faithful `u`.
fn preimage(u: &FinFunctor, x: Obj, y: Obj, g: Mor) -> Result<Mor> {
    u.source()
        .hom(x, y)
        .iter()
        .copied()
        .find(|&m| u.on_mor(m) == g)
        .ok_or_else(|| CatError::NotFull(u.target().mor_name(g).to_string()))
}

/// Multicolimit of `d` in the source of a full multireflective `u`: take the
/// colimit `q_i : U(D_i) → Q` in the target, then for each local unit
/// `n : Q → U(A)` the cocone with legs the preimages of `n ∘ q_i`. Witnesses
/// come from factoring each source cocone through `Q` and then through its
/// local unit.
pub fn multireflective_multicolimit(u: &FinFunctor, d: &DiagramSpec) -> Result<MultiFamily> {
    require_full_inclusion(u)?;
    let (s, t) = (u.source(), u.target());
    let image = d.image(u);
    let q = colimit(t, &image).ok_or(CatError::NoTargetColimit)?;
    let rec =
        local_units(u, q.apex).map_err(|w| CatError::NotMultiAdjoint(w.describe(u).join(", ")))?;
    let members = rec
        .entries
        .iter()
        .map(|e| {
            let legs = d
                .nodes
                .iter()
                .zip(&q.legs)
                .map(|(&di, &qi)| preimage(u, di, e.apex, t.comp(e.unit, qi)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Cone { apex: e.apex, legs })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut witness = Vec::new();
    for cocone in all_cocones(s, d) {
        let image_cocone = Cone {
            apex: u.on_obj(cocone.apex),
            legs: cocone.legs.iter().map(|&l| u.on_mor(l)).collect(),
        };
        let h = match cocone_mediators(t, &q, &image_cocone)[..] {
            [h] => h,
            _ => {
                return Err(CatError::InternalInconsistency(
                    "colimit without a unique mediator".into(),
                ))
            }
        };
        let (entry, via) = rec.unit_for(u, cocone.apex, h);
        let member = rec
            .entries
            .iter()
            .position(|e| e.comma_object == entry.comma_object)
            .unwrap_or(usize::MAX);
        witness.push(Factoring {
            cone: cocone,
            member,
            via,
        });
    }
    Ok(MultiFamily { members, witness })
}

/// Members of `a` and `b` correspond one to one through apex isomorphisms
/// commuting with the legs.
pub fn same_cocones_up_to_iso(c: &FinCategory, a: &[Cone], b: &[Cone]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = b
            .iter()
            .enumerate()
            .position(|(k, y)| !used[k] && cocone_mediators(c, x, y).iter().any(|&m| c.is_iso(m)));
        match hit {
            Some(k) => {
                used[k] = true;
                true
            }
            None => false,
        }
    })
}

/// Limit of a connected diagram in the source of a full multireflective `u`,
/// obtained by factoring the target limit projections through their common
/// local unit. Checks that the unit is an isomorphism and that the cone is
/// limiting.
pub fn connected_limit_via_units(u: &FinFunctor, d: &DiagramSpec) -> Result<Cone> {
    if !d.is_connected() {
        return Err(CatError::ShapeNotConnected);
    }
    require_full_inclusion(u)?;
    let (s, t) = (u.source(), u.target());
    let p = limit(t, &d.image(u)).ok_or(CatError::NoTargetLimit)?;
    let rec =
        local_units(u, p.apex).map_err(|w| CatError::NotMultiAdjoint(w.describe(u).join(", ")))?;
    let mut unit = None;
    let mut legs = Vec::with_capacity(d.nodes.len());
    for (&di, &pi) in d.nodes.iter().zip(&p.legs) {
        let (entry, via) = rec.unit_for(u, di, pi);
        match unit {
            None => unit = Some(entry),
            Some(e) if e.comma_object != entry.comma_object => {
                return Err(CatError::InternalInconsistency(
                    "projections of a connected limit factor through different units".into(),
                ))
            }
            _ => {}
        }
        legs.push(via);
    }
    let entry = unit.ok_or(CatError::ShapeNotConnected)?;
    if !t.is_iso(entry.unit) {
        return Err(CatError::InternalInconsistency(format!(
            "local unit {} is not an isomorphism",
            t.mor_name(entry.unit)
        )));
    }
    let cone = Cone {
        apex: entry.apex,
        legs,
    };
    if !is_limit(s, d, &cone) {
        return Err(CatError::InternalInconsistency(
            "cone through the unit is not limiting".into(),
        ));
    }
    Ok(cone)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFormulaRow {
    pub object: Obj,
    pub cocones: usize,
    pub through_members: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFormulaReport {
    pub rows: Vec<HomFormulaRow>,
}

impl HomFormulaReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.cocones == r.through_members)
    }
}

/// For every object `X`, `|Cocone(D, X)| = Σ_j |hom(X_j, X)|` over the
/// members `X_j` of the family.
pub fn verify_multicolimit_hom_formula(
    c: &FinCategory,
    d: &DiagramSpec,
    family: &MultiFamily,
) -> HomFormulaReport {
    let cocones = all_cocones(c, d);
    let rows = c
        .objects()
        .map(|x| HomFormulaRow {
            object: x,
            cocones: cocones.iter().filter(|k| k.apex == x).count(),
            through_members: family.members.iter().map(|m| c.hom(m.apex, x).len()).sum(),
        })
        .collect();
    HomFormulaReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;
    use crate::fincat::slice;

    fn disc(nodes: &[u32]) -> DiagramSpec {
        DiagramSpec {
            nodes: nodes.iter().map(|&o| Obj(o)).collect(),
            edges: Vec::new(),
        }
    }

    #[test]
    fn cone_categories() {
        let lim = Limits::default();
        let c = chain3();
        let cc = cone_category(&c, &disc(&[0]), &lim).unwrap();
        let (sl, _) = slice(&c, Obj(0), &lim).unwrap();
        assert_eq!(cc.category.object_count(), sl.object_count());
        assert_eq!(cc.category.morphism_count(), sl.morphism_count());
        let v = vposet();
        let cc = cone_category(&v, &disc(&[1, 2]), &lim).unwrap();
        assert_eq!(cc.cones.len(), 1);
        assert_eq!(cc.cones[0].apex, Obj(0));
        let cc = cocone_category(&d2(), &disc(&[0, 1]), &lim).unwrap();
        assert_eq!(cc.category.object_count(), 0);
    }

    #[test]
    fn multiproducts_and_multicoproducts() {
        let lim = Limits::default();
        let f = multilimit(&vposet(), &disc(&[1, 2]), &lim).unwrap();
        assert_eq!(f.apexes(), vec![Obj(0)]);
        let f = multicolimit(&d2(), &disc(&[0, 1]), &lim).unwrap();
        assert!(f.members.is_empty());
        let f = multicolimit(&chain3(), &disc(&[0, 1]), &lim).unwrap();
        assert_eq!(f.apexes(), vec![Obj(1)]);
        // a singleton diagram in D2 has its node as colimit
        let f = multicolimit(&d2(), &disc(&[1]), &lim).unwrap();
        assert_eq!(f.apexes(), vec![Obj(1)]);
        // c is the coproduct of a and b in the cospan
        let f = multicolimit(&cospan(), &disc(&[0, 1]), &lim).unwrap();
        assert_eq!(f.members.len(), 1);
    }

    #[test]
    fn empty_diagram_in_the_v_poset() {
        // the multi-initial family of the whole category
        let lim = Limits::default();
        let f = multicolimit(&vposet(), &DiagramSpec::default(), &lim).unwrap();
        assert_eq!(f.apexes(), vec![Obj(0)]);
        let r = verify_multicolimit_hom_formula(&vposet(), &DiagramSpec::default(), &f);
        assert!(r.holds());
    }

    #[test]
    fn preservation() {
        let lim = Limits::default();
        let c = chain3();
        let r = preserves_multilimits(&FinFunctor::identity(&c), &disc(&[1, 2]), &lim).unwrap();
        assert!(r.holds());
        let u = d2_into_v();
        let r = preserves_multilimits(&u, &disc(&[0, 1]), &lim).unwrap();
        assert!(r.is_vacuous());
        assert_eq!(r.target.apexes(), vec![Obj(0)]);
        assert!(r.rows[0].sources.is_empty());
        // the bottom of V is initial, hence an empty coproduct
        assert!(r.holds());
    }

    #[test]
    fn unit_construction_on_identity() {
        let c = chain3();
        let id = FinFunctor::identity(&c);
        let d = disc(&[0, 1]);
        let f = multireflective_multicolimit(&id, &d).unwrap();
        assert_eq!(f.apexes(), vec![Obj(1)]);
        let direct = multicolimit(&c, &d, &Limits::default()).unwrap();
        assert!(same_cocones_up_to_iso(&c, &f.members, &direct.members));
        assert!(verify_multicolimit_hom_formula(&c, &d, &f).holds());
    }

    #[test]
    fn unit_construction_in_d2() {
        let u = d2_into_v();
        let empty = DiagramSpec::default();
        let f = multireflective_multicolimit(&u, &empty).unwrap();
        assert_eq!(f.apexes(), vec![Obj(0), Obj(1)]);
        let direct = multicolimit(u.source(), &empty, &Limits::default()).unwrap();
        assert!(same_cocones_up_to_iso(
            u.source(),
            &f.members,
            &direct.members
        ));
        // V lacks the coproduct of a and b
        assert_eq!(
            multireflective_multicolimit(&u, &disc(&[0, 1])),
            Err(CatError::NoTargetColimit)
        );
        assert!(matches!(
            multireflective_multicolimit(&cospan_to_one(), &empty),
            Err(CatError::NotFull(_)) | Err(CatError::NotFaithful(_))
        ));
    }

    #[test]
    fn connected_limits() {
        let c = chain3();
        let id = FinFunctor::identity(&c);
        let d = DiagramSpec {
            nodes: vec![Obj(1)],
            edges: Vec::new(),
        };
        let cone = connected_limit_via_units(&id, &d).unwrap();
        assert_eq!(
            cone,
            Cone {
                apex: Obj(1),
                legs: vec![c.id(Obj(1))]
            }
        );
        let u = d2_into_v();
        let cone = connected_limit_via_units(&u, &d).unwrap();
        assert_eq!(cone.apex, Obj(1));
        assert_eq!(
            connected_limit_via_units(&u, &disc(&[0, 1])),
            Err(CatError::ShapeNotConnected)
        );
    }
}
