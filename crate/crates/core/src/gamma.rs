//! Objects local with respect to a class of cones, the local morphisms
//! between them, and a finite check of the properties of the inclusion of
//! local objects: relative full faithfulness, stability, multi-adjointness
//! and gliding.

use std::sync::Arc;

use crate::error::{CatError, Result};
use crate::fincat::{subcategory, FinCategory, FinFunctor, Limits, Mor, Obj};
use crate::multiadjoint::{all_local_units, is_right_multi_adjoint, UnitsAbsent};
use crate::orthogonality::{
    is_relatively_full_faithful, is_stable, right_orthogonal, saturate, MorphismClass,
    RelffWitness, Unfactored,
};
use crate::Decision;

/// A cone `g_i : K → K_i`. The leg list may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeSpec {
    pub vertex: Obj,
    pub legs: Vec<Mor>,
}

/// A finite class of cones together with the class `V_Γ` of all their legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaClass {
    pub cones: Vec<ConeSpec>,
    pub v_gamma: MorphismClass,
}

impl GammaClass {
    pub fn new(c: &FinCategory, cones: Vec<ConeSpec>) -> Result<GammaClass> {
        for cone in &cones {
            if let Some(&bad) = cone.legs.iter().find(|&&g| c.dom(g) != cone.vertex) {
                return Err(CatError::LawViolation {
                    law: "cone legs start at the vertex".into(),
                    witness: vec![
                        c.obj_name(cone.vertex).to_string(),
                        c.mor_name(bad).to_string(),
                    ],
                });
            }
        }
        let v_gamma = MorphismClass::new(c, cones.iter().flat_map(|k| k.legs.iter().copied()));
        Ok(GammaClass { cones, v_gamma })
    }

    pub fn empty(c: &FinCategory) -> GammaClass {
        GammaClass {
            cones: Vec::new(),
            v_gamma: MorphismClass::empty(c),
        }
    }
}

/// Every `f : K → A` factors as `a ∘ g_i` for some leg.
pub fn is_local_for_cone(c: &FinCategory, cone: &ConeSpec, a: Obj) -> bool {
    c.hom(cone.vertex, a).iter().all(|&f| {
        cone.legs
            .iter()
            .any(|&g| c.hom(c.cod(g), a).iter().any(|&x| c.comp(x, g) == f))
    })
}

/// Precomposition with each leg is injective on `hom(K_i, A)`.
pub fn legs_injective(c: &FinCategory, cone: &ConeSpec, a: Obj) -> bool {
    cone.legs.iter().all(|&g| {
        let h = c.hom(c.cod(g), a);
        h.iter()
            .enumerate()
            .all(|(i, &x)| h[i + 1..].iter().all(|&y| c.comp(x, g) != c.comp(y, g)))
    })
}

pub fn is_gamma_local(c: &FinCategory, gamma: &GammaClass, a: Obj) -> bool {
    gamma.cones.iter().all(|k| is_local_for_cone(c, k, a))
}

pub fn is_strongly_gamma_local(c: &FinCategory, gamma: &GammaClass, a: Obj) -> bool {
    gamma
        .cones
        .iter()
        .all(|k| is_local_for_cone(c, k, a) && legs_injective(c, k, a))
}

fn local_mask(c: &FinCategory, gamma: &GammaClass, strong: bool) -> Vec<bool> {
    c.objects()
        .map(|a| {
            if strong {
                is_strongly_gamma_local(c, gamma, a)
            } else {
                is_gamma_local(c, gamma, a)
            }
        })
        .collect()
}

/// `V_Γ^⊥`.
pub fn gamma_local_morphisms(c: &FinCategory, gamma: &GammaClass) -> MorphismClass {
    right_orthogonal(c, &gamma.v_gamma)
}

/// The (strongly) local objects and local morphisms between them, with the
/// inclusion.
pub fn build_b_gamma(
    c: &Arc<FinCategory>,
    gamma: &GammaClass,
    strong: bool,
) -> Result<(Arc<FinCategory>, FinFunctor)> {
    let keep = local_mask(c, gamma, strong);
    let local = gamma_local_morphisms(c, gamma);
    let name = format!("{}_Gamma{}", c.name(), if strong { "_strong" } else { "" });
    subcategory(c, &name, &keep, local.mask())
}

/// A local morphism `u : C → A` into a local object from a non-local `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlidingFailure {
    pub morphism: Mor,
}

/// Domains of local morphisms into (strongly) local objects are (strongly)
/// local.
pub fn gamma_gliding(
    c: &FinCategory,
    gamma: &GammaClass,
    strong: bool,
) -> Decision<GlidingFailure> {
    let keep = local_mask(c, gamma, strong);
    let local = gamma_local_morphisms(c, gamma);
    let bad = local
        .iter()
        .find(|&m| keep[c.cod(m).idx()] && !keep[c.dom(m).idx()]);
    match bad {
        Some(morphism) => Decision::Fails(GlidingFailure { morphism }),
        None => Decision::Holds,
    }
}

/// Finite shadow of the Diers condition: every local unit of the inclusion
/// lies in the saturation of `V_Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiersShadow {
    /// Units outside the saturated class, as ambient arrows.
    pub outside: Vec<Mor>,
    /// Closure steps whose colimits are missing from the ambient category.
    pub skipped_obligations: usize,
}

impl DiersShadow {
    pub fn holds(&self) -> bool {
        self.outside.is_empty()
    }
}

/// Verdicts on the inclusion `U_Γ`. Filtered colimits and accessibility are
/// not part of the finite check.
#[derive(Clone, Debug)]
pub struct GammaReport {
    pub strong: bool,
    pub subcategory: Arc<FinCategory>,
    pub inclusion: FinFunctor,
    pub relff: Decision<RelffWitness>,
    pub stable: Decision<Unfactored>,
    pub multi_adjoint: Decision<UnitsAbsent>,
    pub gliding: Decision<GlidingFailure>,
    /// Computed on request, when the inclusion is a right multi-adjoint.
    pub diers: Option<DiersShadow>,
}

impl GammaReport {
    pub fn holds(&self) -> bool {
        self.relff.holds()
            && self.stable.holds()
            && self.multi_adjoint.holds()
            && self.gliding.holds()
    }

    /// Labels of the failed sub-checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.relff.holds() {
            out.push("relatively full and faithful");
        }
        if !self.stable.holds() {
            out.push("stable");
        }
        if !self.multi_adjoint.holds() {
            out.push("right multi-adjoint");
        }
        if !self.gliding.holds() {
            out.push("gliding");
        }
        out
    }
}

/// Runs every sub-check and returns the report regardless of the verdicts.
/// The Diers shadow needs a saturation and is only computed on request.
pub fn gamma_report(
    c: &Arc<FinCategory>,
    gamma: &GammaClass,
    strong: bool,
    with_diers: bool,
    limits: &Limits,
) -> Result<GammaReport> {
    let (sub, inclusion) = build_b_gamma(c, gamma, strong)?;
    let multi_adjoint = is_right_multi_adjoint(&inclusion);
    let diers = if with_diers && multi_adjoint.holds() {
        let sat = saturate(c, &gamma.v_gamma, limits)?;
        let records = all_local_units(&inclusion)
            .map_err(|_| CatError::InternalInconsistency("local units vanished".into()))?;
        let mut outside: Vec<Mor> = records
            .iter()
            .flat_map(|r| r.entries.iter().map(|e| e.unit))
            .filter(|&n| !sat.class.contains(n))
            .collect();
        outside.sort();
        outside.dedup();
        Some(DiersShadow {
            outside,
            skipped_obligations: sat.skipped.len(),
        })
    } else {
        None
    };
    Ok(GammaReport {
        strong,
        relff: is_relatively_full_faithful(&inclusion),
        stable: is_stable(&inclusion),
        multi_adjoint,
        gliding: gamma_gliding(c, gamma, strong),
        diers,
        subcategory: sub,
        inclusion,
    })
}

/// As [`gamma_report`], turning a failed sub-check into an error.
pub fn verify_gamma_theorem(
    c: &Arc<FinCategory>,
    gamma: &GammaClass,
    strong: bool,
    limits: &Limits,
) -> Result<GammaReport> {
    let report = gamma_report(c, gamma, strong, true, limits)?;
    if report.holds() {
        Ok(report)
    } else {
        Err(CatError::InternalInconsistency(format!(
            "inclusion of local objects fails: {}",
            report.failures().join(", ")
        )))
    }
}

/// Every cone whose legs form a set of arrows out of one vertex, the empty
/// leg set included, ordered by vertex then leg mask.
pub fn all_cone_specs(c: &FinCategory) -> Vec<ConeSpec> {
    let mut out = Vec::new();
    for k in c.objects() {
        let legs: Vec<Mor> = c.out_of(k).collect();
        for mask in 0u64..(1u64 << legs.len()) {
            out.push(ConeSpec {
                vertex: k,
                legs: legs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &g)| g)
                    .collect(),
            });
        }
    }
    out
}
