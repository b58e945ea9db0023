//! Subcommand definitions and their execution against a workspace.

use std::sync::Arc;

use clap::{Args, Subcommand};
use multicat_core::cones::{Cone, DiagramSpec};
use multicat_core::connectivity::{connected_components, multi_initial_family};
use multicat_core::corpus::{run_corpus, CorpusConfig};
use multicat_core::error::CatError;
use multicat_core::family::{family_hom, relative_left_adjoint, verify_pi_adjunction, FinFamily};
use multicat_core::fincat::{Diagram, FinCategory, FinFunctor, Limits, Mor, Obj};
use multicat_core::gamma::{
    build_b_gamma, gamma_local_morphisms, gamma_report, is_gamma_local, is_strongly_gamma_local,
};
use multicat_core::lr::{
    classify_lr, costable_inclusion_check, lprime_forms, reflection_universal, remark_violations,
    stalkwise_classify,
};
use multicat_core::multiadjoint::{
    all_local_units, beck_chevalley, conerve_decomposition, is_local_right_adjoint,
    is_right_multi_adjoint, local_left_adjoint, local_units, LocalUnitRecord,
};
use multicat_core::multilimits::{
    cocone_category, cone_category, connected_limit_via_units, multicolimit, multilimit,
    multireflective_multicolimit, preserves_multilimits, same_cocones_up_to_iso,
    verify_multicolimit_hom_formula, MultiFamily,
};
use multicat_core::orthogonality::{
    candidate_factorizations, factor_via_classes, gliding_inclusion, is_relatively_full_faithful,
    is_stable, left_orthogonal, lifts_r_maps, orthogonality_witness, right_orthogonal, saturate,
    stable_factorization, validate_factorization_system,
};
use multicat_core::Decision;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{Report, Verdict};
use crate::workspace::{NamedClass, NamedGamma, Workspace};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("no {kind} named `{name}` in the workspace")]
    Unknown { kind: &'static str, name: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cat(#[from] CatError),
}

type Result<T> = std::result::Result<T, CommandError>;

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Validate the workspace and print it in canonical form
    Parse,
    /// Hom-sets of a category
    Homs {
        #[arg(short, long)]
        category: String,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Connected components of a category
    Components {
        #[arg(short, long)]
        category: String,
    },
    /// Multi-initial family of a category
    Multiinit {
        #[arg(short, long)]
        category: String,
    },
    /// Decide whether a functor is a right multi-adjoint
    IsMultiadjoint {
        #[arg(short, long)]
        functor: String,
    },
    /// Local units under one or every target object
    LocalUnits {
        #[arg(short, long)]
        functor: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Local left adjoint between the slices at a source object
    LeftAdjoint {
        #[arg(short, long)]
        functor: String,
        #[arg(long)]
        at: String,
    },
    /// Beck-Chevalley comparison for a source arrow and a target arrow
    BeckChevalley {
        #[arg(short, long)]
        functor: String,
        #[arg(long = "mor")]
        mor: String,
        #[arg(long)]
        arrow: String,
    },
    /// Decomposition of the nerve of a comma category
    Conerve {
        #[arg(short, long)]
        functor: String,
        #[arg(long)]
        base: String,
    },
    /// Stable factorization of an arrow into the image of a functor
    StableFactor {
        #[arg(short, long)]
        functor: String,
        #[arg(long)]
        apex: String,
        #[arg(long)]
        arrow: String,
    },
    /// Decide stability of a functor
    IsStable {
        #[arg(short, long)]
        functor: String,
    },
    /// Orthogonality of two arrows, or both orthogonals of a class
    Orthogonal {
        #[arg(short, long)]
        category: Option<String>,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        class: Option<String>,
    },
    /// Check the factorization system axioms for two classes
    ValidateFs {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Saturate a class of morphisms
    Saturate {
        #[arg(long)]
        class: String,
    },
    /// Factor an arrow through two classes
    Factor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long = "mor")]
        mor: String,
    },
    /// Decide relative full faithfulness of a functor
    Relff {
        #[arg(short, long)]
        functor: String,
        /// Also check that maps of this class lift
        #[arg(long)]
        class: Option<String>,
    },
    /// Inclusion of a set of objects with the right-class maps
    Glide {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Comma-separated object names
        #[arg(long)]
        objects: String,
    },
    /// Morphisms between two finite families
    FamilyHom {
        #[arg(short, long)]
        category: String,
        /// Comma-separated object names, possibly empty
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Check the adjunction between a functor's free product extension and its left adjoint
    PiAdjunction {
        #[arg(short, long)]
        functor: String,
        #[arg(long, default_value_t = 4)]
        family_bound: usize,
    },
    /// Multi-limit of a diagram
    Multilimit {
        #[arg(short, long)]
        diagram: String,
    },
    /// Multi-colimit of a diagram
    Multicolimit {
        #[arg(short, long)]
        diagram: String,
    },
    /// Decide whether a functor preserves the multi-limit of a diagram
    Preserve {
        #[arg(short, long)]
        functor: String,
        #[arg(short, long)]
        diagram: String,
    },
    /// Multi-colimit in a full multireflective subcategory
    Mreflect {
        #[arg(short, long)]
        functor: String,
        #[arg(short, long)]
        diagram: String,
    },
    /// Local objects and local morphisms of a cone class
    GammaLocal {
        #[arg(short, long)]
        gamma: String,
        #[arg(long)]
        strong: bool,
    },
    /// Subcategory of local objects and local morphisms
    BGamma {
        #[arg(short, long)]
        gamma: String,
        #[arg(long)]
        strong: bool,
    },
    /// Check the properties of the inclusion of local objects
    GammaVerify {
        #[arg(short, long)]
        gamma: String,
        #[arg(long)]
        strong: bool,
    },
    /// Objects with terminal map in the left or right class
    ClassifyLr {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Universal property of the reflection of one object
    Reflect {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        object: String,
    },
    /// Fibers of an arrow over the points of its codomain
    Stalks {
        #[arg(long)]
        class: String,
        #[arg(long = "mor")]
        mor: String,
    },
    /// Right-class arrows into an object whose domain lies over a subclass
    Forms {
        #[arg(long)]
        lprime: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        object: String,
    },
    /// Stability of the co-inclusion of a subclass slice
    Costable {
        #[arg(long)]
        left: String,
        #[arg(long)]
        lprime: String,
        #[arg(long)]
        base: String,
    },
    /// Run every check over all small categories and functors
    Corpus(CorpusArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    #[arg(long, default_value_t = 3)]
    pub max_obj: usize,
    #[arg(long, default_value_t = 6)]
    pub max_mor: usize,
    #[arg(long, default_value_t = 4)]
    pub family_bound: usize,
    #[arg(long, default_value_t = 2)]
    pub gamma_cones: usize,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Parse => "parse",
            Command::Homs { .. } => "homs",
            Command::Components { .. } => "components",
            Command::Multiinit { .. } => "multiinit",
            Command::IsMultiadjoint { .. } => "is-multiadjoint",
            Command::LocalUnits { .. } => "local-units",
            Command::LeftAdjoint { .. } => "left-adjoint",
            Command::BeckChevalley { .. } => "beck-chevalley",
            Command::Conerve { .. } => "conerve",
            Command::StableFactor { .. } => "stable-factor",
            Command::IsStable { .. } => "is-stable",
            Command::Orthogonal { .. } => "orthogonal",
            Command::ValidateFs { .. } => "validate-fs",
            Command::Saturate { .. } => "saturate",
            Command::Factor { .. } => "factor",
            Command::Relff { .. } => "relff",
            Command::Glide { .. } => "glide",
            Command::FamilyHom { .. } => "family-hom",
            Command::PiAdjunction { .. } => "pi-adjunction",
            Command::Multilimit { .. } => "multilimit",
            Command::Multicolimit { .. } => "multicolimit",
            Command::Preserve { .. } => "preserve",
            Command::Mreflect { .. } => "mreflect",
            Command::GammaLocal { .. } => "gamma-local",
            Command::BGamma { .. } => "b-gamma",
            Command::GammaVerify { .. } => "gamma-verify",
            Command::ClassifyLr { .. } => "classify-lr",
            Command::Reflect { .. } => "reflect",
            Command::Stalks { .. } => "stalks",
            Command::Forms { .. } => "forms",
            Command::Costable { .. } => "costable",
            Command::Corpus(_) => "corpus",
        }
    }
}

fn category<'a>(w: &'a Workspace, name: &str) -> Result<&'a Arc<FinCategory>> {
    w.category(name).ok_or_else(|| CommandError::Unknown {
        kind: "category",
        name: name.to_string(),
    })
}

fn functor<'a>(w: &'a Workspace, name: &str) -> Result<&'a FinFunctor> {
    w.functor(name).ok_or_else(|| CommandError::Unknown {
        kind: "functor",
        name: name.to_string(),
    })
}

fn class<'a>(w: &'a Workspace, name: &str) -> Result<&'a NamedClass> {
    w.class(name).ok_or_else(|| CommandError::Unknown {
        kind: "class",
        name: name.to_string(),
    })
}

fn gamma<'a>(w: &'a Workspace, name: &str) -> Result<&'a NamedGamma> {
    w.gamma(name).ok_or_else(|| CommandError::Unknown {
        kind: "cone class",
        name: name.to_string(),
    })
}

fn diagram<'a>(w: &'a Workspace, name: &str) -> Result<&'a Diagram> {
    w.diagram(name).ok_or_else(|| CommandError::Unknown {
        kind: "diagram",
        name: name.to_string(),
    })
}

/// Two classes that must live in the same category.
fn class_pair<'a>(w: &'a Workspace, a: &str, b: &str) -> Result<(&'a NamedClass, &'a NamedClass)> {
    let (x, y) = (class(w, a)?, class(w, b)?);
    if x.category != y.category {
        return Err(CatError::AmbientMismatch(format!(
            "{} and {}",
            x.category.name(),
            y.category.name()
        ))
        .into());
    }
    Ok((x, y))
}

fn object_list(c: &FinCategory, list: &str) -> Result<Vec<Obj>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| c.object(s).map_err(CommandError::from))
        .collect()
}

fn obj(c: &FinCategory, o: Obj) -> Value {
    Value::from(c.obj_name(o))
}

fn mor(c: &FinCategory, m: Mor) -> Value {
    Value::from(c.mor_name(m))
}

fn mors(c: &FinCategory, ms: impl IntoIterator<Item = Mor>) -> Value {
    Value::Array(ms.into_iter().map(|m| mor(c, m)).collect())
}

fn objs(c: &FinCategory, os: impl IntoIterator<Item = Obj>) -> Value {
    Value::Array(os.into_iter().map(|o| obj(c, o)).collect())
}

fn list(v: &Value) -> String {
    match v {
        Value::Array(xs) => xs
            .iter()
            .map(|x| match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect::<Vec<_>>()
            .join(", "),
        other => other.to_string(),
    }
}

fn cone_json(c: &FinCategory, k: &Cone) -> Value {
    json!({ "apex": obj(c, k.apex), "legs": mors(c, k.legs.iter().copied()) })
}

fn family_json(c: &FinCategory, f: &MultiFamily) -> Value {
    Value::Array(f.members.iter().map(|k| cone_json(c, k)).collect())
}

fn units_json(u: &FinFunctor, rec: &LocalUnitRecord) -> Value {
    let (s, t) = (u.source(), u.target());
    json!({
        "base": obj(t, rec.base),
        "units": rec.entries.iter().map(|e| json!({ "unit": mor(t, e.unit), "apex": obj(s, e.apex) })).collect::<Vec<_>>(),
    })
}

fn units_line(u: &FinFunctor, rec: &LocalUnitRecord) -> String {
    let (s, t) = (u.source(), u.target());
    let units: Vec<String> = rec
        .entries
        .iter()
        .map(|e| {
            format!(
                "{} : {} -> U({})",
                t.mor_name(e.unit),
                t.obj_name(rec.base),
                s.obj_name(e.apex)
            )
        })
        .collect();
    format!("{}: {}", t.obj_name(rec.base), units.join(", "))
}

fn describe_category(c: &FinCategory) -> Value {
    json!({
        "name": c.name(),
        "objects": objs(c, c.objects()),
        "morphisms": c.morphisms().map(|m| json!({
            "name": c.mor_name(m),
            "dom": c.obj_name(c.dom(m)),
            "cod": c.obj_name(c.cod(m)),
        })).collect::<Vec<_>>(),
    })
}

pub fn execute(cmd: &Command, w: &Workspace, limits: &Limits) -> Result<Report> {
    let name = cmd.name();
    let report = match cmd {
        Command::Parse => {
            let mut r = Report::new(name, Verdict::Computed).with_data(json!({
                "categories": w.categories.iter().map(|c| json!({
                    "name": c.name(), "objects": c.object_count(), "morphisms": c.morphism_count(),
                })).collect::<Vec<_>>(),
                "functors": w.functors.iter().map(|f| f.name()).collect::<Vec<_>>(),
                "classes": w.classes.iter().map(|k| &k.name).collect::<Vec<_>>(),
                "gammas": w.gammas.iter().map(|g| &g.name).collect::<Vec<_>>(),
                "diagrams": w.diagrams.iter().map(|d| &d.name).collect::<Vec<_>>(),
                "canonical": w.print(),
            }));
            r.line(w.print().trim_end());
            r
        }
        Command::Homs {
            category: cn,
            from,
            to,
        } => {
            let c = category(w, cn)?;
            let pick = |x: &Option<String>| -> Result<Vec<Obj>> {
                match x {
                    Some(n) => Ok(vec![c.object(n)?]),
                    None => Ok(c.objects().collect()),
                }
            };
            let (xs, ys) = (pick(from)?, pick(to)?);
            let mut r = Report::new(name, Verdict::Computed).input("category", cn.as_str());
            let mut rows = Vec::new();
            for &x in &xs {
                for &y in &ys {
                    let h = mors(c, c.hom(x, y).iter().copied());
                    r.line(format!(
                        "{} -> {}: [{}]",
                        c.obj_name(x),
                        c.obj_name(y),
                        list(&h)
                    ));
                    rows.push(json!({ "from": obj(c, x), "to": obj(c, y), "arrows": h }));
                }
            }
            r.with_data(json!({ "homs": rows }))
        }
        Command::Components { category: cn } => {
            let c = category(w, cn)?;
            let p = connected_components(c);
            let blocks: Vec<Value> = p
                .blocks
                .iter()
                .map(|b| objs(c, b.iter().copied()))
                .collect();
            let mut r = Report::new(name, Verdict::Computed).input("category", cn.as_str());
            for b in &blocks {
                r.line(format!("{{{}}}", list(b)));
            }
            r.with_data(json!({ "components": blocks }))
        }
        Command::Multiinit { category: cn } => {
            let c = category(w, cn)?;
            let r = Report::new(name, Verdict::Yes).input("category", cn.as_str());
            match multi_initial_family(c) {
                Ok(f) => {
                    let members = objs(c, f.members.iter().copied());
                    let mut r = r.with_data(json!({
                        "members": members,
                        "arrows": c.objects().map(|y| {
                            let (m, a) = f.witness[y.idx()];
                            json!({ "object": obj(c, y), "member": obj(c, m), "arrow": mor(c, a) })
                        }).collect::<Vec<_>>(),
                    }));
                    r.line(format!("members: {}", list(&members)));
                    r
                }
                Err(a) => {
                    let mut r = r;
                    r.verdict = Verdict::No;
                    r.witness(json!({ "component_without_initial": objs(c, a.component) }));
                    r
                }
            }
        }
        Command::IsMultiadjoint { functor: fname } => {
            let u = functor(w, fname)?;
            let mut r = Report::new(name, Verdict::Yes).input("functor", fname.as_str());
            let lra = is_local_right_adjoint(u).holds();
            match is_right_multi_adjoint(u) {
                Decision::Holds => {
                    let recs = all_local_units(u)
                        .map_err(|_| CatError::InternalInconsistency("units vanished".into()))?;
                    for rec in &recs {
                        r.line(units_line(u, rec));
                    }
                    r.with_data(json!({
                        "local_right_adjoint": lra,
                        "units": recs.iter().map(|rec| units_json(u, rec)).collect::<Vec<_>>(),
                    }))
                }
                Decision::Fails(a) => {
                    r.verdict = Verdict::No;
                    r.witness(
                        json!({ "base": obj(u.target(), a.base), "component": a.describe(u) }),
                    );
                    r.with_data(json!({ "local_right_adjoint": lra }))
                }
            }
        }
        Command::LocalUnits {
            functor: fname,
            base,
        } => {
            let u = functor(w, fname)?;
            let t = u.target();
            let bases: Vec<Obj> = match base {
                Some(b) => vec![t.object(b)?],
                None => t.objects().collect(),
            };
            let mut r = Report::new(name, Verdict::Computed).input("functor", fname.as_str());
            if let Some(b) = base {
                r = r.input("base", b.as_str());
            }
            let mut rows = Vec::new();
            for b in bases {
                match local_units(u, b) {
                    Ok(rec) => {
                        r.line(units_line(u, &rec));
                        rows.push(units_json(u, &rec));
                    }
                    Err(a) => {
                        r.verdict = Verdict::No;
                        r.witness(json!({ "base": obj(t, a.base), "component": a.describe(u) }));
                    }
                }
            }
            r.with_data(json!({ "units": rows }))
        }
        Command::LeftAdjoint { functor: fname, at } => {
            let u = functor(w, fname)?;
            let a = u.source().object(at)?;
            let mut r = Report::new(name, Verdict::Computed)
                .input("functor", fname.as_str())
                .input("at", at.as_str());
            match local_left_adjoint(u, a, limits) {
                Ok(adj) => {
                    let (ts, ss) = (&adj.target_slice, &adj.source_slice);
                    let rows: Vec<Value> = ts
                        .objects()
                        .map(|o| {
                            r.line(format!(
                                "L({}) = {}",
                                ts.obj_name(o),
                                ss.obj_name(adj.left.on_obj(o))
                            ));
                            json!({
                                "object": obj(ts, o),
                                "image": obj(ss, adj.left.on_obj(o)),
                                "unit": mor(ts, adj.unit.components[o.idx()]),
                            })
                        })
                        .collect();
                    r.with_data(json!({ "left": rows, "target_slice": ts.name(), "source_slice": ss.name() }))
                }
                Err(CatError::NotLocalRightAdjoint(why)) => {
                    r.verdict = Verdict::No;
                    r.witness(json!({ "not_local_right_adjoint": why }));
                    r
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::BeckChevalley {
            functor: fname,
            mor: m,
            arrow,
        } => {
            let u = functor(w, fname)?;
            let (s, t) = (u.source(), u.target());
            let res = beck_chevalley(u, s.morphism(m)?, t.morphism(arrow)?)?;
            let mut r = Report::new(
                name,
                if res.is_iso {
                    Verdict::Yes
                } else {
                    Verdict::No
                },
            )
            .input("functor", fname.as_str())
            .input("mor", m.as_str())
            .input("arrow", arrow.as_str());
            r.line(format!(
                "sigma = {}{}",
                s.mor_name(res.sigma),
                res.inverse
                    .map(|i| format!(", inverse {}", s.mor_name(i)))
                    .unwrap_or_default()
            ));
            if !res.is_iso {
                r.witness(json!({ "sigma": mor(s, res.sigma) }));
            }
            r.with_data(json!({
                "sigma": mor(s, res.sigma),
                "is_iso": res.is_iso,
                "inverse": res.inverse.map(|i| mor(s, i)),
            }))
        }
        Command::Conerve {
            functor: fname,
            base,
        } => {
            let u = functor(w, fname)?;
            let t = u.target();
            let rep = conerve_decomposition(u, t.object(base)?)?;
            let ok = rep.rows.iter().all(|x| x.lhs == x.rhs);
            let mut r = Report::new(name, if ok { Verdict::Yes } else { Verdict::No })
                .input("functor", fname.as_str())
                .input("base", base.as_str());
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|x| json!({ "object": obj(u.source(), x.object), "lhs": x.lhs, "rhs": x.rhs }))
                .collect();
            for x in &rep.rows {
                r.line(format!(
                    "{}: {} = {}",
                    u.source().obj_name(x.object),
                    x.lhs,
                    x.rhs
                ));
                if x.lhs != x.rhs {
                    r.witness(
                        json!({ "object": obj(u.source(), x.object), "lhs": x.lhs, "rhs": x.rhs }),
                    );
                }
            }
            r.with_data(json!({ "rows": rows }))
        }
        Command::StableFactor {
            functor: fname,
            apex,
            arrow,
        } => {
            let u = functor(w, fname)?;
            let (s, t) = (u.source(), u.target());
            let (a, f) = (s.object(apex)?, t.morphism(arrow)?);
            let mut r = Report::new(name, Verdict::Computed)
                .input("functor", fname.as_str())
                .input("apex", apex.as_str())
                .input("arrow", arrow.as_str());
            match stable_factorization(u, a, f) {
                Ok(sf) => {
                    let all = candidate_factorizations(u, a, f)?;
                    r.line(format!(
                        "{} = U({}) . {} through U({})",
                        t.mor_name(f),
                        s.mor_name(sf.right_part),
                        t.mor_name(sf.candidate),
                        s.obj_name(sf.apex)
                    ));
                    r.with_data(json!({
                        "candidate": mor(t, sf.candidate),
                        "apex": obj(s, sf.apex),
                        "right_part": mor(s, sf.right_part),
                        "all": all.iter().map(|x| json!({
                            "candidate": mor(t, x.candidate), "apex": obj(s, x.apex), "right_part": mor(s, x.right_part),
                        })).collect::<Vec<_>>(),
                    }))
                }
                Err(CatError::NotStable(why)) => {
                    r.verdict = Verdict::No;
                    r.witness(json!({ "not_stable": why }));
                    r
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::IsStable { functor: fname } => {
            let u = functor(w, fname)?;
            let (s, t) = (u.source(), u.target());
            let mut r = Report::new(name, Verdict::Yes).input("functor", fname.as_str());
            if let Decision::Fails(x) = is_stable(u) {
                r.verdict = Verdict::No;
                r.witness(json!({ "base": obj(t, x.base), "apex": obj(s, x.apex), "arrow": mor(t, x.arrow) }));
            }
            r
        }
        Command::Orthogonal {
            category: cn,
            left,
            right,
            class: cl,
        } => match (cl, left, right) {
            (Some(k), None, None) => {
                let k = class(w, k)?;
                let c = &k.category;
                let (ro, lo) = (right_orthogonal(c, &k.class), left_orthogonal(c, &k.class));
                let mut r = Report::new(name, Verdict::Computed).input("class", k.name.as_str());
                let (rv, lv) = (mors(c, ro.iter()), mors(c, lo.iter()));
                r.line(format!("right orthogonal: {{{}}}", list(&rv)));
                r.line(format!("left orthogonal: {{{}}}", list(&lv)));
                r.with_data(json!({ "right": rv, "left": lv }))
            }
            (None, Some(l), Some(rr)) => {
                let cn = cn.as_ref().ok_or_else(|| {
                    CommandError::Usage("--category is required with --left/--right".into())
                })?;
                let c = category(w, cn)?;
                let (lm, rm) = (c.morphism(l)?, c.morphism(rr)?);
                let wit = orthogonality_witness(c, lm, rm);
                let mut r = Report::new(
                    name,
                    if wit.is_none() {
                        Verdict::Yes
                    } else {
                        Verdict::No
                    },
                )
                .input("category", cn.as_str())
                .input("left", l.as_str())
                .input("right", rr.as_str());
                if let Some((top, bottom, n)) = wit {
                    r.witness(
                        json!({ "top": mor(c, top), "bottom": mor(c, bottom), "fillers": n }),
                    );
                }
                r
            }
            _ => {
                return Err(CommandError::Usage(
                    "give either --class, or --category with --left and --right".into(),
                ))
            }
        },
        Command::ValidateFs { left, right } => {
            let (l, rc) = class_pair(w, left, right)?;
            let c = &l.category;
            let rep = validate_factorization_system(c, &l.class, &rc.class);
            let mut r = Report::new(
                name,
                if rep.is_valid() {
                    Verdict::Yes
                } else {
                    Verdict::No
                },
            )
            .input("left", left.as_str())
            .input("right", right.as_str());
            for f in &rep.failures {
                r.witness(json!({ "axiom": f.axiom.label(), "arrows": mors(c, f.witness.iter().copied()) }));
            }
            r
        }
        Command::Saturate { class: k } => {
            let k = class(w, k)?;
            let c = &k.category;
            let sat = saturate(c, &k.class, limits)?;
            let members = mors(c, sat.class.iter());
            let mut r = Report::new(name, Verdict::Computed).input("class", k.name.as_str());
            r.line(format!("saturation: {{{}}}", list(&members)));
            r.skipped = sat
                .skipped
                .iter()
                .map(|o| json!({ "rule": o.rule.label(), "arrows": mors(c, o.arrows.iter().copied()) }))
                .collect();
            r.with_data(json!({ "class": members }))
        }
        Command::Factor {
            left,
            right,
            mor: m,
        } => {
            let (l, rc) = class_pair(w, left, right)?;
            let c = &l.category;
            let f = c.morphism(m)?;
            let fs = factor_via_classes(c, f, &l.class, &rc.class);
            let mut r = Report::new(
                name,
                if fs.is_empty() {
                    Verdict::No
                } else {
                    Verdict::Computed
                },
            )
            .input("left", left.as_str())
            .input("right", right.as_str())
            .input("mor", m.as_str());
            let rows: Vec<Value> = fs
                .iter()
                .map(|x| {
                    r.line(format!(
                        "{} = {} . {} through {}",
                        m,
                        c.mor_name(x.right),
                        c.mor_name(x.left),
                        c.obj_name(x.apex)
                    ));
                    json!({ "apex": obj(c, x.apex), "left": mor(c, x.left), "right": mor(c, x.right) })
                })
                .collect();
            r.with_data(json!({ "factorizations": rows }))
        }
        Command::Relff {
            functor: fname,
            class: k,
        } => {
            let u = functor(w, fname)?;
            let (s, t) = (u.source(), u.target());
            let mut r = Report::new(name, Verdict::Yes).input("functor", fname.as_str());
            if let Decision::Fails(x) = is_relatively_full_faithful(u) {
                r.verdict = Verdict::No;
                r.witness(json!({
                    "u1": mor(s, x.u1), "u2": mor(s, x.u2), "f": mor(t, x.f), "preimages": x.preimages,
                }));
            }
            if let Some(k) = k {
                let kc = class(w, k)?;
                if kc.category != *t {
                    return Err(CatError::AmbientMismatch(format!(
                        "{} and {}",
                        kc.category.name(),
                        t.name()
                    ))
                    .into());
                }
                r = r.input("class", k.as_str());
                let lifts = lifts_r_maps(u, &kc.class);
                if let Decision::Fails(m) = &lifts {
                    r.verdict = Verdict::No;
                    r.witness(json!({ "unlifted": mor(t, *m) }));
                }
                r = r.with_data(json!({ "lifts": lifts.holds() }));
            }
            r
        }
        Command::Glide {
            left,
            right,
            objects,
        } => {
            let (l, rc) = class_pair(w, left, right)?;
            let c = &l.category;
            let os = object_list(c, objects)?;
            let mut r = Report::new(name, Verdict::Yes)
                .input("left", left.as_str())
                .input("right", right.as_str())
                .input("objects", objects.as_str());
            match gliding_inclusion(c, &l.class, &rc.class, &os) {
                Ok(g) => {
                    let (sub, t) = (&g.subcategory, c);
                    if let Decision::Fails(x) = &g.stable {
                        r.verdict = Verdict::No;
                        r.witness(json!({
                            "not_stable": { "base": obj(t, x.base), "apex": obj(sub, x.apex), "arrow": mor(t, x.arrow) }
                        }));
                    }
                    if let Decision::Fails(x) = &g.relff {
                        r.verdict = Verdict::No;
                        r.witness(json!({
                            "not_relff": { "u1": mor(sub, x.u1), "u2": mor(sub, x.u2), "f": mor(t, x.f), "preimages": x.preimages }
                        }));
                    }
                    r.with_data(json!({
                        "stable": g.stable.holds(),
                        "relff": g.relff.holds(),
                        "subcategory": describe_category(sub),
                    }))
                }
                Err(CatError::GlidingViolation(m)) => {
                    r.verdict = Verdict::No;
                    r.witness(json!({ "gliding_violation": m }));
                    r
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::FamilyHom {
            category: cn,
            source,
            target,
        } => {
            let c = category(w, cn)?;
            let f = FinFamily::new(c, object_list(c, source)?);
            let g = FinFamily::new(c, object_list(c, target)?);
            let hs = family_hom(&f, &g, limits)?;
            let mut r = Report::new(name, Verdict::Computed)
                .input("category", cn.as_str())
                .input("source", source.as_str())
                .input("target", target.as_str());
            r.line(format!("{} morphisms", hs.len()));
            let rows: Vec<Value> = hs
                .iter()
                .map(|m| json!({ "reindex": m.reindex, "components": mors(c, m.components.iter().copied()) }))
                .collect();
            r.with_data(json!({ "count": hs.len(), "morphisms": rows }))
        }
        Command::PiAdjunction {
            functor: fname,
            family_bound,
        } => {
            let u = functor(w, fname)?;
            let (s, t) = (u.source(), u.target());
            let mut r = Report::new(name, Verdict::Yes)
                .input("functor", fname.as_str())
                .input("family_bound", *family_bound);
            match relative_left_adjoint(u) {
                Ok(la) => {
                    let rep = verify_pi_adjunction(u, *family_bound, limits)?;
                    if !rep.holds() {
                        r.verdict = Verdict::No;
                        for v in &rep.violations {
                            r.witness(Value::from(v.as_str()));
                        }
                    }
                    let left: Vec<Value> = t
                        .objects()
                        .map(|b| {
                            let fam = la.on_object(b);
                            r.line(format!("L({}) = ({})", t.obj_name(b), fam.names().join(", ")));
                            json!({
                                "object": obj(t, b),
                                "family": fam.index.iter().zip(&fam.assignment)
                                    .map(|(i, &a)| json!({ "unit": i, "apex": obj(s, a) })).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    r.with_data(json!({
                        "left_adjoint": left,
                        "cardinality_pairs": rep.cardinality_pairs,
                        "bijections": rep.bijections,
                        "naturality_squares": rep.naturality_squares,
                    }))
                }
                Err(CatError::NotMultiAdjoint(why)) => {
                    r.verdict = Verdict::No;
                    r.witness(json!({ "not_multi_adjoint": why }));
                    r
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Multilimit { diagram: dn } | Command::Multicolimit { diagram: dn } => {
            let d = diagram(w, dn)?;
            let c = d.ambient();
            let spec = DiagramSpec::of_functor(&d.functor);
            let co = matches!(cmd, Command::Multicolimit { .. });
            let mut r = Report::new(name, Verdict::Computed).input("diagram", dn.as_str());
            let (found, cones) = if co {
                (
                    multicolimit(c, &spec, limits),
                    cocone_category(c, &spec, limits)?,
                )
            } else {
                (
                    multilimit(c, &spec, limits),
                    cone_category(c, &spec, limits)?,
                )
            };
            let cone_count = cones.cones.len();
            match found {
                Ok(fam) => {
                    for k in &fam.members {
                        r.line(format!(
                            "{} [{}]",
                            c.obj_name(k.apex),
                            c.names(&k.legs).join(", ")
                        ));
                    }
                    let mut data = json!({ "members": family_json(c, &fam), "cones": cone_count });
                    if co {
                        let hf = verify_multicolimit_hom_formula(c, &spec, &fam);
                        if !hf.holds() {
                            r.verdict = Verdict::No;
                        }
                        data["hom_formula"] = Value::Array(
                            hf.rows
                                .iter()
                                .map(|x| json!({ "object": obj(c, x.object), "cocones": x.cocones, "through_members": x.through_members }))
                                .collect(),
                        );
                    }
                    r.with_data(data)
                }
                Err(CatError::Absent(component)) => {
                    r.verdict = Verdict::No;
                    r.witness(json!({ "component_without_universal_member": component }));
                    r.with_data(json!({ "cones": cone_count }))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Preserve {
            functor: fname,
            diagram: dn,
        } => {
            let u = functor(w, fname)?;
            let d = diagram(w, dn)?;
            if d.ambient() != u.source() {
                return Err(CatError::AmbientMismatch(format!(
                    "{} and {}",
                    d.ambient().name(),
                    u.source().name()
                ))
                .into());
            }
            let (s, t) = (u.source(), u.target());
            let spec = DiagramSpec::of_functor(&d.functor);
            let mut r = Report::new(name, Verdict::Yes)
                .input("functor", fname.as_str())
                .input("diagram", dn.as_str());
            match preserves_multilimits(u, &spec, limits) {
                Ok(rep) => {
                    if !rep.holds() {
                        r.verdict = Verdict::No;
                    }
                    let rows: Vec<Value> = rep
                        .rows
                        .iter()
                        .map(|x| {
                            let v = json!({
                                "target_member": cone_json(t, &x.target_member),
                                "sources": x.sources.iter().map(|&(i, m)| json!({ "member": i, "via": mor(t, m) })).collect::<Vec<_>>(),
                                "is_coproduct": x.is_coproduct,
                            });
                            if !x.is_coproduct {
                                r.witness(v.clone());
                            }
                            v
                        })
                        .collect();
                    r.with_data(json!({
                        "source": family_json(s, &rep.source),
                        "target": family_json(t, &rep.target),
                        "rows": rows,
                        "vacuous": rep.is_vacuous(),
                    }))
                }
                Err(CatError::Absent(component)) => {
                    r.verdict = Verdict::Computed;
                    r.skipped.push(json!({ "multilimit_absent": component }));
                    r
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Mreflect {
            functor: fname,
            diagram: dn,
        } => {
            let u = functor(w, fname)?;
            let d = diagram(w, dn)?;
            if d.ambient() != u.source() {
                return Err(CatError::AmbientMismatch(format!(
                    "{} and {}",
                    d.ambient().name(),
                    u.source().name()
                ))
                .into());
            }
            let s = u.source();
            let spec = DiagramSpec::of_functor(&d.functor);
            let fam = multireflective_multicolimit(u, &spec)?;
            let direct = multicolimit(s, &spec, limits);
            let agrees = match &direct {
                Ok(x) => same_cocones_up_to_iso(s, &fam.members, &x.members),
                Err(_) => false,
            };
            let mut r = Report::new(name, if agrees { Verdict::Yes } else { Verdict::No })
                .input("functor", fname.as_str())
                .input("diagram", dn.as_str());
            for k in &fam.members {
                r.line(format!(
                    "{} [{}]",
                    s.obj_name(k.apex),
                    s.names(&k.legs).join(", ")
                ));
            }
            if !agrees {
                r.witness(json!({ "direct_search": direct.as_ref().map(|x| family_json(s, x)).unwrap_or(Value::Null) }));
            }
            let connected = if spec.is_connected() {
                match connected_limit_via_units(u, &spec) {
                    Ok(k) => cone_json(s, &k),
                    Err(e) => {
                        r.skipped.push(json!({ "connected_limit": e.to_string() }));
                        Value::Null
                    }
                }
            } else {
                Value::Null
            };
            r.with_data(json!({ "members": family_json(s, &fam), "connected_limit": connected }))
        }
        Command::GammaLocal { gamma: gn, strong } => {
            let g = gamma(w, gn)?;
            let c = &g.category;
            let local: Vec<Obj> = c
                .objects()
                .filter(|&a| {
                    if *strong {
                        is_strongly_gamma_local(c, &g.gamma, a)
                    } else {
                        is_gamma_local(c, &g.gamma, a)
                    }
                })
                .collect();
            let morphisms = mors(c, gamma_local_morphisms(c, &g.gamma).iter());
            let mut r = Report::new(name, Verdict::Computed)
                .input("gamma", gn.as_str())
                .input("strong", *strong);
            let lo = objs(c, local);
            r.line(format!("local objects: {{{}}}", list(&lo)));
            r.line(format!("local morphisms: {{{}}}", list(&morphisms)));
            r.with_data(json!({ "objects": lo, "morphisms": morphisms }))
        }
        Command::BGamma { gamma: gn, strong } => {
            let g = gamma(w, gn)?;
            let (sub, inc) = build_b_gamma(&g.category, &g.gamma, *strong)?;
            let mut r = Report::new(name, Verdict::Computed)
                .input("gamma", gn.as_str())
                .input("strong", *strong);
            let mut ws = Workspace::default();
            ws.categories.push(sub.clone());
            r.line(ws.print().trim_end());
            r.with_data(json!({
                "subcategory": describe_category(&sub),
                "inclusion": sub.morphisms().map(|m| json!({ "from": mor(&sub, m), "to": mor(&g.category, inc.on_mor(m)) })).collect::<Vec<_>>(),
            }))
        }
        Command::GammaVerify { gamma: gn, strong } => {
            let g = gamma(w, gn)?;
            let c = &g.category;
            let rep = gamma_report(c, &g.gamma, *strong, true, limits)?;
            let mut r = Report::new(
                name,
                if rep.holds() {
                    Verdict::Yes
                } else {
                    Verdict::No
                },
            )
            .input("gamma", gn.as_str())
            .input("strong", *strong);
            for f in rep.failures() {
                r.witness(Value::from(f));
            }
            let diers = rep.diers.as_ref().map(|d| {
                if d.skipped_obligations > 0 {
                    r.skipped
                        .push(json!({ "saturation_obligations": d.skipped_obligations }));
                }
                json!({ "outside": mors(c, d.outside.iter().copied()), "holds": d.holds() })
            });
            r.with_data(json!({
                "local_objects": objs(&rep.subcategory, rep.subcategory.objects()),
                "relff": rep.relff.holds(),
                "stable": rep.stable.holds(),
                "multi_adjoint": rep.multi_adjoint.holds(),
                "gliding": rep.gliding.holds(),
                "diers": diers,
            }))
        }
        Command::ClassifyLr { left, right } => {
            let (l, rc) = class_pair(w, left, right)?;
            let c = &l.category;
            let cls = classify_lr(c, &l.class, &rc.class)?;
            let mut r = Report::new(name, Verdict::Computed)
                .input("left", left.as_str())
                .input("right", right.as_str());
            for v in remark_violations(c, &l.class, &rc.class, &cls) {
                r.verdict = Verdict::No;
                r.witness(Value::from(v));
            }
            let (lo, ro) = (
                objs(c, cls.l_objects.iter().copied()),
                objs(c, cls.r_objects.iter().copied()),
            );
            r.line(format!("terminal: {}", c.obj_name(cls.terminal)));
            r.line(format!("L-objects: {{{}}}", list(&lo)));
            r.line(format!("R-objects: {{{}}}", list(&ro)));
            let refl: Vec<Value> = c
                .objects()
                .map(|x| {
                    let f = cls.reflection(x);
                    r.line(format!(
                        "{} -> {} via {} then {}",
                        c.obj_name(x),
                        c.obj_name(f.apex),
                        c.mor_name(f.left),
                        c.mor_name(f.right)
                    ));
                    json!({ "object": obj(c, x), "apex": obj(c, f.apex), "unit": mor(c, f.left), "to_terminal": mor(c, f.right) })
                })
                .collect();
            r.with_data(json!({
                "terminal": obj(c, cls.terminal),
                "l_objects": lo,
                "r_objects": ro,
                "reflections": refl,
            }))
        }
        Command::Reflect {
            left,
            right,
            object,
        } => {
            let (l, rc) = class_pair(w, left, right)?;
            let c = &l.category;
            let cls = classify_lr(c, &l.class, &rc.class)?;
            let a = c.object(object)?;
            let rep = reflection_universal(c, &rc.class, &cls, a);
            let mut r = Report::new(
                name,
                if rep.holds() {
                    Verdict::Yes
                } else {
                    Verdict::No
                },
            )
            .input("left", left.as_str())
            .input("right", right.as_str())
            .input("object", object.as_str());
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|x| {
                    let v = json!({ "arrow": mor(c, x.arrow), "mediators": mors(c, x.mediators.iter().copied()) });
                    if x.mediators.len() != 1 {
                        r.witness(v.clone());
                    }
                    v
                })
                .collect();
            r.line(format!("unit: {}", c.mor_name(rep.unit)));
            r.with_data(json!({ "unit": mor(c, rep.unit), "rows": rows }))
        }
        Command::Stalks { class: k, mor: m } => {
            let k = class(w, k)?;
            let c = &k.category;
            let rep = stalkwise_classify(c, c.morphism(m)?, &k.class)?;
            let verdict = if rep.is_stalkwise() {
                Verdict::Yes
            } else if !rep.no_counterexample() {
                Verdict::No
            } else {
                Verdict::Computed
            };
            let mut r = Report::new(name, verdict)
                .input("class", k.name.as_str())
                .input("mor", m.as_str());
            let rows: Vec<Value> = rep
                .stalks
                .iter()
                .map(|x| {
                    let v = json!({
                        "point": mor(c, x.point),
                        "fiber": x.fiber.map(|f| mor(c, f)),
                        "in_class": x.in_class,
                    });
                    match x.in_class {
                        None => r.skipped.push(json!({ "no_pullback_at": mor(c, x.point) })),
                        Some(false) => r.witness(v.clone()),
                        Some(true) => {}
                    }
                    v
                })
                .collect();
            r.with_data(json!({ "stalks": rows }))
        }
        Command::Forms {
            lprime,
            right,
            object,
        } => {
            let (lp, rc) = class_pair(w, lprime, right)?;
            let c = &lp.category;
            let fs = lprime_forms(c, &lp.class, &rc.class, c.object(object)?)?;
            let v = mors(c, fs);
            let mut r = Report::new(name, Verdict::Computed)
                .input("lprime", lprime.as_str())
                .input("right", right.as_str())
                .input("object", object.as_str());
            r.line(format!("forms: {{{}}}", list(&v)));
            r.with_data(json!({ "forms": v }))
        }
        Command::Costable { left, lprime, base } => {
            let (l, lp) = class_pair(w, left, lprime)?;
            let c = &l.category;
            let b = c.object(base)?;
            let mut r = Report::new(name, Verdict::Yes)
                .input("left", left.as_str())
                .input("lprime", lprime.as_str())
                .input("base", base.as_str());
            match costable_inclusion_check(c, &l.class, &lp.class, b, limits) {
                Ok(rep) => {
                    if !rep.holds() {
                        r.verdict = Verdict::No;
                    }
                    r.with_data(json!({
                        "stable": rep.stable.holds(),
                        "relff": rep.relff.holds(),
                        "subcategory": describe_category(&rep.category),
                    }))
                }
                Err(CatError::CancellationFails(why)) => {
                    r.verdict = Verdict::No;
                    r.witness(json!({ "cancellation_fails": why }));
                    r
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Corpus(a) => {
            let config = CorpusConfig {
                max_obj: a.max_obj,
                max_mor: a.max_mor,
                family_bound: a.family_bound,
                gamma_cones: a.gamma_cones,
                limits: *limits,
            };
            let rep = run_corpus(&config)?;
            let mut r = Report::new(
                name,
                if rep.holds() {
                    Verdict::Yes
                } else {
                    Verdict::No
                },
            )
            .input("max_obj", a.max_obj)
            .input("max_mor", a.max_mor)
            .input("family_bound", a.family_bound)
            .input("gamma_cones", a.gamma_cones);
            r.line(format!(
                "{} categories, {} functors, {} local right adjoints",
                rep.categories, rep.functors, rep.local_right_adjoints
            ));
            let rows: Vec<Value> = rep
                .criteria
                .iter()
                .map(|x| {
                    r.line(format!(
                        "[{}] {}: {} checked, {} violations",
                        x.id, x.title, x.checked, x.violations
                    ));
                    if let Some(wit) = &x.witness {
                        r.witness(json!({ "criterion": x.id, "first": wit }));
                    }
                    json!({
                        "id": x.id, "title": x.title, "checked": x.checked, "skipped": x.skipped,
                        "violations": x.violations, "seconds": x.seconds,
                    })
                })
                .collect();
            r.with_data(json!({
                "categories": rep.categories,
                "functors": rep.functors,
                "local_right_adjoints": rep.local_right_adjoints,
                "full_multireflective": rep.full_multireflective,
                "criteria": rows,
                "seconds": rep.seconds,
            }))
        }
    };
    Ok(report)
}
