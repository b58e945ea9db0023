//! Left and right objects for a factorization system on a category with a
//! terminal object: classification, right reflection, right cancellation of
//! a subclass of the left class, fibers over points, forms, and co-stable
//! inclusions.

use std::sync::Arc;

use crate::cones::{limit, Cone, DiagramSpec};
use crate::connectivity::terminal_objects;
use crate::error::{CatError, Result};
use crate::fincat::{slice, subcategory, FinCategory, FinFunctor, Limits, Mor, Obj};
use crate::orthogonality::{
    factor_via_classes, is_relatively_full_faithful, is_stable, validate_factorization_system,
    Factorization, MorphismClass, RelffWitness, Unfactored,
};
use crate::Decision;

/// The least terminal object.
pub fn terminal_object(c: &FinCategory) -> Result<Obj> {
    terminal_objects(c)
        .first()
        .copied()
        .ok_or(CatError::NoTerminal)
}

/// The unique arrow `x → 1`.
pub fn terminal_map(c: &FinCategory, one: Obj, x: Obj) -> Mor {
    c.hom(x, one)[0]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrClassification {
    pub terminal: Obj,
    pub l_objects: Vec<Obj>,
    pub r_objects: Vec<Obj>,
    /// Per object, the factorization of its terminal map. Its right part
    /// is the right reflection.
    pub reflections: Vec<Factorization>,
}

impl LrClassification {
    pub fn is_l_object(&self, x: Obj) -> bool {
        self.l_objects.contains(&x)
    }

    pub fn is_r_object(&self, x: Obj) -> bool {
        self.r_objects.contains(&x)
    }

    pub fn reflection(&self, x: Obj) -> &Factorization {
        &self.reflections[x.idx()]
    }
}

fn require_system(c: &FinCategory, l: &MorphismClass, r: &MorphismClass) -> Result<()> {
    let report = validate_factorization_system(c, l, r);
    match report.failures.first() {
        Some(first) => Err(CatError::NotAFactorizationSystem(format!(
            "{} ({})",
            first.axiom,
            c.names(&first.witness).join(", ")
        ))),
        None => Ok(()),
    }
}

/// Classifies every object by its terminal map and factors each terminal
/// map. Also checks that the objects both left and right are exactly those
/// isomorphic to the terminal object, and that the reflection of a left
/// object is terminal.
pub fn classify_lr(
    c: &FinCategory,
    l: &MorphismClass,
    r: &MorphismClass,
) -> Result<LrClassification> {
    let one = terminal_object(c)?;
    require_system(c, l, r)?;
    let mut out = LrClassification {
        terminal: one,
        l_objects: Vec::new(),
        r_objects: Vec::new(),
        reflections: Vec::new(),
    };
    for x in c.objects() {
        let t = terminal_map(c, one, x);
        if l.contains(t) {
            out.l_objects.push(x);
        }
        if r.contains(t) {
            out.r_objects.push(x);
        }
        let f = factor_via_classes(c, t, l, r)
            .into_iter()
            .next()
            .ok_or_else(|| {
                CatError::InternalInconsistency(format!(
                    "terminal map of {} has no factorization",
                    c.obj_name(x)
                ))
            })?;
        out.reflections.push(f);
    }
    for x in c.objects() {
        let both = out.is_l_object(x) && out.is_r_object(x);
        if both != c.iso_between(x, one).is_some() {
            return Err(CatError::InternalInconsistency(format!(
                "{} is left and right but not terminal",
                c.obj_name(x)
            )));
        }
        if out.is_l_object(x) && c.iso_between(out.reflection(x).apex, one).is_none() {
            return Err(CatError::InternalInconsistency(format!(
                "right reflection of the left object {} is not terminal",
                c.obj_name(x)
            )));
        }
    }
    Ok(out)
}

/// One arrow `f : A → R` into a right object with its mediating arrows out
/// of the reflection apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionRow {
    pub arrow: Mor,
    pub mediators: Vec<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionReport {
    pub object: Obj,
    pub unit: Mor,
    pub rows: Vec<ReflectionRow>,
}

impl ReflectionReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.mediators.len() == 1)
    }
}

/// Every `f : A → R` with `R` a right object factors through the left part
/// of the reflection by exactly one right-class arrow.
pub fn reflection_universal(
    c: &FinCategory,
    r: &MorphismClass,
    cls: &LrClassification,
    a: Obj,
) -> ReflectionReport {
    let refl = cls.reflection(a);
    let rows = cls
        .r_objects
        .iter()
        .flat_map(|&target| c.hom(a, target).iter().copied())
        .map(|f| ReflectionRow {
            arrow: f,
            mediators: c
                .hom(refl.apex, c.cod(f))
                .iter()
                .copied()
                .filter(|&m| r.contains(m) && c.comp(m, refl.left) == f)
                .collect(),
        })
        .collect();
    ReflectionReport {
        object: a,
        unit: refl.left,
        rows,
    }
}

/// A triangle `f ∘ l = l'` with `l` in the left class and `l'` in the
/// subclass but `f` outside the subclass.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CancellationWitness {
    pub l: Mor,
    pub l_prime: Mor,
    pub f: Mor,
}

pub fn check_right_l_cancellation(
    c: &FinCategory,
    l: &MorphismClass,
    l_prime: &MorphismClass,
) -> Result<Decision<CancellationWitness>> {
    if let Some(bad) = l_prime.iter().find(|&m| !l.contains(m)) {
        return Err(CatError::NotASubclass(c.mor_name(bad).to_string()));
    }
    for lm in l.iter() {
        for lp in c.out_of(c.dom(lm)).filter(|&m| l_prime.contains(m)) {
            for &f in c.hom(c.cod(lm), c.cod(lp)) {
                if c.comp(f, lm) == lp && !l_prime.contains(f) {
                    return Ok(Decision::Fails(CancellationWitness {
                        l: lm,
                        l_prime: lp,
                        f,
                    }));
                }
            }
        }
    }
    Ok(Decision::Holds)
}

/// Limit of the cospan `f : X → Z ← Y : g`, legs `[to X, to Y, to Z]`.
pub fn pullback(c: &FinCategory, f: Mor, g: Mor) -> Result<Cone> {
    if c.cod(f) != c.cod(g) {
        return Err(CatError::NotComposable {
            g: c.mor_name(f).to_string(),
            f: c.mor_name(g).to_string(),
        });
    }
    let d = DiagramSpec {
        nodes: vec![c.dom(f), c.dom(g), c.cod(f)],
        edges: vec![(0, 2, f), (1, 2, g)],
    };
    limit(c, &d).ok_or_else(|| CatError::Absent(c.names(&[f, g])))
}

/// The fiber of `f` over one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stalk {
    pub point: Mor,
    /// `p*f : P → 1`, when the pullback exists.
    pub fiber: Option<Mor>,
    pub in_class: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StalkReport {
    pub arrow: Mor,
    pub stalks: Vec<Stalk>,
}

impl StalkReport {
    /// Points whose fiber could not be formed.
    pub fn missing(&self) -> Vec<Mor> {
        self.stalks
            .iter()
            .filter(|s| s.fiber.is_none())
            .map(|s| s.point)
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.stalks.iter().all(|s| s.fiber.is_some())
    }

    /// Every fiber exists and lies in the class.
    pub fn is_stalkwise(&self) -> bool {
        self.stalks.iter().all(|s| s.in_class == Some(true))
    }

    /// No formed fiber lies outside the class.
    pub fn no_counterexample(&self) -> bool {
        self.stalks.iter().all(|s| s.in_class != Some(false))
    }
}

/// Pulls `f` back along every point `1 → cod f` and classifies each fiber
/// projection to the terminal object.
pub fn stalkwise_classify(c: &FinCategory, f: Mor, class: &MorphismClass) -> Result<StalkReport> {
    let one = terminal_object(c)?;
    let stalks = c
        .hom(one, c.cod(f))
        .iter()
        .map(|&p| match pullback(c, f, p) {
            Ok(cone) => Stalk {
                point: p,
                fiber: Some(cone.legs[1]),
                in_class: Some(class.contains(cone.legs[1])),
            },
            Err(_) => Stalk {
                point: p,
                fiber: None,
                in_class: None,
            },
        })
        .collect();
    Ok(StalkReport { arrow: f, stalks })
}

/// Right-class arrows into `x` whose domain has its terminal map in `l_prime`.
pub fn lprime_forms(
    c: &FinCategory,
    l_prime: &MorphismClass,
    r: &MorphismClass,
    x: Obj,
) -> Result<Vec<Mor>> {
    let one = terminal_object(c)?;
    Ok(c.into_obj(x)
        .filter(|&m| r.contains(m) && l_prime.contains(terminal_map(c, one, c.dom(m))))
        .collect())
}

/// The category of `l_prime`-arrows into a base with left-class triangles
/// between them, and the verdicts on the opposite of its inclusion into the
/// opposite slice.
#[derive(Clone, Debug)]
pub struct CostableReport {
    pub base: Obj,
    pub category: Arc<FinCategory>,
    pub inclusion: FinFunctor,
    pub stable: Decision<Unfactored>,
    pub relff: Decision<RelffWitness>,
}

impl CostableReport {
    pub fn holds(&self) -> bool {
        self.stable.holds()
    }
}

pub fn costable_inclusion_check(
    c: &Arc<FinCategory>,
    l: &MorphismClass,
    l_prime: &MorphismClass,
    base: Obj,
    limits: &Limits,
) -> Result<CostableReport> {
    if let Decision::Fails(w) = check_right_l_cancellation(c, l, l_prime)? {
        return Err(CatError::CancellationFails(format!(
            "{} . {} = {}",
            c.mor_name(w.f),
            c.mor_name(w.l),
            c.mor_name(w.l_prime)
        )));
    }
    let (sl, proj) = slice(c, base, limits)?;
    let keep_obj: Vec<bool> = sl
        .objects()
        .map(|o| l_prime.contains(c.morphism(sl.obj_name(o)).unwrap_or(Mor(u32::MAX))))
        .collect();
    let keep_mor: Vec<bool> = sl.morphisms().map(|m| l.contains(proj.on_mor(m))).collect();
    let name = format!("LObj[{}]", c.obj_name(base));
    let (sub, inclusion) = subcategory(&sl, &name, &keep_obj, &keep_mor)?;
    let op = inclusion.opposite();
    Ok(CostableReport {
        base,
        stable: is_stable(&op),
        relff: is_relatively_full_faithful(&op),
        category: sub,
        inclusion,
    })
}

/// Checks on a classification: points of right objects are right maps,
/// left maps out of left objects land in left objects, and the gliding of
/// both object classes along right and left maps over the terminal object.
/// Returns a description of each violation.
pub fn remark_violations(
    c: &FinCategory,
    l: &MorphismClass,
    r: &MorphismClass,
    cls: &LrClassification,
) -> Vec<String> {
    let one = cls.terminal;
    let mut out = Vec::new();
    for &x in &cls.r_objects {
        for &p in c.hom(one, x) {
            if !r.contains(p) {
                out.push(format!(
                    "point {} of a right object is not a right map",
                    c.mor_name(p)
                ));
            }
        }
    }
    for &x in &cls.l_objects {
        for m in c.out_of(x).filter(|&m| l.contains(m)) {
            if !cls.is_l_object(c.cod(m)) {
                out.push(format!(
                    "left map {} leaves the left objects",
                    c.mor_name(m)
                ));
            }
        }
    }
    for m in r.iter() {
        if cls.is_r_object(c.cod(m)) && !cls.is_r_object(c.dom(m)) {
            out.push(format!(
                "right map {} into a right object from a non-right object",
                c.mor_name(m)
            ));
        }
    }
    for x in c.objects() {
        if cls.is_l_object(x) && c.iso_between(cls.reflection(x).apex, one).is_none() {
            out.push(format!(
                "reflection of left object {} is not terminal",
                c.obj_name(x)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;

    fn chain_classes(c: &FinCategory) -> (MorphismClass, MorphismClass) {
        let (a, b) = (c.morphism("a").unwrap(), c.morphism("b").unwrap());
        let ids = MorphismClass::identities(c);
        (
            ids.union(&MorphismClass::new(c, [a])),
            ids.union(&MorphismClass::new(c, [b])),
        )
    }

    #[test]
    fn terminals() {
        assert_eq!(terminal_object(&chain3()), Ok(Obj(2)));
        assert_eq!(terminal_object(&d2()), Err(CatError::NoTerminal));
        assert_eq!(terminal_object(&one()), Ok(Obj(0)));
    }

    #[test]
    fn chain_classification() {
        let c = chain3();
        let (l, r) = chain_classes(&c);
        let cls = classify_lr(&c, &l, &r).unwrap();
        assert_eq!(cls.r_objects, vec![Obj(1), Obj(2)]);
        assert_eq!(cls.l_objects, vec![Obj(2)]);
        let f = cls.reflection(Obj(0));
        assert_eq!(
            (f.left, f.apex, f.right),
            (c.morphism("a").unwrap(), Obj(1), c.morphism("b").unwrap())
        );
        assert!(remark_violations(&c, &l, &r, &cls).is_empty());

        let cls = classify_lr(&c, &MorphismClass::isos(&c), &MorphismClass::all(&c)).unwrap();
        assert_eq!(cls.r_objects.len(), 3);
        assert_eq!(cls.l_objects, vec![Obj(2)]);
    }

    #[test]
    fn reflection_is_universal() {
        let c = chain3();
        let (l, r) = chain_classes(&c);
        let cls = classify_lr(&c, &l, &r).unwrap();
        let rep = reflection_universal(&c, &r, &cls, Obj(0));
        assert!(rep.holds());
        let row = rep
            .rows
            .iter()
            .find(|x| x.arrow == c.morphism("c").unwrap())
            .unwrap();
        assert_eq!(row.mediators, vec![c.morphism("b").unwrap()]);
        let rep = reflection_universal(&c, &r, &cls, Obj(1));
        assert_eq!(rep.unit, c.id(Obj(1)));
        assert!(rep.holds());
    }

    #[test]
    fn cancellation() {
        let c = chain3();
        let (l, _) = chain_classes(&c);
        let ids = MorphismClass::identities(&c);
        assert!(check_right_l_cancellation(&c, &l, &ids).unwrap().holds());
        assert!(check_right_l_cancellation(&c, &l, &l).unwrap().holds());
        let b = MorphismClass::new(&c, [c.morphism("b").unwrap()]);
        assert!(matches!(
            check_right_l_cancellation(&c, &l, &b),
            Err(CatError::NotASubclass(_))
        ));
        // {ids, c} inside all: c = b . a with a in all forces b into the subclass
        let all = MorphismClass::all(&c);
        let sub = ids.union(&MorphismClass::new(&c, [c.morphism("c").unwrap()]));
        let w = check_right_l_cancellation(&c, &all, &sub).unwrap();
        assert_eq!(w.witness().map(|w| c.mor_name(w.f)), Some("b"));
    }

    #[test]
    fn pullbacks_and_stalks() {
        let c = chain3();
        let (a, b) = (c.morphism("a").unwrap(), c.morphism("b").unwrap());
        let p = pullback(&c, b, c.id(Obj(2))).unwrap();
        assert_eq!(p.apex, Obj(1));
        let p = pullback(&c, c.morphism("c").unwrap(), b).unwrap();
        assert_eq!(p.apex, Obj(0));
        assert!(matches!(
            pullback(&c, a, b),
            Err(CatError::NotComposable { .. })
        ));
        let v = cospan();
        let (p, q) = (v.morphism("p").unwrap(), v.morphism("q").unwrap());
        assert!(matches!(pullback(&v, p, q), Err(CatError::Absent(_))));

        let (l, _) = chain_classes(&c);
        let rep = stalkwise_classify(&c, b, &l).unwrap();
        assert_eq!(rep.stalks.len(), 1);
        assert_eq!(rep.stalks[0].fiber, Some(b));
        assert!(!rep.is_stalkwise());
        let rep = stalkwise_classify(&c, c.id(Obj(1)), &MorphismClass::all(&c)).unwrap();
        assert!(rep.stalks.is_empty());
    }

    #[test]
    fn forms() {
        let c = chain3();
        let (l, r) = chain_classes(&c);
        assert_eq!(
            lprime_forms(&c, &l, &r, Obj(2)).unwrap(),
            vec![c.id(Obj(2))]
        );
        assert_eq!(lprime_forms(&c, &l, &r, Obj(0)).unwrap(), Vec::<Mor>::new());
    }

    #[test]
    fn costable() {
        let lim = Limits::default();
        let c = chain3();
        let (l, _) = chain_classes(&c);
        let rep = costable_inclusion_check(&c, &l, &l, Obj(2), &lim).unwrap();
        assert!(rep.holds());
        let all = MorphismClass::all(&c);
        let sub = MorphismClass::identities(&c)
            .union(&MorphismClass::new(&c, [c.morphism("c").unwrap()]));
        assert!(matches!(
            costable_inclusion_check(&c, &all, &sub, Obj(2), &lim),
            Err(CatError::CancellationFails(_))
        ));
    }
}
