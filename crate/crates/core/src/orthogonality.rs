//! Lifting problems, candidates and diagonally universal morphisms, stable
//! factorizations, factorization systems, finite saturation, relative
//! full-faithfulness, lifting of right-class maps and gliding inclusions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::{smallvec, SmallVec};

use crate::cones::{colimit_in_opposite, pushout_in_opposite, Cone, DiagramSpec};
use crate::error::{CatError, Result};
use crate::fincat::{opposite, subcategory, FinCategory, FinFunctor, Limits, Mor, Obj};
use crate::multiadjoint::local_units;
use crate::Decision;

/// A set of morphisms of one category, stored as a membership mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismClass {
    mask: Vec<bool>,
}

impl MorphismClass {
    pub fn new(c: &FinCategory, members: impl IntoIterator<Item = Mor>) -> MorphismClass {
        let mut mask = vec![false; c.morphism_count()];
        for m in members {
            mask[m.idx()] = true;
        }
        MorphismClass { mask }
    }

    pub fn from_mask(mask: Vec<bool>) -> MorphismClass {
        MorphismClass { mask }
    }

    pub fn empty(c: &FinCategory) -> MorphismClass {
        MorphismClass::new(c, [])
    }

    pub fn all(c: &FinCategory) -> MorphismClass {
        MorphismClass::new(c, c.morphisms())
    }

    pub fn isos(c: &FinCategory) -> MorphismClass {
        MorphismClass::new(c, c.morphisms().filter(|&m| c.is_iso(m)))
    }

    pub fn identities(c: &FinCategory) -> MorphismClass {
        MorphismClass::new(c, c.objects().map(|o| c.id(o)))
    }

    pub fn contains(&self, m: Mor) -> bool {
        self.mask[m.idx()]
    }

    pub fn insert(&mut self, m: Mor) -> bool {
        !std::mem::replace(&mut self.mask[m.idx()], true)
    }

    /// Members in declaration order.
    pub fn members(&self) -> Vec<Mor> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Mor> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Mor(i as u32))
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn union(&self, other: &MorphismClass) -> MorphismClass {
        MorphismClass {
            mask: self
                .mask
                .iter()
                .zip(&other.mask)
                .map(|(&a, &b)| a || b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &MorphismClass) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

/// The diagonal fillers of one commuting square `r∘top = bottom∘l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub l: Mor,
    pub r: Mor,
    pub top: Mor,
    pub bottom: Mor,
    pub fillers: Vec<Mor>,
}

fn fillers(
    c: &FinCategory,
    l: Mor,
    r: Mor,
    top: Mor,
    bottom: Mor,
) -> impl Iterator<Item = Mor> + '_ {
    c.hom(c.cod(l), c.dom(r))
        .iter()
        .copied()
        .filter(move |&d| c.comp(d, l) == top && c.comp(r, d) == bottom)
}

pub fn lift(c: &FinCategory, l: Mor, r: Mor, top: Mor, bottom: Mor) -> Result<LiftReport> {
    let square = c.dom(top) == c.dom(l)
        && c.cod(top) == c.dom(r)
        && c.dom(bottom) == c.cod(l)
        && c.cod(bottom) == c.cod(r)
        && c.comp(r, top) == c.comp(bottom, l);
    if !square {
        return Err(CatError::NotASquare);
    }
    Ok(LiftReport {
        l,
        r,
        top,
        bottom,
        fillers: fillers(c, l, r, top, bottom).collect(),
    })
}

/// The first commuting square of `l` against `r` without exactly one filler,
/// as `(top, bottom, number of fillers)`.
pub fn orthogonality_witness(c: &FinCategory, l: Mor, r: Mor) -> Option<(Mor, Mor, usize)> {
    for &top in c.hom(c.dom(l), c.dom(r)) {
        for &bottom in c.hom(c.cod(l), c.cod(r)) {
            if c.comp(r, top) == c.comp(bottom, l) {
                let n = fillers(c, l, r, top, bottom).take(2).count();
                if n != 1 {
                    return Some((top, bottom, n));
                }
            }
        }
    }
    None
}

pub fn is_orthogonal(c: &FinCategory, l: Mor, r: Mor) -> bool {
    orthogonality_witness(c, l, r).is_none()
}

/// The relation `l ⊥ r` tabulated for every pair of morphisms.
#[derive(Clone, Debug)]
pub struct Orthogonality {
    n: usize,
    rel: Vec<bool>,
}

impl Orthogonality {
    pub fn new(c: &FinCategory) -> Orthogonality {
        let n = c.morphism_count();
        let mut rel = vec![false; n * n];
        for l in c.morphisms() {
            for r in c.morphisms() {
                rel[l.idx() * n + r.idx()] = is_orthogonal(c, l, r);
            }
        }
        Orthogonality { n, rel }
    }

    pub fn holds(&self, l: Mor, r: Mor) -> bool {
        self.rel[l.idx() * self.n + r.idx()]
    }

    pub fn right_of(&self, class: &MorphismClass) -> MorphismClass {
        MorphismClass::from_mask(
            (0..self.n)
                .map(|r| class.iter().all(|l| self.holds(l, Mor(r as u32))))
                .collect(),
        )
    }

    pub fn left_of(&self, class: &MorphismClass) -> MorphismClass {
        MorphismClass::from_mask(
            (0..self.n)
                .map(|l| class.iter().all(|r| self.holds(Mor(l as u32), r)))
                .collect(),
        )
    }
}

/// Morphisms with unique fillers against every member of `class` on their left.
pub fn right_orthogonal(c: &FinCategory, class: &MorphismClass) -> MorphismClass {
    MorphismClass::new(
        c,
        c.morphisms()
            .filter(|&r| class.iter().all(|l| is_orthogonal(c, l, r))),
    )
}

pub fn left_orthogonal(c: &FinCategory, class: &MorphismClass) -> MorphismClass {
    MorphismClass::new(
        c,
        c.morphisms()
            .filter(|&l| class.iter().all(|r| is_orthogonal(c, l, r))),
    )
}

/// A square against `U(v)` at which `n` fails to be a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateFailure {
    pub v: Mor,
    pub f: Mor,
    pub u: Mor,
    /// Source arrows `w` with `U(w)∘n = f`.
    pub lifts: Vec<Mor>,
}

/// Every square `U(v)∘f = U(u)∘n` must have exactly one `w : A → A₁` with
/// `U(w)∘n = f`, and that `w` must satisfy `v∘w = u`.
pub fn candidate_failure(u: &FinFunctor, a: Obj, n: Mor) -> Result<Option<CandidateFailure>> {
    let (s, t) = (u.source(), u.target());
    if t.cod(n) != u.on_obj(a) {
        return Err(CatError::ApexMismatch {
            arrow: t.mor_name(n).to_string(),
            apex: s.obj_name(a).to_string(),
        });
    }
    let b = t.dom(n);
    for v in s.morphisms() {
        let (a1, a2) = (s.dom(v), s.cod(v));
        for &f in t.hom(b, u.on_obj(a1)) {
            let lifts: Vec<Mor> = s
                .hom(a, a1)
                .iter()
                .copied()
                .filter(|&w| t.comp(u.on_mor(w), n) == f)
                .collect();
            for &uu in s.hom(a, a2) {
                if t.comp(u.on_mor(v), f) != t.comp(u.on_mor(uu), n) {
                    continue;
                }
                if lifts.len() != 1 || s.comp(v, lifts[0]) != uu {
                    return Ok(Some(CandidateFailure { v, f, u: uu, lifts }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_candidate(u: &FinFunctor, a: Obj, n: Mor) -> Result<bool> {
    Ok(candidate_failure(u, a, n)?.is_none())
}

/// `n` is left orthogonal to every `U(v)`, fillers taken in the target.
pub fn is_diagonally_universal(u: &FinFunctor, n: Mor) -> bool {
    let (s, t) = (u.source(), u.target());
    let (b, cc) = (t.dom(n), t.cod(n));
    s.morphisms().all(|v| {
        let (x1, x2) = (u.on_obj(s.dom(v)), u.on_obj(s.cod(v)));
        let uv = u.on_mor(v);
        t.hom(b, x1).iter().all(|&f| {
            t.hom(cc, x2).iter().all(|&g| {
                if t.comp(uv, f) != t.comp(g, n) {
                    return true;
                }
                t.hom(cc, x1)
                    .iter()
                    .filter(|&&d| t.comp(d, n) == f && t.comp(uv, d) == g)
                    .take(2)
                    .count()
                    == 1
            })
        })
    })
}

/// `f = U(right_part) ∘ candidate` with `candidate : B → U(apex)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableFactorization {
    pub of: Mor,
    pub candidate: Mor,
    pub apex: Obj,
    pub right_part: Mor,
}

/// The factorization of `f : B → U(A)` through its local unit; the unit is
/// checked to be a candidate.
pub fn stable_factorization(u: &FinFunctor, a: Obj, f: Mor) -> Result<StableFactorization> {
    let (s, t) = (u.source(), u.target());
    if t.cod(f) != u.on_obj(a) {
        return Err(CatError::ApexMismatch {
            arrow: t.mor_name(f).to_string(),
            apex: s.obj_name(a).to_string(),
        });
    }
    let rec =
        local_units(u, t.dom(f)).map_err(|w| CatError::NotStable(w.describe(u).join(", ")))?;
    let (entry, factor) = rec.unit_for(u, a, f);
    if !is_candidate(u, entry.apex, entry.unit)? {
        return Err(CatError::InternalInconsistency(format!(
            "local unit {} is not a candidate",
            t.mor_name(entry.unit)
        )));
    }
    Ok(StableFactorization {
        of: f,
        candidate: entry.unit,
        apex: entry.apex,
        right_part: factor,
    })
}

/// Every factorization of `f : B → U(A)` as a candidate followed by a
/// `U`-image, in order of apex, candidate and right part.
pub fn candidate_factorizations(
    u: &FinFunctor,
    a: Obj,
    f: Mor,
) -> Result<Vec<StableFactorization>> {
    let (s, t) = (u.source(), u.target());
    if t.cod(f) != u.on_obj(a) {
        return Err(CatError::ApexMismatch {
            arrow: t.mor_name(f).to_string(),
            apex: s.obj_name(a).to_string(),
        });
    }
    let b = t.dom(f);
    let mut out = Vec::new();
    for apex in s.objects() {
        for &n in t.hom(b, u.on_obj(apex)) {
            let rights: Vec<Mor> = s
                .hom(apex, a)
                .iter()
                .copied()
                .filter(|&w| t.comp(u.on_mor(w), n) == f)
                .collect();
            if rights.is_empty() || !is_candidate(u, apex, n)? {
                continue;
            }
            out.extend(rights.into_iter().map(|right_part| StableFactorization {
                of: f,
                candidate: n,
                apex,
                right_part,
            }));
        }
    }
    Ok(out)
}

/// An arrow `f : base → U(apex)` with no factorization through a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unfactored {
    pub base: Obj,
    pub apex: Obj,
    pub arrow: Mor,
}

/// Reachability data of `B↓U` used by the stability decider.
struct Reach {
    n: usize,
    words: usize,
    objects: SmallVec<[(Obj, Mor); 32]>,
    /// `reach[x]`: comma objects receiving an arrow from `x`.
    reach: SmallVec<[u64; 32]>,
    /// `count[x·n + y]`: number of comma arrows `x → y`, saturated at 2.
    count: SmallVec<[u8; 512]>,
}

impl Reach {
    fn new(u: &FinFunctor, b: Obj) -> Reach {
        let (s, t) = (u.source(), u.target());
        let mut offset: SmallVec<[usize; 8]> = SmallVec::new();
        let mut objects: SmallVec<[(Obj, Mor); 32]> = SmallVec::new();
        for a in s.objects() {
            offset.push(objects.len());
            objects.extend(t.hom(b, u.on_obj(a)).iter().map(|&f| (a, f)));
        }
        let n = objects.len();
        let words = n.div_ceil(64).max(1);
        let mut reach: SmallVec<[u64; 32]> = smallvec![0; n * words];
        let mut count: SmallVec<[u8; 512]> = smallvec![0; n * n];
        for (x, &(a, f)) in objects.iter().enumerate() {
            for m in s.out_of(a) {
                let g = t.comp(u.on_mor(m), f);
                let y = offset[s.cod(m).idx()] + t.hom_index(g);
                reach[x * words + y / 64] |= 1 << (y % 64);
                let c = &mut count[x * n + y];
                *c = (*c + 1).min(2);
            }
        }
        Reach {
            n,
            words,
            objects,
            reach,
            count,
        }
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.reach[x * self.words..(x + 1) * self.words]
    }

    fn reaches(&self, x: usize, y: usize) -> bool {
        self.reach[x * self.words + y / 64] & (1 << (y % 64)) != 0
    }

    /// The candidate condition restated on `B↓U`: `x` has exactly one arrow
    /// to everything it reaches, and nothing it does not reach shares a
    /// target with it.
    fn is_candidate(&self, x: usize) -> bool {
        let rx = self.row(x);
        (0..self.n).all(|z| {
            if self.reaches(x, z) {
                self.count[x * self.n + z] == 1
            } else {
                self.row(z).iter().zip(rx).all(|(a, b)| a & b == 0)
            }
        })
    }

    fn first_unfactored(&self) -> Option<usize> {
        let mut covered: SmallVec<[u64; 4]> = smallvec![0; self.words];
        for x in 0..self.n {
            if self.is_candidate(x) {
                for (c, r) in covered.iter_mut().zip(self.row(x)) {
                    *c |= r;
                }
            }
        }
        (0..self.n).find(|&y| covered[y / 64] & (1 << (y % 64)) == 0)
    }
}

/// Every `f : B → U(A)` factors through a candidate. Decided from the
/// candidate definition alone, without local units.
pub fn is_stable(u: &FinFunctor) -> Decision<Unfactored> {
    for b in u.target().objects() {
        let r = Reach::new(u, b);
        if let Some(y) = r.first_unfactored() {
            let (apex, arrow) = r.objects[y];
            return Decision::Fails(Unfactored {
                base: b,
                apex,
                arrow,
            });
        }
    }
    Decision::Holds
}

/// Candidate flags for every object of `B↓U`, in the order of
/// [`CommaIndex`](crate::multiadjoint::CommaIndex).
pub fn candidate_mask(u: &FinFunctor, b: Obj) -> Vec<bool> {
    let r = Reach::new(u, b);
    (0..r.n).map(|x| r.is_candidate(x)).collect()
}

/// The candidate test of [`is_stable`] for a single arrow, exposed so that it
/// can be compared with [`is_candidate`].
pub fn is_candidate_via_comma(u: &FinFunctor, a: Obj, n: Mor) -> bool {
    let t = u.target();
    let r = Reach::new(u, t.dom(n));
    let x = r
        .objects
        .iter()
        .position(|&o| o == (a, n))
        .expect("(a, n) is an object of the comma category");
    r.is_candidate(x)
}

/// Axioms checked by [`validate_factorization_system`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    IsosInLeft,
    IsosInRight,
    LeftComposition,
    RightComposition,
    Orthogonal,
    Factorization,
    LeftIsLeftOrthogonal,
    RightIsRightOrthogonal,
    LeftRightCancellative,
    RightLeftCancellative,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::IsosInLeft,
        Axiom::IsosInRight,
        Axiom::LeftComposition,
        Axiom::RightComposition,
        Axiom::Orthogonal,
        Axiom::Factorization,
        Axiom::LeftIsLeftOrthogonal,
        Axiom::RightIsRightOrthogonal,
        Axiom::LeftRightCancellative,
        Axiom::RightLeftCancellative,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::IsosInLeft => "isomorphisms in L",
            Axiom::IsosInRight => "isomorphisms in R",
            Axiom::LeftComposition => "L closed under composition",
            Axiom::RightComposition => "R closed under composition",
            Axiom::Orthogonal => "L orthogonal to R",
            Axiom::Factorization => "every morphism factors",
            Axiom::LeftIsLeftOrthogonal => "L is the left orthogonal of R",
            Axiom::RightIsRightOrthogonal => "R is the right orthogonal of L",
            Axiom::LeftRightCancellative => "L right-cancellative",
            Axiom::RightLeftCancellative => "R left-cancellative",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsReport {
    pub failures: Vec<AxiomFailure>,
}

impl FsReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, axiom: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }
}

/// Checks every axiom and reports the first witness of each failure.
pub fn validate_factorization_system(
    c: &FinCategory,
    l: &MorphismClass,
    r: &MorphismClass,
) -> FsReport {
    let orth = Orthogonality::new(c);
    let mut failures = Vec::new();
    let mut fail = |axiom: Axiom, witness: Option<Vec<Mor>>| {
        if let Some(witness) = witness {
            failures.push(AxiomFailure { axiom, witness });
        }
    };
    let isos: Vec<Mor> = c.morphisms().filter(|&m| c.is_iso(m)).collect();
    fail(
        Axiom::IsosInLeft,
        isos.iter().find(|&&m| !l.contains(m)).map(|&m| vec![m]),
    );
    fail(
        Axiom::IsosInRight,
        isos.iter().find(|&&m| !r.contains(m)).map(|&m| vec![m]),
    );
    fail(Axiom::LeftComposition, composition_gap(c, l));
    fail(Axiom::RightComposition, composition_gap(c, r));
    fail(
        Axiom::Orthogonal,
        l.iter()
            .flat_map(|a| r.iter().map(move |b| (a, b)))
            .find(|&(a, b)| !orth.holds(a, b))
            .map(|(a, b)| vec![a, b]),
    );
    fail(
        Axiom::Factorization,
        c.morphisms()
            .find(|&f| factor_via_classes(c, f, l, r).is_empty())
            .map(|f| vec![f]),
    );
    let left = orth.left_of(r);
    fail(
        Axiom::LeftIsLeftOrthogonal,
        c.morphisms()
            .find(|&m| left.contains(m) != l.contains(m))
            .map(|m| vec![m]),
    );
    let right = orth.right_of(l);
    fail(
        Axiom::RightIsRightOrthogonal,
        c.morphisms()
            .find(|&m| right.contains(m) != r.contains(m))
            .map(|m| vec![m]),
    );
    // l, g∘l ∈ L ⇒ g ∈ L
    let mut right_cancel = None;
    let mut left_cancel = None;
    for f in c.morphisms() {
        for g in c.out_of(c.cod(f)) {
            let gf = c.comp(g, f);
            if right_cancel.is_none() && l.contains(f) && l.contains(gf) && !l.contains(g) {
                right_cancel = Some(vec![g, f]);
            }
            if left_cancel.is_none() && r.contains(g) && r.contains(gf) && !r.contains(f) {
                left_cancel = Some(vec![g, f]);
            }
        }
    }
    fail(Axiom::LeftRightCancellative, right_cancel);
    fail(Axiom::RightLeftCancellative, left_cancel);
    FsReport { failures }
}

fn composition_gap(c: &FinCategory, class: &MorphismClass) -> Option<Vec<Mor>> {
    for f in class.iter() {
        for g in c.out_of(c.cod(f)) {
            if class.contains(g) && !class.contains(c.comp(g, f)) {
                return Some(vec![g, f]);
            }
        }
    }
    None
}

/// `f = right ∘ left` through `apex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub apex: Obj,
    pub left: Mor,
    pub right: Mor,
}

/// All factorizations of `f` with left part in `l` and right part in `r`,
/// ordered by apex, left part, right part.
pub fn factor_via_classes(
    c: &FinCategory,
    f: Mor,
    l: &MorphismClass,
    r: &MorphismClass,
) -> Vec<Factorization> {
    let mut out = Vec::new();
    for apex in c.objects() {
        for &left in c.hom(c.dom(f), apex) {
            if !l.contains(left) {
                continue;
            }
            for &right in c.hom(apex, c.cod(f)) {
                if r.contains(right) && c.comp(right, left) == f {
                    out.push(Factorization { apex, left, right });
                }
            }
        }
    }
    out
}

/// Closure rules applied by [`saturate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Isomorphisms,
    Composition,
    RightCancellation,
    Pushout,
    ArrowCoproduct,
    ArrowCoequalizer,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::Isomorphisms => "isomorphisms",
            Rule::Composition => "composition",
            Rule::RightCancellation => "right cancellation",
            Rule::Pushout => "pushout",
            Rule::ArrowCoproduct => "coproduct in the arrow category",
            Rule::ArrowCoequalizer => "coequalizer in the arrow category",
        }
    }
}

/// A closure step whose colimit does not exist in the category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub rule: Rule,
    /// Pushout: `[l, g]`. Coproduct: `[f₁, f₂]`. Coequalizer:
    /// `[f, g, top₁, bottom₁, top₂, bottom₂]`.
    pub arrows: Vec<Mor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub class: MorphismClass,
    /// Obligations of the final class that could not be discharged.
    pub skipped: Vec<Obligation>,
}

struct Colimits<'a> {
    c: &'a FinCategory,
    op: FinCategory,
    coproducts: HashMap<(Obj, Obj), Option<Cone>>,
    coequalizers: HashMap<(Mor, Mor), Option<Cone>>,
    pushouts: HashMap<(Mor, Mor), Option<Cone>>,
}

impl<'a> Colimits<'a> {
    fn new(c: &'a FinCategory) -> Self {
        Colimits {
            c,
            op: opposite(c),
            coproducts: HashMap::new(),
            coequalizers: HashMap::new(),
            pushouts: HashMap::new(),
        }
    }

    fn coproduct(&mut self, x: Obj, y: Obj) -> Option<Cone> {
        let op = &self.op;
        self.coproducts
            .entry((x, y))
            .or_insert_with(|| {
                colimit_in_opposite(
                    op,
                    &DiagramSpec {
                        nodes: vec![x, y],
                        edges: vec![],
                    },
                )
            })
            .clone()
    }

    /// Cocone legs `[dom → E, cod → E]`.
    fn coequalizer(&mut self, p: Mor, q: Mor) -> Option<Cone> {
        let (op, c) = (&self.op, self.c);
        self.coequalizers
            .entry((p, q))
            .or_insert_with(|| {
                colimit_in_opposite(
                    op,
                    &DiagramSpec {
                        nodes: vec![c.dom(p), c.cod(p)],
                        edges: vec![(0, 1, p), (0, 1, q)],
                    },
                )
            })
            .clone()
    }

    fn pushout(&mut self, f: Mor, g: Mor) -> Option<Cone> {
        let op = &self.op;
        self.pushouts
            .entry((f, g))
            .or_insert_with(|| pushout_in_opposite(op, f, g))
            .clone()
    }
}

/// The arrow `h` with `h∘from = to∘f`; unique when `from` is a colimit leg
/// family.
fn induced(c: &FinCategory, src: &Cone, dst: &Cone, arrows: &[(usize, Mor)]) -> Option<Mor> {
    c.hom(src.apex, dst.apex).iter().copied().find(|&h| {
        arrows
            .iter()
            .all(|&(i, f)| c.comp(h, src.legs[i]) == c.comp(dst.legs[i], f))
    })
}

fn squares(c: &FinCategory, f: Mor, g: Mor) -> Vec<(Mor, Mor)> {
    let mut out = Vec::new();
    for &top in c.hom(c.dom(f), c.dom(g)) {
        for &bottom in c.hom(c.cod(f), c.cod(g)) {
            if c.comp(g, top) == c.comp(bottom, f) {
                out.push((top, bottom));
            }
        }
    }
    out
}

/// Least class containing `v` and closed under the rules of [`Rule`], each
/// colimit rule applied only where the colimit exists in `c`.
pub fn saturate(c: &FinCategory, v: &MorphismClass, limits: &Limits) -> Result<Saturation> {
    let mut class = v.union(&MorphismClass::isos(c));
    let mut colims = Colimits::new(c);
    loop {
        let (added, _) = saturation_round(c, &mut class, &mut colims, limits, false)?;
        if !added {
            break;
        }
    }
    let (_, skipped) = saturation_round(c, &mut class, &mut colims, limits, true)?;
    Ok(Saturation { class, skipped })
}

fn saturation_round(
    c: &FinCategory,
    class: &mut MorphismClass,
    colims: &mut Colimits<'_>,
    limits: &Limits,
    record: bool,
) -> Result<(bool, Vec<Obligation>)> {
    let mut added = false;
    let mut skipped = Vec::new();
    let members = class.members();
    for &f in &members {
        for g in c.out_of(c.cod(f)) {
            let gf = c.comp(g, f);
            if class.contains(g) {
                added |= class.insert(gf);
            }
            if class.contains(gf) {
                added |= class.insert(g);
            }
        }
        for g in c.out_of(c.dom(f)) {
            match colims.pushout(f, g) {
                Some(p) => added |= class.insert(p.legs[2]),
                None if record => skipped.push(Obligation {
                    rule: Rule::Pushout,
                    arrows: vec![f, g],
                }),
                None => {}
            }
        }
    }
    let mut work = 0usize;
    for &f in &members {
        for &g in &members {
            let coproduct = colims
                .coproduct(c.dom(f), c.dom(g))
                .zip(colims.coproduct(c.cod(f), c.cod(g)));
            match coproduct {
                Some((src, dst)) => {
                    let h = induced(c, &src, &dst, &[(0, f), (1, g)]).ok_or_else(|| {
                        CatError::InternalInconsistency("coproduct arrow missing".into())
                    })?;
                    added |= class.insert(h);
                }
                None if record => skipped.push(Obligation {
                    rule: Rule::ArrowCoproduct,
                    arrows: vec![f, g],
                }),
                None => {}
            }
            let sq = squares(c, f, g);
            work += sq.len() * sq.len();
            limits.check("saturation obligations", work)?;
            for (i, &(t1, b1)) in sq.iter().enumerate() {
                for &(t2, b2) in &sq[i + 1..] {
                    let co = colims.coequalizer(t1, t2).zip(colims.coequalizer(b1, b2));
                    match co {
                        Some((e1, e2)) => {
                            // h∘e1 = e2∘g
                            let h = c
                                .hom(e1.apex, e2.apex)
                                .iter()
                                .copied()
                                .find(|&h| c.comp(h, e1.legs[1]) == c.comp(e2.legs[1], g))
                                .ok_or_else(|| {
                                    CatError::InternalInconsistency(
                                        "coequalizer arrow missing".into(),
                                    )
                                })?;
                            added |= class.insert(h);
                        }
                        None if record => skipped.push(Obligation {
                            rule: Rule::ArrowCoequalizer,
                            arrows: vec![f, g, t1, b1, t2, b2],
                        }),
                        None => {}
                    }
                }
            }
        }
    }
    Ok((added, skipped))
}

/// A triangle `U(u₂)∘f = U(u₁)` whose `f` has `preimages ≠ 1` lifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelffWitness {
    pub u1: Mor,
    pub u2: Mor,
    pub f: Mor,
    pub preimages: usize,
}

pub fn is_relatively_full_faithful(u: &FinFunctor) -> Decision<RelffWitness> {
    let (s, t) = (u.source(), u.target());
    for u1 in s.morphisms() {
        let (a1, a) = (s.dom(u1), s.cod(u1));
        for u2 in s.into_obj(a) {
            let a2 = s.dom(u2);
            for &f in t.hom(u.on_obj(a1), u.on_obj(a2)) {
                if t.comp(u.on_mor(u2), f) != u.on_mor(u1) {
                    continue;
                }
                let preimages = s.hom(a1, a2).iter().filter(|&&w| u.on_mor(w) == f).count();
                if preimages != 1 {
                    return Decision::Fails(RelffWitness {
                        u1,
                        u2,
                        f,
                        preimages,
                    });
                }
            }
        }
    }
    Decision::Holds
}

/// Every `r : B → U(A)` in `class` is `U(w)∘φ` for some `w : A₀ → A` and
/// isomorphism `φ : B → U(A₀)`. The witness is the first `r` that is not.
pub fn lifts_r_maps(u: &FinFunctor, class: &MorphismClass) -> Decision<Mor> {
    let (s, t) = (u.source(), u.target());
    for r in class.iter() {
        let b = t.dom(r);
        for a in s.objects().filter(|&a| u.on_obj(a) == t.cod(r)) {
            let lifted = s.objects().any(|a0| {
                t.hom(b, u.on_obj(a0)).iter().any(|&phi| {
                    t.is_iso(phi) && s.hom(a0, a).iter().any(|&w| t.comp(u.on_mor(w), phi) == r)
                })
            });
            if !lifted {
                return Decision::Fails(r);
            }
        }
    }
    Decision::Holds
}

/// The inclusion of the objects in `objects` and the right-class maps
/// between them, with its two verdicts.
#[derive(Clone, Debug)]
pub struct GlidingInclusion {
    pub subcategory: Arc<FinCategory>,
    pub inclusion: FinFunctor,
    pub stable: Decision<Unfactored>,
    pub relff: Decision<RelffWitness>,
}

pub fn gliding_inclusion(
    c: &Arc<FinCategory>,
    l: &MorphismClass,
    r: &MorphismClass,
    objects: &[Obj],
) -> Result<GlidingInclusion> {
    let report = validate_factorization_system(c, l, r);
    if let Some(first) = report.failures.first() {
        return Err(CatError::NotAFactorizationSystem(format!(
            "{} ({})",
            first.axiom,
            c.names(&first.witness).join(", ")
        )));
    }
    let mut keep = vec![false; c.object_count()];
    for o in objects {
        keep[o.idx()] = true;
    }
    if let Some(bad) = r
        .iter()
        .find(|&m| keep[c.cod(m).idx()] && !keep[c.dom(m).idx()])
    {
        return Err(CatError::GlidingViolation(c.mor_name(bad).to_string()));
    }
    let name = format!("{}_R", c.name());
    let (sub, inclusion) = subcategory(c, &name, &keep, r.mask())?;
    Ok(GlidingInclusion {
        subcategory: sub,
        stable: is_stable(&inclusion),
        relff: is_relatively_full_faithful(&inclusion),
        inclusion,
    })
}

/// Every orthogonality structure `(⊥(X^⊥), X^⊥)` for `X` a set of
/// morphisms, without repetitions, in order of first appearance.
pub fn orthogonality_structures(
    c: &FinCategory,
    limits: &Limits,
) -> Result<Vec<(MorphismClass, MorphismClass)>> {
    let n = c.morphism_count();
    if n >= usize::BITS as usize {
        return Err(CatError::SizeCap {
            what: "orthogonality structures".into(),
            size: usize::MAX,
            cap: limits.cap,
        });
    }
    limits.check("orthogonality structures", 1usize << n)?;
    let table = Orthogonality::new(c);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0usize..(1usize << n) {
        let x = MorphismClass::from_mask((0..n).map(|i| mask >> i & 1 == 1).collect());
        let r = table.right_of(&x);
        if seen.insert(r.clone()) {
            out.push((table.left_of(&r), r));
        }
    }
    Ok(out)
}

/// A counterexample to one of the constraints an orthogonality structure
/// puts on factorizations and parallel pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaViolation {
    /// `f ∘ l = r` with `l` not split mono.
    NotSplitMono { l: Mor, r: Mor, f: Mor },
    /// `f ∘ l = r` with `f` not of the form `r ∘ d`.
    NoFactorThroughRight { l: Mor, r: Mor, f: Mor },
    /// `r ∘ f = l` with `r` not split epi.
    NotSplitEpi { l: Mor, r: Mor, f: Mor },
    /// `r ∘ f = l` with `f` not of the form `d ∘ l`.
    NoFactorThroughLeft { l: Mor, r: Mor, f: Mor },
    /// `a ∘ l = b ∘ l` and `r ∘ a = r ∘ b` with `a ≠ b`.
    NotEqual { a: Mor, b: Mor, l: Mor, r: Mor },
    /// `a ∘ l = b ∘ l` and the coequalizer `q` of `a, b` is not in the left class.
    CoequalizerNotLeft { a: Mor, b: Mor, l: Mor, q: Mor },
}

/// Checks, for a pair of classes forming an orthogonality structure, that a
/// left map through which a right map factors is split mono (and dually),
/// that parallel pairs equalized by a left map and coequalized by a right
/// map coincide, and that coequalizers of pairs equalized by a left map are
/// left maps where they exist.
pub fn orthogonality_lemma_violations(
    c: &FinCategory,
    l: &MorphismClass,
    r: &MorphismClass,
) -> Vec<LemmaViolation> {
    let mut out = Vec::new();
    for lm in l.iter() {
        for rm in c.out_of(c.dom(lm)).filter(|&m| r.contains(m)) {
            for &f in c.hom(c.cod(lm), c.cod(rm)) {
                if c.comp(f, lm) != rm {
                    continue;
                }
                if !c.is_split_mono(lm) {
                    out.push(LemmaViolation::NotSplitMono { l: lm, r: rm, f });
                }
                if !c
                    .hom(c.dom(f), c.dom(rm))
                    .iter()
                    .any(|&d| c.comp(rm, d) == f)
                {
                    out.push(LemmaViolation::NoFactorThroughRight { l: lm, r: rm, f });
                }
            }
        }
        for rm in c.into_obj(c.cod(lm)).filter(|&m| r.contains(m)) {
            for &f in c.hom(c.dom(lm), c.dom(rm)) {
                if c.comp(rm, f) != lm {
                    continue;
                }
                if !c.is_split_epi(rm) {
                    out.push(LemmaViolation::NotSplitEpi { l: lm, r: rm, f });
                }
                if !c
                    .hom(c.cod(lm), c.cod(f))
                    .iter()
                    .any(|&d| c.comp(d, lm) == f)
                {
                    out.push(LemmaViolation::NoFactorThroughLeft { l: lm, r: rm, f });
                }
            }
        }
    }
    let op = opposite(c);
    for x in c.objects() {
        for y in c.objects() {
            let h = c.hom(x, y);
            for (i, &a) in h.iter().enumerate() {
                for &b in &h[i + 1..] {
                    let Some(lm) = c
                        .into_obj(x)
                        .find(|&m| l.contains(m) && c.comp(a, m) == c.comp(b, m))
                    else {
                        continue;
                    };
                    if let Some(rm) = c
                        .out_of(y)
                        .find(|&m| r.contains(m) && c.comp(m, a) == c.comp(m, b))
                    {
                        out.push(LemmaViolation::NotEqual { a, b, l: lm, r: rm });
                    }
                    let d = DiagramSpec {
                        nodes: vec![x, y],
                        edges: vec![(0, 1, a), (0, 1, b)],
                    };
                    if let Some(q) = colimit_in_opposite(&op, &d) {
                        if !l.contains(q.legs[1]) {
                            out.push(LemmaViolation::CoequalizerNotLeft {
                                a,
                                b,
                                l: lm,
                                q: q.legs[1],
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;
    use crate::multiadjoint::is_local_right_adjoint;

    fn chain_classes(c: &FinCategory) -> (MorphismClass, MorphismClass) {
        let (a, b) = (c.morphism("a").unwrap(), c.morphism("b").unwrap());
        let ids = MorphismClass::identities(c);
        (
            ids.union(&MorphismClass::new(c, [a])),
            ids.union(&MorphismClass::new(c, [b])),
        )
    }

    #[test]
    fn lifting_in_the_chain() {
        let c = chain3();
        let m = |n: &str| c.morphism(n).unwrap();
        let rep = lift(&c, m("a"), m("b"), m("a"), m("b")).unwrap();
        assert_eq!(rep.fillers, vec![c.id(Obj(1))]);
        let rep = lift(&c, m("c"), m("b"), m("a"), c.id(Obj(2))).unwrap();
        assert!(rep.fillers.is_empty());
        let rep = lift(&c, c.id(Obj(0)), m("c"), m("id_0"), m("c")).unwrap();
        assert_eq!(rep.fillers, vec![m("id_0")]);
        assert_eq!(
            lift(&c, m("a"), m("b"), m("c"), m("b")),
            Err(CatError::NotASquare)
        );
    }

    #[test]
    fn orthogonal_classes() {
        let c = chain3();
        let all = MorphismClass::all(&c);
        let isos = MorphismClass::isos(&c);
        assert_eq!(right_orthogonal(&c, &isos), all);
        assert_eq!(right_orthogonal(&c, &all), isos);
        let ra = right_orthogonal(&c, &MorphismClass::new(&c, [c.morphism("a").unwrap()]));
        assert!(ra.contains(c.morphism("b").unwrap()));
        assert!(!ra.contains(c.morphism("a").unwrap()));
        let orth = Orthogonality::new(&c);
        assert_eq!(orth.left_of(&ra), left_orthogonal(&c, &ra));
    }

    #[test]
    fn candidates_and_diagonal_universality() {
        let u = d2_into_v();
        let t = u.target();
        let ia = t.morphism("ia").unwrap();
        assert!(is_candidate(&u, Obj(0), ia).unwrap());
        assert!(is_diagonally_universal(&u, ia));
        assert!(matches!(
            is_candidate(&u, Obj(1), ia),
            Err(CatError::ApexMismatch { .. })
        ));
        let c = chain3();
        let id = FinFunctor::identity(&c);
        assert!(!is_diagonally_universal(&id, c.morphism("a").unwrap()));
        assert!(is_candidate(&id, Obj(1), c.id(Obj(1))).unwrap());
        let k = cospan_to_one();
        let star = k.target().id(Obj(0));
        for a in k.source().objects() {
            assert!(!is_candidate(&k, a, star).unwrap());
        }
    }

    #[test]
    fn stability_matches_fixture_verdicts() {
        assert!(is_stable(&d2_into_v()).holds());
        assert!(is_stable(&FinFunctor::identity(&chain3())).holds());
        assert!(!is_stable(&cospan_to_one()).holds());
    }

    #[test]
    fn stable_factorization_through_units() {
        let u = d2_into_v();
        let ia = u.target().morphism("ia").unwrap();
        let sf = stable_factorization(&u, Obj(0), ia).unwrap();
        assert_eq!(
            (sf.candidate, sf.apex, sf.right_part),
            (ia, Obj(0), u.source().id(Obj(0)))
        );
        assert_eq!(candidate_factorizations(&u, Obj(0), ia).unwrap(), vec![sf]);
        assert!(matches!(
            stable_factorization(&cospan_to_one(), Obj(0), Mor(0)),
            Err(CatError::NotStable(_))
        ));
    }

    #[test]
    fn chain_factorization_system() {
        let c = chain3();
        let (l, r) = chain_classes(&c);
        assert!(validate_factorization_system(&c, &l, &r).is_valid());
        let all = MorphismClass::all(&c);
        let isos = MorphismClass::isos(&c);
        assert!(validate_factorization_system(&c, &isos, &all).is_valid());
        assert!(validate_factorization_system(&c, &all, &isos).is_valid());
        let rep = validate_factorization_system(&c, &isos, &isos);
        assert!(rep.failed(Axiom::Factorization));
        let fs = factor_via_classes(&c, c.morphism("c").unwrap(), &l, &r);
        assert_eq!(
            fs,
            vec![Factorization {
                apex: Obj(1),
                left: c.morphism("a").unwrap(),
                right: c.morphism("b").unwrap()
            }]
        );
    }

    #[test]
    fn saturation_examples() {
        let c = chain3();
        let lim = Limits::default();
        let s = saturate(&c, &MorphismClass::empty(&c), &lim).unwrap();
        assert_eq!(s.class, MorphismClass::isos(&c));
        let (l, _) = chain_classes(&c);
        let v = MorphismClass::new(&c, [c.morphism("a").unwrap()]);
        let s = saturate(&c, &v, &lim).unwrap();
        assert_eq!(s.class, l);
        assert_eq!(saturate(&c, &s.class, &lim).unwrap().class, s.class);
    }

    #[test]
    fn saturation_records_missing_colimits() {
        let c = vposet();
        let s = saturate(&c, &MorphismClass::empty(&c), &Limits::default()).unwrap();
        assert_eq!(s.class, MorphismClass::isos(&c));
        assert!(s.skipped.iter().any(
            |o| o.rule == Rule::ArrowCoproduct && o.arrows == vec![c.id(Obj(1)), c.id(Obj(2))]
        ));
    }

    #[test]
    fn relative_full_faithfulness() {
        assert!(is_relatively_full_faithful(&FinFunctor::identity(&chain3())).holds());
        assert!(is_relatively_full_faithful(&d2_into_v()).holds());
        let two = two();
        let bang =
            FinFunctor::new("!", two.clone(), one(), vec![Obj(0); 2], vec![Mor(0); 3]).unwrap();
        let w = is_relatively_full_faithful(&bang);
        assert_eq!(w.witness().map(|w| w.preimages), Some(0));
    }

    #[test]
    fn lifting_right_maps() {
        let u = d2_into_v();
        let t = u.target();
        let ids = MorphismClass::new(
            t,
            [t.morphism("id_a").unwrap(), t.morphism("id_b").unwrap()],
        );
        assert!(lifts_r_maps(&u, &ids).holds());
        let ia = t.morphism("ia").unwrap();
        assert_eq!(
            lifts_r_maps(&u, &MorphismClass::new(t, [ia])),
            Decision::Fails(ia)
        );
        let c = chain3();
        assert!(lifts_r_maps(&FinFunctor::identity(&c), &MorphismClass::identities(&c)).holds());
    }

    #[test]
    fn gliding_in_the_chain() {
        let c = chain3();
        let (l, r) = chain_classes(&c);
        let g = gliding_inclusion(&c, &l, &r, &[Obj(1), Obj(2)]).unwrap();
        assert!(g.stable.holds() && g.relff.holds());
        assert_eq!(g.subcategory.morphism_count(), 3);
        assert!(matches!(
            gliding_inclusion(&c, &l, &r, &[Obj(2)]),
            Err(CatError::GlidingViolation(m)) if m == "b"
        ));
        let all = gliding_inclusion(&c, &l, &r, &[Obj(0), Obj(1), Obj(2)]).unwrap();
        assert!(all.stable.holds());
        let isos = MorphismClass::isos(&c);
        assert!(matches!(
            gliding_inclusion(&c, &isos, &isos, &[Obj(0)]),
            Err(CatError::NotAFactorizationSystem(_))
        ));
    }

    #[test]
    fn comma_candidate_test_agrees_with_squares() {
        for u in [
            d2_into_v(),
            cospan_to_one(),
            FinFunctor::identity(&chain3()),
        ] {
            let (s, t) = (u.source(), u.target());
            for a in s.objects() {
                for b in t.objects() {
                    for &n in t.hom(b, u.on_obj(a)) {
                        assert_eq!(
                            is_candidate(&u, a, n).unwrap(),
                            is_candidate_via_comma(&u, a, n)
                        );
                    }
                }
            }
            assert_eq!(is_stable(&u).holds(), is_local_right_adjoint(&u).holds());
        }
    }
}
