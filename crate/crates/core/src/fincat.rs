//! Explicit finite categories, functors, natural transformations and the
//! derived categories (opposite, slice, coslice, arrow, comma) built from them.
//!
//! A category is stored as a total composition table over morphism indices.
//! Identities are synthesized and come first in the morphism order, one per
//! object in object order; declared arrows follow in declaration order.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{CatError, Result};

/// Default bound on the number of morphisms of a constructed category.
pub const DEFAULT_CAP: usize = 10_000;

const UNDEF: u32 = u32::MAX;

/// Size guards shared by every construction that materializes a category.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cap: DEFAULT_CAP }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits { cap }
    }

    pub(crate) fn check(&self, what: &str, size: usize) -> Result<()> {
        if size > self.cap {
            Err(CatError::SizeCap {
                what: what.to_string(),
                size,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

/// Index of an object within its category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub u32);

/// Index of a morphism within its category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub u32);

impl Obj {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Name of the synthesized identity on an object.
pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

/// A category description as written by a user: objects, non-identity arrows
/// and composition entries `g . f = h`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub name: String,
    pub objects: Vec<String>,
    /// `(name, dom, cod)`
    pub arrows: Vec<(String, String, String)>,
    /// `(g, f, g∘f)`
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<String>,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    identity: Vec<Mor>,
    table: Vec<u32>,
    homs: Vec<Vec<Mor>>,
    outs: Vec<Vec<Mor>>,
    ins: Vec<Vec<Mor>>,
    hom_pos: Vec<u32>,
}

impl FinCategory {
    /// Builds a category from index data without checking the category laws.
    ///
    /// `morphisms` must list the identities at positions given by `identity`
    /// and `table[g * n + f]` must hold `g∘f` for every composable pair.
    pub(crate) fn from_parts(
        name: String,
        objects: Vec<String>,
        morphisms: Vec<(String, Obj, Obj)>,
        identity: Vec<Mor>,
        table: Vec<u32>,
    ) -> FinCategory {
        let nobj = objects.len();
        let mut homs = vec![Vec::new(); nobj * nobj];
        let mut outs = vec![Vec::new(); nobj];
        let mut ins = vec![Vec::new(); nobj];
        let mut hom_pos = Vec::with_capacity(morphisms.len());
        let mut names = Vec::with_capacity(morphisms.len());
        let mut dom = Vec::with_capacity(morphisms.len());
        let mut cod = Vec::with_capacity(morphisms.len());
        for (i, (n, d, c)) in morphisms.into_iter().enumerate() {
            let h = &mut homs[d.idx() * nobj + c.idx()];
            hom_pos.push(h.len() as u32);
            h.push(Mor(i as u32));
            outs[d.idx()].push(Mor(i as u32));
            ins[c.idx()].push(Mor(i as u32));
            names.push(n);
            dom.push(d);
            cod.push(c);
        }
        FinCategory {
            name,
            objects,
            morphisms: names,
            dom,
            cod,
            identity,
            table,
            homs,
            outs,
            ins,
            hom_pos,
        }
    }

    /// Index-level constructor used by enumeration: identities are morphisms
    /// `0..nobj`, names are generated.
    pub fn from_table(
        name: &str,
        nobj: usize,
        arrows: &[(Obj, Obj)],
        table: Vec<u32>,
    ) -> Result<FinCategory> {
        let objects: Vec<String> = (0..nobj).map(|i| format!("o{i}")).collect();
        let mut morphisms: Vec<(String, Obj, Obj)> = (0..nobj)
            .map(|i| (identity_name(&objects[i]), Obj(i as u32), Obj(i as u32)))
            .collect();
        for (k, &(d, c)) in arrows.iter().enumerate() {
            morphisms.push((format!("m{k}"), d, c));
        }
        let identity = (0..nobj).map(|i| Mor(i as u32)).collect();
        let c = FinCategory::from_parts(name.to_string(), objects, morphisms, identity, table);
        c.check_laws()?;
        Ok(c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + Clone {
        (0..self.objects.len() as u32).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + Clone {
        (0..self.morphisms.len() as u32).map(Mor)
    }

    pub fn obj_name(&self, o: Obj) -> &str {
        &self.objects[o.idx()]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.morphisms[m.idx()]
    }

    pub fn object(&self, name: &str) -> Result<Obj> {
        self.objects
            .iter()
            .position(|n| n == name)
            .map(|i| Obj(i as u32))
            .ok_or_else(|| CatError::UnknownObject(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<Mor> {
        self.morphisms
            .iter()
            .position(|n| n == name)
            .map(|i| Mor(i as u32))
            .ok_or_else(|| CatError::UnknownMorphism(name.to_string()))
    }

    #[inline]
    pub fn dom(&self, m: Mor) -> Obj {
        self.dom[m.idx()]
    }

    #[inline]
    pub fn cod(&self, m: Mor) -> Obj {
        self.cod[m.idx()]
    }

    #[inline]
    pub fn id(&self, o: Obj) -> Mor {
        self.identity[o.idx()]
    }

    #[inline]
    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.dom(m).idx()] == m
    }

    /// `g ∘ f`, defined exactly when `cod f = dom g`.
    #[inline]
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        let v = self.table[g.idx() * self.morphisms.len() + f.idx()];
        (v != UNDEF).then_some(Mor(v))
    }

    /// `g ∘ f` for arrows already known to be composable.
    #[inline]
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        let v = self.table[g.idx() * self.morphisms.len() + f.idx()];
        debug_assert!(v != UNDEF, "composing non-composable arrows");
        Mor(v)
    }

    /// Morphisms `x → y` in declaration order.
    #[inline]
    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.homs[x.idx() * self.objects.len() + y.idx()]
    }

    pub fn hom_set(&self, x: &str, y: &str) -> Result<Vec<Mor>> {
        Ok(self.hom(self.object(x)?, self.object(y)?).to_vec())
    }

    /// Morphisms with domain `x`, in declaration order.
    pub fn out_of(&self, x: Obj) -> std::iter::Copied<std::slice::Iter<'_, Mor>> {
        self.outs[x.idx()].iter().copied()
    }

    /// Morphisms with codomain `y`, in declaration order.
    pub fn into_obj(&self, y: Obj) -> std::iter::Copied<std::slice::Iter<'_, Mor>> {
        self.ins[y.idx()].iter().copied()
    }

    /// Position of `m` within `hom(dom m, cod m)`.
    #[inline]
    pub fn hom_index(&self, m: Mor) -> usize {
        self.hom_pos[m.idx()] as usize
    }

    /// Two-sided inverse of `m`, if any.
    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        let (d, c) = (self.dom(m), self.cod(m));
        self.hom(c, d)
            .iter()
            .copied()
            .find(|&k| self.comp(k, m) == self.id(d) && self.comp(m, k) == self.id(c))
    }

    pub fn is_iso(&self, m: Mor) -> bool {
        self.inverse(m).is_some()
    }

    /// Some isomorphism `x → y`, if the objects are isomorphic.
    pub fn iso_between(&self, x: Obj, y: Obj) -> Option<Mor> {
        self.hom(x, y).iter().copied().find(|&m| self.is_iso(m))
    }

    pub fn is_split_mono(&self, m: Mor) -> bool {
        let d = self.dom(m);
        self.hom(self.cod(m), d)
            .iter()
            .any(|&r| self.comp(r, m) == self.id(d))
    }

    pub fn is_split_epi(&self, m: Mor) -> bool {
        let c = self.cod(m);
        self.hom(c, self.dom(m))
            .iter()
            .any(|&s| self.comp(m, s) == self.id(c))
    }

    /// Exhaustively checks totality, dom/cod coherence, identity laws and
    /// associativity of the table.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.morphisms.len();
        for g in self.morphisms() {
            for f in self.morphisms() {
                let composable = self.cod(f) == self.dom(g);
                let v = self.table[g.idx() * n + f.idx()];
                if composable && v == UNDEF {
                    return Err(CatError::MissingComposite {
                        g: self.mor_name(g).into(),
                        f: self.mor_name(f).into(),
                    });
                }
                if !composable && v != UNDEF {
                    return Err(CatError::NotComposable {
                        g: self.mor_name(g).into(),
                        f: self.mor_name(f).into(),
                    });
                }
                if composable {
                    let h = Mor(v);
                    if self.dom(h) != self.dom(f) || self.cod(h) != self.cod(g) {
                        return Err(CatError::LawViolation {
                            law: "dom/cod coherence".into(),
                            witness: self.names(&[g, f, h]),
                        });
                    }
                }
            }
        }
        for f in self.morphisms() {
            if self.comp(self.id(self.cod(f)), f) != f || self.comp(f, self.id(self.dom(f))) != f {
                return Err(CatError::LawViolation {
                    law: "identity".into(),
                    witness: self.names(&[f]),
                });
            }
        }
        for f in self.morphisms() {
            for g in self.out_of(self.cod(f)) {
                let gf = self.comp(g, f);
                for h in self.out_of(self.cod(g)) {
                    if self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                        return Err(CatError::LawViolation {
                            law: "associativity".into(),
                            witness: self.names(&[h, g, f]),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn names(&self, ms: &[Mor]) -> Vec<String> {
        ms.iter().map(|&m| self.mor_name(m).to_string()).collect()
    }

    pub fn obj_names(&self, os: &[Obj]) -> Vec<String> {
        os.iter().map(|&o| self.obj_name(o).to_string()).collect()
    }

    /// Non-identity composable pairs `(g, f)` with their composite, in
    /// declaration order of `f` then `g`.
    pub fn composition_entries(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut out = Vec::new();
        for f in self.morphisms().filter(|&m| !self.is_identity(m)) {
            for g in self.out_of(self.cod(f)).filter(|&m| !self.is_identity(m)) {
                out.push((g, f, self.comp(g, f)));
            }
        }
        out
    }

    /// The description this category would be written with.
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            name: self.name.clone(),
            objects: self.objects.clone(),
            arrows: self
                .morphisms()
                .filter(|&m| !self.is_identity(m))
                .map(|m| {
                    (
                        self.mor_name(m).to_string(),
                        self.obj_name(self.dom(m)).to_string(),
                        self.obj_name(self.cod(m)).to_string(),
                    )
                })
                .collect(),
            compose: self
                .composition_entries()
                .into_iter()
                .map(|(g, f, h)| {
                    (
                        self.mor_name(g).to_string(),
                        self.mor_name(f).to_string(),
                        self.mor_name(h).to_string(),
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} objects, {} morphisms)",
            self.name,
            self.object_count(),
            self.morphism_count()
        )
    }
}

/// Validates a user description, synthesizing identities named `id_<object>`.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    let mut obj_index: HashMap<&str, Obj> = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if o.is_empty() {
            return Err(CatError::EmptyName);
        }
        if obj_index.insert(o.as_str(), Obj(i as u32)).is_some() {
            return Err(CatError::DuplicateName(o.clone()));
        }
    }
    let nobj = raw.objects.len();
    let mut morphisms: Vec<(String, Obj, Obj)> = raw
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| (identity_name(o), Obj(i as u32), Obj(i as u32)))
        .collect();
    let lookup = |name: &str, context: &str| -> Result<Obj> {
        obj_index
            .get(name)
            .copied()
            .ok_or_else(|| CatError::DanglingRef {
                kind: "object",
                name: name.to_string(),
                context: context.to_string(),
            })
    };
    for (name, d, c) in &raw.arrows {
        if name.is_empty() {
            return Err(CatError::EmptyName);
        }
        let d = lookup(d, name)?;
        let c = lookup(c, name)?;
        morphisms.push((name.clone(), d, c));
    }
    let mut mor_index: HashMap<&str, Mor> = HashMap::new();
    for (i, (n, _, _)) in morphisms.iter().enumerate() {
        if mor_index.insert(n.as_str(), Mor(i as u32)).is_some() {
            return Err(CatError::DuplicateName(n.clone()));
        }
    }
    let n = morphisms.len();
    let mut table = vec![UNDEF; n * n];
    let identity: Vec<Mor> = (0..nobj).map(|i| Mor(i as u32)).collect();
    // identity laws are part of the synthesized structure
    for (m, (_, d, c)) in morphisms.iter().enumerate() {
        table[identity[c.idx()].idx() * n + m] = m as u32;
        table[m * n + identity[d.idx()].idx()] = m as u32;
    }
    let mor = |name: &str, context: &str| -> Result<Mor> {
        mor_index
            .get(name)
            .copied()
            .ok_or_else(|| CatError::DanglingRef {
                kind: "morphism",
                name: name.to_string(),
                context: context.to_string(),
            })
    };
    for (g, f, h) in &raw.compose {
        let context = format!("{g} . {f} = {h}");
        let (gi, fi, hi) = (mor(g, &context)?, mor(f, &context)?, mor(h, &context)?);
        let (fd, fc) = (morphisms[fi.idx()].1, morphisms[fi.idx()].2);
        let (gd, gc) = (morphisms[gi.idx()].1, morphisms[gi.idx()].2);
        if fc != gd {
            return Err(CatError::NotComposable {
                g: g.clone(),
                f: f.clone(),
            });
        }
        let (hd, hc) = (morphisms[hi.idx()].1, morphisms[hi.idx()].2);
        if hd != fd || hc != gc {
            return Err(CatError::LawViolation {
                law: "dom/cod coherence".into(),
                witness: vec![g.clone(), f.clone(), h.clone()],
            });
        }
        let slot = &mut table[gi.idx() * n + fi.idx()];
        if *slot != UNDEF && *slot != hi.0 {
            return Err(CatError::ConflictingComposite {
                g: g.clone(),
                f: f.clone(),
            });
        }
        *slot = hi.0;
    }
    let c = FinCategory::from_parts(
        raw.name.clone(),
        raw.objects.clone(),
        morphisms,
        identity,
        table,
    );
    c.check_laws()?;
    Ok(c)
}

/// Dom/cod swapped, composition reversed; object and morphism indices are kept.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let n = c.morphism_count();
    let mut table = vec![UNDEF; n * n];
    for g in 0..n {
        for f in 0..n {
            table[g * n + f] = c.table[f * n + g];
        }
    }
    let name = match c.name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", c.name),
    };
    FinCategory::from_parts(
        name,
        c.objects.clone(),
        c.morphisms()
            .map(|m| (c.mor_name(m).to_string(), c.cod(m), c.dom(m)))
            .collect(),
        c.identity.clone(),
        table,
    )
}

/// Incrementally assembles a derived category whose objects are known up
/// front and whose morphisms are produced per hom-set.
pub(crate) struct DerivedBuilder {
    name: String,
    objects: Vec<String>,
    pub(crate) morphisms: Vec<(String, Obj, Obj)>,
    identity: Vec<Mor>,
}

impl DerivedBuilder {
    pub(crate) fn new(name: String, objects: Vec<String>) -> Self {
        DerivedBuilder {
            name,
            objects,
            morphisms: Vec::new(),
            identity: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, name: String, d: Obj, c: Obj) -> Mor {
        self.morphisms.push((name, d, c));
        Mor(self.morphisms.len() as u32 - 1)
    }

    pub(crate) fn len(&self) -> usize {
        self.morphisms.len()
    }

    /// Finishes the category given the composite of every composable pair.
    pub(crate) fn finish(
        mut self,
        identity: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Mor,
    ) -> FinCategory {
        self.identity = identity;
        let n = self.morphisms.len();
        let mut table = vec![UNDEF; n * n];
        for f in 0..n {
            for g in 0..n {
                if self.morphisms[f].2 == self.morphisms[g].1 {
                    table[g * n + f] = compose(Mor(g as u32), Mor(f as u32)).0;
                }
            }
        }
        FinCategory::from_parts(
            self.name,
            self.objects,
            self.morphisms,
            self.identity,
            table,
        )
    }
}

/// Slice `C/A`: objects are arrows into `A`, morphisms are commuting triangles.
/// Returns the category with its projection to `C`.
pub fn slice(
    c: &Arc<FinCategory>,
    a: Obj,
    limits: &Limits,
) -> Result<(Arc<FinCategory>, FinFunctor)> {
    let objs: Vec<Mor> = c.into_obj(a).collect();
    let mut b = DerivedBuilder::new(
        format!("{}/{}", c.name(), c.obj_name(a)),
        objs.iter().map(|&p| c.mor_name(p).to_string()).collect(),
    );
    let mut under = Vec::new();
    let mut identity = vec![Mor(0); objs.len()];
    for (pi, &p) in objs.iter().enumerate() {
        for (qi, &q) in objs.iter().enumerate() {
            for &g in c.hom(c.dom(p), c.dom(q)) {
                if c.comp(q, g) == p {
                    let name = if pi == qi && c.is_identity(g) {
                        identity_name(c.mor_name(p))
                    } else {
                        format!("{}/{}", c.mor_name(g), c.mor_name(q))
                    };
                    let m = b.push(name, Obj(pi as u32), Obj(qi as u32));
                    if pi == qi && c.is_identity(g) {
                        identity[pi] = m;
                    }
                    under.push(g);
                }
            }
            limits.check("slice", b.len())?;
        }
    }
    let (index, ends) = triangle_index(&b, &under);
    let s = Arc::new(b.finish(identity, |g, f| {
        let h = c.comp(under[g.idx()], under[f.idx()]);
        index[&(ends[f.idx()].0, ends[g.idx()].1, h)]
    }));
    let obj_map = objs.iter().map(|&p| c.dom(p)).collect();
    let proj = FinFunctor::new_unchecked(
        format!("pi_{}", s.name()),
        s.clone(),
        c.clone(),
        obj_map,
        under,
    );
    Ok((s, proj))
}

/// Coslice `A/C`: objects are arrows out of `A`, morphisms are commuting triangles.
pub fn coslice(
    c: &Arc<FinCategory>,
    a: Obj,
    limits: &Limits,
) -> Result<(Arc<FinCategory>, FinFunctor)> {
    let objs: Vec<Mor> = c.out_of(a).collect();
    let mut b = DerivedBuilder::new(
        format!("{}\\{}", c.obj_name(a), c.name()),
        objs.iter().map(|&p| c.mor_name(p).to_string()).collect(),
    );
    let mut over = Vec::new();
    let mut identity = vec![Mor(0); objs.len()];
    for (pi, &p) in objs.iter().enumerate() {
        for (qi, &q) in objs.iter().enumerate() {
            for &h in c.hom(c.cod(p), c.cod(q)) {
                if c.comp(h, p) == q {
                    let name = if pi == qi && c.is_identity(h) {
                        identity_name(c.mor_name(p))
                    } else {
                        format!("{}@{}", c.mor_name(h), c.mor_name(p))
                    };
                    let m = b.push(name, Obj(pi as u32), Obj(qi as u32));
                    if pi == qi && c.is_identity(h) {
                        identity[pi] = m;
                    }
                    over.push(h);
                }
            }
            limits.check("coslice", b.len())?;
        }
    }
    let (index, ends) = triangle_index(&b, &over);
    let s = Arc::new(b.finish(identity, |g, f| {
        let h = c.comp(over[g.idx()], over[f.idx()]);
        index[&(ends[f.idx()].0, ends[g.idx()].1, h)]
    }));
    let obj_map = objs.iter().map(|&p| c.cod(p)).collect();
    let proj = FinFunctor::new_unchecked(
        format!("pi_{}", s.name()),
        s.clone(),
        c.clone(),
        obj_map,
        over,
    );
    Ok((s, proj))
}

type TriangleIndex = HashMap<(Obj, Obj, Mor), Mor>;

fn triangle_index(b: &DerivedBuilder, under: &[Mor]) -> (TriangleIndex, Vec<(Obj, Obj)>) {
    let index = b
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, (_, d, c))| ((*d, *c, under[i]), Mor(i as u32)))
        .collect();
    let ends = b.morphisms.iter().map(|(_, d, c)| (*d, *c)).collect();
    (index, ends)
}

/// Arrow category: objects are morphisms, morphisms are commuting squares.
pub fn arrow_category(c: &Arc<FinCategory>, limits: &Limits) -> Result<Arc<FinCategory>> {
    let objs: Vec<Mor> = c.morphisms().collect();
    let mut b = DerivedBuilder::new(
        format!("{}^2", c.name()),
        objs.iter().map(|&p| c.mor_name(p).to_string()).collect(),
    );
    let mut squares: Vec<(Mor, Mor)> = Vec::new();
    let mut ends: Vec<(Obj, Obj)> = Vec::new();
    let mut identity = vec![Mor(0); objs.len()];
    for &f in &objs {
        for &g in &objs {
            for &top in c.hom(c.dom(f), c.dom(g)) {
                for &bottom in c.hom(c.cod(f), c.cod(g)) {
                    if c.comp(g, top) == c.comp(bottom, f) {
                        let is_id = f == g && c.is_identity(top) && c.is_identity(bottom);
                        let name = if is_id {
                            identity_name(c.mor_name(f))
                        } else {
                            format!(
                                "sq({}|{}|{}|{})",
                                c.mor_name(f),
                                c.mor_name(g),
                                c.mor_name(top),
                                c.mor_name(bottom)
                            )
                        };
                        let m = b.push(name, Obj(f.0), Obj(g.0));
                        if is_id {
                            identity[f.idx()] = m;
                        }
                        squares.push((top, bottom));
                        ends.push((Obj(f.0), Obj(g.0)));
                    }
                }
            }
            limits.check("arrow category", b.len())?;
        }
    }
    let index: HashMap<(Obj, Obj, Mor, Mor), Mor> = squares
        .iter()
        .zip(&ends)
        .enumerate()
        .map(|(i, (&(t, bt), &(s, d)))| ((s, d, t, bt), Mor(i as u32)))
        .collect();
    Ok(Arc::new(b.finish(identity, |g, f| {
        let (t1, b1) = squares[f.idx()];
        let (t2, b2) = squares[g.idx()];
        index[&(
            ends[f.idx()].0,
            ends[g.idx()].1,
            c.comp(t2, t1),
            c.comp(b2, b1),
        )]
    })))
}

/// The comma category `B↓U`: objects `(A, f: B → U(A))` ordered
/// lexicographically by `A` then `f`; morphisms `u : A₁ → A₂` with
/// `U(u)∘f₁ = f₂`. Returns the category with its projection to `U.source`.
pub fn comma(u: &FinFunctor, b: Obj, limits: &Limits) -> Result<(Arc<FinCategory>, FinFunctor)> {
    let (s, t) = (u.source(), u.target());
    let mut objs: Vec<(Obj, Mor)> = Vec::new();
    for a in s.objects() {
        for &f in t.hom(b, u.on_obj(a)) {
            objs.push((a, f));
        }
    }
    let pos: HashMap<(Obj, Mor), Obj> = objs
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, Obj(i as u32)))
        .collect();
    let obj_name = |&(a, f): &(Obj, Mor)| format!("({}|{})", s.obj_name(a), t.mor_name(f));
    let mut builder = DerivedBuilder::new(
        format!("{}↓{}", t.obj_name(b), u.name()),
        objs.iter().map(obj_name).collect(),
    );
    let mut under = Vec::new();
    let mut identity = vec![Mor(0); objs.len()];
    for (i, &(a, f)) in objs.iter().enumerate() {
        for m in s.out_of(a) {
            let tgt = pos[&(s.cod(m), t.comp(u.on_mor(m), f))];
            let name = if s.is_identity(m) {
                identity_name(&obj_name(&(a, f)))
            } else {
                format!("{}@{}", s.mor_name(m), obj_name(&(a, f)))
            };
            let k = builder.push(name, Obj(i as u32), tgt);
            if s.is_identity(m) {
                identity[i] = k;
            }
            under.push(m);
        }
        limits.check("comma category", builder.len())?;
    }
    let index: HashMap<(Obj, Mor), Mor> = builder
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, (_, d, _))| ((*d, under[i]), Mor(i as u32)))
        .collect();
    let doms: Vec<Obj> = builder.morphisms.iter().map(|m| m.1).collect();
    let cat = Arc::new(builder.finish(identity, |g, f| {
        index[&(doms[f.idx()], s.comp(under[g.idx()], under[f.idx()]))]
    }));
    let proj = FinFunctor::new_unchecked(
        format!("pi_{}", t.obj_name(b)),
        cat.clone(),
        s.clone(),
        objs.iter().map(|&(a, _)| a).collect(),
        under,
    );
    Ok((cat, proj))
}

/// Full-on-nothing subcategory given by masks of kept objects and morphisms,
/// with its inclusion. Fails if the masks are not closed under identities
/// and composition.
pub fn subcategory(
    c: &Arc<FinCategory>,
    name: &str,
    keep_obj: &[bool],
    keep_mor: &[bool],
) -> Result<(Arc<FinCategory>, FinFunctor)> {
    let objs: Vec<Obj> = c.objects().filter(|o| keep_obj[o.idx()]).collect();
    let mut obj_pos = vec![u32::MAX; c.object_count()];
    for (i, o) in objs.iter().enumerate() {
        obj_pos[o.idx()] = i as u32;
    }
    let mors: Vec<Mor> = c
        .morphisms()
        .filter(|&m| keep_mor[m.idx()] && keep_obj[c.dom(m).idx()] && keep_obj[c.cod(m).idx()])
        .collect();
    for &o in &objs {
        if !keep_mor[c.id(o).idx()] {
            return Err(CatError::LawViolation {
                law: "subcategory contains identities".into(),
                witness: vec![c.mor_name(c.id(o)).to_string()],
            });
        }
    }
    let mut mor_pos = vec![u32::MAX; c.morphism_count()];
    for (i, m) in mors.iter().enumerate() {
        mor_pos[m.idx()] = i as u32;
    }
    for &f in &mors {
        for &g in &mors {
            if c.cod(f) == c.dom(g) && mor_pos[c.comp(g, f).idx()] == u32::MAX {
                return Err(CatError::LawViolation {
                    law: "subcategory closed under composition".into(),
                    witness: c.names(&[g, f]),
                });
            }
        }
    }
    let mut b = DerivedBuilder::new(name.to_string(), c.obj_names(&objs));
    for &m in &mors {
        b.push(
            c.mor_name(m).to_string(),
            Obj(obj_pos[c.dom(m).idx()]),
            Obj(obj_pos[c.cod(m).idx()]),
        );
    }
    let identity = objs.iter().map(|&o| Mor(mor_pos[c.id(o).idx()])).collect();
    let sub = Arc::new(b.finish(identity, |g, f| {
        Mor(mor_pos[c.comp(mors[g.idx()], mors[f.idx()]).idx()])
    }));
    let inc = FinFunctor::new_unchecked(format!("incl_{name}"), sub.clone(), c.clone(), objs, mors);
    Ok((sub, inc))
}

/// A functor description as written by a user; identities may be omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawFunctor {
    pub name: String,
    pub obj: Vec<(String, String)>,
    pub mor: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    name: String,
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FinFunctor {
    pub(crate) fn new_unchecked(
        name: String,
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> FinFunctor {
        FinFunctor {
            name,
            source,
            target,
            obj_map,
            mor_map,
        }
    }

    /// Index-level constructor for maps already known to be functorial, such
    /// as those produced by [`crate::enumerate::for_each_functor`].
    pub fn from_maps_unchecked(
        name: &str,
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> FinFunctor {
        debug_assert_eq!(obj_map.len(), source.object_count());
        FinFunctor::new_unchecked(name.to_string(), source, target, obj_map, mor_map)
    }

    /// Index-level constructor; functoriality is checked exhaustively.
    pub fn new(
        name: &str,
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<FinFunctor> {
        let f = FinFunctor::new_unchecked(name.to_string(), source, target, obj_map, mor_map);
        f.check_functorial()?;
        Ok(f)
    }

    pub fn identity(c: &Arc<FinCategory>) -> FinFunctor {
        FinFunctor::new_unchecked(
            format!("id_{}", c.name()),
            c.clone(),
            c.clone(),
            c.objects().collect(),
            c.morphisms().collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    #[inline]
    pub fn on_obj(&self, o: Obj) -> Obj {
        self.obj_map[o.idx()]
    }

    #[inline]
    pub fn on_mor(&self, m: Mor) -> Mor {
        self.mor_map[m.idx()]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor> {
        if !Arc::ptr_eq(&self.target, &other.source) && *self.target != *other.source {
            return Err(CatError::AmbientMismatch(format!(
                "{} does not start where {} ends",
                other.name, self.name
            )));
        }
        Ok(FinFunctor::new_unchecked(
            format!("{}.{}", other.name, self.name),
            self.source.clone(),
            other.target.clone(),
            self.obj_map.iter().map(|&o| other.on_obj(o)).collect(),
            self.mor_map.iter().map(|&m| other.on_mor(m)).collect(),
        ))
    }

    /// The same assignment viewed between opposite categories.
    pub fn opposite(&self) -> FinFunctor {
        FinFunctor::new_unchecked(
            format!("{}^op", self.name),
            Arc::new(opposite(&self.source)),
            Arc::new(opposite(&self.target)),
            self.obj_map.clone(),
            self.mor_map.clone(),
        )
    }

    pub fn is_faithful(&self) -> bool {
        let s = &self.source;
        s.objects().all(|x| {
            s.objects().all(|y| {
                let h = s.hom(x, y);
                h.iter()
                    .enumerate()
                    .all(|(i, &m)| h[i + 1..].iter().all(|&k| self.on_mor(k) != self.on_mor(m)))
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        s.objects().all(|x| {
            s.objects().all(|y| {
                t.hom(self.on_obj(x), self.on_obj(y))
                    .iter()
                    .all(|&g| s.hom(x, y).iter().any(|&m| self.on_mor(m) == g))
            })
        })
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.object_count()];
        self.obj_map
            .iter()
            .all(|o| !std::mem::replace(&mut seen[o.idx()], true))
    }

    pub fn check_functorial(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.obj_map.len() != s.object_count() || self.mor_map.len() != s.morphism_count() {
            return Err(CatError::NotFunctorial {
                reason: "maps do not cover the source".into(),
                witness: vec![],
            });
        }
        if self.obj_map.iter().any(|o| o.idx() >= t.object_count())
            || self.mor_map.iter().any(|m| m.idx() >= t.morphism_count())
        {
            return Err(CatError::NotFunctorial {
                reason: "image outside the target".into(),
                witness: vec![],
            });
        }
        for m in s.morphisms() {
            let fm = self.on_mor(m);
            if t.dom(fm) != self.on_obj(s.dom(m)) || t.cod(fm) != self.on_obj(s.cod(m)) {
                return Err(CatError::NotFunctorial {
                    reason: "dom/cod mismatch".into(),
                    witness: vec![s.mor_name(m).into(), t.mor_name(fm).into()],
                });
            }
        }
        for o in s.objects() {
            if self.on_mor(s.id(o)) != t.id(self.on_obj(o)) {
                return Err(CatError::NotFunctorial {
                    reason: "identity not preserved".into(),
                    witness: vec![s.obj_name(o).into()],
                });
            }
        }
        for f in s.morphisms() {
            for g in s.out_of(s.cod(f)) {
                if self.on_mor(s.comp(g, f)) != t.comp(self.on_mor(g), self.on_mor(f)) {
                    return Err(CatError::NotFunctorial {
                        reason: "composition not preserved".into(),
                        witness: s.names(&[g, f]),
                    });
                }
            }
        }
        Ok(())
    }

    /// Back to a description keyed by names, listing non-identity arrows only.
    pub fn to_raw(&self) -> RawFunctor {
        let (s, t) = (&self.source, &self.target);
        RawFunctor {
            name: self.name.clone(),
            obj: s
                .objects()
                .map(|o| {
                    (
                        s.obj_name(o).to_string(),
                        t.obj_name(self.on_obj(o)).to_string(),
                    )
                })
                .collect(),
            mor: s
                .morphisms()
                .filter(|&m| !s.is_identity(m))
                .map(|m| {
                    (
                        s.mor_name(m).to_string(),
                        t.mor_name(self.on_mor(m)).to_string(),
                    )
                })
                .collect(),
        }
    }
}

/// Resolves a named functor description against its endpoints.
pub fn validate_functor(
    raw: &RawFunctor,
    source: &Arc<FinCategory>,
    target: &Arc<FinCategory>,
) -> Result<FinFunctor> {
    let mut obj_map: Vec<Option<Obj>> = vec![None; source.object_count()];
    for (x, y) in &raw.obj {
        let xi = source.object(x)?;
        let yi = target.object(y)?;
        if obj_map[xi.idx()].replace(yi).is_some_and(|prev| prev != yi) {
            return Err(CatError::DuplicateName(x.clone()));
        }
    }
    let obj_map: Vec<Obj> = obj_map
        .into_iter()
        .enumerate()
        .map(|(i, o)| {
            o.ok_or_else(|| CatError::NotFunctorial {
                reason: "object not mapped".into(),
                witness: vec![source.obj_name(Obj(i as u32)).to_string()],
            })
        })
        .collect::<Result<_>>()?;
    let mut mor_map: Vec<Option<Mor>> = vec![None; source.morphism_count()];
    for (x, y) in &raw.mor {
        let xi = source.morphism(x)?;
        let yi = target.morphism(y)?;
        if mor_map[xi.idx()].replace(yi).is_some_and(|prev| prev != yi) {
            return Err(CatError::DuplicateName(x.clone()));
        }
    }
    for o in source.objects() {
        let slot = &mut mor_map[source.id(o).idx()];
        if slot.is_none() {
            *slot = Some(target.id(obj_map[o.idx()]));
        }
    }
    let mor_map: Vec<Mor> = mor_map
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.ok_or_else(|| CatError::NotFunctorial {
                reason: "morphism not mapped".into(),
                witness: vec![source.mor_name(Mor(i as u32)).to_string()],
            })
        })
        .collect::<Result<_>>()?;
    FinFunctor::new(&raw.name, source.clone(), target.clone(), obj_map, mor_map)
}

/// A diagram is a functor out of a (small, finite) shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub name: String,
    pub functor: FinFunctor,
}

impl Diagram {
    pub fn new(name: &str, functor: FinFunctor) -> Diagram {
        Diagram {
            name: name.to_string(),
            functor,
        }
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        self.functor.source()
    }

    pub fn ambient(&self) -> &Arc<FinCategory> {
        self.functor.target()
    }
}

/// Natural transformation between two functors with common endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub source: FinFunctor,
    pub target: FinFunctor,
    pub components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<Mor>) -> Result<NatTrans> {
        let n = NatTrans {
            source,
            target,
            components,
        };
        n.check_natural()?;
        Ok(n)
    }

    pub fn check_natural(&self) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        if f.source() != g.source() || f.target() != g.target() {
            return Err(CatError::AmbientMismatch(
                "natural transformation endpoints".into(),
            ));
        }
        let (c, d) = (f.source(), f.target());
        for o in c.objects() {
            let k = self.components[o.idx()];
            if d.dom(k) != f.on_obj(o) || d.cod(k) != g.on_obj(o) {
                return Err(CatError::NotNatural {
                    reason: "component has wrong endpoints".into(),
                    witness: vec![c.obj_name(o).into(), d.mor_name(k).into()],
                });
            }
        }
        for m in c.morphisms() {
            let lhs = d.comp(g.on_mor(m), self.components[c.dom(m).idx()]);
            let rhs = d.comp(self.components[c.cod(m).idx()], f.on_mor(m));
            if lhs != rhs {
                return Err(CatError::NotNatural {
                    reason: "naturality square does not commute".into(),
                    witness: vec![c.mor_name(m).into()],
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    fn raw(
        name: &str,
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        compose: &[(&str, &str, &str)],
    ) -> RawCategory {
        RawCategory {
            name: name.into(),
            objects: objects.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect(),
            compose: compose
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect(),
        }
    }

    pub fn one() -> Arc<FinCategory> {
        Arc::new(validate_category(&raw("One", &["star"], &[], &[])).unwrap())
    }

    pub fn two() -> Arc<FinCategory> {
        Arc::new(validate_category(&raw("Two", &["0", "1"], &[("u", "0", "1")], &[])).unwrap())
    }

    pub fn chain3() -> Arc<FinCategory> {
        Arc::new(
            validate_category(&raw(
                "Chain",
                &["0", "1", "2"],
                &[("a", "0", "1"), ("b", "1", "2"), ("c", "0", "2")],
                &[("b", "a", "c")],
            ))
            .unwrap(),
        )
    }

    pub fn d2() -> Arc<FinCategory> {
        Arc::new(validate_category(&raw("D2", &["x", "y"], &[], &[])).unwrap())
    }

    pub fn vposet() -> Arc<FinCategory> {
        Arc::new(
            validate_category(&raw(
                "V",
                &["bot", "a", "b"],
                &[("ia", "bot", "a"), ("ib", "bot", "b")],
                &[],
            ))
            .unwrap(),
        )
    }

    pub fn cospan() -> Arc<FinCategory> {
        Arc::new(
            validate_category(&raw(
                "Cospan",
                &["a", "b", "c"],
                &[("p", "a", "c"), ("q", "b", "c")],
                &[],
            ))
            .unwrap(),
        )
    }

    /// D2 = {a, b} included in the V-poset.
    pub fn d2_into_v() -> FinFunctor {
        let src = Arc::new(validate_category(&raw("D2", &["a", "b"], &[], &[])).unwrap());
        let f = RawFunctor {
            name: "U".into(),
            obj: vec![("a".into(), "a".into()), ("b".into(), "b".into())],
            mor: vec![],
        };
        validate_functor(&f, &src, &vposet()).unwrap()
    }

    pub fn cospan_to_one() -> FinFunctor {
        let c = cospan();
        let one = one();
        FinFunctor::new(
            "K",
            c.clone(),
            one.clone(),
            vec![Obj(0); 3],
            vec![Mor(0); c.morphism_count()],
        )
        .unwrap()
    }

    /// One object `A` with a non-trivial involution `s`.
    pub fn z2() -> Arc<FinCategory> {
        Arc::new(
            validate_category(&raw(
                "Z2",
                &["A"],
                &[("s", "A", "A")],
                &[("s", "s", "id_A")],
            ))
            .unwrap(),
        )
    }
}
