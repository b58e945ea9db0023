//! Exhaustive enumeration of small categories up to isomorphism, of functors
//! between two categories, and isomorphism search.

use std::collections::HashSet;
use std::sync::Arc;

use crate::fincat::{FinCategory, FinFunctor, Mor, Obj};

const UNDEF: u32 = u32::MAX;

/// Index-level category shape used during enumeration: identities are
/// morphisms `0..nobj`, non-identity arrows follow sorted by `(dom, cod)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Code {
    nobj: u32,
    ends: Vec<(u32, u32)>,
    table: Vec<u32>,
}

impl Code {
    fn nmor(&self) -> usize {
        self.nobj as usize + self.ends.len()
    }

    fn dom(&self, m: u32) -> u32 {
        if m < self.nobj {
            m
        } else {
            self.ends[(m - self.nobj) as usize].0
        }
    }

    fn cod(&self, m: u32) -> u32 {
        if m < self.nobj {
            m
        } else {
            self.ends[(m - self.nobj) as usize].1
        }
    }

    fn into_category(self, index: usize) -> FinCategory {
        let arrows: Vec<(Obj, Obj)> = self.ends.iter().map(|&(d, c)| (Obj(d), Obj(c))).collect();
        FinCategory::from_table(
            &format!("C{index}"),
            self.nobj as usize,
            &arrows,
            self.table,
        )
        .expect("enumerated tables satisfy the category laws")
    }

    fn key(&self) -> Vec<u8> {
        let mut k = Vec::with_capacity(2 * self.ends.len() + self.table.len());
        for &(d, c) in &self.ends {
            k.push(d as u8);
            k.push(c as u8);
        }
        k.extend(self.table.iter().map(|&v| v as u8));
        k
    }

    /// Every relabeling over object permutations and permutations inside
    /// each hom-set, with repetitions.
    fn orbit(&self) -> Vec<Code> {
        let n = self.nobj as usize;
        let mut out = Vec::new();
        for perm in permutations(n) {
            // arrows grouped by their relabeled hom-set
            let mut order: Vec<usize> = (0..self.ends.len()).collect();
            order.sort_by_key(|&i| {
                let (d, c) = self.ends[i];
                (perm[d as usize], perm[c as usize])
            });
            let mut groups: Vec<(usize, usize)> = Vec::new();
            let mut i = 0;
            while i < order.len() {
                let key = |k: usize| {
                    let (d, c) = self.ends[order[k]];
                    (perm[d as usize], perm[c as usize])
                };
                let mut j = i + 1;
                while j < order.len() && key(j) == key(i) {
                    j += 1;
                }
                groups.push((i, j));
                i = j;
            }
            let group_perms: Vec<Vec<Vec<usize>>> =
                groups.iter().map(|&(a, b)| permutations(b - a)).collect();
            let mut choice = vec![0usize; groups.len()];
            loop {
                // new position of each old arrow
                let mut new_pos = vec![0u32; self.ends.len()];
                for (gi, &(a, _)) in groups.iter().enumerate() {
                    let p = &group_perms[gi][choice[gi]];
                    for (k, &pk) in p.iter().enumerate() {
                        new_pos[order[a + k]] = (a + pk) as u32;
                    }
                }
                let relabel = |m: u32| -> u32 {
                    if m < self.nobj {
                        perm[m as usize] as u32
                    } else {
                        self.nobj + new_pos[(m - self.nobj) as usize]
                    }
                };
                let nm = self.nmor();
                let mut ends = vec![(0, 0); self.ends.len()];
                for (old, &(d, c)) in self.ends.iter().enumerate() {
                    ends[new_pos[old] as usize] =
                        (perm[d as usize] as u32, perm[c as usize] as u32);
                }
                let mut table = vec![UNDEF; nm * nm];
                for g in 0..nm as u32 {
                    for f in 0..nm as u32 {
                        let v = self.table[g as usize * nm + f as usize];
                        if v != UNDEF {
                            table[relabel(g) as usize * nm + relabel(f) as usize] = relabel(v);
                        }
                    }
                }
                let cand = Code {
                    nobj: self.nobj,
                    ends,
                    table,
                };
                out.push(cand);
                // advance the mixed-radix counter over hom-set permutations
                let mut k = 0;
                loop {
                    if k == choice.len() {
                        break;
                    }
                    choice[k] += 1;
                    if choice[k] < group_perms[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All hom-count matrices over `nobj` objects with at most `budget`
/// non-identity arrows, as sorted endpoint lists.
fn arrow_layouts(nobj: usize, budget: usize) -> Vec<Vec<(u32, u32)>> {
    let pairs: Vec<(u32, u32)> = (0..nobj as u32)
        .flat_map(|d| (0..nobj as u32).map(move |c| (d, c)))
        .collect();
    let mut out = Vec::new();
    fn go(
        pairs: &[(u32, u32)],
        k: usize,
        left: usize,
        cur: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if k == pairs.len() {
            out.push(cur.clone());
            return;
        }
        for count in 0..=left {
            for _ in 0..count {
                cur.push(pairs[k]);
            }
            go(pairs, k + 1, left - count, cur, out);
            for _ in 0..count {
                cur.pop();
            }
        }
    }
    go(&pairs, 0, budget, &mut Vec::new(), &mut out);
    out
}

/// Completes a layout into every associative composition table.
fn tables_for_layout(nobj: u32, ends: &[(u32, u32)], mut emit: impl FnMut(Code)) {
    let code = Code {
        nobj,
        ends: ends.to_vec(),
        table: Vec::new(),
    };
    let nm = code.nmor();
    let mut homs: Vec<Vec<u32>> = vec![Vec::new(); (nobj * nobj) as usize];
    for m in 0..nm as u32 {
        homs[(code.dom(m) * nobj + code.cod(m)) as usize].push(m);
    }
    let mut table = vec![UNDEF; nm * nm];
    for m in 0..nm as u32 {
        table[code.cod(m) as usize * nm + m as usize] = m;
        table[m as usize * nm + code.dom(m) as usize] = m;
    }
    let mut slots: Vec<(u32, u32)> = Vec::new();
    for f in nobj..nm as u32 {
        for g in nobj..nm as u32 {
            if code.cod(f) == code.dom(g) {
                slots.push((g, f));
            }
        }
    }
    // closing small blocks first lets associativity prune early
    slots.sort_by_key(|&(g, f)| (g.max(f), g, f));
    if slots
        .iter()
        .any(|&(g, f)| homs[(code.dom(f) * nobj + code.cod(g)) as usize].is_empty())
    {
        return;
    }
    let nonid: Vec<u32> = (nobj..nm as u32).collect();
    // every associativity triple is checked when its last entry is assigned
    let assoc_ok = |table: &[u32], g: u32, f: u32| -> bool {
        let at = |x: u32, y: u32| table[x as usize * nm + y as usize];
        let v = at(g, f);
        let clash = |l: u32, r: u32| l != UNDEF && r != UNDEF && l != r;
        for &h in &nonid {
            if code.dom(h) == code.cod(g) {
                let hg = at(h, g);
                if hg != UNDEF && clash(at(h, v), at(hg, f)) {
                    return false;
                }
            }
            if code.cod(h) == code.dom(f) {
                let fh = at(f, h);
                if fh != UNDEF && clash(at(g, fh), at(v, h)) {
                    return false;
                }
            }
        }
        for &y in &nonid {
            for &x in &nonid {
                if code.cod(x) != code.dom(y) {
                    continue;
                }
                let yx = at(y, x);
                if yx == f && code.dom(g) == code.cod(y) {
                    let gy = at(g, y);
                    if gy != UNDEF && clash(v, at(gy, x)) {
                        return false;
                    }
                }
                if yx == g && code.cod(f) == code.dom(x) {
                    let xf = at(x, f);
                    if xf != UNDEF && clash(at(y, xf), v) {
                        return false;
                    }
                }
            }
        }
        true
    };
    fn go(
        k: usize,
        slots: &[(u32, u32)],
        table: &mut Vec<u32>,
        nm: usize,
        options: &dyn Fn(u32, u32) -> Vec<u32>,
        assoc_ok: &dyn Fn(&[u32], u32, u32) -> bool,
        emit: &mut dyn FnMut(&[u32]),
    ) {
        if k == slots.len() {
            emit(table);
            return;
        }
        let (g, f) = slots[k];
        for h in options(g, f) {
            table[g as usize * nm + f as usize] = h;
            if assoc_ok(table, g, f) {
                go(k + 1, slots, table, nm, options, assoc_ok, emit);
            }
        }
        table[g as usize * nm + f as usize] = UNDEF;
    }
    let options = |g: u32, f: u32| homs[(code.dom(f) * nobj + code.cod(g)) as usize].clone();
    let mut sink = |t: &[u32]| {
        emit(Code {
            nobj,
            ends: ends.to_vec(),
            table: t.to_vec(),
        })
    };
    go(0, &slots, &mut table, nm, &options, &assoc_ok, &mut sink);
}

/// Every category with at most `max_obj` objects and at most `max_mor`
/// morphisms (identities included), one per isomorphism class.
///
/// Order: by object count, then morphism count, then the canonical code.
/// Categories are named `C<index>` after their position in this order.
pub fn enumerate_categories(max_obj: usize, max_mor: usize) -> Vec<Arc<FinCategory>> {
    let mut codes: Vec<Code> = Vec::new();
    for nobj in 0..=max_obj {
        if nobj > max_mor {
            break;
        }
        // each class is expanded into its full orbit once, so later labelings
        // of it are rejected by a lookup
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut batch: Vec<Code> = Vec::new();
        for layout in arrow_layouts(nobj, max_mor - nobj) {
            tables_for_layout(nobj as u32, &layout, |code| {
                if seen.contains(&code.key()) {
                    return;
                }
                let orbit = code.orbit();
                for c in &orbit {
                    seen.insert(c.key());
                }
                batch.push(
                    orbit
                        .into_iter()
                        .min()
                        .expect("orbit contains the code itself"),
                );
            });
        }
        batch.sort_by(|a, b| (a.ends.len(), a).cmp(&(b.ends.len(), b)));
        codes.extend(batch);
    }
    codes
        .into_iter()
        .enumerate()
        .map(|(i, c)| Arc::new(c.into_category(i)))
        .collect()
}

/// Calls `visit` with the object and morphism maps of every functor
/// `source → target`, in lexicographic order of the maps.
pub fn for_each_functor(
    source: &FinCategory,
    target: &FinCategory,
    mut visit: impl FnMut(&[Obj], &[Mor]),
) {
    let ns = source.object_count();
    let nonid: Vec<Mor> = source
        .morphisms()
        .filter(|&m| !source.is_identity(m))
        .collect();
    let mut obj_map = vec![Obj(0); ns];
    let mut mor_map = vec![Mor(u32::MAX); source.morphism_count()];
    if target.object_count() == 0 {
        if ns == 0 {
            visit(&obj_map, &mor_map);
        }
        return;
    }
    // pairs (g, f) of non-identity arrows whose constraint is checked once
    // the later of the two is assigned
    let mut checks: Vec<Vec<(Mor, Mor)>> = vec![Vec::new(); nonid.len()];
    for (i, &f) in nonid.iter().enumerate() {
        for (j, &g) in nonid.iter().enumerate() {
            if source.cod(f) == source.dom(g) {
                checks[i.max(j)].push((g, f));
            }
        }
    }
    struct Ctx<'a> {
        s: &'a FinCategory,
        t: &'a FinCategory,
        nonid: &'a [Mor],
        checks: &'a [Vec<(Mor, Mor)>],
    }
    fn mors(
        ctx: &Ctx,
        k: usize,
        obj_map: &[Obj],
        mor_map: &mut Vec<Mor>,
        visit: &mut dyn FnMut(&[Obj], &[Mor]),
    ) {
        if k == ctx.nonid.len() {
            visit(obj_map, mor_map);
            return;
        }
        let m = ctx.nonid[k];
        let (d, c) = (obj_map[ctx.s.dom(m).idx()], obj_map[ctx.s.cod(m).idx()]);
        for &img in ctx.t.hom(d, c) {
            mor_map[m.idx()] = img;
            let ok = ctx.checks[k].iter().all(|&(g, f)| {
                let h = ctx.s.comp(g, f);
                let hh = if ctx.s.is_identity(h) {
                    ctx.t.id(obj_map[ctx.s.dom(h).idx()])
                } else {
                    mor_map[h.idx()]
                };
                // composites not yet assigned are checked when they are
                hh.0 == u32::MAX || ctx.t.comp(mor_map[g.idx()], mor_map[f.idx()]) == hh
            }) && composites_consistent(ctx, k, obj_map, mor_map);
            if ok {
                mors(ctx, k + 1, obj_map, mor_map, visit);
            }
        }
        mor_map[m.idx()] = Mor(u32::MAX);
    }
    // a freshly assigned arrow may itself be the composite of earlier pairs
    fn composites_consistent(ctx: &Ctx, k: usize, _obj_map: &[Obj], mor_map: &[Mor]) -> bool {
        let m = ctx.nonid[k];
        ctx.nonid[..k].iter().all(|&f| {
            ctx.nonid[..k].iter().all(|&g| {
                ctx.s.cod(f) != ctx.s.dom(g)
                    || ctx.s.comp(g, f) != m
                    || ctx.t.comp(mor_map[g.idx()], mor_map[f.idx()]) == mor_map[m.idx()]
            })
        })
    }
    fn objs(
        ctx: &Ctx,
        k: usize,
        obj_map: &mut Vec<Obj>,
        mor_map: &mut Vec<Mor>,
        visit: &mut dyn FnMut(&[Obj], &[Mor]),
    ) {
        if k == obj_map.len() {
            for o in ctx.s.objects() {
                mor_map[ctx.s.id(o).idx()] = ctx.t.id(obj_map[o.idx()]);
            }
            mors(ctx, 0, obj_map, mor_map, visit);
            return;
        }
        for y in ctx.t.objects() {
            obj_map[k] = y;
            objs(ctx, k + 1, obj_map, mor_map, visit);
        }
    }
    let ctx = Ctx {
        s: source,
        t: target,
        nonid: &nonid,
        checks: &checks,
    };
    objs(&ctx, 0, &mut obj_map, &mut mor_map, &mut visit);
}

/// Every functor `source → target`, named `F<index>`.
pub fn functors(source: &Arc<FinCategory>, target: &Arc<FinCategory>) -> Vec<FinFunctor> {
    let mut out = Vec::new();
    for_each_functor(source, target, |o, m| {
        out.push(FinFunctor::new_unchecked(
            format!("F{}", out.len()),
            source.clone(),
            target.clone(),
            o.to_vec(),
            m.to_vec(),
        ));
    });
    out
}

/// An isomorphism of categories `c → d`, if one exists.
pub fn find_isomorphism(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Option<FinFunctor> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return None;
    }
    let mut found = None;
    for_each_functor(c, d, |o, m| {
        if found.is_some() {
            return;
        }
        let mut seen = vec![false; d.morphism_count()];
        let bijective = m
            .iter()
            .all(|x| !std::mem::replace(&mut seen[x.idx()], true));
        let mut seen_o = vec![false; d.object_count()];
        if bijective
            && o.iter()
                .all(|x| !std::mem::replace(&mut seen_o[x.idx()], true))
        {
            found = Some(FinFunctor::new_unchecked(
                "iso".into(),
                c.clone(),
                d.clone(),
                o.to_vec(),
                m.to_vec(),
            ));
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;

    fn count(max_obj: usize, max_mor: usize) -> usize {
        enumerate_categories(max_obj, max_mor).len()
    }

    #[test]
    fn monoid_counts_match_known_values() {
        // monoids of order 1..=4 up to isomorphism: 1, 2, 7, 35
        let monoids = |k| {
            enumerate_categories(1, k)
                .iter()
                .filter(|c| c.object_count() == 1)
                .count()
        };
        assert_eq!(monoids(1), 1);
        assert_eq!(monoids(2), 3);
        assert_eq!(monoids(3), 10);
        assert_eq!(monoids(4), 45);
    }

    #[test]
    fn small_counts() {
        // empty category, 𝟙
        assert_eq!(count(1, 1), 2);
        // empty; monoids of order ≤ 3; D2; walking arrow and 𝟙 beside a monoid of order 2
        assert_eq!(count(2, 3), 1 + 10 + 1 + 3);
    }

    #[test]
    fn every_enumerated_table_is_a_category() {
        for c in enumerate_categories(2, 4) {
            c.check_laws().unwrap();
        }
    }

    #[test]
    fn functor_enumeration_matches_brute_force() {
        for (s, t) in [
            (two(), chain3()),
            (chain3(), two()),
            (z2(), z2()),
            (cospan(), vposet()),
        ] {
            let fs = functors(&s, &t);
            for f in &fs {
                f.check_functorial().unwrap();
            }
            // brute force over all assignments respecting dom/cod
            let mut brute = 0;
            let ms: Vec<Mor> = s.morphisms().collect();
            let total_obj = t.object_count().pow(s.object_count() as u32);
            for code in 0..total_obj {
                let mut o = Vec::new();
                let mut x = code;
                for _ in 0..s.object_count() {
                    o.push(Obj((x % t.object_count()) as u32));
                    x /= t.object_count();
                }
                let mut stack = vec![Vec::<Mor>::new()];
                for &m in &ms {
                    let opts = t.hom(o[s.dom(m).idx()], o[s.cod(m).idx()]);
                    stack = stack
                        .into_iter()
                        .flat_map(|p| {
                            opts.iter().map(move |&k| {
                                let mut q = p.clone();
                                q.push(k);
                                q
                            })
                        })
                        .collect();
                }
                for mm in stack {
                    if FinFunctor::new("t", s.clone(), t.clone(), o.clone(), mm).is_ok() {
                        brute += 1;
                    }
                }
            }
            assert_eq!(fs.len(), brute);
        }
    }

    #[test]
    fn isomorphism_search() {
        assert!(find_isomorphism(&two(), &two()).is_some());
        assert!(find_isomorphism(&two(), &d2()).is_none());
        let op = Arc::new(crate::fincat::opposite(&two()));
        assert!(find_isomorphism(&two(), &op).is_some());
    }
}
