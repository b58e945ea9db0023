//! Exhaustive checks over every category up to a size bound and every
//! functor between two such categories.
//!
//! Categories come from [`enumerate_categories`] and are referred to by
//! their index in that order; functors between a pair are referred to by
//! their position in the order of [`for_each_functor`]. Both orders are
//! deterministic, so a reported witness can be reproduced from its indices.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cones::{limit, DiagramSpec};
use crate::enumerate::{enumerate_categories, for_each_functor};
use crate::error::{CatError, Result};
use crate::family::verify_pi_adjunction;
use crate::fincat::{FinCategory, FinFunctor, Limits, Mor};
use crate::gamma::{
    all_cone_specs, gamma_report, is_local_for_cone, legs_injective, ConeSpec, GammaClass,
};
use crate::multiadjoint::{bc_with_units, is_local_right_adjoint, local_units, LocalUnitRecord};
use crate::multilimits::{
    connected_limit_via_units, multicolimit, multireflective_multicolimit, same_cocones_up_to_iso,
    verify_multicolimit_hom_formula,
};
use crate::orthogonality::{
    candidate_mask, is_stable, orthogonality_lemma_violations, orthogonality_structures,
    MorphismClass, Orthogonality,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub max_obj: usize,
    pub max_mor: usize,
    pub family_bound: usize,
    pub gamma_cones: usize,
    pub limits: Limits,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_obj: 3,
            max_mor: 6,
            family_bound: 4,
            gamma_cones: 2,
            limits: Limits::default(),
        }
    }
}

/// Outcome of one theorem over the corpus.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionStats {
    pub id: u8,
    pub title: &'static str,
    pub checked: u64,
    pub skipped: u64,
    pub violations: u64,
    /// The first violation, with corpus indices.
    pub witness: Option<String>,
    pub seconds: f64,
}

impl CriterionStats {
    fn new(id: u8, title: &'static str) -> Self {
        CriterionStats {
            id,
            title,
            checked: 0,
            skipped: 0,
            violations: 0,
            witness: None,
            seconds: 0.0,
        }
    }

    fn fail(&mut self, witness: impl FnOnce() -> String) {
        self.violations += 1;
        if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusReport {
    pub config: CorpusConfig,
    pub categories: usize,
    pub functors: u64,
    pub local_right_adjoints: u64,
    pub full_multireflective: u64,
    pub criteria: Vec<CriterionStats>,
    pub seconds: f64,
}

impl CorpusReport {
    pub fn holds(&self) -> bool {
        self.criteria.iter().all(|c| c.holds())
    }

    pub fn criterion(&self, id: u8) -> Option<&CriterionStats> {
        self.criteria.iter().find(|c| c.id == id)
    }
}

pub const BECK_CHEVALLEY: u8 = 1;
pub const STABLE_IS_LRA: u8 = 2;
pub const PI_ADJUNCTION: u8 = 3;
pub const MULTIREFLECTIVE: u8 = 4;
pub const UNIT_RIGIDITY: u8 = 5;
pub const GAMMA: u8 = 6;
pub const ORTHOGONALITY: u8 = 9;

/// Small diagrams used for the multireflective checks: the empty diagram,
/// single objects, pairs of objects, parallel pairs, spans and cospans.
pub fn small_diagrams(c: &FinCategory) -> Vec<DiagramSpec> {
    let mut out = vec![DiagramSpec::default()];
    for x in c.objects() {
        out.push(DiagramSpec {
            nodes: vec![x],
            edges: Vec::new(),
        });
    }
    for x in c.objects() {
        for y in c.objects().filter(|&y| y >= x) {
            out.push(DiagramSpec {
                nodes: vec![x, y],
                edges: Vec::new(),
            });
            let h = c.hom(x, y);
            for (i, &a) in h.iter().enumerate() {
                for &b in &h[i + 1..] {
                    out.push(DiagramSpec {
                        nodes: vec![x, y],
                        edges: vec![(0, 1, a), (0, 1, b)],
                    });
                }
            }
        }
    }
    let nonid: Vec<Mor> = c.morphisms().filter(|&m| !c.is_identity(m)).collect();
    for (i, &f) in nonid.iter().enumerate() {
        for &g in &nonid[i + 1..] {
            if c.dom(f) == c.dom(g) {
                out.push(DiagramSpec {
                    nodes: vec![c.dom(f), c.cod(f), c.cod(g)],
                    edges: vec![(0, 1, f), (0, 2, g)],
                });
            }
            if c.cod(f) == c.cod(g) {
                out.push(DiagramSpec {
                    nodes: vec![c.dom(f), c.dom(g), c.cod(f)],
                    edges: vec![(0, 2, f), (1, 2, g)],
                });
            }
        }
    }
    out
}

fn functor_label(u: &FinFunctor, si: usize, ti: usize, k: u64) -> String {
    format!(
        "functor #{k} from C{si} to C{ti} ({} -> {})",
        describe_maps(u),
        u.target().name()
    )
}

fn describe_maps(u: &FinFunctor) -> String {
    let (s, t) = (u.source(), u.target());
    s.objects()
        .map(|o| format!("{}=>{}", s.obj_name(o), t.obj_name(u.on_obj(o))))
        .chain(
            s.morphisms()
                .filter(|&m| !s.is_identity(m))
                .map(|m| format!("{}=>{}", s.mor_name(m), t.mor_name(u.on_mor(m)))),
        )
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_beck_chevalley(
    u: &FinFunctor,
    records: &[LocalUnitRecord],
    stats: &mut CriterionStats,
    label: &dyn Fn() -> String,
) {
    let s = u.source();
    for rec in records {
        for &(a, f) in &rec.comma.objects {
            for m in s.out_of(a) {
                stats.checked += 1;
                if let Err(e) = bc_with_units(u, rec, m, f) {
                    stats.fail(|| format!("{}: {e}", label()));
                }
            }
        }
    }
}

fn check_rigidity(
    u: &FinFunctor,
    records: &[LocalUnitRecord],
    stats: &mut CriterionStats,
    label: &dyn Fn() -> String,
) {
    let s = u.source();
    for rec in records {
        let mask = candidate_mask(u, rec.base);
        for &(x, y, m) in &rec.comma.arrows {
            if mask[x as usize] && mask[y as usize] {
                stats.checked += 1;
                if !s.is_iso(m) {
                    stats
                        .fail(|| format!("{}: {} connects two candidates", label(), s.mor_name(m)));
                }
            }
        }
    }
}

fn check_multireflective(
    u: &FinFunctor,
    limits: &Limits,
    stats: &mut CriterionStats,
    label: &dyn Fn() -> String,
) {
    let s = u.source();
    for d in small_diagrams(s) {
        match multireflective_multicolimit(u, &d) {
            Err(CatError::NoTargetColimit) => stats.skipped += 1,
            Err(e) => stats.fail(|| format!("{}: diagram {:?}: {e}", label(), d)),
            Ok(fam) => {
                stats.checked += 1;
                let agrees = match multicolimit(s, &d, limits) {
                    Ok(direct) => {
                        same_cocones_up_to_iso(s, &fam.members, &direct.members)
                            && verify_multicolimit_hom_formula(s, &d, &fam).holds()
                    }
                    Err(_) => false,
                };
                if !agrees {
                    stats.fail(|| format!("{}: multicolimit mismatch on diagram {:?}", label(), d));
                }
            }
        }
        if d.is_connected() {
            match connected_limit_via_units(u, &d) {
                Err(CatError::NoTargetLimit) => stats.skipped += 1,
                Err(e) => stats.fail(|| format!("{}: connected limit of {:?}: {e}", label(), d)),
                Ok(cone) => {
                    stats.checked += 1;
                    let direct = limit(s, &d).map(|l| s.iso_between(l.apex, cone.apex).is_some());
                    if direct != Some(true) {
                        stats.fail(|| {
                            format!("{}: connected limit mismatch on diagram {:?}", label(), d)
                        });
                    }
                }
            }
        }
    }
}

/// Runs the whole theorem suite. Criteria 1 to 5 share a single pass over
/// all functors; criteria 6 and 9 run once per category.
pub fn run_corpus(config: &CorpusConfig) -> Result<CorpusReport> {
    let start = Instant::now();
    let cats = enumerate_categories(config.max_obj, config.max_mor);
    let mut bc = CriterionStats::new(BECK_CHEVALLEY, "Beck-Chevalley mates are isomorphisms");
    let mut st = CriterionStats::new(
        STABLE_IS_LRA,
        "stable functors are the local right adjoints",
    );
    let mut pi = CriterionStats::new(PI_ADJUNCTION, "free product extension is a right adjoint");
    let mut mr = CriterionStats::new(
        MULTIREFLECTIVE,
        "full multireflective subcategories have multicolimits",
    );
    let mut ur = CriterionStats::new(UNIT_RIGIDITY, "arrows between local units are isomorphisms");
    let (mut functors, mut lra, mut full) = (0u64, 0u64, 0u64);
    let mut spent = [Duration::ZERO; 5];
    for (si, s) in cats.iter().enumerate() {
        for (ti, t) in cats.iter().enumerate() {
            let mut k = 0u64;
            let mut error = None;
            for_each_functor(s, t, |o, m| {
                if error.is_some() {
                    return;
                }
                let index = k;
                k += 1;
                functors += 1;
                let u = FinFunctor::from_maps_unchecked(
                    "F",
                    s.clone(),
                    t.clone(),
                    o.to_vec(),
                    m.to_vec(),
                );
                let label = || functor_label(&u, si, ti, index);
                let clock = Instant::now();
                let is_lra = is_local_right_adjoint(&u).holds();
                let is_st = is_stable(&u).holds();
                st.checked += 1;
                if is_lra != is_st {
                    st.fail(|| {
                        format!("{}: local right adjoint {is_lra}, stable {is_st}", label())
                    });
                }
                spent[1] += clock.elapsed();
                if !is_lra {
                    return;
                }
                lra += 1;
                let clock = Instant::now();
                let records: Vec<LocalUnitRecord> =
                    match t.objects().map(|b| local_units(&u, b)).collect() {
                        Ok(r) => r,
                        Err(_) => {
                            bc.fail(|| format!("{}: local units missing", label()));
                            return;
                        }
                    };
                check_beck_chevalley(&u, &records, &mut bc, &label);
                spent[0] += clock.elapsed();
                let clock = Instant::now();
                check_rigidity(&u, &records, &mut ur, &label);
                spent[4] += clock.elapsed();
                let clock = Instant::now();
                pi.checked += 1;
                match verify_pi_adjunction(&u, config.family_bound, &config.limits) {
                    Ok(r) if r.holds() => {}
                    Ok(r) => pi.fail(|| format!("{}: {}", label(), r.violations.join("; "))),
                    Err(e) => error = Some(e),
                }
                spent[2] += clock.elapsed();
                if u.is_full() && u.is_faithful() && u.is_injective_on_objects() {
                    full += 1;
                    let clock = Instant::now();
                    check_multireflective(&u, &config.limits, &mut mr, &label);
                    spent[3] += clock.elapsed();
                }
            });
            if let Some(e) = error {
                return Err(e);
            }
        }
    }
    for (stats, d) in [&mut bc, &mut st, &mut pi, &mut mr, &mut ur]
        .into_iter()
        .zip(spent)
    {
        stats.seconds = d.as_secs_f64();
    }
    let gamma = gamma_suite(&cats, config)?;
    let orth = orthogonality_suite(&cats, config)?;
    let mut criteria = vec![bc, st, pi, mr, ur, gamma, orth];
    criteria.sort_by_key(|c| c.id);
    Ok(CorpusReport {
        config: *config,
        categories: cats.len(),
        functors,
        local_right_adjoints: lra,
        full_multireflective: full,
        criteria,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Object and morphism masks of the local subcategory determined by a cone.
struct ConeData {
    spec: ConeSpec,
    local: Vec<bool>,
    strong: Vec<bool>,
    right: MorphismClass,
}

fn and(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| *x && *y).collect()
}

/// Every class of at most `config.gamma_cones` cones on every category,
/// both plain and strong. Classes yielding the same subcategory share one
/// verdict.
pub fn gamma_suite(cats: &[Arc<FinCategory>], config: &CorpusConfig) -> Result<CriterionStats> {
    let clock = Instant::now();
    let mut stats = CriterionStats::new(
        GAMMA,
        "inclusions of local objects are stable multi-adjoints",
    );
    for (ci, c) in cats.iter().enumerate() {
        let table = Orthogonality::new(c);
        let data: Vec<ConeData> = all_cone_specs(c)
            .into_iter()
            .map(|spec| {
                let local: Vec<bool> = c
                    .objects()
                    .map(|a| is_local_for_cone(c, &spec, a))
                    .collect();
                let strong = c
                    .objects()
                    .map(|a| local[a.idx()] && legs_injective(c, &spec, a))
                    .collect();
                let right = table.right_of(&MorphismClass::new(c, spec.legs.iter().copied()));
                ConeData {
                    spec,
                    local,
                    strong,
                    right,
                }
            })
            .collect();
        let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
        if config.gamma_cones >= 1 {
            choices.extend((0..data.len()).map(|i| vec![i]));
        }
        if config.gamma_cones >= 2 {
            for i in 0..data.len() {
                for j in i + 1..data.len() {
                    choices.push(vec![i, j]);
                }
            }
        }
        let mut verdicts: HashMap<(bool, Vec<bool>, Vec<bool>), bool> = HashMap::new();
        for choice in &choices {
            let mut right = MorphismClass::all(c);
            let mut local = vec![true; c.object_count()];
            let mut strong = vec![true; c.object_count()];
            for &i in choice {
                right = MorphismClass::from_mask(and(right.mask(), data[i].right.mask()));
                local = and(&local, &data[i].local);
                strong = and(&strong, &data[i].strong);
            }
            for (flag, objects) in [(false, local), (true, strong)] {
                stats.checked += 1;
                let key = (flag, objects, right.mask().to_vec());
                let ok = match verdicts.get(&key) {
                    Some(&v) => v,
                    None => {
                        let gamma = GammaClass::new(
                            c,
                            choice.iter().map(|&i| data[i].spec.clone()).collect(),
                        )?;
                        let report = gamma_report(c, &gamma, flag, false, &config.limits)?;
                        let v = report.holds();
                        if !v {
                            stats.fail(|| {
                                format!(
                                    "C{ci}, cones {:?}, strong {flag}: fails {}",
                                    gamma
                                        .cones
                                        .iter()
                                        .map(|k| (
                                            c.obj_name(k.vertex).to_string(),
                                            c.names(&k.legs)
                                        ))
                                        .collect::<Vec<_>>(),
                                    report.failures().join(", ")
                                )
                            });
                            stats.violations -= 1;
                        }
                        verdicts.insert(key, v);
                        v
                    }
                };
                if !ok {
                    stats.violations += 1;
                }
            }
        }
    }
    stats.seconds = clock.elapsed().as_secs_f64();
    Ok(stats)
}

/// The factorization constraints and the equalization corollaries for every
/// orthogonality structure on every category.
pub fn orthogonality_suite(
    cats: &[Arc<FinCategory>],
    config: &CorpusConfig,
) -> Result<CriterionStats> {
    let clock = Instant::now();
    let mut stats = CriterionStats::new(
        ORTHOGONALITY,
        "orthogonality constrains factorizations and parallel pairs",
    );
    for (ci, c) in cats.iter().enumerate() {
        for (l, r) in orthogonality_structures(c, &config.limits)? {
            stats.checked += 1;
            let v = orthogonality_lemma_violations(c, &l, &r);
            if let Some(first) = v.first() {
                stats.fail(|| {
                    format!(
                        "C{ci}, left {:?}, right {:?}: {first:?}",
                        c.names(&l.members()),
                        c.names(&r.members())
                    )
                });
            }
        }
    }
    stats.seconds = clock.elapsed().as_secs_f64();
    Ok(stats)
}
