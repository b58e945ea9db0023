//! Cones over finite diagrams presented as labelled graphs in an ambient
//! category, and brute-force limit and colimit search.

use crate::fincat::{opposite, FinCategory, FinFunctor, Mor, Obj};

/// A diagram given by its image: one ambient object per node and one ambient
/// arrow per edge `(from, to, arrow)`. Identity edges may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiagramSpec {
    pub nodes: Vec<Obj>,
    pub edges: Vec<(usize, usize, Mor)>,
}

impl DiagramSpec {
    pub fn of_functor(f: &FinFunctor) -> DiagramSpec {
        let s = f.source();
        DiagramSpec {
            nodes: s.objects().map(|o| f.on_obj(o)).collect(),
            edges: s
                .morphisms()
                .filter(|&m| !s.is_identity(m))
                .map(|m| (s.dom(m).idx(), s.cod(m).idx(), f.on_mor(m)))
                .collect(),
        }
    }

    /// The same diagram read in the opposite category.
    pub fn reversed(&self) -> DiagramSpec {
        DiagramSpec {
            nodes: self.nodes.clone(),
            edges: self.edges.iter().map(|&(i, j, m)| (j, i, m)).collect(),
        }
    }

    /// Image under a functor.
    pub fn image(&self, u: &FinFunctor) -> DiagramSpec {
        DiagramSpec {
            nodes: self.nodes.iter().map(|&o| u.on_obj(o)).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j, m)| (i, j, u.on_mor(m)))
                .collect(),
        }
    }

    /// Nodes linked by a zigzag of edges form one block; the empty diagram
    /// is not connected.
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.nodes.len());
        for &(i, j, _) in &self.edges {
            uf.union(i, j);
        }
        (1..self.nodes.len()).all(|k| uf.equiv(0, k))
    }
}

/// A cone with the given apex: one leg per node. Read in the opposite
/// category the same data is a cocone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub apex: Obj,
    pub legs: Vec<Mor>,
}

/// Every cone with apex `x`, legs chosen in declaration order.
pub fn cones_at(c: &FinCategory, d: &DiagramSpec, x: Obj) -> Vec<Cone> {
    let mut out = Vec::new();
    let mut legs = Vec::with_capacity(d.nodes.len());
    fn go(c: &FinCategory, d: &DiagramSpec, x: Obj, legs: &mut Vec<Mor>, out: &mut Vec<Cone>) {
        let k = legs.len();
        if k == d.nodes.len() {
            out.push(Cone {
                apex: x,
                legs: legs.clone(),
            });
            return;
        }
        for &l in c.hom(x, d.nodes[k]) {
            legs.push(l);
            let ok = d
                .edges
                .iter()
                .all(|&(i, j, m)| i.max(j) != k || c.comp(m, legs[i]) == legs[j]);
            if ok {
                go(c, d, x, legs, out);
            }
            legs.pop();
        }
    }
    go(c, d, x, &mut legs, &mut out);
    out
}

/// All cones, ordered by apex then legs.
pub fn all_cones(c: &FinCategory, d: &DiagramSpec) -> Vec<Cone> {
    c.objects().flat_map(|x| cones_at(c, d, x)).collect()
}

/// Arrows `m : other.apex → through.apex` with `through.legs[i] ∘ m = other.legs[i]`.
pub fn mediators(c: &FinCategory, through: &Cone, other: &Cone) -> Vec<Mor> {
    c.hom(other.apex, through.apex)
        .iter()
        .copied()
        .filter(|&m| {
            through
                .legs
                .iter()
                .zip(&other.legs)
                .all(|(&t, &o)| c.comp(t, m) == o)
        })
        .collect()
}

/// Every cone factors uniquely through `cone`.
pub fn is_limit(c: &FinCategory, d: &DiagramSpec, cone: &Cone) -> bool {
    c.objects().all(|x| {
        cones_at(c, d, x)
            .iter()
            .all(|o| mediators(c, cone, o).len() == 1)
    })
}

/// The first limiting cone in canonical order, if the limit exists.
pub fn limit(c: &FinCategory, d: &DiagramSpec) -> Option<Cone> {
    let cones = all_cones(c, d);
    cones
        .iter()
        .find(|t| cones.iter().all(|o| mediators(c, t, o).len() == 1))
        .cloned()
}

/// Colimit via the opposite category: the returned legs point from the
/// diagram nodes into the apex.
pub fn colimit(c: &FinCategory, d: &DiagramSpec) -> Option<Cone> {
    colimit_in_opposite(&opposite(c), d)
}

/// As [`colimit`], with the opposite category supplied by the caller.
pub fn colimit_in_opposite(op: &FinCategory, d: &DiagramSpec) -> Option<Cone> {
    limit(op, &d.reversed())
}

pub fn is_colimit_in_opposite(op: &FinCategory, d: &DiagramSpec, cocone: &Cone) -> bool {
    is_limit(op, &d.reversed(), cocone)
}

/// Every cocone, ordered by apex then legs.
pub fn all_cocones(c: &FinCategory, d: &DiagramSpec) -> Vec<Cone> {
    all_cones(&opposite(c), &d.reversed())
}

/// Pushout of `f : x → y` and `g : x → z`, as a cocone over the span
/// `y ← x → z` with legs `[x → p, y → p, z → p]`.
pub fn pushout_in_opposite(op: &FinCategory, f: Mor, g: Mor) -> Option<Cone> {
    // in the opposite category the span is a cospan and dom/cod are swapped
    let d = DiagramSpec {
        nodes: vec![op.cod(f), op.dom(f), op.dom(g)],
        edges: vec![(0, 1, f), (0, 2, g)],
    };
    colimit_in_opposite(op, &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;

    #[test]
    fn products_in_the_v_poset() {
        let v = vposet();
        let d = DiagramSpec {
            nodes: vec![Obj(1), Obj(2)],
            edges: vec![],
        };
        let l = limit(&v, &d).unwrap();
        assert_eq!(l.apex, Obj(0));
        assert_eq!(all_cones(&v, &d).len(), 1);
        assert_eq!(colimit(&v, &d), None);
    }

    #[test]
    fn chain_meets_and_joins() {
        let c = chain3();
        let d = DiagramSpec {
            nodes: vec![Obj(1), Obj(2)],
            edges: vec![],
        };
        assert_eq!(limit(&c, &d).unwrap().apex, Obj(1));
        assert_eq!(colimit(&c, &d).unwrap().apex, Obj(2));
        let empty = DiagramSpec::default();
        assert_eq!(limit(&c, &empty).unwrap().apex, Obj(2));
        assert_eq!(colimit(&c, &empty).unwrap().apex, Obj(0));
    }

    #[test]
    fn pushouts_in_the_chain() {
        let c = chain3();
        let op = opposite(&c);
        let (a, cc) = (c.morphism("a").unwrap(), c.morphism("c").unwrap());
        let p = pushout_in_opposite(&op, a, cc).unwrap();
        assert_eq!(p.apex, Obj(2));
        assert_eq!(p.legs[2], c.id(Obj(2)));
    }

    #[test]
    fn connectivity_of_specs() {
        assert!(!DiagramSpec::default().is_connected());
        let d = DiagramSpec {
            nodes: vec![Obj(0), Obj(1)],
            edges: vec![(0, 1, Mor(3))],
        };
        assert!(d.is_connected());
    }
}
