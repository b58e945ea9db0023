//! Connected components, initial and terminal objects, multi-initial and
//! weakly initial families.

use petgraph::unionfind::UnionFind;

use crate::fincat::{opposite, FinCategory, Mor, Obj};

/// Objects grouped by zigzag connectivity. Blocks are ordered by their least
/// object and each block lists its objects in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<Obj>>,
    pub block_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn representative(&self, block: usize) -> Obj {
        self.blocks[block][0]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// A directed multigraph standing in for a category: object count plus the
/// endpoints of every arrow.
#[derive(Clone, Debug, Default)]
pub(crate) struct Quiver {
    pub n: usize,
    pub arrows: Vec<(u32, u32)>,
}

impl Quiver {
    pub fn of(c: &FinCategory) -> Quiver {
        Quiver {
            n: c.object_count(),
            arrows: c.morphisms().map(|m| (c.dom(m).0, c.cod(m).0)).collect(),
        }
    }

    pub fn partition(&self) -> ComponentPartition {
        let mut uf = UnionFind::<usize>::new(self.n);
        for &(d, c) in &self.arrows {
            uf.union(d as usize, c as usize);
        }
        let mut block_of = vec![usize::MAX; self.n];
        let mut root_block = vec![usize::MAX; self.n];
        let mut blocks: Vec<Vec<Obj>> = Vec::new();
        for (x, slot) in block_of.iter_mut().enumerate() {
            let r = uf.find_mut(x);
            if root_block[r] == usize::MAX {
                root_block[r] = blocks.len();
                blocks.push(Vec::new());
            }
            *slot = root_block[r];
            blocks[root_block[r]].push(Obj(x as u32));
        }
        ComponentPartition { blocks, block_of }
    }

    pub fn counts(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.n * self.n];
        for &(d, c) in &self.arrows {
            counts[d as usize * self.n + c as usize] += 1;
        }
        counts
    }

    /// Per block, the least object with exactly one arrow to every object of
    /// its block; otherwise the index of the first block without one.
    pub fn multi_initial(&self) -> (ComponentPartition, Result<Vec<Obj>, usize>) {
        let part = self.partition();
        let counts = self.counts();
        let mut members = Vec::with_capacity(part.len());
        for (bi, block) in part.blocks.iter().enumerate() {
            let found = block.iter().copied().find(|x| {
                block
                    .iter()
                    .all(|y| counts[x.idx() * self.n + y.idx()] == 1)
            });
            match found {
                Some(x) => members.push(x),
                None => return (part, Err(bi)),
            }
        }
        (part, Ok(members))
    }
}

pub fn connected_components(c: &FinCategory) -> ComponentPartition {
    Quiver::of(c).partition()
}

/// Objects with exactly one arrow to every object, in canonical order.
pub fn initial_objects(c: &FinCategory) -> Vec<Obj> {
    c.objects()
        .filter(|&x| c.objects().all(|y| c.hom(x, y).len() == 1))
        .collect()
}

pub fn terminal_objects(c: &FinCategory) -> Vec<Obj> {
    initial_objects(&opposite(c))
}

/// One member per connected component, with the unique arrow from the
/// responsible member to every object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiInitialFamily {
    pub members: Vec<Obj>,
    /// Indexed by object: `(member, unique arrow member → object)`.
    pub witness: Vec<(Obj, Mor)>,
}

/// The first component, in canonical order, without an initial object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Absent {
    pub component: Vec<Obj>,
}

pub fn multi_initial_family(c: &FinCategory) -> Result<MultiInitialFamily, Absent> {
    let (part, found) = Quiver::of(c).multi_initial();
    match found {
        Err(bi) => Err(Absent {
            component: part.blocks[bi].clone(),
        }),
        Ok(members) => {
            let witness = c
                .objects()
                .map(|y| {
                    let m = members[part.block_of[y.idx()]];
                    (m, c.hom(m, y)[0])
                })
                .collect();
            Ok(MultiInitialFamily { members, witness })
        }
    }
}

/// Dual of [`multi_initial_family`]; witnesses are the unique arrows into
/// the responsible member.
pub fn multi_terminal_family(c: &FinCategory) -> Result<MultiInitialFamily, Absent> {
    multi_initial_family(&opposite(c))
}

/// Every object receives at least one arrow from some member of `s`.
pub fn is_weakly_initial(c: &FinCategory, s: &[Obj]) -> bool {
    c.objects()
        .all(|y| s.iter().any(|&x| !c.hom(x, y).is_empty()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;
    use crate::fincat::{comma, Limits};

    #[test]
    fn component_counts() {
        assert_eq!(connected_components(&d2()).len(), 2);
        assert_eq!(connected_components(&cospan()).len(), 1);
        let (cm, _) = comma(&d2_into_v(), Obj(0), &Limits::default()).unwrap();
        assert_eq!(connected_components(&cm).len(), 2);
    }

    #[test]
    fn initial_and_terminal() {
        assert_eq!(initial_objects(&chain3()), vec![Obj(0)]);
        assert_eq!(terminal_objects(&chain3()), vec![Obj(2)]);
        assert!(initial_objects(&cospan()).is_empty());
        assert!(initial_objects(&d2()).is_empty());
    }

    #[test]
    fn multi_initial_examples() {
        let f = multi_initial_family(&d2()).unwrap();
        assert_eq!(f.members, vec![Obj(0), Obj(1)]);
        assert_eq!(
            multi_initial_family(&cospan()),
            Err(Absent {
                component: vec![Obj(0), Obj(1), Obj(2)]
            })
        );
        let f = multi_initial_family(&chain3()).unwrap();
        assert_eq!(f.members, vec![Obj(0)]);
        assert_eq!(f.witness[2], (Obj(0), chain3().morphism("c").unwrap()));
    }

    #[test]
    fn weakly_initial_examples() {
        let c = cospan();
        assert!(is_weakly_initial(&c, &c.objects().collect::<Vec<_>>()));
        assert!(is_weakly_initial(&c, &[Obj(0), Obj(1)]));
        assert!(!is_weakly_initial(&c, &[Obj(0)]));
    }

    #[test]
    fn group_has_no_initial_object() {
        assert_eq!(
            multi_initial_family(&z2()).unwrap_err().component,
            vec![Obj(0)]
        );
    }
}
