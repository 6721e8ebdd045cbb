//! Permutation groups living inside an inverse semigroup: every element is a
//! permutation of `dom(f)` for a fixed idempotent `f`, which is the identity.
//!
//! Closures are enumerated explicitly. That is fine for groups of partial
//! permutations of small degree, which is the scale this crate targets.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

use crate::pperm::PartialPerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not a permutation of the domain of the group identity {1}")]
    NotInHClass(PartialPerm, PartialPerm),
    #[error("{0} is not an element of the group")]
    NotInGroup(PartialPerm),
    #[error("groups have different identities: {0} and {1}")]
    IdentityMismatch(PartialPerm, PartialPerm),
    #[error("the subgroup is not contained in the group")]
    NotSubgroup,
}

#[derive(Debug)]
struct Closure {
    sorted: Vec<PartialPerm>,
    set: HashSet<PartialPerm>,
}

/// A finite group of partial permutations with identity `f`.
#[derive(Debug)]
pub struct GroupHandle {
    identity: PartialPerm,
    generators: Vec<PartialPerm>,
    closure: OnceLock<Closure>,
}

impl Clone for GroupHandle {
    fn clone(&self) -> Self {
        let closure = OnceLock::new();
        if let Some(c) = self.closure.get() {
            let _ = closure.set(Closure {
                sorted: c.sorted.clone(),
                set: c.set.clone(),
            });
        }
        GroupHandle {
            identity: self.identity.clone(),
            generators: self.generators.clone(),
            closure,
        }
    }
}

/// `g` lies in the group H-class of the idempotent `f`.
pub fn in_h_class(f: &PartialPerm, g: &PartialPerm) -> bool {
    g.degree() == f.degree() && g.left_identity() == *f && g.right_identity() == *f
}

impl GroupHandle {
    pub fn trivial(identity: PartialPerm) -> Self {
        let closure = OnceLock::new();
        let _ = closure.set(Closure {
            sorted: vec![identity.clone()],
            set: std::iter::once(identity.clone()).collect(),
        });
        GroupHandle {
            identity,
            generators: Vec::new(),
            closure,
        }
    }

    /// The group generated by `gens`; each must be a permutation of `dom(f)`.
    pub fn generate(identity: PartialPerm, gens: Vec<PartialPerm>) -> Result<Self, GroupError> {
        debug_assert!(identity.is_idempotent());
        if let Some(bad) = gens.iter().find(|g| !in_h_class(&identity, g)) {
            return Err(GroupError::NotInHClass(bad.clone(), identity));
        }
        let mut generators: Vec<PartialPerm> = Vec::new();
        for g in gens {
            if g != identity && !generators.contains(&g) {
                generators.push(g);
            }
        }
        Ok(GroupHandle {
            identity,
            generators,
            closure: OnceLock::new(),
        })
    }

    /// A group whose full element set is already known to be closed.
    fn from_closed_set(identity: PartialPerm, elements: HashSet<PartialPerm>) -> Self {
        let generators = small_generating_set(&identity, &elements);
        let mut sorted: Vec<PartialPerm> = elements.iter().cloned().collect();
        sorted.sort_unstable();
        let closure = OnceLock::new();
        let _ = closure.set(Closure {
            sorted,
            set: elements,
        });
        GroupHandle {
            identity,
            generators,
            closure,
        }
    }

    pub fn identity(&self) -> &PartialPerm {
        &self.identity
    }

    pub fn generators(&self) -> &[PartialPerm] {
        &self.generators
    }

    fn closure(&self) -> &Closure {
        self.closure.get_or_init(|| {
            let mut set = HashSet::new();
            set.insert(self.identity.clone());
            extend_closure(&mut set, &[], &self.generators);
            let mut sorted: Vec<PartialPerm> = set.iter().cloned().collect();
            sorted.sort_unstable();
            Closure { sorted, set }
        })
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> &[PartialPerm] {
        &self.closure().sorted
    }

    pub fn size(&self) -> usize {
        self.closure().sorted.len()
    }

    pub fn contains(&self, p: &PartialPerm) -> bool {
        p.degree() == self.identity.degree() && self.closure().set.contains(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty() || self.size() == 1
    }

    /// Least normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[PartialPerm]) -> Result<GroupHandle, GroupError> {
        self.extend_normal(&GroupHandle::trivial(self.identity.clone()), seeds)
    }

    /// Least normal subgroup containing `base` (normal in `self`) and `seeds`.
    pub fn extend_normal(
        &self,
        base: &GroupHandle,
        seeds: &[PartialPerm],
    ) -> Result<GroupHandle, GroupError> {
        if base.identity != self.identity {
            return Err(GroupError::IdentityMismatch(
                base.identity.clone(),
                self.identity.clone(),
            ));
        }
        if let Some(bad) = seeds.iter().find(|s| !self.contains(s)) {
            return Err(GroupError::NotInGroup((*bad).clone()));
        }
        let mut set: HashSet<PartialPerm> = base.closure().set.clone();
        let mut gens: Vec<PartialPerm> = base.generators.clone();
        let conj: Vec<(PartialPerm, PartialPerm)> = self
            .generators
            .iter()
            .map(|g| (g.inverse(), g.clone()))
            .collect();
        let mut todo: Vec<PartialPerm> = seeds.to_vec();
        while let Some(candidate) = todo.pop() {
            if set.contains(&candidate) {
                continue;
            }
            extend_closure(&mut set, &gens, std::slice::from_ref(&candidate));
            gens.push(candidate.clone());
            // conjugates of the new generator by the generators of the whole group
            for (ginv, g) in &conj {
                let c = &(ginv * &candidate) * g;
                if !set.contains(&c) {
                    todo.push(c);
                }
            }
        }
        // conjugates of the old generators are already inside `base`
        let mut sorted: Vec<PartialPerm> = set.iter().cloned().collect();
        sorted.sort_unstable();
        let closure = OnceLock::new();
        let _ = closure.set(Closure { sorted, set });
        Ok(GroupHandle {
            identity: self.identity.clone(),
            generators: gens,
            closure,
        })
    }

    /// One representative per coset of `normal`, each the least element of
    /// its coset; the first is the identity.
    pub fn coset_transversal(&self, normal: &GroupHandle) -> Result<Vec<PartialPerm>, GroupError> {
        if normal.identity != self.identity {
            return Err(GroupError::IdentityMismatch(
                normal.identity.clone(),
                self.identity.clone(),
            ));
        }
        if normal.elements().iter().any(|n| !self.contains(n)) {
            return Err(GroupError::NotSubgroup);
        }
        let mut covered: HashSet<&PartialPerm> = HashSet::new();
        let mut reps = Vec::new();
        for g in self.elements() {
            if covered.contains(g) {
                continue;
            }
            reps.push(g.clone());
            for n in normal.elements() {
                let coset_elt = n * g;
                covered.insert(
                    self.closure()
                        .set
                        .get(&coset_elt)
                        .expect("coset stays in group"),
                );
            }
        }
        Ok(reps)
    }

    pub fn intersect(&self, other: &GroupHandle) -> Result<GroupHandle, GroupError> {
        if other.identity != self.identity {
            return Err(GroupError::IdentityMismatch(
                other.identity.clone(),
                self.identity.clone(),
            ));
        }
        let (small, big) = if self.size() <= other.size() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small.filter(|g| big.contains(g)))
    }

    /// Subgroup of the elements satisfying `keep`; `keep` must pick a subgroup.
    pub fn filter(&self, mut keep: impl FnMut(&PartialPerm) -> bool) -> GroupHandle {
        let set: HashSet<PartialPerm> = self
            .elements()
            .iter()
            .filter(|g| keep(g))
            .cloned()
            .collect();
        debug_assert!(set.contains(&self.identity));
        GroupHandle::from_closed_set(self.identity.clone(), set)
    }

    /// `s⁻¹·G·s`, a group with identity `s⁻¹fs`; requires `dom(f) ⊆ dom(s)`.
    pub fn conjugate(&self, s: &PartialPerm) -> GroupHandle {
        let sinv = s.inverse();
        let map = |g: &PartialPerm| &(&sinv * g) * s;
        let identity = map(&self.identity);
        debug_assert_eq!(identity.rank(), self.identity.rank());
        let generators = self.generators.iter().map(map).collect();
        let closure = OnceLock::new();
        if let Some(c) = self.closure.get() {
            let set: HashSet<PartialPerm> = c.sorted.iter().map(map).collect();
            let mut sorted: Vec<PartialPerm> = set.iter().cloned().collect();
            sorted.sort_unstable();
            let _ = closure.set(Closure { sorted, set });
        }
        GroupHandle {
            identity,
            generators,
            closure,
        }
    }

    /// `n` generates a normal subgroup: conjugates of its generators by ours stay inside.
    pub fn is_normal_subgroup(&self, n: &GroupHandle) -> bool {
        n.elements().iter().all(|x| self.contains(x))
            && self.generators.iter().all(|g| {
                let ginv = g.inverse();
                n.generators.iter().all(|x| n.contains(&(&(&ginv * x) * g)))
            })
    }
}

/// Extends a closed set `set` (generated by `old`) to the group generated by
/// `old ∪ new`.
fn extend_closure(set: &mut HashSet<PartialPerm>, old: &[PartialPerm], new: &[PartialPerm]) {
    let mut queue: VecDeque<PartialPerm> = VecDeque::new();
    let existing: Vec<PartialPerm> = set.iter().cloned().collect();
    for x in &existing {
        for g in new {
            let y = x * g;
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in old.iter().chain(new) {
            let y = &x * g;
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
}

/// Greedy generating set of a closed set of elements.
fn small_generating_set(
    identity: &PartialPerm,
    elements: &HashSet<PartialPerm>,
) -> Vec<PartialPerm> {
    let mut sorted: Vec<&PartialPerm> = elements.iter().collect();
    sorted.sort_unstable();
    let mut gens: Vec<PartialPerm> = Vec::new();
    let mut span: HashSet<PartialPerm> = std::iter::once(identity.clone()).collect();
    for g in sorted {
        if span.len() == elements.len() {
            break;
        }
        if !span.contains(g) {
            extend_closure(&mut span, &gens, std::slice::from_ref(g));
            gens.push(g.clone());
        }
    }
    gens
}
