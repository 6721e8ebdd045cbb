//! Congruences stored as a trace (a partition of the idempotent word graph
//! with deterministic quotient) plus one normal subgroup per strongly
//! connected component of the quotient.

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{in_h_class, GroupError, GroupHandle};
use crate::pperm::PartialPerm;
use crate::semigroup::{InverseSemigroup, SemigroupError};
use crate::wordgraph::{NodePartition, WordGraph};

pub type Pair = (PartialPerm, PartialPerm);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0} is not an idempotent of the semigroup")]
    NotIdempotent(PartialPerm),
    #[error("the congruences are defined on different semigroups")]
    BaseMismatch,
    #[error("join needs generating pairs, but an operand has none (it was built as a meet)")]
    MissingPairs,
}

/// One strongly connected component of the quotient word graph.
#[derive(Debug, Clone)]
pub struct Component {
    /// Trace blocks in breadth-first order; the first holds `f`.
    pub blocks: Vec<usize>,
    /// Least idempotent of the first block.
    pub f: PartialPerm,
    /// `s_j` with `s_j⁻¹·f·s_j` the least idempotent of `blocks[j]`; `s_0 = f`.
    pub connectors: Vec<PartialPerm>,
    /// The group H-class of `f`.
    pub group: GroupHandle,
    /// Elements of `group` congruent to `f`.
    pub normal: GroupHandle,
    /// Least element of each coset of `normal` in `group`.
    pub transversal: Vec<PartialPerm>,
}

#[derive(Debug, Clone)]
struct BlockInfo {
    component: usize,
    position: usize,
    min: PartialPerm,
}

#[derive(Debug, Clone)]
pub struct CongruenceDS {
    base: Arc<InverseSemigroup>,
    pairs: Option<Vec<Pair>>,
    trace: NodePartition,
    quotient: WordGraph,
    qsccs: NodePartition,
    components: Vec<Component>,
    // None only for the block of an adjoined identity
    blocks: Vec<Option<BlockInfo>>,
}

/// Pairs `(a·e·a⁻¹, b·e·b⁻¹)` of word graph nodes for every node `e` and
/// `(a, b)` in `pairs`, without duplicates or reflexive pairs. The identity
/// node takes part even when it is adjoined, contributing `(aa⁻¹, bb⁻¹)`.
pub fn trace_seed_pairs(
    base: &InverseSemigroup,
    pairs: &[Pair],
) -> Result<Vec<(usize, usize)>, CongruenceError> {
    for (a, b) in pairs {
        base.require(a)?;
        base.require(b)?;
    }
    let mut seen = HashSet::new();
    let mut seeds = Vec::new();
    for (a, b) in pairs {
        let (ainv, binv) = (a.inverse(), b.inverse());
        for v in 0..base.node_count() {
            let e = base.node_idempotent(v);
            let p = &(a * e) * &ainv;
            let q = &(b * e) * &binv;
            if p == q {
                continue;
            }
            let (p, q) = (node(base, &p), node(base, &q));
            if seen.insert((p.min(q), p.max(q))) {
                seeds.push((p, q));
            }
        }
    }
    Ok(seeds)
}

pub(crate) fn node(base: &InverseSemigroup, e: &PartialPerm) -> usize {
    base.node_of(e)
        .expect("products of idempotents stay in the semigroup")
}

impl CongruenceDS {
    /// The least congruence containing `pairs`.
    pub fn compute(base: Arc<InverseSemigroup>, pairs: &[Pair]) -> Result<Self, CongruenceError> {
        let seeds = trace_seed_pairs(&base, pairs)?;
        let (trace, quotient) = base.gamma().quotient_closure(&seeds);
        Self::from_trace_and_pairs(base, pairs.to_vec(), trace, quotient)
    }

    /// Completes a congruence generated by `pairs` whose trace is already known.
    pub(crate) fn from_trace_and_pairs(
        base: Arc<InverseSemigroup>,
        pairs: Vec<Pair>,
        trace: NodePartition,
        quotient: WordGraph,
    ) -> Result<Self, CongruenceError> {
        let mut symmetric: Vec<Pair> = Vec::with_capacity(2 * pairs.len());
        for (a, b) in &pairs {
            symmetric.push((a.clone(), b.clone()));
            symmetric.push((b.clone(), a.clone()));
        }
        let sg = Arc::clone(&base);
        Self::assemble(base, Some(pairs), trace, quotient, |f, group| {
            let f_node = node(&sg, f);
            let d = sg.d_class_of_node(f_node).expect("f is an element");
            let mut seen = HashSet::new();
            let mut gens = Vec::new();
            for &v in &sg.d_classes()[d].nodes {
                let s = sg.connector_between(f_node, v);
                let sinv_f = &s.inverse() * f;
                let fs = f * &s;
                for (a, b) in &symmetric {
                    let g = &(&(&fs * a) * &b.inverse()) * &sinv_f;
                    if in_h_class(f, &g) && seen.insert(g.clone()) {
                        gens.push(g);
                    }
                }
            }
            Ok(group.normal_closure(&gens)?)
        })
    }

    /// Builds the data structure from a trace whose quotient is deterministic,
    /// asking `normal` for the normal subgroup at each component's `f`.
    pub(crate) fn assemble(
        base: Arc<InverseSemigroup>,
        pairs: Option<Vec<Pair>>,
        trace: NodePartition,
        quotient: WordGraph,
        mut normal: impl FnMut(&PartialPerm, &GroupHandle) -> Result<GroupHandle, CongruenceError>,
    ) -> Result<Self, CongruenceError> {
        let qsccs = quotient.sccs();
        let mut blocks: Vec<Option<BlockInfo>> = vec![None; trace.block_count()];
        let mut components = Vec::new();
        let adjoined_block = base
            .identity_adjoined()
            .then(|| trace.block_of(base.identity_node()));
        let alphabet = base.alphabet();
        for scc in qsccs.blocks() {
            if scc.len() == 1 && Some(scc[0]) == adjoined_block {
                continue;
            }
            let id = components.len();
            let least = scc
                .iter()
                .flat_map(|&b| trace.block(b).iter().copied())
                .min_by(|&a, &b| base.node_idempotent(a).cmp(base.node_idempotent(b)))
                .expect("non-empty component");
            let first = trace.block_of(least);
            let f = block_meet(&base, &trace, first);
            let qid = qsccs.block_of(first);

            let mut order = vec![first];
            let mut connectors = vec![f.clone()];
            blocks[first] = Some(BlockInfo {
                component: id,
                position: 0,
                min: f.clone(),
            });
            let mut head = 0;
            while head < order.len() {
                let b = order[head];
                for (x, letter) in alphabet.iter().enumerate() {
                    let t = quotient.target(b, x);
                    if qsccs.block_of(t) != qid || blocks[t].is_some() {
                        continue;
                    }
                    let s = &connectors[head] * letter;
                    let min = &(&s.inverse() * &f) * &s;
                    debug_assert_eq!(min, block_meet(&base, &trace, t));
                    blocks[t] = Some(BlockInfo {
                        component: id,
                        position: order.len(),
                        min,
                    });
                    order.push(t);
                    connectors.push(s);
                }
                head += 1;
            }

            let group = base.h_class_group(node(&base, &f));
            let n = normal(&f, &group)?;
            let transversal = group.coset_transversal(&n)?;
            components.push(Component {
                blocks: order,
                f,
                connectors,
                group,
                normal: n,
                transversal,
            });
        }
        Ok(CongruenceDS {
            base,
            pairs,
            trace,
            quotient,
            qsccs,
            components,
            blocks,
        })
    }

    pub fn base(&self) -> &Arc<InverseSemigroup> {
        &self.base
    }

    /// Generating pairs; absent for congruences built as meets.
    pub fn pairs(&self) -> Option<&[Pair]> {
        self.pairs.as_deref()
    }

    /// Partition of the word graph nodes.
    pub fn trace(&self) -> &NodePartition {
        &self.trace
    }

    pub fn quotient(&self) -> &WordGraph {
        &self.quotient
    }

    pub fn quotient_sccs(&self) -> &NodePartition {
        &self.qsccs
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn nr_classes(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.transversal.len() * c.blocks.len() * c.blocks.len())
            .sum()
    }

    /// One element per class: `s_j⁻¹·n·s_l` over components, `j`, coset
    /// representatives `n` and `l`, in that order.
    pub fn class_reps(&self) -> Vec<PartialPerm> {
        let mut reps = Vec::with_capacity(self.nr_classes());
        for c in &self.components {
            for sj in &c.connectors {
                let sj_inv = sj.inverse();
                for n in &c.transversal {
                    let left = &sj_inv * n;
                    for sl in &c.connectors {
                        reps.push(&left * sl);
                    }
                }
            }
        }
        reps
    }

    /// Trace classes of the idempotents of the semigroup, each sorted.
    pub fn trace_classes(&self) -> Vec<Vec<PartialPerm>> {
        self.trace
            .blocks()
            .iter()
            .filter(|b| self.base.is_element_node(b[0]))
            .map(|b| {
                let mut class: Vec<PartialPerm> = b
                    .iter()
                    .map(|&v| self.base.node_idempotent(v).clone())
                    .collect();
                class.sort_unstable();
                class
            })
            .collect()
    }

    fn idempotent_node(&self, e: &PartialPerm) -> Result<usize, CongruenceError> {
        self.base.require(e)?;
        self.base
            .node_of(e)
            .ok_or_else(|| CongruenceError::NotIdempotent(e.clone()))
    }

    /// Trace block of an idempotent.
    pub fn trace_block(&self, e: &PartialPerm) -> Result<usize, CongruenceError> {
        Ok(self.trace.block_of(self.idempotent_node(e)?))
    }

    /// Trace block of an idempotent, found by following a factorization of it
    /// through the quotient graph from the identity.
    pub fn trace_block_by_path(&self, e: &PartialPerm) -> Result<usize, CongruenceError> {
        self.idempotent_node(e)?;
        let word = self.base.factorize(e)?;
        let start = self.trace.block_of(self.base.identity_node());
        Ok(self
            .quotient
            .follow_path(start, &word)
            .expect("letters come from the alphabet"))
    }

    pub fn trace_related(&self, e: &PartialPerm, f: &PartialPerm) -> Result<bool, CongruenceError> {
        Ok(self.trace_block(e)? == self.trace_block(f)?)
    }

    fn info(&self, block: usize) -> &BlockInfo {
        self.blocks[block]
            .as_ref()
            .expect("block of semigroup idempotents")
    }

    /// Least idempotent in the trace class of `y·y⁻¹`.
    pub fn mu_map(&self, y: &PartialPerm) -> Result<PartialPerm, CongruenceError> {
        self.base.require(y)?;
        Ok(self.info(self.trace_block(&y.left_identity())?).min.clone())
    }

    /// Least idempotent in the trace class of `y⁻¹·y`.
    pub fn nu_map(&self, y: &PartialPerm) -> Result<PartialPerm, CongruenceError> {
        self.base.require(y)?;
        Ok(self
            .info(self.trace_block(&y.right_identity())?)
            .min
            .clone())
    }

    pub fn phi(&self, y: &PartialPerm) -> Result<PartialPerm, CongruenceError> {
        let mu = self.mu_map(y)?;
        let nu = self.nu_map(y)?;
        Ok(&(&mu * y) * &nu)
    }

    /// Membership in the normal subgroup at the least idempotent of `block`.
    fn kernel_group_contains(&self, block: usize, g: &PartialPerm) -> bool {
        let info = self.info(block);
        let c = &self.components[info.component];
        let s = &c.connectors[info.position];
        c.normal.contains(&(&(s * g) * &s.inverse()))
    }

    /// Elements of the group H-class of the least idempotent `m` in the trace
    /// class of `e` that are congruent to `m`.
    pub fn normal_subgroup_at(&self, e: &PartialPerm) -> Result<GroupHandle, CongruenceError> {
        let info = self.info(self.trace_block(e)?);
        let c = &self.components[info.component];
        Ok(c.normal.conjugate(&c.connectors[info.position]))
    }

    /// Whether `g` lies in the coset `K·r`, `K` the normal subgroup at the
    /// least idempotent of `block`.
    fn in_coset(&self, block: usize, g: &PartialPerm, r: &PartialPerm) -> bool {
        let info = self.info(block);
        if r.rank() == info.min.rank() {
            let k = g * &r.inverse();
            return &(&k * r) == g && self.kernel_group_contains(block, &k);
        }
        let c = &self.components[info.component];
        let s = &c.connectors[info.position];
        let sinv = s.inverse();
        c.normal
            .elements()
            .iter()
            .any(|n| &(&(&(&sinv * n) * s) * r) == g)
    }

    /// Whether `a` and `b` are congruent.
    pub fn contains(&self, a: &PartialPerm, b: &PartialPerm) -> Result<bool, CongruenceError> {
        self.base.require(a)?;
        self.base.require(b)?;
        if !self.trace_related(&a.right_identity(), &b.right_identity())? {
            return Ok(false);
        }
        self.in_kernel(&(a * &b.inverse()))
    }

    /// Whether `x` is congruent to an idempotent.
    pub fn in_kernel(&self, x: &PartialPerm) -> Result<bool, CongruenceError> {
        self.base.require(x)?;
        let block = self.trace_block(&x.left_identity())?;
        if block != self.trace_block(&x.right_identity())? {
            return Ok(false);
        }
        let m = &self.info(block).min;
        let phi = &(m * x) * m;
        let r = &(m * x) * x;
        Ok(self.in_coset(block, &phi, &r))
    }

    /// The congruence class of `x`, sorted.
    pub fn class_of(&self, x: &PartialPerm) -> Result<Vec<PartialPerm>, CongruenceError> {
        self.base.require(x)?;
        let be = self.trace_block(&x.left_identity())?;
        let bf = self.trace_block(&x.right_identity())?;
        let m = self.info(be).min.clone();
        let mut class = Vec::new();
        for &e in self.trace.block(be) {
            let d = self.base.d_class_of_node(e);
            let mut h_group: Option<GroupHandle> = None;
            for &f in self.trace.block(bf) {
                if self.base.d_class_of_node(f) != d {
                    continue;
                }
                let h_group = h_group.get_or_insert_with(|| self.base.h_class_group(e));
                let s = self.base.connector_between(e, f);
                let r = &(&m * x) * &s.inverse();
                for h in h_group.elements() {
                    if self.in_coset(be, &(&(&m * h) * &m), &r) {
                        class.push(h * &s);
                    }
                }
            }
        }
        class.sort_unstable();
        Ok(class)
    }

    /// Elements congruent to some idempotent, sorted.
    pub fn kernel(&self) -> Vec<PartialPerm> {
        let mut kernel = Vec::new();
        for (block, info) in self.blocks.iter().enumerate() {
            if let Some(info) = info {
                debug_assert_eq!(self.trace.block_of(node(&self.base, &info.min)), block);
                kernel.extend(self.class_of(&info.min).expect("idempotents are elements"));
            }
        }
        kernel.sort_unstable();
        kernel
    }
}

fn block_meet(base: &InverseSemigroup, trace: &NodePartition, block: usize) -> PartialPerm {
    let nodes = trace.block(block);
    nodes[1..]
        .iter()
        .fold(base.node_idempotent(nodes[0]).clone(), |acc, &v| {
            &acc * base.node_idempotent(v)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(s: &str) -> PartialPerm {
        PartialPerm::parse(s, 4).unwrap()
    }

    fn i4() -> Arc<InverseSemigroup> {
        Arc::new(
            InverseSemigroup::new(4, &[pp("(1 2 3 4)"), pp("(1 2)(3)(4)"), pp("[4 3 2 1]")])
                .unwrap(),
        )
    }

    fn example() -> CongruenceDS {
        CongruenceDS::compute(i4(), &[(pp("(1)(2)(3)"), pp("(1 2 3)"))]).unwrap()
    }

    #[test]
    fn worked_example_counts() {
        let c = example();
        assert_eq!(c.nr_classes(), 57);
        assert_eq!(c.quotient().node_count(), 6);
        let summary: Vec<(usize, usize, usize)> = c
            .components()
            .iter()
            .map(|k| {
                (
                    k.blocks.len(),
                    k.group.size() / k.normal.size(),
                    k.normal.size(),
                )
            })
            .collect();
        let mut sorted = summary.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![(1, 1, 1), (1, 24, 1), (4, 2, 3)]);
        let mid = c.components().iter().find(|k| k.blocks.len() == 4).unwrap();
        assert_eq!(mid.f, pp("(2)(3)(4)"));
        let n = c.normal_subgroup_at(&pp("(1)(2)(3)")).unwrap();
        assert_eq!(n.identity(), &pp("(1)(2)(3)"));
        assert_eq!(n.size(), 3);
        assert!(n.contains(&pp("(1 3 2)")));
    }

    #[test]
    fn worked_example_reps() {
        let c = example();
        let reps = c.class_reps();
        assert_eq!(reps.len(), 57);
        assert!(reps.contains(&pp("[4 3 2 1]")));
        assert!(reps.contains(&pp("(1)(2 3)")));
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(!c.contains(a, b).unwrap());
            }
        }
    }

    #[test]
    fn worked_example_class() {
        let c = example();
        let x = pp("[1 2 4] (3)");
        let expected = vec![pp("[1 4] (2 3)"), x.clone(), pp("[1 3 4] (2)")];
        let mut expected_sorted = expected.clone();
        expected_sorted.sort_unstable();
        assert_eq!(c.class_of(&x).unwrap(), expected_sorted);
        assert_eq!(c.class_of(&PartialPerm::empty(4)).unwrap().len(), 89);
        assert_eq!(c.kernel().len(), 102);
        assert!(c.contains(&x, &pp("[1 4] (2 3)")).unwrap());
    }

    #[test]
    fn membership_examples() {
        let c = example();
        assert!(c.contains(&pp("(1)(2)(3)"), &pp("(1 2 3)")).unwrap());
        assert!(!c.contains(&pp("(1)(2)(3)"), &pp("(1 2)(3)")).unwrap());
        let x = pp("(1 2 3 4)");
        assert!(c.contains(&x, &x).unwrap());
        let outside = InverseSemigroup::new(4, &[pp("(1 2)")]).unwrap();
        let c2 = CongruenceDS::compute(Arc::new(outside), &[]).unwrap();
        assert!(matches!(
            c2.contains(&x, &x),
            Err(CongruenceError::Semigroup(SemigroupError::NotInSemigroup(
                _
            )))
        ));
    }

    #[test]
    fn trivial_congruence() {
        let s = i4();
        let c = CongruenceDS::compute(Arc::clone(&s), &[]).unwrap();
        assert_eq!(c.nr_classes(), 209);
        assert_eq!(c.kernel().len(), 16);
        let x = pp("[1 2 4] (3)");
        assert_eq!(c.class_of(&x).unwrap(), vec![x.clone()]);
        assert_eq!(c.phi(&x).unwrap(), x);
        let same = CongruenceDS::compute(s, &[(x.clone(), x)]).unwrap();
        assert_eq!(same.nr_classes(), 209);
        assert!(trace_seed_pairs(same.base(), &[]).unwrap().is_empty());
    }

    #[test]
    fn universal_congruence() {
        let s = i4();
        let c = CongruenceDS::compute(
            Arc::clone(&s),
            &[(PartialPerm::identity(4), PartialPerm::empty(4))],
        )
        .unwrap();
        assert_eq!(c.nr_classes(), 1);
        assert_eq!(c.kernel().len(), 209);
    }

    #[test]
    fn trace_by_path_matches_lookup() {
        let c = example();
        for e in c.base().idempotents() {
            assert_eq!(c.trace_block(e).unwrap(), c.trace_block_by_path(e).unwrap());
        }
        assert!(matches!(
            c.trace_block(&pp("(1 2 3 4)")),
            Err(CongruenceError::NotIdempotent(_))
        ));
    }

    #[test]
    fn phi_on_rank_three_is_identity() {
        let c = example();
        for y in c.base().elements().iter().filter(|y| y.rank() == 3) {
            assert_eq!(&c.phi(y).unwrap(), y);
        }
    }

    #[test]
    fn c2_trivial_reps() {
        let s = InverseSemigroup::new(2, &[PartialPerm::parse("(1 2)", 2).unwrap()]).unwrap();
        let c = CongruenceDS::compute(Arc::new(s), &[]).unwrap();
        assert_eq!(c.class_reps().len(), 2);
    }
}
