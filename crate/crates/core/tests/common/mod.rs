#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use invcong::bench::{random_pairs, random_semigroup};
use invcong::{
    pair_closure, CongruenceDS, ElementPartition, InverseSemigroup, MuCongruence, Pair, PartialPerm,
};
use rand::Rng;

pub fn pp(text: &str, degree: usize) -> PartialPerm {
    PartialPerm::parse(text, degree).unwrap()
}

pub fn i4_generators() -> Vec<PartialPerm> {
    vec![pp("(1 2 3 4)", 4), pp("(1 2)(3)(4)", 4), pp("[4 3 2 1]", 4)]
}

pub fn i4() -> Arc<InverseSemigroup> {
    Arc::new(InverseSemigroup::new(4, &i4_generators()).unwrap())
}

pub fn example_pair() -> Pair {
    (pp("(1)(2)(3)", 4), pp("(1 2 3)", 4))
}

/// Random semigroup of degree 3 to 5 with 20 to `max_size` elements, plus 1 to 3 pairs.
pub fn random_instance<R: Rng>(rng: &mut R, max_size: usize) -> (Arc<InverseSemigroup>, Vec<Pair>) {
    let s = Arc::new(
        random_semigroup(rng, 3..=5, 1..=3, 20, max_size, 10_000).expect("instance found"),
    );
    let count = rng.gen_range(1..=3);
    let pairs = random_pairs(rng, &s, count);
    (s, pairs)
}

pub fn index(s: &InverseSemigroup, x: &PartialPerm) -> usize {
    s.index_of(x).unwrap()
}

/// Elements congruent to an idempotent under the oracle partition, sorted.
pub fn oracle_kernel(s: &InverseSemigroup, p: &ElementPartition) -> Vec<PartialPerm> {
    let blocks: HashSet<usize> = s
        .idempotents()
        .iter()
        .map(|e| p.block_of(index(s, e)))
        .collect();
    let mut k: Vec<PartialPerm> = (0..s.size())
        .filter(|&i| blocks.contains(&p.block_of(i)))
        .map(|i| s.element(i).clone())
        .collect();
    k.sort_unstable();
    k
}

/// Oracle classes restricted to the idempotents, as sorted lists, sorted.
pub fn oracle_trace(s: &InverseSemigroup, p: &ElementPartition) -> Vec<Vec<PartialPerm>> {
    let mut classes: Vec<Vec<PartialPerm>> = Vec::new();
    let mut seen: Vec<Option<usize>> = vec![None; p.block_count()];
    for e in s.idempotents() {
        let b = p.block_of(index(s, e));
        let slot = *seen[b].get_or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(e.clone());
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_unstable();
    classes
}

pub fn fast_trace(c: &CongruenceDS) -> Vec<Vec<PartialPerm>> {
    let mut t = c.trace_classes();
    t.sort_unstable();
    t
}

/// Compares the data structure with pair closure: class count, `samples`
/// random pairs (every pair when `None`), kernel and trace. Returns mismatch
/// descriptions.
pub fn compare_with_oracle<R: Rng>(
    rng: &mut R,
    c: &CongruenceDS,
    oracle: &ElementPartition,
    samples: Option<usize>,
) -> Vec<String> {
    let s = c.base();
    let mut bad = Vec::new();
    if c.nr_classes() != oracle.block_count() {
        bad.push(format!(
            "classes {} vs oracle {}",
            c.nr_classes(),
            oracle.block_count()
        ));
    }
    let mut check = |i: usize, j: usize| {
        let (a, b) = (s.element(i), s.element(j));
        let fast = c.contains(a, b).unwrap();
        if fast != oracle.same_block(i, j) {
            bad.push(format!("contains({a}, {b}) = {fast}"));
        }
    };
    match samples {
        Some(n) => {
            for k in 0..n {
                let i = rng.gen_range(0..s.size());
                // half the samples come from one oracle block so positives are exercised
                let j = if k % 2 == 0 {
                    let block = oracle.block(oracle.block_of(i));
                    block[rng.gen_range(0..block.len())]
                } else {
                    rng.gen_range(0..s.size())
                };
                check(i, j);
            }
        }
        None => {
            for i in 0..s.size() {
                for j in 0..s.size() {
                    check(i, j);
                }
            }
        }
    }
    if c.kernel() != oracle_kernel(s, oracle) {
        bad.push("kernel differs".to_string());
    }
    if fast_trace(c) != oracle_trace(s, oracle) {
        bad.push("trace differs".to_string());
    }
    bad
}

/// Same relation on every pair of elements.
pub fn same_relation(
    s: &InverseSemigroup,
    left: impl Fn(&PartialPerm, &PartialPerm) -> bool,
    right: impl Fn(&PartialPerm, &PartialPerm) -> bool,
) -> bool {
    s.elements()
        .iter()
        .all(|a| s.elements().iter().all(|b| left(a, b) == right(a, b)))
}

pub fn oracle_for(s: &InverseSemigroup, pairs: &[Pair]) -> ElementPartition {
    pair_closure(s, pairs).unwrap()
}

/// Pairs `(r, y)` for every class with least element `r`; they generate `c`.
pub fn generating_pairs_of(c: &CongruenceDS) -> Vec<Pair> {
    let mut pairs = Vec::new();
    for rep in c.class_reps() {
        let class = c.class_of(&rep).unwrap();
        for y in &class[1..] {
            pairs.push((class[0].clone(), y.clone()));
        }
    }
    pairs
}

/// Definition of the maximum idempotent-separating congruence.
pub fn mu_by_definition(s: &InverseSemigroup, a: &PartialPerm, b: &PartialPerm) -> bool {
    let (ainv, binv) = (a.inverse(), b.inverse());
    s.idempotents()
        .iter()
        .all(|e| &(a * e) * &ainv == &(b * e) * &binv)
}

/// Elements commuting with every idempotent.
pub fn centraliser_by_definition(s: &InverseSemigroup) -> Vec<PartialPerm> {
    let mut c: Vec<PartialPerm> = s
        .elements()
        .iter()
        .filter(|x| s.idempotents().iter().all(|e| *x * e == e * *x))
        .cloned()
        .collect();
    c.sort_unstable();
    c
}

pub fn mu_for(s: &Arc<InverseSemigroup>) -> MuCongruence {
    MuCongruence::new(Arc::clone(s))
}

pub mod props;
