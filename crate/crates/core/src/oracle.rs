//! Brute-force congruence generation over the enumerated semigroup.

use crate::congruence::Pair;
use crate::semigroup::{InverseSemigroup, SemigroupError};
use crate::wordgraph::{NodePartition, UnionFind};

/// Partition of element indices of a semigroup.
pub type ElementPartition = NodePartition;

/// Left and right multiplication of every element by every alphabet letter.
#[derive(Debug, Clone)]
pub struct CayleyTables {
    letters: usize,
    right: Vec<usize>,
    left: Vec<usize>,
}

impl CayleyTables {
    pub fn new(s: &InverseSemigroup) -> Self {
        let letters = s.alphabet().len();
        let mut right = Vec::with_capacity(s.size() * letters);
        let mut left = Vec::with_capacity(s.size() * letters);
        for x in s.elements() {
            for a in s.alphabet() {
                right.push(s.index_of(&(x * a)).expect("closed under products"));
                left.push(s.index_of(&(a * x)).expect("closed under products"));
            }
        }
        CayleyTables {
            letters,
            right,
            left,
        }
    }

    pub fn right(&self, i: usize, letter: usize) -> usize {
        self.right[i * self.letters + letter]
    }

    pub fn left(&self, i: usize, letter: usize) -> usize {
        self.left[i * self.letters + letter]
    }
}

/// The least congruence containing `pairs`, by closing under multiplication
/// by alphabet letters on both sides.
pub fn pair_closure(
    s: &InverseSemigroup,
    pairs: &[Pair],
) -> Result<ElementPartition, SemigroupError> {
    let tables = CayleyTables::new(s);
    pair_closure_with(s, &tables, pairs)
}

/// [`pair_closure`] with precomputed tables.
pub fn pair_closure_with(
    s: &InverseSemigroup,
    tables: &CayleyTables,
    pairs: &[Pair],
) -> Result<ElementPartition, SemigroupError> {
    let mut todo = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        todo.push((s.require(a)?, s.require(b)?));
    }
    let mut uf = UnionFind::new(s.size());
    while let Some((a, b)) = todo.pop() {
        if uf.union(a, b).is_none() {
            continue;
        }
        for x in 0..tables.letters {
            todo.push((tables.right(a, x), tables.right(b, x)));
            todo.push((tables.left(a, x), tables.left(b, x)));
        }
    }
    Ok(uf.to_partition())
}
