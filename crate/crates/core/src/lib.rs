//! Two-sided congruences on finite inverse semigroups of partial permutations.
//!
//! A congruence is stored as a partition of the idempotents (its trace) and
//! one normal subgroup per component of the quotient word graph, never as an
//! explicit set of pairs.

pub mod bench;
pub mod congruence;
pub mod group;
pub mod lattice;
pub mod mu;
pub mod oracle;
pub mod pperm;
pub mod semigroup;
pub mod wordgraph;

pub use congruence::{Component, CongruenceDS, CongruenceError, Pair};
pub use group::{GroupError, GroupHandle};
pub use lattice::{join, meet};
pub use mu::{boolean_atoms, AtomPartition, MuCongruence};
pub use oracle::{pair_closure, ElementPartition};
pub use pperm::{PartialPerm, PpermError};
pub use semigroup::{DClass, InverseSemigroup, SemigroupError};
pub use wordgraph::{NodePartition, UnionFind, WordGraph, WordGraphError};
