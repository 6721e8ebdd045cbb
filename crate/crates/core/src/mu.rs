//! The maximum idempotent-separating congruence, found through the atoms of
//! the boolean algebra generated by the domains of the idempotents.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::congruence::{CongruenceDS, CongruenceError};
use crate::pperm::PartialPerm;
use crate::semigroup::InverseSemigroup;
use crate::wordgraph::NodePartition;

/// Partition of the points `1..=n` by which idempotent domains contain them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomPartition {
    atoms: Vec<Vec<usize>>,
}

impl AtomPartition {
    /// Atoms ordered by least point, points ascending.
    pub fn atoms(&self) -> &[Vec<usize>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

pub fn boolean_atoms(s: &InverseSemigroup) -> AtomPartition {
    let mut by_pattern: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut atoms: Vec<Vec<usize>> = Vec::new();
    for p in 1..=s.degree() {
        let pattern: Vec<bool> = s
            .idempotents()
            .iter()
            .map(|e| e.image(p).is_some())
            .collect();
        let id = *by_pattern.entry(pattern).or_insert_with(|| {
            atoms.push(Vec::new());
            atoms.len() - 1
        });
        atoms[id].push(p);
    }
    AtomPartition { atoms }
}

fn fixes_atoms(s: &PartialPerm, atoms: &AtomPartition) -> bool {
    atoms.atoms().iter().all(|b| {
        let images: Option<HashSet<usize>> = b.iter().map(|&p| s.image(p)).collect();
        match images {
            Some(images) => b.iter().all(|p| images.contains(p)),
            // not contained in the domain
            None => true,
        }
    })
}

/// The maximum idempotent-separating congruence.
#[derive(Debug, Clone)]
pub struct MuCongruence {
    base: Arc<InverseSemigroup>,
    atoms: AtomPartition,
    centraliser: HashSet<PartialPerm>,
}

impl MuCongruence {
    pub fn new(base: Arc<InverseSemigroup>) -> Self {
        let atoms = boolean_atoms(&base);
        let centraliser = base
            .elements()
            .iter()
            .filter(|s| fixes_atoms(s, &atoms))
            .cloned()
            .collect();
        MuCongruence {
            base,
            atoms,
            centraliser,
        }
    }

    pub fn base(&self) -> &Arc<InverseSemigroup> {
        &self.base
    }

    pub fn atoms(&self) -> &AtomPartition {
        &self.atoms
    }

    /// Elements commuting with every idempotent, sorted.
    pub fn centraliser(&self) -> Vec<PartialPerm> {
        let mut c: Vec<PartialPerm> = self.centraliser.iter().cloned().collect();
        c.sort_unstable();
        c
    }

    pub fn in_centraliser(&self, s: &PartialPerm) -> bool {
        self.centraliser.contains(s)
    }

    pub fn mu_contains(&self, a: &PartialPerm, b: &PartialPerm) -> Result<bool, CongruenceError> {
        self.base.require(a)?;
        self.base.require(b)?;
        Ok(a.right_identity() == b.right_identity()
            && self.centraliser.contains(&(a * &b.inverse())))
    }

    /// The same congruence as a [`CongruenceDS`] without generating pairs:
    /// identity trace, and each group cut down to the centraliser.
    pub fn as_congruence(&self) -> CongruenceDS {
        let base = Arc::clone(&self.base);
        let trace = NodePartition::identity(base.node_count());
        let quotient = base.gamma().clone();
        CongruenceDS::assemble(base, None, trace, quotient, |_, group| {
            Ok(group.filter(|h| self.centraliser.contains(h)))
        })
        .expect("no fallible steps for an identity trace")
    }
}
