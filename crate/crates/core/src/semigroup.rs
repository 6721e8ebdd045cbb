//! The data structure for an inverse semigroup of partial permutations:
//! enumerated elements with factorizations, the idempotents, the word graph
//! of the conjugation action on idempotents, its strongly connected
//! components (the D-classes) and one group H-class per component.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::group::{in_h_class, GroupHandle};
use crate::pperm::PartialPerm;
use crate::wordgraph::{NodePartition, WordGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generator {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(PartialPerm),
    #[error("no D-class with id {0}")]
    InvalidDClass(usize),
}

/// One strongly connected component of the idempotent word graph.
#[derive(Debug, Clone)]
pub struct DClass {
    /// Node holding the least idempotent (canonical order) of the component.
    pub rep: usize,
    /// Nodes in breadth-first order from `rep`.
    pub nodes: Vec<usize>,
    /// The group H-class of the representative idempotent.
    pub group: GroupHandle,
}

#[derive(Debug)]
pub struct InverseSemigroup {
    degree: usize,
    generators: Vec<PartialPerm>,
    alphabet: Vec<PartialPerm>,
    elements: Vec<PartialPerm>,
    index: HashMap<PartialPerm, usize>,
    // (prefix element, last letter); prefix is None for single letters
    parent: Vec<(Option<usize>, usize)>,
    nodes: Vec<PartialPerm>,
    node_index: HashMap<PartialPerm, usize>,
    identity_node: usize,
    identity_adjoined: bool,
    gamma: WordGraph,
    sccs: NodePartition,
    d_classes: Vec<DClass>,
    d_class_of_node: Vec<Option<usize>>,
    connector: Vec<PartialPerm>,
    connector_word: Vec<Vec<usize>>,
}

impl InverseSemigroup {
    /// Enumerates the inverse semigroup generated by `gens` and builds the
    /// word graph, its components and the component groups.
    pub fn new(degree: usize, gens: &[PartialPerm]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::NoGenerators);
        }
        for (index, g) in gens.iter().enumerate() {
            if g.degree() != degree {
                return Err(SemigroupError::DegreeMismatch {
                    index,
                    found: g.degree(),
                    expected: degree,
                });
            }
        }
        let mut generators: Vec<PartialPerm> = Vec::new();
        for g in gens {
            if !generators.contains(g) {
                generators.push(g.clone());
            }
        }
        let mut alphabet = generators.clone();
        for g in &generators {
            let inv = g.inverse();
            if !alphabet.contains(&inv) {
                alphabet.push(inv);
            }
        }

        let (elements, index, parent) = enumerate(&alphabet);

        let mut nodes: Vec<PartialPerm> = elements
            .iter()
            .filter(|s| s.is_idempotent())
            .cloned()
            .collect();
        let identity = PartialPerm::identity(degree);
        let identity_adjoined = !index.contains_key(&identity);
        if identity_adjoined {
            nodes.push(identity);
        }
        let node_index: HashMap<PartialPerm, usize> = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let identity_node = node_index[&PartialPerm::identity(degree)];

        let inverses: Vec<PartialPerm> = alphabet.iter().map(PartialPerm::inverse).collect();
        let mut targets = Vec::with_capacity(nodes.len() * alphabet.len());
        for e in &nodes {
            for (x, xinv) in alphabet.iter().zip(&inverses) {
                let conj = &(xinv * e) * x;
                targets.push(node_index[&conj]);
            }
        }
        let gamma =
            WordGraph::new(nodes.len(), alphabet.len(), targets).expect("targets are node indices");
        let sccs = gamma.sccs();

        let mut sg = InverseSemigroup {
            degree,
            generators,
            alphabet,
            elements,
            index,
            parent,
            nodes,
            node_index,
            identity_node,
            identity_adjoined,
            gamma,
            sccs,
            d_classes: Vec::new(),
            d_class_of_node: Vec::new(),
            connector: Vec::new(),
            connector_word: Vec::new(),
        };
        sg.build_d_classes();
        Ok(sg)
    }

    fn build_d_classes(&mut self) {
        let n = self.nodes.len();
        self.d_class_of_node = vec![None; n];
        self.connector = self.nodes.clone();
        self.connector_word = vec![Vec::new(); n];
        let mut d_classes = Vec::new();
        for block in self.sccs.blocks() {
            if self.identity_adjoined && block.contains(&self.identity_node) {
                continue;
            }
            let id = d_classes.len();
            let rep = *block
                .iter()
                .min_by(|&&a, &&b| self.nodes[a].cmp(&self.nodes[b]))
                .expect("blocks are non-empty");
            let scc = self.sccs.block_of(rep);
            // breadth-first spanning tree of the component rooted at rep
            let mut order = vec![rep];
            let mut seen = vec![false; n];
            seen[rep] = true;
            let mut queue = VecDeque::from([rep]);
            while let Some(v) = queue.pop_front() {
                for x in 0..self.alphabet.len() {
                    let w = self.gamma.target(v, x);
                    if !seen[w] && self.sccs.block_of(w) == scc {
                        seen[w] = true;
                        self.connector[w] = &self.connector[v] * &self.alphabet[x];
                        let mut word = self.connector_word[v].clone();
                        word.push(x);
                        self.connector_word[w] = word;
                        order.push(w);
                        queue.push_back(w);
                    }
                }
            }
            debug_assert_eq!(order.len(), block.len());
            for &v in &order {
                self.d_class_of_node[v] = Some(id);
            }
            // Schreier generators rep·s_v·x·s_w⁻¹ for edges v -x-> w inside the component
            let rep_idem = self.nodes[rep].clone();
            let mut gens = Vec::new();
            for &v in &order {
                for x in 0..self.alphabet.len() {
                    let w = self.gamma.target(v, x);
                    if self.sccs.block_of(w) != scc {
                        continue;
                    }
                    let g =
                        &(&self.connector[v] * &self.alphabet[x]) * &self.connector[w].inverse();
                    if in_h_class(&rep_idem, &g) {
                        gens.push(g);
                    }
                }
            }
            let group =
                GroupHandle::generate(rep_idem, gens).expect("generators filtered to the H-class");
            d_classes.push(DClass {
                rep,
                nodes: order,
                group,
            });
        }
        self.d_classes = d_classes;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[PartialPerm] {
        &self.generators
    }

    /// Generators followed by the inverses not already present.
    pub fn alphabet(&self) -> &[PartialPerm] {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Elements ordered by factorization length, then canonically.
    pub fn elements(&self) -> &[PartialPerm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialPerm {
        &self.elements[i]
    }

    pub fn index_of(&self, s: &PartialPerm) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &PartialPerm) -> bool {
        self.index.contains_key(s)
    }

    pub(crate) fn require(&self, s: &PartialPerm) -> Result<usize, SemigroupError> {
        self.index_of(s)
            .ok_or_else(|| SemigroupError::NotInSemigroup(s.clone()))
    }

    /// A shortest word over the alphabet that evaluates to `s`.
    pub fn factorize(&self, s: &PartialPerm) -> Result<Vec<usize>, SemigroupError> {
        let mut i = self.require(s)?;
        let mut word = Vec::new();
        loop {
            let (prefix, letter) = self.parent[i];
            word.push(letter);
            match prefix {
                Some(p) => i = p,
                None => break,
            }
        }
        word.reverse();
        Ok(word)
    }

    /// Left-to-right product of the letters; the empty word gives the identity.
    pub fn evaluate(&self, word: &[usize]) -> PartialPerm {
        word.iter()
            .fold(PartialPerm::identity(self.degree), |acc, &x| {
                &acc * &self.alphabet[x]
            })
    }

    pub fn idempotent_count(&self) -> usize {
        self.nodes.len() - usize::from(self.identity_adjoined)
    }

    /// Idempotents of the semigroup (excluding an adjoined identity).
    pub fn idempotents(&self) -> &[PartialPerm] {
        &self.nodes[..self.idempotent_count()]
    }

    /// Number of word graph nodes, including an adjoined identity.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_idempotent(&self, node: usize) -> &PartialPerm {
        &self.nodes[node]
    }

    pub fn node_of(&self, e: &PartialPerm) -> Option<usize> {
        self.node_index.get(e).copied()
    }

    pub fn identity_node(&self) -> usize {
        self.identity_node
    }

    pub fn identity_adjoined(&self) -> bool {
        self.identity_adjoined
    }

    /// The node is an idempotent of the semigroup rather than an adjoined identity.
    pub fn is_element_node(&self, node: usize) -> bool {
        !(self.identity_adjoined && node == self.identity_node)
    }

    /// Word graph with edges `e -x-> x⁻¹ex`.
    pub fn gamma(&self) -> &WordGraph {
        &self.gamma
    }

    pub fn sccs(&self) -> &NodePartition {
        &self.sccs
    }

    pub fn d_classes(&self) -> &[DClass] {
        &self.d_classes
    }

    pub fn d_class_of_node(&self, node: usize) -> Option<usize> {
        self.d_class_of_node[node]
    }

    /// The group H-class at the representative of a D-class.
    pub fn schreier_group(&self, d_class: usize) -> Result<&GroupHandle, SemigroupError> {
        self.d_classes
            .get(d_class)
            .map(|d| &d.group)
            .ok_or(SemigroupError::InvalidDClass(d_class))
    }

    /// `s` with `s⁻¹·rep·s = node` and `s·s⁻¹ = rep`, where `rep` is the
    /// representative of the node's D-class.
    pub fn connector(&self, node: usize) -> &PartialPerm {
        &self.connector[node]
    }

    /// Letters whose product, left-multiplied by the representative, is
    /// [`connector`](Self::connector).
    pub fn connector_word(&self, node: usize) -> &[usize] {
        &self.connector_word[node]
    }

    /// `s` with `s⁻¹·from·s = to`; both nodes must lie in one D-class.
    pub fn connector_between(&self, from: usize, to: usize) -> PartialPerm {
        debug_assert_eq!(self.d_class_of_node[from], self.d_class_of_node[to]);
        &self.connector[from].inverse() * &self.connector[to]
    }

    /// The group H-class of the idempotent at `node`.
    pub fn h_class_group(&self, node: usize) -> GroupHandle {
        let d = self.d_class_of_node[node].expect("node is an idempotent of the semigroup");
        self.d_classes[d].group.conjugate(&self.connector[node])
    }
}

type Enumeration = (
    Vec<PartialPerm>,
    HashMap<PartialPerm, usize>,
    Vec<(Option<usize>, usize)>,
);

/// Breadth-first closure of the alphabet under right multiplication. Layers
/// hold elements of equal shortest word length, each layer sorted canonically.
fn enumerate(alphabet: &[PartialPerm]) -> Enumeration {
    let mut elements: Vec<PartialPerm> = Vec::new();
    let mut index: HashMap<PartialPerm, usize> = HashMap::new();
    let mut parent: Vec<(Option<usize>, usize)> = Vec::new();

    let mut layer: HashMap<PartialPerm, (Option<usize>, usize)> = HashMap::new();
    for (x, a) in alphabet.iter().enumerate() {
        layer.entry(a.clone()).or_insert((None, x));
    }
    while !layer.is_empty() {
        let mut sorted: Vec<(PartialPerm, (Option<usize>, usize))> = layer.drain().collect();
        sorted.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let start = elements.len();
        for (s, p) in sorted {
            index.insert(s.clone(), elements.len());
            elements.push(s);
            parent.push(p);
        }
        for (i, s) in elements.iter().enumerate().skip(start) {
            for (x, a) in alphabet.iter().enumerate() {
                let y = s * a;
                if !index.contains_key(&y) {
                    layer.entry(y).or_insert((Some(i), x));
                }
            }
        }
    }
    (elements, index, parent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(s: &str) -> PartialPerm {
        PartialPerm::parse(s, 4).unwrap()
    }

    fn i4() -> InverseSemigroup {
        InverseSemigroup::new(4, &[pp("(1 2 3 4)"), pp("(1 2)(3)(4)"), pp("[4 3 2 1]")]).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let s = InverseSemigroup::new(4, &[PartialPerm::identity(4)]).unwrap();
        assert_eq!((s.size(), s.idempotent_count()), (1, 1));
        let c2 = InverseSemigroup::new(2, &[PartialPerm::parse("(1 2)", 2).unwrap()]).unwrap();
        assert_eq!(c2.size(), 2);
        assert!(c2.contains(&PartialPerm::identity(2)));
        let s = i4();
        assert_eq!(s.size(), 209);
        assert_eq!(s.idempotent_count(), 16);
        assert!(!s.identity_adjoined());
    }

    #[test]
    fn alphabet_adds_missing_inverses() {
        let s = i4();
        // (1 2) is self-inverse; the 4-cycle and the chain are not
        assert_eq!(s.alphabet().len(), 5);
        assert_eq!(s.alphabet()[3], pp("(1 4 3 2)"));
        assert_eq!(s.alphabet()[4], pp("[1 2 3 4]"));
    }

    #[test]
    fn gamma_examples() {
        let s = i4();
        assert_eq!(s.gamma().node_count(), 16);
        let one = s.identity_node();
        let target = s.gamma().target(one, 2);
        assert_eq!(s.node_idempotent(target), &pp("(1)(2)(3)"));
        assert_eq!(s.gamma().follow_path(one, &[0, 0, 0, 0]).unwrap(), one);
        let single = InverseSemigroup::new(3, &[PartialPerm::identity(3)]).unwrap();
        assert_eq!(single.gamma().node_count(), 1);
        assert_eq!(single.gamma().target(0, 0), 0);
    }

    #[test]
    fn d_classes_of_i4() {
        let s = i4();
        let mut sizes: Vec<usize> = s.d_classes().iter().map(|d| d.nodes.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 4, 4, 6]);
        let by_rank = |r: usize| {
            s.d_classes()
                .iter()
                .find(|d| s.node_idempotent(d.rep).rank() == r)
                .unwrap()
        };
        assert_eq!(by_rank(4).group.size(), 24);
        assert_eq!(by_rank(3).group.size(), 6);
        assert_eq!(s.node_idempotent(by_rank(3).rep), &pp("(2)(3)(4)"));
        assert_eq!(by_rank(0).group.size(), 1);
    }

    #[test]
    fn connectors_conjugate_rep_to_node() {
        let s = i4();
        for d in s.d_classes() {
            let rep = s.node_idempotent(d.rep);
            for &v in &d.nodes {
                let c = s.connector(v);
                assert_eq!(&(&c.inverse() * rep) * c, *s.node_idempotent(v));
                assert_eq!(&c.left_identity(), rep);
                assert!(s.contains(c));
            }
        }
    }

    #[test]
    fn adjoined_identity_is_its_own_node() {
        let s = InverseSemigroup::new(3, &[PartialPerm::parse("[1 2 3]", 3).unwrap()]).unwrap();
        assert!(s.identity_adjoined());
        assert_eq!(s.node_count(), s.idempotent_count() + 1);
        assert!(s.d_class_of_node(s.identity_node()).is_none());
        // no edge enters the adjoined node
        for v in 0..s.node_count() {
            for x in 0..s.alphabet().len() {
                assert_ne!(s.gamma().target(v, x), s.identity_node());
            }
        }
    }

    #[test]
    fn factorize_round_trip() {
        let s = i4();
        assert_eq!(s.factorize(&pp("(1 2 3 4)")).unwrap(), vec![0]);
        let e = pp("(1)(2)(3)");
        assert_eq!(s.evaluate(&s.factorize(&e).unwrap()), e);
        for x in s.elements() {
            assert_eq!(&s.evaluate(&s.factorize(x).unwrap()), x);
        }
        let small = InverseSemigroup::new(5, &[PartialPerm::parse("(1 2)", 5).unwrap()]).unwrap();
        assert!(matches!(
            small.factorize(&PartialPerm::identity(5)),
            Err(SemigroupError::NotInSemigroup(_))
        ));
    }

    #[test]
    fn errors() {
        assert_eq!(
            InverseSemigroup::new(3, &[]).unwrap_err(),
            SemigroupError::NoGenerators
        );
        assert!(matches!(
            InverseSemigroup::new(3, &[PartialPerm::identity(2)]),
            Err(SemigroupError::DegreeMismatch { .. })
        ));
        assert!(i4().schreier_group(99).is_err());
    }
}
