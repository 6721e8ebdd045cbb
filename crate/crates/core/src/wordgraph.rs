//! Complete deterministic word graphs, node partitions, strongly connected
//! components and the greatest deterministic quotient containing a set of
//! seed pairs.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordGraphError {
    #[error("node {node} out of range (graph has {count} nodes)")]
    NodeOutOfRange { node: usize, count: usize },
    #[error("letter {letter} out of range (alphabet has {size} letters)")]
    LetterOutOfRange { letter: usize, size: usize },
    #[error("partition is not compatible with the edges: quotient is not deterministic")]
    NotDeterministic,
    #[error("partition covers {0} nodes, graph has {1}")]
    SizeMismatch(usize, usize),
}

/// Union-find with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[i] != root {
            let next = self.parent[i];
            self.parent[i] = root;
            i = next;
        }
        root
    }

    /// Returns the roots that were merged, or `None` if already together.
    pub fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        Some((ra, rb))
    }

    /// Canonical partition: blocks numbered by their least element.
    pub fn to_partition(&mut self) -> NodePartition {
        let roots: Vec<usize> = (0..self.len()).map(|i| self.find(i)).collect();
        NodePartition::from_labels(&roots)
    }
}

/// A partition of `0..len` with canonical block ids `0..k` assigned in order
/// of each block's least node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodePartition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl NodePartition {
    pub fn identity(len: usize) -> Self {
        NodePartition {
            block_of: (0..len).collect(),
            blocks: (0..len).map(|i| vec![i]).collect(),
        }
    }

    /// Nodes with equal labels share a block.
    pub fn from_labels<L: Eq + std::hash::Hash + Clone>(labels: &[L]) -> Self {
        let mut ids = std::collections::HashMap::new();
        let mut block_of = Vec::with_capacity(labels.len());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (node, label) in labels.iter().enumerate() {
            let next = blocks.len();
            let id = *ids.entry(label.clone()).or_insert(next);
            if id == next {
                blocks.push(Vec::new());
            }
            blocks[id].push(node);
            block_of.push(id);
        }
        NodePartition { block_of, blocks }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, node: usize) -> usize {
        self.block_of[node]
    }

    pub fn block(&self, id: usize) -> &[usize] {
        &self.blocks[id]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &NodePartition) -> bool {
        self.len() == other.len()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&v| other.same_block(v, b[0])))
    }

    /// Blockwise intersection.
    pub fn meet(&self, other: &NodePartition) -> NodePartition {
        assert_eq!(self.len(), other.len());
        let labels: Vec<(usize, usize)> = (0..self.len())
            .map(|v| (self.block_of[v], other.block_of[v]))
            .collect();
        NodePartition::from_labels(&labels)
    }

    /// Pairs `(first node of block, node)` that generate this partition.
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .flat_map(|b| b[1..].iter().map(move |&v| (b[0], v)))
            .collect()
    }
}

/// A complete deterministic word graph stored as a flat `node × letter` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordGraph {
    node_count: usize,
    alphabet_size: usize,
    targets: Vec<usize>,
}

impl WordGraph {
    pub fn new(
        node_count: usize,
        alphabet_size: usize,
        targets: Vec<usize>,
    ) -> Result<Self, WordGraphError> {
        assert_eq!(
            targets.len(),
            node_count * alphabet_size,
            "target table has the wrong length"
        );
        if let Some(&bad) = targets.iter().find(|&&t| t >= node_count) {
            return Err(WordGraphError::NodeOutOfRange {
                node: bad,
                count: node_count,
            });
        }
        Ok(WordGraph {
            node_count,
            alphabet_size,
            targets,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    #[inline]
    pub fn target(&self, node: usize, letter: usize) -> usize {
        self.targets[node * self.alphabet_size + letter]
    }

    pub fn follow_path(&self, start: usize, word: &[usize]) -> Result<usize, WordGraphError> {
        if start >= self.node_count {
            return Err(WordGraphError::NodeOutOfRange {
                node: start,
                count: self.node_count,
            });
        }
        let mut node = start;
        for &letter in word {
            if letter >= self.alphabet_size {
                return Err(WordGraphError::LetterOutOfRange {
                    letter,
                    size: self.alphabet_size,
                });
            }
            node = self.target(node, letter);
        }
        Ok(node)
    }

    /// Strongly connected components (iterative Tarjan).
    pub fn sccs(&self) -> NodePartition {
        const UNSEEN: usize = usize::MAX;
        let n = self.node_count;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comp = vec![UNSEEN; n];
        let mut next_index = 0;
        let mut next_comp = 0;
        // (node, next letter to explore)
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            call.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut letter)) = call.last_mut() {
                if *letter < self.alphabet_size {
                    let w = self.target(v, *letter);
                    *letter += 1;
                    if index[w] == UNSEEN {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
        NodePartition::from_labels(&comp)
    }

    /// The quotient by `partition`, which must be compatible with the edges.
    pub fn quotient(&self, partition: &NodePartition) -> Result<WordGraph, WordGraphError> {
        if partition.len() != self.node_count {
            return Err(WordGraphError::SizeMismatch(
                partition.len(),
                self.node_count,
            ));
        }
        let k = partition.block_count();
        let a = self.alphabet_size;
        let mut targets = vec![usize::MAX; k * a];
        for v in 0..self.node_count {
            let b = partition.block_of(v);
            for x in 0..a {
                let t = partition.block_of(self.target(v, x));
                let slot = &mut targets[b * a + x];
                if *slot == usize::MAX {
                    *slot = t;
                } else if *slot != t {
                    return Err(WordGraphError::NotDeterministic);
                }
            }
        }
        Ok(WordGraph {
            node_count: k,
            alphabet_size: a,
            targets,
        })
    }

    /// Least equivalence containing `seeds` whose quotient is deterministic,
    /// together with that quotient.
    ///
    /// Merging two blocks forces their same-letter targets together; pending
    /// merges are kept on a worklist until it drains.
    pub fn quotient_closure(&self, seeds: &[(usize, usize)]) -> (NodePartition, WordGraph) {
        let mut uf = UnionFind::new(self.node_count);
        let mut pending: Vec<(usize, usize)> = seeds.to_vec();
        while let Some((a, b)) = pending.pop() {
            if let Some((ra, rb)) = uf.union(a, b) {
                for x in 0..self.alphabet_size {
                    let (ta, tb) = (self.target(ra, x), self.target(rb, x));
                    if ta != tb {
                        pending.push((ta, tb));
                    }
                }
            }
        }
        let partition = uf.to_partition();
        let quotient = self
            .quotient(&partition)
            .expect("closure under targets yields a deterministic quotient");
        (partition, quotient)
    }

    /// DOT text; edge colour index = letter.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("digraph WordGraph {\n  node [shape=box];\n");
        for v in 0..self.node_count {
            let label = labels
                .and_then(|l| l.get(v))
                .cloned()
                .unwrap_or_else(|| v.to_string());
            let _ = writeln!(out, "  n{v} [label=\"{label}\"];");
        }
        for v in 0..self.node_count {
            for x in 0..self.alphabet_size {
                let _ = writeln!(
                    out,
                    "  n{v} -> n{} [colorscheme=set19, color={}, label=\"{x}\"];",
                    self.target(v, x),
                    x % 9 + 1
                );
            }
        }
        out.push_str("}\n");
        out
    }
}
