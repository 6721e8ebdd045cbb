//! Property checks shared by the proptest suite and the acceptance run.
//! Each returns a description of the first violation.

use std::sync::Arc;

use invcong::{
    CongruenceDS, InverseSemigroup, MuCongruence, NodePartition, PartialPerm, UnionFind, WordGraph,
};

use super::{compare_with_oracle, oracle_for};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn leq(a: &PartialPerm, b: &PartialPerm) -> bool {
    a.natural_leq(b).unwrap()
}

/// Inverse semigroup axioms on three elements.
pub fn inverse_axioms(x: &PartialPerm, y: &PartialPerm, z: &PartialPerm) -> Check {
    let xi = x.inverse();
    ensure!(&(x * &xi) * x == *x, "x x⁻¹ x ≠ x for {x}");
    ensure!(&(&xi * x) * &xi == xi, "x⁻¹ x x⁻¹ ≠ x⁻¹ for {x}");
    ensure!(
        &(x * y) * z == x * &(y * z),
        "associativity fails for {x} {y} {z}"
    );
    ensure!(
        (x * y).inverse() == &y.inverse() * &xi,
        "(xy)⁻¹ ≠ y⁻¹x⁻¹ for {x} {y}"
    );
    let (e, f) = (x.left_identity(), y.right_identity());
    ensure!(&e * &f == &f * &e, "idempotents {e} {f} do not commute");
    Ok(())
}

/// `e·y ≤ y`, and the order is compatible with products and inverses;
/// also `x·e·y ≤ x·y`.
pub fn natural_order(
    s: &InverseSemigroup,
    y: &PartialPerm,
    z: &PartialPerm,
    e: &PartialPerm,
) -> Check {
    let x = e * y;
    ensure!(s.contains(&x), "{x} escapes the semigroup");
    ensure!(leq(&x, y), "{x} ≰ {y}");
    ensure!(
        leq(&(&x * z), &(y * z)),
        "right multiplication breaks {x} ≤ {y}"
    );
    ensure!(
        leq(&(z * &x), &(z * y)),
        "left multiplication breaks {x} ≤ {y}"
    );
    ensure!(
        leq(&x.inverse(), &y.inverse()),
        "inversion breaks {x} ≤ {y}"
    );
    ensure!(
        leq(&(&(z * e) * y), &(z * y)),
        "z e y ≰ z y for {z} {e} {y}"
    );
    Ok(())
}

fn d_class_of(s: &InverseSemigroup, x: &PartialPerm) -> Option<usize> {
    s.d_class_of_node(s.node_of(&x.left_identity())?)
}

/// If `z·x·e·y` is D-related to `z` then `z·x·e·y = z·x·y`.
pub fn eliminate_idempotents(
    s: &InverseSemigroup,
    x: &PartialPerm,
    y: &PartialPerm,
    z: &PartialPerm,
    e: &PartialPerm,
) -> Check {
    let long = &(&(z * x) * e) * y;
    if d_class_of(s, &long) == d_class_of(s, z) {
        ensure!(long == &(z * x) * y, "z x e y ≠ z x y for {z} {x} {e} {y}");
    }
    Ok(())
}

/// Strongly connected components of the word graph are exactly the
/// D-classes: idempotents `e`, `f` share a component iff some element has
/// `ss⁻¹ = e` and `s⁻¹s = f`.
pub fn scc_is_d_class(s: &InverseSemigroup) -> Check {
    let n = s.idempotent_count();
    let mut related = vec![false; n * n];
    for x in s.elements() {
        let a = s.node_of(&x.left_identity()).unwrap();
        let b = s.node_of(&x.right_identity()).unwrap();
        related[a * n + b] = true;
    }
    for a in 0..n {
        for b in 0..n {
            let same = s.d_class_of_node(a) == s.d_class_of_node(b);
            ensure!(
                same == related[a * n + b],
                "{} and {} disagree",
                s.node_idempotent(a),
                s.node_idempotent(b)
            );
        }
    }
    Ok(())
}

pub fn factorize_round_trip(s: &InverseSemigroup) -> Check {
    for x in s.elements() {
        let w = s.factorize(x).unwrap();
        ensure!(
            s.evaluate(&w) == *x,
            "factorization of {x} evaluates elsewhere"
        );
    }
    Ok(())
}

/// The trace is compatible with every edge, so its quotient is deterministic.
pub fn deterministic_quotient(c: &CongruenceDS) -> Check {
    let g = c.base().gamma();
    let t = c.trace();
    for block in t.blocks() {
        for x in 0..g.alphabet_size() {
            let target = t.block_of(g.target(block[0], x));
            for &v in block {
                ensure!(
                    t.block_of(g.target(v, x)) == target,
                    "block of node {v} splits under letter {x}"
                );
            }
        }
    }
    ensure!(c.base().gamma().quotient(t).is_ok(), "quotient rejected");
    Ok(())
}

/// Least compatible partition containing `seeds` by repeated passes.
pub fn naive_quotient_closure(g: &WordGraph, seeds: &[(usize, usize)]) -> NodePartition {
    let mut uf = UnionFind::new(g.node_count());
    for &(a, b) in seeds {
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for a in 0..g.node_count() {
            for b in 0..g.node_count() {
                if uf.find(a) != uf.find(b) {
                    continue;
                }
                for x in 0..g.alphabet_size() {
                    if uf.union(g.target(a, x), g.target(b, x)).is_some() {
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return uf.to_partition();
        }
    }
}

pub fn quotient_closure_matches_naive(g: &WordGraph, seeds: &[(usize, usize)]) -> Check {
    let (p, q) = g.quotient_closure(seeds);
    ensure!(
        p == naive_quotient_closure(g, seeds),
        "closure differs from the naive fixpoint"
    );
    ensure!(q.node_count() == p.block_count(), "quotient size");
    // idempotent, and monotone in the seeds
    let (again, _) = g.quotient_closure(&p.generating_pairs());
    ensure!(again == p, "closure is not idempotent");
    if !seeds.is_empty() {
        let (smaller, _) = g.quotient_closure(&seeds[1..]);
        ensure!(smaller.refines(&p), "closure is not monotone");
    }
    Ok(())
}

/// `φ(y) ≤ y`, `φ∘φ = φ`, `φ(y)φ(y)⁻¹ = μ(y)`, `φ(y)⁻¹φ(y) = ν(y)`, and
/// `φ(yz) = φ(y)φ(z)` whenever `y`, `z`, `yz` share a D-class.
pub fn phi_properties(c: &CongruenceDS, y: &PartialPerm, z: &PartialPerm) -> Check {
    let phi = c.phi(y).unwrap();
    ensure!(leq(&phi, y), "φ({y}) = {phi} ≰ {y}");
    ensure!(c.phi(&phi).unwrap() == phi, "φ not idempotent at {y}");
    ensure!(
        phi.left_identity() == c.mu_map(y).unwrap(),
        "φ(y)φ(y)⁻¹ ≠ μ(y) at {y}"
    );
    ensure!(
        phi.right_identity() == c.nu_map(y).unwrap(),
        "φ(y)⁻¹φ(y) ≠ ν(y) at {y}"
    );
    ensure!(c.contains(&phi, y).unwrap(), "φ({y}) not congruent to {y}");
    let s = c.base();
    let yz = y * z;
    let d = d_class_of(s, y);
    if d_class_of(s, z) == d && d_class_of(s, &yz) == d {
        let lhs = c.phi(&yz).unwrap();
        let rhs = &phi * &c.phi(z).unwrap();
        ensure!(lhs == rhs, "φ({y}·{z}) = {lhs} but φ({y})φ({z}) = {rhs}");
    }
    Ok(())
}

/// Classes of distinct representatives are disjoint and cover the semigroup.
pub fn classes_partition(c: &CongruenceDS) -> Check {
    let s = c.base();
    let mut seen = vec![false; s.size()];
    let mut total = 0;
    for rep in c.class_reps() {
        let class = c.class_of(&rep).unwrap();
        ensure!(class.contains(&rep), "class of {rep} misses it");
        for y in &class {
            let i = s.index_of(y).unwrap();
            ensure!(!seen[i], "{y} lies in two classes");
            seen[i] = true;
        }
        total += class.len();
    }
    ensure!(
        total == s.size(),
        "classes cover {total} of {} elements",
        s.size()
    );
    Ok(())
}

/// Pair membership from the trace and the enumerated kernel.
pub fn kernel_trace_reconstruction(c: &CongruenceDS) -> Check {
    let s = c.base();
    let kernel: std::collections::HashSet<PartialPerm> = c.kernel().into_iter().collect();
    for a in s.elements() {
        for b in s.elements() {
            let expected = c
                .trace_related(&a.right_identity(), &b.right_identity())
                .unwrap()
                && kernel.contains(&(a * &b.inverse()));
            ensure!(
                c.contains(a, b).unwrap() == expected,
                "({a}, {b}) disagrees with kernel and trace"
            );
        }
    }
    Ok(())
}

/// Idempotent-separating, a congruence, equal to its definition, and its
/// centraliser is the definitional one.
pub fn mu_is_max_separating_congruence(s: &Arc<InverseSemigroup>) -> Check {
    let mu = MuCongruence::new(Arc::clone(s));
    let rel = |a: &PartialPerm, b: &PartialPerm| mu.mu_contains(a, b).unwrap();
    ensure!(
        mu.centraliser() == super::centraliser_by_definition(s),
        "centraliser differs from definition"
    );
    for a in s.elements() {
        for b in s.elements() {
            let r = rel(a, b);
            ensure!(
                r == super::mu_by_definition(s, a, b),
                "μ({a}, {b}) differs from definition"
            );
            if r {
                ensure!(
                    !(a.is_idempotent() && b.is_idempotent() && a != b),
                    "μ relates idempotents {a}, {b}"
                );
                for g in s.alphabet() {
                    ensure!(
                        rel(&(a * g), &(b * g)) && rel(&(g * a), &(g * b)),
                        "μ not compatible at {a}, {b}"
                    );
                }
            }
        }
    }
    let as_ds = mu.as_congruence();
    ensure!(
        super::same_relation(s, |a, b| as_ds.contains(a, b).unwrap(), rel),
        "μ as a data structure differs"
    );
    Ok(())
}

/// A congruence generated by `pairs` that separates idempotents lies inside μ.
pub fn mu_is_maximal(s: &Arc<InverseSemigroup>, pairs: &[invcong::Pair]) -> Check {
    let mu = MuCongruence::new(Arc::clone(s));
    let c = CongruenceDS::compute(Arc::clone(s), pairs).unwrap();
    let separating = c.trace_classes().iter().all(|class| class.len() == 1);
    if separating {
        for a in s.elements() {
            for b in s.elements() {
                if c.contains(a, b).unwrap() {
                    ensure!(
                        mu.mu_contains(a, b).unwrap(),
                        "({a}, {b}) related but not by μ"
                    );
                }
            }
        }
    }
    Ok(())
}

/// Full agreement with the oracle.
pub fn oracle_agreement(c: &CongruenceDS) -> Check {
    let oracle = oracle_for(c.base(), c.pairs().unwrap());
    let mut rng = rand::rngs::mock::StepRng::new(0, 1);
    let bad = compare_with_oracle(&mut rng, c, &oracle, None);
    ensure!(
        bad.is_empty(),
        "{} mismatches, first: {}",
        bad.len(),
        bad[0]
    );
    Ok(())
}
