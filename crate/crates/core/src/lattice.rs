//! Joins and meets of congruences on one semigroup.

use std::sync::Arc;

use crate::congruence::{CongruenceDS, CongruenceError};

fn same_base(c1: &CongruenceDS, c2: &CongruenceDS) -> Result<(), CongruenceError> {
    if Arc::ptr_eq(c1.base(), c2.base()) {
        Ok(())
    } else {
        Err(CongruenceError::BaseMismatch)
    }
}

/// The least congruence containing both; both operands need generating pairs.
pub fn join(c1: &CongruenceDS, c2: &CongruenceDS) -> Result<CongruenceDS, CongruenceError> {
    same_base(c1, c2)?;
    let (Some(r1), Some(r2)) = (c1.pairs(), c2.pairs()) else {
        return Err(CongruenceError::MissingPairs);
    };
    let base = Arc::clone(c1.base());
    let mut seeds = c1.trace().generating_pairs();
    seeds.extend(c2.trace().generating_pairs());
    let (trace, quotient) = base.gamma().quotient_closure(&seeds);
    let pairs = r1.iter().chain(r2).cloned().collect();
    CongruenceDS::from_trace_and_pairs(base, pairs, trace, quotient)
}

/// The intersection of both congruences. The result has no generating pairs.
pub fn meet(c1: &CongruenceDS, c2: &CongruenceDS) -> Result<CongruenceDS, CongruenceError> {
    same_base(c1, c2)?;
    let base = Arc::clone(c1.base());
    let trace = c1.trace().meet(c2.trace());
    let quotient = base
        .gamma()
        .quotient(&trace)
        .expect("intersections of normal congruences are normal");
    CongruenceDS::assemble(base, None, trace, quotient, |f, group| {
        let mut err = None;
        let n = group.filter(|h| match (c1.contains(h, f), c2.contains(h, f)) {
            (Ok(x), Ok(y)) => x && y,
            (Err(e), _) | (_, Err(e)) => {
                err.get_or_insert(e);
                false
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(n),
        }
    })
}
