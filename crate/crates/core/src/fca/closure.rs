//! Lectic enumeration of closed attribute sets (NextClosure).

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

use super::derivation::attribute_closure;

/// Lectically next set closed under `close`, after `current`.
///
/// `current` must itself be closed under `close`. Position 0 is the most
/// significant element of the order.
pub(crate) fn next_closed_set<F>(current: &BitSet, close: F) -> Option<BitSet>
where
    F: Fn(&BitSet) -> BitSet,
{
    let mut prefix = current.clone();
    for i in (0..current.universe()).rev() {
        if prefix.contains(i) {
            prefix.remove(i);
            continue;
        }
        let mut candidate = prefix.clone();
        candidate.insert(i);
        let closed = close(&candidate);
        if closed.agrees_below(&prefix, i) {
            return Some(closed);
        }
    }
    None
}

/// Next intent in lectic order over the context's attribute declaration
/// order, or `None` once `current` is the last one. Pass `None` to start.
pub fn next_closure(ctx: &FormalContext, current: Option<&BitSet>) -> Result<Option<BitSet>> {
    let close = |s: &BitSet| attribute_closure(ctx, s);
    match current {
        None => Ok(Some(close(&BitSet::new(ctx.attribute_count())))),
        Some(set) => {
            if set.universe() != ctx.attribute_count() {
                return Err(Error::NotClosed(format!(
                    "set spans {} attributes, context has {}",
                    set.universe(),
                    ctx.attribute_count()
                )));
            }
            if close(set) != *set {
                return Err(Error::NotClosed(ctx.attribute_names(set).join(", ")));
            }
            Ok(next_closed_set(set, close))
        }
    }
}

/// Every intent of the context, in lectic order.
pub fn closed_sets(ctx: &FormalContext) -> Vec<BitSet> {
    let close = |s: &BitSet| attribute_closure(ctx, s);
    let mut out = vec![close(&BitSet::new(ctx.attribute_count()))];
    while let Some(next) = next_closed_set(out.last().unwrap(), close) {
        out.push(next);
    }
    out
}
