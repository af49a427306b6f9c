use std::collections::HashSet;

use super::{Dimension, FormalContext};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// `"<dimension>:<name>"`, the attribute name used in merged contexts.
pub fn qualified_name(dimension: Dimension, name: &str) -> String {
    format!("{}:{name}", dimension.tag())
}

/// Concatenates contexts over the same object list into one `combined`
/// context with dimension-qualified attribute names.
pub fn merge_contexts(contexts: &[FormalContext]) -> Result<FormalContext> {
    let Some(first) = contexts.first() else {
        return Ok(FormalContext::empty(Dimension::Combined));
    };
    for ctx in &contexts[1..] {
        if ctx.objects() != first.objects() {
            let detail = first
                .objects()
                .iter()
                .zip(ctx.objects())
                .position(|(a, b)| a != b)
                .map(|i| {
                    format!(
                        "position {i}: {:?} vs {:?}",
                        first.objects()[i],
                        ctx.objects()[i]
                    )
                })
                .unwrap_or_else(|| {
                    format!(
                        "{} objects vs {}",
                        first.object_count(),
                        ctx.object_count()
                    )
                });
            return Err(Error::ObjectMismatch(detail));
        }
    }

    let mut attributes = Vec::new();
    let mut seen = HashSet::new();
    for ctx in contexts {
        for name in ctx.attributes() {
            let q = qualified_name(ctx.dimension(), name);
            if !seen.insert(q.clone()) {
                return Err(Error::AttributeCollision(q));
            }
            attributes.push(q);
        }
    }

    let rows = (0..first.object_count())
        .map(|g| {
            let mut row = BitSet::new(attributes.len());
            let mut offset = 0;
            for ctx in contexts {
                for m in ctx.row(g).iter() {
                    row.insert(offset + m);
                }
                offset += ctx.attribute_count();
            }
            row
        })
        .collect();

    Ok(FormalContext::from_bit_rows(
        Dimension::Combined,
        first.objects().to_vec(),
        attributes,
        rows,
    ))
}
