//! The two derivation operators of a context and the closures built from them.

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::Result;

/// Attributes shared by every object in `objects`. The empty object set
/// yields every attribute.
pub fn common_attributes(ctx: &FormalContext, objects: &BitSet) -> BitSet {
    let mut out = BitSet::full(ctx.attribute_count());
    for g in objects.iter() {
        out.intersect_with(ctx.row(g));
    }
    out
}

/// Objects having every attribute in `attributes`. The empty attribute set
/// yields every object.
pub fn common_objects(ctx: &FormalContext, attributes: &BitSet) -> BitSet {
    let mut out = BitSet::full(ctx.object_count());
    for m in attributes.iter() {
        out.intersect_with(ctx.column(m));
    }
    out
}

/// `attributes''`: the smallest intent containing `attributes`.
pub fn attribute_closure(ctx: &FormalContext, attributes: &BitSet) -> BitSet {
    common_attributes(ctx, &common_objects(ctx, attributes))
}

/// `objects''`: the smallest extent containing `objects`.
pub fn object_closure(ctx: &FormalContext, objects: &BitSet) -> BitSet {
    common_objects(ctx, &common_attributes(ctx, objects))
}

/// Name-level [`common_attributes`]; result in declaration order.
pub fn derive_attributes<S: AsRef<str>>(ctx: &FormalContext, objects: &[S]) -> Result<Vec<String>> {
    let set = ctx.object_set(objects)?;
    Ok(ctx.attribute_names(&common_attributes(ctx, &set)))
}

/// Name-level [`common_objects`]; result in declaration order.
pub fn derive_objects<S: AsRef<str>>(ctx: &FormalContext, attributes: &[S]) -> Result<Vec<String>> {
    let set = ctx.attribute_set(attributes)?;
    Ok(ctx.object_names(&common_objects(ctx, &set)))
}

/// Name-level [`attribute_closure`]; result in declaration order.
pub fn close_attributes<S: AsRef<str>>(ctx: &FormalContext, attributes: &[S]) -> Result<Vec<String>> {
    let set = ctx.attribute_set(attributes)?;
    Ok(ctx.attribute_names(&attribute_closure(ctx, &set)))
}
