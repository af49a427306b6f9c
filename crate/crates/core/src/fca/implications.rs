//! Attribute implications and the canonical (stem) basis.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::Result;

use super::closure::next_closed_set;
use super::derivation::attribute_closure;

/// `premise → conclusion` over attribute indices. The stored conclusion never
/// overlaps the premise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Implication {
    pub premise: BitSet,
    pub conclusion: BitSet,
}

impl Implication {
    pub fn new(premise: BitSet, conclusion: BitSet) -> Self {
        let conclusion = conclusion.difference(&premise);
        Implication {
            premise,
            conclusion,
        }
    }

    pub fn from_names<P: AsRef<str>, C: AsRef<str>>(
        ctx: &FormalContext,
        premise: &[P],
        conclusion: &[C],
    ) -> Result<Self> {
        Ok(Implication::new(
            ctx.attribute_set(premise)?,
            ctx.attribute_set(conclusion)?,
        ))
    }

    pub fn to_named(&self, ctx: &FormalContext) -> NamedImplication {
        NamedImplication {
            premise: ctx.attribute_names(&self.premise),
            conclusion: ctx.attribute_names(&self.conclusion),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedImplication {
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
}

/// True when every object having the premise also has the conclusion.
pub fn implication_holds(ctx: &FormalContext, implication: &Implication) -> bool {
    implication
        .conclusion
        .is_subset(&attribute_closure(ctx, &implication.premise))
}

/// Smallest superset of `set` respecting every implication.
pub fn implication_closure(implications: &[Implication], set: &BitSet) -> BitSet {
    let mut out = set.clone();
    loop {
        let mut changed = false;
        for imp in implications {
            if imp.premise.is_subset(&out) && !imp.conclusion.is_subset(&out) {
                out.union_with(&imp.conclusion);
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

/// True when `implication` is a semantic consequence of `implications`.
pub fn follows_from(implications: &[Implication], implication: &Implication) -> bool {
    implication
        .conclusion
        .is_subset(&implication_closure(implications, &implication.premise))
}

// Like implication_closure, but an implication fires only when its premise is a
// proper subset of the growing set. Its closed sets are the intents plus the
// pseudo-intents.
fn pseudo_closure(implications: &[Implication], set: &BitSet) -> BitSet {
    let mut out = set.clone();
    loop {
        let mut changed = false;
        for imp in implications {
            if imp.premise.is_proper_subset(&out) && !imp.conclusion.is_subset(&out) {
                out.union_with(&imp.conclusion);
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

/// The canonical basis: one implication `P → P'' \ P` per pseudo-intent `P`,
/// found by walking the pseudo-closed sets in lectic order.
pub fn implication_basis(ctx: &FormalContext) -> Vec<Implication> {
    let mut basis: Vec<Implication> = Vec::new();
    let mut current = BitSet::new(ctx.attribute_count());
    loop {
        let closed = attribute_closure(ctx, &current);
        if closed != current {
            basis.push(Implication::new(current.clone(), closed));
        }
        match next_closed_set(&current, |s| pseudo_closure(&basis, s)) {
            Some(next) => current = next,
            None => return basis,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Dimension;

    fn sample() -> FormalContext {
        FormalContext::from_feature_lists(
            Dimension::Combined,
            &[
                ("g1", vec!["a", "b"]),
                ("g2", vec!["b", "c"]),
                ("g3", vec!["a", "b", "c"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn stored_conclusion_excludes_premise() {
        let ctx = sample();
        let imp = Implication::from_names(&ctx, &["a"], &["a", "b"]).unwrap();
        assert_eq!(imp.to_named(&ctx).conclusion, ["b"]);
    }

    #[test]
    fn empty_conclusion_always_holds() {
        let ctx = sample();
        let none: [&str; 0] = [];
        let imp = Implication::from_names(&ctx, &["c"], &none).unwrap();
        assert!(implication_holds(&ctx, &imp));
    }

    #[test]
    fn basis_of_small_context() {
        let ctx = sample();
        let named: Vec<_> = implication_basis(&ctx).iter().map(|i| i.to_named(&ctx)).collect();
        // b is universal, so ∅ → b is the first pseudo-intent
        assert_eq!(
            named,
            vec![
                NamedImplication {
                    premise: vec![],
                    conclusion: vec!["b".into()]
                },
            ]
        );
    }

    #[test]
    fn closure_under_basis_matches_context() {
        let ctx = sample();
        let basis = implication_basis(&ctx);
        for bits in 0..8usize {
            let set = BitSet::from_indices(3, (0..3).filter(|i| bits >> i & 1 == 1));
            assert_eq!(implication_closure(&basis, &set), attribute_closure(&ctx, &set));
        }
    }

    #[test]
    fn unknown_attribute_in_implication() {
        let ctx = sample();
        assert_eq!(
            Implication::from_names(&ctx, &["zz"], &["a"]).unwrap_err().code(),
            "unknown-attribute"
        );
    }
}
