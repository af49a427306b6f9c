use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

use super::closure::closed_sets;
use super::derivation::{common_attributes, common_objects};

/// An (extent, intent) pair, each deriving exactly the other.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    /// Object indices.
    pub extent: BitSet,
    /// Attribute indices.
    pub intent: BitSet,
}

/// All concepts of a context in canonical order: extent size ascending, then
/// the sorted extent names compared lexicographically.
pub fn enumerate_concepts(ctx: &FormalContext) -> Vec<FormalConcept> {
    let mut concepts: Vec<FormalConcept> = closed_sets(ctx)
        .into_iter()
        .map(|intent| FormalConcept {
            extent: common_objects(ctx, &intent),
            intent,
        })
        .collect();
    sort_canonical(ctx, &mut concepts);
    concepts
}

fn sort_canonical(ctx: &FormalContext, concepts: &mut [FormalConcept]) {
    let key = |c: &FormalConcept| {
        let mut names: Vec<&str> = c.extent.iter().map(|g| ctx.objects()[g].as_str()).collect();
        names.sort_unstable();
        names
    };
    concepts.sort_by_cached_key(|c| (c.extent.len(), key(c)));
}

/// Canonical ordering comparator over two concepts of the same context.
pub fn canonical_cmp(ctx: &FormalContext, a: &FormalConcept, b: &FormalConcept) -> Ordering {
    let names = |c: &FormalConcept| {
        let mut v: Vec<&str> = c.extent.iter().map(|g| ctx.objects()[g].as_str()).collect();
        v.sort_unstable();
        v
    };
    a.extent
        .len()
        .cmp(&b.extent.len())
        .then_with(|| names(a).cmp(&names(b)))
}

/// The concept lattice of a context with its Hasse diagram.
#[derive(Debug, Clone)]
pub struct ConceptLattice {
    context: FormalContext,
    concepts: Vec<FormalConcept>,
    covers: Vec<(usize, usize)>,
    top: usize,
    bottom: usize,
    by_extent: HashMap<BitSet, usize>,
}

impl ConceptLattice {
    pub fn build(ctx: &FormalContext) -> Self {
        let concepts = enumerate_concepts(ctx);
        let covers = cover_relation(&concepts);
        let by_extent: HashMap<BitSet, usize> = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent.clone(), i))
            .collect();
        let top = by_extent[&BitSet::full(ctx.object_count())];
        let bottom_extent = common_objects(ctx, &BitSet::full(ctx.attribute_count()));
        let bottom = by_extent[&bottom_extent];
        ConceptLattice {
            context: ctx.clone(),
            concepts,
            covers,
            top,
            bottom,
            by_extent,
        }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concept(&self, index: usize) -> Result<&FormalConcept> {
        self.concepts.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.concepts.len(),
        })
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Canonical id `c<index>`.
    pub fn id(index: usize) -> String {
        format!("c{index}")
    }

    pub fn index_of_extent(&self, extent: &BitSet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    /// Index of the concept whose intent is `intent`, if it is one.
    pub fn index_of_intent(&self, intent: &BitSet) -> Option<usize> {
        let i = self.index_of_extent(&common_objects(&self.context, intent))?;
        (self.concepts[i].intent == *intent).then_some(i)
    }

    pub fn extent_names(&self, index: usize) -> Vec<String> {
        self.context.object_names(&self.concepts[index].extent)
    }

    pub fn intent_names(&self, index: usize) -> Vec<String> {
        self.context.attribute_names(&self.concepts[index].intent)
    }

    /// Greatest common subconcept: its extent is the intersection of extents.
    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        let extent = self.concept(i)?.extent.intersection(&self.concept(j)?.extent);
        Ok(self.by_extent[&extent])
    }

    /// Least common superconcept: its intent is the intersection of intents.
    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        let intent = self.concept(i)?.intent.intersection(&self.concept(j)?.intent);
        Ok(self.by_extent[&common_objects(&self.context, &intent)])
    }

    /// Concept with extent `objects''`: the most specific one containing all
    /// of `objects`.
    pub fn concept_of_objects(&self, objects: &BitSet) -> usize {
        let intent = common_attributes(&self.context, objects);
        self.by_extent[&common_objects(&self.context, &intent)]
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            concepts: (0..self.len())
                .map(|i| ConceptJson {
                    id: Self::id(i),
                    extent: self.extent_names(i),
                    intent: self.intent_names(i),
                })
                .collect(),
            covers: self
                .covers
                .iter()
                .map(|&(lo, up)| [Self::id(lo), Self::id(up)])
                .collect(),
            top: Self::id(self.top),
            bottom: Self::id(self.bottom),
        }
    }
}

/// Transitive reduction of strict extent inclusion, as sorted
/// `(lower, upper)` pairs.
fn cover_relation(concepts: &[FormalConcept]) -> Vec<(usize, usize)> {
    let n = concepts.len();
    let below = |a: usize, b: usize| concepts[a].extent.is_proper_subset(&concepts[b].extent);
    let mut covers = Vec::new();
    for lower in 0..n {
        for upper in 0..n {
            if below(lower, upper) && !(0..n).any(|mid| below(lower, mid) && below(mid, upper)) {
                covers.push((lower, upper));
            }
        }
    }
    covers
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptJson {
    pub id: String,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

/// Lattice export: concepts with canonical ids, cover pairs, top and bottom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub concepts: Vec<ConceptJson>,
    pub covers: Vec<[String; 2]>,
    pub top: String,
    pub bottom: String,
}
