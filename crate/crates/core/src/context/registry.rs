use std::collections::BTreeMap;

use serde::Serialize;

use super::{normalize_name, Dimension, FormalContext};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeatureEntry {
    pub dimension: Dimension,
    /// Object whose analysis first introduced the feature.
    pub introduced_by: Option<String>,
    pub description: String,
}

/// Objects that were analysed before a feature existed and so were never
/// judged against it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RetroCheckReport {
    pub feature: String,
    pub dimension: Option<Dimension>,
    pub recheck: Vec<String>,
}

impl RetroCheckReport {
    pub fn is_empty(&self) -> bool {
        self.recheck.is_empty()
    }
}

/// How many objects exhibit one feature within its own dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeatureFrequency {
    pub name: String,
    pub dimension: Dimension,
    pub exhibited_by: usize,
    pub objects: usize,
}

impl FeatureFrequency {
    pub fn is_universal(&self) -> bool {
        self.objects > 0 && self.exhibited_by == self.objects
    }

    pub fn is_singleton(&self) -> bool {
        self.exhibited_by == 1
    }
}

/// Every known feature name with the one dimension it belongs to.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FeatureRegistry {
    entries: BTreeMap<String, FeatureEntry>,
}

impl FeatureRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers every attribute of every context. The introducing object of a
    /// feature is the first object, in declaration order, that exhibits it.
    pub fn from_contexts(contexts: &[FormalContext]) -> Result<Self> {
        let mut registry = FeatureRegistry::new();
        for ctx in contexts {
            for (m, name) in ctx.attributes().iter().enumerate() {
                let introduced_by = ctx.column(m).iter().next().map(|g| ctx.objects()[g].as_str());
                registry = registry
                    .register(name, ctx.dimension(), introduced_by, "", &[])?
                    .0;
            }
        }
        Ok(registry)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&FeatureEntry> {
        self.entries.get(&normalize_name(name))
    }

    pub fn contains(&self, name: &str, dimension: Dimension) -> bool {
        self.get(name).is_some_and(|e| e.dimension == dimension)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &FeatureEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Adds `name` under `dimension` and returns the updated registry with the
    /// worklist of objects in `contexts` that must be re-examined for it.
    ///
    /// Re-registering under the same dimension is a no-op with an empty report.
    pub fn register(
        &self,
        name: &str,
        dimension: Dimension,
        introduced_by: Option<&str>,
        description: &str,
        contexts: &[FormalContext],
    ) -> Result<(FeatureRegistry, RetroCheckReport)> {
        let name = normalize_name(name);
        if name.is_empty() {
            return Err(Error::EmptyName { line: None });
        }
        if dimension.is_combined() {
            return Err(Error::CombinedRegistration(name));
        }
        if let Some(existing) = self.entries.get(&name) {
            if existing.dimension != dimension {
                return Err(Error::DimensionConflict {
                    name,
                    existing: existing.dimension.to_string(),
                    requested: dimension.to_string(),
                });
            }
            return Ok((
                self.clone(),
                RetroCheckReport {
                    feature: name,
                    dimension: Some(dimension),
                    recheck: Vec::new(),
                },
            ));
        }

        let introducer = introduced_by.map(normalize_name);
        let mut recheck: Vec<String> = Vec::new();
        for ctx in contexts.iter().filter(|c| c.dimension() == dimension) {
            let column = ctx.attribute_index(&name).map(|m| ctx.column(m));
            for (g, object) in ctx.objects().iter().enumerate() {
                let unset = column.is_none_or(|c| !c.contains(g));
                if unset && introducer.as_ref() != Some(object) && !recheck.contains(object) {
                    recheck.push(object.clone());
                }
            }
        }

        let mut next = self.clone();
        next.entries.insert(
            name.clone(),
            FeatureEntry {
                dimension,
                introduced_by: introducer,
                description: description.to_string(),
            },
        );
        Ok((
            next,
            RetroCheckReport {
                feature: name,
                dimension: Some(dimension),
                recheck,
            },
        ))
    }

    /// Frequency of every attribute across the given per-dimension contexts.
    pub fn frequencies(contexts: &[FormalContext]) -> Vec<FeatureFrequency> {
        contexts
            .iter()
            .flat_map(|ctx| {
                ctx.attributes()
                    .iter()
                    .enumerate()
                    .map(move |(m, name)| FeatureFrequency {
                        name: name.clone(),
                        dimension: ctx.dimension(),
                        exhibited_by: ctx.column(m).len(),
                        objects: ctx.object_count(),
                    })
            })
            .collect()
    }
}
