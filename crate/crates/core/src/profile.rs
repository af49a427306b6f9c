//! KG profiles, community/task requirements, fitness and gap analysis.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::context::{Dimension, FeatureRegistry, FormalContext};
use crate::error::{Error, Result};
use crate::fca::{common_attributes, ConceptLattice};

pub type FeatureSet = BTreeSet<String>;

/// One KG's exhibited features, per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KgProfile {
    pub kg: String,
    pub features: BTreeMap<Dimension, FeatureSet>,
}

impl KgProfile {
    pub fn exhibited(&self, dimension: Dimension) -> FeatureSet {
        self.features.get(&dimension).cloned().unwrap_or_default()
    }
}

/// What a community needs from a KG for one task.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequirementSet {
    pub community: String,
    pub task: String,
    pub required: BTreeMap<Dimension, FeatureSet>,
}

impl RequirementSet {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FitnessReport {
    pub satisfied: BTreeMap<Dimension, FeatureSet>,
    pub gap: BTreeMap<Dimension, FeatureSet>,
    pub surplus: BTreeMap<Dimension, FeatureSet>,
    pub fit: bool,
}

/// Per-feature weights for closing gaps and discarding surplus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostModel {
    pub add_weight: f64,
    pub remove_weight: f64,
    pub overrides: BTreeMap<String, f64>,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            add_weight: 1.0,
            remove_weight: 0.0,
            overrides: BTreeMap::new(),
        }
    }
}

impl CostModel {
    pub fn validate(&self) -> Result<()> {
        let weights = [("add_weight", &self.add_weight), ("remove_weight", &self.remove_weight)]
            .into_iter()
            .chain(self.overrides.iter().map(|(k, v)| (k.as_str(), v)));
        for (name, &w) in weights {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidCostModel(format!(
                    "weight {name:?} is {w}, expected a finite non-negative number"
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: CostModel =
            serde_json::from_str(text).map_err(|e| Error::InvalidCostModel(e.to_string()))?;
        model.validate()?;
        Ok(model)
    }

    fn weight(&self, feature: &str, default: f64) -> f64 {
        self.overrides.get(feature).copied().unwrap_or(default)
    }
}

/// Features to add and remove in one dimension to reach a target.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Delta {
    pub add: FeatureSet,
    pub remove: FeatureSet,
}

pub enum Target<'a> {
    Requirement(&'a RequirementSet),
    Profile(&'a KgProfile),
}

/// Collects the row of `kg` in each context.
pub fn profile_of(contexts: &[FormalContext], kg: &str) -> Result<KgProfile> {
    let mut features = BTreeMap::new();
    let mut name = None;
    for ctx in contexts {
        let g = ctx
            .object_index(kg)
            .ok_or_else(|| Error::UnknownKg(kg.to_string()))?;
        name.get_or_insert_with(|| ctx.objects()[g].clone());
        features
            .entry(ctx.dimension())
            .or_insert_with(FeatureSet::new)
            .extend(ctx.attribute_names(ctx.row(g)));
    }
    Ok(KgProfile {
        kg: name.unwrap_or_else(|| kg.to_string()),
        features,
    })
}

fn check_registered<'a, I>(registry: &FeatureRegistry, features: I) -> Result<()>
where
    I: IntoIterator<Item = (&'a Dimension, &'a FeatureSet)>,
{
    for (&dimension, set) in features {
        if let Some(name) = set.iter().find(|f| !registry.contains(f, dimension)) {
            return Err(Error::UnknownFeature {
                name: name.clone(),
                dimension: dimension.to_string(),
            });
        }
    }
    Ok(())
}

/// Splits each required set into satisfied and gap parts; everything the KG
/// exhibits beyond the requirement is surplus.
pub fn evaluate_fitness(
    profile: &KgProfile,
    requirement: &RequirementSet,
    registry: &FeatureRegistry,
) -> Result<FitnessReport> {
    check_registered(registry, &requirement.required)?;
    let mut report = FitnessReport::default();
    let dimensions: BTreeSet<Dimension> = profile
        .features
        .keys()
        .chain(requirement.required.keys())
        .copied()
        .collect();
    for dimension in dimensions {
        let exhibited = profile.exhibited(dimension);
        let required = requirement.required.get(&dimension).cloned().unwrap_or_default();
        report
            .satisfied
            .insert(dimension, required.intersection(&exhibited).cloned().collect());
        report
            .gap
            .insert(dimension, required.difference(&exhibited).cloned().collect());
        report
            .surplus
            .insert(dimension, exhibited.difference(&required).cloned().collect());
    }
    report.fit = report.gap.values().all(BTreeSet::is_empty);
    Ok(report)
}

/// Weighted count of gap features plus weighted count of surplus features.
pub fn gap_cost(report: &FitnessReport, model: &CostModel) -> f64 {
    let add: f64 = report
        .gap
        .values()
        .flatten()
        .map(|f| model.weight(f, model.add_weight))
        .sum();
    let remove: f64 = report
        .surplus
        .values()
        .flatten()
        .map(|f| model.weight(f, model.remove_weight))
        .sum();
    add + remove
}

/// Index of the most specific concept whose extent contains `kg`.
pub fn object_concept(lattice: &ConceptLattice, kg: &str) -> Result<usize> {
    common_position(lattice, &[kg])
}

/// Index of the most specific concept whose extent contains all of `kgs`.
pub fn common_position<S: AsRef<str>>(lattice: &ConceptLattice, kgs: &[S]) -> Result<usize> {
    let ctx = lattice.context();
    let mut objects = crate::bitset::BitSet::new(ctx.object_count());
    for kg in kgs {
        let g = ctx
            .object_index(kg.as_ref())
            .ok_or_else(|| Error::UnknownKg(kg.as_ref().to_string()))?;
        objects.insert(g);
    }
    debug_assert_eq!(
        lattice.concepts()[lattice.concept_of_objects(&objects)].intent,
        common_attributes(ctx, &objects)
    );
    Ok(lattice.concept_of_objects(&objects))
}

/// Per-dimension add/remove inventory from `source` to `target`.
///
/// A requirement target never asks for removals; a profile target removes
/// whatever the source has and the target lacks.
pub fn transformation_delta(
    source: &KgProfile,
    target: Target<'_>,
    registry: &FeatureRegistry,
) -> Result<BTreeMap<Dimension, Delta>> {
    check_registered(registry, &source.features)?;
    let mut out = BTreeMap::new();
    match target {
        Target::Requirement(req) => {
            check_registered(registry, &req.required)?;
            for (&dimension, required) in &req.required {
                let exhibited = source.exhibited(dimension);
                out.insert(
                    dimension,
                    Delta {
                        add: required.difference(&exhibited).cloned().collect(),
                        remove: FeatureSet::new(),
                    },
                );
            }
        }
        Target::Profile(tgt) => {
            check_registered(registry, &tgt.features)?;
            let dimensions: BTreeSet<Dimension> =
                source.features.keys().chain(tgt.features.keys()).copied().collect();
            for dimension in dimensions {
                let have = source.exhibited(dimension);
                let want = tgt.exhibited(dimension);
                out.insert(
                    dimension,
                    Delta {
                        add: want.difference(&have).cloned().collect(),
                        remove: have.difference(&want).cloned().collect(),
                    },
                );
            }
        }
    }
    Ok(out)
}
