//! Formal contexts: the objects × attributes incidence tables every lattice
//! is computed from, plus their file carriers and the feature registry.

mod cxt;
mod json;
mod merge;
mod registry;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub use cxt::{parse_cxt, parse_cxt_with, serialize_cxt};
pub use json::{parse_json_context, serialize_json_context, JsonContext};
pub use merge::{merge_contexts, qualified_name};
pub use registry::{FeatureEntry, FeatureFrequency, FeatureRegistry, RetroCheckReport};
pub use validate::{validate_context, validate_parts, Issue, ValidationReport};

/// One of the four characterisation dimensions, or the merged view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dimension {
    SemanticProperty,
    SemanticAffordance,
    PragmaticProperty,
    PragmaticAffordance,
    Combined,
}

impl Dimension {
    /// The four per-dimension tags, in the order used for merging.
    pub const CHARACTERISATION: [Dimension; 4] = [
        Dimension::SemanticProperty,
        Dimension::SemanticAffordance,
        Dimension::PragmaticProperty,
        Dimension::PragmaticAffordance,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Dimension::SemanticProperty => "semantic-property",
            Dimension::SemanticAffordance => "semantic-affordance",
            Dimension::PragmaticProperty => "pragmatic-property",
            Dimension::PragmaticAffordance => "pragmatic-affordance",
            Dimension::Combined => "combined",
        }
    }

    pub fn is_combined(self) -> bool {
        self == Dimension::Combined
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Dimension::Combined]
            .into_iter()
            .chain(Dimension::CHARACTERISATION)
            .find(|d| d.tag() == s)
            .ok_or_else(|| Error::UnknownDimension(s.to_string()))
    }
}

/// Trims the name and collapses internal whitespace runs to a single space.
/// Comparison stays case-sensitive.
pub fn normalize_name(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// A binary objects × attributes table tagged with its dimension.
///
/// Declaration order of objects and attributes is significant: it fixes the
/// lectic order used when enumerating closed sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    dimension: Dimension,
    objects: Vec<String>,
    attributes: Vec<String>,
    // rows[g] is the attribute set of object g, columns[m] the object set of attribute m
    rows: Vec<BitSet>,
    columns: Vec<BitSet>,
    object_index: HashMap<String, usize>,
    attribute_index: HashMap<String, usize>,
}

impl FormalContext {
    /// Builds a context from names and a row-major incidence matrix.
    ///
    /// Names are normalized first; the first validation error is returned.
    pub fn new(
        dimension: Dimension,
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| normalize_name(s)).collect();
        let attributes: Vec<String> = attributes.iter().map(|s| normalize_name(s)).collect();
        validate::check_parts(&objects, &attributes, &incidence)?;
        let rows = incidence
            .iter()
            .map(|row| {
                BitSet::from_indices(
                    attributes.len(),
                    row.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i),
                )
            })
            .collect();
        Ok(Self::from_bit_rows(dimension, objects, attributes, rows))
    }

    /// Builds a context from per-object feature lists. Attributes are declared
    /// in order of first appearance, reading objects in order.
    pub fn from_feature_lists<O, F, S>(dimension: Dimension, entries: &[(O, F)]) -> Result<Self>
    where
        O: AsRef<str>,
        F: AsRef<[S]>,
        S: AsRef<str>,
    {
        let mut attributes: Vec<String> = Vec::new();
        for (_, features) in entries {
            for f in features.as_ref() {
                let f = normalize_name(f.as_ref());
                if !attributes.contains(&f) {
                    attributes.push(f);
                }
            }
        }
        let objects = entries.iter().map(|(o, _)| o.as_ref().to_string()).collect();
        let incidence = entries
            .iter()
            .map(|(_, features)| {
                let features: Vec<String> =
                    features.as_ref().iter().map(|f| normalize_name(f.as_ref())).collect();
                attributes.iter().map(|a| features.contains(a)).collect()
            })
            .collect();
        FormalContext::new(dimension, objects, attributes, incidence)
    }

    /// Assumes names are normalized and unique and each row spans `attributes`.
    pub(crate) fn from_bit_rows(
        dimension: Dimension,
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<BitSet>,
    ) -> Self {
        let mut columns = vec![BitSet::new(objects.len()); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            for m in row.iter() {
                columns[m].insert(g);
            }
        }
        let object_index = objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let attribute_index = attributes.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        FormalContext {
            dimension,
            objects,
            attributes,
            rows,
            columns,
            object_index,
            attribute_index,
        }
    }

    pub fn empty(dimension: Dimension) -> Self {
        Self::from_bit_rows(dimension, Vec::new(), Vec::new(), Vec::new())
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn incidence(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    /// Attributes of one object.
    pub fn row(&self, object: usize) -> &BitSet {
        &self.rows[object]
    }

    /// Objects having one attribute.
    pub fn column(&self, attribute: usize) -> &BitSet {
        &self.columns[attribute]
    }

    pub fn incidence_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.object_count())
            .map(|g| (0..self.attribute_count()).map(|m| self.incidence(g, m)).collect())
            .collect()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_index.get(&normalize_name(name)).copied()
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attribute_index.get(&normalize_name(name)).copied()
    }

    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet> {
        let mut set = BitSet::new(self.object_count());
        for name in names {
            let i = self
                .object_index(name.as_ref())
                .ok_or_else(|| Error::UnknownObject(name.as_ref().to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet> {
        let mut set = BitSet::new(self.attribute_count());
        for name in names {
            let i = self
                .attribute_index(name.as_ref())
                .ok_or_else(|| Error::UnknownAttribute(name.as_ref().to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Object names of `set`, in declaration order.
    pub fn object_names(&self, set: &BitSet) -> Vec<String> {
        set.iter().map(|i| self.objects[i].clone()).collect()
    }

    /// Attribute names of `set`, in declaration order.
    pub fn attribute_names(&self, set: &BitSet) -> Vec<String> {
        set.iter().map(|i| self.attributes[i].clone()).collect()
    }

    pub fn with_dimension(&self, dimension: Dimension) -> Self {
        FormalContext {
            dimension,
            ..self.clone()
        }
    }

    /// Returns a copy with one incidence cell set to `value`.
    pub fn with_incidence(&self, object: &str, attribute: &str, value: bool) -> Result<Self> {
        let g = self
            .object_index(object)
            .ok_or_else(|| Error::UnknownObject(object.to_string()))?;
        let m = self
            .attribute_index(attribute)
            .ok_or_else(|| Error::UnknownAttribute(attribute.to_string()))?;
        let mut rows = self.rows.clone();
        if value {
            rows[g].insert(m);
        } else {
            rows[g].remove(m);
        }
        Ok(Self::from_bit_rows(
            self.dimension,
            self.objects.clone(),
            self.attributes.clone(),
            rows,
        ))
    }

    /// Returns a copy with a new object row exhibiting `features`, all of which
    /// must already be declared.
    pub fn with_object<S: AsRef<str>>(&self, name: &str, features: &[S]) -> Result<Self> {
        let name = normalize_name(name);
        if name.is_empty() {
            return Err(Error::EmptyName { line: None });
        }
        if self.object_index.contains_key(&name) {
            return Err(Error::DuplicateObject { name, line: None });
        }
        let row = self.attribute_set(features)?;
        let mut objects = self.objects.clone();
        objects.push(name);
        let mut rows = self.rows.clone();
        rows.push(row);
        Ok(Self::from_bit_rows(self.dimension, objects, self.attributes.clone(), rows))
    }

    /// Returns a copy with a new attribute column held by no object.
    pub fn with_attribute(&self, name: &str) -> Result<Self> {
        let name = normalize_name(name);
        if name.is_empty() {
            return Err(Error::EmptyName { line: None });
        }
        if self.attribute_index.contains_key(&name) {
            return Err(Error::DuplicateAttribute { name, line: None });
        }
        let mut attributes = self.attributes.clone();
        attributes.push(name);
        let rows = self
            .rows
            .iter()
            .map(|r| BitSet::from_indices(attributes.len(), r.iter()))
            .collect();
        Ok(Self::from_bit_rows(self.dimension, self.objects.clone(), attributes, rows))
    }
}
