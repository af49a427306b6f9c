//! The embedded ten-KG provenance case study and its golden concept sets.
//!
//! Feature rows live in `data/provenance.json`; the expected concepts of each
//! per-dimension lattice live in `data/golden/<dimension>.tsv`. Both are
//! pinned by SHA-256 so that edits to the data cannot go unnoticed.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::context::{merge_contexts, Dimension, FeatureFrequency, FeatureRegistry, FormalContext, Issue, ValidationReport};
use crate::error::{Error, Result};
use crate::fca::enumerate_concepts;
use crate::render::EMPTY_SENTINEL;

pub const OBJECTS: [&str; 10] = [
    "Europeana",
    "Google Data Commons",
    "Bio2RDF",
    "British Museum ResearchSpace",
    "UniProt",
    "Wikidata",
    "EU ODP",
    "DBpedia",
    "LOV",
    "Nanopublications",
];

/// Attribute count per dimension, in [`Dimension::CHARACTERISATION`] order.
pub const ATTRIBUTE_COUNTS: [usize; 4] = [14, 10, 7, 11];

/// Concept count per dimension, in [`Dimension::CHARACTERISATION`] order.
pub const CONCEPT_COUNTS: [usize; 4] = [30, 25, 10, 24];

const PROVENANCE: &str = include_str!("../data/provenance.json");
const GOLDEN: [&str; 4] = [
    include_str!("../data/golden/semantic-property.tsv"),
    include_str!("../data/golden/semantic-affordance.tsv"),
    include_str!("../data/golden/pragmatic-property.tsv"),
    include_str!("../data/golden/pragmatic-affordance.tsv"),
];

const PROVENANCE_SHA256: &str = "d7dcbb056290332c5d98c7ec1c752e59499149de5e4a967e19917892d18bf704";
const GOLDEN_SHA256: [&str; 4] = [
    "4aa11171da39aca78ef7900e16e15127a0a93ee5aa7258b940922daad0ccb1d8",
    "ab9fc4ec440b929882be4b4c61b65aff1c0af49be6d466e9b162bb821d672549",
    "4078f6b9cca7a004c79d0bc6e707ff2d69a7b16b7c36a5b74ee2b50bb0cbbd0a",
    "0e56981ec7c4ec216adfda7c868b74fdf4ca5b9d4ab48db5182ba749c450dda1",
];

/// Raw corpus documents; [`CorpusSources::embedded`] gives the shipped ones.
#[derive(Debug, Clone, Copy)]
pub struct CorpusSources<'a> {
    pub provenance: &'a str,
    pub golden: [&'a str; 4],
}

impl CorpusSources<'static> {
    pub fn embedded() -> Self {
        CorpusSources {
            provenance: PROVENANCE,
            golden: GOLDEN,
        }
    }
}

/// An (extent, intent) pair transcribed from a legend table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoldenConcept {
    pub extent: BTreeSet<String>,
    pub intent: BTreeSet<String>,
}

#[derive(Debug, Clone)]
pub struct ProvenanceCorpus {
    /// One context per dimension, in [`Dimension::CHARACTERISATION`] order.
    pub contexts: Vec<FormalContext>,
    pub combined: FormalContext,
    pub golden: BTreeMap<Dimension, Vec<GoldenConcept>>,
}

impl ProvenanceCorpus {
    pub fn context(&self, dimension: Dimension) -> &FormalContext {
        if dimension.is_combined() {
            return &self.combined;
        }
        self.contexts
            .iter()
            .find(|c| c.dimension() == dimension)
            .expect("corpus holds every dimension")
    }

    pub fn registry(&self) -> FeatureRegistry {
        FeatureRegistry::from_contexts(&self.contexts).expect("corpus dimensions are disjoint")
    }

    pub fn feature_frequencies(&self) -> Vec<FeatureFrequency> {
        FeatureRegistry::frequencies(&self.contexts)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProvenanceDoc {
    objects: Vec<String>,
    rows: Vec<ProvenanceRow>,
}

#[derive(Deserialize)]
struct ProvenanceRow {
    kg: String,
    #[serde(flatten)]
    features: BTreeMap<Dimension, Vec<String>>,
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorpusCorrupt(msg.into())
}

pub fn load_corpus() -> Result<ProvenanceCorpus> {
    load_corpus_from(CorpusSources::embedded())
}

/// Parses and self-checks corpus documents. Any checksum or shape mismatch
/// is `corpus-corrupt`.
pub fn load_corpus_from(sources: CorpusSources<'_>) -> Result<ProvenanceCorpus> {
    if sha256_hex(sources.provenance) != PROVENANCE_SHA256 {
        return Err(corrupt("provenance table checksum mismatch"));
    }
    for (dim, (text, sum)) in Dimension::CHARACTERISATION
        .iter()
        .zip(sources.golden.iter().zip(GOLDEN_SHA256))
    {
        if sha256_hex(text) != sum {
            return Err(corrupt(format!("{dim} golden checksum mismatch")));
        }
    }

    let doc: ProvenanceDoc =
        serde_json::from_str(sources.provenance).map_err(|e| corrupt(e.to_string()))?;
    if doc.objects != OBJECTS {
        return Err(corrupt("object list differs from the fixed order"));
    }
    let row_kgs: Vec<&str> = doc.rows.iter().map(|r| r.kg.as_str()).collect();
    if row_kgs != OBJECTS {
        return Err(corrupt("feature rows are not in object order"));
    }

    let mut contexts = Vec::with_capacity(4);
    for (dim, expected) in Dimension::CHARACTERISATION.into_iter().zip(ATTRIBUTE_COUNTS) {
        let entries: Vec<(&str, &[String])> = doc
            .rows
            .iter()
            .map(|r| {
                r.features
                    .get(&dim)
                    .map(|f| (r.kg.as_str(), f.as_slice()))
                    .ok_or_else(|| corrupt(format!("{} has no {dim} row", r.kg)))
            })
            .collect::<Result<_>>()?;
        let ctx = FormalContext::from_feature_lists(dim, &entries).map_err(|e| corrupt(e.to_string()))?;
        if ctx.attribute_count() != expected {
            return Err(corrupt(format!(
                "{dim} has {} attributes, expected {expected}",
                ctx.attribute_count()
            )));
        }
        contexts.push(ctx);
    }
    let combined = merge_contexts(&contexts).map_err(|e| corrupt(e.to_string()))?;

    let mut golden = BTreeMap::new();
    for ((ctx, text), expected) in contexts.iter().zip(sources.golden).zip(CONCEPT_COUNTS) {
        let rows = parse_golden(ctx, text)?;
        if rows.len() != expected {
            return Err(corrupt(format!(
                "{} golden has {} rows, expected {expected}",
                ctx.dimension(),
                rows.len()
            )));
        }
        golden.insert(ctx.dimension(), rows);
    }

    Ok(ProvenanceCorpus {
        contexts,
        combined,
        golden,
    })
}

fn parse_golden(ctx: &FormalContext, text: &str) -> Result<Vec<GoldenConcept>> {
    let split = |cell: &str| -> BTreeSet<String> {
        if cell.trim() == EMPTY_SENTINEL {
            BTreeSet::new()
        } else {
            cell.split(',').map(|s| s.trim().to_string()).collect()
        }
    };
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let (objects, attributes) = line
            .split_once('\t')
            .ok_or_else(|| corrupt(format!("{} golden line {}: no tab", ctx.dimension(), n + 1)))?;
        let concept = GoldenConcept {
            extent: split(objects),
            intent: split(attributes),
        };
        for g in &concept.extent {
            ctx.object_index(g)
                .ok_or_else(|| corrupt(format!("golden line {}: unknown object {g:?}", n + 1)))?;
        }
        for m in &concept.intent {
            ctx.attribute_index(m)
                .ok_or_else(|| corrupt(format!("golden line {}: unknown attribute {m:?}", n + 1)))?;
        }
        rows.push(concept);
    }
    Ok(rows)
}

/// Concepts of a context as name sets.
pub fn concept_sets(ctx: &FormalContext) -> BTreeSet<GoldenConcept> {
    enumerate_concepts(ctx)
        .into_iter()
        .map(|c| GoldenConcept {
            extent: ctx.object_names(&c.extent).into_iter().collect(),
            intent: ctx.attribute_names(&c.intent).into_iter().collect(),
        })
        .collect()
}

fn describe(c: &GoldenConcept) -> String {
    let join = |s: &BTreeSet<String>| {
        if s.is_empty() {
            EMPTY_SENTINEL.to_string()
        } else {
            s.iter().cloned().collect::<Vec<_>>().join(", ")
        }
    };
    format!("extent [{}] intent [{}]", join(&c.extent), join(&c.intent))
}

/// Recomputes every lattice and compares its concepts with the golden sets.
///
/// A computed concept without a golden row is `missing-golden-concept`; a
/// golden row no computed concept matches is `unexpected-golden-concept`.
pub fn verify_corpus(corpus: &ProvenanceCorpus) -> ValidationReport {
    let mut report = ValidationReport::default();
    for ctx in &corpus.contexts {
        let dim = ctx.dimension();
        let computed = concept_sets(ctx);
        let golden: BTreeSet<GoldenConcept> = corpus
            .golden
            .get(&dim)
            .map(|rows| rows.iter().cloned().collect())
            .unwrap_or_default();
        for c in computed.difference(&golden) {
            report
                .errors
                .push(Issue::new("missing-golden-concept", describe(c)).at(dim.tag()));
        }
        for c in golden.difference(&computed) {
            report
                .errors
                .push(Issue::new("unexpected-golden-concept", describe(c)).at(dim.tag()));
        }
    }
    match merge_contexts(&corpus.contexts) {
        Ok(merged) if merged == corpus.combined => {}
        Ok(_) => report.errors.push(Issue::new(
            "combined-mismatch",
            "combined context differs from the merge of the per-dimension contexts",
        )),
        Err(e) => report.errors.push(Issue::from(&e)),
    }
    report
}
