//! Expectations taken from the embedded provenance case study.

use std::collections::BTreeSet;

use continuum_core::context::{
    merge_contexts, parse_cxt_with, qualified_name, serialize_cxt, validate_context,
};
use continuum_core::corpus::{concept_sets, load_corpus, verify_corpus, GoldenConcept};
use continuum_core::fca::{
    close_attributes, derive_attributes, derive_objects, enumerate_concepts, implication_basis,
    implication_holds, next_closure, Implication,
};
use continuum_core::profile::{
    common_position, evaluate_fitness, gap_cost, object_concept, profile_of,
    transformation_delta, CostModel, RequirementSet, Target,
};
use continuum_core::render::{assign_layers, legend, to_dot, DotLabels, EMPTY_SENTINEL};
use continuum_core::{ConceptLattice, Dimension, FeatureRegistry, FormalContext};
use continuum_testkit::brute_covers;

const SP: Dimension = Dimension::SemanticProperty;
const SA: Dimension = Dimension::SemanticAffordance;
const PP: Dimension = Dimension::PragmaticProperty;
const PA: Dimension = Dimension::PragmaticAffordance;

fn ctx(dim: Dimension) -> FormalContext {
    load_corpus().unwrap().context(dim).clone()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

const ALL_KGS: [&str; 10] = continuum_core::corpus::OBJECTS;

#[test]
fn attribute_counts_per_dimension() {
    let corpus = load_corpus().unwrap();
    let counts: Vec<usize> = corpus.contexts.iter().map(|c| c.attribute_count()).collect();
    assert_eq!(counts, [14, 10, 7, 11]);
    assert_eq!(corpus.combined.attribute_count(), 42);
    assert_eq!(corpus.combined.object_count(), 10);
}

#[test]
fn golden_concept_counts() {
    let corpus = load_corpus().unwrap();
    let counts: Vec<usize> = Dimension::CHARACTERISATION
        .iter()
        .map(|d| corpus.golden[d].len())
        .collect();
    assert_eq!(counts, [30, 25, 10, 24]);
}

#[test]
fn lattices_match_golden_sets() {
    let corpus = load_corpus().unwrap();
    for ctx in &corpus.contexts {
        let golden: BTreeSet<GoldenConcept> = corpus.golden[&ctx.dimension()].iter().cloned().collect();
        assert_eq!(concept_sets(ctx), golden, "{}", ctx.dimension());
    }
    assert!(verify_corpus(&corpus).errors.is_empty());
}

#[test]
fn pristine_corpus_verifies() {
    let report = verify_corpus(&load_corpus().unwrap());
    assert!(report.is_ok(), "{:?}", report.errors);
}

#[test]
fn flipped_bit_is_detected() {
    let mut corpus = load_corpus().unwrap();
    corpus.contexts[2] = corpus.contexts[2]
        .with_incidence("Europeana", "PROV-O", true)
        .unwrap();
    let report = verify_corpus(&corpus);
    assert!(!report.errors.is_empty());
}

#[test]
fn deleted_golden_row_is_detected() {
    let mut corpus = load_corpus().unwrap();
    corpus.golden.get_mut(&PP).unwrap().remove(3);
    let report = verify_corpus(&corpus);
    assert_eq!(report.errors.len(), 1);
    assert_eq!(report.errors[0].code, "missing-golden-concept");
}

#[test]
fn nanopublications_pragmatic_properties() {
    let profile = profile_of(&load_corpus().unwrap().contexts, "Nanopublications").unwrap();
    assert_eq!(profile.exhibited(PP), set(&["named graphs", "PROV-O"]));
}

#[test]
fn pragmatic_property_cxt_document() {
    let pp = ctx(PP);
    let text = serialize_cxt(&pp);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5 + 10 + 7 + 10);
    assert_eq!(&lines[5..15], ALL_KGS);
    // DBpedia marks exactly named graphs and PROV-O
    let parsed = parse_cxt_with(&text, PP).unwrap();
    assert_eq!(parsed, pp);
    let dbpedia = parsed.object_index("DBpedia").unwrap();
    assert_eq!(parsed.attribute_names(parsed.row(dbpedia)), ["named graphs", "PROV-O"]);
}

#[test]
fn universal_attribute_warnings() {
    assert!(validate_context(&ctx(PA)).has_warning("universal-attribute", "SPARQL"));
    assert!(validate_context(&ctx(SA)).has_warning("universal-attribute", "attribution"));
}

#[test]
fn registry_over_the_corpus() {
    let corpus = load_corpus().unwrap();
    let registry = FeatureRegistry::from_contexts(&corpus.contexts).unwrap();
    assert_eq!(registry.len(), 42);
    let freq = corpus.feature_frequencies();
    let universal: BTreeSet<&str> = freq.iter().filter(|f| f.is_universal()).map(|f| f.name.as_str()).collect();
    assert_eq!(universal, ["SPARQL", "attribution"].into());
    assert_eq!(freq.iter().filter(|f| f.is_singleton()).count(), 10);
    let names: BTreeSet<&str> = registry.iter().map(|(n, _)| n).collect();
    let union: BTreeSet<&str> = corpus
        .contexts
        .iter()
        .flat_map(|c| c.attributes().iter().map(String::as_str))
        .collect();
    assert_eq!(names, union);
    assert_eq!(registry.get("SHACL").unwrap().introduced_by.as_deref(), Some("Wikidata"));
}

#[test]
fn attribution_cannot_move_dimension() {
    let registry = load_corpus().unwrap().registry();
    let err = registry
        .register("attribution", PP, None, "", &[])
        .unwrap_err();
    assert_eq!(err.code(), "dimension-conflict");
}

/// Replays ingestion of the pragmatic-affordance rows in table order; when a
/// KG brings a feature nobody had before, every earlier KG is on the worklist.
#[test]
fn shacl_retro_check_worklist() {
    let full = ctx(PA);
    let mut registry = FeatureRegistry::new();
    let mut seen = FormalContext::empty(PA);
    let mut worklist = None;
    for (g, kg) in full.objects().iter().enumerate() {
        let features = full.attribute_names(full.row(g));
        for f in &features {
            let (next, report) = registry
                .register(f, PA, Some(kg), "", std::slice::from_ref(&seen))
                .unwrap();
            registry = next;
            if f == "SHACL" && worklist.is_none() {
                worklist = Some(report.recheck);
            }
            if seen.attribute_index(f).is_none() {
                seen = seen.with_attribute(f).unwrap();
            }
        }
        seen = seen.with_object(kg, &features).unwrap();
    }
    assert_eq!(
        worklist.unwrap(),
        ["Europeana", "Google Data Commons", "Bio2RDF", "British Museum ResearchSpace", "UniProt"]
    );
}

#[test]
fn merged_corpus() {
    let corpus = load_corpus().unwrap();
    let merged = merge_contexts(&corpus.contexts).unwrap();
    assert_eq!((merged.object_count(), merged.attribute_count()), (10, 42));
    for src in &corpus.contexts {
        for (m, name) in src.attributes().iter().enumerate() {
            let q = merged.attribute_index(&qualified_name(src.dimension(), name)).unwrap();
            for g in 0..10 {
                assert_eq!(merged.incidence(g, q), src.incidence(g, m));
            }
        }
    }
}

#[test]
fn spot_derivations() {
    let pp = ctx(PP);
    assert_eq!(
        derive_attributes(&pp, &["DBpedia", "Nanopublications"]).unwrap(),
        ["named graphs", "PROV-O"]
    );
    assert_eq!(
        derive_objects(&pp, &["PROV-O"]).unwrap(),
        ["EU ODP", "DBpedia", "LOV", "Nanopublications"]
    );
    assert_eq!(derive_objects(&pp, &["RDF-Star"]).unwrap(), ["UniProt"]);
    assert_eq!(derive_attributes(&ctx(PA), &ALL_KGS).unwrap(), ["SPARQL"]);

    let sa = ctx(SA);
    assert_eq!(
        set_of(close_attributes(&sa, &["scholarly citation"]).unwrap()),
        set(&["attribution", "source tracking", "scholarly citation", "knowledge curation"])
    );
    let none: [&str; 0] = [];
    assert_eq!(close_attributes(&ctx(PA), &none).unwrap(), ["SPARQL"]);
}

fn set_of(v: Vec<String>) -> BTreeSet<String> {
    v.into_iter().collect()
}

#[test]
fn lectic_walk_starts_and_counts() {
    let pp = ctx(PP);
    let first = next_closure(&pp, None).unwrap().unwrap();
    assert!(first.is_empty());
    let mut count = 0;
    let mut cur = Some(first);
    while let Some(set) = cur {
        count += 1;
        cur = next_closure(&pp, Some(&set)).unwrap();
    }
    assert_eq!(count, 10);

    let pa = ctx(PA);
    let first = next_closure(&pa, None).unwrap().unwrap();
    assert_eq!(pa.attribute_names(&first), ["SPARQL"]);
}

#[test]
fn lattice_sizes_and_extremes() {
    let counts: Vec<usize> = Dimension::CHARACTERISATION
        .iter()
        .map(|&d| enumerate_concepts(&ctx(d)).len())
        .collect();
    assert_eq!(counts, [30, 25, 10, 24]);

    let pa = ConceptLattice::build(&ctx(PA));
    assert_eq!(pa.len(), 24);
    assert_eq!(pa.intent_names(pa.top()), ["SPARQL"]);
    assert!(pa.extent_names(pa.bottom()).is_empty());

    let sa = ConceptLattice::build(&ctx(SA));
    assert_eq!(sa.len(), 25);
    assert_eq!(sa.intent_names(sa.top()), ["attribution"]);
}

#[test]
fn pragmatic_property_covers() {
    let pp = ctx(PP);
    let lattice = ConceptLattice::build(&pp);
    assert_eq!(lattice.covers().len(), 15);
    // frozen from an independent transitive reduction
    let expected = [
        (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6),
        (1, 9), (2, 9), (3, 9), (4, 9), (5, 9),
        (6, 7), (6, 8), (7, 9), (8, 9),
    ];
    assert_eq!(lattice.covers(), expected);

    let extent_mask = |i: usize| lattice.concepts()[i].extent.iter().fold(0u64, |a, g| a | 1 << g);
    let extents: BTreeSet<u64> = (0..lattice.len()).map(extent_mask).collect();
    let mine: BTreeSet<(u64, u64)> = lattice
        .covers()
        .iter()
        .map(|&(l, u)| (extent_mask(l), extent_mask(u)))
        .collect();
    assert_eq!(mine, brute_covers(&extents));
}

#[test]
fn pragmatic_property_layers_and_dot() {
    let lattice = ConceptLattice::build(&ctx(PP));
    let layers = assign_layers(&lattice);
    assert_eq!(layers.layer, [3, 1, 1, 1, 1, 1, 2, 1, 1, 0]);
    assert_eq!(layers.layer[lattice.top()], 0);
    assert_eq!(layers.layer[lattice.bottom()], layers.depth());

    let dot = to_dot(&lattice, DotLabels::IdOnly);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 10);
    assert_eq!(dot.lines().filter(|l| l.contains(" -> ")).count(), 15);

    let sp = to_dot(&ConceptLattice::build(&ctx(SP)), DotLabels::IdAndIntent);
    assert_eq!(sp.lines().filter(|l| l.contains("[label=")).count(), 30);
}

#[test]
fn meets_and_joins() {
    let sa = ctx(SA);
    let lattice = ConceptLattice::build(&sa);
    let wikidata = object_concept(&lattice, "Wikidata").unwrap();
    let nanopub = object_concept(&lattice, "Nanopublications").unwrap();
    let j = lattice.join(wikidata, nanopub).unwrap();
    assert_eq!(lattice.extent_names(j), ["Wikidata", "Nanopublications"]);
    assert_eq!(
        set_of(lattice.intent_names(j)),
        set(&[
            "attribution",
            "source tracking",
            "scholarly citation",
            "knowledge curation",
            "data quality evaluation"
        ])
    );
    for x in 0..lattice.len() {
        assert_eq!(lattice.meet(x, lattice.top()).unwrap(), x);
        assert_eq!(lattice.join(x, x).unwrap(), x);
    }
}

#[test]
fn legend_rows() {
    let lattice = ConceptLattice::build(&ctx(PP));
    let legend = legend(&lattice);
    assert_eq!(legend.rows.len(), 10);
    let prov = legend
        .rows
        .iter()
        .find(|r| r.attributes == ["PROV-O"])
        .unwrap();
    assert_eq!(prov.objects, ["EU ODP", "DBpedia", "LOV", "Nanopublications"]);

    for d in Dimension::CHARACTERISATION {
        let lattice = ConceptLattice::build(&ctx(d));
        let md = legend_markdown_bottom(&lattice);
        assert!(md.starts_with(&format!("| c0 | {EMPTY_SENTINEL} |")), "{d}: {md}");
    }
}

fn legend_markdown_bottom(lattice: &ConceptLattice) -> String {
    legend(lattice).to_markdown().lines().nth(2).unwrap().to_string()
}

#[test]
fn implications_on_corpus() {
    let sa = ctx(SA);
    let repro = Implication::from_names(&sa, &["reproducibility"], &["attribution"]).unwrap();
    assert!(implication_holds(&sa, &repro));
    let citation = Implication::from_names(&sa, &["scholarly citation"], &["knowledge curation"]).unwrap();
    assert!(implication_holds(&sa, &citation));

    let pp = ctx(PP);
    let ng = Implication::from_names(&pp, &["named graphs"], &["PROV-O"]).unwrap();
    assert!(!implication_holds(&pp, &ng));
    let basis = implication_basis(&pp);
    assert!(!continuum_core::fca::follows_from(&basis, &ng));
    assert!(basis.iter().all(|i| implication_holds(&pp, i)));
}

#[test]
fn profiles() {
    let contexts = load_corpus().unwrap().contexts;
    let uniprot = profile_of(&contexts, "UniProt").unwrap();
    assert_eq!(uniprot.exhibited(PP), set(&["RDF-Star"]));
    let wikidata = profile_of(&contexts, "Wikidata").unwrap();
    let sp = wikidata.exhibited(SP);
    assert_eq!(sp.len(), 6);
    assert!(sp.contains("triple-level lineage") && sp.contains("epistemic status"));
    assert_eq!(profile_of(&contexts, "Freebase").unwrap_err().code(), "unknown-kg");
}

fn owl_shacl() -> RequirementSet {
    RequirementSet {
        community: "regulators".into(),
        task: "compliance validation".into(),
        required: [(PA, set(&["OWL DL reasoning", "SHACL"]))].into(),
    }
}

#[test]
fn fitness_scenarios() {
    let corpus = load_corpus().unwrap();
    let registry = corpus.registry();
    let euodp = profile_of(&corpus.contexts, "EU ODP").unwrap();
    let report = evaluate_fitness(&euodp, &owl_shacl(), &registry).unwrap();
    assert!(report.fit);
    assert_eq!(gap_cost(&report, &CostModel::default()), 0.0);

    let wikidata = profile_of(&corpus.contexts, "Wikidata").unwrap();
    let report = evaluate_fitness(&wikidata, &owl_shacl(), &registry).unwrap();
    assert!(!report.fit);
    assert_eq!(report.gap[&PA], set(&["OWL DL reasoning"]));
    assert_eq!(report.satisfied[&PA], set(&["SHACL"]));
    assert_eq!(gap_cost(&report, &CostModel::default()), 1.0);

    let empty = RequirementSet::default();
    let report = evaluate_fitness(&wikidata, &empty, &registry).unwrap();
    assert!(report.fit);
    assert!(report.gap.values().chain(report.satisfied.values()).all(BTreeSet::is_empty));
    assert_eq!(report.surplus[&SP].len(), 6);

    let bogus = RequirementSet {
        required: [(PA, set(&["GraphQL"]))].into(),
        ..Default::default()
    };
    assert_eq!(
        evaluate_fitness(&wikidata, &bogus, &registry).unwrap_err().code(),
        "unknown-feature"
    );
}

#[test]
fn object_and_common_positions() {
    let pa = ConceptLattice::build(&ctx(PA));
    let c = object_concept(&pa, "UniProt").unwrap();
    assert_eq!(pa.extent_names(c), ["UniProt"]);
    assert_eq!(pa.intent_names(c).len(), 6);
    assert!(pa.intent_names(c).contains(&"SPARQL-Star".to_string()));

    let pp = ConceptLattice::build(&ctx(PP));
    let c = object_concept(&pp, "DBpedia").unwrap();
    assert_eq!(pp.extent_names(c), ["DBpedia", "Nanopublications"]);
    assert_eq!(pp.intent_names(c), ["named graphs", "PROV-O"]);

    let sp = ConceptLattice::build(&ctx(SP));
    let c = common_position(&sp, &["British Museum ResearchSpace", "Nanopublications"]).unwrap();
    assert_eq!(
        set_of(sp.intent_names(c)),
        set(&["authorship", "temporal information", "scholarly assertion", "epistemic status"])
    );

    let sa = ConceptLattice::build(&ctx(SA));
    let c = common_position(&sa, &ALL_KGS).unwrap();
    assert_eq!(c, sa.top());
    assert_eq!(sa.intent_names(c), ["attribution"]);
    assert_eq!(
        common_position(&sa, &["LOV"]).unwrap(),
        object_concept(&sa, "LOV").unwrap()
    );
}

#[test]
fn transformation_deltas() {
    let corpus = load_corpus().unwrap();
    let registry = corpus.registry();
    let europeana = profile_of(&corpus.contexts, "Europeana").unwrap();
    let req = RequirementSet {
        required: [(PP, set(&["PROV-O"]))].into(),
        ..Default::default()
    };
    let delta = transformation_delta(&europeana, Target::Requirement(&req), &registry).unwrap();
    assert_eq!(delta[&PP].add, set(&["PROV-O"]));
    assert!(delta[&PP].remove.is_empty());

    let lov = profile_of(&corpus.contexts, "LOV").unwrap();
    let delta = transformation_delta(&europeana, Target::Profile(&lov), &registry).unwrap();
    assert_eq!(delta[&PP].add, set(&["PROV-O"]));
    assert_eq!(delta[&PP].remove, set(&["OAI-ORE aggregation"]));

    let delta = transformation_delta(&europeana, Target::Profile(&europeana), &registry).unwrap();
    assert!(delta.values().all(|d| d.add.is_empty() && d.remove.is_empty()));
}

#[test]
fn profiles_agree_with_incidence() {
    let corpus = load_corpus().unwrap();
    for kg in ALL_KGS {
        let profile = profile_of(&corpus.contexts, kg).unwrap();
        for ctx in &corpus.contexts {
            let g = ctx.object_index(kg).unwrap();
            let row: BTreeSet<String> = ctx.attribute_names(ctx.row(g)).into_iter().collect();
            assert_eq!(profile.exhibited(ctx.dimension()), row);
        }
    }
}

#[test]
fn combined_basis_against_small_premise_oracle() {
    let combined = load_corpus().unwrap().combined;
    let basis = implication_basis(&combined);
    assert!(basis.iter().all(|i| implication_holds(&combined, i)));
    for (premise, implied) in continuum_testkit::brute_implied(&combined, 3) {
        let p = continuum_core::BitSet::from_indices(42, continuum_testkit::bits(premise));
        let closed = continuum_core::fca::implication_closure(&basis, &p);
        let closed_mask = closed.iter().fold(0u64, |a, m| a | 1 << m);
        assert_eq!(closed_mask, implied);
    }
}
