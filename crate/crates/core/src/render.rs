//! Legend tables and layered Hasse diagrams for concept lattices.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::fca::ConceptLattice;

/// Marker used for an empty extent or intent.
pub const EMPTY_SENTINEL: &str = "---";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegendRow {
    pub id: String,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Legend {
    pub rows: Vec<LegendRow>,
}

/// One row per concept in canonical order, names in declaration order.
pub fn legend(lattice: &ConceptLattice) -> Legend {
    Legend {
        rows: (0..lattice.len())
            .map(|i| LegendRow {
                id: ConceptLattice::id(i),
                objects: lattice.extent_names(i),
                attributes: lattice.intent_names(i),
            })
            .collect(),
    }
}

fn cell(names: &[String], sep: &str) -> String {
    if names.is_empty() {
        EMPTY_SENTINEL.to_string()
    } else {
        names.join(sep)
    }
}

fn parse_cell(text: &str, sep: char) -> Vec<String> {
    if text.trim() == EMPTY_SENTINEL {
        return Vec::new();
    }
    text.split(sep).map(|s| s.trim().to_string()).collect()
}

impl Legend {
    pub fn to_markdown(&self) -> String {
        let escape = |s: String| s.replace('|', "\\|");
        let mut out = String::from("| ID | Objects | Attributes |\n|---|---|---|\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                row.id,
                escape(cell(&row.objects, ", ")),
                escape(cell(&row.attributes, ", "))
            );
        }
        out
    }

    /// CSV with columns `id,objects,attributes`; multi-values joined by `"; "`.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["id", "objects", "attributes"])
            .expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record([
                    row.id.as_str(),
                    &cell(&row.objects, "; "),
                    &cell(&row.attributes, "; "),
                ])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn from_csv(text: &str) -> Result<Legend, csv::Error> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            rows.push(LegendRow {
                id: record.get(0).unwrap_or_default().to_string(),
                objects: parse_cell(record.get(1).unwrap_or_default(), ';'),
                attributes: parse_cell(record.get(2).unwrap_or_default(), ';'),
            });
        }
        Ok(Legend { rows })
    }
}

/// Layer per concept: longest cover-path distance from the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerAssignment {
    pub layer: Vec<usize>,
}

impl LayerAssignment {
    pub fn depth(&self) -> usize {
        self.layer.iter().copied().max().unwrap_or(0)
    }

    /// Concept indices grouped by layer, both ascending.
    pub fn groups(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &l) in self.layer.iter().enumerate() {
            out.entry(l).or_default().push(i);
        }
        out
    }
}

pub fn assign_layers(lattice: &ConceptLattice) -> LayerAssignment {
    let n = lattice.len();
    let mut layer = vec![0usize; n];
    // Canonical order sorts by extent size, so walking indices downward visits
    // every upper cover before its lower covers.
    let mut uppers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(lower, upper) in lattice.covers() {
        uppers[lower].push(upper);
    }
    for i in (0..n).rev() {
        layer[i] = uppers[i].iter().map(|&u| layer[u] + 1).max().unwrap_or(0);
    }
    LayerAssignment { layer }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DotLabels {
    #[default]
    IdOnly,
    IdAndIntent,
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph: nodes by canonical id, edges upper → lower, one `rank=same`
/// group per layer.
pub fn to_dot(lattice: &ConceptLattice, labels: DotLabels) -> String {
    let layers = assign_layers(lattice);
    let mut out = String::from("digraph lattice {\n  rankdir=TB;\n  node [shape=circle];\n");
    for i in 0..lattice.len() {
        let id = ConceptLattice::id(i);
        let label = match labels {
            DotLabels::IdOnly => id.clone(),
            DotLabels::IdAndIntent => {
                format!("{id}\\n{}", dot_escape(&cell(&lattice.intent_names(i), ", ")))
            }
        };
        let _ = writeln!(out, "  {id} [label=\"{label}\"];");
    }
    for members in layers.groups().values() {
        let ids: Vec<String> = members.iter().map(|&i| ConceptLattice::id(i)).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
    }
    let mut edges: Vec<(usize, usize)> = lattice.covers().iter().map(|&(lo, up)| (up, lo)).collect();
    edges.sort_unstable();
    for (up, lo) in edges {
        let _ = writeln!(
            out,
            "  {} -> {};",
            ConceptLattice::id(up),
            ConceptLattice::id(lo)
        );
    }
    out.push_str("}\n");
    out
}
