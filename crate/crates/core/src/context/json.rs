use serde::{Deserialize, Serialize};

use super::{normalize_name, Dimension, FormalContext};
use crate::error::{Error, Result};

/// Wire form of a context: `{dimension, objects, attributes, incidence}` with
/// 0/1 cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonContext {
    pub dimension: String,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub incidence: Vec<Vec<u8>>,
}

impl From<&FormalContext> for JsonContext {
    fn from(ctx: &FormalContext) -> Self {
        JsonContext {
            dimension: ctx.dimension().tag().to_string(),
            objects: ctx.objects().to_vec(),
            attributes: ctx.attributes().to_vec(),
            incidence: ctx
                .incidence_matrix()
                .into_iter()
                .map(|row| row.into_iter().map(u8::from).collect())
                .collect(),
        }
    }
}

impl TryFrom<JsonContext> for FormalContext {
    type Error = Error;

    fn try_from(doc: JsonContext) -> Result<Self> {
        let dimension: Dimension = doc.dimension.parse()?;
        let mut incidence = Vec::with_capacity(doc.incidence.len());
        for (g, row) in doc.incidence.iter().enumerate() {
            let mut cells = Vec::with_capacity(row.len());
            for (m, &cell) in row.iter().enumerate() {
                cells.push(match cell {
                    0 => false,
                    1 => true,
                    other => {
                        return Err(Error::Schema(format!(
                            "incidence[{g}][{m}] is {other}, expected 0 or 1"
                        )))
                    }
                });
            }
            incidence.push(cells);
        }
        for (kind, names) in [("objects", &doc.objects), ("attributes", &doc.attributes)] {
            if let Some(i) = names.iter().position(|n| normalize_name(n).is_empty()) {
                return Err(Error::Schema(format!("{kind}[{i}] is empty")));
            }
        }
        FormalContext::new(dimension, doc.objects, doc.attributes, incidence)
    }
}

pub fn parse_json_context(text: &str) -> Result<FormalContext> {
    let doc: JsonContext =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    doc.try_into()
}

/// Pretty-printed JSON document, newline-terminated.
pub fn serialize_json_context(ctx: &FormalContext) -> String {
    let mut out = serde_json::to_string_pretty(&JsonContext::from(ctx))
        .expect("context serialization cannot fail");
    out.push('\n');
    out
}
