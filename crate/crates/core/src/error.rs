use thiserror::Error;

/// Errors raised by context parsing, lattice queries, and profile analysis.
///
/// Every variant maps to a stable kebab-case code (see [`Error::code`]) that
/// the command-line front end and validation reports use verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: malformed header: {message}")]
    MalformedHeader { line: usize, message: String },

    #[error("line {line}: count mismatch: {message}")]
    CountMismatch { line: usize, message: String },

    #[error("line {line}, column {column}: invalid incidence character {found:?} (expected 'X' or '.')")]
    InvalidRowChar {
        line: usize,
        column: usize,
        found: char,
    },

    #[error("{}duplicate object name {name:?}", at_line(*.line))]
    DuplicateObject { name: String, line: Option<usize> },

    #[error("{}duplicate attribute name {name:?}", at_line(*.line))]
    DuplicateAttribute { name: String, line: Option<usize> },

    #[error("{}empty name", at_line(*.line))]
    EmptyName { line: Option<usize> },

    #[error("incidence shape: {0}")]
    IncidenceShape(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("unknown dimension tag {0:?}")]
    UnknownDimension(String),

    #[error("feature {name:?} is registered as {existing}, not {requested}")]
    DimensionConflict {
        name: String,
        existing: String,
        requested: String,
    },

    #[error("feature {0:?} cannot be registered under the combined dimension")]
    CombinedRegistration(String),

    #[error("object lists differ: {0}")]
    ObjectMismatch(String),

    #[error("attribute {0:?} appears in more than one merged context")]
    AttributeCollision(String),

    #[error("unknown object {0:?}")]
    UnknownObject(String),

    #[error("unknown attribute {0:?}")]
    UnknownAttribute(String),

    #[error("attribute set is not closed: {0}")]
    NotClosed(String),

    #[error("concept index {index} out of range (lattice has {len} concepts)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unknown knowledge graph {0:?}")]
    UnknownKg(String),

    #[error("unknown feature {name:?} for dimension {dimension}")]
    UnknownFeature { name: String, dimension: String },

    #[error("invalid cost model: {0}")]
    InvalidCostModel(String),

    #[error("embedded corpus is corrupt: {0}")]
    CorpusCorrupt(String),
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedHeader { .. } => "malformed-header",
            Error::CountMismatch { .. } => "count-mismatch",
            Error::InvalidRowChar { .. } => "invalid-row-char",
            Error::DuplicateObject { .. } => "duplicate-object",
            Error::DuplicateAttribute { .. } => "duplicate-attribute",
            Error::EmptyName { .. } => "empty-name",
            Error::IncidenceShape(_) => "incidence-shape",
            Error::Schema(_) => "schema-violation",
            Error::UnknownDimension(_) => "unknown-dimension",
            Error::DimensionConflict { .. } => "dimension-conflict",
            Error::CombinedRegistration(_) => "combined-registration",
            Error::ObjectMismatch(_) => "object-mismatch",
            Error::AttributeCollision(_) => "attribute-collision",
            Error::UnknownObject(_) => "unknown-object",
            Error::UnknownAttribute(_) => "unknown-attribute",
            Error::NotClosed(_) => "not-closed",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::UnknownKg(_) => "unknown-kg",
            Error::UnknownFeature { .. } => "unknown-feature",
            Error::InvalidCostModel(_) => "invalid-cost-model",
            Error::CorpusCorrupt(_) => "corpus-corrupt",
        }
    }

    /// Source line the error refers to, when it came from a text document.
    pub fn line(&self) -> Option<usize> {
        match self {
            Error::MalformedHeader { line, .. }
            | Error::CountMismatch { line, .. }
            | Error::InvalidRowChar { line, .. } => Some(*line),
            Error::DuplicateObject { line, .. }
            | Error::DuplicateAttribute { line, .. }
            | Error::EmptyName { line } => *line,
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
