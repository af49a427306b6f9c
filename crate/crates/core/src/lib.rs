//! Characterise knowledge graphs by semantic and pragmatic properties and
//! affordances, project the resulting feature tables into concept lattices,
//! and measure how well a KG fits a community's requirements.

pub mod bitset;
pub mod context;
pub mod corpus;
pub mod error;
pub mod fca;
pub mod profile;
pub mod render;

pub use bitset::BitSet;
pub use context::{Dimension, FeatureRegistry, FormalContext, ValidationReport};
pub use error::{Error, Result};
pub use fca::{ConceptLattice, FormalConcept, Implication};
