//! Derivation operators, concept enumeration, lattice construction, and
//! implication mining.

mod closure;
mod derivation;
mod implications;
mod lattice;

pub use closure::{closed_sets, next_closure};
pub use derivation::{
    attribute_closure, close_attributes, common_attributes, common_objects, derive_attributes,
    derive_objects, object_closure,
};
pub use implications::{
    follows_from, implication_basis, implication_closure, implication_holds, Implication,
    NamedImplication,
};
pub use lattice::{
    canonical_cmp, enumerate_concepts, ConceptJson, ConceptLattice, FormalConcept, LatticeJson,
};

/// Builds the concept lattice of `ctx`.
pub fn build_lattice(ctx: &crate::context::FormalContext) -> ConceptLattice {
    ConceptLattice::build(ctx)
}
