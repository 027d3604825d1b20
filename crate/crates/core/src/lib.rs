//! Finite sites: categories, sieves, Grothendieck topologies, sheaves,
//! flat continuous functors and Fraisse limits.

pub mod bitset;
pub mod budget;
pub mod category;
pub mod corpus;
pub mod error;
pub mod fraisse;
pub mod functor;
pub mod model;
pub mod sheaf;
pub mod sieve;
pub mod topology;

pub use budget::Budget;
pub use category::{
    build_category, check_amalgamation, check_joint_embedding, check_right_ore, opposite, Arrow,
    ArrowId, ArrowSet, CategorySpec, Completion, Configuration, FinCategory, ObjectId, Property,
    PropertyReport,
};
pub use error::{Error, Result};
pub use sieve::{close_to_sieve, pullback_sieve, sieve_heyting, sieves_on, Sieve, SieveOp};
pub use topology::{
    canonical_topology, enumerate_subtoposes, enumerate_topologies,
    enumerate_topologies_by_axioms, generate_topology, lattice_ops, validate_topology, Axiom,
    AxiomFailure, GrothendieckTopology, LatticeOp, SieveUniverse, TopologyKind, TopologyLattice,
    TopologyReport,
};
pub use functor::{FunctorialityReport, SetFunctor, SetFunctorSpec, Variance};
pub use sheaf::{
    amalgamations, check_sheaf, closed_sieve_lattice, closure, enumerate_subterminal_sheaves,
    matching_families, object_invariants, site_invariants, ClosedSieveLattice, MatchingFamily,
    ObjectInvariantReport, SheafFailure, SheafReport, SheafViolation, SieveWitness,
    SiteInvariantReport, SubterminalReport,
};
pub use model::{
    canonical_form, check_continuity, check_flatness, check_flatness_via_elements,
    check_homogeneous, check_model, enumerate_flat_functors, enumerate_models, from_canonical,
    iso_check, natural_transformations, CanonicalForm, ContinuityFailure, ContinuityReport,
    EqualizerFailure, FlatnessReport, HomogeneityFailure, HomogeneityReport, ModelReport,
    SpanFailure,
};
