//! Permutation equivalence of linear codes over small finite fields,
//! decided by reduction to weighted digraph isomorphism through
//! orthogonal projectors for the forms `M = aI + bJ`, together with the
//! enumeration formulas for GI-reducible codes and brute-force
//! counterparts for all of them.

pub mod census;
pub mod code;
pub mod error;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod pep;
pub mod projector;

pub use census::{
    count_gi_reducible, count_k, count_l, count_l_eps, gaussian_binomial, grassmannian_census, orth_group_order,
    reference_code, subspaces, type_form, weil_count, CensusForm, CensusReport, DeltaClass, HullLineCount,
};
pub use code::{centralizer_check, CodeJson, LinearCode, Permutation, ReducibilityTag, ReducibilityVerdict, StructureParams};
pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldSpec};
pub use graph::{export_unweighted, refine, wdg_iso, ColorRefinementState, GraphJson, PlainGraph, WeightedDigraph};
pub use matrix::{MatrixFq, Rref};
pub use pep::{find_shared_b, necessity_witness, pep_brute_force, pep_solve, PepReason, PepTag, PepVerdict};
pub use projector::{projector_equivariant, Projector, ProjectorJson};
