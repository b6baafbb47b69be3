//! Graded Loday structures, Loday infinity structures and their morphisms.

mod lod_infty;
mod loday;
mod morphism;

pub use lod_infty::{LodInftyReport, LodInftyStructure, DEFAULT_MAX_ARITY};
pub use loday::{check_loday, jacobi_residual, LodayReport};
pub use morphism::{
    check_morphism, check_morphism_with, coalgebraic_left_side, coalgebraic_right_side, compose, conjugate,
    invert_morphism, is_quasi_isomorphism, linear_cohomology, morphism_sides, transport, DegreeCohomology,
    LodInftyMorphism, MorphismReport, OmegaReading,
};
pub(crate) use morphism::block_matrix;
