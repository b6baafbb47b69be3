//! Coboundary operators, cohomology tables and formal deformations.

mod cells;
mod coboundary;
mod deformation;
mod table;

pub use cells::{Cell, CellBasis};
pub use coboundary::{
    check_p_ary, is_antisymmetric_sequence, lod_infty_coboundary, loday_coboundary, preserves_filtration,
};
pub use deformation::{
    deformation_check, deformation_sum, first_order_equivalent, gauge_action, obstruction_class, solve_coboundary,
    straighten, DeformationReport, FormalDeformation, GradedLie, ObstructionReport, SequenceAlgebra, StemAlgebra,
    StraighteningReport,
};
pub use table::{
    bidegree_correspondence, cohomology_table, differential_matrix, Bigrading, CellReport, CochainWindow,
    CohomologyReport, Differential, SequenceDifferential, StemDifferential,
};
