//! Minimal models: splitting of `(V, π_1)`, transfer of the higher maps and
//! quasi-inverses.

mod model;
mod split;

pub use model::{inverts_on_cohomology, minimal_model, quasi_inverse, solve_correction, MinimalModel, StepMethod};
pub use split::{
    build_f2, correction_candidate, split_complex, transfer_formula_holds, transfer_step, HomotopyData, Part,
    SplitComplex, SplitVector,
};
