//! Homogeneous multilinear maps, insertion, and the stem brackets.

mod bracket;
mod map;
mod sequence;

pub use bracket::{
    antisymmetrize, bidegree_pairing, insert_element, insertion, is_graded_antisymmetric, stem_bracket,
    stem_bracket_maps,
};
pub use map::{Cochain, DegreeMinusOneElement, MultiMap};
pub use sequence::{sequence_bracket, MapSequence};
