//! The dual Leibniz tensor coalgebra `(T(V), Δ)`, its coderivations and
//! cohomomorphisms, and the suspension isomorphisms to multilinear maps.

mod coderivation;
mod cohomomorphism;
mod suspension;
mod tensor;

pub use coderivation::{commutator, compose_corestrictions, is_codifferential, Coderivation, CodifferentialReport};
pub use cohomomorphism::{conjugate_coderivation, intertwining_residual, invert_linear, Cohomomorphism};
pub use suspension::{
    cohomomorphism_to_morphism, desuspension_exponent, down, morphism_to_cohomomorphism, phi, phi_inverse,
    phi_sequence, phi_sequence_inverse, sigma, sigma_inverse, suspension_exponent, up,
};
pub use tensor::{
    basis_words, check_dual_leibniz, check_dual_leibniz_with, coproduct, coproduct_vector, coproduct_with,
    dual_leibniz_residual, format_pair, format_word, tensor_of, word_degree, word_degrees, TensorPair, TensorTriple,
    TensorVector, Word,
};
