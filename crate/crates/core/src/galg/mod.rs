//! Graded algebras with triangular data and verification of the standing
//! assumptions: triangular decomposition, semisimple `A^0`, self-injective
//! `A^{>=0}`.

mod algebra;
mod axioms;
mod json;
pub mod radical;
mod structure;

pub use algebra::{AlgebraData, Base, GradedAlgebra, Piece, TriangularData, WordBasis};
pub use axioms::{
    check_self_injective, check_semisimple, check_triangular, verify_axioms, AxiomReport,
    SelfInjectiveReport, SemisimpleReport, TriangularWitness,
};
pub use json::{algebra_from_json, algebra_to_json};
pub use structure::Structure;
