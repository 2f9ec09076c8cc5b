//! Exact scalar arithmetic and exact dense linear algebra.

pub mod d5;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod qpoly;
pub mod rational;
pub mod roots;
pub mod scalar;

pub use d5::{evaluate_branches, Branch, SplitSignal};
pub use matrix::{kernel_basis, matrix_rank, span_contains, vectors_rank, ExactMatrix};
pub use poly::UniPoly;
pub use qpoly::QPoly;
pub use rational::Rational;
pub use roots::{rational_roots, squarefree_factor_moduli};
pub use scalar::{AlgNum, Modulus, Scalar, Split};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("zero divisor modulo {}: split into {} and {}", .0.modulus.poly(), .0.factors[0].poly(), .0.factors[1].poly())]
    Split(Split),
    #[error("division by zero")]
    DivisionByZero,
    #[error("residues of different moduli combined")]
    ModulusMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
