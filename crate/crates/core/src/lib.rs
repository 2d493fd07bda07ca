//! Cartesian products of matrices, `A⊘B = A⊗J + J⊗B`, with closed-form trace
//! and entry-sum formulas, structure theorems, factorization, and a graph
//! layer that applies them to distance matrices.
//!
//! Exact work runs over [`Gaussian`] integers with overflow-checked
//! arithmetic; floating-point work over `Complex64`. Spectral quantities
//! (distance spectral radius, inertia) come from a cyclic Jacobi
//! eigensolver.

pub mod error;
pub mod exec;
pub mod graph;
pub mod identities;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::Graph;
pub use matrix::{
    cartesian_chain, commutation_matrix, kron_chain, ApproxMatrix, Dims, ExactMatrix, Matrix,
};
pub use scalar::{Gaussian, Mode, Scalar};
pub use spectral::{InertiaTriple, SpectrumResult};

pub use num_complex::Complex64;
