//! Exact linear algebra over ℚ and ℤ.
//!
//! Sparse rational matrices, echelon forms, kernels, subspaces and quotient maps,
//! plus Smith normal form and integer lattices. No floating point is used for any
//! decision.

pub mod elim;
pub mod error;
pub mod rat;
pub mod snf;
pub mod sparse;

pub use elim::{
    column_space, kernel_basis, kernel_vectors, quotient_coordinates, quotient_from_spanning, rank, rref, solve,
    Echelon, QuotientMap, Rref, SpanSolver, Subspace,
};
pub use error::LinalgError;
pub use rat::Rat;
pub use snf::{
    integer_kernel, lattice_membership, smith_factors, smith_normal_form, sparse_smith_factors, IntMatrix,
    IntegerLattice, Membership, Snf,
};
pub use sparse::{RationalMatrix, SparseVec};
