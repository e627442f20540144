//! Exact linear algebra over [`Field`](crate::Field): sparse vectors and
//! matrices, subspaces and subquotients.

mod elim;
mod matrix;
mod subspace;
mod vector;

pub(crate) use elim::{Eliminator, Inserted, Sweep};
pub use matrix::{subquotient_dim, SparseMatrix};
pub use subspace::{Subquotient, Subspace};
pub use vector::SparseVec;
