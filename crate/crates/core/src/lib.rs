//! Cohomology, spectral sequences of filtered cochain complexes, and Morse /
//! cellular cohomology with local coefficients, all over exact fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`] and [`exact`]: arithmetic in `F_p` and `Q`, sparse matrices,
//!   subspaces and subquotients.
//! * [`complex`]: cochain complexes (degree +1 differential), chain maps,
//!   cohomology with canonical representatives, tensor products.
//! * [`specseq`]: filtered complexes and the page tower `E_r^{p,q}`, its
//!   differentials, the limit page and the induced filtration on cohomology.
//! * [`localsys`]: local coefficient systems over a combinatorial base graph,
//!   parallel transport, homotopy checks and extension of local subsystems.
//! * [`morse`]: twisted Morse and cellular complexes and the fibration
//!   assembler whose spectral sequence starts from base cohomology with
//!   coefficients in the fiber cohomology.

pub mod complex;
pub mod error;
pub mod exact;
pub mod field;
pub mod localsys;
pub mod morse;
pub mod specseq;

pub use error::Error;
pub use exact::{SparseMatrix, SparseVec, Subquotient, Subspace};
pub use field::{Field, Scalar};
