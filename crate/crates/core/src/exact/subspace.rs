use crate::error::LinalgError;
use crate::field::{Field, Scalar};

use super::elim::{pivot_coordinates, Eliminator};
use super::matrix::SparseMatrix;
use super::vector::SparseVec;

/// A linear subspace of `field^ambient`, held as its reduced row echelon basis.
///
/// The basis is unique for a given subspace, so derived equality is equality
/// of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| SparseVec::unit(field, ambient, i)).collect(),
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Eliminator::new(field, ambient);
        for v in vectors {
            if !v.is_zero() {
                e.insert(v, None);
            }
        }
        Subspace {
            field,
            ambient,
            basis: e.into_reduced_rows(),
        }
    }

    /// Span of the matrix columns.
    pub fn column_space(m: &SparseMatrix) -> Self {
        Subspace::span(m.field(), m.rows(), m.columns().iter().cloned())
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(field: Field, ambient: usize, axes: impl IntoIterator<Item = usize>) -> Self {
        let mut axes: Vec<usize> = axes.into_iter().collect();
        axes.sort_unstable();
        axes.dedup();
        Subspace {
            field,
            ambient,
            basis: axes.into_iter().map(|i| SparseVec::unit(field, ambient, i)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn as_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.field, self.ambient, self.basis.clone()).expect("basis lengths agree")
    }

    /// Canonical representative of `v` modulo the subspace. Linear in `v`.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut out = v.clone();
        for b in &self.basis {
            let p = b.leading().expect("basis vectors are nonzero");
            let c = v.get(f, p);
            if !f.is_zero(&c) {
                out = out.add_scaled(f, &f.neg(&c), b);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates with respect to [`Self::basis`], or `None` when `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(pivot_coordinates(self.field, &self.basis, v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch in subspace sum");
        Subspace::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch in intersection");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        let residues: Vec<SparseVec> = self.basis.iter().map(|u| other.reduce(u)).collect();
        self.combine_kernel(residues)
    }

    /// `{ x in self : m x in target }`.
    pub fn preimage(&self, m: &SparseMatrix, target: &Subspace) -> Result<Subspace, LinalgError> {
        if m.cols() != self.ambient || m.rows() != target.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: m.cols(),
            });
        }
        let residues: Vec<SparseVec> = self
            .basis
            .iter()
            .map(|u| m.mul_vec(u).map(|w| target.reduce(&w)))
            .collect::<Result<_, _>>()?;
        Ok(self.combine_kernel(residues))
    }

    /// `m(self)`.
    pub fn image(&self, m: &SparseMatrix) -> Result<Subspace, LinalgError> {
        let imgs = self.basis.iter().map(|u| m.mul_vec(u)).collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::span(m.field(), m.rows(), imgs))
    }

    /// Span of `Σ k_i basis_i` over the kernel vectors `k` of the matrix whose
    /// columns are `residues`.
    fn combine_kernel(&self, residues: Vec<SparseVec>) -> Subspace {
        let rows = residues.first().map_or(0, SparseVec::dim);
        let m = SparseMatrix::from_columns(self.field, rows, residues).expect("residues share a length");
        let f = self.field;
        let vecs = m.kernel().into_iter().map(|k| {
            k.entries()
                .iter()
                .fold(SparseVec::zero(self.ambient), |acc, (i, c)| acc.add_scaled(f, c, &self.basis[*i]))
        });
        Subspace::span(f, self.ambient, vecs)
    }
}

/// A subquotient `Z / B` with canonical representatives for a basis.
///
/// Representatives are the reduced echelon basis of `Z` taken modulo `B`, so
/// they are determined by the pair of subspaces alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    numerator: Subspace,
    denominator: Subspace,
    reps: Vec<SparseVec>,
}

impl Subquotient {
    pub fn new(numerator: Subspace, denominator: Subspace) -> Result<Self, LinalgError> {
        if numerator.ambient != denominator.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: numerator.ambient,
                found: denominator.ambient,
            });
        }
        if !numerator.contains_subspace(&denominator) {
            return Err(LinalgError::NotNested);
        }
        let reduced = numerator.basis.iter().map(|z| denominator.reduce(z));
        let reps = Subspace::span(numerator.field, numerator.ambient, reduced).basis;
        debug_assert_eq!(reps.len() + denominator.dimension(), numerator.dimension());
        Ok(Subquotient {
            numerator,
            denominator,
            reps,
        })
    }

    pub fn dimension(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[SparseVec] {
        &self.reps
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Coordinates of the class of `x` in the representative basis; `None` if
    /// `x` is not in the numerator.
    pub fn coordinates(&self, x: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.numerator.contains(x) {
            return None;
        }
        let r = self.denominator.reduce(x);
        Some(pivot_coordinates(self.numerator.field, &self.reps, &r))
    }

    /// Coordinates as a sparse vector of length [`Self::dimension`].
    pub fn class_of(&self, x: &SparseVec) -> Option<SparseVec> {
        let f = self.numerator.field;
        self.coordinates(x).map(|c| SparseVec::from_dense(f, &c))
    }
}
