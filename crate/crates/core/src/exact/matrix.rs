use crate::error::LinalgError;
use crate::field::{Field, Scalar};

use super::elim::{Eliminator, Inserted};
use super::vector::SparseVec;

/// Immutable sparse matrix over a field, stored by columns.
///
/// Columns are canonical sparse vectors, so derived equality is equality of
/// matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            rows,
            columns: vec![SparseVec::zero(rows); cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        SparseMatrix {
            field,
            rows: n,
            columns: (0..n).map(|i| SparseVec::unit(field, n, i)).collect(),
        }
    }

    /// From `(row, col, value)` triples; repeated positions are summed and
    /// zeros dropped.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, LinalgError> {
        let mut per_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, a) in triplets {
            if r >= rows || c >= cols {
                return Err(LinalgError::EntryOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            per_col[c].push((r, a));
        }
        let columns = per_col
            .into_iter()
            .map(|entries| SparseVec::from_entries(field, rows, entries))
            .collect::<Result<_, _>>()?;
        Ok(SparseMatrix {
            field,
            rows,
            columns,
        })
    }

    pub fn from_columns(field: Field, rows: usize, columns: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for c in &columns {
            if c.dim() != rows {
                return Err(LinalgError::DimensionMismatch {
                    expected: rows,
                    found: c.dim(),
                });
            }
        }
        Ok(SparseMatrix {
            field,
            rows,
            columns,
        })
    }

    /// Small dense literal, rows given top to bottom.
    pub fn from_rows_i64(field: Field, data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let triplets = data.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), cols, "ragged matrix literal");
            row.iter().enumerate().map(move |(j, &x)| (i, j, field.from_i64(x)))
        });
        SparseMatrix::from_triplets(field, rows, cols, triplets).expect("literal in range")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.columns[c].get(self.field, r)
    }

    /// Entries sorted by `(row, col)`.
    pub fn triplets(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out: Vec<_> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.entries().iter().map(move |(r, a)| (*r, c, a.clone())))
            .collect();
        out.sort_by_key(|(r, c, _)| (*r, *c));
        out
    }

    pub fn mul_vec(&self, v: &SparseVec) -> Result<SparseVec, LinalgError> {
        if v.dim() != self.cols() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols(),
                found: v.dim(),
            });
        }
        let f = self.field;
        Ok(v.entries()
            .iter()
            .fold(SparseVec::zero(self.rows), |acc, (j, a)| acc.add_scaled(f, a, &self.columns[*j])))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.field != rhs.field {
            return Err(LinalgError::FieldMismatch);
        }
        if rhs.rows != self.cols() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols(),
                found: rhs.rows,
            });
        }
        let columns = rhs
            .columns
            .iter()
            .map(|c| self.mul_vec(c))
            .collect::<Result<_, _>>()?;
        Ok(SparseMatrix {
            field: self.field,
            rows: self.rows,
            columns,
        })
    }

    pub fn add(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.check_same_shape(rhs)?;
        let f = self.field;
        Ok(SparseMatrix {
            field: f,
            rows: self.rows,
            columns: self
                .columns
                .iter()
                .zip(&rhs.columns)
                .map(|(a, b)| a.add(f, b))
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.add(&rhs.scaled(&self.field.from_i64(-1)))
    }

    pub fn scaled(&self, c: &Scalar) -> SparseMatrix {
        SparseMatrix {
            field: self.field,
            rows: self.rows,
            columns: self.columns.iter().map(|v| v.scaled(self.field, c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut per_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, a) in col.entries() {
                per_col[*r].push((c, a.clone()));
            }
        }
        let n = self.cols();
        SparseMatrix {
            field: self.field,
            rows: n,
            columns: per_col.into_iter().map(|e| SparseVec::from_sorted(n, e)).collect(),
        }
    }

    /// Columns placed side by side: `[self | rhs]`.
    pub fn hstack(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let mut columns = self.columns.clone();
        columns.extend(rhs.columns.iter().cloned());
        Ok(SparseMatrix {
            field: self.field,
            rows: self.rows,
            columns,
        })
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let f = self.field;
        let columns = cols
            .iter()
            .map(|&c| {
                let entries = self.columns[c]
                    .entries()
                    .iter()
                    .filter(|(r, _)| row_pos[*r] != usize::MAX)
                    .map(|(r, a)| (row_pos[*r], a.clone()));
                SparseVec::from_entries(f, rows.len(), entries).expect("indices in range")
            })
            .collect();
        SparseMatrix {
            field: f,
            rows: rows.len(),
            columns,
        }
    }

    fn check_same_shape(&self, rhs: &SparseMatrix) -> Result<(), LinalgError> {
        if self.field != rhs.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.rows != rhs.rows || self.cols() != rhs.cols() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols(),
                found: rhs.rows * rhs.cols(),
            });
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        let mut e = Eliminator::new(self.field, self.rows);
        for c in &self.columns {
            if !c.is_zero() {
                e.insert(c.clone(), None);
            }
        }
        e.rank()
    }

    /// Basis of the null space, one vector per non-pivot column; the vector
    /// for column `j` has its last nonzero entry at `j`.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let n = self.cols();
        let mut e = Eliminator::tracking(self.field, self.rows, n);
        let mut basis = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            if let Inserted::Dependent { relation } = e.insert(c.clone(), Some(j)) {
                basis.push(relation.expect("tracking enabled"));
            }
        }
        basis
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is not in the image.
    pub fn solve(&self, b: &SparseVec) -> Result<Option<SparseVec>, LinalgError> {
        if b.dim() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.dim(),
            });
        }
        let n = self.cols();
        let mut e = Eliminator::tracking(self.field, self.rows, n);
        for (j, c) in self.columns.iter().enumerate() {
            e.insert(c.clone(), Some(j));
        }
        let (rem, combo) = e.reduce(b);
        if !rem.is_zero() {
            return Ok(None);
        }
        let x = combo.expect("tracking enabled");
        debug_assert_eq!(self.mul_vec(&x).as_ref(), Ok(b));
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<SparseMatrix> {
        if self.rows != self.cols() {
            return None;
        }
        let n = self.rows;
        let mut e = Eliminator::tracking(self.field, n, n);
        for (j, c) in self.columns.iter().enumerate() {
            if let Inserted::Dependent { .. } = e.insert(c.clone(), Some(j)) {
                return None;
            }
        }
        let columns = (0..n)
            .map(|i| {
                let (rem, combo) = e.reduce(&SparseVec::unit(self.field, n, i));
                debug_assert!(rem.is_zero());
                combo.expect("tracking enabled")
            })
            .collect();
        Some(SparseMatrix {
            field: self.field,
            rows: n,
            columns,
        })
    }
}

/// `dim span(z) - dim span(b)` for column spans with `span(b) ⊆ span(z)`.
pub fn subquotient_dim(z: &SparseMatrix, b: &SparseMatrix) -> Result<usize, LinalgError> {
    if z.field() != b.field() {
        return Err(LinalgError::FieldMismatch);
    }
    if z.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: z.rows(),
            found: b.rows(),
        });
    }
    let rz = z.rank();
    let rb = b.rank();
    if z.hstack(b)?.rank() != rz {
        return Err(LinalgError::NotNested);
    }
    Ok(rz - rb)
}
