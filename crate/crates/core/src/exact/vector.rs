use std::cmp::Ordering;

use crate::error::LinalgError;
use crate::field::{Field, Scalar};

/// A sparse vector of fixed length: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(field: Field, dim: usize, i: usize) -> Self {
        assert!(i < dim, "unit vector index {i} out of range {dim}");
        SparseVec {
            dim,
            entries: vec![(i, field.one())],
        }
    }

    /// Builds a canonical vector from arbitrary `(index, value)` pairs; repeated
    /// indices are summed.
    pub fn from_entries(
        field: Field,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Self, LinalgError> {
        let mut raw: Vec<(usize, Scalar)> = entries.into_iter().collect();
        for (i, a) in &raw {
            if *i >= dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: dim,
                    found: i + 1,
                });
            }
            if !field.owns(a) {
                return Err(LinalgError::ForeignScalar);
            }
        }
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, a) in raw {
            match entries.last_mut() {
                Some((j, b)) if *j == i => *b = field.add(b, &a),
                _ => entries.push((i, a)),
            }
        }
        entries.retain(|(_, a)| !field.is_zero(a));
        Ok(SparseVec { dim, entries })
    }

    pub fn from_dense(field: Field, values: &[Scalar]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, a)| !field.is_zero(a))
            .map(|(i, a)| (i, a.clone()))
            .collect();
        SparseVec {
            dim: values.len(),
            entries,
        }
    }

    /// Trusted constructor for already-canonical data.
    pub(crate) fn from_sorted(dim: usize, entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.last().map_or(true, |(i, _)| *i < dim));
        SparseVec { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, field: Field, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => field.zero(),
        }
    }

    /// Smallest index with a nonzero entry.
    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    /// Largest index with a nonzero entry.
    pub fn trailing(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn to_dense(&self, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.dim];
        for (i, a) in &self.entries {
            out[*i] = a.clone();
        }
        out
    }

    pub fn scaled(&self, field: Field, c: &Scalar) -> SparseVec {
        if field.is_zero(c) {
            return SparseVec::zero(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(i, a)| (*i, field.mul(a, c)))
                .collect(),
        }
    }

    pub fn neg(&self, field: Field) -> SparseVec {
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, a)| (*i, field.neg(a))).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, field: Field, c: &Scalar, other: &SparseVec) -> SparseVec {
        assert_eq!(self.dim, other.dim, "vector length mismatch");
        if field.is_zero(c) || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some((j, y))) => {
                    out.push((*j, field.mul(c, y)));
                    b.next();
                }
                (Some((i, x)), Some((j, y))) => match i.cmp(j) {
                    Ordering::Less => {
                        out.push((*i, x.clone()));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((*j, field.mul(c, y)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = field.add(x, &field.mul(c, y));
                        if !field.is_zero(&s) {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        SparseVec {
            dim: self.dim,
            entries: out,
        }
    }

    pub fn add(&self, field: Field, other: &SparseVec) -> SparseVec {
        self.add_scaled(field, &field.one(), other)
    }

    pub fn sub(&self, field: Field, other: &SparseVec) -> SparseVec {
        self.add_scaled(field, &field.from_i64(-1), other)
    }

    /// Keeps only the coordinates for which `keep` holds.
    pub fn filtered(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        SparseVec {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| keep(*i))
                .cloned()
                .collect(),
        }
    }

    /// Re-indexes coordinates through `map` into a vector of length `dim`.
    /// `map` must be strictly increasing on the support.
    pub fn reindexed(&self, dim: usize, map: impl Fn(usize) -> usize) -> SparseVec {
        let entries: Vec<_> = self.entries.iter().map(|(i, a)| (map(*i), a.clone())).collect();
        SparseVec::from_sorted(dim, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_duplicates_and_zeros() {
        let f = Field::Prime(3);
        let v = SparseVec::from_entries(
            f,
            4,
            [(2, Scalar::Residue(1)), (0, Scalar::Residue(2)), (2, Scalar::Residue(2))],
        )
        .unwrap();
        assert_eq!(v.entries(), &[(0, Scalar::Residue(2))]);
        assert!(SparseVec::from_entries(f, 2, [(2, Scalar::Residue(1))]).is_err());
        assert!(SparseVec::from_entries(f, 2, [(0, Scalar::Residue(3))]).is_err());
    }

    #[test]
    fn add_scaled_cancels() {
        let q = Field::Rationals;
        let v = SparseVec::from_dense(q, &[q.from_i64(1), q.from_i64(2), q.zero()]);
        let w = v.add_scaled(q, &q.from_i64(-1), &v);
        assert!(w.is_zero());
        let u = SparseVec::unit(q, 3, 2).add(q, &v);
        assert_eq!(u.trailing(), Some(2));
        assert_eq!(u.leading(), Some(0));
        assert_eq!(u.get(q, 1), q.from_i64(2));
    }
}
