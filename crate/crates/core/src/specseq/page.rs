use std::collections::BTreeMap;

use crate::exact::{SparseMatrix, SparseVec};
use crate::field::Field;

/// One entry `E_r^{p,q}`: its dimension and representatives of a basis,
/// stored as vectors of the ambient `C^{p+q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageCell {
    pub reps: Vec<SparseVec>,
}

impl PageCell {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

/// The page `E_r` with its differential `d_r` of bidegree `(r, 1 - r)`.
///
/// Only nonzero cells are stored. `differentials[(p, q)]` is the matrix of
/// `d_r: E_r^{p,q} -> E_r^{p+r, q-r+1}` in the representative bases; it is
/// present whenever both cells are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub(crate) field: Field,
    pub(crate) r: usize,
    pub(crate) cells: BTreeMap<(i64, i64), PageCell>,
    pub(crate) differentials: BTreeMap<(i64, i64), SparseMatrix>,
}

impl Page {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).map_or(0, PageCell::dim)
    }

    pub fn reps(&self, p: i64, q: i64) -> &[SparseVec] {
        self.cells.get(&(p, q)).map_or(&[], |c| &c.reps)
    }

    pub fn cells(&self) -> &BTreeMap<(i64, i64), PageCell> {
        &self.cells
    }

    /// Nonzero dimensions keyed by `(p, q)`.
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.cells.iter().map(|(pq, c)| (*pq, c.dim())).collect()
    }

    /// Target bidegree of `d_r` leaving `(p, q)`.
    pub fn target(&self, p: i64, q: i64) -> (i64, i64) {
        let r = self.r as i64;
        (p + r, q - r + 1)
    }

    /// `d_r` leaving `(p, q)`; a zero matrix of the right shape when either
    /// side vanishes.
    pub fn d(&self, p: i64, q: i64) -> SparseMatrix {
        match self.differentials.get(&(p, q)) {
            Some(m) => m.clone(),
            None => {
                let (tp, tq) = self.target(p, q);
                SparseMatrix::zero(self.field, self.dim(tp, tq), self.dim(p, q))
            }
        }
    }

    pub fn differentials(&self) -> &BTreeMap<(i64, i64), SparseMatrix> {
        &self.differentials
    }

    pub fn d_rank(&self, p: i64, q: i64) -> usize {
        self.differentials.get(&(p, q)).map_or(0, SparseMatrix::rank)
    }

    /// True when `d_r` vanishes everywhere.
    pub fn differential_is_zero(&self) -> bool {
        self.differentials.values().all(SparseMatrix::is_zero)
    }

    /// `Σ_{p+q=k} dim E_r^{p,q}` for every total degree with a nonzero cell.
    pub fn totals(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for ((p, q), c) in &self.cells {
            *out.entry(p + q).or_insert(0) += c.dim();
        }
        out
    }

    /// Dimensions of `H(E_r, d_r)`, computed from the matrices of this page.
    pub fn cohomology_dims(&self) -> BTreeMap<(i64, i64), usize> {
        let r = self.r as i64;
        let mut out = BTreeMap::new();
        for (&(p, q), c) in &self.cells {
            let outgoing = self.d_rank(p, q);
            let incoming = self.d_rank(p - r, q + r - 1);
            let h = c.dim() - outgoing - incoming;
            if h > 0 {
                out.insert((p, q), h);
            }
        }
        out
    }

    /// Cells with a negative coordinate; they cannot occur for first-quadrant
    /// filtrations but are allowed for shifted gradings.
    pub fn negative_bidegrees(&self) -> Vec<(i64, i64)> {
        self.cells.keys().filter(|(p, q)| *p < 0 || *q < 0).copied().collect()
    }

    /// The same groups relabelled as page `r` with zero differential; used
    /// once the tower has stabilized.
    pub(crate) fn stabilized_as(&self, r: usize) -> Page {
        Page {
            field: self.field,
            r,
            cells: self.cells.clone(),
            differentials: BTreeMap::new(),
        }
    }
}
