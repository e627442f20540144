//! Incremental Gaussian elimination with optional tracking of row combinations.
//!
//! Every stored row has its smallest nonzero index as pivot, normalized to one,
//! and pivots are distinct. Tracking records each stored row as a combination
//! of the labelled input vectors that produced it, which is all that kernels,
//! solves and persistence-style reductions need.

use crate::field::{Field, Scalar};

use super::vector::SparseVec;

/// How far an incoming vector is reduced against the stored rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sweep {
    /// Clear every position that is a pivot.
    Full,
    /// Stop as soon as the leading entry is not a pivot.
    Leading,
}

pub(crate) enum Inserted {
    /// The vector was independent and became row `row` with pivot `pivot`.
    Pivot { row: usize, pivot: usize },
    /// The vector reduced to zero; with tracking, `relation` is a vanishing
    /// combination of the inputs with coefficient one on the new label.
    Dependent { relation: Option<SparseVec> },
}

pub(crate) struct Eliminator {
    field: Field,
    dim: usize,
    labels: Option<usize>,
    sweep: Sweep,
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Eliminator {
    pub fn new(field: Field, dim: usize) -> Self {
        Eliminator {
            field,
            dim,
            labels: None,
            sweep: Sweep::Full,
            rows: Vec::new(),
            combos: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    /// Records combinations over `labels` input slots.
    pub fn tracking(field: Field, dim: usize, labels: usize) -> Self {
        Eliminator {
            labels: Some(labels),
            ..Eliminator::new(field, dim)
        }
    }

    pub fn with_sweep(mut self, sweep: Sweep) -> Self {
        self.sweep = sweep;
        self
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn combos(&self) -> &[SparseVec] {
        &self.combos
    }

    /// Reduces `v` against the stored rows. Returns the remainder and, with
    /// tracking, the combination of inputs that was subtracted
    /// (`v = remainder + Σ combo_j input_j`).
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, Option<SparseVec>) {
        let combo = self.labels.map(SparseVec::zero);
        self.reduce_into(v.clone(), combo, false)
    }

    fn reduce_into(
        &self,
        mut v: SparseVec,
        mut combo: Option<SparseVec>,
        negate_combo: bool,
    ) -> (SparseVec, Option<SparseVec>) {
        assert_eq!(v.dim(), self.dim, "vector length mismatch in elimination");
        let f = self.field;
        let mut pos = 0;
        while pos < v.nnz() {
            let (i, c) = v.entries()[pos].clone();
            match self.pivot_row[i] {
                Some(r) => {
                    v = v.add_scaled(f, &f.neg(&c), &self.rows[r]);
                    if let Some(acc) = combo.as_mut() {
                        let coef = if negate_combo { f.neg(&c) } else { c.clone() };
                        *acc = acc.add_scaled(f, &coef, &self.combos[r]);
                    }
                }
                None => {
                    if self.sweep == Sweep::Leading {
                        break;
                    }
                    pos += 1;
                }
            }
        }
        (v, combo)
    }

    /// Inserts `v` (with input label `label` when tracking).
    pub fn insert(&mut self, v: SparseVec, label: Option<usize>) -> Inserted {
        let f = self.field;
        let start = match (self.labels, label) {
            (Some(n), Some(l)) => Some(SparseVec::unit(f, n, l)),
            (Some(n), None) => Some(SparseVec::zero(n)),
            (None, _) => None,
        };
        let (rem, combo) = self.reduce_into(v, start, true);
        let Some(pivot) = rem.leading() else {
            return Inserted::Dependent { relation: combo };
        };
        let lead = rem.entries()[0].1.clone();
        let inv = f.inv(&lead).expect("leading entry is nonzero");
        let row = rem.scaled(f, &inv);
        let combo = combo.map(|c| c.scaled(f, &inv));
        let idx = self.rows.len();
        self.rows.push(row);
        self.combos.push(combo.unwrap_or_else(|| SparseVec::zero(0)));
        self.pivot_row[pivot] = Some(idx);
        Inserted::Pivot { row: idx, pivot }
    }

    /// Clears every pivot column above and below its pivot, giving a reduced
    /// row echelon basis. Returns the rows sorted by pivot.
    pub fn into_reduced_rows(self) -> Vec<SparseVec> {
        let f = self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].leading());
        let mut rows: Vec<SparseVec> = order.iter().map(|&r| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap()).collect();
        // back substitution: later pivots are cleared from earlier rows
        for k in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(k);
            let pivot_vec = &tail[0];
            for row in head.iter_mut() {
                let c = row.get(f, pivots[k]);
                if !f.is_zero(&c) {
                    *row = row.add_scaled(f, &f.neg(&c), pivot_vec);
                }
            }
        }
        rows
    }
}

/// Entry of `v` at the pivot positions of `rows`, in order; used for
/// coordinates with respect to a reduced echelon basis.
pub(crate) fn pivot_coordinates(field: Field, rows: &[SparseVec], v: &SparseVec) -> Vec<Scalar> {
    rows.iter()
        .map(|r| v.get(field, r.leading().expect("echelon rows are nonzero")))
        .collect()
}
