//! Pages of an arbitrary filtered complex as subquotients of the ambient complex:
//!
//! ```text
//! Z_r^p  = { x ∈ F_p C^k : d x ∈ F_{p+r} C^{k+1} }      (Z_{-1}^p = F_p C^k)
//! B_r^p  = Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}
//! E_r^{p,k-p} = Z_r^p / B_r^p
//! ```

use std::collections::BTreeMap;

use crate::error::SpecSeqError;
use crate::exact::{SparseMatrix, Subquotient, Subspace};

use super::filtered::FilteredComplex;
use super::page::{Page, PageCell};

pub(crate) struct SubquotientEngine {
    pub fc: FilteredComplex,
}

impl SubquotientEngine {
    fn z(&self, r: i64, p: i64, k: i64) -> Result<Subspace, SpecSeqError> {
        let level = self.fc.level(p, k);
        if r < 0 {
            return Ok(level);
        }
        let c = self.fc.complex();
        Ok(level.preimage(&c.d(k), &self.fc.level(p + r, k + 1))?)
    }

    fn b(&self, r: i64, p: i64, k: i64) -> Result<Subspace, SpecSeqError> {
        let c = self.fc.complex();
        let upper = self.z(r - 1, p + 1, k)?;
        let sources = self.z(r - 1, p - r + 1, k - 1)?;
        let bounded = sources.image(&c.d(k - 1))?;
        Ok(upper.sum(&bounded))
    }

    /// `E_r^{p,k-p}` as a subquotient of `C^k`.
    pub fn cell(&self, r: usize, p: i64, k: i64) -> Result<Subquotient, SpecSeqError> {
        let r = r as i64;
        Ok(Subquotient::new(self.z(r, p, k)?, self.b(r, p, k)?)?)
    }

    pub fn page(&self, r: usize) -> Result<(Page, BTreeMap<(i64, i64), Subquotient>), SpecSeqError> {
        let c = self.fc.complex();
        let n = self.fc.length() as i64;
        let mut quotients = BTreeMap::new();
        for k in c.degrees() {
            for p in 0..=n {
                let sq = self.cell(r, p, k)?;
                if sq.dimension() > 0 {
                    quotients.insert((p, k - p), sq);
                }
            }
        }
        let mut differentials = BTreeMap::new();
        let ri = r as i64;
        for (&(p, q), source) in &quotients {
            let Some(target) = quotients.get(&(p + ri, q - ri + 1)) else {
                continue;
            };
            let d = c.d(p + q);
            let mut columns = Vec::with_capacity(source.dimension());
            for x in source.reps() {
                let dx = d.mul_vec(x)?;
                let class = target.class_of(&dx).ok_or_else(|| {
                    SpecSeqError::Inconsistent(format!(
                        "d of a representative of E_{r}^({p},{q}) leaves Z_{r}^{}",
                        p + ri
                    ))
                })?;
                columns.push(class);
            }
            differentials.insert((p, q), SparseMatrix::from_columns(c.field(), target.dimension(), columns)?);
        }
        let cells = quotients
            .iter()
            .map(|(pq, sq)| (*pq, PageCell { reps: sq.reps().to_vec() }))
            .collect();
        let page = Page {
            field: c.field(),
            r,
            cells,
            differentials,
        };
        Ok((page, quotients))
    }

    /// `dim F_p H^k = dim(Z^k ∩ F_p) - dim(B^k ∩ F_p)` for `p = 0..=n+1`.
    pub fn filtration_on_cohomology(&self) -> Result<BTreeMap<(i64, i64), usize>, SpecSeqError> {
        let c = self.fc.complex();
        let field = c.field();
        let mut out = BTreeMap::new();
        for k in c.degrees() {
            let cocycles = Subspace::span(field, c.dim(k), c.d(k).kernel());
            let coboundaries = Subspace::column_space(&c.d(k - 1));
            for p in 0..=(self.fc.length() as i64 + 1) {
                let level = self.fc.level(p, k);
                let z = cocycles.intersection(&level).dimension();
                let b = coboundaries.intersection(&level).dimension();
                out.insert((p, k), z - b);
            }
        }
        Ok(out)
    }
}
