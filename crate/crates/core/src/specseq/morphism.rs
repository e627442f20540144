use std::collections::BTreeMap;

use crate::complex::ChainMap;
use crate::error::SpecSeqError;
use crate::exact::SparseMatrix;

use super::filtered::FilteredComplex;
use super::general::SubquotientEngine;
use super::page::Page;

/// A chain map between filtered complexes with `f(F_p) ⊆ F_p` for every `p`.
#[derive(Clone, Debug)]
pub struct FilteredChainMap {
    source: FilteredComplex,
    target: FilteredComplex,
    map: ChainMap,
}

/// The maps induced on pages `E_0 … E_R`, where `R` is the later of the two
/// stabilization indices. `maps[r][(p, q)]` goes from source `E_r^{p,q}` to
/// target `E_r^{p,q}` in the representative bases of the two pages; pairs
/// where either cell is zero are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMaps {
    pub source_pages: Vec<Page>,
    pub target_pages: Vec<Page>,
    pub maps: Vec<BTreeMap<(i64, i64), SparseMatrix>>,
}

impl InducedMaps {
    pub fn map(&self, r: usize, p: i64, q: i64) -> SparseMatrix {
        let r = r.min(self.maps.len() - 1);
        match self.maps[r].get(&(p, q)) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(
                self.source_pages[r].field(),
                self.target_pages[r].dim(p, q),
                self.source_pages[r].dim(p, q),
            ),
        }
    }
}

impl FilteredChainMap {
    pub fn new(source: FilteredComplex, target: FilteredComplex, map: ChainMap) -> Result<Self, SpecSeqError> {
        if map.source() != source.complex() || map.target() != target.complex() {
            return Err(SpecSeqError::Inconsistent(
                "chain map does not run between the given complexes".into(),
            ));
        }
        let top = source.length().max(target.length()) + 1;
        for p in 1..=top {
            for k in source.complex().degrees() {
                let image = source.level(p as i64, k).image(&map.block(k))?;
                if !target.level(p as i64, k).contains_subspace(&image) {
                    return Err(SpecSeqError::FiltrationNotPreserved { p, degree: k });
                }
            }
        }
        Ok(FilteredChainMap { source, target, map })
    }

    pub fn source(&self) -> &FilteredComplex {
        &self.source
    }

    pub fn target(&self) -> &FilteredComplex {
        &self.target
    }

    pub fn chain_map(&self) -> &ChainMap {
        &self.map
    }

    /// Computes the induced map on every page and checks that it commutes
    /// with `d_r`.
    pub fn on_pages(&self) -> Result<InducedMaps, SpecSeqError> {
        let src = SubquotientEngine { fc: self.source.clone() };
        let tgt = SubquotientEngine { fc: self.target.clone() };
        let last = self.source.length().max(self.target.length()) + 1;
        let mut out = InducedMaps {
            source_pages: Vec::new(),
            target_pages: Vec::new(),
            maps: Vec::new(),
        };
        for r in 0..=last {
            let (sp, _) = src.page(r)?;
            let (tp, tq) = tgt.page(r)?;
            let mut maps = BTreeMap::new();
            for (&(p, q), cell) in sp.cells() {
                let Some(target) = tq.get(&(p, q)) else {
                    continue;
                };
                let f = self.map.block(p + q);
                let mut columns = Vec::with_capacity(cell.dim());
                for x in &cell.reps {
                    let fx = f.mul_vec(x)?;
                    columns.push(target.class_of(&fx).ok_or_else(|| {
                        SpecSeqError::Inconsistent(format!("image of a class in E_{r}^({p},{q}) is not a cycle"))
                    })?);
                }
                maps.insert((p, q), SparseMatrix::from_columns(sp.field(), target.dimension(), columns)?);
            }
            out.source_pages.push(sp);
            out.target_pages.push(tp);
            out.maps.push(maps);
            self.check_commutes(&out, r)?;
        }
        Ok(out)
    }

    fn check_commutes(&self, induced: &InducedMaps, r: usize) -> Result<(), SpecSeqError> {
        let sp = &induced.source_pages[r];
        let tp = &induced.target_pages[r];
        let mut keys: Vec<(i64, i64)> = sp.cells().keys().copied().collect();
        keys.extend(tp.cells().keys().map(|&(p, q)| (p - r as i64, q + r as i64 - 1)));
        keys.sort_unstable();
        keys.dedup();
        for (p, q) in keys {
            let (p2, q2) = sp.target(p, q);
            let left = induced.map(r, p2, q2).mul(&sp.d(p, q))?;
            let right = tp.d(p, q).mul(&induced.map(r, p, q))?;
            if left != right {
                return Err(SpecSeqError::Inconsistent(format!(
                    "induced map does not commute with d_{r} at ({p},{q})"
                )));
            }
        }
        Ok(())
    }
}
