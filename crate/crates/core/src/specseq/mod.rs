//! Filtered complexes and their spectral sequences.
//!
//! Two engines compute the same tower. [`FilteredComplex`] goes through the
//! subquotients `Z_r / B_r` of the ambient complex and works for any
//! filtration; [`SplitFilteredComplex`] uses one filtered column reduction and
//! is what large inputs should go through. Pages are computed on demand and
//! cached; every page `r ≥ 1` is checked against the cohomology of the page
//! before it.

mod filtered;
mod general;
mod morphism;
mod page;
mod reduction;
mod zigzag;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::complex::CochainComplex;
use crate::error::SpecSeqError;
use crate::exact::{SparseVec, Subquotient};

pub use filtered::{FilteredComplex, SplitFilteredComplex};
pub use morphism::{FilteredChainMap, InducedMaps};
pub use page::{Page, PageCell};
pub use zigzag::ZigzagWitness;

use general::SubquotientEngine;
use reduction::ReductionEngine;

enum Engine {
    Subquotient(SubquotientEngine),
    Reduction {
        sfc: SplitFilteredComplex,
        engine: OnceLock<Result<ReductionEngine, SpecSeqError>>,
    },
}

struct PageData {
    page: Page,
    quotients: Option<BTreeMap<(i64, i64), Subquotient>>,
}

/// The spectral sequence of a filtered complex of length `n`. Pages `E_r`
/// for `r > n + 1` equal `E_{n+1} = E_∞`.
pub struct SpectralSequence {
    engine: Engine,
    pages: Vec<OnceLock<Result<PageData, SpecSeqError>>>,
}

/// What the tower converges to, and whether it matches the cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    /// Smallest `r ≥ 1` with `d_s = 0` for every `s ≥ r`.
    pub r_stop: usize,
    /// Nonzero `dim E_∞^{p,q}`.
    pub e_infinity: BTreeMap<(i64, i64), usize>,
    /// `dim F_pH^k` keyed by `(p, k)` for `p = 0..=n+1`.
    pub filtration: BTreeMap<(i64, i64), usize>,
    /// Nonzero `dim F_pH^{p+q} - dim F_{p+1}H^{p+q}` keyed by `(p, q)`.
    pub graded: BTreeMap<(i64, i64), usize>,
    /// `dim H^k(C)` for every degree of the complex.
    pub cohomology: BTreeMap<i64, usize>,
    pub certified: bool,
}

impl ConvergenceReport {
    /// `Σ_{p+q=k} dim E_∞^{p,q}`.
    pub fn e_infinity_totals(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for ((p, q), d) in &self.e_infinity {
            *out.entry(p + q).or_insert(0) += d;
        }
        out
    }
}

impl SpectralSequence {
    pub fn general(fc: FilteredComplex) -> Self {
        let slots = fc.length() + 2;
        SpectralSequence {
            engine: Engine::Subquotient(SubquotientEngine { fc }),
            pages: (0..slots).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn split(sfc: SplitFilteredComplex) -> Self {
        let slots = sfc.length() + 2;
        SpectralSequence {
            engine: Engine::Reduction {
                sfc,
                engine: OnceLock::new(),
            },
            pages: (0..slots).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn complex(&self) -> &CochainComplex {
        match &self.engine {
            Engine::Subquotient(e) => e.fc.complex(),
            Engine::Reduction { sfc, .. } => sfc.complex(),
        }
    }

    /// Filtration length `n`.
    pub fn length(&self) -> usize {
        self.pages.len() - 2
    }

    /// Index of the first page known to be `E_∞`.
    pub fn stable_index(&self) -> usize {
        self.length() + 1
    }

    fn reduction(&self) -> Result<&ReductionEngine, SpecSeqError> {
        match &self.engine {
            Engine::Reduction { sfc, engine } => engine
                .get_or_init(|| ReductionEngine::new(sfc.clone()))
                .as_ref()
                .map_err(Clone::clone),
            Engine::Subquotient(_) => unreachable!("only called for split input"),
        }
    }

    fn data(&self, r: usize) -> Result<&PageData, SpecSeqError> {
        self.pages[r]
            .get_or_init(|| self.compute(r))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute(&self, r: usize) -> Result<PageData, SpecSeqError> {
        let data = match &self.engine {
            Engine::Subquotient(e) => {
                let (page, quotients) = e.page(r)?;
                PageData {
                    page,
                    quotients: Some(quotients),
                }
            }
            Engine::Reduction { .. } => PageData {
                page: self.reduction()?.page(r),
                quotients: None,
            },
        };
        check_square_zero(&data.page)?;
        if r > 0 {
            let previous = &self.data(r - 1)?.page;
            if previous.cohomology_dims() != data.page.dims() {
                return Err(SpecSeqError::Inconsistent(format!(
                    "E_{r} does not have the dimensions of H(E_{}, d_{})",
                    r - 1,
                    r - 1
                )));
            }
        }
        Ok(data)
    }

    /// The page `E_r`.
    pub fn page(&self, r: usize) -> Result<Page, SpecSeqError> {
        let stable = self.stable_index();
        if r > stable {
            return Ok(self.data(stable)?.page.stabilized_as(r));
        }
        Ok(self.data(r)?.page.clone())
    }

    /// `E_r^{p,q}` as a subquotient `Z_r / B_r` of `C^{p+q}`. Only the
    /// general engine keeps these; split input returns `None`.
    pub fn subquotient(&self, r: usize, p: i64, q: i64) -> Result<Option<Subquotient>, SpecSeqError> {
        let r = r.min(self.stable_index());
        let data = self.data(r)?;
        Ok(data.quotients.as_ref().and_then(|m| m.get(&(p, q)).cloned()))
    }

    /// Coordinates of the class of `x ∈ Z_r^p` in the representative basis of
    /// `E_r^{p,q}` (general engine only). `None` when `x` is not in `Z_r^p`
    /// or the cell is zero.
    pub fn class_coordinates(&self, r: usize, p: i64, q: i64, x: &SparseVec) -> Result<Option<SparseVec>, SpecSeqError> {
        Ok(self.subquotient(r, p, q)?.and_then(|sq| sq.class_of(x)))
    }

    /// `dim F_pH^k` keyed by `(p, k)`.
    pub fn filtration_on_cohomology(&self) -> Result<BTreeMap<(i64, i64), usize>, SpecSeqError> {
        match &self.engine {
            Engine::Subquotient(e) => e.filtration_on_cohomology(),
            Engine::Reduction { .. } => Ok(self.reduction()?.filtration_on_cohomology()),
        }
    }

    /// Runs the tower to `E_∞` and compares it with the filtration induced on
    /// `H(C)`.
    pub fn converge(&self) -> Result<ConvergenceReport, SpecSeqError> {
        let stable = self.stable_index();
        let mut r_stop = 1;
        for r in 0..=stable {
            let page = &self.data(r)?.page;
            if r >= 1 && !page.differential_is_zero() {
                r_stop = r + 1;
            }
        }
        let e_infinity = self.data(stable)?.page.dims();
        let filtration = self.filtration_on_cohomology()?;
        let mut graded = BTreeMap::new();
        let mut cohomology = BTreeMap::new();
        for (&(p, k), &dim) in &filtration {
            if p == 0 {
                cohomology.insert(k, dim);
            }
            let next = filtration.get(&(p + 1, k)).copied().unwrap_or(0);
            if dim > next {
                graded.insert((p, k - p), dim - next);
            }
        }
        let mut totals: BTreeMap<i64, usize> = cohomology.keys().map(|&k| (k, 0)).collect();
        for ((p, q), d) in &e_infinity {
            *totals.entry(p + q).or_insert(0) += d;
        }
        let certified = graded == e_infinity && totals == cohomology;
        Ok(ConvergenceReport {
            r_stop,
            e_infinity,
            filtration,
            graded,
            cohomology,
            certified,
        })
    }
}

fn check_square_zero(page: &Page) -> Result<(), SpecSeqError> {
    for (&(p, q), d) in page.differentials() {
        let (tp, tq) = page.target(p, q);
        if let Some(next) = page.differentials().get(&(tp, tq)) {
            if !next.mul(d)?.is_zero() {
                return Err(SpecSeqError::Inconsistent(format!(
                    "d_{} ∘ d_{} ≠ 0 at ({p},{q})",
                    page.r(),
                    page.r()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
