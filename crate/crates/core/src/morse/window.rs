use std::collections::BTreeMap;

use crate::complex::{ChainMap, CochainComplex, GradedBasis};
use crate::error::MorseError;
use crate::exact::SparseMatrix;
use crate::specseq::{FilteredChainMap, SplitFilteredComplex};

/// A split filtered complex with an action value per generator; the
/// differential strictly lowers the action, so every sublevel set
/// `{A < c}` spans a filtered subcomplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionFiltration {
    sfc: SplitFilteredComplex,
    action: Vec<i64>,
}

/// The subquotient `C^{<hi} / C^{<lo}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    /// Global indices in the parent complex, in parent order.
    pub generators: Vec<usize>,
    pub sfc: SplitFilteredComplex,
}

impl ActionFiltration {
    pub fn new(sfc: SplitFilteredComplex, action: Vec<i64>) -> Result<Self, MorseError> {
        let basis = sfc.complex().basis();
        if action.len() != basis.len() {
            let id = basis.generator(action.len().min(basis.len().saturating_sub(1))).id.clone();
            return Err(MorseError::UnknownPoint(id));
        }
        for (s, t, _) in sfc.complex().entries() {
            if action[t] >= action[s] {
                return Err(MorseError::ActionNotDecreasing {
                    source_id: basis.generator(s).id.clone(),
                    target_id: basis.generator(t).id.clone(),
                });
            }
        }
        Ok(ActionFiltration { sfc, action })
    }

    pub fn complex(&self) -> &SplitFilteredComplex {
        &self.sfc
    }

    pub fn action(&self) -> &[i64] {
        &self.action
    }

    pub fn window(&self, lo: i64, hi: i64) -> Result<Window, MorseError> {
        let c = self.sfc.complex();
        let basis = c.basis();
        let generators: Vec<usize> = (0..basis.len())
            .filter(|&i| lo <= self.action[i] && self.action[i] < hi)
            .collect();
        let mut new_index = vec![usize::MAX; basis.len()];
        for (n, &i) in generators.iter().enumerate() {
            new_index[i] = n;
        }
        let gens = generators.iter().map(|&i| basis.generator(i).clone()).collect();
        let entries = c
            .entries()
            .into_iter()
            .filter(|(s, t, _)| new_index[*s] != usize::MAX && new_index[*t] != usize::MAX)
            .map(|(s, t, a)| (new_index[s], new_index[t], a));
        let complex = CochainComplex::from_entries(c.field(), GradedBasis::new(gens)?, entries)?;
        let blocks = generators.iter().map(|&i| self.sfc.block(i)).collect();
        let sfc = SplitFilteredComplex::with_length(complex, blocks, self.sfc.length())?;
        Ok(Window {
            lo,
            hi,
            generators,
            sfc,
        })
    }

    /// The map `C^{[a,b)} -> C^{[a',b')}` for `a ≤ a'` and `b ≤ b'`: keep the
    /// generators present in both windows, drop the rest.
    pub fn truncation_map(&self, from: (i64, i64), to: (i64, i64)) -> Result<FilteredChainMap, MorseError> {
        if from.0 > to.0 || from.1 > to.1 {
            return Err(MorseError::BadWindows {
                from_lo: from.0,
                from_hi: from.1,
                to_lo: to.0,
                to_hi: to.1,
            });
        }
        let (src, tgt) = (self.window(from.0, from.1)?, self.window(to.0, to.1)?);
        let parent = self.sfc.complex().basis();
        let (sc, tc) = (src.sfc.complex(), tgt.sfc.complex());
        let f = sc.field();
        let mut triplets: BTreeMap<i64, Vec<_>> = BTreeMap::new();
        for (n, &g) in src.generators.iter().enumerate() {
            if let Ok(m) = tgt.generators.binary_search(&g) {
                let k = parent.generator(g).degree;
                triplets
                    .entry(k)
                    .or_default()
                    .push((tc.basis().local_index(m), sc.basis().local_index(n), f.one()));
            }
        }
        let mut blocks = BTreeMap::new();
        for (k, ts) in triplets {
            blocks.insert(k, SparseMatrix::from_triplets(f, tc.dim(k), sc.dim(k), ts)?);
        }
        let map = ChainMap::new(sc.clone(), tc.clone(), blocks)?;
        Ok(FilteredChainMap::new(src.sfc.to_filtered(), tgt.sfc.to_filtered(), map)?)
    }
}
