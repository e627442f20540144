use std::collections::BTreeMap;

use crate::complex::{CochainComplex, Generator};
use crate::error::SpecSeqError;
use crate::exact::{SparseMatrix, SparseVec, Subspace};
use crate::field::Field;

use super::SpectralSequence;

/// A cochain complex with a finite decreasing filtration
/// `C = F_0 ⊇ F_1 ⊇ … ⊇ F_n ⊇ F_{n+1} = 0` by subcomplexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: CochainComplex,
    /// `levels[p][k] = F_p C^k` for `p = 0..=n+1`; absent degrees are zero.
    levels: Vec<BTreeMap<i64, Subspace>>,
}

impl FilteredComplex {
    /// `levels` lists `F_0, …, F_{n+1}`. Checks that `F_0 = C`, `F_{n+1} = 0`,
    /// the levels decrease and the differential preserves each level.
    pub fn new(complex: CochainComplex, levels: Vec<BTreeMap<i64, Subspace>>) -> Result<Self, SpecSeqError> {
        if levels.len() < 2 {
            return Err(SpecSeqError::Inconsistent(
                "a filtration needs at least the levels F_0 and F_1".into(),
            ));
        }
        let field = complex.field();
        let mut clean = Vec::with_capacity(levels.len());
        for (p, level) in levels.into_iter().enumerate() {
            let mut kept = BTreeMap::new();
            for (k, s) in level {
                if s.ambient() != complex.dim(k) || s.field() != field {
                    return Err(SpecSeqError::LevelShape { p, degree: k });
                }
                if !s.is_zero() {
                    kept.insert(k, s);
                }
            }
            clean.push(kept);
        }
        let fc = FilteredComplex { complex, levels: clean };
        fc.validate()?;
        Ok(fc)
    }

    /// Levels given by spanning matrices (columns span `F_p C^k`).
    pub fn from_spanning(
        complex: CochainComplex,
        spans: Vec<BTreeMap<i64, SparseMatrix>>,
    ) -> Result<Self, SpecSeqError> {
        let levels = spans
            .into_iter()
            .map(|level| level.into_iter().map(|(k, m)| (k, Subspace::column_space(&m))).collect())
            .collect();
        FilteredComplex::new(complex, levels)
    }

    /// `F_0 = C`, `F_1 = 0`.
    pub fn trivial(complex: CochainComplex) -> Self {
        let full = complex
            .degrees()
            .into_iter()
            .map(|k| (k, Subspace::full(complex.field(), complex.dim(k))))
            .collect();
        FilteredComplex {
            complex,
            levels: vec![full, BTreeMap::new()],
        }
    }

    fn validate(&self) -> Result<(), SpecSeqError> {
        let c = &self.complex;
        let n1 = self.levels.len() - 1;
        for k in c.degrees() {
            if self.level(0, k).dimension() != c.dim(k) {
                return Err(SpecSeqError::NotExhaustive { degree: k });
            }
            if !self.level(n1 as i64, k).is_zero() {
                return Err(SpecSeqError::NotSeparated { degree: k });
            }
        }
        for (p, level) in self.levels.iter().enumerate() {
            for k in level.keys() {
                if c.dim(*k) == 0 {
                    return Err(SpecSeqError::LevelShape { p, degree: *k });
                }
            }
        }
        for p in 1..self.levels.len() {
            for k in c.degrees() {
                let lower = self.level(p as i64, k);
                if !self.level(p as i64 - 1, k).contains_subspace(&lower) {
                    return Err(SpecSeqError::NotDecreasing { p, degree: k });
                }
                let image = lower.image(&c.d(k))?;
                if !self.level(p as i64, k + 1).contains_subspace(&image) {
                    return Err(SpecSeqError::NotCompatible { p, degree: k });
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    /// The filtration length `n` (so `F_{n+1} = 0`).
    pub fn length(&self) -> usize {
        self.levels.len() - 2
    }

    /// `F_p C^k`, with `F_p = C` for `p ≤ 0` and `F_p = 0` past the end.
    pub fn level(&self, p: i64, k: i64) -> Subspace {
        let field = self.complex.field();
        let dim = self.complex.dim(k);
        if p <= 0 {
            return Subspace::full(field, dim);
        }
        match self.levels.get(p as usize).and_then(|l| l.get(&k)) {
            Some(s) => s.clone(),
            None => Subspace::zero(field, dim),
        }
    }

    pub fn spectral_sequence(&self) -> SpectralSequence {
        SpectralSequence::general(self.clone())
    }
}

/// A filtered complex presented with a splitting `C^k = ⊕_p C_p^k`: every
/// generator sits in one block `p`, and the differential decomposes as
/// `d = d_0 + d_1 + … + d_n` with `d_r: C_p^k -> C_{p+r}^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitFilteredComplex {
    complex: CochainComplex,
    blocks: Vec<usize>,
    length: usize,
}

impl SplitFilteredComplex {
    /// `blocks[i]` is the block of generator `i`. The length is the largest block.
    pub fn new(complex: CochainComplex, blocks: Vec<usize>) -> Result<Self, SpecSeqError> {
        let length = blocks.iter().copied().max().unwrap_or(0);
        SplitFilteredComplex::with_length(complex, blocks, length)
    }

    /// As [`Self::new`] with an explicit length `n ≥` every block.
    pub fn with_length(complex: CochainComplex, blocks: Vec<usize>, length: usize) -> Result<Self, SpecSeqError> {
        let basis = complex.basis();
        if blocks.len() != basis.len() {
            let missing = basis.generator(blocks.len().min(basis.len().saturating_sub(1)));
            return Err(SpecSeqError::MissingBlock(missing.id.clone()));
        }
        if let Some(&b) = blocks.iter().max() {
            if b > length {
                return Err(SpecSeqError::Inconsistent(format!(
                    "block {b} exceeds the filtration length {length}"
                )));
            }
        }
        for (s, t, _) in complex.entries() {
            if blocks[t] < blocks[s] {
                return Err(SpecSeqError::LowersFiltration {
                    source_id: basis.generator(s).id.clone(),
                    target_id: basis.generator(t).id.clone(),
                });
            }
        }
        Ok(SplitFilteredComplex {
            complex,
            blocks,
            length,
        })
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Block of global generator `i`.
    pub fn block(&self, i: usize) -> usize {
        self.blocks[i]
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Block of the `j`-th generator of degree `k`.
    pub fn block_in_degree(&self, k: i64, j: usize) -> usize {
        self.blocks[self.complex.basis().in_degree(k)[j]]
    }

    /// Local indices in degree `k` whose block satisfies `keep`.
    pub fn positions(&self, k: i64, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        self.complex
            .basis()
            .in_degree(k)
            .iter()
            .enumerate()
            .filter(|(_, g)| keep(self.blocks[**g]))
            .map(|(j, _)| j)
            .collect()
    }

    /// The component `d_r` of `d^k` (entries raising the block by exactly `r`).
    pub fn component(&self, r: usize, k: i64) -> SparseMatrix {
        self.filtered_d(k, |shift| shift == r)
    }

    /// `D_r = d_0 + … + d_r` on `C^k`.
    pub fn partial_sum(&self, r: usize, k: i64) -> SparseMatrix {
        self.filtered_d(k, |shift| shift <= r)
    }

    fn filtered_d(&self, k: i64, keep: impl Fn(usize) -> bool) -> SparseMatrix {
        let d = self.complex.d(k);
        let f = self.field();
        let columns = d
            .columns()
            .iter()
            .enumerate()
            .map(|(j, col)| {
                let bs = self.block_in_degree(k, j);
                col.filtered(|i| keep(self.block_in_degree(k + 1, i) - bs))
            })
            .collect();
        SparseMatrix::from_columns(f, d.rows(), columns).expect("shape preserved")
    }

    /// The block `(C_p, d_0)` as a complex in its own right.
    pub fn column_complex(&self, p: usize) -> CochainComplex {
        let basis = self.complex.basis();
        let f = self.field();
        let keep: Vec<usize> = (0..basis.len()).filter(|&i| self.blocks[i] == p).collect();
        let mut new_index = vec![usize::MAX; basis.len()];
        for (n, &i) in keep.iter().enumerate() {
            new_index[i] = n;
        }
        let gens: Vec<Generator> = keep.iter().map(|&i| basis.generator(i).clone()).collect();
        let entries = self
            .complex
            .entries()
            .into_iter()
            .filter(|(s, t, _)| self.blocks[*s] == p && self.blocks[*t] == p)
            .map(|(s, t, a)| (new_index[s], new_index[t], a));
        let basis = crate::complex::GradedBasis::new(gens).expect("ids are unique in the parent");
        CochainComplex::from_entries(f, basis, entries).expect("d_0 squares to zero")
    }

    /// The same filtration as a general [`FilteredComplex`]:
    /// `F_p C^k = ⊕_{s ≥ p} C_s^k`.
    pub fn to_filtered(&self) -> FilteredComplex {
        let f = self.field();
        let levels = (0..=self.length + 1)
            .map(|p| {
                self.complex
                    .degrees()
                    .into_iter()
                    .map(|k| {
                        let axes = self.positions(k, |b| b >= p);
                        (k, Subspace::coordinate(f, self.complex.dim(k), axes))
                    })
                    .collect()
            })
            .collect();
        FilteredComplex {
            complex: self.complex.clone(),
            levels,
        }
    }

    /// Vector of `C^k` restricted to the blocks accepted by `keep`.
    pub fn restrict(&self, k: i64, v: &SparseVec, keep: impl Fn(usize) -> bool) -> SparseVec {
        v.filtered(|i| keep(self.block_in_degree(k, i)))
    }

    pub fn spectral_sequence(&self) -> SpectralSequence {
        SpectralSequence::split(self.clone())
    }
}
