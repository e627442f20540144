//! Pages of a split filtered complex from a single filtered column reduction.
//!
//! Generators are ordered so that deeper filtration comes first. Reducing each
//! `d^k` left to right with "latest row" pivots splits the complex, by a
//! filtration-preserving change of basis, into one-generator pieces (which
//! survive to `E_∞`) and two-generator pieces `x -> y` with gap
//! `block(y) - block(x) = g`; such a piece is alive on `E_0 … E_g` and is
//! killed by `d_g`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use crate::error::SpecSeqError;
use crate::exact::{Eliminator, Inserted, SparseMatrix, SparseVec, Sweep};

use super::filtered::SplitFilteredComplex;
use super::page::{Page, PageCell};

#[derive(Clone, Debug)]
enum Interval {
    Essential {
        generator: usize,
        degree: i64,
        rep: SparseVec,
    },
    Pair {
        source: usize,
        target: usize,
        degree: i64,
        gap: usize,
        source_rep: SparseVec,
        target_rep: SparseVec,
    },
}

pub(crate) struct ReductionEngine {
    pub sfc: SplitFilteredComplex,
    intervals: Vec<Interval>,
}

impl ReductionEngine {
    pub fn new(sfc: SplitFilteredComplex) -> Result<Self, SpecSeqError> {
        let c = sfc.complex();
        let basis = c.basis();
        let field = c.field();
        let time = |g: usize| (Reverse(sfc.block(g)), g);

        let mut intervals = Vec::new();
        let mut cocycles: Vec<(usize, i64, SparseVec)> = Vec::new();
        let mut targets: HashMap<usize, ()> = HashMap::new();

        for k in c.degrees() {
            let cols = basis.in_degree(k);
            let rows = basis.in_degree(k + 1);
            let mut col_order: Vec<usize> = (0..cols.len()).collect();
            col_order.sort_by_key(|&j| time(cols[j]));
            // latest row first, so the leading entry is the pivot
            let mut row_order: Vec<usize> = (0..rows.len()).collect();
            row_order.sort_by_key(|&i| Reverse(time(rows[i])));
            let mut row_pos = vec![0; rows.len()];
            for (pos, &i) in row_order.iter().enumerate() {
                row_pos[i] = pos;
            }

            let d = c.d(k);
            let mut elim = Eliminator::tracking(field, rows.len(), cols.len()).with_sweep(Sweep::Leading);
            for &j in &col_order {
                let col = d.column(j);
                let moved = SparseVec::from_entries(
                    field,
                    rows.len(),
                    col.entries().iter().map(|(i, a)| (row_pos[*i], a.clone())),
                )?;
                match elim.insert(moved, Some(j)) {
                    Inserted::Pivot { row, pivot } => {
                        let target_local = row_order[pivot];
                        let r_vec = SparseVec::from_entries(
                            field,
                            rows.len(),
                            elim.rows()[row].entries().iter().map(|(pos, a)| (row_order[*pos], a.clone())),
                        )?;
                        let source = cols[j];
                        let target = rows[target_local];
                        targets.insert(target, ());
                        intervals.push(Interval::Pair {
                            source,
                            target,
                            degree: k,
                            gap: sfc.block(target) - sfc.block(source),
                            source_rep: elim.combos()[row].clone(),
                            target_rep: r_vec,
                        });
                    }
                    Inserted::Dependent { relation } => {
                        cocycles.push((cols[j], k, relation.expect("tracking enabled")));
                    }
                }
            }
        }
        for g in targets.keys() {
            let pivoted_as_source = intervals
                .iter()
                .any(|iv| matches!(iv, Interval::Pair { source, .. } if source == g));
            if pivoted_as_source {
                return Err(SpecSeqError::Inconsistent(format!(
                    "generator {} is both killed and killing",
                    basis.generator(*g).id
                )));
            }
        }
        for (g, k, rep) in cocycles {
            if !targets.contains_key(&g) {
                intervals.push(Interval::Essential {
                    generator: g,
                    degree: k,
                    rep,
                });
            }
        }
        Ok(ReductionEngine { sfc, intervals })
    }

    pub fn page(&self, r: usize) -> Page {
        let field = self.sfc.field();
        let block = |g: usize| self.sfc.block(g) as i64;
        // (cell) -> [(sort key, rep)]
        let mut cells: BTreeMap<(i64, i64), Vec<(usize, SparseVec)>> = BTreeMap::new();
        let mut push = |p: i64, k: i64, g: usize, rep: &SparseVec| {
            cells.entry((p, k - p)).or_default().push((g, rep.clone()));
        };
        for iv in &self.intervals {
            match iv {
                Interval::Essential { generator, degree, rep } => push(block(*generator), *degree, *generator, rep),
                Interval::Pair {
                    source,
                    target,
                    degree,
                    gap,
                    source_rep,
                    target_rep,
                } if r <= *gap => {
                    push(block(*source), *degree, *source, source_rep);
                    push(block(*target), degree + 1, *target, target_rep);
                }
                Interval::Pair { .. } => {}
            }
        }
        let mut position: HashMap<usize, usize> = HashMap::new();
        let cells: BTreeMap<(i64, i64), PageCell> = cells
            .into_iter()
            .map(|(pq, mut reps)| {
                reps.sort_by_key(|(g, _)| *g);
                for (i, (g, _)) in reps.iter().enumerate() {
                    position.insert(*g, i);
                }
                (pq, PageCell { reps: reps.into_iter().map(|(_, v)| v).collect() })
            })
            .collect();

        let ri = r as i64;
        let mut entries: BTreeMap<(i64, i64), Vec<(usize, usize)>> = BTreeMap::new();
        for iv in &self.intervals {
            if let Interval::Pair {
                source,
                target,
                degree,
                gap,
                ..
            } = iv
            {
                if *gap == r {
                    let p = block(*source);
                    entries
                        .entry((p, degree - p))
                        .or_default()
                        .push((position[target], position[source]));
                }
            }
        }
        let mut differentials = BTreeMap::new();
        for (&(p, q), cell) in &cells {
            let Some(target) = cells.get(&(p + ri, q - ri + 1)) else {
                continue;
            };
            let triplets = entries
                .remove(&(p, q))
                .unwrap_or_default()
                .into_iter()
                .map(|(i, j)| (i, j, field.one()));
            let m = SparseMatrix::from_triplets(field, target.dim(), cell.dim(), triplets)
                .expect("positions lie inside their cells");
            differentials.insert((p, q), m);
        }
        Page {
            field,
            r,
            cells,
            differentials,
        }
    }

    /// `dim F_p H^k` from ranks only: `dim(Z ∩ F_p) = |F_p^k| - rank(d^k|F_p)` and
    /// `dim(B ∩ F_p) = rank d^{k-1} - rank(π_{<p} d^{k-1})`.
    pub fn filtration_on_cohomology(&self) -> BTreeMap<(i64, i64), usize> {
        let sfc = &self.sfc;
        let c = sfc.complex();
        let mut out = BTreeMap::new();
        for k in c.degrees() {
            let d_here = c.d(k);
            let d_prev = c.d(k - 1);
            let all_rows: Vec<usize> = (0..d_here.rows()).collect();
            let all_prev_cols: Vec<usize> = (0..d_prev.cols()).collect();
            let rank_prev = d_prev.rank();
            for p in 0..=(sfc.length() + 1) {
                let inside = sfc.positions(k, |b| b >= p);
                let below = sfc.positions(k, |b| b < p);
                let z = inside.len() - d_here.submatrix(&all_rows, &inside).rank();
                let b = rank_prev - d_prev.submatrix(&below, &all_prev_cols).rank();
                out.insert((p as i64, k), z - b);
            }
        }
        out
    }
}
