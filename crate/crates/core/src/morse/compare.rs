use std::collections::BTreeMap;

use crate::error::MorseError;

use super::{assemble_fibration, CellularData, FibrationData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageComparison {
    pub r: usize,
    pub cellular: BTreeMap<(i64, i64), usize>,
    pub fibration: BTreeMap<(i64, i64), usize>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeraySerreReport {
    pub cohomology: BTreeMap<i64, usize>,
    /// Pages `2..=` the later of the two limit pages; the last one is `E_∞`.
    pub pages: Vec<PageComparison>,
    pub equal: bool,
}

/// Compares the tower of a cellular model of the total space, filtered by
/// cell levels, with the tower of the assembled fibration, from `E_2` on.
///
/// Refuses to compare pages when the total cohomologies differ.
pub fn leray_serre_compare(cd_total: &CellularData, fd: &FibrationData) -> Result<LeraySerreReport, MorseError> {
    let field = fd.fiber().field();
    let cell = cd_total.filtered(field)?;
    let fib = assemble_fibration(fd)?;
    let nonzero = |m: BTreeMap<i64, usize>| -> BTreeMap<i64, usize> { m.into_iter().filter(|(_, d)| *d > 0).collect() };
    let left = nonzero(cell.complex().cohomology().dims());
    let right = nonzero(fib.complex().cohomology().dims());
    if left != right {
        return Err(MorseError::TotalCohomologyDisagrees {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        });
    }
    let (ss_cell, ss_fib) = (cell.spectral_sequence(), fib.spectral_sequence());
    let last = ss_cell.stable_index().max(ss_fib.stable_index()).max(2);
    let mut pages = Vec::new();
    for r in 2..=last {
        let cellular = ss_cell.page(r)?.dims();
        let fibration = ss_fib.page(r)?.dims();
        let equal = cellular == fibration;
        pages.push(PageComparison {
            r,
            cellular,
            fibration,
            equal,
        });
    }
    Ok(LeraySerreReport {
        cohomology: left,
        equal: pages.iter().all(|p| p.equal),
        pages,
    })
}
