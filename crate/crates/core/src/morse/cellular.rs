use std::collections::HashMap;

use crate::complex::{CochainComplex, Generator};
use crate::error::MorseError;
use crate::field::Field;
use crate::localsys::{BaseGraph, LocalSystem, Path};
use crate::specseq::SplitFilteredComplex;

use super::{checked_complex, fiber_id};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: i64,
    /// Base vertex whose fiber is attached to the cell; needed only when
    /// twisting.
    pub vertex: Option<usize>,
    /// Filtration level (e.g. the base skeleton the cell lies over).
    pub level: Option<usize>,
}

/// `[e_from : e_to]` contributes `coefficient · Φ_word` to `d(e_from)`.
/// Repeated pairs are summed, so a cell meeting a face several times lists
/// one record per occurrence with its own word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub from: usize,
    pub to: usize,
    pub coefficient: i64,
    pub word: Option<Path>,
}

/// A 1-cell whose both ends sit on the same 0-cell: the coboundary of the
/// 0-cell gets `sign · (Φ⁺ − Φ⁻)` instead of an incidence number, with
/// `Φ±` the transports to the two ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopClause {
    pub vertex_cell: usize,
    pub edge_cell: usize,
    pub sign: i64,
    pub plus: Path,
    pub minus: Path,
}

/// A finite CW structure described by cells, incidence numbers and, for the
/// twisted complex, the transport words between the fibers over the cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularData {
    base: BaseGraph,
    cells: Vec<Cell>,
    incidences: Vec<Incidence>,
    loops: Vec<LoopClause>,
}

type CellSpec = (String, i64, Option<String>, Option<usize>);
type IncidenceSpec = (String, String, i64, Option<String>);
type LoopSpec = (String, String, i64, String, String);

impl CellularData {
    /// `cells` are `(id, dim, vertex, level)`; `incidences` are
    /// `(from, to, coefficient, word)`; `loops` are
    /// `(0-cell, 1-cell, sign, plus word, minus word)`.
    pub fn new(
        base: BaseGraph,
        cells: Vec<CellSpec>,
        incidences: Vec<IncidenceSpec>,
        loops: Vec<LoopSpec>,
    ) -> Result<Self, MorseError> {
        let mut index = HashMap::new();
        let mut cs = Vec::with_capacity(cells.len());
        for (id, dim, vertex, level) in cells {
            if index.insert(id.clone(), cs.len()).is_some() {
                return Err(MorseError::DuplicateId(id));
            }
            if dim < 0 {
                return Err(MorseError::NegativeIndex(id));
            }
            let vertex = vertex.map(|v| base.vertex(&v)).transpose()?;
            cs.push(Cell { id, dim, vertex, level });
        }
        let cell = |id: &str| index.get(id).copied().ok_or_else(|| MorseError::UnknownPoint(id.to_string()));
        let word = |from: usize, to: usize, text: &str| -> Result<Path, MorseError> {
            let label = format!("{} -> {}", cs[from].id, cs[to].id);
            let (Some(a), Some(b)) = (cs[from].vertex, cs[to].vertex) else {
                return Err(MorseError::MissingWord(label));
            };
            let p = base.parse_word_at(&base.vertices()[a], text)?;
            if p.end() != b {
                return Err(MorseError::WrongEndpoints(label));
            }
            Ok(p)
        };
        let mut is = Vec::with_capacity(incidences.len());
        for (from, to, coefficient, text) in incidences {
            let (from, to) = (cell(&from)?, cell(&to)?);
            if cs[to].dim != cs[from].dim + 1 {
                return Err(crate::error::ComplexError::DegreeJump {
                    source_id: cs[from].id.clone(),
                    target_id: cs[to].id.clone(),
                }
                .into());
            }
            let word = text.map(|t| word(from, to, &t)).transpose()?;
            is.push(Incidence {
                from,
                to,
                coefficient,
                word,
            });
        }
        let mut ls = Vec::with_capacity(loops.len());
        for (v, e, sign, plus, minus) in loops {
            let (v, e) = (cell(&v)?, cell(&e)?);
            if cs[v].dim != 0 || cs[e].dim != 1 {
                return Err(crate::error::ComplexError::DegreeJump {
                    source_id: cs[v].id.clone(),
                    target_id: cs[e].id.clone(),
                }
                .into());
            }
            if sign != 1 && sign != -1 {
                return Err(MorseError::BadSign(cs[e].id.clone()));
            }
            ls.push(LoopClause {
                vertex_cell: v,
                edge_cell: e,
                sign,
                plus: word(v, e, &plus)?,
                minus: word(v, e, &minus)?,
            });
        }
        Ok(CellularData {
            base,
            cells: cs,
            incidences: is,
            loops: ls,
        })
    }

    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    pub fn loops(&self) -> &[LoopClause] {
        &self.loops
    }

    /// The untwisted complex filtered by cell levels.
    pub fn filtered(&self, field: Field) -> Result<SplitFilteredComplex, MorseError> {
        let blocks = self
            .cells
            .iter()
            .map(|c| c.level.ok_or_else(|| MorseError::MissingLevel(c.id.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SplitFilteredComplex::new(untwisted_complex(self, field)?, blocks)?)
    }
}

/// Cochain complex of the incidence numbers; loop clauses contribute
/// `sign · (1 − 1) = 0`.
pub fn untwisted_complex(cd: &CellularData, field: Field) -> Result<CochainComplex, MorseError> {
    let gens = cd.cells.iter().map(|c| Generator::new(c.id.clone(), c.dim)).collect();
    let owners: Vec<String> = cd.cells.iter().map(|c| c.id.clone()).collect();
    let entries = cd
        .incidences
        .iter()
        .map(|i| (i.from, i.to, field.from_i64(i.coefficient)))
        .collect();
    checked_complex(field, gens, &owners, entries, |from, to| {
        MorseError::IncidenceNotDifferential { from, to }
    })
}

/// `d(m_i) = Σ_j [e_i : e_j] Φ_{ij}(m_i)`, with the loop clause for 1-cells
/// attached at both ends to one 0-cell.
pub fn cellular_complex(cd: &CellularData, ls: &LocalSystem) -> Result<CochainComplex, MorseError> {
    if ls.base() != cd.base() {
        return Err(MorseError::WrongEndpoints("local system over a different base graph".into()));
    }
    let f = ls.field();
    untwisted_complex(cd, f)?;
    let rank = ls.rank();
    let mut gens = Vec::with_capacity(cd.cells.len() * rank);
    let mut owners = Vec::with_capacity(gens.capacity());
    for c in &cd.cells {
        for i in 0..rank {
            gens.push(Generator::new(fiber_id(&c.id, i, rank), c.dim));
            owners.push(c.id.clone());
        }
    }
    let mut entries = Vec::new();
    let mut push = |from: usize, to: usize, coefficient: i64, m: crate::exact::SparseMatrix| {
        let n = f.from_i64(coefficient);
        for (r, c, a) in m.triplets() {
            entries.push((from * rank + c, to * rank + r, f.mul(&n, &a)));
        }
    };
    for inc in &cd.incidences {
        let word = match &inc.word {
            Some(w) => w.clone(),
            None => {
                let (a, b) = (cd.cells[inc.from].vertex, cd.cells[inc.to].vertex);
                match (a, b) {
                    (Some(a), Some(b)) if a == b => cd.base.constant(a),
                    _ => {
                        return Err(MorseError::MissingWord(format!(
                            "{} -> {}",
                            cd.cells[inc.from].id, cd.cells[inc.to].id
                        )))
                    }
                }
            }
        };
        push(inc.from, inc.to, inc.coefficient, ls.transport(&word)?);
    }
    for l in &cd.loops {
        push(l.vertex_cell, l.edge_cell, l.sign, ls.transport(&l.plus)?);
        push(l.vertex_cell, l.edge_cell, -l.sign, ls.transport(&l.minus)?);
    }
    checked_complex(f, gens, &owners, entries, |from, to| MorseError::NotDifferential { from, to })
}
