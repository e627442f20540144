//! Builders for twisted Morse and cellular cochain complexes, and the
//! fibration assembler.
//!
//! A trajectory record runs from the critical point of lower index (the
//! source of the cochain differential) to the one of higher index, with a
//! sign `n_γ = ±1` and a word in the base graph from the source's vertex to
//! the target's. It contributes `n_γ Φ_γ` to the differential, where `Φ_γ`
//! transports the fiber over the source to the fiber over the target.

mod cellular;
mod compare;
mod fibration;
mod window;

use std::collections::{BTreeMap, HashMap};

use crate::complex::{CochainComplex, GradedBasis, Generator};
use crate::error::MorseError;
use crate::exact::SparseMatrix;
use crate::field::{Field, Scalar};
use crate::localsys::{BaseGraph, LocalSystem, Path};

pub use cellular::{cellular_complex, untwisted_complex, Cell, CellularData, Incidence, LoopClause};
pub use compare::{leray_serre_compare, LeraySerreReport, PageComparison};
pub use fibration::{
    assemble_fibration, e2_table, transport_compose_check, ComposeReport, Correction, E2Table, FibrationData,
};
pub use window::{ActionFiltration, Window};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub id: String,
    pub index: i64,
    /// Vertex of the base graph carrying the fiber over this point.
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub id: String,
    pub from: usize,
    pub to: usize,
    pub sign: i64,
    pub word: Path,
}

/// Critical points and connecting trajectories of a Morse function on the
/// base, with the graph their transport words live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseData {
    base: BaseGraph,
    points: Vec<CriticalPoint>,
    trajectories: Vec<Trajectory>,
    point_index: HashMap<String, usize>,
}

impl MorseData {
    /// `points` are `(id, morse index, vertex)`; `trajectories` are
    /// `(id, from, to, sign, word)` with the word starting at the vertex of
    /// `from` (empty for the constant path).
    pub fn new(
        base: BaseGraph,
        points: Vec<(String, i64, String)>,
        trajectories: Vec<(String, String, String, i64, String)>,
    ) -> Result<Self, MorseError> {
        let mut point_index = HashMap::new();
        let mut ps = Vec::with_capacity(points.len());
        for (id, index, vertex) in points {
            if point_index.insert(id.clone(), ps.len()).is_some() {
                return Err(MorseError::DuplicateId(id));
            }
            if index < 0 {
                return Err(MorseError::NegativeIndex(id));
            }
            let vertex = base.vertex(&vertex)?;
            ps.push(CriticalPoint { id, index, vertex });
        }
        let mut ids = std::collections::HashSet::new();
        let mut ts = Vec::with_capacity(trajectories.len());
        for (id, from, to, sign, word) in trajectories {
            if !ids.insert(id.clone()) {
                return Err(MorseError::DuplicateId(id));
            }
            let from = *point_index.get(&from).ok_or(MorseError::UnknownPoint(from))?;
            let to = *point_index.get(&to).ok_or(MorseError::UnknownPoint(to))?;
            if sign != 1 && sign != -1 {
                return Err(MorseError::BadSign(id));
            }
            let start = &base.vertices()[ps[from].vertex];
            let word = base.parse_word_at(start, &word)?;
            if word.end() != ps[to].vertex {
                return Err(MorseError::WrongEndpoints(id));
            }
            ts.push(Trajectory {
                id,
                from,
                to,
                sign,
                word,
            });
        }
        Ok(MorseData {
            base,
            points: ps,
            trajectories: ts,
            point_index,
        })
    }

    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn points(&self) -> &[CriticalPoint] {
        &self.points
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    pub fn point(&self, id: &str) -> Result<usize, MorseError> {
        self.point_index
            .get(id)
            .copied()
            .ok_or_else(|| MorseError::UnknownPoint(id.to_string()))
    }

    pub fn trajectory(&self, id: &str) -> Result<usize, MorseError> {
        self.trajectories
            .iter()
            .position(|t| t.id == id)
            .ok_or_else(|| MorseError::UnknownPoint(id.to_string()))
    }

    /// Trajectories that enter the differential (index difference one).
    pub fn differential_trajectories(&self) -> impl Iterator<Item = &Trajectory> {
        self.trajectories
            .iter()
            .filter(|t| self.points[t.to].index == self.points[t.from].index + 1)
    }

    pub fn max_index(&self) -> i64 {
        self.points.iter().map(|p| p.index).max().unwrap_or(0)
    }
}

/// Generator id for basis vector `i` of a rank-`rank` fiber over `owner`.
pub(crate) fn fiber_id(owner: &str, i: usize, rank: usize) -> String {
    if rank == 1 {
        owner.to_string()
    } else {
        format!("{owner}:{i}")
    }
}

/// The Morse complex of the base with coefficients in `ls`:
/// `d(x ⊗ m) = Σ_γ n_γ y ⊗ Φ_γ(m)` over trajectories `γ: x -> y` with
/// `ind y = ind x + 1`.
pub fn morse_complex(md: &MorseData, ls: &LocalSystem) -> Result<CochainComplex, MorseError> {
    if ls.base() != md.base() {
        return Err(MorseError::WrongEndpoints("local system over a different base graph".into()));
    }
    let f = ls.field();
    let rank = ls.rank();
    let mut gens = Vec::with_capacity(md.points.len() * rank);
    let mut owners = Vec::with_capacity(gens.capacity());
    for x in &md.points {
        for i in 0..rank {
            gens.push(Generator::new(fiber_id(&x.id, i, rank), x.index));
            owners.push(x.id.clone());
        }
    }
    let mut entries = Vec::new();
    for t in md.differential_trajectories() {
        let phi = ls.transport(&t.word)?;
        let n = f.from_i64(t.sign);
        for (r, c, a) in phi.triplets() {
            entries.push((t.from * rank + c, t.to * rank + r, f.mul(&n, &a)));
        }
    }
    checked_complex(f, gens, &owners, entries, |from, to| MorseError::NotDifferential { from, to })
}

/// Builds a complex from global entries, reporting a failure of `d² = 0` by
/// the owners of the first offending source and target generators.
pub(crate) fn checked_complex(
    field: Field,
    gens: Vec<Generator>,
    owners: &[String],
    entries: Vec<(usize, usize, Scalar)>,
    fail: impl Fn(String, String) -> MorseError,
) -> Result<CochainComplex, MorseError> {
    let basis = GradedBasis::new(gens)?;
    let blocks = blocks_from_entries(field, &basis, entries)?;
    for (k, m) in &blocks {
        let Some(next) = blocks.get(&(k + 1)) else {
            continue;
        };
        let sq = next.mul(m)?;
        if let Some((i, j, _)) = sq.triplets().into_iter().min_by_key(|(i, j, _)| (*j, *i)) {
            let source = basis.in_degree(*k)[j];
            let target = basis.in_degree(k + 2)[i];
            return Err(fail(owners[source].clone(), owners[target].clone()));
        }
    }
    Ok(CochainComplex::new(field, basis, blocks)?)
}

pub(crate) fn blocks_from_entries(
    field: Field,
    basis: &GradedBasis,
    entries: Vec<(usize, usize, Scalar)>,
) -> Result<BTreeMap<i64, SparseMatrix>, MorseError> {
    let mut triplets: BTreeMap<i64, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
    for (s, t, a) in entries {
        let (gs, gt) = (basis.generator(s), basis.generator(t));
        if gt.degree != gs.degree + 1 {
            return Err(crate::error::ComplexError::DegreeJump {
                source_id: gs.id.clone(),
                target_id: gt.id.clone(),
            }
            .into());
        }
        triplets
            .entry(gs.degree)
            .or_default()
            .push((basis.local_index(t), basis.local_index(s), a));
    }
    let mut blocks = BTreeMap::new();
    for (k, ts) in triplets {
        blocks.insert(k, SparseMatrix::from_triplets(field, basis.dim(k + 1), basis.dim(k), ts)?);
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests;
