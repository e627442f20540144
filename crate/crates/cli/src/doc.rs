//! The document format: JSON with a top-level `"kind"`.

use std::collections::{BTreeMap, HashMap};

use fibseq::complex::{CochainComplex, Generator};
use fibseq::localsys::{BaseGraph, LocalSubsystem, LocalSystem};
use fibseq::morse::{CellularData, FibrationData, MorseData};
use fibseq::specseq::{FilteredComplex, SplitFilteredComplex};
use fibseq::{Field, Scalar, SparseMatrix};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A scalar as written in a document: an integer or a string `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

pub type Entry = (String, String, Num);
/// `(row, col, value)`.
pub type MatrixEntry = (usize, usize, Num);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenDoc {
    pub id: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub field: String,
    pub generators: Vec<GenDoc>,
    #[serde(default)]
    pub differential: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitGenDoc {
    pub id: String,
    pub degree: i64,
    pub block: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitDoc {
    pub field: String,
    pub generators: Vec<SplitGenDoc>,
    #[serde(default)]
    pub differential: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
}

/// `levels[i]` spans `F_{i+1}`; each vector is a list of `(generator, coefficient)`
/// within a single degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilteredDoc {
    pub field: String,
    pub generators: Vec<GenDoc>,
    #[serde(default)]
    pub differential: Vec<Entry>,
    #[serde(default)]
    pub levels: Vec<Vec<Vec<(String, Num)>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportDoc {
    pub edge: String,
    pub entries: Vec<MatrixEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSystemDoc {
    pub field: String,
    pub rank: usize,
    pub base: BaseDoc,
    /// Edges not listed carry the identity.
    #[serde(default)]
    pub transports: Vec<TransportDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathMatrixDoc {
    pub start: String,
    pub word: String,
    pub entries: Vec<MatrixEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsystemDoc {
    pub field: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseDoc>,
    pub carrier: Vec<String>,
    pub generators: Vec<PathMatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub id: String,
    pub index: i64,
    pub vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryDoc {
    pub id: String,
    pub from: String,
    pub to: String,
    pub sign: i64,
    #[serde(default)]
    pub word: String,
}

/// Coefficients for the Morse and cellular builders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub rank: usize,
    #[serde(default)]
    pub transports: Vec<TransportDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseDoc {
    pub field: String,
    pub base: BaseDoc,
    pub points: Vec<PointDoc>,
    #[serde(default)]
    pub trajectories: Vec<TrajectoryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub id: String,
    pub dim: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidenceDoc {
    pub from: String,
    pub to: String,
    pub coefficient: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopDoc {
    pub vertex_cell: String,
    pub edge_cell: String,
    pub sign: i64,
    pub plus: String,
    pub minus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellularDoc {
    pub field: String,
    pub base: BaseDoc,
    pub cells: Vec<CellDoc>,
    #[serde(default)]
    pub incidences: Vec<IncidenceDoc>,
    #[serde(default)]
    pub loops: Vec<LoopDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberDoc {
    pub generators: Vec<GenDoc>,
    #[serde(default)]
    pub differential: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub degree: i64,
    pub entries: Vec<MatrixEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub edge: String,
    pub blocks: Vec<BlockDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrectionDoc {
    pub from: String,
    pub to: String,
    /// Keyed by source fiber degree.
    pub blocks: Vec<BlockDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationDoc {
    pub field: String,
    pub base: BaseDoc,
    pub points: Vec<PointDoc>,
    #[serde(default)]
    pub trajectories: Vec<TrajectoryDoc>,
    pub fiber: FiberDoc,
    #[serde(default)]
    pub action: Vec<ActionDoc>,
    #[serde(default)]
    pub corrections: Vec<CorrectionDoc>,
    #[serde(default)]
    pub shift_n: i64,
    #[serde(default)]
    pub shift_k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Complex(ComplexDoc),
    Split(SplitDoc),
    Filtered(FilteredDoc),
    BaseGraph(BaseDoc),
    LocalSystem(LocalSystemDoc),
    LocalSubsystem(SubsystemDoc),
    Morse(MorseDoc),
    Cellular(CellularDoc),
    Fibration(FibrationDoc),
}

/// A document turned into library objects.
#[derive(Clone, Debug)]
pub enum Built {
    Complex(CochainComplex),
    Split(SplitFilteredComplex),
    Filtered(FilteredComplex),
    BaseGraph(BaseGraph),
    LocalSystem(LocalSystem),
    /// The subsystem needs a base; it may come from a second file.
    LocalSubsystem(SubsystemDoc),
    Morse(MorseData, LocalSystem),
    Cellular(CellularData, LocalSystem),
    Fibration(FibrationData),
}

pub fn parse_document(text: &str) -> Result<Document, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse_at(e.line(), e.column(), e.to_string()))
}

pub fn print_document(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn field_of(text: &str) -> Result<Field, CliError> {
    text.parse::<Field>().map_err(|e| CliError::parse(e.to_string()))
}

fn scalar(field: Field, n: &Num) -> Result<Scalar, CliError> {
    match n {
        Num::Int(i) => Ok(field.from_i64(*i)),
        Num::Text(t) => field.parse_scalar(t).map_err(|e| CliError::parse(e.to_string())),
    }
}

pub fn num(field: Field, a: &Scalar) -> Num {
    let text = field.format_scalar(a);
    match text.parse::<i64>() {
        Ok(i) => Num::Int(i),
        Err(_) => Num::Text(text),
    }
}

fn canon(field: Field, n: &mut Num) -> Result<(), CliError> {
    *n = num(field, &scalar(field, n)?);
    Ok(())
}

fn canon_matrix(field: Field, entries: &mut [MatrixEntry]) -> Result<(), CliError> {
    entries.iter_mut().try_for_each(|e| canon(field, &mut e.2))
}

fn canon_entries(field: Field, entries: &mut [Entry]) -> Result<(), CliError> {
    entries.iter_mut().try_for_each(|e| canon(field, &mut e.2))
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "complex",
            Document::Split(_) => "split",
            Document::Filtered(_) => "filtered",
            Document::BaseGraph(_) => "base_graph",
            Document::LocalSystem(_) => "local_system",
            Document::LocalSubsystem(_) => "local_subsystem",
            Document::Morse(_) => "morse",
            Document::Cellular(_) => "cellular",
            Document::Fibration(_) => "fibration",
        }
    }

    fn field_slot(&mut self) -> Option<&mut String> {
        match self {
            Document::Complex(d) => Some(&mut d.field),
            Document::Split(d) => Some(&mut d.field),
            Document::Filtered(d) => Some(&mut d.field),
            Document::BaseGraph(_) => None,
            Document::LocalSystem(d) => Some(&mut d.field),
            Document::LocalSubsystem(d) => Some(&mut d.field),
            Document::Morse(d) => Some(&mut d.field),
            Document::Cellular(d) => Some(&mut d.field),
            Document::Fibration(d) => Some(&mut d.field),
        }
    }

    /// Replaces the field of the document.
    pub fn set_field(&mut self, field: Field) {
        if let Some(slot) = self.field_slot() {
            *slot = field.to_string();
        }
    }

    /// Rewrites every scalar as a least nonnegative residue or reduced
    /// fraction, and the field name in its canonical spelling.
    pub fn canonical(mut self) -> Result<Document, CliError> {
        let Some(slot) = self.field_slot() else {
            return Ok(self);
        };
        let f = field_of(slot)?;
        *slot = f.to_string();
        match &mut self {
            Document::Complex(d) => canon_entries(f, &mut d.differential)?,
            Document::Split(d) => canon_entries(f, &mut d.differential)?,
            Document::Filtered(d) => {
                canon_entries(f, &mut d.differential)?;
                for v in d.levels.iter_mut().flatten().flatten() {
                    canon(f, &mut v.1)?;
                }
            }
            Document::BaseGraph(_) => {}
            Document::LocalSystem(d) => {
                for t in &mut d.transports {
                    canon_matrix(f, &mut t.entries)?;
                }
            }
            Document::LocalSubsystem(d) => {
                for g in &mut d.generators {
                    canon_matrix(f, &mut g.entries)?;
                }
            }
            Document::Morse(MorseDoc { system, .. }) | Document::Cellular(CellularDoc { system, .. }) => {
                for t in system.iter_mut().flat_map(|s| s.transports.iter_mut()) {
                    canon_matrix(f, &mut t.entries)?;
                }
            }
            Document::Fibration(d) => {
                canon_entries(f, &mut d.fiber.differential)?;
                let blocks = d
                    .action
                    .iter_mut()
                    .flat_map(|a| a.blocks.iter_mut())
                    .chain(d.corrections.iter_mut().flat_map(|c| c.blocks.iter_mut()));
                for b in blocks {
                    canon_matrix(f, &mut b.entries)?;
                }
            }
        }
        Ok(self)
    }

    pub fn build(&self) -> Result<Built, CliError> {
        Ok(match self {
            Document::Complex(d) => {
                let f = field_of(&d.field)?;
                Built::Complex(build_complex(f, &d.generators, &d.differential)?)
            }
            Document::Split(d) => {
                let f = field_of(&d.field)?;
                let gens: Vec<GenDoc> = d
                    .generators
                    .iter()
                    .map(|g| GenDoc {
                        id: g.id.clone(),
                        degree: g.degree,
                    })
                    .collect();
                let c = build_complex(f, &gens, &d.differential)?;
                let blocks = d.generators.iter().map(|g| g.block).collect();
                let sfc = match d.length {
                    Some(n) => SplitFilteredComplex::with_length(c, blocks, n),
                    None => SplitFilteredComplex::new(c, blocks),
                }
                .map_err(CliError::from_lib)?;
                Built::Split(sfc)
            }
            Document::Filtered(d) => {
                let f = field_of(&d.field)?;
                let c = build_complex(f, &d.generators, &d.differential)?;
                Built::Filtered(build_filtered(c, &d.levels)?)
            }
            Document::BaseGraph(d) => Built::BaseGraph(build_base(d)?),
            Document::LocalSystem(d) => {
                let f = field_of(&d.field)?;
                let base = build_base(&d.base)?;
                Built::LocalSystem(build_system(f, d.rank, base, &d.transports)?)
            }
            Document::LocalSubsystem(d) => {
                field_of(&d.field)?;
                Built::LocalSubsystem(d.clone())
            }
            Document::Morse(d) => {
                let f = field_of(&d.field)?;
                let md = build_morse(&d.base, &d.points, &d.trajectories)?;
                let ls = coefficients(f, md.base(), d.system.as_ref())?;
                Built::Morse(md, ls)
            }
            Document::Cellular(d) => {
                let f = field_of(&d.field)?;
                let cd = build_cellular(d)?;
                let ls = coefficients(f, cd.base(), d.system.as_ref())?;
                Built::Cellular(cd, ls)
            }
            Document::Fibration(d) => Built::Fibration(build_fibration(d)?),
        })
    }
}

fn build_complex(field: Field, gens: &[GenDoc], diff: &[Entry]) -> Result<CochainComplex, CliError> {
    let generators = gens.iter().map(|g| Generator::new(g.id.clone(), g.degree)).collect();
    let entries = diff
        .iter()
        .map(|(s, t, a)| Ok((s.clone(), t.clone(), scalar(field, a)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    CochainComplex::from_id_entries(field, generators, entries).map_err(CliError::from_lib)
}

fn build_filtered(c: CochainComplex, levels: &[Vec<Vec<(String, Num)>>]) -> Result<FilteredComplex, CliError> {
    let f = c.field();
    let basis = c.basis().clone();
    let full: BTreeMap<i64, SparseMatrix> = c
        .degrees()
        .into_iter()
        .map(|k| (k, SparseMatrix::identity(f, c.dim(k))))
        .collect();
    let mut spans = vec![full];
    for level in levels {
        let mut columns: BTreeMap<i64, Vec<Vec<(usize, Scalar)>>> = BTreeMap::new();
        for vector in level {
            let mut degree = None;
            let mut entries = Vec::with_capacity(vector.len());
            for (id, a) in vector {
                let g = basis
                    .index_of(id)
                    .ok_or_else(|| CliError::parse(format!("unknown generator id {id:?}")))?;
                let k = basis.generator(g).degree;
                if degree.is_some_and(|d| d != k) {
                    return Err(CliError::invariant(format!(
                        "filtration vector mixes degrees at {id:?}"
                    )));
                }
                degree = Some(k);
                entries.push((basis.local_index(g), scalar(f, a)?));
            }
            if let Some(k) = degree {
                columns.entry(k).or_default().push(entries);
            }
        }
        let mut level_spans = BTreeMap::new();
        for (k, cols) in columns {
            let triplets = cols
                .into_iter()
                .enumerate()
                .flat_map(|(j, col)| col.into_iter().map(move |(i, a)| (i, j, a)))
                .collect::<Vec<_>>();
            let ncols = triplets.iter().map(|t| t.1 + 1).max().unwrap_or(0);
            let m = SparseMatrix::from_triplets(f, c.dim(k), ncols, triplets).map_err(CliError::from_lib)?;
            level_spans.insert(k, m);
        }
        spans.push(level_spans);
    }
    spans.push(BTreeMap::new());
    FilteredComplex::from_spanning(c, spans).map_err(CliError::from_lib)
}

pub fn build_base(d: &BaseDoc) -> Result<BaseGraph, CliError> {
    BaseGraph::new(
        d.vertices.clone(),
        d.edges.iter().map(|e| (e.id.clone(), e.from.clone(), e.to.clone())).collect(),
        &d.relations,
    )
    .map_err(CliError::from_lib)
}

fn matrix(field: Field, rows: usize, cols: usize, entries: &[MatrixEntry]) -> Result<SparseMatrix, CliError> {
    let triplets = entries
        .iter()
        .map(|(r, c, a)| Ok((*r, *c, scalar(field, a)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    SparseMatrix::from_triplets(field, rows, cols, triplets).map_err(|e| CliError::parse(e.to_string()))
}

fn build_system(field: Field, rank: usize, base: BaseGraph, transports: &[TransportDoc]) -> Result<LocalSystem, CliError> {
    let mut ms = vec![SparseMatrix::identity(field, rank); base.edges().len()];
    for t in transports {
        let e = base.edge(&t.edge).map_err(CliError::from_lib)?;
        ms[e] = matrix(field, rank, rank, &t.entries)?;
    }
    LocalSystem::new(base, field, rank, ms).map_err(CliError::from_lib)
}

fn coefficients(field: Field, base: &BaseGraph, system: Option<&SystemDoc>) -> Result<LocalSystem, CliError> {
    match system {
        Some(s) => build_system(field, s.rank, base.clone(), &s.transports),
        None => Ok(LocalSystem::trivial(base.clone(), field, 1)),
    }
}

pub fn build_subsystem(d: &SubsystemDoc, base: &BaseGraph) -> Result<LocalSubsystem, CliError> {
    let f = field_of(&d.field)?;
    let generators = d
        .generators
        .iter()
        .map(|g| {
            let path = base.parse_word_at(&g.start, &g.word).map_err(CliError::from_lib)?;
            Ok((path, matrix(f, d.rank, d.rank, &g.entries)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    LocalSubsystem::new(base.clone(), f, d.rank, &d.carrier, generators).map_err(CliError::from_lib)
}

fn build_morse(base: &BaseDoc, points: &[PointDoc], trajectories: &[TrajectoryDoc]) -> Result<MorseData, CliError> {
    MorseData::new(
        build_base(base)?,
        points.iter().map(|p| (p.id.clone(), p.index, p.vertex.clone())).collect(),
        trajectories
            .iter()
            .map(|t| (t.id.clone(), t.from.clone(), t.to.clone(), t.sign, t.word.clone()))
            .collect(),
    )
    .map_err(CliError::from_lib)
}

fn build_cellular(d: &CellularDoc) -> Result<CellularData, CliError> {
    CellularData::new(
        build_base(&d.base)?,
        d.cells
            .iter()
            .map(|c| (c.id.clone(), c.dim, c.vertex.clone(), c.level))
            .collect(),
        d.incidences
            .iter()
            .map(|i| (i.from.clone(), i.to.clone(), i.coefficient, i.word.clone()))
            .collect(),
        d.loops
            .iter()
            .map(|l| (l.vertex_cell.clone(), l.edge_cell.clone(), l.sign, l.plus.clone(), l.minus.clone()))
            .collect(),
    )
    .map_err(CliError::from_lib)
}

fn build_fibration(d: &FibrationDoc) -> Result<FibrationData, CliError> {
    let f = field_of(&d.field)?;
    let md = build_morse(&d.base, &d.points, &d.trajectories)?;
    let fiber = build_complex(f, &d.fiber.generators, &d.fiber.differential)?;
    let blocks = |bs: &[BlockDoc], lower: i64| -> Result<BTreeMap<i64, SparseMatrix>, CliError> {
        bs.iter()
            .map(|b| {
                let m = matrix(f, fiber.dim(b.degree - lower), fiber.dim(b.degree), &b.entries)?;
                Ok((b.degree, m))
            })
            .collect()
    };
    let action = d
        .action
        .iter()
        .map(|a| Ok((a.edge.clone(), blocks(&a.blocks, 0)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let index: HashMap<&str, i64> = d.points.iter().map(|p| (p.id.as_str(), p.index)).collect();
    let corrections = d
        .corrections
        .iter()
        .map(|c| {
            let look = |id: &str| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| CliError::parse(format!("unknown critical point or cell {id:?}")))
            };
            let r = look(&c.to)? - look(&c.from)?;
            Ok((c.from.clone(), c.to.clone(), blocks(&c.blocks, r - 1)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let fd = FibrationData::new(md, fiber, action, corrections).map_err(CliError::from_lib)?;
    Ok(fd.with_shifts(d.shift_n, d.shift_k))
}

pub fn base_doc(base: &BaseGraph) -> BaseDoc {
    BaseDoc {
        vertices: base.vertices().to_vec(),
        edges: base
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                id: e.id.clone(),
                from: base.vertices()[e.from].clone(),
                to: base.vertices()[e.to].clone(),
            })
            .collect(),
        relations: base.relations().iter().map(|r| base.format_word(r)).collect(),
    }
}

pub fn matrix_entries(m: &SparseMatrix) -> Vec<MatrixEntry> {
    let mut t = m.triplets();
    t.sort_by_key(|(r, c, _)| (*r, *c));
    t.into_iter().map(|(r, c, a)| (r, c, num(m.field(), &a))).collect()
}

pub fn local_system_doc(ls: &LocalSystem) -> Document {
    let base = ls.base();
    let id = SparseMatrix::identity(ls.field(), ls.rank());
    Document::LocalSystem(LocalSystemDoc {
        field: ls.field().to_string(),
        rank: ls.rank(),
        base: base_doc(base),
        transports: base
            .edges()
            .iter()
            .zip(ls.edge_transports())
            .filter(|(_, m)| **m != id)
            .map(|(e, m)| TransportDoc {
                edge: e.id.clone(),
                entries: matrix_entries(m),
            })
            .collect(),
    })
}
