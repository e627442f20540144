use std::collections::{BTreeMap, HashSet};

use crate::complex::{ChainMap, CochainComplex, GradedBasis, Generator};
use crate::error::{LocalSystemError, MorseError};
use crate::exact::SparseMatrix;
use crate::localsys::{LocalSystem, Path, Step};
use crate::specseq::SplitFilteredComplex;

use super::{blocks_from_entries, morse_complex, MorseData};

/// A block `∂_r` from the fibers over `from` to the fibers over `to`, with
/// `r = ind(to) − ind(from) ≥ 2`. `blocks[j]` maps fiber degree `j` to
/// fiber degree `j + 1 − r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub from: usize,
    pub to: usize,
    pub blocks: BTreeMap<i64, SparseMatrix>,
}

/// Morse data on the base, a finite fiber complex, and the action of the
/// base edges on it by chain isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationData {
    base: MorseData,
    fiber: CochainComplex,
    action: Vec<ChainMap>,
    corrections: Vec<Correction>,
    /// One chain-level local system per fiber degree.
    degree_systems: BTreeMap<i64, LocalSystem>,
    shift_n: i64,
    shift_k: i64,
}

type CorrectionSpec = (String, String, BTreeMap<i64, SparseMatrix>);

impl FibrationData {
    /// Edges missing from `action` act by the identity.
    pub fn new(
        base: MorseData,
        fiber: CochainComplex,
        action: Vec<(String, BTreeMap<i64, SparseMatrix>)>,
        corrections: Vec<CorrectionSpec>,
    ) -> Result<Self, MorseError> {
        let graph = base.base();
        let mut maps: Vec<Option<ChainMap>> = vec![None; graph.edges().len()];
        for (edge, blocks) in action {
            let e = graph.edge(&edge)?;
            if maps[e].is_some() {
                return Err(MorseError::DuplicateId(edge));
            }
            let bad = || MorseError::BadFiberAction(edge.clone());
            let map = ChainMap::new(fiber.clone(), fiber.clone(), blocks).map_err(|_| bad())?;
            if fiber.degrees().into_iter().any(|k| map.block(k).inverse().is_none()) {
                return Err(bad());
            }
            maps[e] = Some(map);
        }
        let action: Vec<ChainMap> = maps
            .into_iter()
            .map(|m| m.unwrap_or_else(|| ChainMap::identity(&fiber)))
            .collect();

        let mut cs = Vec::with_capacity(corrections.len());
        for (from, to, blocks) in corrections {
            let (x, y) = (base.point(&from)?, base.point(&to)?);
            let r = base.points()[y].index - base.points()[x].index;
            let bad = || MorseError::BadCorrection {
                from: from.clone(),
                to: to.clone(),
            };
            if r < 2 {
                return Err(bad());
            }
            for (j, m) in &blocks {
                if m.field() != fiber.field() || m.cols() != fiber.dim(*j) || m.rows() != fiber.dim(j + 1 - r) {
                    return Err(bad());
                }
            }
            cs.push(Correction { from: x, to: y, blocks });
        }

        let mut degree_systems = BTreeMap::new();
        for k in fiber.degrees() {
            let transports = action.iter().map(|m| m.block(k).into_owned()).collect();
            let ls = LocalSystem::raw(graph.clone(), fiber.field(), fiber.dim(k), transports)?;
            degree_systems.insert(k, ls);
        }
        Ok(FibrationData {
            base,
            fiber,
            action,
            corrections: cs,
            degree_systems,
            shift_n: 0,
            shift_k: 0,
        })
    }

    /// Display shifts `(n, k)`: table entries are reported at `(n + p, k + q)`.
    pub fn with_shifts(mut self, shift_n: i64, shift_k: i64) -> Self {
        self.shift_n = shift_n;
        self.shift_k = shift_k;
        self
    }

    pub fn base(&self) -> &MorseData {
        &self.base
    }

    pub fn fiber(&self) -> &CochainComplex {
        &self.fiber
    }

    /// Chain isomorphism of the fiber attached to each base edge.
    pub fn action(&self) -> &[ChainMap] {
        &self.action
    }

    pub fn corrections(&self) -> &[Correction] {
        &self.corrections
    }

    pub fn shifts(&self) -> (i64, i64) {
        (self.shift_n, self.shift_k)
    }

    /// Chain-level transport along `path`, degree by degree.
    pub fn chain_transport(&self, path: &Path) -> Result<BTreeMap<i64, SparseMatrix>, MorseError> {
        let mut out = BTreeMap::new();
        for (k, ls) in &self.degree_systems {
            out.insert(*k, ls.transport(path)?);
        }
        Ok(out)
    }

    fn transport_map(&self, path: &Path) -> Result<ChainMap, MorseError> {
        let blocks = self.chain_transport(path)?;
        Ok(ChainMap::new(self.fiber.clone(), self.fiber.clone(), blocks)?)
    }
}

/// The total complex `⊕_x x ⊗ F` filtered by Morse index:
/// `∂_0 = (−1)^{ind x} ∂_F`, `∂_1(x ⊗ α) = Σ_γ n_γ y ⊗ Φ_γ(α)`, and the
/// corrections on top.
pub fn assemble_fibration(fd: &FibrationData) -> Result<SplitFilteredComplex, MorseError> {
    let md = &fd.base;
    let fiber = &fd.fiber;
    let f = fiber.field();
    let fb = fiber.basis();
    let n = fb.len();
    let mut gens = Vec::with_capacity(md.points().len() * n);
    let mut blocks = Vec::with_capacity(gens.capacity());
    for x in md.points() {
        for g in fb.generators() {
            gens.push(Generator::new(format!("{}*{}", x.id, g.id), x.index + g.degree));
            blocks.push(x.index as usize);
        }
    }
    let mut entries = Vec::new();
    for (i, x) in md.points().iter().enumerate() {
        let sign = f.sign(x.index);
        for (s, t, a) in fiber.entries() {
            entries.push((i * n + s, i * n + t, f.mul(&sign, &a)));
        }
    }
    let mut push = |from: usize, to: usize, src: i64, tgt: i64, coefficient: &crate::field::Scalar, m: &SparseMatrix| {
        for (r, c, a) in m.triplets() {
            let s = fb.in_degree(src)[c];
            let t = fb.in_degree(tgt)[r];
            entries.push((from * n + s, to * n + t, f.mul(coefficient, &a)));
        }
    };
    for t in md.differential_trajectories() {
        let sign = f.from_i64(t.sign);
        for (k, m) in fd.chain_transport(&t.word)? {
            push(t.from, t.to, k, k, &sign, &m);
        }
    }
    for c in &fd.corrections {
        let r = md.points()[c.to].index - md.points()[c.from].index;
        for (j, m) in &c.blocks {
            push(c.from, c.to, *j, j + 1 - r, &f.one(), m);
        }
    }

    let basis = GradedBasis::new(gens)?;
    let d = blocks_from_entries(f, &basis, entries)?;
    let mut lowest: Option<(i64, i64)> = None;
    for (k, m) in &d {
        let Some(next) = d.get(&(k + 1)) else {
            continue;
        };
        for (_, j, _) in next.mul(m)?.triplets() {
            let p = blocks[basis.in_degree(*k)[j]] as i64;
            let bideg = (p, k - p);
            if lowest.is_none_or(|l| bideg < l) {
                lowest = Some(bideg);
            }
        }
    }
    if let Some((p, q)) = lowest {
        return Err(MorseError::AssembledNotDifferential { p, q });
    }
    let complex = CochainComplex::new(f, basis, d)?;
    Ok(SplitFilteredComplex::with_length(
        complex,
        blocks,
        md.max_index().max(0) as usize,
    )?)
}

/// `E_2^{p,q} = H^p(base; H^q(F))` computed from the Morse complex of the
/// cohomology-level local systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Table {
    /// Nonzero dimensions keyed by unshifted `(p, q)`.
    pub dims: BTreeMap<(i64, i64), usize>,
    pub shift_n: i64,
    pub shift_k: i64,
    /// The local system `H^q(F)` on the base, per fiber degree `q`.
    pub systems: BTreeMap<i64, LocalSystem>,
}

impl E2Table {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Dimensions keyed by `(n + p, k + q)`.
    pub fn shifted(&self) -> BTreeMap<(i64, i64), usize> {
        self.dims
            .iter()
            .map(|((p, q), d)| ((p + self.shift_n, q + self.shift_k), *d))
            .collect()
    }
}

/// Builds the table independently of the tower and checks it against the
/// dimensions of page 2.
pub fn e2_table(fd: &FibrationData) -> Result<E2Table, MorseError> {
    let f = fd.fiber.field();
    let graph = fd.base.base();
    let h = fd.fiber.cohomology();
    let induced: Vec<BTreeMap<i64, SparseMatrix>> = fd.action.iter().map(|m| m.on_cohomology_with(&h, &h)).collect();
    let mut dims = BTreeMap::new();
    let mut systems = BTreeMap::new();
    for q in fd.fiber.degrees() {
        let rank = h.dim(q);
        let transports = induced
            .iter()
            .map(|m| m.get(&q).cloned().unwrap_or_else(|| SparseMatrix::identity(f, rank)))
            .collect();
        let ls = LocalSystem::new(graph.clone(), f, rank, transports).map_err(|e| match e {
            LocalSystemError::HomotopyViolated { word } => MorseError::CohomologyMonodromy { word },
            other => other.into(),
        })?;
        for (p, d) in morse_complex(&fd.base, &ls)?.cohomology().dims() {
            if d > 0 {
                dims.insert((p, q), d);
            }
        }
        systems.insert(q, ls);
    }

    let page = assemble_fibration(fd)?.spectral_sequence().page(2)?;
    let mut keys: Vec<(i64, i64)> = dims.keys().copied().collect();
    keys.extend(page.dims().keys().copied());
    keys.sort_unstable();
    keys.dedup();
    for (p, q) in keys {
        let table = dims.get(&(p, q)).copied().unwrap_or(0);
        if table != page.dim(p, q) {
            return Err(MorseError::E2Mismatch {
                p,
                q,
                table,
                page: page.dim(p, q),
            });
        }
    }
    Ok(E2Table {
        dims,
        shift_n: fd.shift_n,
        shift_k: fd.shift_k,
        systems,
    })
}

/// Outcome of comparing `Φ_γ` with `Φ_v ∘ Φ_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeReport {
    pub cohomology_equal: bool,
    pub chain_equal: bool,
    /// Fiber degrees where the chain-level transports differ.
    pub chain_discrepancy: Vec<i64>,
}

impl ComposeReport {
    pub fn holds(&self) -> bool {
        self.cohomology_equal
    }
}

/// For trajectories `u: x -> y`, `v: y -> z` and `γ: x -> z` whose words are
/// declared homotopic (`γ ≃ u·v`), compares the transports on the fiber.
pub fn transport_compose_check(fd: &FibrationData, u: &str, v: &str, gamma: &str) -> Result<ComposeReport, MorseError> {
    let md = &fd.base;
    let graph = md.base();
    let (tu, tv, tg) = (
        &md.trajectories()[md.trajectory(u)?],
        &md.trajectories()[md.trajectory(v)?],
        &md.trajectories()[md.trajectory(gamma)?],
    );
    if tu.to != tv.from || tg.from != tu.from || tg.to != tv.to {
        return Err(MorseError::NotComposable(format!("{u}, {v} and {gamma}")));
    }
    let composite = tu.word.then(&tv.word)?;
    let around = composite.then(&tg.word.inverse())?;
    if !declared_trivial(graph.relations(), &around) {
        return Err(MorseError::NotHomotopic {
            gamma: gamma.to_string(),
        });
    }

    let direct = fd.chain_transport(&tg.word)?;
    let via = fd.chain_transport(&composite)?;
    let chain_discrepancy: Vec<i64> = direct
        .iter()
        .filter(|(k, m)| via.get(k) != Some(m))
        .map(|(k, _)| *k)
        .collect();
    let h = fd.fiber.cohomology();
    let hd = fd.transport_map(&tg.word)?.on_cohomology_with(&h, &h);
    let hv = fd.transport_map(&composite)?.on_cohomology_with(&h, &h);
    Ok(ComposeReport {
        cohomology_equal: hd == hv,
        chain_equal: chain_discrepancy.is_empty(),
        chain_discrepancy,
    })
}

fn cyclically_reduced(path: &Path) -> Vec<Step> {
    let mut steps = path.reduced().steps().to_vec();
    while steps.len() >= 2 && steps[0] == steps[steps.len() - 1].flipped() {
        steps.pop();
        steps.remove(0);
    }
    steps
}

/// True if `loop_` freely reduces to nothing or, after cyclic reduction,
/// is a rotation of a relation or of its inverse.
fn declared_trivial(relations: &[Path], loop_: &Path) -> bool {
    let w = cyclically_reduced(loop_);
    if w.is_empty() {
        return true;
    }
    let rotations = |r: &[Step]| -> HashSet<Vec<Step>> {
        (0..r.len()).map(|i| [&r[i..], &r[..i]].concat()).collect()
    };
    relations.iter().any(|r| {
        let fwd = cyclically_reduced(r);
        let back = cyclically_reduced(&r.inverse());
        fwd.len() == w.len() && (rotations(&fwd).contains(&w) || rotations(&back).contains(&w))
    })
}
