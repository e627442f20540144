use std::collections::VecDeque;

use crate::error::LocalSystemError;
use crate::exact::SparseMatrix;
use crate::field::Field;

use super::fold::{Conflict, FoldGraph};
use super::system::evaluate;
use super::{BaseGraph, Letter, LocalSystem, Path};

/// Upper bound on the folded graph before the surjectivity search gives up.
const MAX_FOLD_VERTICES: usize = 20_000;

/// Transports given on a carrier `C` of vertices and a set of generating
/// paths between them; the paths `P` of the subsystem are everything these
/// generate under catenation and inversion, plus constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSubsystem {
    base: BaseGraph,
    field: Field,
    rank: usize,
    carrier: Vec<usize>,
    generators: Vec<(Path, SparseMatrix)>,
}

impl LocalSubsystem {
    pub fn new(
        base: BaseGraph,
        field: Field,
        rank: usize,
        carrier: &[String],
        generators: Vec<(Path, SparseMatrix)>,
    ) -> Result<Self, LocalSystemError> {
        let mut c = carrier.iter().map(|v| base.vertex(v)).collect::<Result<Vec<_>, _>>()?;
        c.sort_unstable();
        c.dedup();
        if c.is_empty() {
            return Err(LocalSystemError::EmptyCarrier);
        }
        for (path, m) in &generators {
            let checked = base.path(path.start(), path.steps().to_vec())?;
            if c.binary_search(&checked.start()).is_err() || c.binary_search(&checked.end()).is_err() {
                return Err(LocalSystemError::OutsideCarrier(base.describe(path)));
            }
            if m.field() != field {
                return Err(LocalSystemError::FieldMismatch);
            }
            if m.rows() != rank || m.cols() != rank || m.inverse().is_none() {
                return Err(LocalSystemError::BadTransport(base.describe(path)));
            }
        }
        Ok(LocalSubsystem {
            base,
            field,
            rank,
            carrier: c,
            generators,
        })
    }

    /// The subsystem of `ls` on `carrier` generated by `paths`.
    pub fn restricted(ls: &LocalSystem, carrier: &[String], paths: Vec<Path>) -> Result<Self, LocalSystemError> {
        let generators = paths
            .into_iter()
            .map(|p| ls.transport(&p).map(|m| (p, m)))
            .collect::<Result<_, _>>()?;
        LocalSubsystem::new(ls.base().clone(), ls.field(), ls.rank(), carrier, generators)
    }

    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn generators(&self) -> &[(Path, SparseMatrix)] {
        &self.generators
    }

    /// For every carrier vertex `c`, a path `σ_c` from `x0` inside the
    /// subsystem together with its transport.
    fn support_tree(&self, x0: usize) -> Result<Vec<Option<(Path, SparseMatrix)>>, LocalSystemError> {
        let n = self.base.vertices().len();
        let mut reach: Vec<Option<(Path, SparseMatrix)>> = vec![None; n];
        reach[x0] = Some((self.base.constant(x0), SparseMatrix::identity(self.field, self.rank)));
        let mut queue = VecDeque::from([x0]);
        while let Some(v) = queue.pop_front() {
            let (to_v, phi_v) = reach[v].clone().expect("queued vertices are reached");
            for (path, m) in &self.generators {
                let options = [
                    (path.start(), path.clone(), m.clone()),
                    (path.end(), path.inverse(), m.inverse().expect("checked invertible")),
                ];
                for (from, step, phi) in options {
                    let w = step.end();
                    if from == v && reach[w].is_none() {
                        let p = to_v.then(&step)?;
                        reach[w] = Some((p, phi.mul(&phi_v)?));
                        queue.push_back(w);
                    }
                }
            }
        }
        if self.carrier.iter().any(|&c| reach[c].is_none()) {
            return Err(LocalSystemError::DisconnectedSupport);
        }
        Ok(reach)
    }
}

/// Outcome of the surjectivity test for `π_1(S, x0) -> π_1(B, x0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surjectivity {
    Surjective,
    NotSurjective,
    /// The bounded search neither found a proof nor a certificate.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyReport {
    pub base_point: usize,
    /// Loops `σ_c · π · σ_d⁻¹` at the base point, one per generating path.
    pub subsystem_loops: Vec<Path>,
    /// Their transports in the subsystem.
    pub subsystem_images: Vec<SparseMatrix>,
    /// Free generators of the base graph group at the base point.
    pub base_generators: Vec<Path>,
    pub surjective: Surjectivity,
    /// The unique local system on the base restricting to the subsystem,
    /// present exactly when `surjective` is `Surjective`.
    pub extension: Option<LocalSystem>,
}

/// [`extend_subsystem_at`] at the first carrier vertex.
pub fn extend_subsystem(sub: &LocalSubsystem, max_depth: usize) -> Result<MonodromyReport, LocalSystemError> {
    extend_subsystem_at(sub, sub.carrier[0], max_depth)
}

/// Decides whether the loops of the subsystem generate the fundamental group
/// of the base and, if they do, builds the extension to the whole base.
///
/// `max_depth` bounds the number of rounds in which the relations are
/// attached to the folded subgroup graph.
pub fn extend_subsystem_at(
    sub: &LocalSubsystem,
    x0: usize,
    max_depth: usize,
) -> Result<MonodromyReport, LocalSystemError> {
    let base = &sub.base;
    if sub.carrier.binary_search(&x0).is_err() {
        return Err(LocalSystemError::OutsideCarrier(base.describe(&base.constant(x0))));
    }
    let sigma = sub.support_tree(x0)?;
    let tree = base.spanning_tree(x0)?;
    let base_generators = base.generator_loops(&tree);
    let m = base_generators.len();

    let mut subsystem_loops = Vec::new();
    let mut subsystem_images = Vec::new();
    let mut words = Vec::new();
    for (path, phi) in &sub.generators {
        let (to_c, phi_c) = sigma[path.start()].as_ref().expect("carrier reached");
        let (to_d, phi_d) = sigma[path.end()].as_ref().expect("carrier reached");
        let lp = to_c.then(path)?.then(&to_d.inverse())?.reduced();
        let image = phi_d.inverse().expect("invertible").mul(&phi.mul(phi_c)?)?;
        words.push(base.rewrite(&tree, &lp));
        subsystem_loops.push(lp);
        subsystem_images.push(image);
    }
    let relators: Vec<Vec<Letter>> = base
        .relations()
        .iter()
        .map(|r| base.rewrite(&tree, r))
        .filter(|w| !w.is_empty())
        .collect();

    let violated = || LocalSystemError::HomotopyViolated {
        word: "a loop of the subsystem".into(),
    };
    let mut surjective = if abelian_certificate(m, &relators, &words) {
        Surjectivity::NotSurjective
    } else {
        Surjectivity::Unknown
    };
    let mut images = None;
    if surjective == Surjectivity::Unknown {
        let mut g = FoldGraph::new(sub.field, sub.rank, m);
        let run = |g: &mut FoldGraph| -> Result<Surjectivity, Conflict> {
            for (w, img) in words.iter().zip(&subsystem_images) {
                g.add_petal(0, w, img)?;
            }
            for r in &relators {
                g.add_petal(0, r, &SparseMatrix::identity(sub.field, sub.rank))?;
            }
            g.fold()?;
            for round in 0..=max_depth {
                if g.bouquet().is_some() {
                    return Ok(Surjectivity::Surjective);
                }
                // in a free group the folded graph is the subgroup's core graph
                if relators.is_empty() || g.is_complete(&relators) {
                    return Ok(Surjectivity::NotSurjective);
                }
                if round == max_depth || g.vertex_count() > MAX_FOLD_VERTICES {
                    break;
                }
                g.attach_relators(&relators)?;
            }
            Ok(Surjectivity::Unknown)
        };
        surjective = run(&mut g).map_err(|_| violated())?;
        if surjective == Surjectivity::Surjective {
            images = g.bouquet();
        }
    }

    let extension = match images {
        Some(rho) => Some(build_extension(sub, &tree, &sigma, &rho)?),
        None => None,
    };
    Ok(MonodromyReport {
        base_point: x0,
        subsystem_loops,
        subsystem_images,
        base_generators,
        surjective,
        extension,
    })
}

/// True when the subgroup generated by `words` visibly misses part of the
/// group: its image in the abelianization tensored with `Q` or a small prime
/// field is a proper subspace.
fn abelian_certificate(m: usize, relators: &[Vec<Letter>], words: &[Vec<Letter>]) -> bool {
    let exponents = |w: &Vec<Letter>| {
        let mut v = vec![0i64; m];
        for l in w {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v
    };
    let rows: Vec<Vec<i64>> = relators.iter().chain(words).map(exponents).collect();
    [Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(5), Field::Prime(7)]
        .into_iter()
        .any(|f| {
            let triplets = rows
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &a)| (j, i, f.from_i64(a))));
            let mat = SparseMatrix::from_triplets(f, m, rows.len(), triplets).expect("in range");
            mat.rank() < m
        })
}

/// `Ψ_e = Ψ_b ρ(τ_a e τ_b⁻¹) Ψ_a⁻¹` with frames `Ψ_c = Φ_{σ_c} ρ(σ_c τ_c⁻¹)⁻¹` on
/// the carrier and the identity elsewhere.
fn build_extension(
    sub: &LocalSubsystem,
    tree: &super::SpanningTree,
    sigma: &[Option<(Path, SparseMatrix)>],
    rho: &[SparseMatrix],
) -> Result<LocalSystem, LocalSystemError> {
    let base = &sub.base;
    let (field, rank) = (sub.field, sub.rank);
    let rho_inv: Vec<SparseMatrix> = rho.iter().map(|r| r.inverse().expect("invertible")).collect();
    let loop_value = |p: &Path| evaluate(field, rank, rho, &rho_inv, &base.rewrite(tree, p));

    let n = base.vertices().len();
    let mut frames = Vec::with_capacity(n);
    for v in 0..n {
        let frame = match &sigma[v] {
            Some((to_v, phi)) => {
                let detour = to_v.then(&base.tree_path(tree, v).inverse())?;
                phi.mul(&loop_value(&detour).inverse().expect("invertible"))?
            }
            None => SparseMatrix::identity(field, rank),
        };
        frames.push(frame);
    }
    let mut transports = Vec::with_capacity(base.edges().len());
    for (e, edge) in base.edges().iter().enumerate() {
        let single = base.path(edge.from, vec![super::Step::forward(e)])?;
        let around = base
            .tree_path(tree, edge.from)
            .then(&single)?
            .then(&base.tree_path(tree, edge.to).inverse())?;
        let t = frames[edge.to]
            .mul(&loop_value(&around))?
            .mul(&frames[edge.from].inverse().expect("invertible"))?;
        transports.push(t);
    }
    let ext = LocalSystem::new(base.clone(), field, rank, transports)?;
    for (path, phi) in &sub.generators {
        if ext.transport(path)? != *phi {
            return Err(LocalSystemError::RestrictionMismatch {
                word: base.describe(path),
            });
        }
    }
    Ok(ext)
}
