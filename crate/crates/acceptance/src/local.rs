//! Local systems on small presentations: wedges of circles (optionally
//! subdivided, so that base points can move) and tori (optionally with a
//! whisker). The checks compare the library's transports against dense
//! products of the edge matrices.

use fibseq::localsys::{
    extend_subsystem, BaseGraph, LocalSubsystem, LocalSystem, Path, Step, Surjectivity,
    DEFAULT_SEARCH_DEPTH,
};
use fibseq::error::LocalSystemError;
use fibseq::Field;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::checks::Check;
use crate::*;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

pub struct Presentation {
    pub graph: BaseGraph,
    pub torus: bool,
}

/// A wedge of `1..=3` circles, each split into `1..=3` edges.
pub fn wedge(rng: &mut ChaCha8Rng) -> Presentation {
    let mut vertices = vec![s("o")];
    let mut edges = Vec::new();
    for c in 0..rng.gen_range(1..=3) {
        let pieces = rng.gen_range(1..=3);
        let mut at = s("o");
        for k in 0..pieces {
            let next = if k + 1 == pieces {
                s("o")
            } else {
                let v = format!("v{c}_{k}");
                vertices.push(v.clone());
                v
            };
            edges.push((format!("e{c}_{k}"), at, next.clone()));
            at = next;
        }
    }
    Presentation {
        graph: BaseGraph::new(vertices, edges, &[]).unwrap(),
        torus: false,
    }
}

/// The one-vertex torus, sometimes with an extra edge `t` to a second vertex.
pub fn torus(rng: &mut ChaCha8Rng) -> Presentation {
    let mut vertices = vec![s("x")];
    let mut edges = vec![(s("a"), s("x"), s("x")), (s("b"), s("x"), s("x"))];
    if rng.gen_bool(0.5) {
        vertices.push(s("y"));
        edges.push((s("t"), s("x"), s("y")));
    }
    Presentation {
        graph: BaseGraph::new(vertices, edges, &[s("a b a^-1 b^-1")]).unwrap(),
        torus: true,
    }
}

pub fn presentation(rng: &mut ChaCha8Rng) -> Presentation {
    if rng.gen_bool(0.5) {
        wedge(rng)
    } else {
        torus(rng)
    }
}

/// Edge matrices in oracle form. On a torus `b` is a scalar multiple of a
/// power of `a`, so the relation holds.
pub fn edge_matrices(rng: &mut ChaCha8Rng, field: Field, p: &Presentation, rank: usize) -> Vec<Vec<Vec<V>>> {
    let o = Oracle::of(field);
    let mut out: Vec<Vec<Vec<V>>> = p.graph.edges().iter().map(|_| random_invertible(rng, field, rank)).collect();
    if p.torus {
        let a = out[0].clone();
        let c = match field {
            Field::Prime(q) => o.int(rng.gen_range(1..q as i64)),
            Field::Rationals => o.int(*[1, -1, 2].choose(rng).unwrap()),
        };
        let power = matrix_power(&o, &a, rng.gen_range(0..3));
        out[1] = power.iter().map(|row| row.iter().map(|x| o.mul(x, &c)).collect()).collect();
    }
    out
}

pub fn local_system(field: Field, p: &Presentation, rank: usize, edges: &[Vec<Vec<V>>]) -> Result<LocalSystem, LocalSystemError> {
    LocalSystem::new(p.graph.clone(), field, rank, edges.iter().map(|m| to_sparse(field, m)).collect())
}

/// A random edge walk of `0..len` steps from `start`.
pub fn walk(rng: &mut ChaCha8Rng, g: &BaseGraph, start: usize, len: usize) -> Path {
    let mut steps = Vec::new();
    let mut at = start;
    for _ in 0..rng.gen_range(0..len) {
        let options: Vec<Step> = g
            .edges()
            .iter()
            .enumerate()
            .flat_map(|(i, e)| {
                let mut v = Vec::new();
                if e.from == at {
                    v.push(Step::forward(i));
                }
                if e.to == at {
                    v.push(Step::backward(i));
                }
                v
            })
            .collect();
        let s = *options.choose(rng).unwrap();
        let e = &g.edges()[s.edge];
        at = if s.inverse { e.from } else { e.to };
        steps.push(s);
    }
    g.path(start, steps).unwrap()
}

/// Product of the edge matrices along `path`, later steps on the left.
pub fn oracle_transport(o: &Oracle, edges: &[Vec<Vec<V>>], path: &Path) -> Vec<Vec<V>> {
    let n = edges.first().map_or(0, Vec::len);
    let mut m = o.identity(n);
    for s in path.steps() {
        let t = if s.inverse {
            o.inverse(&edges[s.edge])
        } else {
            edges[s.edge].clone()
        };
        m = o.matmul(&t, &m, n, n);
    }
    m
}

fn setup(rng: &mut ChaCha8Rng, field: Field) -> (Presentation, Vec<Vec<Vec<V>>>, LocalSystem) {
    let p = presentation(rng);
    let rank = rng.gen_range(1..=3);
    let edges = edge_matrices(rng, field, &p, rank);
    let ls = local_system(field, &p, rank, &edges).expect("relations hold by construction");
    (p, edges, ls)
}

fn vertex(rng: &mut ChaCha8Rng, g: &BaseGraph) -> usize {
    rng.gen_range(0..g.vertices().len())
}

/// Transport along a concatenation is the reversed product, inverses go to
/// inverses and constant paths to the identity.
pub fn groupoid_laws(rng: &mut ChaCha8Rng, field: Field) -> Check {
    let o = Oracle::of(field);
    let (p, edges, ls) = setup(rng, field);
    let g = &p.graph;
    let n = ls.rank();
    let start = vertex(rng, g);
    let alpha = walk(rng, g, start, 8);
    let beta = walk(rng, g, alpha.end(), 8);
    let fa = oracle_transport(&o, &edges, &alpha);
    let fb = oracle_transport(&o, &edges, &beta);
    let both = ls.transport(&alpha.then(&beta).unwrap()).unwrap();
    ensure!(
        both == to_sparse(field, &o.matmul(&fb, &fa, n, n)),
        "transport of {} is not the product",
        g.describe(&alpha.then(&beta).unwrap())
    );
    ensure!(ls.transport(&alpha).unwrap() == to_sparse(field, &fa), "transport of {} is off", g.describe(&alpha));
    ensure!(
        ls.transport(&alpha.inverse()).unwrap() == to_sparse(field, &o.inverse(&fa)),
        "reversing {} does not invert",
        g.describe(&alpha)
    );
    let v = vertex(rng, g);
    ensure!(
        ls.transport(&g.constant(v)).unwrap() == fibseq::SparseMatrix::identity(field, n),
        "constant path is not the identity"
    );
    Ok(())
}

/// Inserting backtracks or conjugated relations leaves transport unchanged;
/// on the torus, non-commuting `a`, `b` are refused.
pub fn homotopy_invariance(rng: &mut ChaCha8Rng, field: Field) -> Check {
    let (p, _, ls) = setup(rng, field);
    let g = &p.graph;
    let start = vertex(rng, g);
    let path = walk(rng, g, start, 8);
    let mut steps = path.steps().to_vec();
    for _ in 0..rng.gen_range(1..4) {
        let cut = rng.gen_range(0..=steps.len());
        let at = g.path(path.start(), steps[..cut].to_vec()).unwrap().end();
        let insert: Vec<Step> = if !g.relations().is_empty() && rng.gen_bool(0.5) {
            let r = &g.relations()[0];
            let r = if rng.gen_bool(0.5) { r.clone() } else { r.inverse() };
            let tree = g.spanning_tree(r.start()).unwrap();
            let tau = g.tree_path(&tree, at);
            let loop_ = tau.inverse().then(&r).unwrap().then(&tau).unwrap();
            loop_.steps().to_vec()
        } else {
            let there = walk(rng, g, at, 4);
            there.then(&there.inverse()).unwrap().steps().to_vec()
        };
        steps.splice(cut..cut, insert);
    }
    let longer = g.path(path.start(), steps).unwrap();
    ensure!(
        ls.transport(&longer).unwrap() == ls.transport(&path).unwrap(),
        "{} and {} are homotopic but transport differently",
        g.describe(&path),
        g.describe(&longer)
    );
    ensure!(longer.reduced().end() == path.end(), "reduction moved an endpoint");

    let q = torus(rng);
    let rank = rng.gen_range(1..=3);
    let o = Oracle::of(field);
    let mut edges = edge_matrices(rng, field, &q, rank);
    edges[1] = random_invertible(rng, field, rank);
    let commute = o.matmul(&edges[0], &edges[1], rank, rank) == o.matmul(&edges[1], &edges[0], rank, rank);
    match local_system(field, &q, rank, &edges) {
        Ok(_) => ensure!(commute, "non-commuting torus transports were accepted"),
        Err(LocalSystemError::HomotopyViolated { .. }) => ensure!(!commute, "commuting torus transports were refused"),
        Err(e) => return Err(format!("unexpected error {e}")),
    }
    Ok(())
}

/// Moving the base point along `σ` conjugates the monodromy:
/// `Φ_{σ⁻¹γσ} Φ_σ = Φ_σ Φ_γ`.
pub fn base_point_conjugacy(rng: &mut ChaCha8Rng, field: Field) -> Check {
    let o = Oracle::of(field);
    let (p, edges, ls) = setup(rng, field);
    let g = &p.graph;
    let n = ls.rank();
    let v = vertex(rng, g);
    let sigma = walk(rng, g, v, 8);
    let fs = oracle_transport(&o, &edges, &sigma);
    let mono = ls.monodromy(v).unwrap();
    let tree = g.spanning_tree(v).unwrap();
    let extra = walk(rng, g, v, 8);
    let extra = extra.then(&g.tree_path(&tree, extra.end()).inverse()).unwrap();
    let loops: Vec<Path> = mono.generators.iter().cloned().chain([extra]).collect();
    for gamma in &loops {
        let moved = sigma.inverse().then(gamma).unwrap().then(&sigma).unwrap();
        let lhs = ls.transport(&moved).unwrap().mul(&to_sparse(field, &fs)).unwrap();
        let rhs = to_sparse(field, &o.matmul(&fs, &oracle_transport(&o, &edges, gamma), n, n));
        ensure!(lhs == rhs, "moving {} along {} is not a conjugation", g.describe(gamma), g.describe(&sigma));
    }
    let w = sigma.end();
    let there = ls.monodromy(w).unwrap();
    ensure!(
        there.generators.len() == mono.generators.len(),
        "free rank depends on the base point"
    );
    Ok(())
}

/// Nielsen moves on a list of loops at one vertex; the span is unchanged.
fn nielsen(rng: &mut ChaCha8Rng, loops: &mut [Path]) {
    if loops.len() < 2 {
        if let Some(l) = loops.first_mut() {
            if rng.gen_bool(0.5) {
                *l = l.inverse();
            }
        }
        return;
    }
    for _ in 0..rng.gen_range(0..4) {
        let i = rng.gen_range(0..loops.len());
        let j = (i + rng.gen_range(1..loops.len())) % loops.len();
        let other = if rng.gen_bool(0.5) { loops[j].clone() } else { loops[j].inverse() };
        loops[i] = if rng.gen_bool(0.5) {
            loops[i].then(&other).unwrap().reduced()
        } else {
            other.then(&loops[i]).unwrap().reduced()
        };
    }
    loops.shuffle(rng);
}

/// A subsystem whose paths generate the fundamental group extends, and the
/// extension is forced; one with an index-two subgroup does not extend.
pub fn unique_extension(rng: &mut ChaCha8Rng, field: Field) -> Check {
    let (p, _, ls) = setup(rng, field);
    let g = &p.graph;
    let tree = g.spanning_tree(0).unwrap();
    let mut loops = g.generator_loops(&tree);
    nielsen(rng, &mut loops);

    // whole carrier, tree edges included: every edge is pinned down
    let mut paths = loops.clone();
    for (i, e) in g.edges().iter().enumerate() {
        if !tree.generator_edges().contains(&i) {
            paths.push(g.path(e.from, vec![Step::forward(i)]).unwrap());
        }
    }
    let sub = LocalSubsystem::restricted(&ls, g.vertices(), paths).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    ensure!(report.surjective == Surjectivity::Surjective, "generating paths judged {:?}", report.surjective);
    let ext = report.extension.ok_or("no extension despite surjectivity")?;
    ensure!(ext.edge_transports() == ls.edge_transports(), "extension differs from the system it came from");

    // only the root: the monodromy there is pinned down
    let sub = LocalSubsystem::restricted(&ls, &[g.vertices()[0].clone()], loops.clone()).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    ensure!(report.surjective == Surjectivity::Surjective, "generating loops judged {:?}", report.surjective);
    let ext = report.extension.ok_or("no extension despite surjectivity")?;
    let probe = walk(rng, g, 0, 10);
    let probe = probe.then(&g.tree_path(&tree, probe.end()).inverse()).unwrap();
    ensure!(
        ext.transport(&probe).unwrap() == ls.transport(&probe).unwrap(),
        "extension disagrees on the loop {}",
        g.describe(&probe)
    );

    // square the first free generator: the subgroup has index two
    let mut thin = g.generator_loops(&tree);
    thin[0] = thin[0].then(&thin[0]).unwrap();
    let sub = LocalSubsystem::restricted(&ls, &[g.vertices()[0].clone()], thin).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    ensure!(
        report.surjective == Surjectivity::NotSurjective,
        "index-two subgroup judged {:?}",
        report.surjective
    );
    ensure!(report.extension.is_none(), "a non-generating subsystem was extended");
    Ok(())
}
