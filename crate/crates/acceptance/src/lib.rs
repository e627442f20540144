//! Seeded random instances for the test suites, and a dense linear-algebra
//! oracle that shares no code with the library's elimination.

pub mod checks;
pub mod local;

use std::collections::BTreeMap;

use fibseq::complex::{CochainComplex, Generator, GradedBasis};
use fibseq::localsys::BaseGraph;
use fibseq::morse::{FibrationData, MorseData};
use fibseq::specseq::SplitFilteredComplex;
use fibseq::{Field, Scalar, SparseMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIELDS: [Field; 3] = [Field::Prime(2), Field::Prime(3), Field::Rationals];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(x: &str) -> String {
    x.to_string()
}

// ---------------------------------------------------------------------------
// oracle arithmetic

pub type V = BigRational;

#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    p: Option<u64>,
}

impl Oracle {
    pub fn of(field: Field) -> Self {
        match field {
            Field::Prime(p) => Oracle { p: Some(p) },
            Field::Rationals => Oracle { p: None },
        }
    }

    pub fn norm(&self, x: V) -> V {
        match self.p {
            None => x,
            Some(p) => {
                let p = BigInt::from(p);
                let num = ((x.numer() % &p) + &p) % &p;
                let den = ((x.denom() % &p) + &p) % &p;
                let inv = den.modpow(&(&p - 2u32), &p);
                V::from_integer((num * inv) % &p)
            }
        }
    }

    pub fn int(&self, a: i64) -> V {
        self.norm(V::from_integer(a.into()))
    }

    pub fn scalar(&self, a: &Scalar) -> V {
        match a {
            Scalar::Residue(r) => V::from_integer((*r).into()),
            Scalar::Fraction(q) => q.clone(),
        }
    }

    pub fn add(&self, a: &V, b: &V) -> V {
        self.norm(a + b)
    }

    pub fn mul(&self, a: &V, b: &V) -> V {
        self.norm(a * b)
    }

    pub fn inv(&self, a: &V) -> V {
        self.norm(a.recip())
    }

    pub fn dense(&self, m: &SparseMatrix) -> Vec<Vec<V>> {
        let mut out = vec![vec![V::zero(); m.cols()]; m.rows()];
        for (r, c, a) in m.triplets() {
            out[r][c] = self.scalar(&a);
        }
        out
    }

    /// `a * b` for `a` of shape `? x inner` and `b` of shape `inner x cols`;
    /// the shapes are explicit so that empty factors multiply correctly.
    pub fn matmul(&self, a: &[Vec<V>], b: &[Vec<V>], inner: usize, cols: usize) -> Vec<Vec<V>> {
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        (0..inner).fold(V::zero(), |acc, t| self.add(&acc, &self.mul(&row[t], &b[t][j])))
                    })
                    .collect()
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&self, m: &mut [Vec<V>]) -> Vec<usize> {
        let cols = m.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..cols {
            let Some(pr) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(row, pr);
            let inv = self.inv(&m[row][c]);
            for x in m[row].iter_mut() {
                *x = self.mul(x, &inv);
            }
            for r in 0..m.len() {
                if r != row && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for j in 0..cols {
                        let t = self.mul(&f, &m[row][j]);
                        m[r][j] = self.norm(&m[r][j] - t);
                    }
                }
            }
            pivots.push(c);
            row += 1;
            if row == m.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self, rows: &[Vec<V>]) -> usize {
        let mut m = rows.to_vec();
        self.rref(&mut m).len()
    }

    /// Basis of `{x : m x = 0}` for an `rows x cols` matrix.
    pub fn nullspace(&self, m: &[Vec<V>], cols: usize) -> Vec<Vec<V>> {
        let mut m = m.to_vec();
        let pivots = self.rref(&mut m);
        let mut out = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![V::zero(); cols];
            x[free] = V::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = self.norm(-m[r][free].clone());
            }
            out.push(x);
        }
        out
    }

    pub fn identity(&self, n: usize) -> Vec<Vec<V>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { V::one() } else { V::zero() }).collect()).collect()
    }

    pub fn inverse(&self, m: &[Vec<V>]) -> Vec<Vec<V>> {
        let n = m.len();
        let mut aug: Vec<Vec<V>> = m
            .iter()
            .zip(self.identity(n))
            .map(|(row, id)| row.iter().cloned().chain(id).collect())
            .collect();
        let pivots = self.rref(&mut aug);
        assert_eq!(pivots.len(), n, "singular matrix");
        aug.into_iter().map(|row| row[n..].to_vec()).collect()
    }
}

/// `dim H^k` for every degree, computed densely.
pub fn oracle_cohomology(c: &CochainComplex) -> BTreeMap<i64, usize> {
    let o = Oracle::of(c.field());
    let rank = |k: i64| o.rank(&o.dense(&c.d(k)));
    c.degrees()
        .into_iter()
        .map(|k| (k, c.dim(k) - rank(k) - rank(k - 1)))
        .collect()
}

/// Nonzero `dim E_r^{p,q}` from `E_r^p = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})`
/// with `Z_r^p = {x ∈ F_p : dx ∈ F_{p+r}}`.
pub fn oracle_page(sfc: &SplitFilteredComplex, r: usize) -> BTreeMap<(i64, i64), usize> {
    let c = sfc.complex();
    let o = Oracle::of(c.field());
    let r = r as i64;
    let block = |k: i64, j: usize| sfc.block_in_degree(k, j) as i64;
    let z = |r: i64, p: i64, k: i64| -> Vec<Vec<V>> {
        let n = c.dim(k);
        let cols: Vec<usize> = (0..n).filter(|&j| block(k, j) >= p).collect();
        let d = o.dense(&c.d(k));
        let rows: Vec<usize> = (0..c.dim(k + 1)).filter(|&i| block(k + 1, i) < p + r).collect();
        let sub: Vec<Vec<V>> = rows.iter().map(|&i| cols.iter().map(|&j| d[i][j].clone()).collect()).collect();
        let kernel = if rows.is_empty() {
            o.identity(cols.len())
        } else {
            o.nullspace(&sub, cols.len())
        };
        kernel
            .into_iter()
            .map(|x| {
                let mut full = vec![V::zero(); n];
                for (t, &j) in cols.iter().enumerate() {
                    full[j] = x[t].clone();
                }
                full
            })
            .collect()
    };
    let mut out = BTreeMap::new();
    for k in c.degrees() {
        for p in 0..=sfc.length() as i64 {
            let zr = z(r, p, k);
            if zr.is_empty() {
                continue;
            }
            let mut denom = z(r - 1, p + 1, k);
            let below = z(r - 1, p - r + 1, k - 1);
            if !below.is_empty() {
                let d = o.dense(&c.d(k - 1));
                for x in below {
                    denom.push(d.iter().map(|row| row.iter().zip(&x).fold(V::zero(), |a, (u, v)| o.add(&a, &o.mul(u, v)))).collect());
                }
            }
            let dim = o.rank(&zr) - if denom.is_empty() { 0 } else { o.rank(&denom) };
            if dim > 0 {
                out.insert((p, k - p), dim);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// random filtered complexes

/// Elementary pieces `a -> b` and lone cocycles, mixed by random
/// filtration-preserving changes of basis `e_i <- e_i + c e_j`
/// (`block j ≥ block i`, same degree), which keep `d² = 0`.
pub fn random_split(rng: &mut ChaCha8Rng, field: Field, max_gens: usize, max_len: usize) -> SplitFilteredComplex {
    let n = rng.gen_range(0..=max_len);
    let target = rng.gen_range(1..=max_gens);
    split_with(rng, field, target, n, target)
}

pub fn split_with(rng: &mut ChaCha8Rng, field: Field, count: usize, n: usize, ops: usize) -> SplitFilteredComplex {
    let modulus = match field {
        Field::Prime(p) => Some(p as i64),
        Field::Rationals => None,
    };
    let reduce = |x: i64| match modulus {
        Some(p) => x.rem_euclid(p),
        None => x,
    };
    let nonzero = |rng: &mut ChaCha8Rng| match modulus {
        Some(p) => rng.gen_range(1..p),
        None => *[1, -1, 2].choose(rng).unwrap(),
    };
    let mut gens: Vec<(i64, usize)> = Vec::new();
    let mut cols: Vec<BTreeMap<usize, i64>> = Vec::new();
    while gens.len() < count {
        if count - gens.len() >= 2 && rng.gen_bool(0.6) {
            let k = rng.gen_range(0..=2);
            let a = rng.gen_range(0..=n);
            let b = rng.gen_range(a..=n);
            let i = gens.len();
            gens.push((k, a));
            gens.push((k + 1, b));
            cols.push(BTreeMap::from([(i + 1, nonzero(rng))]));
            cols.push(BTreeMap::new());
        } else {
            gens.push((rng.gen_range(0..=3), rng.gen_range(0..=n)));
            cols.push(BTreeMap::new());
        }
    }
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        by_degree.entry(g.0).or_default().push(i);
    }
    let bound = 1 << 20;
    for _ in 0..ops {
        let i = rng.gen_range(0..gens.len());
        let peers: Vec<usize> = by_degree[&gens[i].0]
            .iter()
            .copied()
            .filter(|&j| j != i && gens[j].1 >= gens[i].1)
            .collect();
        let Some(&j) = peers.choose(rng) else { continue };
        let c = nonzero(rng);
        // column i += c column j, then row j -= c row i
        let col_j = cols[j].clone();
        let mut col_i = cols[i].clone();
        for (t, a) in col_j {
            let v = reduce(col_i.get(&t).copied().unwrap_or(0) + c * a);
            col_i.insert(t, v);
        }
        col_i.retain(|_, v| *v != 0);
        if col_i.values().any(|v| v.abs() > bound) {
            continue;
        }
        let mut next = cols.clone();
        next[i] = col_i;
        let mut overflow = false;
        for col in next.iter_mut() {
            if let Some(&a) = col.get(&i) {
                let v = reduce(col.get(&j).copied().unwrap_or(0) - c * a);
                overflow |= v.abs() > bound;
                col.insert(j, v);
                col.retain(|_, v| *v != 0);
            }
        }
        if !overflow {
            cols = next;
        }
    }
    // shuffle the generator order so pieces are not adjacent
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.shuffle(rng);
    let mut position = vec![0; gens.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let generators = order.iter().map(|&old| Generator::new(format!("g{old}"), gens[old].0)).collect();
    let entries: Vec<(usize, usize, Scalar)> = cols
        .iter()
        .enumerate()
        .flat_map(|(src, col)| col.iter().map(move |(t, a)| (src, *t, *a)))
        .map(|(src, t, a)| (position[src], position[t], field.from_i64(a)))
        .collect();
    let blocks = order.iter().map(|&old| gens[old].1).collect();
    let c = CochainComplex::from_entries(field, GradedBasis::new(generators).unwrap(), entries).unwrap();
    SplitFilteredComplex::with_length(c, blocks, n).unwrap()
}

// ---------------------------------------------------------------------------
// bases, fibers and fibrations

/// A Morse model of a base together with the loops that may carry
/// nontrivial monodromy and the untwisted incidence data for the oracle.
#[derive(Clone, Debug)]
pub struct Base {
    pub morse: MorseData,
    /// Edges whose transport may be chosen freely; all other edges act by
    /// the identity.
    pub free_edges: Vec<String>,
    /// The edges must carry commuting transports.
    pub commuting: bool,
    pub points: Vec<(String, i64)>,
    /// `(from, to, sign, edge of the one-letter word)`.
    pub trajectories: Vec<(String, String, i64, Option<String>)>,
}

pub fn circle_base() -> Base {
    let g = BaseGraph::new(vec![s("o")], vec![(s("e"), s("o"), s("o"))], &[]).unwrap();
    let traj = vec![(s("m"), s("M"), 1, None), (s("m"), s("M"), -1, Some(s("e")))];
    base_from(g, vec![(s("m"), 0, s("o")), (s("M"), 1, s("o"))], traj, vec![s("e")], false)
}

pub fn torus_base() -> Base {
    let g = BaseGraph::new(
        vec![s("o")],
        vec![(s("a"), s("o"), s("o")), (s("b"), s("o"), s("o"))],
        &[s("a b a^-1 b^-1")],
    )
    .unwrap();
    let points = vec![(s("v"), 0, s("o")), (s("x"), 1, s("o")), (s("y"), 1, s("o")), (s("c"), 2, s("o"))];
    let traj = vec![
        (s("v"), s("x"), 1, None),
        (s("v"), s("x"), -1, Some(s("a"))),
        (s("v"), s("y"), 1, None),
        (s("v"), s("y"), -1, Some(s("b"))),
        (s("x"), s("c"), 1, None),
        (s("x"), s("c"), -1, Some(s("b"))),
        (s("y"), s("c"), -1, None),
        (s("y"), s("c"), 1, Some(s("a"))),
    ];
    base_from(g, points, traj, vec![s("a"), s("b")], true)
}

pub fn sphere_base() -> Base {
    let g = BaseGraph::new(vec![s("o")], vec![], &[]).unwrap();
    base_from(g, vec![(s("s"), 0, s("o")), (s("N"), 2, s("o"))], vec![], vec![], false)
}

/// A connected graph with its cells as critical points: a vertex point of
/// index 0 per vertex and an edge point of index 1 at the head of each edge.
pub fn graph_base(rng: &mut ChaCha8Rng) -> Base {
    let nv = rng.gen_range(1..=4);
    let extra = rng.gen_range(1..=3);
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..nv {
        let j = rng.gen_range(0..i);
        let (a, b) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
        edges.push((format!("t{i}"), vertices[a].clone(), vertices[b].clone()));
    }
    let mut free = Vec::new();
    for i in 0..extra {
        let a = rng.gen_range(0..nv);
        let b = rng.gen_range(0..nv);
        edges.push((format!("e{i}"), vertices[a].clone(), vertices[b].clone()));
        free.push(format!("e{i}"));
    }
    let mut points: Vec<(String, i64, String)> = vertices.iter().map(|v| (v.to_uppercase(), 0, v.clone())).collect();
    let mut traj = Vec::new();
    for (id, from, to) in &edges {
        let cell = format!("E{id}");
        points.push((cell.clone(), 1, to.clone()));
        traj.push((from.to_uppercase(), cell.clone(), -1, Some(id.clone())));
        traj.push((to.to_uppercase(), cell, 1, None));
    }
    let g = BaseGraph::new(vertices, edges, &[]).unwrap();
    base_from(g, points, traj, free, false)
}

fn base_from(
    g: BaseGraph,
    points: Vec<(String, i64, String)>,
    traj: Vec<(String, String, i64, Option<String>)>,
    free_edges: Vec<String>,
    commuting: bool,
) -> Base {
    let morse = MorseData::new(
        g,
        points.clone(),
        traj.iter()
            .enumerate()
            .map(|(n, (a, b, sign, w))| (format!("γ{n}"), a.clone(), b.clone(), *sign, w.clone().unwrap_or_default()))
            .collect(),
    )
    .unwrap();
    Base {
        morse,
        free_edges,
        commuting,
        points: points.into_iter().map(|(id, i, _)| (id, i)).collect(),
        trajectories: traj,
    }
}

pub fn random_base(rng: &mut ChaCha8Rng) -> Base {
    match rng.gen_range(0..5) {
        0 => circle_base(),
        1 => torus_base(),
        2 => sphere_base(),
        _ => graph_base(rng),
    }
}

/// Untwisted base cohomology from the trajectory signs.
pub fn oracle_base_cohomology(base: &Base, field: Field) -> BTreeMap<i64, usize> {
    let fiber = vec![(0, vec![vec![Oracle::of(field).int(1)]])];
    let t = twisted_matrices(base, field, &fiber, &BTreeMap::new());
    t.into_iter().map(|((p, _), d)| (p, d)).collect()
}

/// `dim H^p(base; V_q)` for per-degree fiber spaces `V_q` with transports
/// `maps[edge][q]` (identity when absent), as `(p, q) -> dim`.
pub fn twisted_matrices(
    base: &Base,
    field: Field,
    fiber: &[(i64, Vec<Vec<V>>)],
    maps: &BTreeMap<String, BTreeMap<i64, Vec<Vec<V>>>>,
) -> BTreeMap<(i64, i64), usize> {
    let o = Oracle::of(field);
    let top = base.points.iter().map(|p| p.1).max().unwrap_or(0);
    let mut out = BTreeMap::new();
    for (q, id) in fiber {
        let r = id.len();
        let in_index = |i: i64| -> Vec<usize> {
            (0..base.points.len()).filter(|&n| base.points[n].1 == i).collect()
        };
        let d = |i: i64| -> (Vec<Vec<V>>, usize) {
            let src = in_index(i);
            let tgt = in_index(i + 1);
            let mut m = vec![vec![V::zero(); src.len() * r]; tgt.len() * r];
            for (a, b, sign, w) in &base.trajectories {
                let Some(sa) = src.iter().position(|&n| &base.points[n].0 == a) else { continue };
                let Some(tb) = tgt.iter().position(|&n| &base.points[n].0 == b) else { continue };
                let phi = w
                    .as_ref()
                    .and_then(|e| maps.get(e))
                    .and_then(|per| per.get(q))
                    .cloned()
                    .unwrap_or_else(|| o.identity(r));
                for x in 0..r {
                    for y in 0..r {
                        let cell = &mut m[tb * r + x][sa * r + y];
                        *cell = o.add(cell, &o.mul(&o.int(*sign), &phi[x][y]));
                    }
                }
            }
            (m, src.len() * r)
        };
        for p in 0..=top {
            let (dp, dim) = d(p);
            let (dm, _) = d(p - 1);
            let h = dim - o.rank(&dp) - o.rank(&dm);
            if h > 0 {
                out.insert((p, *q), h);
            }
        }
    }
    out
}

/// A fiber `Z ⊕ P`: `Z` has zero differential, `P` is a sum of acyclic
/// pieces `x -> y`. Generators of `Z` come first.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub complex: CochainComplex,
    /// Degrees of the `Z` generators, in order.
    pub cocycles: Vec<i64>,
    pub pairs: usize,
}

pub fn random_fiber(rng: &mut ChaCha8Rng, field: Field, max_cocycles: usize, max_pairs: usize) -> Fiber {
    let nz = rng.gen_range(0..=max_cocycles);
    let np = rng.gen_range(0..=max_pairs);
    let cocycles: Vec<i64> = (0..nz).map(|_| rng.gen_range(0..=2)).collect();
    let mut gens: Vec<Generator> = cocycles.iter().enumerate().map(|(i, k)| Generator::new(format!("z{i}"), *k)).collect();
    let mut entries = Vec::new();
    for i in 0..np {
        let k = rng.gen_range(0..=1);
        gens.push(Generator::new(format!("x{i}"), k));
        gens.push(Generator::new(format!("y{i}"), k + 1));
        let c = match field {
            Field::Prime(p) => rng.gen_range(1..p as i64),
            Field::Rationals => rng.gen_range(1..=3),
        };
        entries.push((format!("x{i}"), format!("y{i}"), field.from_i64(c)));
    }
    let complex = CochainComplex::from_id_entries(field, gens, entries).unwrap();
    Fiber {
        complex,
        cocycles,
        pairs: np,
    }
}

pub fn acyclic_fiber(rng: &mut ChaCha8Rng, field: Field) -> Fiber {
    loop {
        let f = random_fiber(rng, field, 0, 4);
        if f.pairs > 0 {
            return f;
        }
    }
}

/// A random invertible `n x n` matrix: a product of a permutation, a
/// diagonal and a few elementary matrices.
pub fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Vec<Vec<V>> {
    let o = Oracle::of(field);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let unit = |rng: &mut ChaCha8Rng| match field {
        Field::Prime(p) => o.int(rng.gen_range(1..p as i64)),
        Field::Rationals => o.int(*[1, -1, 2].choose(rng).unwrap()),
    };
    let mut m: Vec<Vec<V>> = (0..n)
        .map(|i| (0..n).map(|j| if perm[i] == j { unit(rng) } else { V::zero() }).collect())
        .collect();
    for _ in 0..n {
        if n < 2 {
            break;
        }
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let c = unit(rng);
            let row_j = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&row_j) {
                *x = o.add(x, &o.mul(&c, y));
            }
        }
    }
    m
}

pub fn to_sparse(field: Field, m: &[Vec<V>]) -> SparseMatrix {
    let n = m.len();
    let cols = m.first().map_or(n, Vec::len);
    let triplets = m.iter().enumerate().flat_map(|(i, row)| {
        row.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(move |(j, a)| (i, j, to_scalar(field, a)))
    });
    SparseMatrix::from_triplets(field, n, cols, triplets.collect::<Vec<_>>()).unwrap()
}

pub fn to_scalar(field: Field, a: &V) -> Scalar {
    field.from_ratio(a.numer(), a.denom()).expect("denominator invertible")
}

pub fn is_identity(o: &Oracle, m: &[Vec<V>]) -> bool {
    m == o.identity(m.len()).as_slice()
}

pub fn matrix_power(o: &Oracle, m: &[Vec<V>], e: u32) -> Vec<Vec<V>> {
    (0..e).fold(o.identity(m.len()), |acc, _| o.matmul(&acc, m, m.len(), m.len()))
}

/// Fiber transports: a monodromy matrix per degree on the `Z` part and a
/// nonzero scalar on the acyclic part, per free edge. On a torus base the
/// two edges get powers of the same matrices so that they commute.
pub struct Monodromy {
    /// Per free edge and fiber degree, the transport on `Z^q` (oracle form).
    pub on_cocycles: BTreeMap<String, BTreeMap<i64, Vec<Vec<V>>>>,
    /// Per free edge, the full chain automorphism of the fiber.
    pub action: Vec<(String, BTreeMap<i64, SparseMatrix>)>,
}

pub fn random_monodromy(rng: &mut ChaCha8Rng, field: Field, base: &Base, fiber: &Fiber) -> Monodromy {
    let o = Oracle::of(field);
    let mut degrees: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, k) in fiber.cocycles.iter().enumerate() {
        degrees.entry(*k).or_default().push(i);
    }
    let shared: BTreeMap<i64, Vec<Vec<V>>> = degrees.iter().map(|(k, ids)| (*k, random_invertible(rng, field, ids.len()))).collect();
    let shared_scalar = match field {
        Field::Prime(p) => rng.gen_range(1..p as i64),
        Field::Rationals => *[1, -1, 2].choose(rng).unwrap(),
    };
    let mut on_cocycles = BTreeMap::new();
    let mut action = Vec::new();
    for e in &base.free_edges {
        let (per_degree, scalar): (BTreeMap<i64, Vec<Vec<V>>>, V) = if base.commuting {
            let power = rng.gen_range(0..=2);
            (
                shared.iter().map(|(k, m)| (*k, matrix_power(&o, m, power))).collect(),
                matrix_power(&o, &[vec![o.int(shared_scalar)]], power)[0][0].clone(),
            )
        } else {
            let per = degrees.iter().map(|(k, ids)| (*k, random_invertible(rng, field, ids.len()))).collect();
            let scalar = match field {
                Field::Prime(p) => o.int(rng.gen_range(1..p as i64)),
                Field::Rationals => o.int(*[1, -1, 2].choose(rng).unwrap()),
            };
            (per, scalar)
        };
        let c = &fiber.complex;
        let mut blocks = BTreeMap::new();
        for k in c.degrees() {
            let n = c.dim(k);
            let mut m = o.identity(n);
            for j in 0..n {
                m[j][j] = scalar.clone();
            }
            let basis = c.basis();
            let local: Vec<usize> = basis.in_degree(k).iter().copied().filter(|&g| g < fiber.cocycles.len()).map(|g| basis.local_index(g)).collect();
            if let Some(z) = per_degree.get(&k) {
                for (a, &ia) in local.iter().enumerate() {
                    for (b, &ib) in local.iter().enumerate() {
                        m[ia][ib] = z[a][b].clone();
                    }
                }
            }
            blocks.insert(k, to_sparse(field, &m));
        }
        on_cocycles.insert(e.clone(), per_degree);
        action.push((e.clone(), blocks));
    }
    Monodromy { on_cocycles, action }
}

/// True when some free edge acts nontrivially on the cohomology of the fiber.
pub fn nontrivial(o: &Oracle, m: &Monodromy) -> bool {
    m.on_cocycles.values().flat_map(|per| per.values()).any(|z| !is_identity(o, z))
}

pub fn fibration(base: &Base, fiber: &Fiber, action: Vec<(String, BTreeMap<i64, SparseMatrix>)>) -> FibrationData {
    FibrationData::new(base.morse.clone(), fiber.complex.clone(), action, vec![]).unwrap()
}

/// `H^*(fiber)` as `q -> identity` blocks for [`twisted_matrices`].
pub fn cocycle_spaces(field: Field, fiber: &Fiber) -> Vec<(i64, Vec<Vec<V>>)> {
    let o = Oracle::of(field);
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for k in &fiber.cocycles {
        *counts.entry(*k).or_insert(0) += 1;
    }
    counts.into_iter().map(|(k, n)| (k, o.identity(n))).collect()
}
