//! Property checks over one random instance each. They return a description
//! of the first violation so that proptests and the acceptance report can
//! share them.

use std::collections::BTreeMap;

use fibseq::complex::{ChainMap, CochainComplex, Generator, GradedBasis};
use fibseq::morse::{assemble_fibration, e2_table};
use fibseq::specseq::{FilteredChainMap, Page, SplitFilteredComplex};
use fibseq::{Field, SparseMatrix};
use rand::Rng;

use crate::*;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn nonzero<K: Ord + Clone>(m: &BTreeMap<K, usize>) -> BTreeMap<K, usize> {
    m.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (k.clone(), *d)).collect()
}

pub fn field_for(seed: u64) -> Field {
    FIELDS[(seed % 3) as usize]
}

/// `d_r ∘ d_r = 0`, multiplied out densely.
fn square_zero(o: &Oracle, page: &Page) -> Check {
    for (&(p, q), d) in page.differentials() {
        let (tp, tq) = page.target(p, q);
        let next = page.d(tp, tq);
        let product = o.matmul(&o.dense(&next), &o.dense(d), d.rows(), d.cols());
        ensure!(
            product.iter().flatten().all(|x| x == &V::from_integer(0.into())),
            "d_{} ∘ d_{} ≠ 0 at ({p},{q})",
            page.r(),
            page.r()
        );
    }
    Ok(())
}

/// `dim H(E_r, d_r)` from dense ranks of the page matrices.
fn page_cohomology(o: &Oracle, page: &Page) -> BTreeMap<(i64, i64), usize> {
    let r = page.r() as i64;
    let rank = |p: i64, q: i64| o.rank(&o.dense(&page.d(p, q)));
    let mut out = BTreeMap::new();
    for (&(p, q), &dim) in &page.dims() {
        let h = dim - rank(p, q) - rank(p - r, q + r - 1);
        if h > 0 {
            out.insert((p, q), h);
        }
    }
    out
}

/// The four tower invariants plus `E_1 = H(C_p, ∂_0)` and agreement of the
/// two engines with the dense page formula.
pub fn tower_soundness(sfc: &SplitFilteredComplex) -> Check {
    let o = Oracle::of(sfc.field());
    let fast = sfc.spectral_sequence();
    let slow = sfc.to_filtered().spectral_sequence();
    let stable = fast.stable_index();
    let mut pages = Vec::new();
    for r in 0..=stable + 1 {
        let a = fast.page(r).map_err(|e| format!("split engine, page {r}: {e}"))?;
        let b = slow.page(r).map_err(|e| format!("general engine, page {r}: {e}"))?;
        square_zero(&o, &a)?;
        square_zero(&o, &b)?;
        let expected = oracle_page(sfc, r);
        ensure!(a.dims() == expected, "E_{r} dims {:?}, dense formula {:?}", a.dims(), expected);
        ensure!(b.dims() == expected, "general engine E_{r} dims {:?}, dense formula {:?}", b.dims(), expected);
        for &(p, q) in a.dims().keys() {
            ensure!(
                o.rank(&o.dense(&a.d(p, q))) == o.rank(&o.dense(&b.d(p, q))),
                "engines disagree on rank d_{r} at ({p},{q})"
            );
        }
        pages.push((a, b));
    }
    for r in 0..stable + 1 {
        let h = page_cohomology(&o, &pages[r].0);
        ensure!(h == pages[r + 1].0.dims(), "E_{} is not H(E_{r}, d_{r})", r + 1);
    }
    // E_1 from the columns
    let e1 = &pages[1].0;
    for p in 0..=sfc.length() {
        for (k, h) in oracle_cohomology(&sfc.column_complex(p)) {
            let q = k - p as i64;
            ensure!(e1.dim(p as i64, q) == h, "E_1^({p},{q}) = {} but H(C_p, d_0) = {h}", e1.dim(p as i64, q));
        }
    }
    zigzag_matches(sfc, &slow, stable)?;
    let report = fast.converge().map_err(|e| e.to_string())?;
    ensure!(report.certified, "convergence not certified");
    ensure!(
        report.r_stop >= 1 && report.r_stop <= sfc.length() + 1,
        "r_stop {} outside 1..={}",
        report.r_stop,
        sfc.length() + 1
    );
    let direct = nonzero(&oracle_cohomology(sfc.complex()));
    ensure!(
        nonzero(&report.e_infinity_totals()) == direct,
        "E_∞ totals {:?} vs H {:?}",
        report.e_infinity_totals(),
        direct
    );
    let slow_report = slow.converge().map_err(|e| e.to_string())?;
    ensure!(slow_report == report, "engines give different convergence reports");
    Ok(())
}

/// Recomputes every `d_r` by the zig-zag lift of each representative and
/// compares it, in the representative bases, with the subquotient engine.
fn zigzag_matches(sfc: &SplitFilteredComplex, slow: &fibseq::specseq::SpectralSequence, stable: usize) -> Check {
    let f = sfc.field();
    for r in 1..=stable {
        let page = slow.page(r).map_err(|e| e.to_string())?;
        for (&(p, q), cell) in page.cells() {
            let k = p + q;
            let (tp, tq) = page.target(p, q);
            let mut columns = Vec::new();
            for (i, x) in cell.reps.iter().enumerate() {
                let alpha = sfc.restrict(k, x, |b| b as i64 == p);
                let w = sfc
                    .zigzag(r, p as usize, k, &alpha)
                    .map_err(|e| e.to_string())?
                    .ok_or_else(|| format!("no zig-zag lift for a class of E_{r}^({p},{q})"))?;
                let own = slow.class_coordinates(r, p, q, &w.lift).map_err(|e| e.to_string())?;
                ensure!(
                    own.map(|v| v.to_dense(f)) == Some((0..cell.dim()).map(|j| if j == i { f.one() } else { f.zero() }).collect()),
                    "lift of representative {i} of E_{r}^({p},{q}) is in another class"
                );
                if page.dim(tp, tq) > 0 {
                    let image = slow
                        .class_coordinates(r, tp, tq, &w.image)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| format!("zig-zag image from ({p},{q}) is not in Z_{r}"))?;
                    columns.push(image);
                }
            }
            if page.dim(tp, tq) > 0 {
                let m = SparseMatrix::from_columns(f, page.dim(tp, tq), columns).map_err(|e| e.to_string())?;
                ensure!(m == page.d(p, q), "zig-zag d_{r} differs from the subquotient d_{r} at ({p},{q})");
            }
        }
    }
    Ok(())
}

/// Quotient by a random `F_m` and checks that the induced page maps commute
/// with every `d_r`.
pub fn truncation_commutes(rng: &mut rand_chacha::ChaCha8Rng, field: Field) -> Check {
    let sfc = loop {
        let s = random_split(rng, field, 20, 4);
        if s.length() >= 1 {
            break s;
        }
    };
    let n = sfc.length();
    let m = rng.gen_range(1..=n);
    let c = sfc.complex();
    let basis = c.basis();
    let kept: Vec<usize> = (0..basis.len()).filter(|&i| sfc.block(i) < m).collect();
    let mut index = vec![usize::MAX; basis.len()];
    for (new, &old) in kept.iter().enumerate() {
        index[old] = new;
    }
    let gens: Vec<Generator> = kept.iter().map(|&i| basis.generator(i).clone()).collect();
    let qbasis = GradedBasis::new(gens).map_err(|e| e.to_string())?;
    let entries = c
        .entries()
        .into_iter()
        .filter(|(s, t, _)| index[*s] != usize::MAX && index[*t] != usize::MAX)
        .map(|(s, t, a)| (index[s], index[t], a));
    let quotient = CochainComplex::from_entries(field, qbasis.clone(), entries).map_err(|e| e.to_string())?;
    let blocks = kept.iter().map(|&i| sfc.block(i)).collect();
    let target = SplitFilteredComplex::with_length(quotient.clone(), blocks, n).map_err(|e| e.to_string())?;
    let mut maps = BTreeMap::new();
    for k in c.degrees() {
        let triplets: Vec<_> = basis
            .in_degree(k)
            .iter()
            .filter(|&&g| index[g] != usize::MAX)
            .map(|&g| (qbasis.local_index(index[g]), basis.local_index(g), field.one()))
            .collect();
        maps.insert(k, SparseMatrix::from_triplets(field, quotient.dim(k), c.dim(k), triplets).map_err(|e| e.to_string())?);
    }
    let proj = ChainMap::new(c.clone(), quotient, maps).map_err(|e| e.to_string())?;
    let map = FilteredChainMap::new(sfc.to_filtered(), target.to_filtered(), proj).map_err(|e| e.to_string())?;
    let induced = map.on_pages().map_err(|e| e.to_string())?;
    let o = Oracle::of(field);
    for r in 0..induced.maps.len() {
        let (src, tgt) = (&induced.source_pages[r], &induced.target_pages[r]);
        for &(p, q) in src.dims().keys() {
            let (tp, tq) = src.target(p, q);
            let cols = src.dim(p, q);
            let left = o.matmul(&o.dense(&induced.map(r, tp, tq)), &o.dense(&src.d(p, q)), src.dim(tp, tq), cols);
            let right = o.matmul(&o.dense(&tgt.d(p, q)), &o.dense(&induced.map(r, p, q)), tgt.dim(p, q), cols);
            ensure!(left == right, "page map does not commute with d_{r} at ({p},{q})");
        }
        // on cells of filtration below m the quotient is an isomorphism on E_0
        if r == 0 {
            for &(p, q) in src.dims().keys() {
                if (p as usize) < m {
                    ensure!(induced.map(0, p, q).rank() == src.dim(p, q), "E_0 map not bijective at ({p},{q})");
                }
            }
        }
    }
    Ok(())
}

fn convolve(a: &BTreeMap<i64, usize>, b: &BTreeMap<i64, usize>) -> BTreeMap<(i64, i64), usize> {
    let mut out = BTreeMap::new();
    for (p, x) in a {
        for (q, y) in b {
            if x * y > 0 {
                out.insert((*p, *q), x * y);
            }
        }
    }
    out
}

/// A product fibration: `E_2 = H(B) ⊗ H(F)` and every later differential is
/// zero.
pub fn product_degenerates(rng: &mut rand_chacha::ChaCha8Rng, field: Field) -> Check {
    let base = random_base(rng);
    let fiber = random_fiber(rng, field, 3, 2);
    let fd = fibration(&base, &fiber, vec![]);
    let expected = convolve(&oracle_base_cohomology(&base, field), &oracle_cohomology(&fiber.complex));
    let table = e2_table(&fd).map_err(|e| e.to_string())?;
    ensure!(table.dims == expected, "E_2 table {:?}, H(B)⊗H(F) {:?}", table.dims, expected);
    let ss = assemble_fibration(&fd).map_err(|e| e.to_string())?.spectral_sequence();
    let e2 = ss.page(2).map_err(|e| e.to_string())?;
    ensure!(e2.dims() == expected, "page 2 {:?}, H(B)⊗H(F) {:?}", e2.dims(), expected);
    for r in 2..=ss.stable_index() {
        ensure!(
            ss.page(r).map_err(|e| e.to_string())?.differential_is_zero(),
            "d_{r} ≠ 0 on a product"
        );
    }
    let report = ss.converge().map_err(|e| e.to_string())?;
    ensure!(report.certified, "not certified");
    ensure!(report.r_stop <= 2, "r_stop {} on a product", report.r_stop);
    Ok(())
}

/// Acyclic fiber: every page from `E_2` on and the total cohomology vanish.
pub fn acyclic_fiber_vanishes(rng: &mut rand_chacha::ChaCha8Rng, field: Field) -> Check {
    let base = random_base(rng);
    let fiber = acyclic_fiber(rng, field);
    let mono = random_monodromy(rng, field, &base, &fiber);
    let fd = fibration(&base, &fiber, mono.action);
    let total = assemble_fibration(&fd).map_err(|e| e.to_string())?;
    let ss = total.spectral_sequence();
    for r in 2..=ss.stable_index() + 1 {
        let dims = ss.page(r).map_err(|e| e.to_string())?.dims();
        ensure!(dims.is_empty(), "E_{r} = {dims:?} for an acyclic fiber");
    }
    let h = nonzero(&oracle_cohomology(total.complex()));
    ensure!(h.is_empty(), "total cohomology {h:?} for an acyclic fiber");
    ensure!(e2_table(&fd).map_err(|e| e.to_string())?.dims.is_empty(), "nonzero E_2 table");
    Ok(())
}

/// Nontrivial monodromy: the `E_2` table from base cohomology with local
/// coefficients equals page 2 of the assembled tower and the dense twisted
/// computation.
pub fn monodromy_e2(rng: &mut rand_chacha::ChaCha8Rng, field: Field) -> Check {
    let o = Oracle::of(field);
    for _ in 0..500 {
        let base = loop {
            let b = random_base(rng);
            if !b.free_edges.is_empty() {
                break b;
            }
        };
        let fiber = random_fiber(rng, field, 4, 2);
        let mono = random_monodromy(rng, field, &base, &fiber);
        if !nontrivial(&o, &mono) {
            continue;
        }
        let expected = twisted_matrices(&base, field, &cocycle_spaces(field, &fiber), &mono.on_cocycles);
        let fd = fibration(&base, &fiber, mono.action);
        let table = e2_table(&fd).map_err(|e| e.to_string())?;
        let total = assemble_fibration(&fd).map_err(|e| e.to_string())?;
        let ss = total.spectral_sequence();
        let e2 = ss.page(2).map_err(|e| e.to_string())?.dims();
        ensure!(table.dims == e2, "E_2 table {:?} vs page 2 {:?}", table.dims, e2);
        ensure!(table.dims == expected, "E_2 table {:?} vs dense twisted {:?}", table.dims, expected);
        let report = ss.converge().map_err(|e| e.to_string())?;
        ensure!(report.certified, "not certified");
        ensure!(
            nonzero(&report.e_infinity_totals()) == nonzero(&oracle_cohomology(total.complex())),
            "E_∞ totals disagree with the total cohomology"
        );
        return Ok(());
    }
    Err("no nontrivial monodromy drawn in 500 attempts".into())
}
