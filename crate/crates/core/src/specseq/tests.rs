use std::collections::BTreeMap;

use super::*;
use crate::complex::{ChainMap, Generator};
use crate::exact::{SparseMatrix, Subspace};
use crate::field::Field;

fn cx(field: Field, gens: &[(&str, i64)], entries: &[(&str, &str, i64)]) -> CochainComplex {
    CochainComplex::from_id_entries(
        field,
        gens.iter().map(|(id, k)| Generator::new(*id, *k)).collect(),
        entries
            .iter()
            .map(|(s, t, a)| (s.to_string(), t.to_string(), field.from_i64(*a))),
    )
    .unwrap()
}

fn hopf(field: Field) -> SplitFilteredComplex {
    let c = cx(
        field,
        &[("s*u", 0), ("s*w", 1), ("N*u", 2), ("N*w", 3)],
        &[("s*w", "N*u", 1)],
    );
    SplitFilteredComplex::new(c, vec![0, 0, 2, 2]).unwrap()
}

fn totals(page: &Page) -> Vec<usize> {
    let t = page.totals();
    let hi = t.keys().max().copied().unwrap_or(-1);
    (0..=hi).map(|k| t.get(&k).copied().unwrap_or(0)).collect()
}

#[test]
fn trivial_filtration_is_cohomology() {
    let f = Field::Rationals;
    let circle = cx(f, &[("v", 0), ("e", 1)], &[]);
    let ss = FilteredComplex::trivial(circle.clone()).spectral_sequence();
    let e1 = ss.page(1).unwrap();
    assert_eq!(e1.dim(0, 0), 1);
    assert_eq!(e1.dim(0, 1), 1);
    for r in 1..5 {
        assert!(ss.page(r).unwrap().differential_is_zero());
    }
    let report = ss.converge().unwrap();
    assert_eq!(report.r_stop, 1);
    assert!(report.certified);
    assert_eq!(report.e_infinity_totals(), circle.cohomology().dims());
}

#[test]
fn interval_two_step() {
    let f = Field::Rationals;
    let c = cx(f, &[("v0", 0), ("v1", 0), ("e", 1)], &[("v0", "e", -1), ("v1", "e", 1)]);
    // F_1 is the subcomplex generated by v1
    let mut f1 = BTreeMap::new();
    f1.insert(0, Subspace::coordinate(f, 2, [1]));
    f1.insert(1, Subspace::full(f, 1));
    let f0 = [(0, Subspace::full(f, 2)), (1, Subspace::full(f, 1))].into_iter().collect();
    let fc = FilteredComplex::new(c.clone(), vec![f0, f1, BTreeMap::new()]).unwrap();
    let ss = fc.spectral_sequence();
    let e1 = ss.page(1).unwrap();
    assert_eq!(e1.dims(), [((0, 0), 1)].into_iter().collect());
    let report = ss.converge().unwrap();
    assert!(report.certified);
    assert_eq!(totals(&ss.page(5).unwrap()), vec![1]);
    assert_eq!(c.cohomology().dims(), [(0, 1), (1, 0)].into_iter().collect());
}

#[test]
fn rejects_bad_filtrations() {
    let f = Field::Prime(2);
    let c = cx(f, &[("v0", 0), ("v1", 0), ("e", 1)], &[("v0", "e", 1), ("v1", "e", 1)]);
    let full = || -> BTreeMap<i64, Subspace> { [(0, Subspace::full(f, 2)), (1, Subspace::full(f, 1))].into_iter().collect() };
    let not_sub: BTreeMap<i64, Subspace> = [(0, Subspace::coordinate(f, 2, [0]))].into_iter().collect();
    assert!(matches!(
        FilteredComplex::new(c.clone(), vec![full(), not_sub, BTreeMap::new()]),
        Err(SpecSeqError::NotCompatible { p: 1, degree: 0 })
    ));
    assert!(matches!(
        FilteredComplex::new(c.clone(), vec![full(), full()]),
        Err(SpecSeqError::NotSeparated { .. })
    ));
    let up: BTreeMap<i64, Subspace> = [(1, Subspace::full(f, 1))].into_iter().collect();
    assert!(matches!(
        FilteredComplex::new(c.clone(), vec![full(), up, full(), BTreeMap::new()]),
        Err(SpecSeqError::NotDecreasing { p: 2, .. })
    ));
    assert!(matches!(
        SplitFilteredComplex::new(c, vec![1, 0, 0]),
        Err(SpecSeqError::LowersFiltration { .. })
    ));
}

#[test]
fn hopf_model() {
    for f in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
        let sfc = hopf(f);
        for ss in [sfc.spectral_sequence(), sfc.to_filtered().spectral_sequence()] {
            let e2 = ss.page(2).unwrap();
            assert_eq!(e2.dim(0, 1), 1);
            assert_eq!(e2.dim(2, 0), 1);
            assert_eq!(e2.d_rank(0, 1), 1);
            let e3 = ss.page(3).unwrap();
            assert_eq!(e3.dims(), ss.page(10).unwrap().dims());
            assert_eq!(totals(&e3), vec![1, 0, 0, 1]);
            let report = ss.converge().unwrap();
            assert!(report.certified);
            assert_eq!(report.r_stop, 3);
        }
        assert_eq!(
            sfc.complex().cohomology().dims(),
            [(0, 1), (1, 0), (2, 0), (3, 1)].into_iter().collect()
        );
    }
}

#[test]
fn engines_agree_on_pages() {
    let f = Field::Prime(3);
    // two interleaved pieces plus an essential class
    let c = cx(
        f,
        &[("a", 0), ("b", 0), ("x", 1), ("y", 1), ("z", 1)],
        &[("a", "x", 1), ("a", "y", 1), ("b", "y", 2)],
    );
    let sfc = SplitFilteredComplex::new(c, vec![0, 1, 1, 2, 0]).unwrap();
    let fast = sfc.spectral_sequence();
    let slow = sfc.to_filtered().spectral_sequence();
    for r in 0..5 {
        let (a, b) = (fast.page(r).unwrap(), slow.page(r).unwrap());
        assert_eq!(a.dims(), b.dims(), "page {r}");
        for (pq, d) in a.differentials() {
            assert_eq!(d.rank(), b.d_rank(pq.0, pq.1));
        }
    }
    assert_eq!(fast.converge().unwrap(), slow.converge().unwrap());
}

#[test]
fn first_page_is_column_cohomology() {
    let sfc = hopf(Field::Rationals);
    let e1 = sfc.spectral_sequence().page(1).unwrap();
    for p in 0..=2 {
        let h = sfc.column_complex(p).cohomology();
        for k in 0..4 {
            assert_eq!(e1.dim(p as i64, k - p as i64), h.dim(k));
        }
    }
}

#[test]
fn zigzag_first_page() {
    let f = Field::Rationals;
    let sfc = hopf(f);
    let c = sfc.complex();
    // s*u is a d_0-cocycle; d_1 of it is zero
    let alpha = c.vector(0, [(0, f.one())]);
    let w = sfc.zigzag(1, 0, 0, &alpha).unwrap().unwrap();
    assert!(w.leading.is_zero());
    assert_eq!(w.leading, sfc.component(1, 0).mul_vec(&alpha).unwrap());

    // with a nonzero d_0 the class does not exist on E_1
    let g = cx(f, &[("a", 0), ("b", 1)], &[("a", "b", 1)]);
    let g = SplitFilteredComplex::new(g, vec![0, 0]).unwrap();
    let a = g.complex().vector(0, [(0, f.one())]);
    assert!(g.zigzag(0, 0, 0, &a).unwrap().is_some());
    assert!(g.zigzag(1, 0, 0, &a).unwrap().is_none());
}

#[test]
fn zigzag_hopf_d2() {
    let f = Field::Prime(5);
    let sfc = hopf(f);
    let c = sfc.complex();
    let alpha = c.vector(1, [(1, f.one())]);
    let w = sfc.zigzag(2, 0, 1, &alpha).unwrap().unwrap();
    assert_eq!(w.leading, c.vector(2, [(2, f.one())]));
    let ss = sfc.to_filtered().spectral_sequence();
    let class = ss.class_coordinates(2, 2, 0, &w.image).unwrap().unwrap();
    assert!(!class.is_zero());

    let wrong = c.vector(2, [(2, f.one())]);
    assert!(matches!(sfc.zigzag(2, 0, 2, &wrong), Err(SpecSeqError::Support(_))));
}

#[test]
fn zigzag_with_correction_term() {
    // ∂a = x + t, ∂m = -x: on E_2 the lift of a is a + m and d_2[a] = [t]
    let f = Field::Rationals;
    let c = cx(
        f,
        &[("a", 0), ("m", 0), ("x", 1), ("t", 1)],
        &[("a", "x", 1), ("a", "t", 1), ("m", "x", -1)],
    );
    let sfc = SplitFilteredComplex::new(c, vec![0, 1, 1, 2]).unwrap();
    let c = sfc.complex();
    let alpha = c.vector(0, [(0, f.one())]);
    let w1 = sfc.zigzag(1, 0, 0, &alpha).unwrap().unwrap();
    assert_eq!(w1.leading, c.vector(1, [(2, f.one())]));
    let w2 = sfc.zigzag(2, 0, 0, &alpha).unwrap().unwrap();
    assert_eq!(w2.betas, c.vector(0, [(1, f.one())]));
    assert_eq!(w2.leading, c.vector(1, [(3, f.one())]));
    let ss = sfc.spectral_sequence();
    assert_eq!(ss.page(2).unwrap().d_rank(0, 0), 1);
}

#[test]
fn identity_map_on_pages() {
    let fc = hopf(Field::Rationals).to_filtered();
    let id = ChainMap::identity(fc.complex());
    let induced = FilteredChainMap::new(fc.clone(), fc, id).unwrap().on_pages().unwrap();
    for (r, maps) in induced.maps.iter().enumerate() {
        for (pq, m) in maps {
            let n = induced.source_pages[r].dim(pq.0, pq.1);
            assert_eq!(*m, SparseMatrix::identity(Field::Rationals, n));
        }
    }
}

fn three_step(field: Field) -> SplitFilteredComplex {
    let c = cx(
        field,
        &[("a", 0), ("b", 0), ("c", 0), ("x", 1), ("y", 1), ("z", 1)],
        &[("a", "y", 1), ("b", "z", 1)],
    );
    SplitFilteredComplex::new(c, vec![0, 1, 2, 0, 1, 2]).unwrap()
}

#[test]
fn inclusion_of_first_level() {
    let f = Field::Prime(3);
    let sfc = three_step(f);
    let c = sfc.complex();
    // F_1C = span(b, c, y, z)
    let sub = cx(
        f,
        &[("b", 0), ("c", 0), ("y", 1), ("z", 1)],
        &[("b", "z", 1)],
    );
    let sub = SplitFilteredComplex::new(sub, vec![1, 2, 1, 2]).unwrap();
    let mut blocks = BTreeMap::new();
    blocks.insert(0, SparseMatrix::from_triplets(f, 3, 2, [(1, 0, f.one()), (2, 1, f.one())]).unwrap());
    blocks.insert(1, SparseMatrix::from_triplets(f, 3, 2, [(1, 0, f.one()), (2, 1, f.one())]).unwrap());
    let inc = ChainMap::new(sub.complex().clone(), c.clone(), blocks).unwrap();
    let map = FilteredChainMap::new(sub.to_filtered(), sfc.to_filtered(), inc).unwrap();
    let induced = map.on_pages().unwrap();
    let e0 = &induced.maps[0];
    for (&(p, q), m) in e0 {
        assert!(p >= 1);
        let n = induced.target_pages[0].dim(p, q);
        assert_eq!(m.rank(), n, "column ({p},{q}) maps isomorphically");
    }
    assert_eq!(e0.len(), 4);
}

#[test]
fn filtration_must_be_preserved() {
    let f = Field::Prime(2);
    let sfc = three_step(f);
    let c = sfc.complex().clone();
    let flat = SplitFilteredComplex::new(c.clone(), vec![0; 6]).unwrap();
    let id = ChainMap::identity(&c);
    assert!(matches!(
        FilteredChainMap::new(sfc.to_filtered(), flat.to_filtered(), id),
        Err(SpecSeqError::FiltrationNotPreserved { p: 1, .. })
    ));
}

#[test]
fn truncation_commutes_with_d1() {
    let f = Field::Rationals;
    let sfc = three_step(f);
    // quotient by F_2: drop c and z
    let q = cx(f, &[("a", 0), ("b", 0), ("x", 1), ("y", 1)], &[("a", "y", 1)]);
    let q = SplitFilteredComplex::with_length(q, vec![0, 1, 0, 1], 2).unwrap();
    let mut blocks = BTreeMap::new();
    blocks.insert(0, SparseMatrix::from_triplets(f, 2, 3, [(0, 0, f.one()), (1, 1, f.one())]).unwrap());
    blocks.insert(1, SparseMatrix::from_triplets(f, 2, 3, [(0, 0, f.one()), (1, 1, f.one())]).unwrap());
    let proj = ChainMap::new(sfc.complex().clone(), q.complex().clone(), blocks).unwrap();
    let map = FilteredChainMap::new(sfc.to_filtered(), q.to_filtered(), proj).unwrap();
    let induced = map.on_pages().unwrap();
    let (s1, t1) = (&induced.source_pages[1], &induced.target_pages[1]);
    assert!(!s1.differential_is_zero());
    for &(p, qq) in s1.cells().keys() {
        let (p2, q2) = s1.target(p, qq);
        let left = induced.map(1, p2, q2).mul(&s1.d(p, qq)).unwrap();
        let right = t1.d(p, qq).mul(&induced.map(1, p, qq)).unwrap();
        assert_eq!(left, right);
    }
}
