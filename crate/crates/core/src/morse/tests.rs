use std::collections::BTreeMap;

use super::*;
use crate::complex::Generator;
use crate::field::Field;
use crate::localsys::LocalSystem;

fn s(x: &str) -> String {
    x.to_string()
}

fn loop_graph(relations: &[&str]) -> BaseGraph {
    BaseGraph::new(
        vec![s("o")],
        vec![(s("e"), s("o"), s("o"))],
        &relations.iter().map(|r| s(r)).collect::<Vec<_>>(),
    )
    .unwrap()
}

fn point_graph() -> BaseGraph {
    BaseGraph::new(vec![s("o")], vec![], &[]).unwrap()
}

/// Height function on the circle: minimum m, maximum M, two trajectories of
/// opposite sign, one of which goes around the loop edge.
fn circle_morse() -> MorseData {
    MorseData::new(
        loop_graph(&[]),
        vec![(s("m"), 0, s("o")), (s("M"), 1, s("o"))],
        vec![
            (s("t+"), s("m"), s("M"), 1, s("")),
            (s("t-"), s("m"), s("M"), -1, s("e")),
        ],
    )
    .unwrap()
}

fn rank_one(base: BaseGraph, f: Field, monodromy: i64) -> LocalSystem {
    LocalSystem::new(base, f, 1, vec![SparseMatrix::from_rows_i64(f, &[&[monodromy]])]).unwrap()
}

fn dims(c: &CochainComplex) -> Vec<usize> {
    let d = c.cohomology().dims();
    let hi = d.keys().max().copied().unwrap_or(-1);
    (0..=hi).map(|k| d.get(&k).copied().unwrap_or(0)).collect()
}

fn circle_fiber(f: Field) -> CochainComplex {
    CochainComplex::zero_differential(f, vec![Generator::new("u", 0), Generator::new("w", 1)]).unwrap()
}

fn reflection(f: Field) -> BTreeMap<i64, SparseMatrix> {
    BTreeMap::from([
        (0, SparseMatrix::identity(f, 1)),
        (1, SparseMatrix::from_rows_i64(f, &[&[-1]])),
    ])
}

#[test]
fn circle_morse_cohomology() {
    let f = Field::Rationals;
    let md = circle_morse();
    assert_eq!(dims(&morse_complex(&md, &rank_one(md.base().clone(), f, 1)).unwrap()), vec![1, 1]);
    let twisted = morse_complex(&md, &rank_one(md.base().clone(), f, -1)).unwrap();
    assert_eq!(twisted.cohomology().total(), 0);
    assert_eq!(twisted.d(0).get(0, 0), f.from_i64(2));
}

#[test]
fn zero_rank_system_gives_zero_complex() {
    let md = circle_morse();
    let ls = LocalSystem::trivial(md.base().clone(), Field::Prime(3), 0);
    let c = morse_complex(&md, &ls).unwrap();
    assert_eq!(c.total_dim(), 0);
}

#[test]
fn inconsistent_trajectories_are_located() {
    // 0 -> 1 -> 2 with a single path each way; the composite is nonzero
    let md = MorseData::new(
        point_graph(),
        vec![(s("a"), 0, s("o")), (s("b"), 1, s("o")), (s("c"), 2, s("o"))],
        vec![(s("g"), s("a"), s("b"), 1, s("")), (s("h"), s("b"), s("c"), 1, s(""))],
    )
    .unwrap();
    let err = morse_complex(&md, &LocalSystem::trivial(md.base().clone(), Field::Rationals, 1)).unwrap_err();
    assert_eq!(
        err,
        MorseError::NotDifferential {
            from: s("a"),
            to: s("c")
        }
    );
}

#[test]
fn morse_data_validation() {
    let bad_sign = MorseData::new(
        loop_graph(&[]),
        vec![(s("m"), 0, s("o")), (s("M"), 1, s("o"))],
        vec![(s("t"), s("m"), s("M"), 2, s(""))],
    );
    assert_eq!(bad_sign.unwrap_err(), MorseError::BadSign(s("t")));
    let two = BaseGraph::new(vec![s("x"), s("y")], vec![(s("e"), s("x"), s("y"))], &[]).unwrap();
    let wrong_end = MorseData::new(
        two,
        vec![(s("m"), 0, s("x")), (s("M"), 1, s("y"))],
        vec![(s("t"), s("m"), s("M"), 1, s(""))],
    );
    assert_eq!(wrong_end.unwrap_err(), MorseError::WrongEndpoints(s("t")));
}

fn klein_cells(relations: &[&str]) -> CellularData {
    CellularData::new(
        loop_graph(relations),
        vec![
            (s("v"), 0, Some(s("o")), Some(0)),
            (s("a"), 1, Some(s("o")), Some(0)),
            (s("b"), 1, Some(s("o")), Some(1)),
            (s("c"), 2, Some(s("o")), Some(1)),
        ],
        // boundary word b a b^-1 a
        vec![
            (s("a"), s("c"), 1, None),
            (s("a"), s("c"), 1, None),
            (s("b"), s("c"), 1, None),
            (s("b"), s("c"), -1, None),
        ],
        vec![],
    )
    .unwrap()
}

fn torus_cells() -> CellularData {
    CellularData::new(
        loop_graph(&[]),
        vec![
            (s("v"), 0, Some(s("o")), Some(0)),
            (s("a"), 1, Some(s("o")), Some(0)),
            (s("b"), 1, Some(s("o")), Some(1)),
            (s("c"), 2, Some(s("o")), Some(1)),
        ],
        vec![
            (s("a"), s("c"), 1, None),
            (s("a"), s("c"), -1, None),
            (s("b"), s("c"), 1, None),
            (s("b"), s("c"), -1, None),
        ],
        vec![],
    )
    .unwrap()
}

#[test]
fn klein_bottle_cells() {
    let cd = klein_cells(&[]);
    assert_eq!(dims(&untwisted_complex(&cd, Field::Prime(2)).unwrap()), vec![1, 2, 1]);
    assert_eq!(dims(&untwisted_complex(&cd, Field::Rationals).unwrap()), vec![1, 1, 0]);
    let trivial = LocalSystem::trivial(cd.base().clone(), Field::Prime(2), 1);
    let twisted = cellular_complex(&cd, &trivial).unwrap();
    assert_eq!(twisted.entries(), untwisted_complex(&cd, Field::Prime(2)).unwrap().entries());
}

#[test]
fn circle_cells_with_loop_clause() {
    let f = Field::Rationals;
    let cd = CellularData::new(
        loop_graph(&[]),
        vec![(s("v"), 0, Some(s("o")), None), (s("e"), 1, Some(s("o")), None)],
        vec![],
        vec![(s("v"), s("e"), 1, s("e"), s(""))],
    )
    .unwrap();
    let flat = cellular_complex(&cd, &rank_one(cd.base().clone(), f, 1)).unwrap();
    assert_eq!(dims(&flat), vec![1, 1]);
    let twisted = cellular_complex(&cd, &rank_one(cd.base().clone(), f, -1)).unwrap();
    assert_eq!(twisted.cohomology().total(), 0);
    assert_eq!(twisted.d(0).get(0, 0), f.from_i64(-2));
}

#[test]
fn bad_incidences_rejected() {
    let cd = CellularData::new(
        point_graph(),
        vec![(s("v"), 0, None, None), (s("e"), 1, None, None), (s("c"), 2, None, None)],
        vec![(s("v"), s("e"), 1, None), (s("e"), s("c"), 1, None)],
        vec![],
    )
    .unwrap();
    assert_eq!(
        untwisted_complex(&cd, Field::Rationals).unwrap_err(),
        MorseError::IncidenceNotDifferential {
            from: s("v"),
            to: s("c")
        }
    );
    let unplaced = CellularData::new(
        point_graph(),
        vec![(s("v"), 0, None, None), (s("e"), 1, None, None)],
        vec![(s("v"), s("e"), 0, None)],
        vec![],
    )
    .unwrap();
    let ls = LocalSystem::trivial(point_graph(), Field::Rationals, 1);
    assert!(matches!(cellular_complex(&unplaced, &ls), Err(MorseError::MissingWord(_))));
}

fn product(f: Field, action: Vec<(String, BTreeMap<i64, SparseMatrix>)>) -> FibrationData {
    FibrationData::new(circle_morse(), circle_fiber(f), action, vec![]).unwrap()
}

fn hopf(f: Field) -> FibrationData {
    let md = MorseData::new(point_graph(), vec![(s("s"), 0, s("o")), (s("N"), 2, s("o"))], vec![]).unwrap();
    let correction = BTreeMap::from([(1, SparseMatrix::from_rows_i64(f, &[&[1]]))]);
    FibrationData::new(md, circle_fiber(f), vec![], vec![(s("s"), s("N"), correction)]).unwrap()
}

#[test]
fn point_fiber_is_base_complex() {
    let f = Field::Prime(5);
    let md = circle_morse();
    let point = CochainComplex::zero_differential(f, vec![Generator::new("pt", 0)]).unwrap();
    let fd = FibrationData::new(md.clone(), point, vec![], vec![]).unwrap();
    let total = assemble_fibration(&fd).unwrap();
    let base = morse_complex(&md, &LocalSystem::trivial(md.base().clone(), f, 1)).unwrap();
    assert_eq!(total.complex().entries(), base.entries());
}

#[test]
fn torus_product_degenerates() {
    let f = Field::Rationals;
    let fd = product(f, vec![]);
    let table = e2_table(&fd).unwrap();
    for p in 0..2 {
        for q in 0..2 {
            assert_eq!(table.dim(p, q), 1);
        }
    }
    let ss = assemble_fibration(&fd).unwrap().spectral_sequence();
    for r in 2..=ss.stable_index() {
        assert!(ss.page(r).unwrap().differential_is_zero());
    }
    assert!(ss.converge().unwrap().certified);
}

#[test]
fn hopf_totals() {
    let ss = assemble_fibration(&hopf(Field::Rationals)).unwrap().spectral_sequence();
    let report = ss.converge().unwrap();
    assert!(report.certified);
    assert_eq!(report.r_stop, 3);
    assert_eq!(report.e_infinity_totals(), BTreeMap::from([(0, 1), (3, 1)]));
}

#[test]
fn acyclic_fiber_kills_everything() {
    let f = Field::Prime(3);
    let fiber = CochainComplex::from_id_entries(
        f,
        vec![Generator::new("x", 0), Generator::new("y", 1)],
        [(s("x"), s("y"), f.one())],
    )
    .unwrap();
    let fd = FibrationData::new(circle_morse(), fiber, vec![], vec![]).unwrap();
    assert!(e2_table(&fd).unwrap().dims.is_empty());
    let total = assemble_fibration(&fd).unwrap();
    assert_eq!(total.complex().cohomology().total(), 0);
}

#[test]
fn swap_monodromy_over_f2() {
    let f = Field::Prime(2);
    let fiber = CochainComplex::zero_differential(f, vec![Generator::new("p", 0), Generator::new("q", 0)]).unwrap();
    let swap = BTreeMap::from([(0, SparseMatrix::from_rows_i64(f, &[&[0, 1], &[1, 0]]))]);
    let fd = FibrationData::new(circle_morse(), fiber, vec![(s("e"), swap)], vec![]).unwrap();
    let table = e2_table(&fd).unwrap();
    assert_eq!(table.dim(0, 0), 1);
    assert_eq!(table.dim(1, 0), 1);
}

#[test]
fn fiber_action_must_be_chain_isomorphism() {
    let f = Field::Rationals;
    let singular = BTreeMap::from([(0, SparseMatrix::zero(f, 1, 1))]);
    let err = FibrationData::new(circle_morse(), circle_fiber(f), vec![(s("e"), singular)], vec![]).unwrap_err();
    assert_eq!(err, MorseError::BadFiberAction(s("e")));
}

#[test]
fn corrections_must_skip_a_level() {
    let f = Field::Rationals;
    let c = BTreeMap::from([(1, SparseMatrix::from_rows_i64(f, &[&[1]]))]);
    let err = FibrationData::new(circle_morse(), circle_fiber(f), vec![], vec![(s("m"), s("M"), c)]).unwrap_err();
    assert!(matches!(err, MorseError::BadCorrection { .. }));
}

#[test]
fn broken_assembly_reports_lowest_bidegree() {
    // point base with three levels and a correction that does not square to zero
    let f = Field::Rationals;
    let md = MorseData::new(
        point_graph(),
        vec![(s("a"), 0, s("o")), (s("b"), 1, s("o")), (s("c"), 3, s("o"))],
        vec![(s("g"), s("a"), s("b"), 1, s(""))],
    )
    .unwrap();
    let fiber = CochainComplex::zero_differential(f, vec![Generator::new("u", 0), Generator::new("w", 1)]).unwrap();
    let c = BTreeMap::from([(1, SparseMatrix::from_rows_i64(f, &[&[1]]))]);
    let fd = FibrationData::new(md, fiber, vec![], vec![(s("b"), s("c"), c)]).unwrap();
    assert_eq!(
        assemble_fibration(&fd).unwrap_err(),
        MorseError::AssembledNotDifferential { p: 0, q: 1 }
    );
}

#[test]
fn regrading_shifts_q() {
    let f = Field::Rationals;
    let shifted = CochainComplex::zero_differential(f, vec![Generator::new("u", 2), Generator::new("w", 3)]).unwrap();
    let action = vec![(s("e"), BTreeMap::from([(2, SparseMatrix::identity(f, 1)), (3, SparseMatrix::from_rows_i64(f, &[&[-1]]))]))];
    let a = e2_table(&product(f, vec![(s("e"), reflection(f))])).unwrap();
    let b = e2_table(&FibrationData::new(circle_morse(), shifted, action, vec![]).unwrap()).unwrap();
    let moved: BTreeMap<_, _> = a.dims.iter().map(|((p, q), d)| ((*p, q + 2), *d)).collect();
    assert_eq!(moved, b.dims);
}

#[test]
fn leray_serre_torus_and_klein() {
    let f = Field::Rationals;
    let torus = leray_serre_compare(&torus_cells(), &product(f, vec![])).unwrap();
    assert!(torus.equal);
    assert_eq!(torus.cohomology, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));

    let klein_fd = product(f, vec![(s("e"), reflection(f))]);
    let table = e2_table(&klein_fd).unwrap();
    assert_eq!(table.dim(0, 1) + table.dim(1, 1), 0);
    let klein = leray_serre_compare(&klein_cells(&[]), &klein_fd).unwrap();
    assert!(klein.equal);
    assert_eq!(klein.cohomology, BTreeMap::from([(0, 1), (1, 1)]));
    assert_eq!(klein.pages[0].cellular.get(&(0, 1)), None);

    let err = leray_serre_compare(&torus_cells(), &klein_fd).unwrap_err();
    assert!(err.to_string().contains("total cohomology disagrees"));
}

/// Two trajectories `u`, `v` through a middle point and a direct one `γ`
/// around a different edge, with a relation making the routes homotopic.
fn triangle(relations: &[&str], action: Vec<(String, BTreeMap<i64, SparseMatrix>)>, fiber: CochainComplex) -> FibrationData {
    let base = BaseGraph::new(
        vec![s("x"), s("y"), s("z")],
        vec![
            (s("p"), s("x"), s("y")),
            (s("q"), s("y"), s("z")),
            (s("g"), s("x"), s("z")),
        ],
        &relations.iter().map(|r| s(r)).collect::<Vec<_>>(),
    )
    .unwrap();
    let md = MorseData::new(
        base,
        vec![(s("X"), 0, s("x")), (s("Y"), 1, s("y")), (s("Z"), 2, s("z"))],
        vec![
            (s("u"), s("X"), s("Y"), 1, s("p")),
            (s("v"), s("Y"), s("Z"), 1, s("q")),
            (s("gamma"), s("X"), s("Z"), 1, s("g")),
            (s("uv"), s("X"), s("Z"), 1, s("p q")),
        ],
    )
    .unwrap();
    FibrationData::new(md, fiber, action, vec![]).unwrap()
}

#[test]
fn composition_of_transports() {
    let f = Field::Rationals;
    let fd = triangle(&["p q g^-1"], vec![], circle_fiber(f));
    let r = transport_compose_check(&fd, "u", "v", "gamma").unwrap();
    assert!(r.holds() && r.chain_equal);
    let literal = transport_compose_check(&fd, "u", "v", "uv").unwrap();
    assert!(literal.holds() && literal.chain_equal);
    assert!(matches!(
        transport_compose_check(&fd, "v", "u", "gamma"),
        Err(MorseError::NotComposable(_))
    ));
    let undeclared = triangle(&[], vec![], circle_fiber(f));
    assert!(matches!(
        transport_compose_check(&undeclared, "u", "v", "gamma"),
        Err(MorseError::NotHomotopic { .. })
    ));
}

#[test]
fn chain_homotopic_transports_agree_on_cohomology() {
    // fiber: d x = y, plus a cocycle z; T(z) = z + y is a chain map and
    // differs from the identity only by an exact term
    let f = Field::Rationals;
    let fiber = CochainComplex::from_id_entries(
        f,
        vec![Generator::new("x", 0), Generator::new("y", 1), Generator::new("z", 1)],
        [(s("x"), s("y"), f.one())],
    )
    .unwrap();
    let t = BTreeMap::from([
        (0, SparseMatrix::identity(f, 1)),
        (1, SparseMatrix::from_rows_i64(f, &[&[1, 1], &[0, 1]])),
    ]);
    let fd = triangle(&["p q g^-1"], vec![(s("g"), t)], fiber);
    let r = transport_compose_check(&fd, "u", "v", "gamma").unwrap();
    assert!(r.cohomology_equal);
    assert!(!r.chain_equal);
    assert_eq!(r.chain_discrepancy, vec![1]);
}

#[test]
fn action_windows() {
    let f = Field::Rationals;
    let total = assemble_fibration(&hopf(f)).unwrap();
    // generators s*u, s*w, N*u, N*w with d(s*w) = N*u
    let af = ActionFiltration::new(total.clone(), vec![4, 3, 2, 1]).unwrap();
    let full = af.window(0, 10).unwrap();
    assert_eq!(full.sfc.complex().cohomology().total(), 2);
    let low = af.window(0, 3).unwrap();
    assert_eq!(low.generators, vec![2, 3]);
    let map = af.truncation_map((0, 3), (2, 10)).unwrap();
    let induced = map.on_pages().unwrap();
    assert_eq!(induced.map(1, 2, 0).rows(), 1);
    assert!(matches!(af.truncation_map((1, 5), (0, 5)), Err(MorseError::BadWindows { .. })));
    let increasing = ActionFiltration::new(total, vec![0, 0, 1, 0]);
    assert!(matches!(increasing, Err(MorseError::ActionNotDecreasing { .. })));
}
