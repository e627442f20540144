use super::*;
use crate::exact::SparseMatrix;
use crate::field::Field;

fn s(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn edges(v: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
    v.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect()
}

fn mat(f: Field, rows: &[&[i64]]) -> SparseMatrix {
    SparseMatrix::from_rows_i64(f, rows)
}

fn torus() -> BaseGraph {
    BaseGraph::new(s(&["x"]), edges(&[("a", "x", "x"), ("b", "x", "x")]), &s(&["a b a^-1 b^-1"])).unwrap()
}

fn circle() -> BaseGraph {
    BaseGraph::new(s(&["v"]), edges(&[("e", "v", "v")]), &[]).unwrap()
}

#[test]
fn parses_and_formats_words() {
    let g = torus();
    let w = g.parse_word("a b a^-1 b^-1").unwrap();
    assert!(w.is_loop());
    assert_eq!(g.format_word(&w), "a b a^-1 b^-1");
    assert_eq!(g.format_word(&w.inverse()), "b a b^-1 a^-1");
    assert!(matches!(g.parse_word("c"), Err(LocalSystemError::UnknownEdge(_))));
    let line = BaseGraph::new(s(&["p", "q"]), edges(&[("t", "p", "q")]), &[]).unwrap();
    assert!(matches!(line.parse_word("t t"), Err(LocalSystemError::NotComposable { step: 1 })));
    assert!(matches!(
        BaseGraph::new(s(&["p", "q"]), edges(&[("t", "p", "q")]), &s(&["t"])),
        Err(LocalSystemError::OpenRelation(0))
    ));
}

#[test]
fn constant_and_backtracking_paths() {
    let f = Field::Prime(5);
    let g = BaseGraph::new(s(&["p", "q"]), edges(&[("t", "p", "q")]), &[]).unwrap();
    let ls = LocalSystem::new(g.clone(), f, 2, vec![mat(f, &[&[1, 2], &[0, 3]])]).unwrap();
    let id = SparseMatrix::identity(f, 2);
    assert_eq!(ls.transport(&g.constant(0)).unwrap(), id);
    assert_eq!(ls.transport(&g.parse_word("t t^-1").unwrap()).unwrap(), id);
}

#[test]
fn circle_sign_squared() {
    let f = Field::Rationals;
    let g = circle();
    let ls = LocalSystem::new(g.clone(), f, 1, vec![mat(f, &[&[-1]])]).unwrap();
    assert_eq!(ls.transport(&g.parse_word("e e").unwrap()).unwrap(), mat(f, &[&[1]]));
    assert_eq!(ls.transport(&g.parse_word("e").unwrap()).unwrap(), mat(f, &[&[-1]]));
}

#[test]
fn order_of_composition() {
    let f = Field::Rationals;
    let g = BaseGraph::new(
        s(&["p", "q", "r"]),
        edges(&[("u", "p", "q"), ("w", "q", "r")]),
        &[],
    )
    .unwrap();
    let a = mat(f, &[&[1, 1], &[0, 1]]);
    let b = mat(f, &[&[0, 1], &[1, 0]]);
    let ls = LocalSystem::new(g.clone(), f, 2, vec![a.clone(), b.clone()]).unwrap();
    assert_eq!(ls.transport(&g.parse_word("u w").unwrap()).unwrap(), b.mul(&a).unwrap());
}

#[test]
fn homotopy_invariance_on_torus() {
    let f = Field::Prime(3);
    let g = torus();
    assert!(LocalSystem::trivial(g.clone(), f, 2).check_homotopy_invariance().is_ok());
    let a = mat(f, &[&[1, 1], &[0, 1]]);
    let commuting = mat(f, &[&[1, 2], &[0, 1]]);
    assert!(LocalSystem::new(g.clone(), f, 2, vec![a.clone(), commuting]).is_ok());
    let b = mat(f, &[&[1, 0], &[1, 1]]);
    let raw = LocalSystem::raw(g.clone(), f, 2, vec![a.clone(), b.clone()]).unwrap();
    let bad = raw.check_homotopy_invariance().unwrap_err();
    assert_eq!(g.format_word(&bad), "a b a^-1 b^-1");
    assert!(matches!(
        LocalSystem::new(g, f, 2, vec![a, b]),
        Err(LocalSystemError::HomotopyViolated { .. })
    ));
}

#[test]
fn rejects_singular_transport() {
    let f = Field::Prime(2);
    assert!(matches!(
        LocalSystem::new(circle(), f, 2, vec![mat(f, &[&[1, 1], &[1, 1]])]),
        Err(LocalSystemError::BadTransport(_))
    ));
}

#[test]
fn extension_of_a_full_subsystem_is_itself() {
    let f = Field::Prime(3);
    let g = torus();
    let a = mat(f, &[&[1, 1], &[0, 1]]);
    let b = mat(f, &[&[2, 0], &[0, 2]]);
    let ls = LocalSystem::new(g.clone(), f, 2, vec![a, b]).unwrap();
    let paths = vec![g.parse_word("a").unwrap(), g.parse_word("b").unwrap()];
    let sub = LocalSubsystem::restricted(&ls, &s(&["x"]), paths).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    assert_eq!(report.surjective, Surjectivity::Surjective);
    assert_eq!(report.extension.as_ref(), Some(&ls));
}

fn theta() -> BaseGraph {
    // two vertices joined by three edges: a wedge of two circles up to homotopy
    BaseGraph::new(
        s(&["p", "q"]),
        edges(&[("t", "p", "q"), ("u", "q", "p"), ("w", "q", "p")]),
        &[],
    )
    .unwrap()
}

#[test]
fn wedge_of_two_circles_extends_uniquely() {
    let f = Field::Rationals;
    let g = theta();
    let ls = LocalSystem::new(
        g.clone(),
        f,
        2,
        vec![
            mat(f, &[&[1, 0], &[0, 1]]),
            mat(f, &[&[1, 1], &[0, 1]]),
            mat(f, &[&[0, -1], &[1, 0]]),
        ],
    )
    .unwrap();
    // carrier {p}: the two loops t u and t w, and nothing on the edges themselves
    let paths = vec![g.parse_word("t u").unwrap(), g.parse_word("t w").unwrap()];
    let sub = LocalSubsystem::restricted(&ls, &s(&["p"]), paths).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    assert_eq!(report.surjective, Surjectivity::Surjective);
    assert_eq!(report.base_generators.len(), 2);
    let ext = report.extension.unwrap();
    for (p, m) in sub.generators() {
        assert_eq!(ext.transport(p).unwrap(), *m);
    }
    // the extension agrees with ls up to a change of frame at q
    let frame = ext.transport(&g.parse_word("t").unwrap()).unwrap();
    for e in ["u", "w"] {
        let loop_ = g.parse_word(&format!("t {e}")).unwrap();
        assert_eq!(ext.transport(&loop_).unwrap(), ls.transport(&loop_).unwrap());
    }
    assert!(frame.inverse().is_some());
}

#[test]
fn squares_do_not_generate() {
    let f = Field::Rationals;
    let g = circle();
    let ls = LocalSystem::new(g.clone(), f, 1, vec![mat(f, &[&[2]])]).unwrap();
    let sub = LocalSubsystem::restricted(&ls, &s(&["v"]), vec![g.parse_word("e e").unwrap()]).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    assert_eq!(report.surjective, Surjectivity::NotSurjective);
    assert!(report.extension.is_none());
}

#[test]
fn proper_subgroups_of_the_torus() {
    let f = Field::Rationals;
    let g = torus();
    let ls = LocalSystem::trivial(g.clone(), f, 1);
    for w in ["a a", "a a a"] {
        let sub = LocalSubsystem::restricted(
            &ls,
            &s(&["x"]),
            vec![g.parse_word(w).unwrap(), g.parse_word("b").unwrap()],
        )
        .unwrap();
        let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
        assert_eq!(report.surjective, Surjectivity::NotSurjective);
    }
}

#[test]
fn free_group_subgroup_with_full_abelian_image() {
    // ⟨a, b a b⁻¹ a⁻¹ b⟩ maps onto Z² but is a proper subgroup of the free group
    let f = Field::Prime(2);
    let g = BaseGraph::new(s(&["x"]), edges(&[("a", "x", "x"), ("b", "x", "x")]), &[]).unwrap();
    let ls = LocalSystem::trivial(g.clone(), f, 1);
    let paths = vec![g.parse_word("a").unwrap(), g.parse_word("b a b^-1 a^-1 b").unwrap()];
    let sub = LocalSubsystem::restricted(&ls, &s(&["x"]), paths).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    assert_eq!(report.surjective, Surjectivity::NotSurjective);

    // adding b makes it everything
    let paths = vec![g.parse_word("b a b^-1 a^-1 b").unwrap(), g.parse_word("a b").unwrap(), g.parse_word("a").unwrap()];
    let sub = LocalSubsystem::restricted(&ls, &s(&["x"]), paths).unwrap();
    assert_eq!(extend_subsystem(&sub, 0).unwrap().surjective, Surjectivity::Surjective);
}

#[test]
fn non_abelian_coset_enumeration() {
    // S_3 = ⟨a, b | a², b², (ab)³⟩: ⟨a⟩ has index 3 yet maps onto the abelianization
    let f = Field::Rationals;
    let g = BaseGraph::new(
        s(&["x"]),
        edges(&[("a", "x", "x"), ("b", "x", "x")]),
        &s(&["a a", "b b", "a b a b a b"]),
    )
    .unwrap();
    let sign = mat(f, &[&[-1]]);
    let ls = LocalSystem::new(g.clone(), f, 1, vec![sign.clone(), sign]).unwrap();
    let paths = vec![g.parse_word("a").unwrap()];
    let sub = LocalSubsystem::restricted(&ls, &s(&["x"]), paths).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    assert_eq!(report.surjective, Surjectivity::NotSurjective);

    let paths = vec![g.parse_word("a").unwrap(), g.parse_word("a b").unwrap()];
    let sub = LocalSubsystem::restricted(&ls, &s(&["x"]), paths).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    assert_eq!(report.surjective, Surjectivity::Surjective);
    assert_eq!(report.extension, Some(ls));
}

#[test]
fn disconnected_support_is_rejected() {
    let f = Field::Prime(2);
    let g = BaseGraph::new(s(&["p", "q"]), edges(&[("t", "p", "q")]), &[]).unwrap();
    let ls = LocalSystem::trivial(g, f, 1);
    let sub = LocalSubsystem::restricted(&ls, &s(&["p", "q"]), vec![]).unwrap();
    assert!(matches!(
        extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH),
        Err(LocalSystemError::DisconnectedSupport)
    ));
}

#[test]
fn relations_are_needed_for_surjectivity() {
    // Z/3 presented on one loop with e³ = 1; the loop e⁻¹ ... e² = e⁻¹ generates
    let f = Field::Prime(7);
    let g = BaseGraph::new(s(&["v"]), edges(&[("e", "v", "v")]), &s(&["e e e"])).unwrap();
    let ls = LocalSystem::new(g.clone(), f, 1, vec![mat(f, &[&[2]])]).unwrap();
    let sub = LocalSubsystem::restricted(&ls, &s(&["v"]), vec![g.parse_word("e e").unwrap()]).unwrap();
    let report = extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH).unwrap();
    assert_eq!(report.surjective, Surjectivity::Surjective);
    assert_eq!(report.extension, Some(ls));
}

#[test]
fn inconsistent_subsystem_is_reported() {
    let f = Field::Rationals;
    let g = circle();
    let sub = LocalSubsystem::new(
        g.clone(),
        f,
        1,
        &s(&["v"]),
        vec![
            (g.parse_word("e").unwrap(), mat(f, &[&[2]])),
            (g.parse_word("e e").unwrap(), mat(f, &[&[3]])),
        ],
    )
    .unwrap();
    assert!(matches!(
        extend_subsystem(&sub, DEFAULT_SEARCH_DEPTH),
        Err(LocalSystemError::HomotopyViolated { .. })
    ));
}

#[test]
fn change_of_base_point_conjugates() {
    let f = Field::Prime(3);
    let g = theta();
    let ls = LocalSystem::new(
        g.clone(),
        f,
        2,
        vec![
            mat(f, &[&[1, 1], &[0, 1]]),
            mat(f, &[&[2, 0], &[1, 1]]),
            mat(f, &[&[0, 1], &[1, 0]]),
        ],
    )
    .unwrap();
    let paths = vec![g.parse_word("t").unwrap(), g.parse_word("u").unwrap(), g.parse_word("w").unwrap()];
    let sub = LocalSubsystem::restricted(&ls, &s(&["p", "q"]), paths).unwrap();
    let at_p = extend_subsystem_at(&sub, 0, DEFAULT_SEARCH_DEPTH).unwrap();
    let at_q = extend_subsystem_at(&sub, 1, DEFAULT_SEARCH_DEPTH).unwrap();
    let ext = at_p.extension.unwrap();
    assert_eq!(Some(&ext), at_q.extension.as_ref());
    let gamma = g.parse_word("t").unwrap();
    let conj = ext.transport(&gamma).unwrap();
    let conj_inv = conj.inverse().unwrap();
    for (lp, img) in at_p.subsystem_loops.iter().zip(&at_p.subsystem_images) {
        let moved = gamma.inverse().then(lp).unwrap().then(&gamma).unwrap();
        let expected = conj.mul(img).unwrap().mul(&conj_inv).unwrap();
        assert_eq!(ext.transport(&moved).unwrap(), expected);
    }
}
