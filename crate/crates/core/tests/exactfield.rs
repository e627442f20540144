use fibseq::exact::{subquotient_dim, SparseMatrix, SparseVec, Subquotient, Subspace};
use fibseq::Field;
use fibseq_acceptance::{to_sparse, Oracle, V};
use num_bigint::BigInt;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(7)),
        Just(Field::Prime(4_294_967_291)),
        Just(Field::Rationals),
    ]
}

fn scalar(field: Field, n: i64, d: i64) -> fibseq::Scalar {
    field
        .from_ratio(&BigInt::from(n), &BigInt::from(d))
        .unwrap_or_else(|| field.from_i64(n))
}

/// `(field, rows, cols, entries)` with small integer entries and some zeros.
fn matrix() -> impl Strategy<Value = (Field, usize, usize, Vec<i64>)> {
    (field(), 0usize..7, 0usize..7).prop_flat_map(|(f, r, c)| {
        (Just(f), Just(r), Just(c), prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..4], r * c))
    })
}

fn build(f: Field, rows: usize, cols: usize, data: &[i64]) -> (SparseMatrix, Vec<Vec<V>>) {
    let o = Oracle::of(f);
    let dense: Vec<Vec<V>> = (0..rows).map(|i| (0..cols).map(|j| o.int(data[i * cols + j])).collect()).collect();
    let m = SparseMatrix::from_triplets(
        f,
        rows,
        cols,
        (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j, f.from_i64(data[i * cols + j])))).collect::<Vec<_>>(),
    )
    .unwrap();
    (m, dense)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(f in field(), a in (-40i64..40, 1i64..9), b in (-40i64..40, 1i64..9), c in (-40i64..40, 1i64..9)) {
        let (a, b, c) = (scalar(f, a.0, a.1), scalar(f, b.0, b.1), scalar(f, c.0, c.1));
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.zero()), a.clone());
        prop_assert_eq!(f.mul(&a, &f.one()), a.clone());
        prop_assert!(f.is_zero(&f.sub(&a, &a)));
        if !f.is_zero(&a) {
            prop_assert_eq!(f.div(&b, &a).map(|q| f.mul(&q, &a)), Some(b.clone()));
        } else {
            prop_assert!(f.inv(&a).is_none());
        }
    }

    #[test]
    fn integers_embed(f in field(), m in -10_000i64..10_000, n in -10_000i64..10_000) {
        prop_assert_eq!(f.add(&f.from_i64(m), &f.from_i64(n)), f.from_i64(m + n));
        prop_assert_eq!(f.mul(&f.from_i64(m), &f.from_i64(n)), f.from_i64(m * n));
        let p = f.characteristic();
        if p > 0 {
            prop_assert!(f.is_zero(&f.from_i64(p as i64)));
        }
    }

    #[test]
    fn printing_round_trips(f in field(), n in -1000i64..1000, d in 1i64..30) {
        let a = scalar(f, n, d);
        prop_assert_eq!(f.parse_scalar(&f.format_scalar(&a)).unwrap(), a.clone());
        if let Field::Prime(p) = f {
            let text = f.format_scalar(&a);
            let v: u64 = text.parse().unwrap();
            prop_assert!(v < p, "residues print least nonnegative");
        }
    }

    #[test]
    fn rank_matches_dense_elimination((f, r, c, data) in matrix()) {
        let (m, dense) = build(f, r, c, &data);
        let o = Oracle::of(f);
        prop_assert_eq!(m.rank(), o.rank(&dense));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn kernel_is_a_basis_of_the_null_space((f, r, c, data) in matrix()) {
        let (m, dense) = build(f, r, c, &data);
        let o = Oracle::of(f);
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len(), c - o.rank(&dense));
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        let span = Subspace::span(f, c, kernel.iter().cloned());
        prop_assert_eq!(span.dimension(), kernel.len());
    }

    #[test]
    fn solve_agrees_with_augmented_rank((f, r, c, data) in matrix(), rhs in prop::collection::vec(-2i64..3, 7)) {
        let (m, dense) = build(f, r, c, &data);
        let o = Oracle::of(f);
        let b = SparseVec::from_dense(f, &rhs[..r].iter().map(|x| f.from_i64(*x)).collect::<Vec<_>>());
        let augmented: Vec<Vec<V>> = dense.iter().zip(&rhs).map(|(row, x)| {
            let mut row = row.clone();
            row.push(o.int(*x));
            row
        }).collect();
        let solvable = o.rank(&augmented) == o.rank(&dense);
        match m.solve(&b).unwrap() {
            Some(x) => {
                prop_assert!(solvable);
                prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
            }
            None => prop_assert!(!solvable),
        }
    }

    #[test]
    fn inverse_of_random_invertible(seed in any::<u64>(), f in field(), n in 1usize..6) {
        let mut rng = fibseq_acceptance::rng(seed);
        let dense = fibseq_acceptance::random_invertible(&mut rng, f, n);
        let m = to_sparse(f, &dense);
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.mul(&inv).unwrap(), SparseMatrix::identity(f, n));
        prop_assert_eq!(inv, to_sparse(f, &Oracle::of(f).inverse(&dense)));
    }

    #[test]
    fn subspace_dimensions((f, r, c, data) in matrix(), cut in 0usize..7) {
        // column space of the first `cut` columns inside that of all columns
        let (m, dense) = build(f, r, c, &data);
        let o = Oracle::of(f);
        let cut = cut.min(c);
        let all = Subspace::column_space(&m);
        let cols: Vec<usize> = (0..cut).collect();
        let rows: Vec<usize> = (0..r).collect();
        let part = Subspace::column_space(&m.submatrix(&rows, &cols));
        prop_assert!(all.contains_subspace(&part));
        let first: Vec<Vec<V>> = dense.iter().map(|row| row[..cut].to_vec()).collect();
        let expected = o.rank(&dense) - o.rank(&first);
        prop_assert_eq!(Subquotient::new(all.clone(), part.clone()).unwrap().dimension(), expected);
        prop_assert_eq!(subquotient_dim(&m, &m.submatrix(&rows, &cols)).unwrap(), expected);
        prop_assert_eq!(all.intersection(&part).dimension(), part.dimension());
        prop_assert_eq!(all.sum(&part).dimension(), all.dimension());
    }
}

#[test]
fn composite_moduli_are_refused() {
    assert!(Field::prime(91).is_err());
    assert!("F1".parse::<Field>().is_err());
}
