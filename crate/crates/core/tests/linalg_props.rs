use frobcat::linalg::{Field, Matrix, Subspace};
use proptest::prelude::*;

fn small_matrix(max: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-4i64..=4, r * c)))
}

/// Rank by counting the image of every vector over F_p.
fn brute_rank(m: &Matrix, p: u64) -> usize {
    let f = m.field();
    let n = m.cols();
    let mut images = std::collections::BTreeSet::new();
    for code in 0..p.pow(n as u32) {
        let mut c = code;
        let entries: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % p) as i64;
                c /= p;
                d
            })
            .collect();
        let v = Matrix::from_i64(f, n, 1, &entries);
        images.insert(m.mul(&v).canonical_string());
    }
    let mut r = 0;
    while (p as usize).pow(r as u32) < images.len() {
        r += 1;
    }
    r
}

proptest! {
    #[test]
    fn rank_matches_brute_force_over_f3((r, c, e) in small_matrix(4)) {
        let f = Field::prime(3).unwrap();
        let m = Matrix::from_i64(f, r, c, &e);
        prop_assert_eq!(m.rank(), brute_rank(&m, 3));
    }

    #[test]
    fn rank_nullity_and_kernel((r, c, e) in small_matrix(5), rational in any::<bool>()) {
        let f = if rational { Field::Rational } else { Field::prime(7).unwrap() };
        let m = Matrix::from_i64(f, r, c, &e);
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), c);
        for v in &ker {
            prop_assert!(m.mul(v).is_zero());
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_reproduces_consistent_rhs((r, c, e) in small_matrix(5), x in proptest::collection::vec(-3i64..=3, 5)) {
        let f = Field::Rational;
        let m = Matrix::from_i64(f, r, c, &e);
        let x0 = Matrix::from_i64(f, c, 1, &x[..c]);
        let b = m.mul(&x0);
        let sol = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul(&sol), b);
    }

    #[test]
    fn inverse_is_two_sided(n in 1usize..5, e in proptest::collection::vec(-3i64..=3, 16)) {
        let f = Field::prime(5).unwrap();
        let m = Matrix::from_i64(f, n, n, &e[..n * n]);
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(inv.mul(&m).is_identity());
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn rref_is_idempotent((r, c, e) in small_matrix(5)) {
        let m = Matrix::from_i64(Field::Rational, r, c, &e);
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn subspace_contains_its_spanning_rows((r, c, e) in small_matrix(5)) {
        let f = Field::prime(2).unwrap();
        let m = Matrix::from_i64(f, r, c, &e);
        let s = Subspace::from_matrix(&m);
        prop_assert_eq!(s.dim(), m.rank());
        for i in 0..r {
            prop_assert!(s.contains(&m.row(i)));
            prop_assert!(s.reduce(&m.row(i)).is_zero());
        }
    }

    #[test]
    fn kron_mixed_product(a in proptest::collection::vec(-3i64..=3, 4), b in proptest::collection::vec(-3i64..=3, 4),
                          c in proptest::collection::vec(-3i64..=3, 4), d in proptest::collection::vec(-3i64..=3, 4)) {
        let f = Field::Rational;
        let m = |v: &[i64]| Matrix::from_i64(f, 2, 2, v);
        let (a, b, c, d) = (m(&a), m(&b), m(&c), m(&d));
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }
}
