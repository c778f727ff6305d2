use conserva_core::biderivations::split_symmetric;
use conserva_core::exactnum::{kernel_basis, rank, rref, subspace_equal, RowBuilder, SparseEchelon};
use conserva_core::kantor::{bracket, kantor_product};
use conserva_core::{Algebra, BilinearMap, RatMatrix, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), len)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    vector(rows * cols).prop_map(move |v| RatMatrix::from_vec(rows, cols, v).unwrap())
}

fn any_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn bilinear(dim: usize) -> impl Strategy<Value = BilinearMap> {
    vector(dim * dim * dim).prop_map(move |v| BilinearMap::from_flat(dim, v).unwrap())
}

fn axpy(a: &Rational, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(p, q)| a * p + q).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_parse_display_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let q = Rational::new(n, d);
        prop_assert_eq!(q.to_string().parse::<Rational>().unwrap(), q);
    }

    #[test]
    fn rref_is_idempotent(a in any_matrix()) {
        let (r, pivots) = rref(&a);
        prop_assert_eq!(rref(&r), (r.clone(), pivots));
        prop_assert_eq!(rank(&r), rank(&a));
    }

    #[test]
    fn kernel_vectors_are_annihilated_and_rank_nullity_holds(a in any_matrix()) {
        let kernel = kernel_basis(&a);
        for v in &kernel {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Rational::is_zero));
        }
        prop_assert_eq!(rank(&a) + kernel.len(), a.cols());
    }

    #[test]
    fn sparse_elimination_matches_dense_kernel(a in any_matrix()) {
        let mut e = SparseEchelon::new(a.cols());
        for r in 0..a.rows() {
            let mut b = RowBuilder::new();
            for (c, x) in a.row(r).iter().enumerate() {
                b.add_ref(c, x);
            }
            e.insert(b.finish());
        }
        prop_assert_eq!(e.rank(), rank(&a));
        prop_assert_eq!(e.kernel_basis(), kernel_basis(&a));
    }

    #[test]
    fn subspace_equality_is_reflexive_and_ignores_scaling(a in matrix(3, 4), s in rational()) {
        let rows: Vec<Vec<Rational>> = (0..3).map(|r| a.row(r).to_vec()).collect();
        prop_assert!(subspace_equal(&rows, &rows, 4).unwrap());
        if !s.is_zero() {
            let scaled: Vec<Vec<Rational>> =
                rows.iter().map(|r| r.iter().map(|x| x * &s).collect()).collect();
            prop_assert!(subspace_equal(&scaled, &rows, 4).unwrap());
        }
    }

    #[test]
    fn multiply_is_bilinear(
        t in bilinear(3),
        x in vector(3),
        y in vector(3),
        z in vector(3),
        a in rational(),
    ) {
        let alg = Algebra::with_default_labels("p", t);
        let lhs = alg.multiply(&axpy(&a, &x, &y), &z).unwrap();
        let rhs = axpy(&a, &alg.multiply(&x, &z).unwrap(), &alg.multiply(&y, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
        let lhs = alg.multiply(&z, &axpy(&a, &x, &y)).unwrap();
        let rhs = axpy(&a, &alg.multiply(&z, &x).unwrap(), &alg.multiply(&z, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_multiplication_matrix_agrees_with_product(t in bilinear(3), x in vector(3), y in vector(3)) {
        let alg = Algebra::with_default_labels("p", t);
        let l = alg.left_mul_matrix(&x).unwrap();
        prop_assert_eq!(l.mul_vec(&y).unwrap(), alg.multiply(&x, &y).unwrap());
        let r = alg.right_mul_matrix(&y).unwrap();
        prop_assert_eq!(r.mul_vec(&x).unwrap(), alg.multiply(&x, &y).unwrap());
    }

    #[test]
    fn bracket_is_linear_in_both_arguments(
        m1 in matrix(2, 2),
        m2 in matrix(2, 2),
        n1 in bilinear(2),
        n2 in bilinear(2),
        a in rational(),
    ) {
        let m = m1.scale(&a).add(&m2).unwrap();
        let lhs = bracket(&m, &n1).unwrap();
        let rhs = bracket(&m1, &n1).unwrap().scale(&a).add(&bracket(&m2, &n1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let n = n1.scale(&a).add(&n2).unwrap();
        let lhs = bracket(&m1, &n).unwrap();
        let rhs = bracket(&m1, &n1).unwrap().scale(&a).add(&bracket(&m1, &n2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_bracket_negates(n in bilinear(2)) {
        prop_assert_eq!(bracket(&RatMatrix::identity(2), &n).unwrap(), n.scale(&Rational::from(-1)));
    }

    #[test]
    fn kantor_product_is_bilinear(
        m1 in bilinear(2),
        m2 in bilinear(2),
        n in bilinear(2),
        a in rational(),
        e in vector(2),
    ) {
        let m = m1.scale(&a).add(&m2).unwrap();
        let lhs = kantor_product(&m, &n, &e).unwrap();
        let rhs = kantor_product(&m1, &n, &e)
            .unwrap()
            .scale(&a)
            .add(&kantor_product(&m2, &n, &e).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn split_reconstructs_twice_the_map(t in bilinear(3)) {
        let (plus, minus) = split_symmetric(&t);
        prop_assert!(plus.is_symmetric());
        prop_assert!(minus.is_skew());
        prop_assert_eq!(plus.add(&minus).unwrap(), t.scale(&Rational::from(2)));
    }

    #[test]
    fn algebra_json_round_trips(t in bilinear(3)) {
        let alg = Algebra::with_default_labels("round-trip", t);
        let doc = alg.to_json();
        let back = Algebra::from_json(&doc).unwrap();
        prop_assert_eq!(back.to_json(), doc);
        prop_assert_eq!(back, alg);
    }
}
