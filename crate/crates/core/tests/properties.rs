use coble_core::exterior::{hodge_dual, plucker, wedge, wedge_vectors, AltTensor, Variance};
use coble_core::field::{Field, Fp, Ring};
use coble_core::linalg::{pfaffian, Matrix};
use coble_core::poly::UniPoly;
use coble_core::rep::{bbw, is_dominant, schur_dim, FlagType, Weight};
use coble_core::schubert::{integrate, parse_space};
use proptest::prelude::*;

type F101 = Fp<101>;

fn f(x: i64) -> F101 {
    F101::from_i64(x)
}

fn vector(len: usize) -> impl Strategy<Value = Vec<F101>> {
    proptest::collection::vec(0i64..101, len).prop_map(|v| v.into_iter().map(f).collect())
}

/// Block weights on `G(k,n)` with entries in `[-range, range]`.
fn grass_weight(k: usize, n: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (proptest::collection::vec(-range..=range, k), proptest::collection::vec(-range..=range, n - k)).prop_map(|(mut a, mut b)| {
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        vec![a, b]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in 0i64..101, b in 1i64..101, c in 0i64..101) {
        let (a, b, c) = (f(a), f(b), f(c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a / b) * b, a);
        prop_assert_eq!(b * b.inv().unwrap(), F101::one());
    }

    #[test]
    fn wedge_is_graded_commutative(u in vector(8), w in vector(8), x in vector(8)) {
        let a = AltTensor::from_vector(&u, Variance::Vector);
        let b = wedge(&AltTensor::from_vector(&w, Variance::Vector), &AltTensor::from_vector(&x, Variance::Vector)).unwrap();
        prop_assert_eq!(wedge(&a, &b).unwrap(), wedge(&b, &a).unwrap());
        prop_assert!(wedge(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn complement_duality_is_an_involution_in_degree_four(u in vector(8), w in vector(8), x in vector(8), y in vector(8)) {
        let t = wedge_vectors(&[&u, &w, &x, &y], 8, Variance::Vector);
        prop_assert_eq!(hodge_dual(&hodge_dual(&t)), t);
    }

    #[test]
    fn plucker_coordinates_satisfy_the_quadratic_relations(u in vector(8), w in vector(8)) {
        // p_ij p_kl − p_ik p_jl + p_il p_jk = 0 for the pairs in lexicographic order.
        let p = plucker(&u, &w);
        let pair = |i: usize, j: usize| p[(0..i).map(|r| 7 - r).sum::<usize>() + (j - i - 1)];
        for (i, j, k, l) in [(0, 1, 2, 3), (1, 3, 5, 7), (0, 2, 4, 6), (2, 3, 6, 7)] {
            prop_assert!((pair(i, j) * pair(k, l) - pair(i, k) * pair(j, l) + pair(i, l) * pair(j, k)).is_zero());
        }
    }

    #[test]
    fn pfaffian_squares_to_the_determinant(entries in vector(15)) {
        let mut m = Matrix::<F101>::zeros(6, 6);
        let mut it = entries.into_iter();
        let mut rows = m.rows_vec();
        for i in 0..6 {
            for j in i + 1..6 {
                let x = it.next().unwrap();
                rows[i][j] = x;
                rows[j][i] = -x;
            }
        }
        m = Matrix::from_rows(rows);
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(pf * pf, m.det());
    }

    #[test]
    fn rank_plus_nullity(rows in proptest::collection::vec(vector(7), 1..9)) {
        let m = Matrix::from_rows(rows);
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), 7);
    }

    #[test]
    fn cube_roots_of_cubes(g in vector(5)) {
        let g = UniPoly::new(g);
        prop_assume!(g.degree().is_some_and(|d| d > 0));
        let cube = g.clone() * g.clone() * g.clone();
        prop_assert_eq!(cube.perfect_cube_root().unwrap(), Some(g.monic()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// `H^i(E) ≅ H^{dim−i}(E^∨ ⊗ K)^∨` with `K = 𝒪(−n)` on `G(k,n)`.
    #[test]
    fn serre_duality_on_grassmannians(blocks in grass_weight(2, 8, 6)) {
        let g = FlagType::grassmannian(2, 8);
        let w = Weight::new(g.clone(), blocks).unwrap();
        let canonical = Weight::o(&g, -8);
        let dual = w.dual().twist(&canonical).unwrap();
        let dims = |w: &Weight| bbw(w).map(|c| (c.degree, schur_dim(&c.module, 8).unwrap()));
        match (dims(&w), dims(&dual)) {
            (None, None) => {}
            (Some((i, a)), Some((j, b))) => {
                prop_assert_eq!(i + j, g.dim());
                prop_assert_eq!(a, b);
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bbw_output_is_an_irreducible_module(blocks in grass_weight(3, 7, 5)) {
        let g = FlagType::grassmannian(3, 7);
        let w = Weight::new(g.clone(), blocks).unwrap();
        if let Some(c) = bbw(&w) {
            prop_assert!(is_dominant(&c.module));
            prop_assert!(c.degree <= g.dim());
            if is_dominant(&w.gl_weight()) {
                prop_assert_eq!(c.degree, 0);
                prop_assert_eq!(c.module, w.gl_weight());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn localization_is_independent_of_the_torus(seed in any::<u64>()) {
        let g24 = parse_space("G:2:4").unwrap();
        prop_assert_eq!(integrate(&"c1(dual(U2))^4".parse().unwrap(), &g24, seed).unwrap().as_i64(), Some(2));
        let p3 = parse_space("P:3").unwrap();
        prop_assert_eq!(integrate(&"c3(T)".parse().unwrap(), &p3, seed).unwrap().as_i64(), Some(4));
    }
}
