use cartprod::graph::generate::random_connected;
use cartprod::graph::{distance_cartesian_check, is_transmission_regular, wiener_index};
use cartprod::identities::{cartesian_factorize, equality_shift};
use cartprod::spectral::{inertia, jacobi_eigenvalues, DEFAULT_TOL};
use cartprod::{cartesian_chain, commutation_matrix, Dims, ExactMatrix, Gaussian, Graph, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gaussian() -> impl Strategy<Value = Gaussian> {
    (-9i64..=9, -9i64..=9).prop_map(|(re, im)| Gaussian::new(re, im))
}

fn square(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(gaussian(), n * n)
        .prop_map(move |v| ExactMatrix::from_vec(n, n, v).unwrap())
}

fn any_square(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max).prop_flat_map(square)
}

fn real_symmetric(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
        ExactMatrix::from_fn(n, n, |i, j| Gaussian::real(v[i.min(j) * n + i.max(j)])).unwrap()
    })
}

fn connected_pair() -> impl Strategy<Value = (Graph, Graph)> {
    (1usize..=6, 1usize..=6, 0.0f64..0.7, any::<u64>()).prop_map(|(m, n, p, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (
            random_connected(m, p, &mut rng).unwrap(),
            random_connected(n, p, &mut rng).unwrap(),
        )
    })
}

/// Eigenvalues of a real symmetric matrix of order ≤ 3 from the
/// characteristic polynomial, descending.
fn closed_form_eigenvalues(m: &ExactMatrix) -> Vec<f64> {
    let a = |i: usize, j: usize| m.get(i, j).re as f64;
    let mut roots = match m.rows() {
        1 => vec![a(0, 0)],
        2 => {
            let (tr, det) = (a(0, 0) + a(1, 1), a(0, 0) * a(1, 1) - a(0, 1) * a(0, 1));
            let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
            vec![(tr + disc) / 2.0, (tr - disc) / 2.0]
        }
        3 => {
            let p1 = a(0, 1).powi(2) + a(0, 2).powi(2) + a(1, 2).powi(2);
            let q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
            if p1 == 0.0 {
                vec![a(0, 0), a(1, 1), a(2, 2)]
            } else {
                let p2 = (a(0, 0) - q).powi(2)
                    + (a(1, 1) - q).powi(2)
                    + (a(2, 2) - q).powi(2)
                    + 2.0 * p1;
                let p = (p2 / 6.0).sqrt();
                let b = |i: usize, j: usize| (a(i, j) - if i == j { q } else { 0.0 }) / p;
                let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
                    - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
                    + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
                let phi = (det / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
                let l1 = q + 2.0 * p * phi.cos();
                let l3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
                vec![l1, 3.0 * q - l1 - l3, l3]
            }
        }
        _ => unreachable!(),
    };
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cartesian_is_kron_sum(a in any_square(3), b in any_square(3)) {
        let (m, n) = (a.rows(), b.rows());
        let sum = a.kron(&ExactMatrix::ones(n, n).unwrap()).unwrap()
            .add(&ExactMatrix::ones(m, m).unwrap().kron(&b).unwrap()).unwrap();
        prop_assert_eq!(a.cartesian(&b).unwrap(), sum);
    }

    #[test]
    fn products_are_associative(a in any_square(3), b in any_square(3), c in any_square(2)) {
        prop_assert_eq!(
            a.cartesian(&b).unwrap().cartesian(&c).unwrap(),
            a.cartesian(&b.cartesian(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.kron(&b).unwrap().kron(&c).unwrap(), a.kron(&b.kron(&c).unwrap()).unwrap());
    }

    #[test]
    fn mixed_product_and_kron_trace(n in 1usize..=3, p in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |k: usize| {
            use rand::Rng;
            ExactMatrix::from_fn(k, k, |_, _| Gaussian::new(rng.random_range(-9..=9), rng.random_range(-9..=9))).unwrap()
        };
        let (a, c, b, d) = (draw(n), draw(n), draw(p), draw(p));
        prop_assert_eq!(
            a.kron(&b).unwrap().matmul(&c.kron(&d).unwrap()).unwrap(),
            a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.kron(&b).unwrap().trace().unwrap(),
            a.trace().unwrap().checked_mul(b.trace().unwrap()).unwrap()
        );
    }

    #[test]
    fn transpose_distributes_over_chains(fs in prop::collection::vec(any_square(3), 1..=3)) {
        let t: Vec<_> = fs.iter().map(ExactMatrix::transpose).collect();
        prop_assert_eq!(cartesian_chain(&fs).unwrap().transpose(), cartesian_chain(&t).unwrap());
        let h: Vec<_> = fs.iter().map(|f| f.conj_transpose().unwrap()).collect();
        prop_assert_eq!(cartesian_chain(&fs).unwrap().conj_transpose().unwrap(), cartesian_chain(&h).unwrap());
    }

    #[test]
    fn entry_sum_formula(a in any_square(4), b in any_square(4)) {
        let (m, n) = (a.rows() as i64, b.rows() as i64);
        let expected = Gaussian::real(n * n).checked_mul(a.entry_sum().unwrap()).unwrap()
            .checked_add(Gaussian::real(m * m).checked_mul(b.entry_sum().unwrap()).unwrap()).unwrap();
        prop_assert_eq!(a.cartesian(&b).unwrap().entry_sum().unwrap(), expected);
    }

    #[test]
    fn commutation_matrix_is_orthogonal_and_swaps(a in any_square(4), b in any_square(4)) {
        let (m, n) = (a.rows(), b.rows());
        let p = commutation_matrix::<Gaussian>(Dims::new(m, n).unwrap()).unwrap();
        let pt = p.transpose();
        prop_assert_eq!(pt.matmul(&p).unwrap(), ExactMatrix::identity(m * n).unwrap());
        prop_assert_eq!(pt.matmul(&a.cartesian(&b).unwrap()).unwrap().matmul(&p).unwrap(), b.cartesian(&a).unwrap());
    }

    #[test]
    fn factorize_round_trip(a in any_square(4), b in any_square(4)) {
        let (m, n) = (a.rows(), b.rows());
        let product = a.cartesian(&b).unwrap();
        let (x, y) = cartesian_factorize(&product, Dims::new(m, n).unwrap()).unwrap().unwrap();
        let b11 = b.get(0, 0);
        prop_assert_eq!(x.cartesian(&y).unwrap(), product);
        prop_assert_eq!(x, a.shift(b11).unwrap());
        prop_assert_eq!(y, b.shift(b11.checked_neg().unwrap()).unwrap());
    }

    #[test]
    fn equality_shift_iff(a in any_square(3), b in any_square(3), k in gaussian(), noise in 0usize..3) {
        let (m, n) = (a.rows(), b.rows());
        let c = a.shift(k.checked_neg().unwrap()).unwrap();
        let mut d = b.shift(k).unwrap();
        if noise == 0 {
            d.set(n - 1, 0, d.get(n - 1, 0).checked_add(Gaussian::real(1)).unwrap());
        }
        let equal = a.cartesian(&b).unwrap() == c.cartesian(&d).unwrap();
        let witness = equality_shift(&a, &b, &c, &d).unwrap();
        prop_assert_eq!(equal, witness.is_some());
        prop_assert_eq!(equal, noise != 0);
        prop_assert_eq!(m, c.rows());
    }

    #[test]
    fn inertia_sums_to_order_and_is_permutation_invariant(
        m in (1usize..=6).prop_flat_map(real_symmetric),
        perm_seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let p = ExactMatrix::from_fn(n, n, |i, j| Gaussian::real((perm[i] == j) as i64)).unwrap();
        let permuted = p.transpose().matmul(&m).unwrap().matmul(&p).unwrap();
        let tol = 1e-7 * n as f64 * m.max_modulus();
        let before = inertia(&m, tol).unwrap();
        prop_assert_eq!(before.order(), n);
        prop_assert_eq!(before, inertia(&permuted, tol).unwrap());
    }

    #[test]
    fn jacobi_matches_closed_form_roots(m in (1usize..=3).prop_flat_map(real_symmetric)) {
        let got = jacobi_eigenvalues(&m, DEFAULT_TOL).unwrap().eigenvalues;
        let want = closed_form_eigenvalues(&m);
        for (x, y) in got.iter().zip(&want) {
            prop_assert!((x - y).abs() <= 1e-8, "{:?} vs {:?}", got, want);
        }
    }

    #[test]
    fn graph_product_identities((g, h) in connected_pair()) {
        prop_assert!(distance_cartesian_check(&g, &h).unwrap());
        let (m, n) = (g.vertex_count() as u64, h.vertex_count() as u64);
        let w = wiener_index(&g.cartesian_product(&h)).unwrap();
        prop_assert_eq!(w, n * n * wiener_index(&g).unwrap() + m * m * wiener_index(&h).unwrap());
        prop_assert_eq!(
            is_transmission_regular(&g.cartesian_product(&h)).unwrap(),
            is_transmission_regular(&g).unwrap() && is_transmission_regular(&h).unwrap()
        );
    }
}

#[test]
fn closed_form_oracle_sanity() {
    let m = ExactMatrix::from_i64_rows(&[[0, 1, 2], [1, 0, 1], [2, 1, 0]]).unwrap();
    let r = closed_form_eigenvalues(&m);
    let s3 = 3f64.sqrt();
    for (x, y) in r.iter().zip([1.0 + s3, 1.0 - s3, -2.0]) {
        assert!((x - y).abs() < 1e-12);
    }
}
