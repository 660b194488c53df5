use crys_core::linalg::snf::{kernel_saturated, snf, solve_linear_hermite, solve_linear_integer};
use crys_core::linalg::{FpPoly, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-6i64..=6, rows * cols)
        .prop_map(move |v| IntMatrix::from_i64(&v.chunks(cols).map(|r| r.to_vec()).collect::<Vec<_>>()))
}

fn shaped() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_a_smith_form(a in shaped()) {
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        for i in 0..diag.len() {
            for j in 0..diag.len() {
                if i != j && i < s.d.rows() && j < s.d.cols() {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in diag[..s.rank].windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
            prop_assert!(w[0].is_positive());
        }
        prop_assert!(diag[s.rank..].iter().all(Zero::is_zero));
    }

    #[test]
    fn integer_solver_agrees_with_hermite(a in shaped(), x in prop::collection::vec(-4i64..=4, 4), noise in prop::collection::vec(0i64..=1, 4)) {
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| v.into()).collect();
        let mut b = a.mul_vec(&x);
        for (bi, n) in b.iter_mut().zip(&noise) {
            *bi += *n;
        }
        let snf_sol = solve_linear_integer(&a, &b);
        let herm_sol = solve_linear_hermite(&a, &b);
        prop_assert_eq!(snf_sol.is_some(), herm_sol.is_some());
        if let Some(s) = snf_sol {
            prop_assert_eq!(a.mul_vec(&s), b.clone());
        }
        if noise.iter().all(|&n| n == 0) {
            prop_assert!(solve_linear_integer(&a, &a.mul_vec(&x)).is_some());
        }
    }

    #[test]
    fn saturated_kernel(a in shaped()) {
        let k = kernel_saturated(&a);
        prop_assert_eq!(k.len(), a.cols() - a.to_rational().rank());
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            let rows: Vec<Vec<BigInt>> = k.clone();
            let m = IntMatrix::from_vec(rows.len(), a.cols(), rows.concat(), &BigInt::zero());
            // A saturated basis has gcd of maximal minors 1, i.e. all SNF factors are units.
            let s = snf(&m);
            prop_assert!(s.diagonal().iter().take(s.rank).all(|d| d.abs().is_one()));
        }
    }

    #[test]
    fn kron_is_associative(a in matrix(2, 1), b in matrix(1, 2), c in matrix(2, 2)) {
        prop_assert_eq!(a.kron(&b.kron(&c)), a.kron(&b).kron(&c));
        prop_assert_eq!(IntMatrix::identity(1).kron(&c), c);
    }

    #[test]
    fn poly_division(p in prop_oneof![Just(2u64), Just(3u64), Just(7u64)], f in prop::collection::vec(-9i64..=9, 1..7), g in prop::collection::vec(-9i64..=9, 1..5)) {
        let f = FpPoly::from_signed(&f, p);
        let g = FpPoly::from_signed(&g, p);
        prop_assume!(!g.is_zero());
        let (q, r) = f.div_rem(&g);
        prop_assert_eq!(q.mul(&g).add(&r), f.clone());
        prop_assert!(r.is_zero() || r.degree() < g.degree());
        let d = f.gcd(&g);
        prop_assert!(f.rem(&d).is_zero() && g.rem(&d).is_zero());
    }
}

#[test]
fn snf_examples() {
    let s = snf(&IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]));
    assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    assert!(solve_linear_integer(&IntMatrix::from_i64(&[vec![2]]), &[BigInt::from(3)]).is_none());
    let ones = IntMatrix::from_i64(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]);
    let b = vec![BigInt::one(); 3];
    let x = solve_linear_integer(&ones, &b).unwrap();
    assert_eq!(ones.mul_vec(&x), b);
}
