use crys_core::cyclotomic::{alpha, alpha_i, beta_s, column_embed_int, phi, xi_matrix, CycloElement};
use crys_core::linalg::IntMatrix;
use crys_core::reps::cyclic::{cyclic_blocks, default_parameter, u_of_power, u_power_formula};
use crys_core::reps::p2::{condensed_range, irreducible_rep, P2Irreducible};
use crys_core::reps::build_p2_rep;
use crys_core::cohomology::standard_cocycle;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::Arc;

fn embed(x: &CycloElement, j: u32) -> IntMatrix {
    column_embed_int(x, j).unwrap()
}

#[test]
fn xi_power_is_kron_of_previous() {
    for p in [2u64, 3, 5] {
        for i in 2..=3 {
            let lhs = xi_matrix(p, i).pow(p);
            let rhs = IntMatrix::identity(p as usize).kron(&xi_matrix(p, i - 1));
            assert_eq!(lhs, rhs, "p={p} i={i}");
        }
    }
}

#[test]
fn xi_matrix_small_case() {
    let x2 = xi_matrix(2, 2);
    assert_eq!(x2, IntMatrix::from_i64(&[vec![0, -1], vec![1, 0]]));
    assert_eq!(x2.pow(2), IntMatrix::identity(2).kron(&IntMatrix::from_i64(&[vec![-1]])));
}

fn element(p: u64, i: u32, seed: &[i64]) -> CycloElement {
    let n = phi(p, i);
    CycloElement::from_i64(p, i, &seed[..n]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eq2_action(p in prop_oneof![Just(2u64), Just(3u64)], i in 0u32..3, dj in 1u32..3, seed in prop::collection::vec(-9i64..=9, 18)) {
        let j = (i + dj).min(3);
        prop_assume!(i < j);
        let a = element(p, i, &seed);
        let lhs = xi_matrix(p, i).mul(&embed(&a, j));
        let rhs = embed(&a.mul(&CycloElement::xi(p, i)).unwrap(), j);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eq2_column_split(p in prop_oneof![Just(2u64), Just(3u64)], i in 0u32..3, j in 2u32..=3, seed in prop::collection::vec(-9i64..=9, 18)) {
        prop_assume!(i < j);
        let a = element(p, i, &seed);
        let zero = embed(&CycloElement::zero(p, i), j - 1);
        let last = embed(&a, j - 1);
        let mut parts = vec![&zero; p as usize - 1];
        parts.push(&last);
        prop_assert_eq!(embed(&a, j), IntMatrix::hstack(&parts).unwrap());
    }

    #[test]
    fn eq2_right_shift(p in prop_oneof![Just(2u64), Just(3u64)], i in 0u32..3, j in 2u32..=3, k in 0u64..3, seed in prop::collection::vec(-9i64..=9, 18)) {
        prop_assume!(i < j && k < p);
        let a = element(p, i, &seed);
        let lhs = embed(&a, j).mul(&xi_matrix(p, j).pow(k));
        let zero = embed(&CycloElement::zero(p, i), j - 1);
        let hit = embed(&a, j - 1);
        let parts: Vec<&IntMatrix> = (1..=p).map(|s| if s == p - k { &hit } else { &zero }).collect();
        prop_assert_eq!(lhs, IntMatrix::hstack(&parts).unwrap());
    }
}

#[test]
fn epsilon_alpha_beta() {
    for p in [3u64, 5] {
        for s in 1..=p {
            let lhs = CycloElement::xi_power(p, 1, s as i64).mul(&alpha_i(p, s)).unwrap().add(&beta_s(p, s)).unwrap();
            assert!(lhs.is_zero(), "p={p} s={s}");
        }
    }
}

/// `U(a^p)` in the block form: `A⊗U_11`, `E_m⊗U_1i` on top and
/// `E_m⊗U_2i` below, with `U_1i = (⟨1⟩⁰_i, …)` and
/// `U_2i = (⟨1⟩¹_i, ⟨ξ_1⟩¹_i, …, ⟨ξ_1^{p-1}⟩¹_i)`.
fn u_power_blocks(p: u64, n: u32, m: usize, a: &IntMatrix) -> IntMatrix {
    let em = IntMatrix::identity(m);
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for i in 1..n {
        let one0 = embed(&CycloElement::one(p, 0), i);
        let u1 = IntMatrix::hstack(&vec![&one0; p as usize]).unwrap();
        let u2_parts: Vec<IntMatrix> =
            (0..p).map(|t| embed(&CycloElement::xi_power(p, 1, t as i64), i)).collect();
        let u2 = IntMatrix::hstack(&u2_parts.iter().collect::<Vec<_>>()).unwrap();
        top.push(if i == 1 { a.kron(&u1) } else { em.kron(&u1) });
        bottom.push(em.kron(&u2));
    }
    let top = IntMatrix::hstack(&top.iter().collect::<Vec<_>>()).unwrap();
    let bottom = IntMatrix::hstack(&bottom.iter().collect::<Vec<_>>()).unwrap();
    IntMatrix::vstack(&[&top, &bottom]).unwrap()
}

#[test]
fn u_of_a_power_p() {
    for (p, n, m) in [(2u64, 2u32, 1usize), (3, 2, 1), (2, 3, 1), (2, 3, 2), (3, 3, 1), (3, 3, 2), (2, 4, 1), (5, 3, 1)] {
        let a = default_parameter(m);
        let blocks = cyclic_blocks(p, n, m, &a).unwrap();
        let direct = u_of_power(&blocks, p);
        assert_eq!(direct, u_power_formula(&blocks, p), "p={p} n={n} m={m}");
        assert_eq!(direct, u_power_blocks(p, n, m, &a), "block form p={p} n={n} m={m}");
    }
}

fn integral(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

#[test]
fn eq12_memberships() {
    for p in [3u64, 5] {
        let rep = Arc::new(build_p2_rep(p, 0).unwrap());
        let f = standard_cocycle(&rep).unwrap();
        let x: Vec<BigRational> = f.gen_values()[0].coords().to_vec();
        let y: Vec<BigRational> = f.gen_values()[1].coords().to_vec();
        let ga = rep.image(rep.group().generators()[0]).unwrap().to_rational();
        let gb = rep.image(rep.group().generators()[1]).unwrap().to_rational();
        let norm = |g: &crys_core::linalg::RatMatrix| {
            let mut acc = crys_core::linalg::RatMatrix::identity(g.rows());
            let mut pw = g.clone();
            for _ in 1..p {
                acc = acc.add(&pw);
                pw = pw.mul(g);
            }
            acc
        };
        assert!(integral(&norm(&ga).mul_vec(&x)), "p={p} norm at a");
        assert!(integral(&norm(&gb).mul_vec(&y)), "p={p} norm at b");
        let e = crys_core::linalg::RatMatrix::identity(ga.rows());
        let lhs = ga.sub(&e).mul_vec(&y);
        let rhs = gb.sub(&e).mul_vec(&x);
        let diff: Vec<BigRational> = lhs.iter().zip(&rhs).map(|(u, v)| u - v).collect();
        assert!(integral(&diff), "p={p} commutator");
    }
}

fn frac_eq(a: &[BigRational], b: &[BigRational]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).is_integer())
}

#[test]
fn eq14_condensed_coordinates() {
    for p in [3u64, 5] {
        let rep = Arc::new(build_p2_rep(p, 0).unwrap());
        let f = standard_cocycle(&rep).unwrap();
        let g = rep.group();
        let al = alpha(p);
        for s in 1..=p {
            let h = g.evaluate_word(&[("a", s as i64), ("b", 1)]).unwrap();
            let slot = &f.value(h).coords()[condensed_range(p, s as usize)];
            let expected = CycloElement::xi_power(p, 1, s as i64).mul(&al).unwrap();
            assert!(frac_eq(slot, expected.coords()), "p={p} s={s}");
        }
        let a = g.generators()[0];
        let slot = &f.value(a).coords()[condensed_range(p, p as usize + 1)];
        assert!(frac_eq(slot, al.coords()), "p={p} slot p+1");
        assert!(!al.is_integral());
    }
}

#[test]
fn p2_irreducibles_have_distinct_characters() {
    for p in [3u64, 5] {
        let chars: Vec<Vec<_>> = P2Irreducible::all(p)
            .into_iter()
            .map(|w| irreducible_rep(p, w).unwrap().character().unwrap())
            .collect();
        for i in 0..chars.len() {
            for j in 0..i {
                assert_ne!(chars[i], chars[j], "p={p}");
            }
        }
        assert!(chars.iter().all(|c| !c.iter().all(|x| x.is_zero())));
    }
}
