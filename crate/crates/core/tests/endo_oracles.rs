use std::sync::Arc;

use crys_core::certificate::{CertKind, Witness};
use crys_core::cyclotomic::CycloElement;
use crys_core::endo::{
    analyze_locality, centralizer_basis, certify_indecomposable, certify_indecomposable_checked, certify_split,
    endo_algebra_mod_p, exhaustive_idempotent,
};
use crys_core::groups::{GroupSpec, HolonomyGroup};
use crys_core::linalg::IntMatrix;
use crys_core::reps::a4::build_a4_rep;
use crys_core::reps::cyclic::{delta_rep, extension_rep};
use crys_core::reps::{build_composite_rep, build_cyclic_rep, build_p2_rep, regular_rep, Representation};

/// `X ↦ (XG - GX)_G` stacked over the generators, on row-major `vec(X)`.
fn commutator_system(rep: &Representation) -> IntMatrix {
    let d = rep.degree();
    let e = IntMatrix::identity(d);
    let blocks: Vec<IntMatrix> =
        rep.generator_images().iter().map(|g| e.kron(&g.transpose()).sub(&g.kron(&e))).collect();
    IntMatrix::vstack(&blocks.iter().collect::<Vec<_>>()).unwrap()
}

fn flattened(basis: &[IntMatrix]) -> IntMatrix {
    let rows: Vec<IntMatrix> = basis
        .iter()
        .map(|m| IntMatrix::row_vector(m.entries(), &0.into()))
        .collect();
    IntMatrix::vstack(&rows.iter().collect::<Vec<_>>()).unwrap()
}

fn small_reps() -> Vec<(&'static str, Representation)> {
    vec![
        ("cyclic 2^3", build_cyclic_rep(2, 3, 1, None).unwrap()),
        ("cyclic 3^2", build_cyclic_rep(3, 2, 1, None).unwrap()),
        ("theorem2 p=3 n=0", build_p2_rep(3, 0).unwrap()),
        ("a4 n=1", build_a4_rep(1).unwrap()),
        ("delta_1 of C_9", delta_rep(3, 2, 1).unwrap()),
    ]
}

#[test]
fn centralizer_is_saturated_and_complete() {
    for (name, rep) in small_reps() {
        let basis = centralizer_basis(&rep).unwrap();
        let system = commutator_system(&rep);
        let rational_dim = system.cols() - system.to_rational().rank();
        assert_eq!(basis.len(), rational_dim, "{name}");
        for b in &basis {
            assert!(system.mul(&IntMatrix::column_vector(b.entries(), &0.into())).is_zero(), "{name}");
        }
        let flat = flattened(&basis);
        for p in [2u64, 3, 5, 7] {
            assert_eq!(flat.reduce_mod(p).rank(), basis.len(), "{name} saturation mod {p}");
        }
    }
}

#[test]
fn locality_agrees_with_exhaustive_search() {
    let cases: Vec<(&str, Representation, u64)> = vec![
        ("cyclic 2^3", build_cyclic_rep(2, 3, 1, None).unwrap(), 2),
        ("cyclic 3^2", build_cyclic_rep(3, 2, 1, None).unwrap(), 3),
        ("theorem2 p=3 n=0", build_p2_rep(3, 0).unwrap(), 3),
        ("a4 n=1 at 2", build_a4_rep(1).unwrap(), 2),
        ("a4 n=1 at 3", build_a4_rep(1).unwrap(), 3),
        ("delta_0 + delta_1 of C_3", Representation::direct_sum(&[&delta_rep(3, 1, 0).unwrap(), &delta_rep(3, 1, 1).unwrap()], "sum").unwrap(), 3),
    ];
    for (name, rep, p) in cases {
        let alg = endo_algebra_mod_p(&rep, p).unwrap();
        assert!(alg.is_associative() && alg.identity_ok(), "{name}");
        let loc = analyze_locality(&alg).unwrap();
        let found = exhaustive_idempotent(&alg, 1 << 20).expect("small enough for the oracle");
        assert_eq!(loc.local, found.is_none(), "{name}");
        if let Some(e) = &loc.idempotent {
            assert!(alg.is_idempotent(e) && alg.is_nontrivial(e), "{name}");
        }
    }
}

#[test]
fn theorem2_base_is_local_with_oracle() {
    let rep = build_p2_rep(3, 0).unwrap();
    let c = certify_indecomposable_checked(&rep, 3, true).unwrap();
    assert!(c.verdict);
    assert_eq!(c.oracle_agrees, Some(true));
}

#[test]
fn group_ring_of_p_group_is_indecomposable() {
    let g = Arc::new(HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(3, 1)] }).unwrap());
    let rep = regular_rep(g).unwrap();
    let c = certify_indecomposable(&rep, 3).unwrap();
    assert_eq!(c.kind, CertKind::Indecomposable);
    assert!(c.verdict);
}

#[test]
fn delta0_plus_delta1_has_integral_idempotent() {
    let rep = Representation::direct_sum(&[&delta_rep(3, 1, 0).unwrap(), &delta_rep(3, 1, 1).unwrap()], "sum").unwrap();
    let c = certify_indecomposable(&rep, 3).unwrap();
    assert_eq!(c.kind, CertKind::Decomposable);
    assert!(c.verdict);
    let w = c.witnesses.iter().find_map(|w| match w {
        Witness::IntegralIdempotent { rows, entries } => Some((*rows, entries.clone())),
        _ => None,
    });
    let (rows, entries) = w.expect("idempotent witness");
    let vals: Vec<i64> = entries.iter().map(|s| s.parse().unwrap()).collect();
    let e = IntMatrix::from_i64(&vals.chunks(rows).map(|r| r.to_vec()).collect::<Vec<_>>());
    assert_eq!(e.mul(&e), e);
    assert!(!e.is_zero() && !e.is_identity());
    let g = &rep.generator_images()[0];
    assert_eq!(e.mul(g), g.mul(&e));
}

#[test]
fn extension_by_multiple_of_p_splits() {
    // α = 3 in R_0, extension of R_0 by R_1 for C_9.
    let alpha = CycloElement::from_i64(3, 0, &[3]).unwrap();
    let rep = extension_rep(3, 2, 1, &alpha).unwrap();
    assert!(rep.verify().unwrap().relations_ok);
    let c = certify_split(&rep, 1).unwrap();
    assert_eq!(c.kind, CertKind::Decomposable);
    assert!(c.verdict);
    // α = 1 does not split.
    let rep = extension_rep(3, 2, 1, &CycloElement::one(3, 0)).unwrap();
    assert!(!certify_split(&rep, 1).unwrap().verdict);
}

#[test]
fn composite_uses_restriction() {
    let rep = build_composite_rep(&[(2, 3), (3, 2)], 1).unwrap();
    let c = certify_indecomposable(&rep, 2).unwrap();
    assert!(c.verdict);
    assert!(c.witnesses.iter().any(|w| matches!(w, Witness::Restriction { .. })));
}

#[test]
fn composite_with_shared_factor_is_refused() {
    let rep = build_composite_rep(&[(2, 3), (3, 2)], 2).unwrap();
    assert!(certify_indecomposable(&rep, 2).is_err());
}
