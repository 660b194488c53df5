use std::sync::Arc;

use crys_core::cohomology::{is_coboundary_on_cyclic, random_cyclic_cocycle, torsion_element_search};
use crys_core::crys::CrysGroup;
use crys_core::cyclotomic::CycloElement;
use crys_core::groups::{GroupSpec, HolonomyGroup};
use crys_core::reps::cyclic::{delta_rep, extension_rep};
use crys_core::reps::{regular_rep, trivial_rep, Representation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Modules of degree at most 8 for `C_4` and `C_9`.
fn modules() -> Vec<(&'static str, Arc<Representation>)> {
    let c4 = Arc::new(HolonomyGroup::new(GroupSpec::Cyclic { factors: vec![(2, 2)] }).unwrap());
    let d = |p, n, i| delta_rep(p, n, i).unwrap();
    let sum = |parts: &[&Representation]| Representation::direct_sum(parts, "sum").unwrap();
    vec![
        ("C4 regular", regular_rep(c4.clone()).unwrap()),
        ("C4 regular twice", {
            let r = regular_rep(c4.clone()).unwrap();
            sum(&[&r, &r])
        }),
        ("C4 trivial", trivial_rep(c4, 2).unwrap()),
        ("C4 d0+d1+d2", sum(&[&d(2, 2, 0), &d(2, 2, 1), &d(2, 2, 2)])),
        ("C4 ext R0 by R2", extension_rep(2, 2, 2, &CycloElement::one(2, 0)).unwrap()),
        ("C9 d0+d1", sum(&[&d(3, 2, 0), &d(3, 2, 1)])),
        ("C9 d0+d2", sum(&[&d(3, 2, 0), &d(3, 2, 2)])),
        ("C9 d1+d2", sum(&[&d(3, 2, 1), &d(3, 2, 2)])),
        ("C9 ext R0 by R2", extension_rep(3, 2, 2, &CycloElement::one(3, 0)).unwrap()),
        ("C9 ext R1 by R2", extension_rep(3, 2, 2, &CycloElement::from_i64(3, 1, &[1, 1]).unwrap()).unwrap()),
    ]
    .into_iter()
    .map(|(n, r)| (n, Arc::new(r)))
    .collect()
}

#[test]
fn coboundary_test_agrees_with_torsion_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut cases = 0;
    let mut coboundaries = 0;
    for (name, rep) in modules() {
        assert!(rep.degree() <= 8 && rep.verify().unwrap().relations_ok, "{name}");
        for _ in 0..12 {
            let f = random_cyclic_cocycle(&rep, &mut rng).unwrap();
            assert!(f.law_violation().unwrap().is_none());
            let g = CrysGroup::new(f.clone()).unwrap();
            for (h, _) in rep.group().prime_order_elements() {
                let cob = is_coboundary_on_cyclic(&f, h).unwrap();
                let tor = torsion_element_search(&f, h).unwrap();
                assert_eq!(cob.is_coboundary, tor.is_some(), "{name}");
                if let Some(x) = tor {
                    let e = g.element(h, x).unwrap();
                    assert_eq!(g.order(&e).unwrap(), Some(rep.group().element_order(h)), "{name}");
                    coboundaries += 1;
                }
                cases += 1;
            }
        }
    }
    assert!(cases >= 100);
    // Both verdicts occur.
    assert!(coboundaries > 0 && coboundaries < cases);
}
