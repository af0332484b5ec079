use std::sync::Arc;

use superatlas::atypicality::atypicality_of;
use superatlas::matrixreal::{build_self_commuting, realize_basis, LieBasis};
use superatlas::rootdata::{BorelChoice, SuperalgebraSpec, Weight};
use superatlas::supermodules::{berezinian, extract_simple, kac_module, kac_top_vector, natural_module, Supermodule};
use superatlas::support::{ideal_witness, is_projective_over, support_dimension};
use superatlas::Q;

fn basis(spec: SuperalgebraSpec) -> Arc<LieBasis> {
    Arc::new(realize_basis(&spec).unwrap())
}

fn simple(b: &LieBasis, eps: &[i64], delta: &[i64]) -> Supermodule {
    let k = kac_module(b, &Weight::from_ints(eps, delta)).unwrap();
    extract_simple(&k, &kac_top_vector(&k), &BorelChoice::distinguished(b.spec())).unwrap()
}

#[test]
fn projectivity_over_one_odd_element() {
    let b = basis(SuperalgebraSpec::gl(1, 1));
    let spec = *b.spec();
    let lower = build_self_commuting(&b, &[spec.delta(0).sub(&spec.eps(0))], &[Q::one()]).unwrap();
    let raise = build_self_commuting(&b, &[spec.eps(0).sub(&spec.delta(0))], &[Q::one()]).unwrap();
    let k0 = kac_module(&b, &Weight::from_ints(&[0], &[0])).unwrap();
    assert!(is_projective_over(&k0, &lower).unwrap());
    assert!(!is_projective_over(&k0, &raise).unwrap());
    let one = Supermodule::trivial(b.algebra());
    assert!(!is_projective_over(&one, &lower).unwrap());
    assert!(is_projective_over(&k0.direct_sum(&k0).unwrap(), &lower).unwrap());
    assert!(!is_projective_over(&k0.direct_sum(&one).unwrap(), &lower).unwrap());
}

#[test]
fn support_dimension_examples() {
    let b = basis(SuperalgebraSpec::gl(2, 2));
    let r = support_dimension(&b, &Supermodule::trivial(b.algebra()), 2, 7).unwrap();
    assert_eq!(r.support_dim, Some(2));
    assert_eq!(r.per_rank.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);

    let b = basis(SuperalgebraSpec::gl(1, 1));
    assert_eq!(support_dimension(&b, &simple(&b, &[1], &[0]), 3, 7).unwrap().support_dim, Some(0));
    assert_eq!(support_dimension(&b, &Supermodule::zero(b.algebra()), 3, 7).unwrap().support_dim, None);

    let b = basis(SuperalgebraSpec::gl(2, 1));
    let v = natural_module(&b);
    let r = support_dimension(&b, &v, 3, 7).unwrap();
    assert_eq!(r.support_dim, Some(1));
    assert!(r.monotone);
    let a = support_dimension(&b, &v, 3, 7).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&r).unwrap());
}

#[test]
fn support_matches_atypicality_on_gl21_simples() {
    let b = basis(SuperalgebraSpec::gl(2, 1));
    let spec = *b.spec();
    let borel = BorelChoice::distinguished(&spec);
    for (e, d) in [([0, 0], [0]), ([1, 0], [0]), ([1, 0], [-1]), ([2, 1], [0]), ([1, 1], [-1]), ([2, 0], [1])] {
        let l = simple(&b, &e, &d);
        let k = atypicality_of(&spec, &Weight::from_ints(&e, &d), &borel).unwrap().k;
        assert_eq!(support_dimension(&b, &l, 2, 1).unwrap().support_dim, Some(k), "{e:?}|{d:?}");
    }
}

#[test]
fn atypical_gl11_simples_generate_each_other() {
    let b = basis(SuperalgebraSpec::gl(1, 1));
    let bers: Vec<Supermodule> = (-2..=2).map(|k| berezinian(b.algebra(), k).unwrap()).collect();
    for l1 in &bers {
        for l2 in &bers {
            assert!(ideal_witness(l1, l2).unwrap() >= 1);
        }
    }
    // typical modules lie in the ideal of anything
    let t = simple(&b, &[1], &[0]);
    assert!(ideal_witness(&bers[0], &t).unwrap() >= 1);
    assert!(ideal_witness(&t, &simple(&b, &[2], &[0])).unwrap() >= 1);
    // but the trivial module is not a summand of T ⊗ T* ⊗ 1
    assert_eq!(ideal_witness(&t, &bers[2]).unwrap(), 0);
}
