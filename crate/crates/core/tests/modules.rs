use std::sync::Arc;

use superatlas::linalg::SparseMatrix;
use superatlas::matrixreal::realize_basis;
use superatlas::rootdata::{BorelChoice, Parity, SuperalgebraSpec, Weight};
use superatlas::supermodules::{
    braiding, extract_simple, hom_space, hom_space_direct, is_intertwiner, kac_module, kac_top_vector,
    left_partial_trace_composite, natural_module, ribbon_maps, right_partial_trace_composite, summand_multiplicity,
    weyl_dimension, Morphism, SimpleCatalog, Supermodule,
};

fn w(eps: &[i64], delta: &[i64]) -> Weight {
    Weight::from_ints(eps, delta)
}

#[test]
fn natural_modules_have_expected_sdim() {
    for (spec, dim, sdim) in [
        (SuperalgebraSpec::gl(2, 1), 3, 1),
        (SuperalgebraSpec::gl(1, 1), 2, 0),
        (SuperalgebraSpec::osp_odd(0, 1), 3, -1),
        (SuperalgebraSpec::osp_odd(1, 1), 5, 1),
        (SuperalgebraSpec::osp_even(1, 1), 4, 0),
    ] {
        let b = realize_basis(&spec).unwrap();
        let v = natural_module(&b);
        v.validate().unwrap();
        v.dual().validate().unwrap();
        assert_eq!((v.dim(), v.sdim()), (dim, sdim), "{spec}");
        let vv = v.tensor(&v.dual()).unwrap();
        vv.validate().unwrap();
        assert_eq!(vv.sdim(), sdim * sdim);
    }
}

#[test]
fn kac_modules_have_expected_dimensions() {
    let spec = SuperalgebraSpec::gl(2, 1);
    let b = realize_basis(&spec).unwrap();
    let rs = b.algebra().root_system(&BorelChoice::distinguished(&spec));
    for (lam, l0) in [(w(&[0, 0], &[0]), 1), (w(&[1, 0], &[0]), 2), (w(&[2, 0], &[3]), 3), (w(&[1, 1], &[-1]), 1)] {
        assert_eq!(weyl_dimension(&rs, &lam).to_i64(), Some(l0));
        let k = kac_module(&b, &lam).unwrap();
        k.validate().unwrap();
        assert_eq!(k.dim(), 4 * l0 as usize, "{lam}");
        assert_eq!(k.sdim(), 0);
        assert_eq!(k.weight(0), &lam);
    }
    assert!(kac_module(&b, &w(&[0, 1], &[0])).is_err());

    let spec = SuperalgebraSpec::gl(2, 2);
    let b = realize_basis(&spec).unwrap();
    let k = kac_module(&b, &w(&[1, 0], &[0, 0])).unwrap();
    k.validate().unwrap();
    assert_eq!(k.dim(), 32);
}

#[test]
fn simple_quotient_of_atypical_kac_module() {
    let spec = SuperalgebraSpec::gl(1, 1);
    let b = realize_basis(&spec).unwrap();
    let borel = BorelChoice::distinguished(&spec);
    let k0 = kac_module(&b, &w(&[0], &[0])).unwrap();
    let l0 = extract_simple(&k0, &kac_top_vector(&k0), &borel).unwrap();
    assert_eq!(l0.dim(), 1);
    let k1 = kac_module(&b, &w(&[1], &[0])).unwrap();
    let l1 = extract_simple(&k1, &kac_top_vector(&k1), &borel).unwrap();
    assert_eq!(l1.dim(), 2);
    // atypical (a|-a): one-dimensional
    let k2 = kac_module(&b, &w(&[2], &[-2])).unwrap();
    assert_eq!(extract_simple(&k2, &kac_top_vector(&k2), &borel).unwrap().dim(), 1);

    let spec = SuperalgebraSpec::gl(2, 1);
    let b = realize_basis(&spec).unwrap();
    let borel = BorelChoice::distinguished(&spec);
    let k = kac_module(&b, &w(&[0, 0], &[0])).unwrap();
    let l = extract_simple(&k, &kac_top_vector(&k), &borel).unwrap();
    l.validate().unwrap();
    assert_eq!(l.dim(), 1);
}

#[test]
fn catalog_finds_small_simples() {
    let spec = SuperalgebraSpec::gl(2, 1);
    let b = realize_basis(&spec).unwrap();
    let mut cat = SimpleCatalog::new(&b, &BorelChoice::distinguished(&spec), 200).unwrap();
    assert_eq!(cat.find(&w(&[1, 0], &[0])).unwrap().dim(), 3);
    let adj = cat.find(&w(&[1, 0], &[-1])).unwrap();
    adj.validate().unwrap();
    assert_eq!(adj.dim(), 8);
    assert!(cat.find_within(&w(&[9, 0], &[0]), 3).is_err());

    let spec = SuperalgebraSpec::osp_odd(1, 1);
    let b = realize_basis(&spec).unwrap();
    let mut cat = SimpleCatalog::new(&b, &BorelChoice::distinguished(&spec), 100).unwrap();
    let v = cat.find(&w(&[1], &[0])).unwrap();
    assert_eq!(v.dim(), 5);
}

fn dims_of(fs: &[Morphism]) -> (usize, usize) {
    let odd = fs.iter().filter(|f| f.parity == Parity::Odd).count();
    (fs.len() - odd, odd)
}

#[test]
fn hom_space_matches_brute_force() {
    for spec in [SuperalgebraSpec::gl(1, 1), SuperalgebraSpec::gl(2, 1), SuperalgebraSpec::osp_odd(0, 1)] {
        let b = realize_basis(&spec).unwrap();
        let v = natural_module(&b);
        let vv = v.tensor(&v).unwrap();
        let vd = v.tensor(&v.dual()).unwrap();
        for (m, n) in [(&v, &v), (&vv, &vv), (&vd, &vd), (&v, &v.parity_flip())] {
            let fast = hom_space(m, n).unwrap();
            let slow = hom_space_direct(m, n).unwrap();
            assert_eq!(dims_of(&fast), dims_of(&slow), "{spec}");
            for f in &fast {
                assert!(is_intertwiner(m, n, f));
            }
        }
    }
}

#[test]
fn summands_of_small_tensor_products() {
    let b = realize_basis(&SuperalgebraSpec::gl(2, 1)).unwrap();
    let v = natural_module(&b);
    let one = Supermodule::trivial(b.algebra());
    assert_eq!(summand_multiplicity(&one, &v.tensor(&v.dual()).unwrap()).unwrap(), 1);
    assert_eq!(summand_multiplicity(&v, &v.direct_sum(&v.parity_flip()).unwrap()).unwrap(), 2);

    let b = realize_basis(&SuperalgebraSpec::gl(1, 1)).unwrap();
    let v = natural_module(&b);
    let one = Supermodule::trivial(b.algebra());
    assert_eq!(summand_multiplicity(&one, &v.tensor(&v.dual()).unwrap()).unwrap(), 0);
}

#[test]
fn duality_maps_are_morphisms_and_satisfy_zigzag() {
    for spec in [SuperalgebraSpec::gl(2, 1), SuperalgebraSpec::osp_even(1, 1)] {
        let b = realize_basis(&spec).unwrap();
        let v = natural_module(&b);
        let r = ribbon_maps(&v);
        let one = Supermodule::trivial(b.algebra());
        let even = |m: &SparseMatrix| Morphism::new(m.clone(), Parity::Even);
        assert!(is_intertwiner(&r.dual.tensor(&v).unwrap(), &one, &even(&r.ev)));
        assert!(is_intertwiner(&v.tensor(&r.dual).unwrap(), &one, &even(&r.ev_prime)));
        assert!(is_intertwiner(&one, &v.tensor(&r.dual).unwrap(), &even(&r.coev)));
        assert!(is_intertwiner(&one, &r.dual.tensor(&v).unwrap(), &even(&r.coev_prime)));
        let n = v.dim();
        let id = SparseMatrix::identity(n);
        assert_eq!(id.kron(&r.ev).mul(&r.coev.kron(&id)), id);
        assert_eq!(r.ev_prime.kron(&id).mul(&id.kron(&r.coev_prime)), id);
        // categorical dimension is the superdimension
        assert_eq!(r.ev_prime.mul(&r.coev).get(0, 0).to_i64(), Some(v.sdim()));

        let c = braiding(&v, &v);
        assert!(is_intertwiner(&v.tensor(&v).unwrap(), &v.tensor(&v).unwrap(), &even(&c)));
        assert_eq!(c.mul(&c), SparseMatrix::identity(n * n));
    }
}

#[test]
fn partial_traces_of_identity_are_scalars() {
    let b = realize_basis(&SuperalgebraSpec::gl(2, 1)).unwrap();
    let v = natural_module(&b);
    let w = v.tensor(&v).unwrap();
    let id = SparseMatrix::identity(v.dim() * w.dim());
    let sd = superatlas::Q::from_int(w.sdim());
    assert_eq!(right_partial_trace_composite(&id, &v, &w).unwrap(), SparseMatrix::identity(v.dim()).scale(&sd));
    let sd = superatlas::Q::from_int(v.sdim());
    assert_eq!(left_partial_trace_composite(&id, &v, &w).unwrap(), SparseMatrix::identity(w.dim()).scale(&sd));
}

#[test]
fn operands_over_different_algebras_are_rejected() {
    let b1 = realize_basis(&SuperalgebraSpec::gl(1, 1)).unwrap();
    let b2 = realize_basis(&SuperalgebraSpec::gl(1, 1)).unwrap();
    let (v1, v2) = (natural_module(&b1), natural_module(&b2));
    assert!(!Arc::ptr_eq(v1.algebra(), v2.algebra()));
    assert!(v1.tensor(&v2).is_err());
    assert!(hom_space(&v1, &v2).is_err());
}
