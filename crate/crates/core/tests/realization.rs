use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superatlas::atypicality::{isotropic_flags_in, reduced_specs};
use superatlas::linalg::SparseVec;
use superatlas::matrixreal::{build_self_commuting, centralizer_quotient, rank_of, realize_basis, LieBasis};
use superatlas::rootdata::{BorelChoice, Family, Parity, SuperalgebraSpec};
use superatlas::Q;

fn specs(max_gl: usize, max_osp: usize) -> Vec<SuperalgebraSpec> {
    let mut out = Vec::new();
    for m in 0..=max_gl {
        for n in 0..=max_gl {
            if m + n > 0 {
                out.push(SuperalgebraSpec::gl(m, n));
            }
        }
    }
    for m in 0..=max_osp {
        for n in 1..=max_osp {
            out.push(SuperalgebraSpec::osp_odd(m, n));
            out.push(SuperalgebraSpec::osp_even(m, n));
        }
    }
    out
}

#[test]
fn dimensions_match_closed_forms() {
    for spec in specs(3, 3) {
        let b = realize_basis(&spec).unwrap();
        assert_eq!(b.algebra().dims(), spec.dims(), "{spec}");
        let want = match spec.family {
            Family::Gl => (spec.m + spec.n).pow(2),
            Family::OspOdd => {
                let (m, n) = (spec.m, spec.n);
                2 * m * m + m + 2 * n * n + n + (2 * m + 1) * 2 * n
            }
            Family::OspEven => {
                let (m, n) = (spec.m, spec.n);
                2 * m * m - m + 2 * n * n + n + 4 * m * n
            }
        };
        assert_eq!(b.dim(), want, "{spec}");
    }
}

#[test]
fn super_jacobi_on_small_algebras() {
    for spec in specs(2, 1) {
        realize_basis(&spec).unwrap().algebra().verify().unwrap();
    }
}

#[test]
fn supertrace_form_is_nondegenerate() {
    for spec in specs(3, 2) {
        let b = realize_basis(&spec).unwrap();
        assert_eq!(b.gram_matrix().rank(), b.dim(), "{spec}");
    }
}

#[test]
fn root_vectors_pair_only_with_opposite_roots() {
    for spec in [SuperalgebraSpec::gl(2, 1), SuperalgebraSpec::gl(2, 2)] {
        let b = realize_basis(&spec).unwrap();
        let alg = b.algebra();
        let roots: Vec<usize> = alg.root_elements().collect();
        for &i in &roots {
            for &j in &roots {
                let v = b.supertrace_form(&SparseVec::unit(i), &SparseVec::unit(j));
                let opposite = alg.element(i).weight.add(&alg.element(j).weight).is_zero();
                assert_eq!(!v.is_zero(), opposite, "{} {}", alg.element(i).label, alg.element(j).label);
            }
        }
    }
}

fn random_triples(b: &LieBasis, count: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = b.dim();
    (0..count).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))).collect()
}

#[test]
fn supertrace_form_is_invariant_and_supersymmetric() {
    for spec in specs(2, 2) {
        let b = realize_basis(&spec).unwrap();
        let alg = b.algebra();
        for (a, bb, c) in random_triples(&b, 200, 7) {
            let ab = alg.bracket(a, bb).clone();
            let bc = alg.bracket(bb, c).clone();
            assert_eq!(
                b.supertrace_form(&ab, &SparseVec::unit(c)),
                b.supertrace_form(&SparseVec::unit(a), &bc),
                "{spec}"
            );
            let x = b.supertrace_form(&SparseVec::unit(a), &SparseVec::unit(c));
            let y = b.supertrace_form(&SparseVec::unit(c), &SparseVec::unit(a));
            let odd = alg.parity(a) == Parity::Odd && alg.parity(c) == Parity::Odd;
            assert_eq!(x, if odd { -y.clone() } else { y.clone() });
            if alg.parity(a) != alg.parity(c) {
                assert!(x.is_zero());
            }
        }
    }
}

#[test]
fn odd_self_commuting_square_has_zero_form() {
    let spec = SuperalgebraSpec::gl(2, 2);
    let b = Arc::new(realize_basis(&spec).unwrap());
    let flag = vec![spec.eps(0).sub(&spec.delta(0)), spec.eps(1).sub(&spec.delta(1))];
    let x = build_self_commuting(&b, &flag, &[Q::one(), Q::one()]).unwrap();
    assert!(x.matrix().mul(&x.matrix()).is_zero());
    assert!(b.supertrace_form(&x.coeffs, &x.coeffs).is_zero());
    assert_eq!(rank_of(&x).unwrap(), 2);
}

#[test]
fn reduction_table_for_every_flag() {
    let mut cases = Vec::new();
    for spec in specs(3, 2) {
        if spec.family == Family::Gl || (spec.m <= 2 && spec.n <= 2) {
            cases.push(spec);
        }
    }
    for spec in cases {
        let b = Arc::new(realize_basis(&spec).unwrap());
        let rs = b.algebra().root_system(&BorelChoice::distinguished(&spec));
        for k in 0..=spec.defect() {
            let (gx_spec, _) = reduced_specs(&spec, k).unwrap();
            for flag in isotropic_flags_in(&rs, k, usize::MAX) {
                let ones = vec![Q::one(); k];
                let x = build_self_commuting(&b, &flag.weights(), &ones).unwrap();
                let q = centralizer_quotient(&x).unwrap();
                assert_eq!(q.gx.dims(), gx_spec.dims(), "{spec} k={k} {:?}", flag.weights());
                assert_eq!(rank_of(&x).unwrap(), k);
                let scaled = x.scaled(&Q::new(-3, 7));
                assert_eq!(rank_of(&scaled).unwrap(), k);
                // roots of g_x match the reduced realization
                let reduced = superatlas::matrixreal::realize_basis(&gx_spec).ok();
                if let Some(r) = reduced {
                    let mut a: Vec<_> = q.gx.roots();
                    let mut bb: Vec<_> = r.algebra().roots();
                    a.sort();
                    bb.sort();
                    assert_eq!(a, bb, "{spec} k={k}");
                }
            }
        }
    }
}

#[test]
fn small_quotients_examples() {
    let spec = SuperalgebraSpec::gl(2, 1);
    let b = Arc::new(realize_basis(&spec).unwrap());
    let x = build_self_commuting(&b, &[spec.eps(0).sub(&spec.delta(0))], &[Q::one()]).unwrap();
    let q = centralizer_quotient(&x).unwrap();
    assert_eq!(q.gx.dims(), (1, 0));
    assert!(q.gx.bracket(0, 0).is_zero());

    let spec = SuperalgebraSpec::osp_odd(1, 1);
    let b = Arc::new(realize_basis(&spec).unwrap());
    let x = build_self_commuting(&b, &[spec.eps(0).sub(&spec.delta(0))], &[Q::one()]).unwrap();
    assert_eq!(centralizer_quotient(&x).unwrap().gx.dim(), 0);
    assert_eq!(rank_of(&superatlas::matrixreal::OddElement::zero(b.clone())).unwrap(), 0);
}
