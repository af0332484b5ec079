use std::sync::Arc;

use superatlas::linalg::{SparseMatrix, SparseVec};
use superatlas::matrixreal::{build_self_commuting, realize_basis, LieBasis, OddElement};
use superatlas::rootdata::{BorelChoice, SuperalgebraSpec, Weight};
use superatlas::supermodules::{berezinian, extract_simple, kac_module, kac_top_vector, natural_module, Supermodule};
use superatlas::traces::{
    ambidexterity_check, default_probes, fibre_trace, find_splittings, modified_dimension, modified_dimension_auto,
    partial_traces, solve_trace_functional, supertrace, Provenance, Splitting, TraceFunctional,
};
use superatlas::Q;

fn basis(spec: SuperalgebraSpec) -> Arc<LieBasis> {
    Arc::new(realize_basis(&spec).unwrap())
}

fn simple(b: &LieBasis, eps: &[i64], delta: &[i64]) -> Supermodule {
    let k = kac_module(b, &Weight::from_ints(eps, delta)).unwrap();
    extract_simple(&k, &kac_top_vector(&k), &BorelChoice::distinguished(b.spec())).unwrap()
}

fn raising(b: &Arc<LieBasis>) -> OddElement {
    let spec = *b.spec();
    build_self_commuting(b, &[spec.eps(0).sub(&spec.delta(0))], &[Q::one()]).unwrap()
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

#[test]
fn partial_traces_of_identity_and_split_maps() {
    let b = basis(SuperalgebraSpec::gl(2, 1));
    let v = natural_module(&b);
    let w = v.tensor(&v.dual()).unwrap();
    let id = SparseMatrix::identity(v.dim() * w.dim());
    let (tl, tr) = partial_traces(&id, &v, &w).unwrap();
    assert_eq!(tr, SparseMatrix::identity(v.dim()).scale(&q(w.sdim())));
    assert_eq!(tl, SparseMatrix::identity(w.dim()).scale(&q(v.sdim())));

    // tr_L(f ⊗ g) = str(f) g
    let f = SparseMatrix::identity(v.dim());
    let g = superatlas::supermodules::braiding(&v, &v);
    let vv = v.tensor(&v).unwrap();
    let (tl, _) = partial_traces(&f.kron(&g), &v, &vv).unwrap();
    assert_eq!(tl, g.scale(&supertrace(&v, &f)));
}

#[test]
fn small_gl11_simples_are_ambidextrous() {
    let b = basis(SuperalgebraSpec::gl(1, 1));
    for l in [Supermodule::trivial(b.algebra()), berezinian(b.algebra(), 2).unwrap(), simple(&b, &[1], &[0]), simple(&b, &[2], &[1])] {
        let r = ambidexterity_check(&l).unwrap();
        assert!(r.is_ambi, "{:?}", r.pairs);
        assert!(r.end_dim >= 1);
    }
    let v = natural_module(&b);
    assert!(ambidexterity_check(&v.direct_sum(&v).unwrap()).is_err());
}

#[test]
fn trace_on_typical_anchor_is_unique() {
    let b = basis(SuperalgebraSpec::gl(1, 1));
    let t = simple(&b, &[1], &[0]);
    let sols = solve_trace_functional(&t, &[natural_module(&b)], &[]).unwrap();
    assert_eq!(sols.len(), 1);
    assert_eq!(sols[0].eval(&SparseMatrix::identity(t.dim())).unwrap(), Q::one());
    assert_eq!(sols[0].provenance(), Provenance::Solved);
    let sols = solve_trace_functional(&t, &default_probes(&b).unwrap(), &[]).unwrap();
    assert_eq!(sols.len(), 1);
    assert!(solve_trace_functional(&t, &[], &[]).is_err());
    // contradictory extra constraint t(Id) = 0
    let bad = SparseVec::from_entries([(0usize, Q::one())]);
    assert_eq!(solve_trace_functional(&t, &[natural_module(&b)], &[bad]).unwrap().len(), 0);
}

#[test]
fn trivial_anchor_gives_superdimension() {
    let b = basis(SuperalgebraSpec::gl(2, 1));
    let one = Supermodule::trivial(b.algebra());
    let sols = solve_trace_functional(&one, &default_probes(&b).unwrap(), &[]).unwrap();
    assert_eq!(sols.len(), 1);
    let st = TraceFunctional::supertrace(&one).unwrap();
    assert_eq!(st.values(), sols[0].values());
    let v = natural_module(&b);
    for m in [v.clone(), v.dual(), v.tensor(&v).unwrap()] {
        assert_eq!(modified_dimension_auto(&sols[0], &m).unwrap(), q(m.sdim()));
    }
}

fn sum_split(s: &Splitting, v: &Supermodule, p0: &Supermodule) -> (Supermodule, Splitting) {
    // P0⊗(X⊕X) ≅ (P0⊗X) ⊕ (P0⊗X), index i·2dx + k ↔ block k / dx
    let dx = s.x.dim();
    let dp = p0.dim();
    let n = dp * dx;
    let perm = SparseMatrix::from_triplets(
        2 * n,
        2 * n,
        (0..dp)
            .flat_map(|i| (0..2 * dx).map(move |k| (i * 2 * dx + k, (k / dx) * n + i * dx + k % dx, Q::one())))
            .collect::<Vec<_>>(),
    );
    let vv = v.direct_sum(v).unwrap();
    let alpha = perm.mul(&s.alpha.direct_sum(&s.alpha));
    let beta = s.beta.direct_sum(&s.beta).mul(&perm.transpose());
    (vv, Splitting { x: s.x.direct_sum(&s.x).unwrap(), alpha, beta, route: "sum" })
}

#[test]
fn modified_dimension_is_additive() {
    let b = basis(SuperalgebraSpec::gl(1, 1));
    let t = simple(&b, &[1], &[0]);
    let tf = solve_trace_functional(&t, &default_probes(&b).unwrap(), &[]).unwrap().remove(0);
    for v in [t.clone(), simple(&b, &[2], &[0]), simple(&b, &[0], &[1])] {
        let splits = find_splittings(&v, &t).unwrap();
        assert!(!splits.is_empty());
        let d = modified_dimension(&tf, &v, &splits[0]).unwrap();
        assert!(!d.is_zero());
        for s in &splits {
            assert_eq!(modified_dimension(&tf, &v, s).unwrap(), d);
        }
        let (vv, ss) = sum_split(&splits[0], &v, &t);
        assert_eq!(modified_dimension(&tf, &vv, &ss).unwrap(), &d + &d);
    }
    assert_eq!(modified_dimension_auto(&tf, &t).unwrap(), Q::one());
}

#[test]
fn fibre_traces_on_gl11() {
    let b = basis(SuperalgebraSpec::gl(1, 1));
    let x = raising(&b);
    let one = Supermodule::trivial(b.algebra());
    let id = |m: &Supermodule| SparseMatrix::identity(m.dim());
    assert_eq!(fibre_trace(&one, &x, &one, &id(&one)).unwrap().value, Q::one());
    let typ = simple(&b, &[1], &[0]);
    assert_eq!(fibre_trace(&one, &x, &typ, &id(&typ)).unwrap().value, Q::zero());
    let ber = berezinian(b.algebra(), 1).unwrap();
    assert!(!fibre_trace(&one, &x, &ber, &id(&ber)).unwrap().value.is_zero());
    // the typical anchor's own fibre vanishes under a rank-one x
    assert!(fibre_trace(&typ, &x, &one, &id(&one)).is_err());
    // with x = 0 the typical anchor sees typical modules
    let zero = OddElement::zero(b.clone());
    let r = fibre_trace(&typ, &zero, &typ, &id(&typ)).unwrap();
    assert_eq!(r.value, Q::one());
}
