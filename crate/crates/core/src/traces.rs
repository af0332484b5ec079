//! Partial traces, ambidexterity, traces on tensor ideals and modified
//! dimensions, including the trace obtained through the fibre functor.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::Q;
use crate::atypicality::atypicality_in;
use crate::error::{Error, Result};
use crate::fibre::{fibre_module_with, fibre_morphism};
use crate::linalg::{SparseMatrix, SparseVec, TrackedBasis};
use crate::matrixreal::{centralizer_quotient, LieBasis, OddElement};
use crate::rootdata::Parity;
use crate::supermodules::{
    hom_space, is_intertwiner, left_partial_trace_composite, natural_module, ribbon_maps, right_partial_trace_composite,
    extract_simple, Morphism, Supermodule,
};

fn flatten(m: &SparseMatrix) -> SparseVec {
    let nc = m.ncols();
    SparseVec::from_entries(m.triplets().map(|(r, c, v)| (r * nc + c, v.clone())))
}

fn scalar_of(m: &SparseMatrix) -> Option<Q> {
    let c = m.get(0, 0);
    (m == &SparseMatrix::identity(m.nrows()).scale(&c)).then_some(c)
}

fn even_endomorphisms(m: &Supermodule) -> Result<Vec<SparseMatrix>> {
    Ok(hom_space(m, m)?.into_iter().filter(|f| f.parity == Parity::Even).map(|f| f.matrix).collect())
}

/// `(tr_L(f), tr_R(f))` for an even endomorphism `f` of `V ⊗ W`; both are
/// checked to be endomorphisms of `W` and `V` respectively.
pub fn partial_traces(f: &SparseMatrix, v: &Supermodule, w: &Supermodule) -> Result<(SparseMatrix, SparseMatrix)> {
    let tl = left_partial_trace_composite(f, v, w)?;
    let tr = right_partial_trace_composite(f, v, w)?;
    if !is_intertwiner(w, w, &Morphism::new(tl.clone(), Parity::Even))
        || !is_intertwiner(v, v, &Morphism::new(tr.clone(), Parity::Even))
    {
        return Err(Error::Inconsistent("partial trace is not a module map; is f an intertwiner?".into()));
    }
    Ok((tl, tr))
}

#[derive(Clone, Debug, Serialize)]
pub struct AmbiReport {
    pub is_ambi: bool,
    pub end_dim: usize,
    /// `(a_f, b_f)` with `tr_L(f) = a_f Id` and `tr_R(f) = b_f Id`, per basis element of `End(L ⊗ L)`.
    pub pairs: Vec<(Q, Q)>,
}

/// Compares left and right partial traces on a basis of `End(L ⊗ L)`.
pub fn ambidexterity_check(l: &Supermodule) -> Result<AmbiReport> {
    let end = hom_space(l, l)?;
    let odd = end.iter().filter(|f| f.parity == Parity::Odd).count();
    if end.len() != 1 || odd != 0 {
        return Err(Error::NotAbsolutelySimple { even: end.len() - odd, odd });
    }
    let ll = l.tensor(l)?;
    let basis = even_endomorphisms(&ll)?;
    let mut pairs = Vec::with_capacity(basis.len());
    for f in &basis {
        let a = scalar_of(&left_partial_trace_composite(f, l, l)?)
            .ok_or_else(|| Error::Inconsistent("left partial trace is not scalar on a simple module".into()))?;
        let b = scalar_of(&right_partial_trace_composite(f, l, l)?)
            .ok_or_else(|| Error::Inconsistent("right partial trace is not scalar on a simple module".into()))?;
        pairs.push((a, b));
    }
    Ok(AmbiReport { is_ambi: pairs.iter().all(|(a, b)| a == b), end_dim: basis.len(), pairs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Solved,
    FibreComposed,
    Supertrace,
}

/// A linear functional on the even endomorphisms of `anchor`, given by its
/// values on a fixed basis.
#[derive(Clone, Debug)]
pub struct TraceFunctional {
    anchor: Supermodule,
    basis: Vec<SparseMatrix>,
    values: Vec<Q>,
    provenance: Provenance,
    tracker: TrackedBasis,
}

impl TraceFunctional {
    fn with_basis(anchor: &Supermodule, basis: Vec<SparseMatrix>, values: Vec<Q>, provenance: Provenance) -> Self {
        let n = anchor.dim();
        let mut tracker = TrackedBasis::new(n * n, basis.len() + 1);
        for b in &basis {
            let ok = tracker.try_insert(flatten(b));
            debug_assert!(ok);
        }
        TraceFunctional { anchor: anchor.clone(), basis, values, provenance, tracker }
    }

    /// The supertrace `t(h) = str(h)` on `End(anchor)`.
    pub fn supertrace(anchor: &Supermodule) -> Result<Self> {
        let basis = even_endomorphisms(anchor)?;
        let values = basis.iter().map(|b| supertrace(anchor, b)).collect();
        Ok(Self::with_basis(anchor, basis, values, Provenance::Supertrace))
    }

    pub fn anchor(&self) -> &Supermodule {
        &self.anchor
    }

    pub fn basis(&self) -> &[SparseMatrix] {
        &self.basis
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    fn coords(&self, h: &SparseMatrix) -> Result<SparseVec> {
        self.tracker
            .coordinates(&flatten(h))
            .ok_or_else(|| Error::Inconsistent("not an even endomorphism of the anchor".into()))
    }

    pub fn eval(&self, h: &SparseMatrix) -> Result<Q> {
        Ok(self.coords(h)?.iter().map(|(i, c)| c * &self.values[*i]).sum())
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = self.clone();
        out.values = self.values.iter().map(|v| v * c).collect();
        out
    }
}

pub fn supertrace(m: &Supermodule, h: &SparseMatrix) -> Q {
    (0..m.dim()).map(|i| h.get(i, i).neg_if(m.parity(i) == Parity::Odd)).sum()
}

/// The natural module, its dual and its tensor square.
pub fn default_probes(basis: &LieBasis) -> Result<Vec<Supermodule>> {
    let v = natural_module(basis);
    let vv = v.tensor(&v)?;
    Ok(vec![v.dual(), v, vv])
}

/// Solution space of the trace axioms on `End(P0)`, through the probes:
///
/// - `t(fg) = t(gf)` on `End(P0)`;
/// - `t(g∘f) = t(tr_R(f∘g))` for `f: P0 → P0⊗W`, `g: P0⊗W → P0`;
/// - `t(g∘f) = t(tr_L(f∘g))` for `f: P0 → W⊗P0`, `g: W⊗P0 → P0`;
/// - `t(tr_L h) = t(tr_R h)` for `h ∈ End(P0⊗P0)`;
/// - each `synthetic` row `c` imposes `Σ c_i t(E_i) = 0` on the basis values.
///
/// A one-dimensional solution with `t(Id) ≠ 0` is normalized to `t(Id) = 1`.
pub fn solve_trace_functional(p0: &Supermodule, probes: &[Supermodule], synthetic: &[SparseVec]) -> Result<Vec<TraceFunctional>> {
    if probes.is_empty() {
        return Err(Error::EmptyConstraints);
    }
    let basis = even_endomorphisms(p0)?;
    let unit = TraceFunctional::with_basis(p0, basis.clone(), vec![Q::zero(); basis.len()], Provenance::Solved);
    let r = basis.len();
    let mut rows: Vec<SparseVec> = synthetic.to_vec();
    let mut relate = |a: &SparseMatrix, b: &SparseMatrix| -> Result<()> {
        let row = unit.coords(a)?.sub(&unit.coords(b)?);
        if !row.is_zero() {
            rows.push(row);
        }
        Ok(())
    };
    for a in &basis {
        for b in &basis {
            relate(&a.mul(b), &b.mul(a))?;
        }
    }
    for w in probes {
        p0.check_same(w)?;
        let right = p0.tensor(w)?;
        let fs = hom_space(p0, &right)?;
        let gs = hom_space(&right, p0)?;
        for f in fs.iter().filter(|f| f.parity == Parity::Even) {
            for g in gs.iter().filter(|g| g.parity == Parity::Even) {
                relate(&g.matrix.mul(&f.matrix), &right_partial_trace_composite(&f.matrix.mul(&g.matrix), p0, w)?)?;
            }
        }
        let left = w.tensor(p0)?;
        let fs = hom_space(p0, &left)?;
        let gs = hom_space(&left, p0)?;
        for f in fs.iter().filter(|f| f.parity == Parity::Even) {
            for g in gs.iter().filter(|g| g.parity == Parity::Even) {
                relate(&g.matrix.mul(&f.matrix), &left_partial_trace_composite(&f.matrix.mul(&g.matrix), w, p0)?)?;
            }
        }
    }
    let pp = p0.tensor(p0)?;
    for h in even_endomorphisms(&pp)? {
        relate(&left_partial_trace_composite(&h, p0, p0)?, &right_partial_trace_composite(&h, p0, p0)?)?;
    }
    let system = SparseMatrix::from_columns(r, rows).transpose();
    let mut sols: Vec<TraceFunctional> = system
        .kernel()
        .into_iter()
        .map(|k| TraceFunctional::with_basis(p0, basis.clone(), k.to_dense(r), Provenance::Solved))
        .collect();
    if sols.len() == 1 {
        let at_id = sols[0].eval(&SparseMatrix::identity(p0.dim()))?;
        if !at_id.is_zero() {
            sols[0] = sols[0].scaled(&at_id.inv());
        }
    }
    Ok(sols)
}

/// `V` as a retract of `P0 ⊗ X`: `beta ∘ alpha = Id_V`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub x: Supermodule,
    pub alpha: SparseMatrix,
    pub beta: SparseMatrix,
    pub route: &'static str,
}

impl Splitting {
    pub fn check(&self, v: &Supermodule) -> Result<()> {
        if self.beta.mul(&self.alpha) != SparseMatrix::identity(v.dim()) {
            return Err(Error::SplittingFailed("beta ∘ alpha is not the identity".into()));
        }
        Ok(())
    }
}

/// Splittings of `V` through `P0 ⊗ (P0* ⊗ V)`: one with `beta = ev'_{P0} ⊗ Id_V`
/// (exists when `V` is projective relative to that surjection), and one
/// from the first nonzero entry of the pairing `Hom(M, V) × Hom(V, M)` when
/// `End(V)` is one-dimensional and even.
pub fn find_splittings(v: &Supermodule, p0: &Supermodule) -> Result<Vec<Splitting>> {
    v.check_same(p0)?;
    let x = p0.dual().tensor(v)?;
    let m = p0.tensor(&x)?;
    let into: Vec<Morphism> = hom_space(v, &m)?.into_iter().filter(|f| f.parity == Parity::Even).collect();
    let mut out = Vec::new();
    let id = SparseMatrix::identity(v.dim());

    let beta = ribbon_maps(p0).ev_prime.kron(&SparseMatrix::identity(v.dim()));
    let mut t = TrackedBasis::new(v.dim() * v.dim(), into.len() + 1);
    let mut used = Vec::new();
    for (i, f) in into.iter().enumerate() {
        if t.try_insert(flatten(&beta.mul(&f.matrix))) {
            used.push(i);
        }
    }
    if let Some(c) = t.coordinates(&flatten(&id)) {
        let mut alpha = SparseMatrix::zeros(m.dim(), v.dim());
        for (k, ck) in c.iter() {
            alpha = alpha.add_scaled(ck, &into[used[*k]].matrix);
        }
        out.push(Splitting { x: x.clone(), alpha, beta, route: "evaluation" });
    }

    let end = hom_space(v, v)?;
    if end.len() == 1 && end[0].parity == Parity::Even {
        let out_of: Vec<Morphism> = hom_space(&m, v)?.into_iter().filter(|g| g.parity == Parity::Even).collect();
        'search: for f in &into {
            for g in &out_of {
                let p = g.matrix.mul(&f.matrix).get(0, 0);
                if !p.is_zero() {
                    out.push(Splitting { x: x.clone(), alpha: f.matrix.clone(), beta: g.matrix.scale(&p.inv()), route: "pairing" });
                    break 'search;
                }
            }
        }
    }
    for s in &out {
        s.check(v)?;
    }
    Ok(out)
}

/// `t_V(h) = t(tr_R(α ∘ h ∘ β))` for an even endomorphism `h` of `V`.
pub fn trace_through(t: &TraceFunctional, v: &Supermodule, split: &Splitting, h: &SparseMatrix) -> Result<Q> {
    split.check(v)?;
    let lifted = split.alpha.mul(h).mul(&split.beta);
    t.eval(&right_partial_trace_composite(&lifted, t.anchor(), &split.x)?)
}

/// `d(V) = t(tr_R(α ∘ β))`.
pub fn modified_dimension(t: &TraceFunctional, v: &Supermodule, split: &Splitting) -> Result<Q> {
    trace_through(t, v, split, &SparseMatrix::identity(v.dim()))
}

/// Trace of `h` on `V` using every available splitting, which must agree.
pub fn trace_auto(t: &TraceFunctional, v: &Supermodule, h: &SparseMatrix) -> Result<Q> {
    if v.dim() == 0 {
        return Ok(Q::zero());
    }
    let splits = find_splittings(v, t.anchor())?;
    let Some(first) = splits.first() else {
        return Err(Error::SplittingFailed(format!("no retraction of the {}-dimensional module onto P0 ⊗ X", v.dim())));
    };
    let value = trace_through(t, v, first, h)?;
    for s in &splits[1..] {
        if trace_through(t, v, s, h)? != value {
            return Err(Error::Inconsistent("modified trace depends on the splitting".into()));
        }
    }
    Ok(value)
}

pub fn modified_dimension_auto(t: &TraceFunctional, v: &Supermodule) -> Result<Q> {
    trace_auto(t, v, &SparseMatrix::identity(v.dim()))
}

#[derive(Clone, Debug, Serialize)]
pub struct FibreTrace {
    pub value: Q,
    pub gx: String,
    pub anchor_fibre_dims: (usize, usize),
    pub module_fibre_dims: (usize, usize),
    pub typical_dims: (usize, usize),
    pub solution_dim: usize,
}

/// `t_M(f) = t'_{M_x}(f_x)`, where `t'` is the normalized trace on the
/// projective ideal of `g_x` anchored at a simple `T` taken from `(L_anchor)_x`.
pub fn fibre_trace(anchor: &Supermodule, x: &OddElement, m: &Supermodule, f: &SparseMatrix) -> Result<FibreTrace> {
    anchor.check_same(m)?;
    if !Arc::ptr_eq(m.algebra(), x.algebra()) {
        return Err(Error::BasisMismatch);
    }
    let q = Arc::new(centralizer_quotient(x)?);
    let lx = fibre_module_with(anchor, x, &q)?;
    if lx.module_x.dim() == 0 {
        return Err(Error::OutOfRange("the anchor's fibre vanishes; rank(x) exceeds its atypicality".into()));
    }
    let gx_borel = q.gx.default_borel().clone();
    let (_, top) = lx
        .module_x
        .highest_weight_vectors(&gx_borel)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Inconsistent("fibre without highest-weight vectors".into()))?;
    let t_mod = extract_simple(&lx.module_x, &top, &gx_borel)?;
    let rs = q.gx.root_system(&gx_borel);
    let (_, w) = t_mod.highest_weight_vectors(&gx_borel).into_iter().next().expect("simple module has a top");
    let top_weight = t_mod.weight(w.first_index().expect("nonzero"));
    if atypicality_in(&rs, top_weight)?.k != 0 {
        return Err(Error::Inconsistent("constituent of the anchor's fibre is not typical".into()));
    }
    let probes: Vec<Supermodule> = default_probes(&x.basis)?
        .iter()
        .map(|p| fibre_module_with(p, x, &q).map(|r| r.module_x))
        .collect::<Result<_>>()?;
    let sols = solve_trace_functional(&t_mod, &probes, &[])?;
    if sols.len() != 1 {
        return Err(Error::Inconsistent(format!("trace on the projective ideal of g_x has a {}-dimensional solution space", sols.len())));
    }
    let mut t = sols.into_iter().next().expect("one solution");
    t.provenance = Provenance::FibreComposed;
    let mx = fibre_module_with(m, x, &q)?;
    let fx = fibre_morphism(&Morphism::new(f.clone(), Parity::Even), &mx, &mx)?;
    let value = trace_auto(&t, &mx.module_x, &fx.matrix)?;
    Ok(FibreTrace {
        value,
        gx: q.gx.spec().label(),
        anchor_fibre_dims: lx.module_x.dims(),
        module_fibre_dims: mx.module_x.dims(),
        typical_dims: t_mod.dims(),
        solution_dim: 1,
    })
}
