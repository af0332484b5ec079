//! The fibre functor `M ↦ M_x = Ker(x)/Im(x)` with its `g_x`-action, its
//! effect on morphisms, and the weight projection onto a `g_k`-module.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::atypicality::gk_coordinates;
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseMatrix, SparseVec, TrackedBasis};
use crate::matrixreal::{centralizer_quotient, CentralizerQuotient, OddElement};
use crate::rootdata::{Parity, SuperalgebraSpec, Weight};
use crate::supermodules::{hom_space, Morphism, ModuleBundle, Supermodule};

#[derive(Clone, Debug)]
pub struct FibreResult {
    pub quotient: Arc<CentralizerQuotient>,
    pub module_x: Supermodule,
    pub kernel_basis: Vec<SparseVec>,
    pub image_basis: Vec<SparseVec>,
    /// Kernel vectors lifting the basis of `M_x`, one per basis vector.
    pub section: Vec<SparseVec>,
    image: Echelon,
    tracker: TrackedBasis,
}

#[derive(Clone, Debug, Serialize)]
pub struct FibreSummary {
    pub spec: String,
    pub gx: String,
    pub dim: usize,
    pub sdim: i64,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub dims_x: (usize, usize),
    pub sdim_x: i64,
    pub module_x: ModuleBundle,
}

impl FibreResult {
    /// Coordinates in `M_x` of a vector of `Ker(x)`.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        self.tracker.coordinates(&self.image.reduce(v))
    }

    pub fn summary(&self, m: &Supermodule) -> FibreSummary {
        FibreSummary {
            spec: m.algebra().spec().label(),
            gx: self.quotient.gx.spec().label(),
            dim: m.dim(),
            sdim: m.sdim(),
            kernel_dim: self.kernel_basis.len(),
            image_dim: self.image_basis.len(),
            dims_x: self.module_x.dims(),
            sdim_x: self.module_x.sdim(),
            module_x: self.module_x.bundle(),
        }
    }
}

fn check_x(m: &Supermodule, x: &OddElement) -> Result<()> {
    if !Arc::ptr_eq(m.algebra(), x.algebra()) {
        return Err(Error::BasisMismatch);
    }
    if !x.is_self_commuting() {
        return Err(Error::NotSelfCommuting { first: "x".into(), second: "x".into() });
    }
    Ok(())
}

/// `M_x` over a freshly computed `g_x`.
pub fn fibre_module(m: &Supermodule, x: &OddElement) -> Result<FibreResult> {
    check_x(m, x)?;
    let q = Arc::new(centralizer_quotient(x)?);
    fibre_module_with(m, x, &q)
}

/// `M_x` over a given quotient, so that fibres of several modules live over
/// the same `g_x` and can be compared.
pub fn fibre_module_with(m: &Supermodule, x: &OddElement, q: &Arc<CentralizerQuotient>) -> Result<FibreResult> {
    check_x(m, x)?;
    let n = m.dim();
    let xm = m.act_element(&x.coeffs);
    if !xm.mul(&xm).is_zero() {
        return Err(Error::Inconsistent("x does not square to zero on M".into()));
    }
    let kept = &q.kept_coords;
    let ukey = |j: usize| -> (Vec<Q>, Parity) {
        (kept.iter().map(|c| m.weight(j).coord(*c).clone()).collect(), m.parity(j))
    };
    // x preserves the weight on the kept coordinates and flips parity
    let mut blocks: BTreeMap<(Vec<Q>, Parity), Vec<usize>> = BTreeMap::new();
    for j in 0..n {
        blocks.entry(ukey(j)).or_default().push(j);
    }
    let all_rows: Vec<usize> = (0..n).collect();
    let image = xm.image();
    let mut kernel_basis = Vec::new();
    let mut tracker = TrackedBasis::new(n, n + 1);
    let mut section = Vec::new();
    let mut parity = Vec::new();
    for ((_, p), idx) in &blocks {
        for k in xm.submatrix(&all_rows, idx).kernel() {
            let v = k.embed(idx);
            let r = image.reduce(&v);
            if !r.is_zero() && tracker.try_insert(r) {
                section.push(v.clone());
                parity.push(*p);
            }
            kernel_basis.push(v);
        }
    }
    for row in image.rows() {
        if !xm.apply(row).is_zero() {
            return Err(Error::InclusionFailure("Im(x) is not contained in Ker(x)".into()));
        }
    }
    if section.len() + image.rank() != kernel_basis.len() {
        return Err(Error::Inconsistent("Ker(x)/Im(x) has the wrong dimension".into()));
    }

    let gx = q.gx.clone();
    let mut action = Vec::with_capacity(gx.dim());
    for rep in &q.reps {
        let a = m.act_element(rep);
        for row in image.rows() {
            if !image.contains(&a.apply(row)) {
                return Err(Error::RepresentativeDependence("an element of Cent(x) does not preserve Im(x)".into()));
            }
        }
        let mut cols = Vec::with_capacity(section.len());
        for u in &section {
            let w = a.apply(u);
            let c = tracker
                .coordinates(&image.reduce(&w))
                .ok_or_else(|| Error::RepresentativeDependence("an element of Cent(x) leaves Ker(x)".into()))?;
            cols.push(c);
        }
        action.push(SparseMatrix::from_columns(section.len(), cols));
    }
    // [x, g] acts by zero on M_x
    for row in q.image.rows() {
        let a = m.act_element(row);
        for u in &section {
            if !image.contains(&a.apply(u)) {
                return Err(Error::RepresentativeDependence("[x, g] acts nontrivially on M_x".into()));
            }
        }
    }
    let module_x = Supermodule::new(gx, parity, action)?;
    Ok(FibreResult {
        quotient: q.clone(),
        module_x,
        kernel_basis,
        image_basis: image.rows().to_vec(),
        section,
        image,
        tracker,
    })
}

/// `f_x: M_x → N_x` for a morphism `f: M → N`.
pub fn fibre_morphism(f: &Morphism, mx: &FibreResult, nx: &FibreResult) -> Result<Morphism> {
    if !Arc::ptr_eq(&mx.quotient, &nx.quotient) {
        return Err(Error::BasisMismatch);
    }
    for v in &mx.image_basis {
        if !nx.image.contains(&f.matrix.apply(v)) {
            return Err(Error::InclusionFailure("f does not map Im(x) into Im(x)".into()));
        }
    }
    let mut cols = Vec::with_capacity(mx.section.len());
    for u in &mx.section {
        let w = f.matrix.apply(u);
        let c = nx
            .class_of(&w)
            .ok_or_else(|| Error::InclusionFailure("f does not map Ker(x) into Ker(x)".into()))?;
        cols.push(c);
    }
    Ok(Morphism::new(SparseMatrix::from_columns(nx.section.len(), cols), f.parity))
}

/// `g_k` as a coordinate subalgebra of g, with its element positions in g.
#[derive(Clone, Debug)]
pub struct GkEmbedding {
    pub algebra: Arc<LieAlgebra>,
    pub indices: Vec<usize>,
    pub eps: Vec<usize>,
    pub delta: Vec<usize>,
    /// Coordinates of g outside `g_k`.
    pub complement: Vec<usize>,
}

pub fn gk_embedding(g: &LieAlgebra, k: usize) -> Result<GkEmbedding> {
    let spec = *g.spec();
    let (eps, delta) = gk_coordinates(&spec, k)?;
    let sub_spec = SuperalgebraSpec::degenerate(spec.family, k, k);
    let (alg, indices) = g.coordinate_subalgebra(sub_spec, &eps, &delta)?;
    let inside: Vec<usize> = eps.iter().copied().chain(delta.iter().map(|j| spec.m + j)).collect();
    let complement = (0..spec.rank()).filter(|c| !inside.contains(c)).collect();
    Ok(GkEmbedding { algebra: Arc::new(alg), indices, eps, delta, complement })
}

/// The `μ'`-eigenspace of the Cartan part outside `g_k`, as a `g_k`-module,
/// and the (even, odd) dimensions of its complement.
pub fn res_prime_split(m: &Supermodule, emb: &GkEmbedding, mu: &Weight) -> Result<(Supermodule, (usize, usize))> {
    let spec = *m.algebra().spec();
    if !mu.conforms(&spec) {
        return Err(Error::DimensionMismatch(format!("weight {mu} does not conform to {spec}")));
    }
    let keep: Vec<usize> = (0..m.dim())
        .filter(|j| emb.complement.iter().all(|c| m.weight(*j).coord(*c) == mu.coord(*c)))
        .collect();
    let res = m.restrict(&emb.algebra, &emb.indices, &keep)?;
    let (e, o) = m.dims();
    let (re, ro) = res.dims();
    Ok((res, (e - re, o - ro)))
}

/// (even, odd) dimensions of `Hom_{g_x}(T, M_x)`.
pub fn typical_multiplicity(t: &Supermodule, mx: &Supermodule) -> Result<(usize, usize)> {
    let hs = hom_space(t, mx)?;
    let odd = hs.iter().filter(|f| f.parity == Parity::Odd).count();
    Ok((hs.len() - odd, odd))
}
