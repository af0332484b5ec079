//! Finite-dimensional supermodules given by explicit action matrices.
//!
//! A [`Supermodule`] stores one (column-major, sparse) matrix per basis
//! element of its algebra. Bases are always weight bases: the Cartan
//! elements act diagonally and the weight of each basis vector is read off
//! the diagonal.

mod hom;
mod kac;
mod ribbon;
mod simple;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

pub use hom::{hom_space, hom_space_direct, is_intertwiner, summand_multiplicity, Morphism};
pub use kac::{kac_module, kac_top_vector, weyl_dimension};
pub use ribbon::{braiding, left_partial_trace_composite, ribbon_maps, right_partial_trace_composite, RibbonMaps};
pub use simple::{extract_simple, SimpleCatalog, DEFAULT_DIM_CAP};

use crate::algebra::{ElementKind, LieAlgebra};
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::matrixreal::LieBasis;
use crate::rootdata::{BorelChoice, Parity, Weight};

#[derive(Clone, Debug)]
pub struct Supermodule {
    algebra: Arc<LieAlgebra>,
    parity: Vec<Parity>,
    weights: Vec<Weight>,
    action: Vec<SparseMatrix>,
}

impl Supermodule {
    /// Checks shapes, parity compatibility and a diagonal Cartan action.
    /// The bracket relations are checked separately by [`Supermodule::validate`].
    pub fn new(algebra: Arc<LieAlgebra>, parity: Vec<Parity>, action: Vec<SparseMatrix>) -> Result<Self> {
        let n = parity.len();
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!("{} action matrices for a {}-dimensional algebra", action.len(), algebra.dim())));
        }
        for (i, a) in action.iter().enumerate() {
            if a.nrows() != n || a.ncols() != n {
                return Err(Error::InvalidModule(format!("action matrix {i} has the wrong shape")));
            }
            let p = algebra.parity(i);
            for (r, c, _) in a.triplets() {
                if parity[r] != parity[c].add(p) {
                    return Err(Error::InvalidModule(format!("{} does not respect the grading", algebra.element(i).label)));
                }
            }
        }
        let spec = *algebra.spec();
        let mut weights = vec![spec.zero_weight(); n];
        for c in 0..spec.rank() {
            let h = &action[algebra.cartan_index(c)];
            let diag = h
                .diagonal_entries()
                .ok_or_else(|| Error::InvalidModule("Cartan does not act diagonally on the basis".into()))?;
            for (j, v) in diag.into_iter().enumerate() {
                *weights[j].coord_mut(c) = v;
            }
        }
        Ok(Supermodule { algebra, parity, weights, action })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// (even, odd) dimensions.
    pub fn dims(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|p| **p == Parity::Odd).count();
        (self.dim() - odd, odd)
    }

    pub fn sdim(&self) -> i64 {
        let (e, o) = self.dims();
        e as i64 - o as i64
    }

    pub fn parity(&self, j: usize) -> Parity {
        self.parity[j]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn weight(&self, j: usize) -> &Weight {
        &self.weights[j]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn action(&self, i: usize) -> &SparseMatrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[SparseMatrix] {
        &self.action
    }

    pub fn same_algebra(&self, other: &Supermodule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
    }

    pub(crate) fn check_same(&self, other: &Supermodule) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    /// Action of an arbitrary algebra element given in coordinates.
    pub fn act_element(&self, coeffs: &SparseVec) -> SparseMatrix {
        let n = self.dim();
        let mut acc = SparseMatrix::zeros(n, n);
        for (i, c) in coeffs.iter() {
            acc = acc.add_scaled(c, &self.action[*i]);
        }
        acc
    }

    /// Checks `ρ([a,b]) = ρ(a)ρ(b) - (-1)^{|a||b|} ρ(b)ρ(a)` on all basis pairs
    /// and integrality of the weights.
    pub fn validate(&self) -> Result<()> {
        if !self.weights.iter().all(|w| w.is_integral()) {
            return Err(Error::InvalidModule("non-integral weight".into()));
        }
        let d = self.algebra.dim();
        for a in 0..d {
            for b in a..d {
                let lhs = self.act_element(self.algebra.bracket(a, b));
                let ab = self.action[a].mul(&self.action[b]);
                let ba = self.action[b].mul(&self.action[a]);
                let odd = self.algebra.parity(a) == Parity::Odd && self.algebra.parity(b) == Parity::Odd;
                let rhs = if odd { ab.add(&ba) } else { ab.sub(&ba) };
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "bracket relation fails for ({}, {})",
                        self.algebra.element(a).label,
                        self.algebra.element(b).label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Basis indices grouped by (weight, parity).
    pub fn weight_pieces(&self) -> BTreeMap<(Weight, Parity), Vec<usize>> {
        let mut out: BTreeMap<(Weight, Parity), Vec<usize>> = BTreeMap::new();
        for j in 0..self.dim() {
            out.entry((self.weights[j].clone(), self.parity[j])).or_default().push(j);
        }
        out
    }

    /// Multiset of weights with multiplicities.
    pub fn character(&self) -> BTreeMap<Weight, (usize, usize)> {
        let mut out: BTreeMap<Weight, (usize, usize)> = BTreeMap::new();
        for j in 0..self.dim() {
            let e = out.entry(self.weights[j].clone()).or_default();
            match self.parity[j] {
                Parity::Even => e.0 += 1,
                Parity::Odd => e.1 += 1,
            }
        }
        out
    }

    pub fn trivial(algebra: &Arc<LieAlgebra>) -> Supermodule {
        let action = (0..algebra.dim()).map(|_| SparseMatrix::zeros(1, 1)).collect();
        Supermodule::new(algebra.clone(), vec![Parity::Even], action).expect("trivial module")
    }

    pub fn zero(algebra: &Arc<LieAlgebra>) -> Supermodule {
        let action = (0..algebra.dim()).map(|_| SparseMatrix::zeros(0, 0)).collect();
        Supermodule::new(algebra.clone(), Vec::new(), action).expect("zero module")
    }

    /// One-dimensional even module of weight `w`, where `w` vanishes on
    /// every bracket (e.g. the Berezinian of gl).
    pub fn one_dimensional(algebra: &Arc<LieAlgebra>, w: &Weight) -> Result<Supermodule> {
        let action: Vec<SparseMatrix> = algebra
            .elements()
            .iter()
            .map(|e| match e.kind {
                ElementKind::Cartan(c) => SparseMatrix::diagonal(&[w.coord(c).clone()]),
                ElementKind::Root => SparseMatrix::zeros(1, 1),
            })
            .collect();
        let m = Supermodule::new(algebra.clone(), vec![Parity::Even], action)?;
        m.validate()?;
        Ok(m)
    }

    /// Same action, opposite parities.
    pub fn parity_flip(&self) -> Supermodule {
        Supermodule {
            algebra: self.algebra.clone(),
            parity: self.parity.iter().map(|p| p.flip()).collect(),
            weights: self.weights.clone(),
            action: self.action.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Supermodule) -> Result<Supermodule> {
        self.check_same(other)?;
        let mut parity = self.parity.clone();
        parity.extend_from_slice(&other.parity);
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Supermodule { algebra: self.algebra.clone(), parity, weights, action })
    }

    /// Koszul tensor product; `v_i ⊗ w_k` has index `i * dim(N) + k`.
    pub fn tensor(&self, other: &Supermodule) -> Result<Supermodule> {
        self.check_same(other)?;
        let (dm, dn) = (self.dim(), other.dim());
        let mut parity = Vec::with_capacity(dm * dn);
        let mut weights = Vec::with_capacity(dm * dn);
        for i in 0..dm {
            for k in 0..dn {
                parity.push(self.parity[i].add(other.parity[k]));
                weights.push(self.weights[i].add(&other.weights[k]));
            }
        }
        let mut action = Vec::with_capacity(self.algebra.dim());
        for (a, (ma, na)) in self.action.iter().zip(&other.action).enumerate() {
            let odd = self.algebra.parity(a) == Parity::Odd;
            let mut cols = Vec::with_capacity(dm * dn);
            for i in 0..dm {
                let flip = odd && self.parity[i] == Parity::Odd;
                for k in 0..dn {
                    let mut entries: Vec<(usize, Q)> = Vec::new();
                    for (r, v) in ma.col(i).iter() {
                        entries.push((r * dn + k, v.clone()));
                    }
                    for (r, v) in na.col(k).iter() {
                        entries.push((i * dn + r, v.clone().neg_if(flip)));
                    }
                    cols.push(SparseVec::from_entries(entries));
                }
            }
            action.push(SparseMatrix::from_columns(dm * dn, cols));
        }
        Ok(Supermodule { algebra: self.algebra.clone(), parity, weights, action })
    }

    /// Dual module on the dual basis: `(a f)(v) = -(-1)^{|a||f|} f(a v)`.
    pub fn dual(&self) -> Supermodule {
        let n = self.dim();
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let odd = self.algebra.parity(a) == Parity::Odd;
                let trip = m.triplets().map(|(i, j, v)| {
                    let flip = odd && self.parity[i] == Parity::Odd;
                    (j, i, (-v.clone()).neg_if(flip))
                });
                SparseMatrix::from_triplets(n, n, trip.collect::<Vec<_>>())
            })
            .collect();
        Supermodule {
            algebra: self.algebra.clone(),
            parity: self.parity.clone(),
            weights: self.weights.iter().map(|w| w.neg()).collect(),
            action,
        }
    }

    /// Composes the action with an automorphism `σ` of the algebra (given by
    /// the matrix of σ on the basis). σ must preserve parity, the bracket and
    /// the Cartan subalgebra.
    pub fn twist_by_automorphism(&self, sigma: &SparseMatrix) -> Result<Supermodule> {
        let alg = &self.algebra;
        let d = alg.dim();
        if sigma.nrows() != d || sigma.ncols() != d {
            return Err(Error::NotAnAutomorphism("wrong shape".into()));
        }
        if sigma.rank() != d {
            return Err(Error::NotAnAutomorphism("not invertible".into()));
        }
        for j in 0..d {
            for (i, _) in sigma.col(j).iter() {
                if alg.parity(*i) != alg.parity(j) {
                    return Err(Error::NotAnAutomorphism("does not preserve parity".into()));
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                let lhs = sigma.apply(alg.bracket(a, b));
                let rhs = alg.bracket_vec(sigma.col(a), sigma.col(b));
                if lhs != rhs {
                    return Err(Error::NotAnAutomorphism(format!(
                        "bracket of {} and {} is not preserved",
                        alg.element(a).label,
                        alg.element(b).label
                    )));
                }
            }
        }
        let action: Vec<SparseMatrix> = (0..d).map(|a| self.act_element(sigma.col(a))).collect();
        let m = Supermodule::new(alg.clone(), self.parity.clone(), action)
            .map_err(|_| Error::NotAnAutomorphism("does not preserve the Cartan subalgebra".into()))?;
        Ok(m)
    }

    /// Restriction to a subalgebra whose elements sit at `indices` inside
    /// this module's algebra, and to the basis vectors `keep`.
    pub fn restrict(&self, sub: &Arc<LieAlgebra>, indices: &[usize], keep: &[usize]) -> Result<Supermodule> {
        let action = indices.iter().map(|i| self.action[*i].submatrix(keep, keep)).collect();
        let parity = keep.iter().map(|j| self.parity[*j]).collect();
        Supermodule::new(sub.clone(), parity, action)
    }

    /// The same module over another algebra with identical structure
    /// constants (used to move modules between equal copies).
    pub fn reattach(&self, algebra: &Arc<LieAlgebra>) -> Result<Supermodule> {
        if algebra.dim() != self.algebra.dim() {
            return Err(Error::BasisMismatch);
        }
        Supermodule::new(algebra.clone(), self.parity.clone(), self.action.clone())
    }

    /// Weight vectors killed by every positive root vector, one basis per
    /// (weight, parity) piece.
    pub fn highest_weight_vectors(&self, borel: &BorelChoice) -> Vec<(Weight, SparseVec)> {
        let pos = self.algebra.positive_elements(borel);
        self.annihilated_by(&pos)
    }

    /// Weight vectors killed by the positive even root vectors.
    pub fn even_primitive_vectors(&self, borel: &BorelChoice) -> Vec<(Weight, SparseVec)> {
        let pos: Vec<usize> = self
            .algebra
            .positive_elements(borel)
            .into_iter()
            .filter(|i| self.algebra.parity(*i) == Parity::Even)
            .collect();
        self.annihilated_by(&pos)
    }

    fn annihilated_by(&self, ops: &[usize]) -> Vec<(Weight, SparseVec)> {
        let n = self.dim();
        let mut out = Vec::new();
        for ((w, _), idx) in self.weight_pieces() {
            let cols: Vec<SparseVec> = idx
                .iter()
                .map(|j| {
                    let mut entries = Vec::new();
                    for (k, a) in ops.iter().enumerate() {
                        for (r, v) in self.action[*a].col(*j).iter() {
                            entries.push((k * n + r, v.clone()));
                        }
                    }
                    SparseVec::from_sorted(entries)
                })
                .collect();
            let m = SparseMatrix::from_columns(ops.len() * n, cols);
            for v in m.kernel() {
                out.push((w.clone(), v.embed(&idx)));
            }
        }
        out
    }

    /// Serializable bundle: spec, parities, sparse action matrices by label.
    pub fn bundle(&self) -> ModuleBundle {
        ModuleBundle {
            spec: self.algebra.spec().label(),
            dim: self.dim(),
            sdim: self.sdim(),
            parity: self.parity.clone(),
            weights: self.weights.clone(),
            action: self
                .algebra
                .elements()
                .iter()
                .zip(&self.action)
                .map(|(e, m)| {
                    (e.label.clone(), m.triplets().map(|(r, c, v)| crate::matrixreal::Triplet { row: r, col: c, val: v.clone() }).collect())
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleBundle {
    pub spec: String,
    pub dim: usize,
    pub sdim: i64,
    pub parity: Vec<Parity>,
    pub weights: Vec<Weight>,
    pub action: BTreeMap<String, Vec<crate::matrixreal::Triplet>>,
}

/// The defining representation.
pub fn natural_module(basis: &LieBasis) -> Supermodule {
    let parity = (0..basis.matrix_size()).map(|u| basis.index_parity(u)).collect();
    Supermodule::new(basis.algebra().clone(), parity, basis.matrices().to_vec()).expect("defining representation")
}

/// The Berezinian `Σ ε_i - Σ δ_j` (gl only), to the power `k`.
pub fn berezinian(algebra: &Arc<LieAlgebra>, k: i64) -> Result<Supermodule> {
    let spec = *algebra.spec();
    if spec.family != crate::rootdata::Family::Gl {
        return Err(Error::Unsupported("the Berezinian is defined for gl only".into()));
    }
    let w = Weight::from_coords(
        spec.m,
        (0..spec.rank()).map(|c| Q::from_int(if c < spec.m { k } else { -k })).collect(),
    );
    Supermodule::one_dimensional(algebra, &w)
}
