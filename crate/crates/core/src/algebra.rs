//! Abstract Lie superalgebras given by a weight basis and structure constants.
//!
//! Every algebra here has a basis of Cartan elements `H_c` (one per
//! coordinate, acting on a weight-μ vector by `μ_c`) followed by root
//! vectors, one per root. The realized algebras, the quotients `g_x` and the
//! subalgebras `g_k` all share this shape.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::linalg::{linear_combination, SparseVec};
use crate::rootdata::{BorelChoice, Parity, Root, RootSystem, SuperalgebraSpec, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ElementKind {
    /// `H_c` for coordinate `c`.
    Cartan(usize),
    Root,
}

#[derive(Clone, Debug, Serialize)]
pub struct Element {
    pub label: String,
    pub parity: Parity,
    pub weight: Weight,
    pub kind: ElementKind,
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    spec: SuperalgebraSpec,
    elements: Vec<Element>,
    /// `brackets[i * dim + j]` holds the coordinates of `[e_i, e_j]`.
    brackets: Vec<SparseVec>,
    borel: BorelChoice,
    root_index: HashMap<Weight, usize>,
    cartan: Vec<usize>,
}

impl LieAlgebra {
    /// Assembles an algebra; the Cartan elements must be exactly one per coordinate.
    pub fn new(
        spec: SuperalgebraSpec,
        elements: Vec<Element>,
        brackets: Vec<SparseVec>,
        borel: BorelChoice,
    ) -> Result<Self> {
        let d = elements.len();
        if brackets.len() != d * d {
            return Err(Error::DimensionMismatch(format!("{} brackets for dimension {d}", brackets.len())));
        }
        let r = spec.rank();
        let mut cartan = vec![usize::MAX; r];
        let mut root_index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if !e.weight.conforms(&spec) {
                return Err(Error::DimensionMismatch(format!("element {} has a weight of the wrong shape", e.label)));
            }
            match e.kind {
                ElementKind::Cartan(c) => {
                    if c >= r || cartan[c] != usize::MAX || !e.weight.is_zero() || e.parity != Parity::Even {
                        return Err(Error::InvalidSpec(format!("malformed Cartan element {}", e.label)));
                    }
                    cartan[c] = i;
                }
                ElementKind::Root => {
                    if e.weight.is_zero() || root_index.insert(e.weight.clone(), i).is_some() {
                        return Err(Error::InvalidSpec(format!("root element {} has a repeated or zero weight", e.label)));
                    }
                }
            }
        }
        if cartan.iter().any(|i| *i == usize::MAX) {
            return Err(Error::InvalidSpec("missing Cartan elements".into()));
        }
        Ok(LieAlgebra { spec, elements, brackets, borel, root_index, cartan })
    }

    pub fn spec(&self) -> &SuperalgebraSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// (even, odd) dimensions.
    pub fn dims(&self) -> (usize, usize) {
        let odd = self.elements.iter().filter(|e| e.parity == Parity::Odd).count();
        (self.dim() - odd, odd)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.elements[i].parity
    }

    pub fn default_borel(&self) -> &BorelChoice {
        &self.borel
    }

    pub fn cartan_index(&self, c: usize) -> usize {
        self.cartan[c]
    }

    pub fn cartan_indices(&self) -> &[usize] {
        &self.cartan
    }

    pub fn root_element(&self, w: &Weight) -> Option<usize> {
        self.root_index.get(w).copied()
    }

    pub fn root_elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|i| self.elements[*i].kind == ElementKind::Root)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i * self.dim() + j]
    }

    /// Bilinear extension of the bracket to arbitrary coordinate vectors.
    pub fn bracket_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let br = self.bracket(*i, *j);
                if !br.is_zero() {
                    terms.push((x * y, br));
                }
            }
        }
        linear_combination(terms)
    }

    pub fn roots(&self) -> Vec<Root> {
        self.root_elements()
            .map(|i| Root { weight: self.elements[i].weight.clone(), parity: self.elements[i].parity })
            .collect()
    }

    pub fn root_system(&self, borel: &BorelChoice) -> RootSystem {
        RootSystem::from_roots(self.spec, self.roots(), borel.clone())
    }

    /// Root elements that are positive for `borel`.
    pub fn positive_elements(&self, borel: &BorelChoice) -> Vec<usize> {
        self.root_elements().filter(|i| borel.is_positive(&self.elements[*i].weight)).collect()
    }

    /// Checks weights and parities of all brackets and the super Jacobi identity.
    pub fn verify(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let br = self.bracket(i, j);
                let (ei, ej) = (&self.elements[i], &self.elements[j]);
                let w = ei.weight.add(&ej.weight);
                let p = ei.parity.add(ej.parity);
                for (k, _) in br.iter() {
                    let ek = &self.elements[*k];
                    if ek.weight != w || ek.parity != p {
                        return Err(Error::Inconsistent(format!("[{}, {}] has a component on {}", ei.label, ej.label, ek.label)));
                    }
                }
                // super antisymmetry
                let sign = if ei.parity == Parity::Odd && ej.parity == Parity::Odd { Q::one() } else { -Q::one() };
                if self.bracket(j, i).scale(&sign) != *br {
                    return Err(Error::Inconsistent(format!("bracket of {} and {} is not super antisymmetric", ei.label, ej.label)));
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                let bc_ab = self.bracket(a, b);
                for c in 0..d {
                    // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
                    let lhs = self.bracket_vec(&SparseVec::unit(a), self.bracket(b, c));
                    let mut rhs = self.bracket_vec(bc_ab, &SparseVec::unit(c));
                    let s = if self.parity(a) == Parity::Odd && self.parity(b) == Parity::Odd { -Q::one() } else { Q::one() };
                    rhs.axpy(&s, &self.bracket_vec(&SparseVec::unit(b), self.bracket(a, c)));
                    if lhs != rhs {
                        return Err(Error::Inconsistent(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.elements[a].label, self.elements[b].label, self.elements[c].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Subalgebra spanned by the Cartan elements of the listed coordinates and
    /// the root vectors whose weights are supported on them. Returns the
    /// subalgebra (with weights restricted and re-indexed, ε's then δ's in the
    /// given order) and the indices of its elements inside `self`.
    pub fn coordinate_subalgebra(
        &self,
        sub_spec: SuperalgebraSpec,
        eps_coords: &[usize],
        delta_coords: &[usize],
    ) -> Result<(LieAlgebra, Vec<usize>)> {
        let m = self.spec.m;
        let mut keep_coord = vec![false; self.spec.rank()];
        let mut new_coord = vec![usize::MAX; self.spec.rank()];
        for (k, c) in eps_coords.iter().enumerate() {
            keep_coord[*c] = true;
            new_coord[*c] = k;
        }
        for (k, c) in delta_coords.iter().enumerate() {
            keep_coord[m + *c] = true;
            new_coord[m + *c] = eps_coords.len() + k;
        }
        let mut idx = Vec::new();
        for c in eps_coords.iter().copied().chain(delta_coords.iter().map(|j| m + j)) {
            idx.push(self.cartan[c]);
        }
        for i in self.root_elements() {
            let w = &self.elements[i].weight;
            if (0..self.spec.rank()).all(|c| keep_coord[c] || w.coord(c).is_zero()) {
                idx.push(i);
            }
        }
        let mut pos = vec![usize::MAX; self.dim()];
        for (k, i) in idx.iter().enumerate() {
            pos[*i] = k;
        }
        let elements: Vec<Element> = idx
            .iter()
            .map(|i| {
                let e = &self.elements[*i];
                let kind = match e.kind {
                    ElementKind::Cartan(c) => ElementKind::Cartan(new_coord[c]),
                    ElementKind::Root => ElementKind::Root,
                };
                let weight = e.weight.project(eps_coords, delta_coords);
                let label = match kind {
                    ElementKind::Cartan(c) => format!("H{}", c + 1),
                    ElementKind::Root => crate::rootdata::format_weight_symbolic(&weight),
                };
                Element { label, parity: e.parity, weight, kind }
            })
            .collect();
        let d = idx.len();
        let mut brackets = Vec::with_capacity(d * d);
        for a in &idx {
            for b in &idx {
                let br = self.bracket(*a, *b);
                let mapped = br.remap(|k| if pos[k] == usize::MAX { None } else { Some(pos[k]) });
                if mapped.nnz() != br.nnz() {
                    return Err(Error::InclusionFailure("coordinate subalgebra is not closed under the bracket".into()));
                }
                brackets.push(mapped);
            }
        }
        let borel = self.borel.restrict(m, eps_coords, delta_coords);
        Ok((LieAlgebra::new(sub_spec, elements, brackets, borel)?, idx))
    }
}
