//! Simple quotients of highest-weight submodules, and a catalog that finds
//! simple modules by highest weight inside tensor products.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::algebra::LieAlgebra;
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseMatrix, SparseVec, TrackedBasis};
use crate::matrixreal::LieBasis;
use crate::rootdata::{BorelChoice, Family, Parity, Weight};

use super::{berezinian, natural_module, Supermodule};

pub const DEFAULT_DIM_CAP: usize = 500;

/// `L(λ)` realized as `C / N`, where `C` is the submodule generated by the
/// highest-weight vector `v` and `N` is its maximal submodule. The top
/// vector of the result is even.
///
/// `N` is computed weight by weight from the top down: a vector of `C_μ`
/// (μ ≠ λ) lies in `N` iff every positive root vector sends it into `N`.
pub fn extract_simple(m: &Supermodule, v: &SparseVec, borel: &BorelChoice) -> Result<Supermodule> {
    let alg = m.algebra().clone();
    let n = m.dim();
    let Some(first) = v.first_index() else {
        return Err(Error::NotHighestWeight);
    };
    let lambda = m.weight(first).clone();
    let top_parity = m.parity(first);
    if v.iter().any(|(j, _)| m.weight(*j) != &lambda || m.parity(*j) != top_parity) {
        return Err(Error::NotHighestWeight);
    }
    let positive = alg.positive_elements(borel);
    if positive.iter().any(|a| !m.action(*a).apply(v).is_zero()) {
        return Err(Error::NotHighestWeight);
    }
    let negative: Vec<usize> = alg.root_elements().filter(|i| !positive.contains(i)).collect();

    // C = U(n^-) v, piece by piece
    let piece_of = |u: &SparseVec| -> (Weight, Parity) {
        let j = u.first_index().expect("nonzero");
        (m.weight(j).clone(), m.parity(j))
    };
    let mut pieces: BTreeMap<(Weight, Parity), Echelon> = BTreeMap::new();
    let mut queue = vec![v.clone()];
    pieces.entry(piece_of(v)).or_insert_with(|| Echelon::new(n)).insert(v.clone());
    while let Some(u) = queue.pop() {
        for a in &negative {
            let w = m.action(*a).apply(&u);
            if w.is_zero() {
                continue;
            }
            let e = pieces.entry(piece_of(&w)).or_insert_with(|| Echelon::new(n));
            if e.insert(w.clone()) {
                queue.push(w);
            }
        }
    }

    // N, from the top down
    let mut order: Vec<(Weight, Parity)> = pieces.keys().cloned().collect();
    order.sort_by(|a, b| borel.key(&b.0).cmp(&borel.key(&a.0)).then(a.1.cmp(&b.1)));
    let mut radical: HashMap<(Weight, Parity), Echelon> = HashMap::new();
    for key in &order {
        let c = &pieces[key];
        if key.0 == lambda {
            radical.insert(key.clone(), Echelon::new(n));
            continue;
        }
        // unknowns: coefficients on the rows of C_μ; condition e_α u ∈ N_{μ+α}
        let basis: Vec<SparseVec> = c.rows().to_vec();
        let mut offset = 0;
        let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); basis.len()];
        for a in &positive {
            let images: Vec<SparseVec> = basis.iter().map(|u| m.action(*a).apply(u)).collect();
            let target = images.iter().find(|w| !w.is_zero()).map(piece_of);
            let Some(target) = target else { continue };
            let empty = Echelon::new(n);
            let nt = radical.get(&target).unwrap_or(&empty);
            for (k, w) in images.iter().enumerate() {
                for (r, x) in nt.reduce(w).iter() {
                    cols[k].push((offset + r, x.clone()));
                }
            }
            offset += n;
        }
        let system = SparseMatrix::from_columns(offset.max(1), cols.into_iter().map(SparseVec::from_sorted).collect());
        let kernel = system.kernel();
        let mut e = Echelon::new(n);
        for kvec in kernel {
            let u = crate::linalg::linear_combination(kvec.iter().map(|(k, x)| (x.clone(), &basis[*k])));
            e.insert(u);
        }
        radical.insert(key.clone(), e);
    }

    // quotient C / N
    let mut reps: Vec<SparseVec> = Vec::new();
    let mut rep_piece: Vec<(Weight, Parity)> = Vec::new();
    let mut trackers: HashMap<(Weight, Parity), (TrackedBasis, usize)> = HashMap::new();
    // order the quotient basis from the top down
    for key in &order {
        let c = &pieces[key];
        let nk = &radical[key];
        let mut t = TrackedBasis::new(n, c.rank() + 1);
        let start = reps.len();
        for u in c.rows() {
            let r = nk.reduce(u);
            if t.try_insert(r.clone()) {
                reps.push(r);
                rep_piece.push(key.clone());
            }
        }
        if reps.len() > start {
            trackers.insert(key.clone(), (t, start));
        }
    }
    let dim = reps.len();
    let flip = top_parity == Parity::Odd;
    let parity: Vec<Parity> = rep_piece.iter().map(|(_, p)| if flip { p.flip() } else { *p }).collect();
    let mut action = Vec::with_capacity(alg.dim());
    for a in 0..alg.dim() {
        let mat = m.action(a);
        let mut cols = Vec::with_capacity(dim);
        for r in &reps {
            let w = mat.apply(r);
            if w.is_zero() {
                cols.push(SparseVec::new());
                continue;
            }
            let key = piece_of(&w);
            let col = match (radical.get(&key), trackers.get(&key)) {
                (Some(nk), Some((t, start))) => {
                    let red = nk.reduce(&w);
                    let c = t
                        .coordinates(&red)
                        .ok_or_else(|| Error::Inconsistent("generated submodule is not closed".into()))?;
                    c.remap(|i| Some(i + start))
                }
                (Some(nk), None) => {
                    if !nk.reduce(&w).is_zero() {
                        return Err(Error::Inconsistent("generated submodule is not closed".into()));
                    }
                    SparseVec::new()
                }
                _ => return Err(Error::Inconsistent("generated submodule is not closed".into())),
            };
            cols.push(col);
        }
        action.push(SparseMatrix::from_columns(dim, cols));
    }
    let out = Supermodule::new(alg, parity, action)?;
    let hw = out.highest_weight_vectors(borel);
    if hw.len() != 1 {
        return Err(Error::Inconsistent(format!("extracted module has {} highest-weight vectors", hw.len())));
    }
    Ok(out)
}

/// Simple modules found by highest weight inside tensor products of
/// already-known simples, smallest products first, under a dimension cap.
pub struct SimpleCatalog {
    algebra: Arc<LieAlgebra>,
    borel: BorelChoice,
    cap: usize,
    modules: Vec<Supermodule>,
    tops: Vec<Weight>,
    by_weight: BTreeMap<Weight, usize>,
    tried: BTreeSet<(usize, usize)>,
    /// products whose top weight has a coordinate beyond this are skipped
    bound: Option<Q>,
}

fn max_abs(w: &Weight) -> Q {
    w.coords().map(|c| c.abs()).max().unwrap_or_else(Q::zero)
}

fn l1(w: &Weight) -> Q {
    w.coords().map(|c| c.abs()).sum()
}

impl SimpleCatalog {
    /// Seeds: trivial, defining module and its dual, and for gl the
    /// Berezinian and its inverse.
    pub fn new(basis: &LieBasis, borel: &BorelChoice, cap: usize) -> Result<Self> {
        let alg = basis.algebra().clone();
        let mut seeds = vec![Supermodule::trivial(&alg)];
        if alg.dim() > 0 && basis.matrix_size() > 0 {
            let v = natural_module(basis);
            seeds.push(v.dual());
            seeds.push(v);
        }
        if alg.spec().family == Family::Gl && alg.spec().rank() > 0 {
            seeds.push(berezinian(&alg, 1)?);
            seeds.push(berezinian(&alg, -1)?);
        }
        Self::with_seeds(&alg, borel, cap, seeds)
    }

    pub fn with_seeds(alg: &Arc<LieAlgebra>, borel: &BorelChoice, cap: usize, seeds: Vec<Supermodule>) -> Result<Self> {
        let mut cat = SimpleCatalog {
            algebra: alg.clone(),
            borel: borel.clone(),
            cap,
            modules: Vec::new(),
            tops: Vec::new(),
            by_weight: BTreeMap::new(),
            tried: BTreeSet::new(),
            bound: None,
        };
        for s in seeds {
            if !Arc::ptr_eq(s.algebra(), alg) {
                return Err(Error::BasisMismatch);
            }
            cat.absorb(&s)?;
        }
        Ok(cat)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn known(&self) -> impl Iterator<Item = (&Weight, &Supermodule)> {
        self.by_weight.iter().map(|(w, i)| (w, &self.modules[*i]))
    }

    /// Adds the simple quotients at every new highest weight of `m`.
    fn absorb(&mut self, m: &Supermodule) -> Result<usize> {
        let mut added = 0;
        for (w, v) in m.highest_weight_vectors(&self.borel) {
            if self.by_weight.contains_key(&w) {
                continue;
            }
            let l = extract_simple(m, &v, &self.borel)?;
            if l.dim() > self.cap {
                continue;
            }
            self.by_weight.insert(w.clone(), self.modules.len());
            self.modules.push(l);
            self.tops.push(w);
            added += 1;
        }
        Ok(added)
    }

    fn is_unit(&self, i: usize) -> bool {
        self.modules[i].dim() == 1 && self.modules[i].weight(0).is_zero()
    }

    /// Smallest product first, then smallest top weight.
    fn next_pair(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, Q, (usize, usize))> = None;
        let idx: Vec<usize> = self.by_weight.values().copied().collect();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a..] {
                let (i, j) = (i.min(j), i.max(j));
                if self.tried.contains(&(i, j)) {
                    continue;
                }
                let d = self.modules[i].dim() * self.modules[j].dim();
                if d > self.cap || self.is_unit(i) || self.is_unit(j) {
                    continue;
                }
                let top = self.tops[i].add(&self.tops[j]);
                if self.bound.as_ref().is_some_and(|b| &max_abs(&top) > b) {
                    continue;
                }
                let cand = (d, l1(&top), (i, j));
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, _, p)| p)
    }

    /// One tensor-product step. Returns false when no product fits the cap.
    pub fn grow(&mut self) -> Result<bool> {
        let Some((i, j)) = self.next_pair() else {
            return Ok(false);
        };
        self.tried.insert((i, j));
        let prod = self.modules[i].tensor(&self.modules[j])?;
        self.absorb(&prod)?;
        Ok(true)
    }

    fn widen_bound(&mut self, lambda: &Weight) {
        let b = max_abs(lambda) + Q::from_int(2);
        if self.bound.as_ref().map_or(true, |old| old < &b) {
            self.bound = Some(b);
        }
    }

    /// `L(λ)` if some product under the cap contains it. Products whose
    /// top weight has a coordinate larger than `max |λ_i| + 2` in absolute
    /// value are not formed.
    pub fn find(&mut self, lambda: &Weight) -> Result<Supermodule> {
        self.widen_bound(lambda);
        loop {
            if let Some(i) = self.by_weight.get(lambda) {
                return Ok(self.modules[*i].clone());
            }
            if !self.grow()? {
                return Err(Error::Unrealizable(lambda.to_string()));
            }
        }
    }

    /// Like [`SimpleCatalog::find`] but gives up after `budget` products.
    pub fn find_within(&mut self, lambda: &Weight, budget: usize) -> Result<Supermodule> {
        self.widen_bound(lambda);
        for _ in 0..=budget {
            if let Some(i) = self.by_weight.get(lambda) {
                return Ok(self.modules[*i].clone());
            }
            if !self.grow()? {
                break;
            }
        }
        self.by_weight
            .get(lambda)
            .map(|i| self.modules[*i].clone())
            .ok_or_else(|| Error::Unrealizable(lambda.to_string()))
    }
}
