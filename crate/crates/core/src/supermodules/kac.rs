//! Kac modules `K(λ) = Λ(g_{-1}) ⊗ L_0(λ)` for gl(m|n).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{ElementKind, LieAlgebra};
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::matrixreal::{realize_unchecked, LieBasis};
use crate::rootdata::{BorelChoice, Family, Parity, RootSystem, SuperalgebraSpec, Weight};

use super::{SimpleCatalog, Supermodule};

/// `Π (λ+ρ_0, β) / (ρ_0, β)` over the positive even roots.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Q {
    let even = rs.positive_even();
    let mut rho0 = rs.spec.zero_weight();
    for b in &even {
        rho0 = rho0.add(&b.weight);
    }
    let rho0 = rho0.scale(&Q::half());
    let shifted = lambda.add(&rho0);
    let mut acc = Q::one();
    for b in &even {
        acc = acc * shifted.pair(&b.weight) / rho0.pair(&b.weight);
    }
    acc
}

fn weakly_decreasing(v: &[Q]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// Simple module of the even algebra gl(m|0) or gl(0|n), all even.
/// `None` for an empty block.
fn gl_block_simple(spec: SuperalgebraSpec, lambda: &Weight) -> Result<Option<(Arc<LieAlgebra>, Supermodule)>> {
    if spec.rank() == 0 {
        return Ok(None);
    }
    let basis: LieBasis = realize_unchecked(spec)?;
    let alg = basis.algebra().clone();
    let borel = BorelChoice::distinguished(&spec);
    let mut cat = SimpleCatalog::new(&basis, &borel, 100_000)?;
    let l = cat.find(lambda)?;
    let even = Supermodule::new(alg.clone(), vec![Parity::Even; l.dim()], l.actions().to_vec())?;
    Ok(Some((alg, even)))
}

/// Mask → position: by number of factors, then numerically.
fn mask_order(bits: usize) -> Vec<usize> {
    let mut masks: Vec<usize> = (0..1usize << bits).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

/// `y_t · y_S` for an ordered monomial `S`: sign and new mask, or zero.
fn wedge(t: usize, mask: usize) -> Option<(bool, usize)> {
    if mask >> t & 1 == 1 {
        return None;
    }
    let neg = (mask & ((1 << t) - 1)).count_ones() % 2 == 1;
    Some((neg, mask | 1 << t))
}

type KVec = BTreeMap<(usize, usize), Q>;

fn kv_add(acc: &mut KVec, key: (usize, usize), c: Q) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(key).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

struct KacData<'a> {
    alg: &'a LieAlgebra,
    /// g_{-1} elements; position t in a monomial refers to `lower[t]`
    lower: Vec<usize>,
    lower_pos: BTreeMap<usize, usize>,
    l0: Vec<SparseMatrix>,
}

impl KacData<'_> {
    fn mask_bits(mask: usize) -> Vec<usize> {
        (0..usize::BITS as usize).filter(|t| mask >> t & 1 == 1).collect()
    }

    /// left multiplication of `v` by `y_t`
    fn left_wedge(&self, t: usize, v: &KVec) -> KVec {
        let mut out = KVec::new();
        for ((mask, w), c) in v {
            if let Some((neg, m2)) = wedge(t, *mask) {
                kv_add(&mut out, (m2, *w), c.clone().neg_if(neg));
            }
        }
        out
    }

    /// `[a, y_t]` as coordinates over g_{-1} positions
    fn bracket_lower(&self, a: usize, t: usize) -> Vec<(usize, Q)> {
        self.alg
            .bracket(a, self.lower[t])
            .iter()
            .map(|(k, c)| (self.lower_pos[k], c.clone()))
            .collect()
    }

    /// even element `a` acting on `y_S ⊗ w`
    fn act_even(&self, a: usize, mask: usize, w: usize) -> KVec {
        let mut out = KVec::new();
        let word = Self::mask_bits(mask);
        for i in 0..word.len() {
            for (t, c) in self.bracket_lower(a, word[i]) {
                let mut new_word = word.clone();
                new_word[i] = t;
                let mut v = KVec::new();
                v.insert((0, w), c);
                for s in new_word.iter().rev() {
                    v = self.left_wedge(*s, &v);
                }
                for (k, x) in v {
                    kv_add(&mut out, k, x);
                }
            }
        }
        for (r, c) in self.l0[a].col(w).iter() {
            kv_add(&mut out, (mask, *r), c.clone());
        }
        out
    }

    /// raising odd element `e` acting on `y_S ⊗ w`
    fn act_raise(&self, e: usize, mask: usize, w: usize) -> KVec {
        let word = Self::mask_bits(mask);
        let mut out = KVec::new();
        for i in 0..word.len() {
            let br = self.alg.bracket(e, self.lower[word[i]]);
            if br.is_zero() {
                continue;
            }
            let suffix: usize = word[i + 1..].iter().map(|t| 1 << t).sum();
            let mut v = KVec::new();
            for (g, c) in br.iter() {
                for (k, x) in self.act_even(*g, suffix, w) {
                    kv_add(&mut v, k, x * c);
                }
            }
            for s in word[..i].iter().rev() {
                v = self.left_wedge(*s, &v);
            }
            let neg = i % 2 == 1;
            for (k, x) in v {
                kv_add(&mut out, k, x.neg_if(neg));
            }
        }
        out
    }
}

/// `K(λ)` for gl(m|n) with the distinguished grading; `λ` must be
/// dominant integral (weakly decreasing ε and δ coordinates).
pub fn kac_module(basis: &LieBasis, lambda: &Weight) -> Result<Supermodule> {
    let spec = *basis.spec();
    if spec.family != Family::Gl {
        return Err(Error::Unsupported("Kac modules are built for gl(m|n) only".into()));
    }
    if !lambda.conforms(&spec) {
        return Err(Error::DimensionMismatch(format!("weight {lambda} does not conform to {spec}")));
    }
    if !lambda.is_integral() || !weakly_decreasing(&lambda.eps) || !weakly_decreasing(&lambda.delta) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let alg = basis.algebra().clone();
    let (m, n) = (spec.m, spec.n);
    let spec_a = SuperalgebraSpec::degenerate(Family::Gl, m, 0);
    let spec_b = SuperalgebraSpec::degenerate(Family::Gl, 0, n);
    let block_a = gl_block_simple(spec_a, &Weight { eps: lambda.eps.clone(), delta: vec![] })?;
    let block_b = gl_block_simple(spec_b, &Weight { eps: vec![], delta: lambda.delta.clone() })?;
    let da = block_a.as_ref().map_or(1, |(_, l)| l.dim());
    let db = block_b.as_ref().map_or(1, |(_, l)| l.dim());
    let missing = || Error::Inconsistent("g_0 element missing from its block".into());
    let d0 = da * db;

    // L_0 as a module over g_0 (matrices for every element; odd ones are zero)
    let mut l0 = Vec::with_capacity(alg.dim());
    for e in alg.elements() {
        let mat = match (e.kind, e.parity) {
            (_, Parity::Odd) => SparseMatrix::zeros(d0, d0),
            (ElementKind::Cartan(c), _) if c < m => {
                let (alg_a, la) = block_a.as_ref().ok_or_else(missing)?;
                la.action(alg_a.cartan_index(c)).kron(&SparseMatrix::identity(db))
            }
            (ElementKind::Cartan(c), _) => {
                let (alg_b, lb) = block_b.as_ref().ok_or_else(missing)?;
                SparseMatrix::identity(da).kron(lb.action(alg_b.cartan_index(c - m)))
            }
            (ElementKind::Root, _) if e.weight.delta.iter().all(|x| x.is_zero()) => {
                let (alg_a, la) = block_a.as_ref().ok_or_else(missing)?;
                let i = alg_a.root_element(&Weight { eps: e.weight.eps.clone(), delta: vec![] }).ok_or_else(missing)?;
                la.action(i).kron(&SparseMatrix::identity(db))
            }
            (ElementKind::Root, _) => {
                let (alg_b, lb) = block_b.as_ref().ok_or_else(missing)?;
                let i = alg_b.root_element(&Weight { eps: vec![], delta: e.weight.delta.clone() }).ok_or_else(missing)?;
                SparseMatrix::identity(da).kron(lb.action(i))
            }
        };
        l0.push(mat);
    }
    let rs = alg.root_system(alg.default_borel());
    let expected = weyl_dimension(&rs, lambda);
    if expected != Q::from_int(d0 as i64) {
        return Err(Error::Inconsistent(format!("L_0 has dimension {d0}, Weyl formula gives {expected}")));
    }

    let borel = BorelChoice::distinguished(&spec);
    let lower: Vec<usize> = alg
        .root_elements()
        .filter(|i| alg.parity(*i) == Parity::Odd && !borel.is_positive(&alg.element(*i).weight))
        .collect();
    let bits = lower.len();
    if bits > 20 {
        return Err(Error::DimCapExceeded { needed: 1 << bits, cap: 1 << 20 });
    }
    let lower_pos: BTreeMap<usize, usize> = lower.iter().enumerate().map(|(t, i)| (*i, t)).collect();
    let data = KacData { alg: &alg, lower: lower.clone(), lower_pos, l0 };

    let masks = mask_order(bits);
    let mut pos_of_mask = vec![0; masks.len()];
    for (p, mk) in masks.iter().enumerate() {
        pos_of_mask[*mk] = p;
    }
    let dim = masks.len() * d0;
    let index = |mask: usize, w: usize| pos_of_mask[mask] * d0 + w;
    let parity: Vec<Parity> = masks
        .iter()
        .flat_map(|mk| std::iter::repeat(Parity::from_bit((mk.count_ones() % 2) as u8)).take(d0))
        .collect();

    let mut action = Vec::with_capacity(alg.dim());
    for a in 0..alg.dim() {
        let el = alg.element(a);
        let mut cols = Vec::with_capacity(dim);
        for mk in &masks {
            for w in 0..d0 {
                let v = match el.parity {
                    Parity::Even => data.act_even(a, *mk, w),
                    Parity::Odd => match data.lower_pos.get(&a) {
                        Some(t) => {
                            let mut one = KVec::new();
                            one.insert((*mk, w), Q::one());
                            data.left_wedge(*t, &one)
                        }
                        None => data.act_raise(a, *mk, w),
                    },
                };
                cols.push(SparseVec::from_entries(v.into_iter().map(|((m2, w2), c)| (index(m2, w2), c))));
            }
        }
        action.push(SparseMatrix::from_columns(dim, cols));
    }
    let k = Supermodule::new(alg.clone(), parity, action)?;
    if k.dim() != (1 << bits) * d0 {
        return Err(Error::Inconsistent("Kac module has the wrong dimension".into()));
    }
    Ok(k)
}

/// The highest-weight vector `1 ⊗ w_top` of a module built by [`kac_module`]:
/// always the first basis vector.
pub fn kac_top_vector(k: &Supermodule) -> SparseVec {
    debug_assert!(k.dim() > 0);
    SparseVec::unit(0)
}
