//! Atypicality, defect, orthogonal isotropic flags, the linkage condition,
//! stability and the reduction tables for `g_x` and `g_k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rootdata::{build_root_system, weyl_group, BorelChoice, Family, Parity, Root, RootSystem, SuperalgebraSpec, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtypicalityResult {
    pub k: usize,
    pub witness: Vec<Root>,
}

/// Pairwise orthogonal isotropic roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropicFlag {
    pub roots: Vec<Root>,
}

impl IsotropicFlag {
    pub fn weights(&self) -> Vec<Weight> {
        self.roots.iter().map(|r| r.weight.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

pub fn defect(spec: &SuperalgebraSpec) -> usize {
    spec.defect()
}

pub fn atypicality_of(spec: &SuperalgebraSpec, lambda: &Weight, borel: &BorelChoice) -> Result<AtypicalityResult> {
    let rs = build_root_system(spec, borel)?;
    atypicality_in(&rs, lambda)
}

/// Candidates: positive isotropic roots orthogonal to λ+ρ.
fn candidates<'a>(rs: &'a RootSystem, lambda: &Weight) -> Vec<&'a Root> {
    let shifted = lambda.add(&rs.rho);
    rs.positive_isotropic().into_iter().filter(|a| shifted.pair(&a.weight).is_zero()).collect()
}

pub fn atypicality_in(rs: &RootSystem, lambda: &Weight) -> Result<AtypicalityResult> {
    if !lambda.conforms(&rs.spec) {
        return Err(Error::DimensionMismatch(format!("weight {lambda} does not conform to {}", rs.spec)));
    }
    let cand = candidates(rs, lambda);
    let mut best: Vec<usize> = Vec::new();
    let mut cur = Vec::new();
    let bound = rs.spec.defect();
    search(&cand, 0, &mut cur, &mut best, bound);
    Ok(AtypicalityResult { k: best.len(), witness: best.iter().map(|i| cand[*i].clone()).collect() })
}

fn orthogonal_to_all(cand: &[&Root], cur: &[usize], i: usize) -> bool {
    cur.iter().all(|j| cand[*j].weight.pair(&cand[i].weight).is_zero())
}

fn search(cand: &[&Root], start: usize, cur: &mut Vec<usize>, best: &mut Vec<usize>, bound: usize) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if best.len() == bound || cur.len() + (cand.len() - start) <= best.len() {
        return;
    }
    for i in start..cand.len() {
        if orthogonal_to_all(cand, cur, i) {
            cur.push(i);
            search(cand, i + 1, cur, best, bound);
            cur.pop();
            if best.len() == bound {
                return;
            }
        }
    }
}

/// Every witness set of maximal size, in lexicographic order.
pub fn maximal_witnesses(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Vec<Root>>> {
    let k = atypicality_in(rs, lambda)?.k;
    let cand = candidates(rs, lambda);
    Ok(subsets_of_size(&cand, k, usize::MAX).into_iter().map(|s| s.into_iter().map(|i| cand[i].clone()).collect()).collect())
}

fn subsets_of_size(cand: &[&Root], size: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(cand: &[&Root], size: usize, cap: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if out.len() >= cap {
            return;
        }
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..cand.len() {
            if orthogonal_to_all(cand, cur, i) {
                cur.push(i);
                rec(cand, size, cap, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(cand, size, cap, 0, &mut Vec::new(), &mut out);
    out
}

pub const DEFAULT_FLAG_CAP: usize = 10_000;

/// Pairwise orthogonal sets of positive isotropic roots of exactly `size`
/// elements (at most `cap` of them), in lexicographic order of the root list.
pub fn orthogonal_isotropic_sets(spec: &SuperalgebraSpec, size: usize, borel: &BorelChoice) -> Result<Vec<IsotropicFlag>> {
    let rs = build_root_system(spec, borel)?;
    Ok(isotropic_flags_in(&rs, size, DEFAULT_FLAG_CAP))
}

pub fn isotropic_flags_in(rs: &RootSystem, size: usize, cap: usize) -> Vec<IsotropicFlag> {
    if size > rs.spec.defect() {
        return Vec::new();
    }
    let iso = rs.positive_isotropic();
    subsets_of_size(&iso, size, cap)
        .into_iter()
        .map(|s| IsotropicFlag { roots: s.into_iter().map(|i| iso[i].clone()).collect() })
        .collect()
}

/// Necessary condition for λ and μ to share a central character: some
/// Weyl element w and maximal witness S of λ with w(μ+ρ) - (λ+ρ) in span S,
/// and the same with λ and μ exchanged.
pub fn linkage_necessary(spec: &SuperalgebraSpec, lambda: &Weight, mu: &Weight, borel: &BorelChoice) -> Result<bool> {
    let rs = build_root_system(spec, borel)?;
    linkage_in(&rs, lambda, mu)
}

pub fn linkage_in(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<bool> {
    if lambda == mu {
        return Ok(true);
    }
    let weyl = weyl_group(&rs.spec)?;
    Ok(linked_one_way(rs, &weyl, lambda, mu)? && linked_one_way(rs, &weyl, mu, lambda)?)
}

fn weight_vec(w: &Weight) -> SparseVec {
    SparseVec::from_dense(&w.coords().cloned().collect::<Vec<_>>())
}

fn linked_one_way(rs: &RootSystem, weyl: &[crate::rootdata::WeylElement], lambda: &Weight, mu: &Weight) -> Result<bool> {
    let lr = lambda.add(&rs.rho);
    let mr = mu.add(&rs.rho);
    let r = rs.spec.rank();
    for s in maximal_witnesses(rs, lambda)? {
        let span = Echelon::from_vectors(r, s.iter().map(|a| weight_vec(&a.weight)));
        for w in weyl {
            if span.contains(&weight_vec(&w.act(&mr).sub(&lr))) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Coordinates of `g_k` inside g: the last k ε's and, for gl the first k δ's,
/// for osp the last k δ's. Returned as (ε indices, δ indices).
pub fn gk_coordinates(spec: &SuperalgebraSpec, k: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if k > spec.defect() {
        return Err(Error::OutOfRange(format!("k = {k} exceeds the defect {}", spec.defect())));
    }
    let eps: Vec<usize> = (spec.m - k..spec.m).collect();
    let delta: Vec<usize> = match spec.family {
        Family::Gl => (0..k).collect(),
        _ => (spec.n - k..spec.n).collect(),
    };
    Ok((eps, delta))
}

fn supported_on(w: &Weight, eps: &[usize], delta: &[usize]) -> bool {
    w.eps.iter().enumerate().all(|(i, c)| c.is_zero() || eps.contains(&i))
        && w.delta.iter().enumerate().all(|(j, c)| c.is_zero() || delta.contains(&j))
}

/// Some maximal witness of μ lies in the roots of `l = g_k + h`, and
/// (μ+ρ, β) > 0 for every positive even root β outside `l`. False when
/// `atyp(μ) != k`.
pub fn is_stable(spec: &SuperalgebraSpec, mu: &Weight, k: usize, borel: &BorelChoice) -> Result<bool> {
    let rs = build_root_system(spec, borel)?;
    stable_in(&rs, mu, k)
}

pub fn stable_in(rs: &RootSystem, mu: &Weight, k: usize) -> Result<bool> {
    let (eps, delta) = gk_coordinates(&rs.spec, k)?;
    if atypicality_in(rs, mu)?.k != k {
        return Ok(false);
    }
    let inside = maximal_witnesses(rs, mu)?
        .iter()
        .any(|s| s.iter().all(|a| supported_on(&a.weight, &eps, &delta)));
    if !inside {
        return Ok(false);
    }
    let shifted = mu.add(&rs.rho);
    Ok(rs
        .positive_roots()
        .filter(|b| b.parity == Parity::Even && !supported_on(&b.weight, &eps, &delta))
        .all(|b| shifted.pair(&b.weight).is_positive()))
}

/// `(g_x, g_k)` for rank `k`: the rank-k reduction and the defect-k model.
pub fn reduced_specs(spec: &SuperalgebraSpec, k: usize) -> Result<(SuperalgebraSpec, SuperalgebraSpec)> {
    if k > spec.defect() {
        return Err(Error::OutOfRange(format!("rank {k} exceeds the defect {}", spec.defect())));
    }
    Ok((
        SuperalgebraSpec::degenerate(spec.family, spec.m - k, spec.n - k),
        SuperalgebraSpec::degenerate(spec.family, k, k),
    ))
}
