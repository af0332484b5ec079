//! Homomorphism spaces between supermodules.

use serde::Serialize;

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::rootdata::Parity;

use super::Supermodule;

/// A homogeneous linear map `M → N` (matrix of shape dim N × dim M).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Morphism {
    #[serde(skip)]
    pub matrix: SparseMatrix,
    pub parity: Parity,
}

impl Morphism {
    pub fn new(matrix: SparseMatrix, parity: Parity) -> Self {
        Morphism { matrix, parity }
    }

    pub fn identity(m: &Supermodule) -> Self {
        Morphism { matrix: SparseMatrix::identity(m.dim()), parity: Parity::Even }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism { matrix: self.matrix.mul(&other.matrix), parity: self.parity.add(other.parity) }
    }
}

/// `f ρ_M(a) = (-1)^{|f||a|} ρ_N(a) f` for every basis element `a`, and `f`
/// is homogeneous of the stated parity.
pub fn is_intertwiner(m: &Supermodule, n: &Supermodule, f: &Morphism) -> bool {
    if !m.same_algebra(n) || f.matrix.nrows() != n.dim() || f.matrix.ncols() != m.dim() {
        return false;
    }
    if f.matrix.triplets().any(|(r, c, _)| n.parity(r) != m.parity(c).add(f.parity)) {
        return false;
    }
    let alg = m.algebra();
    (0..alg.dim()).all(|a| {
        let lhs = f.matrix.mul(m.action(a));
        let rhs = n.action(a).mul(&f.matrix);
        let odd = f.parity == Parity::Odd && alg.parity(a) == Parity::Odd;
        lhs == if odd { rhs.scale(&-Q::one()) } else { rhs }
    })
}

/// Kernel of the intertwining equations for the elements `ops`, with
/// unknowns restricted to parity-compatible (and optionally weight-preserving) entries.
fn solve(m: &Supermodule, n: &Supermodule, parity: Parity, ops: &[usize], same_weight: bool) -> Vec<Morphism> {
    let (dm, dn) = (m.dim(), n.dim());
    let alg = m.algebra();
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for c in 0..dm {
        for r in 0..dn {
            if n.parity(r) == m.parity(c).add(parity) && (!same_weight || n.weight(r) == m.weight(c)) {
                unknowns.push((r, c));
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    let block = dn * dm;
    let rows_m: Vec<Vec<SparseVec>> = ops.iter().map(|a| m.action(*a).rows()).collect();
    let mut cols = Vec::with_capacity(unknowns.len());
    for &(r, c) in &unknowns {
        let mut entries: Vec<(usize, Q)> = Vec::new();
        for (k, a) in ops.iter().enumerate() {
            let sign_neg = parity == Parity::Odd && alg.parity(*a) == Parity::Odd;
            // (F ρ_M(a))_{r j} picks F_{rc} ρ_M(a)_{cj}
            for (j, v) in rows_m[k][c].iter() {
                entries.push((k * block + r * dm + j, v.clone()));
            }
            // -s (ρ_N(a) F)_{i c} picks ρ_N(a)_{ir} F_{rc}
            for (i, v) in n.action(*a).col(r).iter() {
                entries.push((k * block + i * dm + c, v.clone().neg_if(!sign_neg)));
            }
        }
        cols.push(SparseVec::from_entries(entries));
    }
    let system = SparseMatrix::from_columns(ops.len() * block, cols);
    system
        .kernel()
        .into_iter()
        .map(|kv| {
            let trip = kv.iter().map(|(u, x)| (unknowns[*u].0, unknowns[*u].1, x.clone())).collect::<Vec<_>>();
            Morphism::new(SparseMatrix::from_triplets(dn, dm, trip), parity)
        })
        .collect()
}

/// Basis of `Hom_g(M, N)`, even morphisms first. Maps are forced to preserve
/// weights, and the intertwining equations are imposed for the simple root
/// vectors of both signs, which generate the algebra together with the
/// Cartan subalgebra. Every result is re-checked against all elements.
pub fn hom_space(m: &Supermodule, n: &Supermodule) -> Result<Vec<Morphism>> {
    m.check_same(n)?;
    let alg = m.algebra();
    let borel = alg.default_borel().clone();
    let rs = alg.root_system(&borel);
    let mut ops = Vec::new();
    for r in rs.simple.iter().map(|k| &rs.roots[*k]) {
        for w in [r.weight.clone(), r.weight.neg()] {
            let i = alg
                .root_element(&w)
                .ok_or_else(|| Error::Inconsistent(format!("no root vector for {w}")))?;
            ops.push(i);
        }
    }
    let mut out = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        for f in solve(m, n, p, &ops, true) {
            if !is_intertwiner(m, n, &f) {
                return Err(Error::Inconsistent("simple root vectors do not generate the algebra".into()));
            }
            out.push(f);
        }
    }
    Ok(out)
}

/// Brute-force `Hom_g(M, N)`: all entries unknown, all basis elements
/// imposed. Intended for small modules.
pub fn hom_space_direct(m: &Supermodule, n: &Supermodule) -> Result<Vec<Morphism>> {
    m.check_same(n)?;
    let ops: Vec<usize> = (0..m.algebra().dim()).collect();
    let mut out = solve(m, n, Parity::Even, &ops, false);
    out.extend(solve(m, n, Parity::Odd, &ops, false));
    Ok(out)
}

/// (even, odd) dimensions of a morphism list.
pub(crate) fn parity_dims(fs: &[Morphism]) -> (usize, usize) {
    let odd = fs.iter().filter(|f| f.parity == Parity::Odd).count();
    (fs.len() - odd, odd)
}

/// Number of direct summands of `M` isomorphic to `L` or its parity flip,
/// for a simple `L` with `End(L)` one-dimensional and even: the rank of the
/// pairing `(g, f) ↦ g ∘ f ∈ End(L)` between `Hom(M, L)` and `Hom(L, M)`,
/// summed over both parities.
pub fn summand_multiplicity(l: &Supermodule, m: &Supermodule) -> Result<usize> {
    l.check_same(m)?;
    let end = hom_space(l, l)?;
    let (e, o) = parity_dims(&end);
    if (e, o) != (1, 0) {
        return Err(Error::NotAbsolutelySimple { even: e, odd: o });
    }
    let into = hom_space(l, m)?;
    let out_of = hom_space(m, l)?;
    let mut total = 0;
    for p in [Parity::Even, Parity::Odd] {
        let fs: Vec<&Morphism> = into.iter().filter(|f| f.parity == p).collect();
        let gs: Vec<&Morphism> = out_of.iter().filter(|g| g.parity == p).collect();
        if fs.is_empty() || gs.is_empty() {
            continue;
        }
        let cols: Vec<SparseVec> = fs
            .iter()
            .map(|f| SparseVec::from_entries(gs.iter().enumerate().map(|(j, g)| (j, g.matrix.mul(&f.matrix).get(0, 0)))))
            .collect();
        total += SparseMatrix::from_columns(gs.len(), cols).rank();
    }
    Ok(total)
}
