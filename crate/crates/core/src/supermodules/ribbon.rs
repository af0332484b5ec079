//! Evaluation and coevaluation maps, the symmetric braiding and partial
//! traces built from them.

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::rootdata::Parity;

use super::Supermodule;

/// Duality maps for `V` with dual basis `f_i` (the basis of `V.dual()`):
///
/// - `ev: V* ⊗ V → k`, `f_i ⊗ v_j ↦ δ_ij`
/// - `coev: k → V ⊗ V*`, `1 ↦ Σ v_i ⊗ f_i`
/// - `ev_prime: V ⊗ V* → k`, `v_j ⊗ f_i ↦ (-1)^{|i|} δ_ij`
/// - `coev_prime: k → V* ⊗ V`, `1 ↦ Σ (-1)^{|i|} f_i ⊗ v_i`
#[derive(Clone, Debug)]
pub struct RibbonMaps {
    pub dual: Supermodule,
    pub ev: SparseMatrix,
    pub coev: SparseMatrix,
    pub ev_prime: SparseMatrix,
    pub coev_prime: SparseMatrix,
}

pub fn ribbon_maps(v: &Supermodule) -> RibbonMaps {
    let n = v.dim();
    let sign = |i: usize| if v.parity(i) == Parity::Odd { -Q::one() } else { Q::one() };
    let diag = |signed: bool| (0..n).map(move |i| (i * n + i, if signed { sign(i) } else { Q::one() }));
    RibbonMaps {
        dual: v.dual(),
        ev: SparseMatrix::from_triplets(1, n * n, diag(false).map(|(k, x)| (0, k, x)).collect::<Vec<_>>()),
        coev: SparseMatrix::from_triplets(n * n, 1, diag(false).map(|(k, x)| (k, 0, x)).collect::<Vec<_>>()),
        ev_prime: SparseMatrix::from_triplets(1, n * n, diag(true).map(|(k, x)| (0, k, x)).collect::<Vec<_>>()),
        coev_prime: SparseMatrix::from_triplets(n * n, 1, diag(true).map(|(k, x)| (k, 0, x)).collect::<Vec<_>>()),
    }
}

/// `c_{V,W}: v_i ⊗ w_j ↦ (-1)^{|i||j|} w_j ⊗ v_i`.
pub fn braiding(v: &Supermodule, w: &Supermodule) -> SparseMatrix {
    let (dv, dw) = (v.dim(), w.dim());
    let mut trip = Vec::with_capacity(dv * dw);
    for i in 0..dv {
        for j in 0..dw {
            let neg = v.parity(i) == Parity::Odd && w.parity(j) == Parity::Odd;
            trip.push((j * dv + i, i * dw + j, Q::one().neg_if(neg)));
        }
    }
    SparseMatrix::from_triplets(dv * dw, dv * dw, trip)
}

fn check_square(f: &SparseMatrix, d: usize) -> Result<()> {
    if f.nrows() != d || f.ncols() != d {
        return Err(Error::DimensionMismatch(format!("expected a {d}x{d} endomorphism")));
    }
    Ok(())
}

/// `(Id_V ⊗ ev'_W) ∘ (f ⊗ Id_{W*}) ∘ (Id_V ⊗ coev_W)` for an even `f` on `V ⊗ W`.
pub fn right_partial_trace_composite(f: &SparseMatrix, v: &Supermodule, w: &Supermodule) -> Result<SparseMatrix> {
    let (dv, dw) = (v.dim(), w.dim());
    check_square(f, dv * dw)?;
    let rw = ribbon_maps(w);
    let id_v = SparseMatrix::identity(dv);
    let step1 = id_v.kron(&rw.coev);
    let step2 = f.kron(&SparseMatrix::identity(dw));
    let step3 = id_v.kron(&rw.ev_prime);
    Ok(step3.mul(&step2).mul(&step1))
}

/// `(ev_V ⊗ Id_W) ∘ (Id_{V*} ⊗ f) ∘ (coev'_V ⊗ Id_W)` for an even `f` on `V ⊗ W`.
pub fn left_partial_trace_composite(f: &SparseMatrix, v: &Supermodule, w: &Supermodule) -> Result<SparseMatrix> {
    let (dv, dw) = (v.dim(), w.dim());
    check_square(f, dv * dw)?;
    let rv = ribbon_maps(v);
    let id_w = SparseMatrix::identity(dw);
    let step1 = rv.coev_prime.kron(&id_w);
    let step2 = SparseMatrix::identity(dv).kron(f);
    let step3 = rv.ev.kron(&id_w);
    Ok(step3.mul(&step2).mul(&step1))
}
