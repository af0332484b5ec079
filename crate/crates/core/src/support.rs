//! Rank-variety tests: projectivity over the algebra generated by one odd
//! element, and the support-dimension estimate built from them.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::Q;
use crate::atypicality::isotropic_flags_in;
use crate::error::{Error, Result};
use crate::matrixreal::{build_self_commuting, LieBasis, OddElement};
use crate::supermodules::{summand_multiplicity, Supermodule};

/// `dim M_x = dim M - 2 rank(x|M)`, since `x² = 0` on M.
pub fn fibre_dimension(m: &Supermodule, x: &OddElement) -> Result<usize> {
    if !Arc::ptr_eq(m.algebra(), x.algebra()) {
        return Err(Error::BasisMismatch);
    }
    let xm = m.act_element(&x.coeffs);
    if !xm.mul(&xm).is_zero() {
        return Err(Error::Inconsistent("x does not square to zero on M".into()));
    }
    Ok(m.dim() - 2 * xm.rank())
}

/// `Ker(x|M) = Im(x|M)`.
pub fn is_projective_over(m: &Supermodule, x: &OddElement) -> Result<bool> {
    Ok(fibre_dimension(m, x)? == 0)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RankProbe {
    pub tested: usize,
    pub any_nonvanishing: bool,
    pub flags: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub module_label: String,
    pub seed: u64,
    pub trials_per_flag: usize,
    pub per_rank: BTreeMap<usize, RankProbe>,
    /// Largest rank with a nonvanishing fibre; `None` for the zero module.
    pub support_dim: Option<usize>,
    /// Vanishing at some rank implies vanishing at every higher rank.
    pub monotone: bool,
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Q {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-6i64..=6);
    }
    Q::new(p, rng.gen_range(1i64..=5))
}

/// For each rank `k` from the defect down to 0, evaluates `M_x` on the
/// all-ones element of every isotropic flag of size `k` and on
/// `trials_per_flag` seeded random coefficient patterns.
pub fn support_dimension(basis: &Arc<LieBasis>, m: &Supermodule, trials_per_flag: usize, seed: u64) -> Result<SupportReport> {
    let spec = *basis.spec();
    let label = format!("{}-dimensional module over {}", m.dim(), spec.label());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rs = basis.algebra().root_system(basis.algebra().default_borel());
    let mut per_rank = BTreeMap::new();
    for k in (0..=spec.defect()).rev() {
        let mut probe = RankProbe::default();
        if k == 0 {
            probe.flags = 1;
            probe.tested = 1;
            probe.any_nonvanishing = fibre_dimension(m, &OddElement::zero(basis.clone()))? > 0;
        } else {
            let flags = isotropic_flags_in(&rs, k, usize::MAX);
            probe.flags = flags.len();
            for f in &flags {
                let ws = f.weights();
                let mut patterns = vec![vec![Q::one(); k]];
                for _ in 0..trials_per_flag {
                    patterns.push((0..k).map(|_| random_coeff(&mut rng)).collect());
                }
                for c in &patterns {
                    let x = build_self_commuting(basis, &ws, c)?;
                    probe.tested += 1;
                    if fibre_dimension(m, &x)? > 0 {
                        probe.any_nonvanishing = true;
                    }
                }
            }
        }
        per_rank.insert(k, probe);
    }
    let support_dim = per_rank.iter().filter(|(_, p)| p.any_nonvanishing).map(|(k, _)| *k).max();
    let monotone = per_rank
        .iter()
        .all(|(k, p)| p.any_nonvanishing || per_rank.range(k + 1..).all(|(_, q)| !q.any_nonvanishing));
    Ok(SupportReport { module_label: label, seed, trials_per_flag, per_rank, support_dim, monotone })
}

/// Multiplicity of `L2` as a summand of `L1 ⊗ L1* ⊗ L2`; positive means `L2`
/// lies in the tensor ideal generated by `L1`.
pub fn ideal_witness(l1: &Supermodule, l2: &Supermodule) -> Result<usize> {
    let x = l1.tensor(&l1.dual())?.tensor(l2)?;
    summand_multiplicity(l2, &x)
}
