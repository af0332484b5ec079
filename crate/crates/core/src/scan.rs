//! Box scans over dominant weights: the superdimension criterion and the
//! modified-dimension pattern for anchors of each atypicality.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::Q;
use crate::atypicality::{atypicality_in, isotropic_flags_in};
use crate::error::{Error, Result};
use crate::matrixreal::{build_self_commuting, realize_basis, LieBasis, OddElement};
use crate::rootdata::{dominant_integral_in, weight_box, BorelChoice, Family, SuperalgebraSpec, Weight};
use crate::supermodules::{extract_simple, kac_module, kac_top_vector, SimpleCatalog, Supermodule};
use crate::support::ideal_witness;
use crate::traces::{default_probes, fibre_trace, solve_trace_functional};

pub const SCHEMA: &str = "superatlas/1";

/// Tensor-product steps allowed per weight when searching a catalog.
pub const CATALOG_BUDGET: usize = 60;

#[derive(Clone, Debug, Serialize)]
pub struct ScanConfig {
    pub spec: SuperalgebraSpec,
    pub lo: i64,
    pub hi: i64,
    pub cap: usize,
    pub trials_per_flag: usize,
    pub seed: u64,
}

impl ScanConfig {
    pub fn new(spec: SuperalgebraSpec, lo: i64, hi: i64, cap: usize) -> Self {
        ScanConfig { spec, lo, hi, cap, trials_per_flag: 2, seed: 0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 {
            return Err(Error::OutOfRange("module dimension cap must be at least 1".into()));
        }
        Ok(())
    }
}

/// Simple modules by highest weight: Kac quotients for gl, a tensor
/// catalog otherwise.
pub struct SimpleSource {
    basis: Arc<LieBasis>,
    borel: BorelChoice,
    cap: usize,
    catalog: Option<SimpleCatalog>,
}

impl SimpleSource {
    pub fn new(basis: &Arc<LieBasis>, cap: usize) -> Result<Self> {
        let borel = BorelChoice::distinguished(basis.spec());
        let catalog = match basis.spec().family {
            Family::Gl => None,
            _ => Some(SimpleCatalog::new(basis, &borel, cap)?),
        };
        Ok(SimpleSource { basis: basis.clone(), borel, cap, catalog })
    }

    pub fn simple(&mut self, lambda: &Weight) -> Result<Supermodule> {
        match &mut self.catalog {
            Some(cat) => cat.find_within(lambda, CATALOG_BUDGET),
            None => {
                let k = kac_module(&self.basis, lambda)?;
                if k.dim() > self.cap {
                    return Err(Error::DimCapExceeded { needed: k.dim(), cap: self.cap });
                }
                extract_simple(&k, &kac_top_vector(&k), &self.borel)
            }
        }
    }
}

/// Dominant weights of the box with their atypicality, in box order.
pub fn dominant_box(basis: &LieBasis, lo: i64, hi: i64) -> Result<Vec<(Weight, usize)>> {
    let spec = *basis.spec();
    let rs = basis.algebra().root_system(&BorelChoice::distinguished(&spec));
    let mut out = Vec::new();
    for lam in weight_box(&spec, lo, hi) {
        if dominant_integral_in(&rs, &lam)? {
            out.push((lam.clone(), atypicality_in(&rs, &lam)?.k));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct KwEntry {
    pub weight: Weight,
    pub atyp: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sdim: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KwReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub config: ScanConfig,
    pub defect: usize,
    pub total: usize,
    pub covered: usize,
    pub disagreements: usize,
    pub pass: bool,
    pub entries: Vec<KwEntry>,
}

/// `sdim L(λ) ≠ 0` against `atyp(λ) = defect` for every dominant λ in the box.
pub fn run_kw_scan(config: &ScanConfig) -> Result<KwReport> {
    config.validate()?;
    let basis = Arc::new(realize_basis(&config.spec)?);
    let defect = config.spec.defect();
    let mut src = SimpleSource::new(&basis, config.cap)?;
    let mut entries = Vec::new();
    for (lam, atyp) in dominant_box(&basis, config.lo, config.hi)? {
        let mut e = KwEntry { weight: lam.clone(), atyp, dim: None, sdim: None, agrees: None, skipped: None };
        match src.simple(&lam) {
            Ok(l) => {
                e.dim = Some(l.dim());
                e.sdim = Some(l.sdim());
                e.agrees = Some((l.sdim() != 0) == (atyp == defect));
            }
            Err(err) => e.skipped = Some(err.to_string()),
        }
        entries.push(e);
    }
    let covered = entries.iter().filter(|e| e.agrees.is_some()).count();
    let disagreements = entries.iter().filter(|e| e.agrees == Some(false)).count();
    Ok(KwReport {
        schema: SCHEMA,
        kind: "kw-scan",
        config: config.clone(),
        defect,
        total: entries.len(),
        covered,
        disagreements,
        pass: disagreements == 0,
        entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AnchorReport {
    pub weight: Weight,
    pub atyp: usize,
    pub dim: usize,
    /// Dimension of the trace solution space on the anchor with the default probes.
    pub solution_dim: usize,
    /// Coefficients of the odd element, as root labels.
    pub x_roots: Vec<Weight>,
    pub d_values: BTreeMap<String, Q>,
    pub skipped: BTreeMap<String, String>,
    pub pattern_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealPair {
    pub generator: Weight,
    pub member: Weight,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GkwReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub config: ScanConfig,
    pub anchors: Vec<AnchorReport>,
    pub ideal_chain: Vec<IdealPair>,
    pub pass: bool,
}

fn anchor_element(basis: &Arc<LieBasis>, k: usize) -> Result<OddElement> {
    if k == 0 {
        return Ok(OddElement::zero(basis.clone()));
    }
    let rs = basis.algebra().root_system(&BorelChoice::distinguished(basis.spec()));
    let flag = isotropic_flags_in(&rs, k, 1)
        .into_iter()
        .next()
        .ok_or_else(|| Error::OutOfRange(format!("no isotropic flag of size {k}")))?;
    build_self_commuting(basis, &flag.weights(), &vec![Q::one(); k])
}

fn l1(w: &Weight) -> Q {
    w.eps.iter().chain(&w.delta).map(|c| c.abs()).sum()
}

/// For each atypicality class in the box, the anchor is its simple of least
/// `|λ|_1`. Tabulates `d_anchor(L) = t(Id_{L_x})` for `atyp(L) ≤ atyp(anchor)`
/// and checks `d ≠ 0 ⇔ atyp(L) = atyp(anchor)`; also records which
/// maximally atypical simples generate one another's ideals.
pub fn run_gkw_scan(config: &ScanConfig) -> Result<GkwReport> {
    config.validate()?;
    let basis = Arc::new(realize_basis(&config.spec)?);
    let mut src = SimpleSource::new(&basis, config.cap)?;
    let mut built: Vec<(Weight, usize, Supermodule)> = Vec::new();
    let mut missing: Vec<(Weight, String)> = Vec::new();
    for (lam, atyp) in dominant_box(&basis, config.lo, config.hi)? {
        match src.simple(&lam) {
            Ok(l) => built.push((lam, atyp, l)),
            Err(e) => missing.push((lam, e.to_string())),
        }
    }
    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, (lam, atyp, _)) in built.iter().enumerate() {
        let better = classes.get(atyp).map_or(true, |j| (l1(lam), lam) < (l1(&built[*j].0), &built[*j].0));
        if better {
            classes.insert(*atyp, i);
        }
    }
    let probes = default_probes(&basis)?;
    let mut anchors = Vec::new();
    for (k, ai) in &classes {
        let (aw, _, anchor) = &built[*ai];
        let solution_dim = solve_trace_functional(anchor, &probes, &[])?.len();
        let x = anchor_element(&basis, *k)?;
        let x_roots = x.coeffs.iter().map(|(i, _)| basis.algebra().element(*i).weight.clone()).collect();
        let mut d_values = BTreeMap::new();
        let mut skipped = BTreeMap::new();
        let mut pattern_ok = solution_dim == 1;
        for (lam, atyp, l) in built.iter().filter(|(_, a, _)| a <= k) {
            let id = crate::linalg::SparseMatrix::identity(l.dim());
            match fibre_trace(anchor, &x, l, &id) {
                Ok(ft) => {
                    pattern_ok &= ft.value.is_zero() != (atyp == k);
                    d_values.insert(lam.to_string(), ft.value);
                }
                Err(e) => {
                    skipped.insert(lam.to_string(), e.to_string());
                }
            }
        }
        for (lam, why) in &missing {
            skipped.insert(lam.to_string(), why.clone());
        }
        anchors.push(AnchorReport {
            weight: aw.clone(),
            atyp: *k,
            dim: anchor.dim(),
            solution_dim,
            x_roots,
            d_values,
            skipped,
            pattern_ok,
        });
    }
    let defect = config.spec.defect();
    let top: Vec<&(Weight, usize, Supermodule)> = built.iter().filter(|(_, a, _)| *a == defect && defect > 0).collect();
    let mut ideal_chain = Vec::new();
    for (w1, _, l1m) in &top {
        for (w2, _, l2m) in &top {
            if l1m.dim() * l1m.dim() * l2m.dim() > config.cap {
                continue;
            }
            let multiplicity = ideal_witness(l1m, l2m)?;
            ideal_chain.push(IdealPair { generator: w1.clone(), member: w2.clone(), multiplicity });
        }
    }
    let pass = anchors.iter().all(|a| a.pattern_ok) && ideal_chain.iter().all(|p| p.multiplicity >= 1);
    Ok(GkwReport { schema: SCHEMA, kind: "gkw-scan", config: config.clone(), anchors, ideal_chain, pass })
}
