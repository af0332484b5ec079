//! Matrix realizations of gl(m|n), osp(2m|2n) and osp(2m+1|2n), the
//! supertrace form, self-commuting odd elements and `g_x = Cent(x)/[x,g]`.
//!
//! Matrix indices carry weights. For gl: index `a < m` is ε_a, `m + b` is
//! δ_b. For osp the even block has size `2m` (or `2m+1`): index `a < m` is
//! +ε_a, its mirror `s-1-a` is -ε_a, and the odd family has a weight-zero
//! middle index. The symplectic block follows with `s + b` ↦ +δ_b and
//! `s + 2n-1-b` ↦ -δ_b. The form matrix `J` is antidiagonal on both blocks
//! (identity on the orthogonal one, `±1` on the symplectic one), so the
//! diagonal Cartan is `H_c = E_pp - E_p'p'` and every root space is spanned
//! by a combination of at most two matrix units.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Element, ElementKind, LieAlgebra};
use crate::arith::Q;
use crate::atypicality::reduced_specs;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseMatrix, SparseVec, TrackedBasis};
use crate::rootdata::{format_weight_symbolic, BorelChoice, Family, Parity, SuperalgebraSpec, Weight};

/// A realized algebra: the abstract [`LieAlgebra`] plus one matrix per element.
#[derive(Clone, Debug)]
pub struct LieBasis {
    algebra: Arc<LieAlgebra>,
    matrices: Vec<SparseMatrix>,
    form: Option<SparseMatrix>,
    index_weight: Vec<Weight>,
    index_parity: Vec<Parity>,
}

impl LieBasis {
    pub fn spec(&self) -> &SuperalgebraSpec {
        self.algebra.spec()
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn matrix(&self, i: usize) -> &SparseMatrix {
        &self.matrices[i]
    }

    pub fn matrices(&self) -> &[SparseMatrix] {
        &self.matrices
    }

    /// The form matrix `J` (osp only).
    pub fn form_matrix(&self) -> Option<&SparseMatrix> {
        self.form.as_ref()
    }

    /// Weight of the `u`-th standard basis vector of the defining space.
    pub fn index_weight(&self, u: usize) -> &Weight {
        &self.index_weight[u]
    }

    pub fn index_parity(&self, u: usize) -> Parity {
        self.index_parity[u]
    }

    pub fn matrix_size(&self) -> usize {
        self.index_weight.len()
    }

    /// Matrix of the element with coordinates `v`.
    pub fn element_matrix(&self, v: &SparseVec) -> SparseMatrix {
        let n = self.matrix_size();
        let mut acc = SparseMatrix::zeros(n, n);
        for (i, c) in v.iter() {
            acc = acc.add_scaled(c, &self.matrices[*i]);
        }
        acc
    }

    /// `str(xy)` for elements given by coordinates.
    pub fn supertrace_form(&self, x: &SparseVec, y: &SparseVec) -> Q {
        supertrace(&self.element_matrix(x).mul(&self.element_matrix(y)), &self.index_parity)
    }

    /// Gram matrix of the supertrace form on the basis.
    pub fn gram_matrix(&self) -> SparseMatrix {
        let d = self.dim();
        let mut trip = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let v = supertrace(&self.matrices[i].mul(&self.matrices[j]), &self.index_parity);
                if !v.is_zero() {
                    trip.push((i, j, v));
                }
            }
        }
        SparseMatrix::from_triplets(d, d, trip)
    }

    /// Sparse triplet dump of every basis matrix, keyed by label.
    pub fn dump(&self) -> Vec<BasisDump> {
        self.algebra
            .elements()
            .iter()
            .zip(&self.matrices)
            .map(|(e, m)| BasisDump {
                label: e.label.clone(),
                parity: e.parity,
                weight: e.weight.clone(),
                entries: m.triplets().map(|(r, c, v)| Triplet { row: r, col: c, val: v.clone() }).collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Triplet {
    pub row: usize,
    pub col: usize,
    pub val: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisDump {
    pub label: String,
    pub parity: Parity,
    pub weight: Weight,
    pub entries: Vec<Triplet>,
}

fn supertrace(m: &SparseMatrix, parity: &[Parity]) -> Q {
    let mut acc = Q::zero();
    for (u, p) in parity.iter().enumerate() {
        let v = m.get(u, u);
        match p {
            Parity::Even => acc += v,
            Parity::Odd => acc -= v,
        }
    }
    acc
}

/// Superbracket of homogeneous matrices.
pub fn matrix_bracket(a: &SparseMatrix, pa: Parity, b: &SparseMatrix, pb: Parity) -> SparseMatrix {
    let ab = a.mul(b);
    let ba = b.mul(a);
    if pa == Parity::Odd && pb == Parity::Odd {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

struct Layout {
    weights: Vec<Weight>,
    parities: Vec<Parity>,
    /// index of the `+coordinate` vector and of its mirror (osp) per coordinate
    plus: Vec<usize>,
    minus: Vec<Option<usize>>,
    form: Option<SparseMatrix>,
}

fn layout(spec: &SuperalgebraSpec) -> Layout {
    let (m, n) = (spec.m, spec.n);
    let size = spec.matrix_size();
    let s = spec.even_block();
    let mut weights = vec![spec.zero_weight(); size];
    let mut parities = vec![Parity::Even; size];
    for p in parities.iter_mut().skip(s) {
        *p = Parity::Odd;
    }
    let mut plus = vec![0; m + n];
    let mut minus = vec![None; m + n];
    match spec.family {
        Family::Gl => {
            for a in 0..m {
                weights[a] = spec.eps(a);
                plus[a] = a;
            }
            for b in 0..n {
                weights[m + b] = spec.delta(b);
                plus[m + b] = m + b;
            }
            Layout { weights, parities, plus, minus, form: None }
        }
        Family::OspEven | Family::OspOdd => {
            let mut trip = Vec::new();
            for u in 0..s {
                trip.push((u, s - 1 - u, Q::one()));
            }
            for b in 0..n {
                trip.push((s + b, s + 2 * n - 1 - b, Q::one()));
                trip.push((s + 2 * n - 1 - b, s + b, -Q::one()));
            }
            for a in 0..m {
                weights[a] = spec.eps(a);
                weights[s - 1 - a] = spec.eps(a).neg();
                plus[a] = a;
                minus[a] = Some(s - 1 - a);
            }
            for b in 0..n {
                weights[s + b] = spec.delta(b);
                weights[s + 2 * n - 1 - b] = spec.delta(b).neg();
                plus[m + b] = s + b;
                minus[m + b] = Some(s + 2 * n - 1 - b);
            }
            Layout { weights, parities, plus, minus, form: Some(SparseMatrix::from_triplets(size, size, trip)) }
        }
    }
}

/// Linear conditions cutting osp out of gl: for `x` of parity `|x|`,
/// `(x^T J)_{uv} + (-1)^{|x||u|} (J x)_{uv} = 0`.
fn osp_conditions(units: &[(usize, usize)], j: &SparseMatrix, parity: &[Parity], xpar: Parity) -> SparseMatrix {
    let size = j.nrows();
    let jrows = j.rows();
    let mut cols = Vec::with_capacity(units.len());
    for &(a, b) in units {
        // x = E_ab: (x^T J)_{uv} = [u = b] J_{av};  (J x)_{uv} = J_{ua} [v = b]
        let mut entries = Vec::new();
        for (v, val) in jrows[a].iter() {
            entries.push((b * size + *v, val.clone()));
        }
        for (u, val) in j.col(a).iter() {
            let flip = xpar == Parity::Odd && parity[*u] == Parity::Odd;
            entries.push((*u * size + b, val.clone().neg_if(flip)));
        }
        cols.push(SparseVec::from_entries(entries));
    }
    SparseMatrix::from_columns(size * size, cols)
}

/// Builds the realization: Cartan elements first (one per coordinate), then
/// root vectors grouped by parity and sorted by weight. Structure constants
/// are read off the matrix brackets and verified exactly.
pub fn realize_basis(spec: &SuperalgebraSpec) -> Result<LieBasis> {
    realize_unchecked(*spec)
}

pub(crate) fn realize_unchecked(spec: SuperalgebraSpec) -> Result<LieBasis> {
    let lay = layout(&spec);
    let size = spec.matrix_size();
    let r = spec.rank();

    let mut elements = Vec::new();
    let mut matrices = Vec::new();
    for c in 0..r {
        let mut trip = vec![(lay.plus[c], lay.plus[c], Q::one())];
        if let Some(mc) = lay.minus[c] {
            trip.push((mc, mc, -Q::one()));
        }
        matrices.push(SparseMatrix::from_triplets(size, size, trip));
        elements.push(Element { label: format!("H{}", c + 1), parity: Parity::Even, weight: spec.zero_weight(), kind: ElementKind::Cartan(c) });
    }

    // group matrix units by (parity, weight)
    let mut classes: BTreeMap<(Parity, Weight), Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..size {
        for b in 0..size {
            let w = lay.weights[a].sub(&lay.weights[b]);
            let p = lay.parities[a].add(lay.parities[b]);
            classes.entry((p, w)).or_default().push((a, b));
        }
    }
    let mut cartan_dim = 0;
    for ((p, w), units) in &classes {
        let span: Vec<SparseVec> = match &lay.form {
            None => (0..units.len()).map(SparseVec::unit).collect(),
            Some(j) => osp_conditions(units, j, &lay.parities, *p).kernel(),
        };
        if w.is_zero() {
            cartan_dim += span.len();
            continue;
        }
        if span.is_empty() {
            continue;
        }
        if span.len() != 1 && lay.form.is_some() {
            return Err(Error::Inconsistent(format!("root space of {w} has dimension {}", span.len())));
        }
        for v in span {
            let lead = v.get(v.first_index().expect("nonzero")).inv();
            let v = v.scale(&lead);
            let trip: Vec<(usize, usize, Q)> = v.iter().map(|(k, c)| (units[*k].0, units[*k].1, c.clone())).collect();
            matrices.push(SparseMatrix::from_triplets(size, size, trip));
            elements.push(Element { label: format_weight_symbolic(w), parity: *p, weight: w.clone(), kind: ElementKind::Root });
        }
    }
    if cartan_dim != r {
        return Err(Error::Inconsistent(format!("Cartan subalgebra has dimension {cartan_dim}, expected {r}")));
    }
    // order roots: even before odd, then by weight (BTreeMap order already does this)

    let d = elements.len();
    let mut root_index: HashMap<Weight, usize> = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        if e.kind == ElementKind::Root {
            root_index.insert(e.weight.clone(), i);
        }
    }
    let lead: Vec<Option<(usize, usize, Q)>> = matrices
        .iter()
        .map(|m| m.triplets().next().map(|(r, c, v)| (r, c, v.clone())))
        .collect();

    let mut brackets = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let br = matrix_bracket(&matrices[i], elements[i].parity, &matrices[j], elements[j].parity);
            if br.is_zero() {
                brackets.push(SparseVec::new());
                continue;
            }
            let w = elements[i].weight.add(&elements[j].weight);
            let coords = if w.is_zero() {
                let mut entries = Vec::new();
                for c in 0..r {
                    let v = br.get(lay.plus[c], lay.plus[c]);
                    if !v.is_zero() {
                        entries.push((c, v));
                    }
                }
                SparseVec::from_entries(entries)
            } else {
                let k = *root_index
                    .get(&w)
                    .ok_or_else(|| Error::Inconsistent(format!("bracket of {} and {} has non-root weight {w}", elements[i].label, elements[j].label)))?;
                let (lr, lc, lv) = lead[k].clone().expect("root matrices are nonzero");
                SparseVec::from_sorted(vec![(k, br.get(lr, lc) / lv)])
            };
            let mut recon = SparseMatrix::zeros(size, size);
            for (k, c) in coords.iter() {
                recon = recon.add_scaled(c, &matrices[*k]);
            }
            if recon != br {
                return Err(Error::Inconsistent(format!(
                    "bracket of {} and {} is outside the span of the basis",
                    elements[i].label, elements[j].label
                )));
            }
            brackets.push(coords);
        }
    }
    let algebra = LieAlgebra::new(spec, elements, brackets, BorelChoice::distinguished(&spec))?;
    Ok(LieBasis { algebra: Arc::new(algebra), matrices, form: lay.form, index_weight: lay.weights, index_parity: lay.parities })
}

/// Checks the block parity and (for osp) the form condition of a matrix.
pub fn in_superalgebra(basis: &LieBasis, x: &SparseMatrix, parity: Parity) -> bool {
    for (u, v, _) in x.triplets() {
        if basis.index_parity(u).add(basis.index_parity(v)) != parity {
            return false;
        }
    }
    match basis.form_matrix() {
        None => true,
        Some(j) => {
            let units: Vec<(usize, usize)> = x.triplets().map(|(u, v, _)| (u, v)).collect();
            let cond = osp_conditions(&units, j, &basis.index_parity, parity);
            let coeffs = SparseVec::from_entries(x.triplets().enumerate().map(|(k, (_, _, c))| (k, c.clone())));
            cond.apply(&coeffs).is_zero()
        }
    }
}

/// An odd element `x = sum c_i e_i` of a realized algebra.
#[derive(Clone, Debug)]
pub struct OddElement {
    pub basis: Arc<LieBasis>,
    pub coeffs: SparseVec,
    /// Number of flag roots used to build it, when built from a flag.
    pub nominal_rank: Option<usize>,
}

impl OddElement {
    pub fn new(basis: Arc<LieBasis>, coeffs: SparseVec) -> Result<Self> {
        for (i, _) in coeffs.iter() {
            if *i >= basis.dim() || basis.algebra().parity(*i) != Parity::Odd {
                return Err(Error::InvalidModule("odd element has a non-odd component".into()));
            }
        }
        Ok(OddElement { basis, coeffs, nominal_rank: None })
    }

    pub fn zero(basis: Arc<LieBasis>) -> Self {
        OddElement { basis, coeffs: SparseVec::new(), nominal_rank: Some(0) }
    }

    pub fn matrix(&self) -> SparseMatrix {
        self.basis.element_matrix(&self.coeffs)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        self.basis.algebra()
    }

    pub fn scaled(&self, c: &Q) -> OddElement {
        OddElement { basis: self.basis.clone(), coeffs: self.coeffs.scale(c), nominal_rank: self.nominal_rank }
    }

    /// `[x, x]` in coordinates.
    pub fn self_bracket(&self) -> SparseVec {
        self.algebra().bracket_vec(&self.coeffs, &self.coeffs)
    }

    pub fn is_self_commuting(&self) -> bool {
        self.self_bracket().is_zero()
    }

    /// Coordinates outside the support of every root in `x`.
    pub fn untouched_coords(&self) -> Vec<usize> {
        let alg = self.algebra();
        let r = alg.spec().rank();
        (0..r)
            .filter(|c| self.coeffs.iter().all(|(i, _)| alg.element(*i).weight.coord(*c).is_zero()))
            .collect()
    }

    /// `ad(x)` as a matrix on coordinates of g.
    pub fn ad_matrix(&self) -> SparseMatrix {
        let alg = self.algebra();
        let d = alg.dim();
        let cols = (0..d).map(|j| alg.bracket_vec(&self.coeffs, &SparseVec::unit(j))).collect();
        SparseMatrix::from_columns(d, cols)
    }
}

/// `x = sum coeffs[i] e_{α_i}`, verified self-commuting.
pub fn build_self_commuting(basis: &Arc<LieBasis>, flag: &[Weight], coeffs: &[Q]) -> Result<OddElement> {
    if flag.len() != coeffs.len() {
        return Err(Error::DimensionMismatch(format!("{} roots but {} coefficients", flag.len(), coeffs.len())));
    }
    let alg = basis.algebra();
    let mut idx = Vec::new();
    for (w, c) in flag.iter().zip(coeffs) {
        if c.is_zero() {
            return Err(Error::OutOfRange("flag coefficients must be nonzero".into()));
        }
        let i = alg
            .root_element(w)
            .filter(|i| alg.parity(*i) == Parity::Odd)
            .ok_or_else(|| Error::InvalidSpec(format!("{w} is not an odd root of {}", alg.spec())))?;
        idx.push(i);
    }
    for a in 0..idx.len() {
        for b in a..idx.len() {
            if !alg.bracket(idx[a], idx[b]).is_zero() {
                return Err(Error::NotSelfCommuting {
                    first: alg.element(idx[a]).label.clone(),
                    second: alg.element(idx[b]).label.clone(),
                });
            }
        }
    }
    let coeffs = SparseVec::from_entries(idx.iter().zip(coeffs).map(|(i, c)| (*i, c.clone())));
    let x = OddElement { basis: basis.clone(), coeffs, nominal_rank: Some(flag.len()) };
    debug_assert!(x.is_self_commuting());
    Ok(x)
}

/// `Cent_g(x)`, `[x, g]` and the quotient algebra `g_x`.
#[derive(Clone, Debug)]
pub struct CentralizerQuotient {
    pub cent: Echelon,
    pub image: Echelon,
    /// Lifts in g of the basis of `g_x`, aligned with `gx.elements()`.
    pub reps: Vec<SparseVec>,
    pub gx: Arc<LieAlgebra>,
    /// Coordinates of g kept by `g_x` (ε's then δ's, as indices into the full coordinate list).
    pub kept_coords: Vec<usize>,
    tracker: TrackedBasis,
}

impl CentralizerQuotient {
    /// Quotient coordinates of an element of `Cent_g(x)`.
    pub fn project(&self, v: &SparseVec) -> Option<SparseVec> {
        self.tracker.coordinates(&self.image.reduce(v))
    }
}

fn quotient_tracker(image: &Echelon, reps: &[SparseVec]) -> TrackedBasis {
    let mut t = TrackedBasis::new(image.dim(), reps.len().max(1));
    for r in reps {
        let ok = t.try_insert(image.reduce(r));
        debug_assert!(ok);
    }
    t
}

pub fn centralizer_quotient(x: &OddElement) -> Result<CentralizerQuotient> {
    if !x.is_self_commuting() {
        return Err(Error::NotSelfCommuting { first: "x".into(), second: "x".into() });
    }
    let alg = x.algebra().clone();
    let spec = *alg.spec();
    let d = alg.dim();
    let ad = x.ad_matrix();
    let cent = Echelon::from_vectors(d, ad.kernel());
    let image = ad.image();
    for row in image.rows() {
        if !cent.contains(row) {
            return Err(Error::InclusionFailure("[x, g] is not contained in Cent(x)".into()));
        }
    }

    let kept = x.untouched_coords();
    let eps_kept: Vec<usize> = kept.iter().copied().filter(|c| *c < spec.m).collect();
    let delta_kept: Vec<usize> = kept.iter().copied().filter(|c| *c >= spec.m).map(|c| c - spec.m).collect();
    let sub_spec = SuperalgebraSpec::degenerate(spec.family, eps_kept.len(), delta_kept.len());
    let proj = |w: &Weight| w.project(&eps_kept, &delta_kept);

    // Cent(x) and [x, g] are graded by the projected weight; pick
    // representatives per graded piece, preferring H_c for kept c.
    let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for i in 0..d {
        by_weight.entry(proj(&alg.element(i).weight)).or_default().push(i);
    }
    let mut elements = Vec::new();
    let mut reps = Vec::new();
    let zero = sub_spec.zero_weight();
    for (w, idx) in &by_weight {
        let piece_cent: Vec<SparseVec> = {
            let ad_piece_kernel = ad.submatrix(&(0..d).collect::<Vec<_>>(), idx).kernel();
            ad_piece_kernel.into_iter().map(|v| v.embed(idx)).collect()
        };
        let mut t = TrackedBasis::new(d, idx.len() + kept.len() + 1);
        let mut chosen: Vec<(SparseVec, ElementKind, Parity)> = Vec::new();
        if *w == zero {
            for (k, c) in kept.iter().enumerate() {
                let h = SparseVec::unit(alg.cartan_index(*c));
                if !cent.contains(&h) || !t.try_insert(image.reduce(&h)) {
                    return Err(Error::Unsupported(format!("H{} does not survive in g_x", c + 1)));
                }
                chosen.push((h, ElementKind::Cartan(k), Parity::Even));
            }
        }
        for v in piece_cent {
            let p = v.iter().next().map(|(i, _)| alg.parity(*i)).unwrap_or(Parity::Even);
            if t.try_insert(image.reduce(&v)) {
                chosen.push((v, ElementKind::Root, p));
            }
        }
        let extra = chosen.iter().filter(|c| c.1 == ElementKind::Root).count();
        if (*w == zero && extra > 0) || extra > 1 {
            return Err(Error::Unsupported(format!(
                "g_x has a {extra}-dimensional piece of weight {w}; x is not of flag type"
            )));
        }
        elements_push(&mut elements, &mut reps, chosen, w);
    }
    // Cartan elements first, then roots in the order found
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by_key(|i| match elements[*i].kind {
        ElementKind::Cartan(c) => (0, c),
        ElementKind::Root => (1, *i),
    });
    let elements: Vec<Element> = order.iter().map(|i| elements[*i].clone()).collect();
    let reps: Vec<SparseVec> = order.iter().map(|i| reps[*i].clone()).collect();

    for r in &reps {
        let p0 = r.iter().next().map(|(i, _)| alg.parity(*i));
        if r.iter().any(|(i, _)| Some(alg.parity(*i)) != p0) {
            return Err(Error::Inconsistent("g_x representative is not parity homogeneous".into()));
        }
    }
    let tracker = quotient_tracker(&image, &reps);
    let dx = reps.len();
    let mut brackets = Vec::with_capacity(dx * dx);
    for a in 0..dx {
        for b in 0..dx {
            let br = alg.bracket_vec(&reps[a], &reps[b]);
            if !cent.contains(&br) {
                return Err(Error::InclusionFailure("Cent(x) is not closed under the bracket".into()));
            }
            let c = tracker
                .coordinates(&image.reduce(&br))
                .ok_or_else(|| Error::RepresentativeDependence("bracket leaves the chosen representatives".into()))?;
            brackets.push(c);
        }
    }
    let borel = alg.default_borel().restrict(spec.m, &eps_kept, &delta_kept);
    let gx = LieAlgebra::new(sub_spec, elements, brackets, borel)?;
    gx.verify()?;
    let kept_coords = eps_kept.iter().copied().chain(delta_kept.iter().map(|c| c + spec.m)).collect();
    Ok(CentralizerQuotient { cent, image, reps, gx: Arc::new(gx), kept_coords, tracker })
}

fn elements_push(
    elements: &mut Vec<Element>,
    reps: &mut Vec<SparseVec>,
    chosen: Vec<(SparseVec, ElementKind, Parity)>,
    w: &Weight,
) {
    for (v, kind, p) in chosen {
        let label = match kind {
            ElementKind::Cartan(c) => format!("H{}", c + 1),
            ElementKind::Root => format_weight_symbolic(w),
        };
        let weight = match kind {
            ElementKind::Cartan(_) => Weight::zero(w.m(), w.n()),
            ElementKind::Root => w.clone(),
        };
        elements.push(Element { label, parity: p, weight, kind });
        reps.push(v);
    }
}

/// The rank `k` with `dim g_x = dim g_x(table, k)`; for gl also checked
/// against `rank(A) + rank(B)` of the two odd blocks.
pub fn rank_of(x: &OddElement) -> Result<usize> {
    let q = centralizer_quotient(x)?;
    rank_from_quotient(x, &q)
}

pub fn rank_from_quotient(x: &OddElement, q: &CentralizerQuotient) -> Result<usize> {
    let spec = *x.algebra().spec();
    let dim = q.gx.dim();
    let defect = spec.defect();
    let matches: Vec<usize> = (0..=defect)
        .filter(|k| reduced_specs(&spec, *k).map(|(gx, _)| gx.dim() == dim).unwrap_or(false))
        .collect();
    let k = match matches.as_slice() {
        [k] => *k,
        _ => return Err(Error::RankUndetermined { dim, defect }),
    };
    if spec.family == Family::Gl {
        let m = x.matrix();
        let (a, n) = (spec.m, spec.n);
        let rows_a: Vec<usize> = (0..a).collect();
        let rows_b: Vec<usize> = (a..a + n).collect();
        let ra = m.submatrix(&rows_a, &rows_b).rank();
        let rb = m.submatrix(&rows_b, &rows_a).rank();
        if ra + rb != k {
            return Err(Error::Inconsistent(format!("block ranks {ra}+{rb} disagree with table rank {k}")));
        }
    }
    Ok(k)
}
