//! Superalgebra specifications, weights, the invariant form on weights,
//! root systems, ρ and dominance.
//!
//! Coordinates are indexed `0..m` for ε_1..ε_m followed by `m..m+n` for
//! δ_1..δ_n. Roots are read off the matrix realization
//! ([`crate::matrixreal::LieBasis`]) rather than tabulated.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Q;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Gl,
    OspEven,
    OspOdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        Parity::from_bit(self.bit() ^ 1)
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ other.bit())
    }
}

/// Family tag plus ranks. `m` counts ε coordinates, `n` counts δ coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SuperalgebraSpec {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

impl SuperalgebraSpec {
    /// Validated constructor for user-facing specs.
    pub fn new(family: Family, m: usize, n: usize) -> Result<Self> {
        match family {
            Family::Gl if m + n == 0 => Err(Error::InvalidSpec("gl(m|n) requires m + n >= 1".into())),
            Family::OspEven | Family::OspOdd if n == 0 => {
                Err(Error::InvalidSpec("osp families require n >= 1".into()))
            }
            _ => Ok(SuperalgebraSpec { family, m, n }),
        }
    }

    pub fn gl(m: usize, n: usize) -> Self {
        Self::new(Family::Gl, m, n).expect("valid gl spec")
    }

    /// osp(2m+1|2n).
    pub fn osp_odd(m: usize, n: usize) -> Self {
        Self::new(Family::OspOdd, m, n).expect("valid osp spec")
    }

    /// osp(2m|2n).
    pub fn osp_even(m: usize, n: usize) -> Self {
        Self::new(Family::OspEven, m, n).expect("valid osp spec")
    }

    /// Reductions may leave the user-facing domain (gl(0|0), osp(1|0), so(2m+1) ...).
    pub(crate) fn degenerate(family: Family, m: usize, n: usize) -> Self {
        SuperalgebraSpec { family, m, n }
    }

    pub fn rank(&self) -> usize {
        self.m + self.n
    }

    /// Size of the defining matrices.
    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::Gl => self.m + self.n,
            Family::OspEven => 2 * self.m + 2 * self.n,
            Family::OspOdd => 2 * self.m + 1 + 2 * self.n,
        }
    }

    /// Size of the even (orthogonal) block of the defining matrices.
    pub fn even_block(&self) -> usize {
        match self.family {
            Family::Gl => self.m,
            Family::OspEven => 2 * self.m,
            Family::OspOdd => 2 * self.m + 1,
        }
    }

    pub fn odd_block(&self) -> usize {
        match self.family {
            Family::Gl => self.n,
            _ => 2 * self.n,
        }
    }

    /// (dim g_0, dim g_1) from the closed formulas.
    pub fn dims(&self) -> (usize, usize) {
        let (a, b) = (self.even_block(), self.odd_block());
        match self.family {
            Family::Gl => (a * a + b * b, 2 * a * b),
            _ => (a * a.saturating_sub(1) / 2 + self.n * (2 * self.n + 1), a * b),
        }
    }

    pub fn dim(&self) -> usize {
        let (e, o) = self.dims();
        e + o
    }

    pub fn defect(&self) -> usize {
        self.m.min(self.n)
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Gl => format!("gl({}|{})", self.m, self.n),
            Family::OspEven => format!("osp({}|{})", 2 * self.m, 2 * self.n),
            Family::OspOdd => format!("osp({}|{})", 2 * self.m + 1, 2 * self.n),
        }
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.m, self.n)
    }

    pub fn eps(&self, i: usize) -> Weight {
        let mut w = self.zero_weight();
        w.eps[i] = Q::one();
        w
    }

    pub fn delta(&self, j: usize) -> Weight {
        let mut w = self.zero_weight();
        w.delta[j] = Q::one();
        w
    }

    /// Unit weight of coordinate `c` (ε's first, then δ's).
    pub fn coord_weight(&self, c: usize) -> Weight {
        if c < self.m {
            self.eps(c)
        } else {
            self.delta(c - self.m)
        }
    }
}

impl fmt::Display for SuperalgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parses `family:m:n` with family one of `gl`, `osp_even`, `osp_odd`.
impl FromStr for SuperalgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidSpec(format!("expected family:m:n, got {s:?}")));
        }
        let family = match parts[0].to_ascii_lowercase().replace('-', "_").as_str() {
            "gl" => Family::Gl,
            "osp_even" => Family::OspEven,
            "osp_odd" => Family::OspOdd,
            other => return Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        };
        let parse = |p: &str| p.parse::<usize>().map_err(|_| Error::InvalidSpec(format!("bad rank {p:?}")));
        SuperalgebraSpec::new(family, parse(parts[1])?, parse(parts[2])?)
    }
}

/// Coefficients in the ε/δ basis of h*.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub eps: Vec<Q>,
    pub delta: Vec<Q>,
}

impl Weight {
    pub fn zero(m: usize, n: usize) -> Self {
        Weight { eps: vec![Q::zero(); m], delta: vec![Q::zero(); n] }
    }

    pub fn from_ints(eps: &[i64], delta: &[i64]) -> Self {
        Weight { eps: eps.iter().map(|x| Q::from_int(*x)).collect(), delta: delta.iter().map(|x| Q::from_int(*x)).collect() }
    }

    pub fn from_coords(m: usize, coords: Vec<Q>) -> Self {
        let delta = coords[m..].to_vec();
        let mut eps = coords;
        eps.truncate(m);
        Weight { eps, delta }
    }

    pub fn m(&self) -> usize {
        self.eps.len()
    }

    pub fn n(&self) -> usize {
        self.delta.len()
    }

    pub fn coord(&self, c: usize) -> &Q {
        if c < self.eps.len() {
            &self.eps[c]
        } else {
            &self.delta[c - self.eps.len()]
        }
    }

    pub fn coord_mut(&mut self, c: usize) -> &mut Q {
        let m = self.eps.len();
        if c < m {
            &mut self.eps[c]
        } else {
            &mut self.delta[c - m]
        }
    }

    pub fn coords(&self) -> impl Iterator<Item = &Q> {
        self.eps.iter().chain(self.delta.iter())
    }

    pub fn conforms(&self, spec: &SuperalgebraSpec) -> bool {
        self.eps.len() == spec.m && self.delta.len() == spec.n
    }

    pub fn is_zero(&self) -> bool {
        self.coords().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coords().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a + b).collect(),
            delta: self.delta.iter().zip(&other.delta).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| a - b).collect(),
            delta: self.delta.iter().zip(&other.delta).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight { eps: self.eps.iter().map(|a| a * c).collect(), delta: self.delta.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Weight {
        self.scale(&-Q::one())
    }

    /// The form (ε_i, ε_j) = δ_ij, (δ_i, δ_j) = -δ_ij, (ε, δ) = 0. Lengths must agree.
    pub fn pair(&self, other: &Weight) -> Q {
        let e: Q = self.eps.iter().zip(&other.eps).map(|(a, b)| a * b).sum();
        let d: Q = self.delta.iter().zip(&other.delta).map(|(a, b)| a * b).sum();
        e - d
    }

    /// Keeps only the listed coordinates, ε's then δ's, in the given order.
    pub fn project(&self, eps_coords: &[usize], delta_coords: &[usize]) -> Weight {
        Weight {
            eps: eps_coords.iter().map(|i| self.eps[*i].clone()).collect(),
            delta: delta_coords.iter().map(|j| self.delta[*j].clone()).collect(),
        }
    }
}

/// Parses `a,b|c,d`, optionally wrapped in parentheses; either side may be empty.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (e, d) = t.split_once('|').unwrap_or((t, ""));
        let list = |p: &str| -> Result<Vec<Q>> {
            p.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<Q>().map_err(|_| Error::InvalidSpec(format!("bad weight coordinate {x:?}"))))
                .collect()
        };
        Ok(Weight { eps: list(e)?, delta: list(d)? })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.eps.iter().map(|x| x.to_string()).collect();
        let d: Vec<String> = self.delta.iter().map(|x| x.to_string()).collect();
        write!(f, "({}|{})", e.join(","), d.join(","))
    }
}

/// Structured error on dimension mismatch.
pub fn bilinear_form(spec: &SuperalgebraSpec, v: &Weight, w: &Weight) -> Result<Q> {
    if !v.conforms(spec) || !w.conforms(spec) {
        return Err(Error::DimensionMismatch(format!(
            "weights {v} and {w} do not conform to {}",
            spec.label()
        )));
    }
    Ok(v.pair(w))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub weight: Weight,
    pub parity: Parity,
}

impl Root {
    pub fn is_isotropic(&self) -> bool {
        self.weight.pair(&self.weight).is_zero()
    }

    pub fn neg(&self) -> Root {
        Root { weight: self.weight.neg(), parity: self.parity }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_weight_symbolic(&self.weight))
    }
}

/// Human-readable `ε_1-δ_1` style rendering.
pub fn format_weight_symbolic(w: &Weight) -> String {
    let mut out = String::new();
    let mut push = |c: &Q, name: String| {
        if c.is_zero() {
            return;
        }
        let s = if c.is_one() {
            if out.is_empty() { name } else { format!("+{name}") }
        } else if (-c).is_one() {
            format!("-{name}")
        } else if c.is_positive() && !out.is_empty() {
            format!("+{c}{name}")
        } else {
            format!("{c}{name}")
        };
        out.push_str(&s);
    };
    for (i, c) in w.eps.iter().enumerate() {
        push(c, format!("e{}", i + 1));
    }
    for (j, c) in w.delta.iter().enumerate() {
        push(c, format!("d{}", j + 1));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Positivity as a signed lexicographic order: a weight is positive when
/// the first nonzero entry of `(signs[k] * w[order[k]])_k` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BorelChoice {
    pub order: Vec<usize>,
    pub signs: Vec<i8>,
}

impl BorelChoice {
    /// ε_1 > … > ε_m > δ_1 > … > δ_n.
    pub fn distinguished(spec: &SuperalgebraSpec) -> Self {
        let r = spec.rank();
        BorelChoice { order: (0..r).collect(), signs: vec![1; r] }
    }

    pub fn new(spec: &SuperalgebraSpec, order: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let r = spec.rank();
        let mut seen = vec![false; r];
        if order.len() != r || signs.len() != r {
            return Err(Error::DimensionMismatch("borel order/sign length".into()));
        }
        for &c in &order {
            if c >= r || seen[c] {
                return Err(Error::InvalidSpec("borel order must be a permutation".into()));
            }
            seen[c] = true;
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidSpec("borel signs must be +-1".into()));
        }
        Ok(BorelChoice { order, signs })
    }

    pub fn key(&self, w: &Weight) -> Vec<Q> {
        self.order
            .iter()
            .zip(&self.signs)
            .map(|(c, s)| if *s < 0 { -w.coord(*c) } else { w.coord(*c).clone() })
            .collect()
    }

    pub fn is_positive(&self, w: &Weight) -> bool {
        for (c, s) in self.order.iter().zip(&self.signs) {
            let x = w.coord(*c);
            if !x.is_zero() {
                return x.is_positive() == (*s > 0);
            }
        }
        false
    }

    /// The order restricted to a subset of coordinates, re-indexed for a
    /// spec whose ε's are `eps_coords` and δ's are `delta_coords`.
    pub fn restrict(&self, m: usize, eps_coords: &[usize], delta_coords: &[usize]) -> BorelChoice {
        let mut map = HashMap::new();
        for (k, c) in eps_coords.iter().enumerate() {
            map.insert(*c, k);
        }
        for (k, c) in delta_coords.iter().enumerate() {
            map.insert(m + *c, eps_coords.len() + k);
        }
        let mut order = Vec::new();
        let mut signs = Vec::new();
        for (c, s) in self.order.iter().zip(&self.signs) {
            if let Some(k) = map.get(c) {
                order.push(*k);
                signs.push(*s);
            }
        }
        BorelChoice { order, signs }
    }

    /// A fixed list of pairwise distinct Borel choices used for invariance checks.
    pub fn variants(spec: &SuperalgebraSpec) -> Vec<BorelChoice> {
        let (m, n) = (spec.m, spec.n);
        let r = m + n;
        let mut out = vec![BorelChoice::distinguished(spec)];
        // δ's first
        let mut o: Vec<usize> = (m..r).collect();
        o.extend(0..m);
        out.push(BorelChoice { order: o, signs: vec![1; r] });
        // all coordinates reversed
        out.push(BorelChoice { order: (0..r).rev().collect(), signs: vec![1; r] });
        // interleaved ε_1, δ_1, ε_2, δ_2, ...
        let mut o = Vec::new();
        for k in 0..m.max(n) {
            if k < m {
                o.push(k);
            }
            if k < n {
                o.push(m + k);
            }
        }
        out.push(BorelChoice { order: o, signs: vec![1; r] });
        // distinguished order with every sign flipped
        out.push(BorelChoice { order: (0..r).collect(), signs: vec![-1; r] });
        // first coordinate flipped
        let mut s = vec![1; r];
        if r > 0 {
            s[0] = -1;
        }
        out.push(BorelChoice { order: (0..r).collect(), signs: s });
        // δ's first and reversed, with every sign flipped
        let mut o: Vec<usize> = (m..r).collect();
        o.extend(0..m);
        out.push(BorelChoice { order: o, signs: vec![-1; r] });
        out.push(BorelChoice { order: (0..r).rev().collect(), signs: vec![-1; r] });
        // last coordinate flipped
        let mut s = vec![1; r];
        if r > 0 {
            s[r - 1] = -1;
        }
        out.push(BorelChoice { order: (0..r).collect(), signs: s });
        let mut uniq: Vec<BorelChoice> = Vec::new();
        for b in out {
            if !uniq.contains(&b) {
                uniq.push(b);
            }
        }
        uniq
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystem {
    pub spec: SuperalgebraSpec,
    pub borel: BorelChoice,
    pub roots: Vec<Root>,
    pub positive: Vec<bool>,
    pub simple: Vec<usize>,
    pub rho: Weight,
}

impl RootSystem {
    /// Assembles a root system from a root list (as read off a realization).
    pub fn from_roots(spec: SuperalgebraSpec, roots: Vec<Root>, borel: BorelChoice) -> RootSystem {
        let positive: Vec<bool> = roots.iter().map(|r| borel.is_positive(&r.weight)).collect();
        let simple = simple_roots(&roots, &positive);
        let rho = rho_of(&spec, &roots, &positive);
        RootSystem { spec, borel, roots, positive, simple, rho }
    }

    pub fn even_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.parity == Parity::Even)
    }

    pub fn odd_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.parity == Parity::Odd)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().zip(&self.positive).filter(|(_, p)| **p).map(|(r, _)| r)
    }

    pub fn positive_even(&self) -> Vec<&Root> {
        self.positive_roots().filter(|r| r.parity == Parity::Even).collect()
    }

    /// Positive isotropic roots (one per ± pair).
    pub fn positive_isotropic(&self) -> Vec<&Root> {
        self.positive_roots().filter(|r| r.is_isotropic()).collect()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.roots.iter().position(|r| &r.weight == w)
    }

    /// Simple roots of the even subsystem for this positivity.
    pub fn even_simple_roots(&self) -> Vec<Weight> {
        let even: Vec<&Root> = self.positive_even();
        even.iter()
            .filter(|a| {
                !even.iter().any(|b| even.iter().any(|c| b.weight.add(&c.weight) == a.weight))
            })
            .map(|r| r.weight.clone())
            .collect()
    }

    /// dominance for g_0: 2(λ,β)/(β,β) a non-negative integer on even simple roots.
    pub fn is_even_dominant(&self, lambda: &Weight) -> bool {
        self.even_simple_roots().iter().all(|b| {
            let num = lambda.pair(b) * Q::from_int(2);
            let den = b.pair(b);
            let r = num / den;
            r.is_integer() && !r.is_negative()
        })
    }

    /// JSON-friendly listing `{weight, parity, positive}`.
    pub fn listing(&self) -> Vec<RootEntry> {
        self.roots
            .iter()
            .zip(&self.positive)
            .map(|(r, p)| RootEntry { weight: r.weight.clone(), parity: r.parity, positive: *p })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootEntry {
    pub weight: Weight,
    pub parity: Parity,
    pub positive: bool,
}

fn simple_roots(roots: &[Root], positive: &[bool]) -> Vec<usize> {
    let pos: Vec<usize> = (0..roots.len()).filter(|i| positive[*i]).collect();
    let mut sums = BTreeSet::new();
    for &a in &pos {
        for &b in &pos {
            sums.insert(roots[a].weight.add(&roots[b].weight));
        }
    }
    pos.into_iter().filter(|i| !sums.contains(&roots[*i].weight)).collect()
}

fn rho_of(spec: &SuperalgebraSpec, roots: &[Root], positive: &[bool]) -> Weight {
    let mut acc = spec.zero_weight();
    for (r, p) in roots.iter().zip(positive) {
        if !*p {
            continue;
        }
        match r.parity {
            Parity::Even => acc = acc.add(&r.weight),
            Parity::Odd => acc = acc.sub(&r.weight),
        }
    }
    acc.scale(&Q::half())
}

/// Roots from the adjoint action on the matrix realization, positivity from `borel`.
pub fn build_root_system(spec: &SuperalgebraSpec, borel: &BorelChoice) -> Result<RootSystem> {
    let basis = crate::matrixreal::realize_basis(spec)?;
    Ok(basis.algebra().root_system(borel))
}

pub fn rho(spec: &SuperalgebraSpec, borel: &BorelChoice) -> Result<Weight> {
    Ok(build_root_system(spec, borel)?.rho)
}

/// A signed permutation of coordinates: `(w v)[perm[i]] = signs[i] * v[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(r: usize) -> Self {
        WeylElement { perm: (0..r).collect(), signs: vec![1; r] }
    }

    pub fn act(&self, w: &Weight) -> Weight {
        let m = w.m();
        let r = m + w.n();
        let mut coords = vec![Q::zero(); r];
        for i in 0..r {
            let x = w.coord(i).clone();
            coords[self.perm[i]] = if self.signs[i] < 0 { -x } else { x };
        }
        Weight::from_coords(m, coords)
    }

    pub fn inverse(&self) -> WeylElement {
        let r = self.perm.len();
        let mut perm = vec![0; r];
        let mut signs = vec![1; r];
        for i in 0..r {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        WeylElement { perm, signs }
    }
}

pub const WEYL_CAP: usize = 100_000;

/// The Weyl group of g_0, materialized: permutations (GL) or signed
/// permutations (OSP; even sign changes only on the ε block of osp(2m|2n)).
pub fn weyl_group(spec: &SuperalgebraSpec) -> Result<Vec<WeylElement>> {
    let (m, n) = (spec.m, spec.n);
    let fact = |k: usize| (1..=k).product::<usize>().max(1);
    let order = match spec.family {
        Family::Gl => fact(m).saturating_mul(fact(n)),
        Family::OspOdd => fact(m).saturating_mul(1 << m).saturating_mul(fact(n)).saturating_mul(1 << n),
        Family::OspEven => {
            let d = if m == 0 { 1 } else { fact(m) * (1 << (m - 1)) };
            d.saturating_mul(fact(n)).saturating_mul(1 << n)
        }
    };
    if order > WEYL_CAP {
        return Err(Error::WeylGroupTooLarge(order));
    }
    let signed = spec.family != Family::Gl;
    let eps_part = signed_perms(m, signed, spec.family == Family::OspEven);
    let delta_part = signed_perms(n, signed, false);
    let mut out = Vec::with_capacity(order);
    for (pe, se) in &eps_part {
        for (pd, sd) in &delta_part {
            let mut perm: Vec<usize> = pe.clone();
            perm.extend(pd.iter().map(|x| x + m));
            let mut signs = se.clone();
            signs.extend(sd.iter().copied());
            out.push(WeylElement { perm, signs });
        }
    }
    Ok(out)
}

fn signed_perms(k: usize, signed: bool, even_signs: bool) -> Vec<(Vec<usize>, Vec<i8>)> {
    let mut perms = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &perms {
            for x in 0..k {
                if !p.contains(&x) {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let sign_sets: Vec<Vec<i8>> = if signed {
        (0..(1u32 << k))
            .filter(|mask| !even_signs || mask.count_ones() % 2 == 0)
            .map(|mask| (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect()
    } else {
        vec![vec![1; k]]
    };
    let mut out = Vec::new();
    for p in &perms {
        for s in &sign_sets {
            out.push((p.clone(), s.clone()));
        }
    }
    out
}

/// Positive system as a membership mask over `roots`.
type PosMask = Vec<bool>;

fn mask_simple(roots: &[Root], mask: &PosMask) -> Vec<usize> {
    simple_roots(roots, mask)
}

/// Highest weight of the same simple module with respect to `to`, given its
/// highest weight `lambda` with respect to `from`. Both root systems must come
/// from the same realization (same root order).
///
/// An even Weyl element aligns the even parts; isotropic odd reflections then
/// walk to the target: reflecting at a simple isotropic α sends λ to λ−α when
/// (λ,α) ≠ 0 and leaves it unchanged otherwise.
pub fn transport_highest_weight(from: &RootSystem, lambda: &Weight, to: &RootSystem) -> Result<Weight> {
    if from.roots != to.roots {
        return Err(Error::DimensionMismatch("root systems come from different realizations".into()));
    }
    let roots = &from.roots;
    let index: HashMap<&Weight, usize> = roots.iter().enumerate().map(|(i, r)| (&r.weight, i)).collect();
    let weyl = weyl_group(&from.spec)?;
    let target_even: Vec<usize> = (0..roots.len()).filter(|i| to.positive[*i] && roots[*i].parity == Parity::Even).collect();
    let from_even: Vec<usize> = (0..roots.len()).filter(|i| from.positive[*i] && roots[*i].parity == Parity::Even).collect();
    let w = weyl
        .iter()
        .find(|w| from_even.iter().all(|i| index.get(&w.act(&roots[*i].weight)).is_some_and(|j| to.positive[*j])))
        .ok_or_else(|| Error::Inconsistent("no Weyl element aligns the even positive systems".into()))?;
    debug_assert_eq!(from_even.len(), target_even.len());
    let mut lam = w.act(lambda);
    let mut cur: PosMask = vec![false; roots.len()];
    for i in 0..roots.len() {
        if from.positive[i] {
            let j = index[&w.act(&roots[i].weight)];
            cur[j] = true;
        }
    }
    let mut guard = 0;
    while cur != to.positive {
        guard += 1;
        if guard > roots.len() + 1 {
            return Err(Error::Inconsistent("odd reflection walk did not terminate".into()));
        }
        let simple = mask_simple(roots, &cur);
        let alpha = simple
            .into_iter()
            .find(|i| roots[*i].is_isotropic() && !to.positive[*i])
            .ok_or_else(|| Error::Inconsistent("no simple isotropic root separates the positive systems".into()))?;
        let a = &roots[alpha].weight;
        if !lam.pair(a).is_zero() {
            lam = lam.sub(a);
        }
        cur[alpha] = false;
        cur[index[&a.neg()]] = true;
    }
    Ok(lam)
}

/// Integer coordinates, and g_0-dominant with respect to every positive
/// system reachable from `borel` by isotropic odd reflections (same even
/// part), with λ transported along the way.
///
/// For gl(m|n) with the distinguished order this reduces to weakly
/// decreasing ε and δ coordinates. For the osp families g_0-dominance at
/// the starting Borel alone is not sufficient (e.g. bδ_1 for osp(3|2) with
/// ε_1 > δ_1 is not the highest weight of a finite-dimensional module).
pub fn is_dominant_integral(spec: &SuperalgebraSpec, lambda: &Weight, borel: &BorelChoice) -> Result<bool> {
    let rs = build_root_system(spec, borel)?;
    dominant_integral_in(&rs, lambda)
}

pub fn dominant_integral_in(rs: &RootSystem, lambda: &Weight) -> Result<bool> {
    if !lambda.conforms(&rs.spec) {
        return Err(Error::DimensionMismatch(format!("weight {lambda} does not conform to {}", rs.spec)));
    }
    if !lambda.is_integral() {
        return Ok(false);
    }
    let roots = &rs.roots;
    let index: HashMap<&Weight, usize> = roots.iter().enumerate().map(|(i, r)| (&r.weight, i)).collect();
    let mut seen: BTreeSet<PosMask> = BTreeSet::new();
    let mut queue = VecDeque::new();
    queue.push_back((rs.positive.clone(), lambda.clone()));
    seen.insert(rs.positive.clone());
    while let Some((mask, lam)) = queue.pop_front() {
        let view = RootSystem {
            spec: rs.spec,
            borel: rs.borel.clone(),
            roots: roots.clone(),
            positive: mask.clone(),
            simple: Vec::new(),
            rho: rs.rho.clone(),
        };
        if !view.is_even_dominant(&lam) {
            return Ok(false);
        }
        for alpha in mask_simple(roots, &mask) {
            if !roots[alpha].is_isotropic() {
                continue;
            }
            let a = &roots[alpha].weight;
            let next_lam = if lam.pair(a).is_zero() { lam.clone() } else { lam.sub(a) };
            let mut next = mask.clone();
            next[alpha] = false;
            next[index[&a.neg()]] = true;
            if seen.insert(next.clone()) {
                queue.push_back((next, next_lam));
            }
        }
    }
    Ok(true)
}

/// All weights with integer coordinates in `[lo, hi]`, in lexicographic order.
pub fn weight_box(spec: &SuperalgebraSpec, lo: i64, hi: i64) -> Vec<Weight> {
    let r = spec.rank();
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut cur = vec![lo; r];
    loop {
        let coords: Vec<Q> = cur.iter().map(|x| Q::from_int(*x)).collect();
        out.push(Weight::from_coords(spec.m, coords));
        let mut k = r;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < hi {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = lo;
                }
                break;
            }
        }
    }
}
