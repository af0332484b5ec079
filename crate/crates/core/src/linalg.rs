//! Sparse exact linear algebra over `Q`.
//!
//! Vectors are sorted `(index, value)` lists without explicit zeros.
//! Matrices are stored column-major because almost every consumer applies
//! them to vectors. Subspaces are kept in reduced row echelon form
//! ([`Echelon`]), which makes reduction modulo a subspace a linear
//! projection; kernels, images and quotients are all built on that.

use std::collections::BTreeMap;

use crate::arith::Q;

#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Q::one())] }
    }

    /// Builds from arbitrary entries; duplicates are summed, zeros dropped.
    pub fn from_entries<I: IntoIterator<Item = (usize, Q)>>(it: I) -> Self {
        let mut map: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, v) in it {
            if v.is_zero() {
                continue;
            }
            let slot = map.entry(i).or_insert_with(Q::zero);
            *slot += v;
        }
        SparseVec { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// Caller guarantees sorted, unique, nonzero entries.
    pub fn from_sorted(entries: Vec<(usize, Q)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Q]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Q)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Q)> {
        self.entries
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(k, _)| *k) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn first_index(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Q) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn scale_in_place(&mut self, c: &Q) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in self.entries.iter_mut() {
            *v *= c;
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Q, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() || b < y.len() {
            if b >= y.len() || (a < x.len() && x[a].0 < y[b].0) {
                out.push(x[a].clone());
                a += 1;
            } else if a >= x.len() || y[b].0 < x[a].0 {
                out.push((y[b].0, c * &y[b].1));
                b += 1;
            } else {
                let v = &x[a].1 + &(c * &y[b].1);
                if !v.is_zero() {
                    out.push((x[a].0, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn axpy(&mut self, c: &Q, other: &SparseVec) {
        *self = self.add_scaled(c, other);
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&-Q::one())
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let (mut a, mut b) = (0, 0);
        let mut acc = Q::zero();
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() && b < y.len() {
            match x[a].0.cmp(&y[b].0) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += &x[a].1 * &y[b].1;
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    /// Re-index through `map` (entries mapping to `None` are dropped).
    pub fn remap<F: Fn(usize) -> Option<usize>>(&self, map: F) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))))
    }

    /// Restricted to positions in `positions`, re-indexed by their rank there.
    pub fn restrict(&self, positions: &[usize]) -> SparseVec {
        let mut out = Vec::new();
        for (k, p) in positions.iter().enumerate() {
            let v = self.get(*p);
            if !v.is_zero() {
                out.push((k, v));
            }
        }
        SparseVec { entries: out }
    }

    /// Inverse of [`SparseVec::restrict`]: index `k` goes to `positions[k]`.
    pub fn embed(&self, positions: &[usize]) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(k, v)| (positions[*k], v.clone())))
    }
}

/// Sum of scaled vectors, accumulated without repeated merging.
pub fn linear_combination<'a, I>(terms: I) -> SparseVec
where
    I: IntoIterator<Item = (Q, &'a SparseVec)>,
{
    let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (i, x) in v.iter() {
            let slot = acc.entry(*i).or_insert_with(Q::zero);
            *slot += &c * x;
        }
    }
    SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, ncols: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn diagonal(values: &[Q]) -> Self {
        let n = values.len();
        SparseMatrix {
            nrows: n,
            ncols: n,
            cols: values
                .iter()
                .enumerate()
                .map(|(i, v)| if v.is_zero() { SparseVec::new() } else { SparseVec::from_sorted(vec![(i, v.clone())]) })
                .collect(),
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().map_or(true, |m| m < nrows)));
        SparseMatrix { nrows, ncols: cols.len(), cols }
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, Q)>>(nrows: usize, ncols: usize, it: I) -> Self {
        let mut per_col: Vec<Vec<(usize, Q)>> = vec![Vec::new(); ncols];
        for (r, c, v) in it {
            assert!(r < nrows && c < ncols, "triplet out of range");
            per_col[c].push((r, v));
        }
        SparseMatrix { nrows, ncols, cols: per_col.into_iter().map(SparseVec::from_entries).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.nnz()).sum()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        linear_combination(v.iter().map(|(j, x)| (x.clone(), &self.cols[*j])))
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "matrix product shape mismatch");
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add_scaled(&self, c: &Q, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "matrix sum shape mismatch");
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add_scaled(c, b)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn scale(&self, c: &Q) -> SparseMatrix {
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, cols: self.cols.iter().map(|col| col.scale(c)).collect() }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut per_col: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                per_col[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, cols: per_col.into_iter().map(SparseVec::from_sorted).collect() }
    }

    /// Rows as sparse vectors.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.transpose().cols
    }

    /// Kronecker product; index `(i, k)` flattens to `i * other.rows + k`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let (nr, nc) = (self.nrows * other.nrows, self.ncols * other.ncols);
        let mut cols = Vec::with_capacity(nc);
        for a in &self.cols {
            for b in &other.cols {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        entries.push((i * other.nrows + k, x * y));
                    }
                }
                cols.push(SparseVec::from_sorted(entries));
            }
        }
        SparseMatrix { nrows: nr, ncols: nc, cols }
    }

    /// Submatrix with the given row and column positions (re-indexed).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut pos = vec![usize::MAX; self.nrows];
        for (k, r) in rows.iter().enumerate() {
            pos[*r] = k;
        }
        SparseMatrix {
            nrows: rows.len(),
            ncols: cols.len(),
            cols: cols
                .iter()
                .map(|c| self.cols[*c].remap(|i| if pos[i] == usize::MAX { None } else { Some(pos[i]) }))
                .collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut cols = self.cols.clone();
        let shift = self.nrows;
        cols.extend(other.cols.iter().map(|c| c.remap(|i| Some(i + shift))));
        SparseMatrix { nrows: self.nrows + other.nrows, ncols: self.ncols + other.ncols, cols }
    }

    pub fn trace(&self) -> Q {
        (0..self.ncols.min(self.nrows)).map(|i| self.get(i, i)).sum()
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.nrows);
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Basis of the kernel (as column vectors of length `ncols`).
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new(self.ncols);
        for r in self.rows() {
            e.insert(r);
        }
        e.null_space()
    }

    /// Echelon basis of the column space.
    pub fn image(&self) -> Echelon {
        let mut e = Echelon::new(self.nrows);
        for c in &self.cols {
            e.insert(c.clone());
        }
        e
    }

    /// If the matrix is diagonal, its diagonal.
    pub fn diagonal_entries(&self) -> Option<Vec<Q>> {
        if self.nrows != self.ncols {
            return None;
        }
        let mut out = Vec::with_capacity(self.ncols);
        for (j, c) in self.cols.iter().enumerate() {
            match c.entries() {
                [] => out.push(Q::zero()),
                [(i, v)] if *i == j => out.push(v.clone()),
                _ => return None,
            }
        }
        Some(out)
    }
}

/// A subspace of `Q^dim` in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<usize>,
}

const NO_ROW: usize = usize::MAX;

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![NO_ROW; dim] }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(dim: usize, it: I) -> Self {
        let mut e = Echelon::new(dim);
        for v in it {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_ROW
    }

    /// Residual of `v` modulo the span (a linear projection).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let terms: Vec<(Q, usize)> = v
            .iter()
            .filter(|(i, _)| self.pivot_row[*i] != NO_ROW)
            .map(|(i, x)| (x.clone(), self.pivot_row[*i]))
            .collect();
        if terms.is_empty() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, Q> = v.iter().map(|(i, x)| (*i, x.clone())).collect();
        for (c, r) in terms {
            for (i, x) in self.rows[r].iter() {
                let slot = acc.entry(*i).or_insert_with(Q::zero);
                *slot -= &c * x;
            }
        }
        SparseVec::from_sorted(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.first_index() else {
            return false;
        };
        let inv = r.get(p).inv();
        r.scale_in_place(&inv);
        for row in self.rows.iter_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                row.axpy(&-c, &r);
            }
        }
        self.pivot_row[p] = self.rows.len();
        self.pivots.push(p);
        self.rows.push(r);
        true
    }

    /// Coordinates of `v` with respect to `rows()`; `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v.get(*p)).collect())
    }

    /// Coordinates as a sparse vector, without the membership check.
    pub fn coordinates_unchecked(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_entries(v.iter().filter(|(i, _)| self.pivot_row[*i] != NO_ROW).map(|(i, x)| (self.pivot_row[*i], x.clone())))
    }

    /// Treating the rows as homogeneous equations, a basis of the solutions.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let mut per_free: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (i, x) in row.iter() {
                if self.pivot_row[*i] == NO_ROW {
                    per_free.entry(*i).or_default().push((self.pivots[r], -x));
                }
            }
        }
        (0..self.dim)
            .filter(|c| self.pivot_row[*c] == NO_ROW)
            .map(|f| {
                let mut entries = per_free.remove(&f).unwrap_or_default();
                entries.push((f, Q::one()));
                SparseVec::from_entries(entries)
            })
            .collect()
    }
}

/// The quotient `span(generators) / sub` with a fixed choice of representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Echelon,
    reps: Echelon,
}

impl Quotient {
    pub fn new<I: IntoIterator<Item = SparseVec>>(sub: Echelon, generators: I) -> Self {
        let mut reps = Echelon::new(sub.dim());
        for g in generators {
            let r = sub.reduce(&g);
            reps.insert(r);
        }
        Quotient { sub, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.rank()
    }

    pub fn sub(&self) -> &Echelon {
        &self.sub
    }

    /// Representatives (lifts) of the quotient basis.
    pub fn representatives(&self) -> &[SparseVec] {
        self.reps.rows()
    }

    /// Quotient coordinates of `v`; `None` if `v` is not in `span(generators)`.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let r = self.sub.reduce(v);
        if !self.reps.contains(&r) {
            return None;
        }
        Some(self.reps.coordinates_unchecked(&r))
    }
}

/// Independent generators kept verbatim, with coordinates taken relative
/// to the generators themselves (not to echelon rows).
#[derive(Clone, Debug)]
pub struct TrackedBasis {
    dim: usize,
    cap: usize,
    ech: Echelon,
    gens: Vec<SparseVec>,
}

impl TrackedBasis {
    /// `cap` bounds the number of generators that will ever be inserted.
    pub fn new(dim: usize, cap: usize) -> Self {
        TrackedBasis { dim, cap, ech: Echelon::new(dim + cap), gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[SparseVec] {
        &self.gens
    }

    /// Inserts `v` if it is independent of the current generators.
    pub fn try_insert(&mut self, v: SparseVec) -> bool {
        let k = self.gens.len();
        assert!(k < self.cap, "tracked basis capacity exceeded");
        let mut aug = v.clone().into_entries();
        aug.push((self.dim + k, Q::one()));
        let aug = SparseVec::from_sorted(aug);
        let r = self.ech.reduce(&aug);
        if r.first_index().map_or(true, |p| p >= self.dim) {
            return false;
        }
        self.ech.insert(r);
        self.gens.push(v);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.ech.reduce(v).first_index().map_or(true, |p| p >= self.dim)
    }

    /// `c` with `v = sum_k c_k gens[k]`, or `None` outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let r = self.ech.reduce(v);
        if r.first_index().map_or(false, |p| p < self.dim) {
            return None;
        }
        Some(r.remap(|i| Some(i - self.dim)).neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let nrows = rows.len();
        let ncols = rows[0].len();
        SparseMatrix::from_triplets(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, q(*v)))),
        )
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = dense(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.apply(v).is_zero());
        }
    }

    #[test]
    fn quotient_coordinates() {
        let sub = Echelon::from_vectors(3, vec![SparseVec::unit(0)]);
        let qt = Quotient::new(sub, vec![SparseVec::from_dense(&[q(1), q(1), q(0)]), SparseVec::unit(2)]);
        assert_eq!(qt.dim(), 2);
        let c = qt.coordinates(&SparseVec::from_dense(&[q(5), q(2), q(3)])).unwrap();
        assert_eq!(c.to_dense(2), vec![q(2), q(3)]);
    }

    #[test]
    fn kron_matches_index_convention() {
        let a = dense(&[&[1, 2], &[0, 1]]);
        let b = dense(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(0 * 2 + 1, 1 * 2 + 0), q(2));
        assert_eq!(k.get(1 * 2 + 0, 1 * 2 + 1), q(1));
    }

    #[test]
    fn tracked_coordinates_use_generators() {
        let mut t = TrackedBasis::new(3, 3);
        let g0 = SparseVec::from_dense(&[q(1), q(1), q(0)]);
        let g1 = SparseVec::from_dense(&[q(0), q(1), q(1)]);
        assert!(t.try_insert(g0.clone()));
        assert!(t.try_insert(g1.clone()));
        assert!(!t.try_insert(g0.add(&g1)));
        let v = g0.scale(&q(2)).sub(&g1.scale(&q(3)));
        assert_eq!(t.coordinates(&v).unwrap(), SparseVec::from_dense(&[q(2), q(-3)]));
        assert!(t.coordinates(&SparseVec::unit(0)).is_none());
    }
}
