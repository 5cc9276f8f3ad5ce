//! Sparse exact linear algebra over a [`Field`].
//!
//! Columns are sparse vectors sorted by row index. Elimination is the
//! column algorithm used for boundary matrices: the pivot of a column is its
//! largest nonzero row, and a column is reduced by subtracting earlier
//! columns that own the same pivot until its pivot is free or it vanishes.

use std::collections::HashMap;

use crate::scalar::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<S> {
    entries: Vec<(usize, S)>,
}

impl<S: Field> Default for SparseVec<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Field> SparseVec<S> {
    pub fn zero() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, S::one())],
        }
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, S)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, S)> = Vec::with_capacity(pairs.len());
        for (i, x) in pairs {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y = y.clone() + x,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[S]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<S> {
        let mut out = vec![S::zero(); len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, S)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn pivot(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> S {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn scale(&mut self, a: &S) {
        if a.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, x) in &mut self.entries {
            *x = x.clone() * a.clone();
        }
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: &S, other: &SparseVec<S>) {
        if a.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut p, mut q) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while p < x.len() || q < y.len() {
            if q == y.len() || (p < x.len() && x[p].0 < y[q].0) {
                out.push(x[p].clone());
                p += 1;
            } else if p == x.len() || y[q].0 < x[p].0 {
                out.push((y[q].0, a.clone() * y[q].1.clone()));
                q += 1;
            } else {
                let s = x[p].1.clone() + a.clone() * y[q].1.clone();
                if !s.is_zero() {
                    out.push((x[p].0, s));
                }
                p += 1;
                q += 1;
            }
        }
        self.entries = out;
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<S> {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec<S>>,
}

impl<S: Field> SparseMatrix<S> {
    pub fn new(rows: usize, columns: Vec<SparseVec<S>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.pivot().is_none_or(|p| p < rows)));
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.entries() {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut pairs: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c.entries() {
                pairs[*i].push((j, x.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: pairs
                .into_iter()
                .map(|entries| SparseVec { entries })
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::zero();
        for (j, x) in v.entries() {
            out.axpy(x, &self.columns[*j]);
        }
        out
    }

    /// `self * other`
    pub fn mul(&self, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        assert_eq!(self.cols, other.rows);
        SparseMatrix::new(
            self.rows,
            other.columns.iter().map(|c| self.mul_vec(c)).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_zero)
    }

    pub fn reduce(&self, track: bool) -> ColumnReduction<S> {
        reduce_columns(&self.columns, track)
    }

    pub fn rank(&self) -> usize {
        self.reduce(false).rank()
    }
}

/// Output of [`reduce_columns`]: `reduced[j] = Σ_k transform[j][k] · input[k]`.
#[derive(Clone, Debug)]
pub struct ColumnReduction<S> {
    pub reduced: Vec<SparseVec<S>>,
    /// Present when tracking was requested.
    pub transform: Option<Vec<SparseVec<S>>>,
}

impl<S: Field> ColumnReduction<S> {
    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_zero()).count()
    }

    /// Basis of the kernel; requires tracking.
    pub fn kernel_basis(&self) -> Vec<SparseVec<S>> {
        let v = self
            .transform
            .as_ref()
            .expect("kernel_basis needs a tracked reduction");
        self.reduced
            .iter()
            .zip(v)
            .filter(|(r, _)| r.is_zero())
            .map(|(_, t)| t.clone())
            .collect()
    }

    /// Basis of the column space; the vectors have pairwise distinct pivots.
    pub fn image_basis(&self) -> Vec<SparseVec<S>> {
        self.reduced
            .iter()
            .filter(|c| !c.is_zero())
            .cloned()
            .collect()
    }
}

pub fn reduce_columns<S: Field>(columns: &[SparseVec<S>], track: bool) -> ColumnReduction<S> {
    let mut reduced: Vec<SparseVec<S>> = Vec::with_capacity(columns.len());
    let mut transform: Vec<SparseVec<S>> = Vec::new();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        let mut r = col.clone();
        let mut v = if track {
            SparseVec::unit(j)
        } else {
            SparseVec::zero()
        };
        while let Some(p) = r.pivot() {
            let Some(&k) = owner.get(&p) else { break };
            let factor = -r.get(p).div(&reduced[k].get(p));
            r.axpy(&factor, &reduced[k]);
            if track {
                v.axpy(&factor, &transform[k]);
            }
        }
        if let Some(p) = r.pivot() {
            owner.insert(p, j);
        }
        reduced.push(r);
        if track {
            transform.push(v);
        }
    }
    ColumnReduction {
        reduced,
        transform: track.then_some(transform),
    }
}

/// Vectors in echelon form keyed by pivot, each optionally tagged.
///
/// Reducing a vector against the basis reports, for every tagged basis
/// vector, the coefficient with which it was subtracted.
#[derive(Clone, Debug)]
pub struct EchelonBasis<S> {
    vectors: Vec<SparseVec<S>>,
    tags: Vec<Option<usize>>,
    by_pivot: HashMap<usize, usize>,
}

impl<S: Field> Default for EchelonBasis<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Field> EchelonBasis<S> {
    pub fn new() -> Self {
        EchelonBasis {
            vectors: Vec::new(),
            tags: Vec::new(),
            by_pivot: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Fully reduces `v`: afterwards no entry of the residual sits at a pivot
    /// position. Returns the residual and `(tag, coefficient)` pairs such that
    /// `v = residual + Σ coefficient · tagged_vector + (untagged part)`.
    pub fn reduce(&self, v: &SparseVec<S>) -> (SparseVec<S>, Vec<(usize, S)>) {
        let mut r = v.clone();
        let mut coefficients = Vec::new();
        let mut bound = usize::MAX;
        loop {
            let next = r
                .entries()
                .iter()
                .rev()
                .map(|(i, _)| *i)
                .find(|i| *i < bound && self.by_pivot.contains_key(i));
            let Some(p) = next else { break };
            let k = self.by_pivot[&p];
            let factor = r.get(p).div(&self.vectors[k].get(p));
            r.axpy(&-factor.clone(), &self.vectors[k]);
            if let Some(tag) = self.tags[k] {
                coefficients.push((tag, factor));
            }
            bound = p;
        }
        (r, coefficients)
    }

    pub fn contains(&self, v: &SparseVec<S>) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts a vector whose pivot is not yet owned. Panics otherwise.
    pub fn insert_reduced(&mut self, v: SparseVec<S>, tag: Option<usize>) {
        let p = v.pivot().expect("cannot insert the zero vector");
        assert!(!self.by_pivot.contains_key(&p), "pivot {p} already owned");
        self.by_pivot.insert(p, self.vectors.len());
        self.vectors.push(v);
        self.tags.push(tag);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn axpy_cancels() {
        let a = SparseVec::from_pairs(vec![(0, q(1)), (2, q(3))]);
        let mut b = SparseVec::from_pairs(vec![(2, q(1)), (5, q(1))]);
        b.axpy(&q(-1), &SparseVec::from_pairs(vec![(2, q(1))]));
        assert_eq!(b, SparseVec::from_pairs(vec![(5, q(1))]));
        let mut c = a.clone();
        c.axpy(&q(-1), &a);
        assert!(c.is_zero());
    }

    #[test]
    fn kernel_and_rank() {
        // columns e0+e1, e1+e2, e0-e2 over Q: rank 2, kernel (1,-1,-1)
        let cols = vec![
            SparseVec::from_pairs(vec![(0, q(1)), (1, q(1))]),
            SparseVec::from_pairs(vec![(1, q(1)), (2, q(1))]),
            SparseVec::from_pairs(vec![(0, q(1)), (2, q(-1))]),
        ];
        let red = reduce_columns(&cols, true);
        assert_eq!(red.rank(), 2);
        let ker = red.kernel_basis();
        assert_eq!(ker.len(), 1);
        let m = SparseMatrix::new(3, cols);
        assert!(m.mul_vec(&ker[0]).is_zero());
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] is singular only in characteristic 2
        let cols2 = vec![
            SparseVec::from_pairs(vec![(0, Fp::<2>::new(1)), (1, Fp::<2>::new(1))]),
            SparseVec::from_pairs(vec![(0, Fp::<2>::new(1)), (1, Fp::<2>::new(-1))]),
        ];
        assert_eq!(reduce_columns(&cols2, false).rank(), 1);
        let colsq = vec![
            SparseVec::from_pairs(vec![(0, q(1)), (1, q(1))]),
            SparseVec::from_pairs(vec![(0, q(1)), (1, q(-1))]),
        ];
        assert_eq!(reduce_columns(&colsq, false).rank(), 2);
    }

    #[test]
    fn echelon_reports_tagged_coefficients() {
        let mut basis = EchelonBasis::<Q>::new();
        basis.insert_reduced(SparseVec::from_pairs(vec![(0, q(1)), (1, q(1))]), None);
        basis.insert_reduced(SparseVec::from_pairs(vec![(2, q(1))]), Some(0));
        let v = SparseVec::from_pairs(vec![(0, q(2)), (1, q(2)), (2, q(5))]);
        let (r, coeffs) = basis.reduce(&v);
        assert!(r.is_zero());
        assert_eq!(coeffs, vec![(0, q(5))]);
        assert!(!basis.contains(&SparseVec::unit(0)));
    }
}
