//! Cohomology rings, their Künneth squares, zero divisors and cup-length search.

mod search;
mod tensor;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{cohomology_basis, CochainBasis};
use crate::linalg::SparseVec;
use crate::scalar::{Field, FieldSpec};

pub use search::{
    nilpotency_lower_bound, reduced_cuplength, ring_bounds, sweep_ring_bounds, Certificate,
    RingBounds, Search,
};
pub use tensor::{
    kunneth_tensor_ring, zero_divisor_set, TensorRing, ZeroDivisorMode, ZeroDivisorSet,
};

/// `(a ⌣ b)(v₀…v_{p+q}) = a(v₀…v_p) · b(v_p…v_{p+q})` on dense cochains.
/// Products above the dimension of `k` are the empty cochain.
pub fn cup_product_cochain<S: Field>(
    k: &SimplicialComplex,
    p: usize,
    a: &[S],
    q: usize,
    b: &[S],
) -> Result<Vec<S>> {
    for (degree, c) in [(p, a), (q, b)] {
        if c.len() != k.count(degree) {
            return Err(Error::CochainLength {
                degree,
                expected: k.count(degree),
                got: c.len(),
            });
        }
    }
    let out = k
        .simplices(p + q)
        .iter()
        .map(|s| {
            let v = s.vertices();
            let front = k.index_of_vertices(&v[..=p]).expect("face of a simplex");
            let back = k.index_of_vertices(&v[p..]).expect("face of a simplex");
            a[front].clone() * b[back].clone()
        })
        .collect();
    Ok(out)
}

/// `H^*(K; S)` with structure constants in the basis of representative cocycles.
///
/// Basis classes are numbered globally in order of degree; an element of the
/// ring is a [`SparseVec`] over these indices.
#[derive(Clone, Debug)]
pub struct CohomologyRing<S> {
    basis: CochainBasis<S>,
    degrees: Vec<usize>,
    offsets: Vec<usize>,
    /// `table[i][j]` = basis_i · basis_j
    table: Vec<Vec<SparseVec<S>>>,
}

pub fn ring_structure<S: Field>(k: &SimplicialComplex) -> Result<CohomologyRing<S>> {
    let basis = cohomology_basis::<S>(k)?;
    let top = basis.top_degree();
    let mut degrees = Vec::new();
    let mut offsets = Vec::new();
    for d in 0..=top {
        offsets.push(degrees.len());
        degrees.extend(std::iter::repeat_n(d, basis.rank(d)));
    }
    offsets.push(degrees.len());
    let n = degrees.len();
    let local = |i: usize| i - offsets[degrees[i]];
    let mut table = vec![vec![SparseVec::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (degrees[i], degrees[j]);
            if p + q > top {
                continue;
            }
            let a = &basis.representatives(p)[local(i)];
            let b = &basis.representatives(q)[local(j)];
            let c = cup_product_cochain(k, p, a, q, b)?;
            let coords = basis.project(p + q, &c)?;
            table[i][j] = SparseVec::from_pairs(
                coords
                    .into_iter()
                    .enumerate()
                    .map(|(t, x)| (offsets[p + q] + t, x))
                    .collect(),
            );
        }
    }
    Ok(CohomologyRing {
        basis,
        degrees,
        offsets,
        table,
    })
}

impl<S: Field> CohomologyRing<S> {
    pub fn field(&self) -> FieldSpec {
        S::spec()
    }

    /// Number of basis classes over all degrees.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn top_degree(&self) -> usize {
        self.basis.top_degree()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.basis.ranks()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Global indices of the degree-`d` basis classes.
    pub fn classes(&self, d: usize) -> std::ops::Range<usize> {
        if d > self.top_degree() {
            return self.len()..self.len();
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn basis(&self) -> &CochainBasis<S> {
        &self.basis
    }

    /// The structure constants `basis_i · basis_j`.
    pub fn structure_constant(&self, i: usize, j: usize) -> &SparseVec<S> {
        &self.table[i][j]
    }

    /// The unit: the sum of the degree-0 classes (component indicators).
    pub fn unit(&self) -> SparseVec<S> {
        SparseVec::from_pairs(self.classes(0).map(|i| (i, S::one())).collect())
    }

    pub fn mul(&self, a: &SparseVec<S>, b: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::zero();
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                out.axpy(&(x.clone() * y.clone()), &self.table[*i][*j]);
            }
        }
        out
    }

    /// `a1, a2, …` for positive-degree classes; degree 0 is `1` when the
    /// complex is connected and `e1, e2, …` otherwise.
    pub fn class_name(&self, i: usize) -> String {
        let zero = self.classes(0).len();
        if i < zero {
            if zero == 1 {
                "1".to_string()
            } else {
                format!("e{}", i + 1)
            }
        } else {
            format!("a{}", i - zero + 1)
        }
    }

    /// Human-readable form of an element, e.g. `a1 + 2·a2`.
    pub fn format(&self, v: &SparseVec<S>) -> String {
        format_terms(v, |i| self.class_name(i))
    }
}

pub(crate) fn format_terms<S: Field>(v: &SparseVec<S>, name: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let one = S::one();
    let minus = -S::one();
    let mut out = String::new();
    for (k, (i, x)) in v.entries().iter().enumerate() {
        let (neg, mag) = if *x == minus && *x != one {
            (true, one.clone())
        } else {
            (false, x.clone())
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != one {
            out.push_str(&format!("{mag}·"));
        }
        out.push_str(&name(*i));
    }
    out
}
