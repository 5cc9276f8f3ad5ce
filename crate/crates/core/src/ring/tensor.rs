use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{format_terms, CohomologyRing};
use crate::linalg::{reduce_columns, SparseVec};
use crate::scalar::Field;

/// `H^*(X) ⊗ H^*(X)`, the cohomology of `X × X` over a field.
///
/// Basis element `x_i ⊗ y_j` has index `i·n + j` where `n` is the rank of
/// the underlying ring.
#[derive(Clone, Debug)]
pub struct TensorRing<S> {
    ring: CohomologyRing<S>,
}

pub fn kunneth_tensor_ring<S: Field>(ring: CohomologyRing<S>) -> TensorRing<S> {
    TensorRing { ring }
}

impl<S: Field> TensorRing<S> {
    pub fn ring(&self) -> &CohomologyRing<S> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.ring.len() * self.ring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ring.is_empty()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.ring.len() + j
    }

    pub fn split(&self, t: usize) -> (usize, usize) {
        (t / self.ring.len(), t % self.ring.len())
    }

    pub fn degree(&self, t: usize) -> usize {
        let (i, j) = self.split(t);
        self.ring.degree(i) + self.ring.degree(j)
    }

    pub fn top_degree(&self) -> usize {
        2 * self.ring.top_degree()
    }

    /// Basis indices of the degree-`d` piece, in increasing order.
    pub fn graded_piece(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.degree(t) == d).collect()
    }

    /// `x ⊗ y` for ring elements `x`, `y`.
    pub fn tensor(&self, x: &SparseVec<S>, y: &SparseVec<S>) -> SparseVec<S> {
        let mut pairs = Vec::with_capacity(x.nnz() * y.nnz());
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                pairs.push((self.index(*i, *j), a.clone() * b.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `(x⊗y)(x'⊗y') = (−1)^{|y||x'|} (xx')⊗(yy')`, extended bilinearly.
    pub fn mul(&self, a: &SparseVec<S>, b: &SparseVec<S>) -> SparseVec<S> {
        let mut acc: HashMap<usize, S> = HashMap::new();
        for (u, x) in a.entries() {
            let (i, j) = self.split(*u);
            for (w, y) in b.entries() {
                let (k, l) = self.split(*w);
                let left = self.ring.structure_constant(i, k);
                let right = self.ring.structure_constant(j, l);
                if left.is_zero() || right.is_zero() {
                    continue;
                }
                let mut c = x.clone() * y.clone();
                if self.ring.degree(j) * self.ring.degree(k) % 2 == 1 {
                    c = -c;
                }
                for (p, s) in left.entries() {
                    for (q, t) in right.entries() {
                        let e = acc.entry(self.index(*p, *q)).or_insert_with(S::zero);
                        *e = e.clone() + c.clone() * s.clone() * t.clone();
                    }
                }
            }
        }
        SparseVec::from_pairs(acc.into_iter().collect())
    }

    /// The multiplication map `∪ : x ⊗ y ↦ x · y`.
    pub fn cup(&self, a: &SparseVec<S>) -> SparseVec<S> {
        let mut out = SparseVec::zero();
        for (u, x) in a.entries() {
            let (i, j) = self.split(*u);
            out.axpy(x, self.ring.structure_constant(i, j));
        }
        out
    }

    pub fn unit(&self) -> SparseVec<S> {
        let one = self.ring.unit();
        self.tensor(&one, &one)
    }

    pub fn basis_name(&self, t: usize) -> String {
        let (i, j) = self.split(t);
        format!("{}⊗{}", self.ring.class_name(i), self.ring.class_name(j))
    }

    pub fn format(&self, v: &SparseVec<S>) -> String {
        format_terms(v, |t| self.basis_name(t))
    }

    /// `x̄ = x⊗1 − 1⊗x` for a ring element `x`.
    pub fn bar(&self, x: &SparseVec<S>) -> SparseVec<S> {
        let one = self.ring.unit();
        let mut z = self.tensor(x, &one);
        z.axpy(&-S::one(), &self.tensor(&one, x));
        z
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroDivisorMode {
    /// `x̄ = x⊗1 − 1⊗x` for each positive-degree basis class.
    Elementary,
    /// A basis of `ker ∪` in every degree.
    #[default]
    FullKernel,
}

/// Homogeneous elements of the zero-divisor ideal `ker ∪`.
#[derive(Clone, Debug)]
pub struct ZeroDivisorSet<S> {
    pub mode: ZeroDivisorMode,
    pub elements: Vec<SparseVec<S>>,
    pub degrees: Vec<usize>,
    pub labels: Vec<String>,
}

impl<S: Field> ZeroDivisorSet<S> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn zero_divisor_set<S: Field>(t: &TensorRing<S>, mode: ZeroDivisorMode) -> ZeroDivisorSet<S> {
    let r = t.ring();
    let mut set = ZeroDivisorSet {
        mode,
        elements: Vec::new(),
        degrees: Vec::new(),
        labels: Vec::new(),
    };
    match mode {
        ZeroDivisorMode::Elementary => {
            let first = r.classes(0).end;
            for i in first..r.len() {
                set.elements.push(t.bar(&SparseVec::unit(i)));
                set.degrees.push(r.degree(i));
                set.labels.push(format!("ā{}", subscript(i - first + 1)));
            }
        }
        ZeroDivisorMode::FullKernel => {
            for d in 0..=t.top_degree() {
                let piece = t.graded_piece(d);
                let columns: Vec<SparseVec<S>> =
                    piece.iter().map(|&u| t.cup(&SparseVec::unit(u))).collect();
                let kernel = reduce_columns(&columns, true).kernel_basis();
                for (n, z) in kernel.into_iter().enumerate() {
                    let element = SparseVec::from_pairs(
                        z.entries()
                            .iter()
                            .map(|(c, x)| (piece[*c], x.clone()))
                            .collect(),
                    );
                    set.elements.push(element);
                    set.degrees.push(d);
                    set.labels.push(format!("z{d}.{}", n + 1));
                }
            }
        }
    }
    for z in &set.elements {
        assert!(
            t.cup(z).is_zero(),
            "zero divisor not annihilated by the cup map"
        );
    }
    set
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::ring::ring_structure;
    use crate::scalar::{Fp, Rational};

    type F2 = Fp<2>;
    type Q = Rational;

    fn tensor<S: Field>(k: &SimplicialComplex) -> TensorRing<S> {
        kunneth_tensor_ring(ring_structure::<S>(k).unwrap())
    }

    #[test]
    fn odd_generator_sign_rule() {
        let t = tensor::<Q>(&SimplicialComplex::cycle_complex(4).unwrap());
        let (a1, one_a) = (
            SparseVec::unit(t.index(1, 0)),
            SparseVec::unit(t.index(0, 1)),
        );
        let aa = SparseVec::unit(t.index(1, 1));
        assert_eq!(t.mul(&a1, &one_a), aa);
        let mut neg = aa.clone();
        neg.scale(&Q::from_i64(-1));
        assert_eq!(t.mul(&one_a, &a1), neg);
        assert_eq!(t.cup(&a1), SparseVec::unit(1));
        assert!(t.cup(&aa).is_zero());
    }

    #[test]
    fn graded_piece_dimensions_follow_kunneth() {
        let t = tensor::<Q>(&SimplicialComplex::torus7());
        let b = [1usize, 2, 1];
        for n in 0..=4 {
            let expected: usize = (0..=n)
                .filter(|p| *p <= 2 && n - p <= 2)
                .map(|p| b[p] * b[n - p])
                .sum();
            assert_eq!(t.graded_piece(n).len(), expected);
        }
    }

    #[test]
    fn elementary_zero_divisors_of_sphere() {
        let t = tensor::<Q>(&SimplicialComplex::boundary_sphere(2));
        let z = zero_divisor_set(&t, ZeroDivisorMode::Elementary);
        assert_eq!(z.len(), 1);
        assert_eq!(z.labels, vec!["ā₁"]);
        assert_eq!(t.format(&z.elements[0]), "-1⊗a1 + a1⊗1");
    }

    #[test]
    fn torus_degree_one_kernel_has_dimension_two() {
        let t = tensor::<F2>(&SimplicialComplex::torus7());
        let z = zero_divisor_set(&t, ZeroDivisorMode::FullKernel);
        assert_eq!(z.degrees.iter().filter(|&&d| d == 1).count(), 2);
        assert_eq!(z.degrees.iter().filter(|&&d| d == 0).count(), 0);
    }

    #[test]
    fn unit_is_multiplicative_identity() {
        let t = tensor::<Q>(&SimplicialComplex::torus7());
        let one = t.unit();
        for u in 0..t.len() {
            let e = SparseVec::unit(u);
            assert_eq!(t.mul(&one, &e), e);
            assert_eq!(t.mul(&e, &one), e);
        }
    }
}
