//! Boundary matrices, Betti numbers and cohomology bases with field coefficients.

use num_traits::Zero;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{reduce_columns, EchelonBasis, SparseMatrix, SparseVec};
use crate::scalar::Field;

/// `∂_d : C_d → C_{d-1}` for `d = 1..=dim`; rows and columns follow the
/// complex's coordinate order, signs come from the vertex order.
pub fn boundary_matrices<S: Field>(k: &SimplicialComplex) -> Vec<SparseMatrix<S>> {
    let Some(top) = k.dimension() else {
        return Vec::new();
    };
    (1..=top).map(|d| boundary_matrix(k, d)).collect()
}

pub fn boundary_matrix<S: Field>(k: &SimplicialComplex, d: usize) -> SparseMatrix<S> {
    assert!(d >= 1);
    let columns = k
        .simplices(d)
        .iter()
        .map(|s| {
            SparseVec::from_pairs(
                s.facets()
                    .enumerate()
                    .map(|(i, f)| {
                        let row = k.index_of(&f).expect("complex is downward closed");
                        (row, sign::<S>(i))
                    })
                    .collect(),
            )
        })
        .collect();
    SparseMatrix::new(k.count(d - 1), columns)
}

/// `δ^d : C^d → C^{d+1}`, the transpose of `∂_{d+1}`.
pub fn coboundary_matrix<S: Field>(k: &SimplicialComplex, d: usize) -> SparseMatrix<S> {
    if k.count(d + 1) == 0 {
        return SparseMatrix::new(0, vec![SparseVec::zero(); k.count(d)]);
    }
    boundary_matrix::<S>(k, d + 1).transpose()
}

pub(crate) fn sign<S: Field>(i: usize) -> S {
    if i.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

/// `b_d = dim ker ∂_d − rank ∂_{d+1}` for `d = 0..=dim`.
pub fn betti_numbers<S: Field>(k: &SimplicialComplex) -> Result<Vec<usize>> {
    let Some(top) = k.dimension() else {
        return Err(Error::EmptyComplex);
    };
    let ranks: Vec<usize> = boundary_matrices::<S>(k)
        .iter()
        .map(SparseMatrix::rank)
        .collect();
    // ranks[d-1] = rank ∂_d
    let rank = |d: usize| if d == 0 || d > top { 0 } else { ranks[d - 1] };
    Ok((0..=top)
        .map(|d| k.count(d) - rank(d) - rank(d + 1))
        .collect())
}

/// Representative cocycles for `H^d` in every degree plus the data to
/// express any cocycle in that basis.
#[derive(Clone, Debug)]
pub struct CochainBasis<S> {
    degrees: Vec<DegreeBasis<S>>,
}

#[derive(Clone, Debug)]
struct DegreeBasis<S> {
    simplex_count: usize,
    representatives: Vec<Vec<S>>,
    /// Coboundaries (untagged) followed by representatives (tagged by index).
    echelon: EchelonBasis<S>,
}

impl<S: Field> CochainBasis<S> {
    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    /// Betti number in degree `d` (zero above the top dimension).
    pub fn rank(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |b| b.representatives.len())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .map(|b| b.representatives.len())
            .collect()
    }

    pub fn representatives(&self, d: usize) -> &[Vec<S>] {
        self.degrees
            .get(d)
            .map_or(&[], |b| b.representatives.as_slice())
    }

    /// Coordinates of the class of `cocycle` in the representative basis.
    pub fn project(&self, d: usize, cocycle: &[S]) -> Result<Vec<S>> {
        let Some(b) = self.degrees.get(d) else {
            return if cocycle.iter().all(Zero::is_zero) {
                Ok(Vec::new())
            } else {
                Err(Error::CochainLength {
                    degree: d,
                    expected: 0,
                    got: cocycle.len(),
                })
            };
        };
        if cocycle.len() != b.simplex_count {
            return Err(Error::CochainLength {
                degree: d,
                expected: b.simplex_count,
                got: cocycle.len(),
            });
        }
        let (residual, coefficients) = b.echelon.reduce(&SparseVec::from_dense(cocycle));
        if !residual.is_zero() {
            return Err(Error::NotACocycle);
        }
        let mut out = vec![S::zero(); b.representatives.len()];
        for (tag, c) in coefficients {
            out[tag] = out[tag].clone() + c;
        }
        Ok(out)
    }
}

/// Cohomology basis of `k`. Degree-0 representatives are the indicator
/// functions of the connected components (the constant cochain when `k` is
/// connected); higher representatives are reduced against the coboundaries
/// so they are supported away from coboundary pivots.
pub fn cohomology_basis<S: Field>(k: &SimplicialComplex) -> Result<CochainBasis<S>> {
    let Some(top) = k.dimension() else {
        return Err(Error::EmptyComplex);
    };
    let mut degrees = Vec::with_capacity(top + 1);
    // image of δ^{d-1}, carried from the previous degree
    let mut coboundaries: Vec<SparseVec<S>> = Vec::new();
    for d in 0..=top {
        let delta = coboundary_matrix::<S>(k, d);
        let reduction = reduce_columns(&delta.columns, true);
        let mut echelon = EchelonBasis::new();
        for b in coboundaries.drain(..) {
            echelon.insert_reduced(b, None);
        }
        let mut representatives = Vec::new();
        let cocycles = if d == 0 {
            component_indicators(k)
        } else {
            reduction.kernel_basis()
        };
        for z in cocycles {
            let (mut r, _) = echelon.reduce(&z);
            if r.is_zero() {
                continue;
            }
            let lead = r.get(r.pivot().unwrap());
            r.scale(&lead.inverse().unwrap());
            representatives.push(r.to_dense(k.count(d)));
            echelon.insert_reduced(r, Some(representatives.len() - 1));
        }
        coboundaries = reduction.image_basis();
        degrees.push(DegreeBasis {
            simplex_count: k.count(d),
            representatives,
            echelon,
        });
    }
    Ok(CochainBasis { degrees })
}

fn component_indicators<S: Field>(k: &SimplicialComplex) -> Vec<SparseVec<S>> {
    let labels = k.component_labels();
    let n = labels.iter().max().map_or(0, |m| m + 1);
    (0..n)
        .map(|c| {
            SparseVec::from_pairs(
                labels
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| l == c)
                    .map(|(v, _)| (v, S::one()))
                    .collect(),
            )
        })
        .collect()
}

/// `δa` for a dense degree-`d` cochain.
pub fn coboundary<S: Field>(k: &SimplicialComplex, d: usize, cochain: &[S]) -> Vec<S> {
    let delta = coboundary_matrix::<S>(k, d);
    delta
        .mul_vec(&SparseVec::from_dense(cochain))
        .to_dense(k.count(d + 1))
}
