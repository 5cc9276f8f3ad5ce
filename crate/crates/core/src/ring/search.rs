use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tensor::{
    kunneth_tensor_ring, zero_divisor_set, TensorRing, ZeroDivisorMode, ZeroDivisorSet,
};
use super::{ring_structure, CohomologyRing};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::scalar::{Field, FieldSpec};

/// Multiplications allowed in one exhaustive search before it gives up
/// and reports the best product found so far as incomplete.
const SEARCH_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Search {
    /// All products of basis elements with nondecreasing factor indices.
    #[default]
    Exhaustive,
    /// Products of random homogeneous linear combinations.
    Randomized { seed: u64, trials: usize },
}

/// A nonzero product of `length` factors.
#[derive(Clone, Debug)]
pub struct Certificate<S> {
    pub length: usize,
    pub factors: Vec<SparseVec<S>>,
    pub labels: Vec<String>,
    pub product: SparseVec<S>,
    /// False when the search budget ran out before the space was covered.
    pub complete: bool,
}

impl<S: Field> Certificate<S> {
    fn empty(unit: SparseVec<S>) -> Self {
        Certificate {
            length: 0,
            factors: Vec::new(),
            labels: Vec::new(),
            product: unit,
            complete: true,
        }
    }

    /// Re-multiplies the factors right to left and checks the product is
    /// nonzero and agrees with the recorded one.
    pub fn verify(
        &self,
        mul: impl Fn(&SparseVec<S>, &SparseVec<S>) -> SparseVec<S>,
        unit: &SparseVec<S>,
    ) -> bool {
        let p = self
            .factors
            .iter()
            .rev()
            .fold(unit.clone(), |acc, f| mul(f, &acc));
        !p.is_zero() && p == self.product && self.factors.len() == self.length
    }
}

struct Dfs<'a, S, M> {
    elements: &'a [SparseVec<S>],
    degrees: &'a [usize],
    top: usize,
    cap: usize,
    mul: M,
    budget: usize,
    path: Vec<usize>,
    best: (Vec<usize>, SparseVec<S>),
}

impl<S: Field, M: Fn(&SparseVec<S>, &SparseVec<S>) -> SparseVec<S>> Dfs<'_, S, M> {
    fn run(&mut self, start: usize, current: &SparseVec<S>, degree: usize) {
        for i in start..self.elements.len() {
            if self.best.0.len() == self.cap || self.budget == 0 {
                return;
            }
            let d = degree + self.degrees[i];
            if d > self.top {
                continue;
            }
            self.budget -= 1;
            let p = (self.mul)(current, &self.elements[i]);
            if p.is_zero() {
                continue;
            }
            self.path.push(i);
            if self.path.len() > self.best.0.len() {
                self.best = (self.path.clone(), p.clone());
            }
            if self.path.len() < self.cap {
                self.run(i, &p, d);
            }
            self.path.pop();
        }
    }
}

/// Longest nonzero product among `elements`, up to `cap` factors. Graded
/// commutativity makes factor order irrelevant up to sign, so only
/// nondecreasing index sequences are tried.
fn exhaustive<S: Field>(
    elements: &[SparseVec<S>],
    degrees: &[usize],
    top: usize,
    unit: SparseVec<S>,
    cap: usize,
    mul: impl Fn(&SparseVec<S>, &SparseVec<S>) -> SparseVec<S>,
) -> (Vec<usize>, SparseVec<S>, bool) {
    let mut dfs = Dfs {
        elements,
        degrees,
        top,
        cap,
        mul,
        budget: SEARCH_BUDGET,
        path: Vec::new(),
        best: (Vec::new(), unit.clone()),
    };
    dfs.run(0, &unit, 0);
    let complete = dfs.budget > 0 || dfs.best.0.len() == cap;
    (dfs.best.0, dfs.best.1, complete)
}

/// A lower bound for `nil` of the zero-divisor ideal: the longest nonzero
/// product of elements of `z` found within `depth_cap` factors.
pub fn nilpotency_lower_bound<S: Field>(
    t: &TensorRing<S>,
    z: &ZeroDivisorSet<S>,
    depth_cap: usize,
    search: Search,
) -> Result<Certificate<S>> {
    if depth_cap < 1 {
        return Err(Error::DepthCap);
    }
    let unit = t.unit();
    let mul = |a: &SparseVec<S>, b: &SparseVec<S>| t.mul(a, b);
    match search {
        Search::Exhaustive => {
            let (path, product, complete) = exhaustive(
                &z.elements,
                &z.degrees,
                t.top_degree(),
                unit,
                depth_cap,
                mul,
            );
            Ok(Certificate {
                length: path.len(),
                factors: path.iter().map(|&i| z.elements[i].clone()).collect(),
                labels: path.iter().map(|&i| z.labels[i].clone()).collect(),
                product,
                complete,
            })
        }
        Search::Randomized { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best = Certificate::empty(unit.clone());
            best.complete = false;
            let mut degrees: Vec<usize> = z.degrees.clone();
            degrees.sort_unstable();
            degrees.dedup();
            for _ in 0..trials {
                let mut current = unit.clone();
                let mut degree = 0;
                let mut factors = Vec::new();
                while factors.len() < depth_cap {
                    let options: Vec<usize> = degrees
                        .iter()
                        .copied()
                        .filter(|d| degree + d <= t.top_degree())
                        .collect();
                    if options.is_empty() {
                        break;
                    }
                    let d = options[rng.gen_range(0..options.len())];
                    let mut f = SparseVec::zero();
                    for (e, _) in z.elements.iter().zip(&z.degrees).filter(|(_, &g)| g == d) {
                        f.axpy(&S::from_i64(rng.gen_range(-2..=2)), e);
                    }
                    let p = t.mul(&current, &f);
                    if p.is_zero() {
                        break;
                    }
                    current = p;
                    degree += d;
                    factors.push(f);
                }
                if factors.len() > best.length {
                    best = Certificate {
                        length: factors.len(),
                        labels: factors.iter().map(|f| t.format(f)).collect(),
                        factors,
                        product: current,
                        complete: false,
                    };
                }
            }
            Ok(best)
        }
    }
}

/// Longest nonzero product of positive-degree basis classes.
pub fn reduced_cuplength<S: Field>(
    r: &CohomologyRing<S>,
    depth_cap: usize,
) -> Result<Certificate<S>> {
    if depth_cap < 1 {
        return Err(Error::DepthCap);
    }
    let positive: Vec<usize> = (r.classes(0).end..r.len()).collect();
    let elements: Vec<SparseVec<S>> = positive.iter().map(|&i| SparseVec::unit(i)).collect();
    let degrees: Vec<usize> = positive.iter().map(|&i| r.degree(i)).collect();
    let (path, product, complete) = exhaustive(
        &elements,
        &degrees,
        r.top_degree(),
        r.unit(),
        depth_cap,
        |a, b| r.mul(a, b),
    );
    Ok(Certificate {
        length: path.len(),
        factors: path.iter().map(|&i| elements[i].clone()).collect(),
        labels: path.iter().map(|&i| r.class_name(positive[i])).collect(),
        product,
        complete,
    })
}

/// Field-independent summary of the cohomological bounds of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingBounds {
    pub field: FieldSpec,
    pub betti: Vec<usize>,
    pub zero_divisor_length: usize,
    pub zero_divisor_certificate: Vec<String>,
    pub zero_divisor_mode: ZeroDivisorMode,
    pub cuplength: usize,
    pub cuplength_certificate: Vec<String>,
    pub complete: bool,
}

/// Zero-divisor nilpotency and reduced cup-length of `k` over one field.
///
/// Elementary zero divisors are searched first; the full kernel replaces
/// them only when it yields a strictly longer product. `depth_cap` defaults
/// to `2·dim k`.
pub fn ring_bounds(
    k: &SimplicialComplex,
    field: FieldSpec,
    depth_cap: Option<usize>,
    search: Search,
) -> Result<RingBounds> {
    crate::with_field!(field, S => ring_bounds_in::<S>(k, depth_cap, search)?)
}

fn ring_bounds_in<S: Field>(
    k: &SimplicialComplex,
    depth_cap: Option<usize>,
    search: Search,
) -> Result<RingBounds> {
    let dim = k.dimension().ok_or(Error::EmptyComplex)?;
    let cap = depth_cap
        .unwrap_or(2 * dim)
        .max(usize::from(depth_cap.is_none()));
    let ring = ring_structure::<S>(k)?;
    let cup = reduced_cuplength(&ring, dim.max(1))?;
    let t = kunneth_tensor_ring(ring);
    let mut best = None;
    for mode in [ZeroDivisorMode::Elementary, ZeroDivisorMode::FullKernel] {
        let z = zero_divisor_set(&t, mode);
        let c = nilpotency_lower_bound(&t, &z, cap, search)?;
        debug_assert!(c.length == 0 || c.verify(|a, b| t.mul(a, b), &t.unit()));
        if best
            .as_ref()
            .is_none_or(|(_, b): &(ZeroDivisorMode, Certificate<S>)| c.length > b.length)
        {
            best = Some((mode, c));
        }
    }
    let (mode, zd) = best.expect("two modes searched");
    Ok(RingBounds {
        field: S::spec(),
        betti: t.ring().betti(),
        zero_divisor_length: zd.length,
        zero_divisor_certificate: zd.labels,
        zero_divisor_mode: mode,
        cuplength: cup.length,
        cuplength_certificate: cup.labels,
        complete: zd.complete && cup.complete,
    })
}

/// [`ring_bounds`] over each field in turn.
pub fn sweep_ring_bounds(
    k: &SimplicialComplex,
    fields: &[FieldSpec],
    depth_cap: Option<usize>,
    search: Search,
) -> Result<Vec<RingBounds>> {
    fields
        .iter()
        .map(|&f| ring_bounds(k, f, depth_cap, search))
        .collect()
}
