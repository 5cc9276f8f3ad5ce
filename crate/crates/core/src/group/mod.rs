//! Finite permutation groups acting simplicially on complexes.

mod action;
mod lattice;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::Simplex;
use crate::error::{Error, Result};

pub use action::{
    orbit_complex, regularize, GConnectivity, GroupAction, OrbitComplex, RegularAction,
    RegularityViolation,
};
pub use lattice::{subgroups, SubgroupCatalog, SubgroupMode};

/// Default cap on the order of a generated group.
pub const DEFAULT_GROUP_CAP: usize = 10_000;
/// Default cap on the order of a group whose subgroups are enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 256;

/// A permutation of `0..n` stored as its image array: `i ↦ self[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn new(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    /// `(self ∘ other)(v) = self(other(v))`
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn act(&self, s: &Simplex) -> Simplex {
        let mut v: Vec<usize> = s.vertices().iter().map(|&x| self.0[x]).collect();
        v.sort_unstable();
        Simplex::from_sorted(v)
    }

    pub fn fixes_pointwise(&self, s: &Simplex) -> bool {
        s.vertices().iter().all(|&x| self.0[x] == x)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite group of permutations of a vertex range.
///
/// Element `0` is the identity. Element order is fixed at construction and
/// preserved by [`FiniteGroup::transport`], so element indices (and hence
/// [`Subgroup`]s) stay valid across subdivisions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<usize>,
    index: HashMap<Perm, usize>,
}

impl FiniteGroup {
    /// Closure of `generators` under composition, in breadth-first order.
    pub fn closure(vertex_count: usize, generators: &[Vec<usize>], cap: usize) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for (index, g) in generators.iter().enumerate() {
            match Perm::new(g.clone()) {
                Some(p) if p.degree() == vertex_count => gens.push(p),
                _ => {
                    return Err(Error::NotBijective {
                        index,
                        vertex_count,
                    })
                }
            }
        }
        let identity = Perm::identity(vertex_count);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let h = g.compose(&elements[i]);
                if !index.contains_key(&h) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            degree: vertex_count,
            elements,
            generators,
            index,
        })
    }

    pub fn trivial(vertex_count: usize) -> Self {
        Self::closure(vertex_count, &[], 1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_indices(0..self.order())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_indices([0])
    }

    /// The same abstract group acting on the vertices of a subdivision:
    /// new vertex `v` stands for `provenance[v]`, and `g` sends it to the
    /// new vertex standing for `g · provenance[v]`.
    pub fn transport(&self, provenance: &[Simplex]) -> FiniteGroup {
        let position: HashMap<&Simplex, usize> =
            provenance.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let elements: Vec<Perm> = self
            .elements
            .iter()
            .map(|g| Perm(provenance.iter().map(|s| position[&g.act(s)]).collect()))
            .collect();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        FiniteGroup {
            degree: provenance.len(),
            elements,
            generators: self.generators.clone(),
            index,
        }
    }

    /// Smallest subgroup containing the given elements.
    pub fn generate(&self, elements: impl IntoIterator<Item = usize>) -> Subgroup {
        let gens: Vec<usize> = elements.into_iter().collect();
        let mut members: BTreeSet<usize> = BTreeSet::from([0]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.multiply(g, x);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_indices(members)
    }

    /// `g H g⁻¹`
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let gi = self.inverse(g);
        Subgroup::from_indices(
            h.elements()
                .iter()
                .map(|&x| self.multiply(self.multiply(g, x), gi)),
        )
    }
}

/// A subgroup, as a sorted set of element indices of its ambient [`FiniteGroup`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        Subgroup(set.into_iter().collect())
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == [0]
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|&g| other.contains(g))
    }

    /// Checks closure, identity and membership in `group`.
    pub fn is_valid_in(&self, group: &FiniteGroup) -> bool {
        self.contains(0)
            && self.0.iter().all(|&g| g < group.order())
            && self
                .0
                .iter()
                .all(|&a| self.0.iter().all(|&b| self.contains(group.multiply(a, b))))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.0)
    }
}
