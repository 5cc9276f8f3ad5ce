//! Finite abstract simplicial complexes.
//!
//! Simplices are stored with their vertices in increasing order. That single
//! global order fixes every boundary sign and the front/back face split of
//! the cup product, so no other orientation data is kept anywhere.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty strictly increasing vertex tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the input; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySimplex);
        }
        let original = vertices.clone();
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex {
                simplex: original,
                vertex: w[0],
            });
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The codimension-one face omitting the `i`-th vertex.
    pub fn facet(&self, i: usize) -> Option<Simplex> {
        if self.0.len() < 2 {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(i);
        Some(Simplex(v))
    }

    /// Codimension-one faces in the order `d_0, d_1, ...` of the boundary formula.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..if self.0.len() < 2 { 0 } else { self.0.len() }).map(move |i| self.facet(i).unwrap())
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A downward-closed family of simplices on the vertex range `0..vertex_count`.
///
/// Within each dimension simplices are kept in lexicographic order; the
/// position of a simplex in that list is its cochain coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    vertex_count: usize,
    by_dim: Vec<Vec<Simplex>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertex_count", &self.vertex_count)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl SimplicialComplex {
    /// Downward closure of the given simplices.
    pub fn from_maximal_simplices(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        if maximal.is_empty() {
            return Err(Error::NoSimplices);
        }
        let mut tops = Vec::with_capacity(maximal.len());
        for tuple in maximal {
            let s = Simplex::new(tuple.clone())?;
            if let Some(&v) = s.vertices().iter().find(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count,
                });
            }
            tops.push(s);
        }
        let complex = Self::closure(vertex_count, tops);
        let used = complex.by_dim.first().map_or(0, Vec::len);
        if used != vertex_count {
            let present: BTreeSet<usize> =
                complex.by_dim[0].iter().map(|s| s.vertices()[0]).collect();
            let vertex = (0..vertex_count).find(|v| !present.contains(v)).unwrap();
            return Err(Error::UnusedVertex { vertex });
        }
        Ok(complex)
    }

    /// The complex with no simplices.
    pub fn empty() -> Self {
        SimplicialComplex {
            vertex_count: 0,
            by_dim: Vec::new(),
        }
    }

    pub(crate) fn closure(vertex_count: usize, tops: impl IntoIterator<Item = Simplex>) -> Self {
        let mut layers: Vec<BTreeSet<Simplex>> = Vec::new();
        let mut frontier: Vec<Simplex> = tops.into_iter().collect();
        while let Some(s) = frontier.pop() {
            let d = s.dim();
            if layers.len() <= d {
                layers.resize_with(d + 1, BTreeSet::new);
            }
            if layers[d].contains(&s) {
                continue;
            }
            frontier.extend(s.facets());
            layers[d].insert(s);
        }
        SimplicialComplex {
            vertex_count,
            by_dim: layers
                .into_iter()
                .map(|l| l.into_iter().collect())
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Simplices of dimension `d` in coordinate order (empty above the top dimension).
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    /// All simplices ordered by dimension, then lexicographically.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.by_dim.iter().flatten()
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn total_count(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Coordinate of `s` among the simplices of its dimension.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.by_dim.get(s.dim())?.binary_search(s).ok()
    }

    pub fn index_of_vertices(&self, vertices: &[usize]) -> Option<usize> {
        if vertices.is_empty() {
            return None;
        }
        self.by_dim
            .get(vertices.len() - 1)?
            .binary_search_by(|s| s.vertices().cmp(vertices))
            .ok()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Simplices not properly contained in another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        for d in (0..self.by_dim.len()).rev() {
            for s in &self.by_dim[d] {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
            }
            if d > 0 {
                for s in &self.by_dim[d] {
                    for f in s.facets() {
                        if let Some(i) = self.index_of(&f) {
                            covered.insert(&self.by_dim[d - 1][i]);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, l)| {
                if d % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// Component label per vertex, labels numbered in order of first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in self.simplices(1) {
            uf.union(e.vertices()[0], e.vertices()[1]);
        }
        let mut root_label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        (0..self.vertex_count)
            .map(|v| {
                let r = uf.find(v);
                if root_label[r] == usize::MAX {
                    root_label[r] = next;
                    next += 1;
                }
                root_label[r]
            })
            .collect()
    }

    pub fn connected_components(&self) -> usize {
        self.component_labels()
            .into_iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components() == 1
    }

    /// First barycentric subdivision.
    ///
    /// New vertex `i` is the barycenter of `provenance[i]`, a simplex of `self`;
    /// new vertices are numbered in the (dimension, lexicographic) order of
    /// the simplices they came from.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let provenance: Vec<Simplex> = self.all_simplices().cloned().collect();
        let offsets: Vec<usize> = self
            .by_dim
            .iter()
            .scan(0, |acc, l| {
                let o = *acc;
                *acc += l.len();
                Some(o)
            })
            .collect();
        let new_index = |s: &Simplex| offsets[s.dim()] + self.index_of(s).unwrap();

        let mut chains = Vec::new();
        for top in self.maximal_simplices() {
            let verts = top.vertices().to_vec();
            for order in permutations(verts.len()) {
                let mut prefix = Vec::with_capacity(verts.len());
                let mut chain = Vec::with_capacity(verts.len());
                for &k in &order {
                    prefix.push(verts[k]);
                    let mut face = prefix.clone();
                    face.sort_unstable();
                    chain.push(new_index(&Simplex::from_sorted(face)));
                }
                chain.sort_unstable();
                chains.push(Simplex::from_sorted(chain));
            }
        }
        Subdivision {
            complex: Self::closure(provenance.len(), chains),
            provenance,
        }
    }

    /// All simplices whose vertices lie in `keep`, re-indexed contiguously.
    pub fn full_subcomplex(&self, keep: &BTreeSet<usize>) -> Subcomplex {
        let vertex_map: Vec<usize> = keep
            .iter()
            .copied()
            .filter(|&v| v < self.vertex_count)
            .collect();
        let mut old_to_new = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertex_map.iter().enumerate() {
            old_to_new[v] = i;
        }
        let by_dim: Vec<Vec<Simplex>> = self
            .by_dim
            .iter()
            .map(|layer| {
                let mut l: Vec<Simplex> = layer
                    .iter()
                    .filter(|s| s.vertices().iter().all(|&v| old_to_new[v] != usize::MAX))
                    .map(|s| {
                        Simplex::from_sorted(s.vertices().iter().map(|&v| old_to_new[v]).collect())
                    })
                    .collect();
                l.sort();
                l
            })
            .take_while(|l| !l.is_empty())
            .collect();
        Subcomplex {
            complex: SimplicialComplex {
                vertex_count: vertex_map.len(),
                by_dim,
            },
            vertex_map,
        }
    }

    /// Boundary of the standard `(n+1)`-simplex, a triangulated `n`-sphere.
    pub fn boundary_sphere(n: usize) -> Self {
        let verts: Vec<usize> = (0..n + 2).collect();
        let tops = (0..n + 2).map(|skip| {
            Simplex::from_sorted(verts.iter().copied().filter(|&v| v != skip).collect())
        });
        Self::closure(n + 2, tops)
    }

    /// The full `n`-simplex.
    pub fn full_simplex(n: usize) -> Self {
        Self::closure(n + 1, [Simplex::from_sorted((0..=n).collect())])
    }

    /// The `m`-gon, a triangulated circle.
    pub fn cycle_complex(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::CycleTooSmall(m));
        }
        let edges = (0..m).map(|i| {
            let (a, b) = (i, (i + 1) % m);
            Simplex::from_sorted(vec![a.min(b), a.max(b)])
        });
        Ok(Self::closure(m, edges))
    }

    /// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
    pub fn torus7() -> Self {
        let mut tops = Vec::new();
        for i in 0..7 {
            for [a, b] in [[1, 3], [2, 3]] {
                let mut t = vec![i, (i + a) % 7, (i + b) % 7];
                t.sort_unstable();
                tops.push(Simplex::from_sorted(t));
            }
        }
        Self::closure(7, tops)
    }
}

/// Result of [`SimplicialComplex::barycentric_subdivision`].
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// `provenance[v]` is the simplex of the original complex whose barycenter is `v`.
    pub provenance: Vec<Simplex>,
}

/// Result of [`SimplicialComplex::full_subcomplex`].
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub complex: SimplicialComplex,
    /// `vertex_map[new] = old`.
    pub vertex_map: Vec<usize>,
}

impl Subcomplex {
    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All orderings of `0..n` (Heap's algorithm).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}
