use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{FiniteGroup, Subgroup, SubgroupCatalog};
use crate::complex::{Simplex, SimplicialComplex, Subcomplex};
use crate::error::{Error, Result};

/// A finite group acting simplicially on a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    complex: SimplicialComplex,
    group: FiniteGroup,
}

/// A simplex witnessing that an action is not yet regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityViolation {
    pub element: usize,
    pub simplex: Simplex,
}

impl GroupAction {
    /// Checks that every element maps every simplex to a simplex.
    pub fn new(complex: SimplicialComplex, group: FiniteGroup) -> Result<Self> {
        if group.degree() != complex.vertex_count() {
            return Err(Error::NotBijective {
                index: 0,
                vertex_count: complex.vertex_count(),
            });
        }
        let tops = complex.maximal_simplices();
        for g in group.elements() {
            for s in &tops {
                let image = g.act(s);
                if !complex.contains(&image) {
                    return Err(Error::NotSimplicial {
                        element: g.images().to_vec(),
                        simplex: s.vertices().to_vec(),
                        image: image.vertices().to_vec(),
                    });
                }
            }
        }
        Ok(GroupAction { complex, group })
    }

    pub fn trivial(complex: SimplicialComplex) -> Self {
        let group = FiniteGroup::trivial(complex.vertex_count());
        GroupAction { complex, group }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// The action transported to the barycentric subdivision.
    pub fn subdivide(&self) -> GroupAction {
        let sd = self.complex.barycentric_subdivision();
        GroupAction {
            group: self.group.transport(&sd.provenance),
            complex: sd.complex,
        }
    }

    /// Stabilizer of vertex `v`.
    pub fn isotropy(&self, v: usize) -> Subgroup {
        Subgroup::from_indices(
            (0..self.group.order()).filter(|&g| self.group.element(g).apply(v) == v),
        )
    }

    /// Orbit label of each vertex, labels numbered by smallest member.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let n = self.complex.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if label[v] != usize::MAX {
                continue;
            }
            for g in self.group.elements() {
                label[g.apply(v)] = next;
            }
            next += 1;
        }
        label
    }

    /// An element fixing a simplex setwise but not pointwise, if any.
    pub fn fixed_point_violation(&self) -> Option<RegularityViolation> {
        for (gi, g) in self.group.elements().iter().enumerate().skip(1) {
            for s in self.complex.all_simplices() {
                if s.dim() > 0 && g.act(s) == *s && !g.fixes_pointwise(s) {
                    return Some(RegularityViolation {
                        element: gi,
                        simplex: s.clone(),
                    });
                }
            }
        }
        None
    }

    /// Checks the conditions under which vertex orbits triangulate `|K|/G`:
    /// the vertices of each simplex lie in distinct orbits, and simplices
    /// with the same set of vertex orbits lie in a single simplex orbit.
    pub fn quotient_violation(&self) -> Option<RegularityViolation> {
        let orbit = self.vertex_orbits();
        let mut buckets: BTreeMap<Vec<usize>, Vec<&Simplex>> = BTreeMap::new();
        for s in self.complex.all_simplices() {
            let mut key: Vec<usize> = s.vertices().iter().map(|&v| orbit[v]).collect();
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                let element = (0..self.group.order())
                    .find(|&g| {
                        let p = self.group.element(g);
                        s.vertices()
                            .iter()
                            .any(|&v| p.apply(v) != v && s.contains(p.apply(v)))
                    })
                    .unwrap_or(0);
                return Some(RegularityViolation {
                    element,
                    simplex: s.clone(),
                });
            }
            buckets.entry(key).or_default().push(s);
        }
        for bucket in buckets.values().filter(|b| b.len() > 1) {
            let images: HashSet<Simplex> = self
                .group
                .elements()
                .iter()
                .map(|g| g.act(bucket[0]))
                .collect();
            if let Some(s) = bucket.iter().find(|s| !images.contains(**s)) {
                return Some(RegularityViolation {
                    element: 0,
                    simplex: (*s).clone(),
                });
            }
        }
        None
    }
}

/// A group action in which any element fixing a simplex setwise fixes it
/// pointwise. Fixed-point sets of such actions are full subcomplexes.
#[derive(Clone, Debug)]
pub struct RegularAction {
    action: GroupAction,
    subdivisions: usize,
    original_dimension: Option<usize>,
}

/// Subdivides at most twice until the fixed-point regularity condition holds.
pub fn regularize(action: GroupAction) -> Result<RegularAction> {
    const MAX_SUBDIVISIONS: usize = 2;
    let original_dimension = action.complex.dimension();
    let mut current = action;
    for subdivisions in 0..=MAX_SUBDIVISIONS {
        if current.fixed_point_violation().is_none() {
            return Ok(RegularAction {
                action: current,
                subdivisions,
                original_dimension,
            });
        }
        if subdivisions < MAX_SUBDIVISIONS {
            current = current.subdivide();
        }
    }
    Err(Error::RegularizationFailed(MAX_SUBDIVISIONS))
}

/// Connectivity of the fixed sets `X^H` over a subgroup catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GConnectivity {
    pub connected: bool,
    /// First catalog entry whose fixed set is disconnected, with its component count.
    pub witness: Option<(usize, usize)>,
    /// Catalog entries with empty fixed set; these count as connected.
    pub empty_fixed_sets: Vec<usize>,
    /// Component count of each fixed set, in catalog order.
    pub components: Vec<usize>,
}

impl RegularAction {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.action.complex
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.action.group
    }

    /// Number of barycentric subdivisions applied by [`regularize`].
    pub fn subdivisions(&self) -> usize {
        self.subdivisions
    }

    /// Dimension of the complex before any subdivision.
    pub fn original_dimension(&self) -> Option<usize> {
        self.original_dimension
    }

    pub fn fixed_vertices(&self, h: &Subgroup) -> BTreeSet<usize> {
        let g = self.group();
        (0..self.complex().vertex_count())
            .filter(|&v| h.elements().iter().all(|&x| g.element(x).apply(v) == v))
            .collect()
    }

    /// `X^H` as the full subcomplex on the vertices fixed by all of `H`.
    pub fn fixed_subcomplex(&self, h: &Subgroup) -> Result<Subcomplex> {
        if h.elements().iter().any(|&x| x >= self.group().order()) {
            return Err(Error::ForeignSubgroup);
        }
        Ok(self.complex().full_subcomplex(&self.fixed_vertices(h)))
    }

    pub fn isotropy(&self, v: usize) -> Subgroup {
        self.action.isotropy(v)
    }

    /// The distinct isotropy subgroups occurring at vertices, in order of
    /// first occurrence.
    pub fn occurring_isotropy_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = HashSet::new();
        (0..self.complex().vertex_count())
            .map(|v| self.isotropy(v))
            .filter(|h| seen.insert(h.clone()))
            .collect()
    }

    /// Whether `X^G` is nonempty.
    pub fn has_fixed_vertex(&self) -> bool {
        !self.fixed_vertices(&self.group().whole()).is_empty()
    }

    /// Whether every vertex (hence every point) has trivial isotropy.
    pub fn is_free(&self) -> bool {
        (0..self.complex().vertex_count()).all(|v| self.isotropy(v).is_trivial())
    }

    /// Path-connectivity of every `X^H` for `H` in the catalog; empty fixed
    /// sets count as connected and are listed separately.
    pub fn is_g_connected(&self, catalog: &SubgroupCatalog) -> Result<GConnectivity> {
        let mut components = Vec::with_capacity(catalog.len());
        let mut witness = None;
        let mut empty_fixed_sets = Vec::new();
        for (i, h) in catalog.entries().iter().enumerate() {
            let fixed = self.fixed_subcomplex(h)?;
            let c = fixed.complex.connected_components();
            if c == 0 {
                empty_fixed_sets.push(i);
            }
            if c > 1 && witness.is_none() {
                witness = Some((i, c));
            }
            components.push(c);
        }
        Ok(GConnectivity {
            connected: witness.is_none(),
            witness,
            empty_fixed_sets,
            components,
        })
    }
}

/// The simplicial quotient `X/G`.
#[derive(Clone, Debug)]
pub struct OrbitComplex {
    pub complex: SimplicialComplex,
    /// Orbit of each vertex of the (possibly further subdivided) action.
    pub vertex_orbit: Vec<usize>,
    /// Subdivisions applied on top of the regular action.
    pub extra_subdivisions: usize,
}

/// Quotient complex with orbits of vertices as vertices. Subdivides the
/// action (at most twice more) until orbits triangulate the orbit space.
pub fn orbit_complex(regular: &RegularAction) -> Result<OrbitComplex> {
    const MAX_EXTRA: usize = 2;
    let mut current = regular.action.clone();
    let mut extra = 0;
    while current.quotient_violation().is_some() {
        if extra == MAX_EXTRA {
            return Err(Error::RegularizationFailed(regular.subdivisions + extra));
        }
        current = current.subdivide();
        extra += 1;
    }
    let orbit = current.vertex_orbits();
    let orbit_count = orbit.iter().max().map_or(0, |m| m + 1);
    let tops = current.complex.maximal_simplices().into_iter().map(|s| {
        let mut v: Vec<usize> = s.vertices().iter().map(|&x| orbit[x]).collect();
        v.sort_unstable();
        Simplex::from_sorted(v)
    });
    Ok(OrbitComplex {
        complex: SimplicialComplex::closure(orbit_count, tops),
        vertex_orbit: orbit,
        extra_subdivisions: extra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{SubgroupMode, DEFAULT_GROUP_CAP, DEFAULT_SUBGROUP_CAP};
    use crate::homology::betti_numbers;
    use crate::scalar::Fp;

    type F2 = Fp<2>;

    fn act(k: SimplicialComplex, gens: &[Vec<usize>]) -> Result<GroupAction> {
        let g = FiniteGroup::closure(k.vertex_count(), gens, DEFAULT_GROUP_CAP)?;
        GroupAction::new(k, g)
    }

    fn rotation(n: usize, step: usize) -> Vec<usize> {
        (0..n).map(|i| (i + step) % n).collect()
    }

    #[test]
    fn validate_action_examples() {
        let sq = SimplicialComplex::cycle_complex(4).unwrap();
        assert!(act(sq.clone(), &[rotation(4, 1)]).is_ok());
        let err = act(sq, &[vec![1, 0, 2, 3]]).unwrap_err();
        assert!(matches!(err, Error::NotSimplicial { .. }), "{err:?}");
        let s2 = SimplicialComplex::boundary_sphere(2);
        assert!(act(s2, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).is_ok());
    }

    #[test]
    fn square_swap_error_names_edge() {
        let sq = SimplicialComplex::cycle_complex(4).unwrap();
        match act(sq, &[vec![1, 0, 2, 3]]).unwrap_err() {
            Error::NotSimplicial { simplex, image, .. } => {
                // the swap sends the edges {0,3} and {1,2} to non-edges
                let bad = [(vec![0, 3], vec![1, 3]), (vec![1, 2], vec![0, 2])];
                assert!(bad.contains(&(simplex, image)));
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn reflection_of_two_sphere_regularizes_with_circle_fixed_set() {
        let a = act(SimplicialComplex::boundary_sphere(2), &[vec![1, 0, 2, 3]]).unwrap();
        assert!(a.fixed_point_violation().is_some());
        let r = regularize(a).unwrap();
        assert!(r.subdivisions() <= 2);
        assert!(r.action().fixed_point_violation().is_none());
        let fixed = r.fixed_subcomplex(&r.group().whole()).unwrap();
        assert_eq!(betti_numbers::<F2>(&fixed.complex).unwrap(), vec![1, 1]);
    }

    #[test]
    fn free_rotation_is_already_regular() {
        let r = regularize(
            act(
                SimplicialComplex::cycle_complex(4).unwrap(),
                &[rotation(4, 1)],
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(r.subdivisions(), 0);
        assert!(r.is_free());
        assert!(r.fixed_subcomplex(&r.group().whole()).unwrap().is_empty());
        for v in 0..4 {
            assert!(r.isotropy(v).is_trivial());
        }
    }

    #[test]
    fn trivial_group_is_regular_and_fixes_everything() {
        let k = SimplicialComplex::torus7();
        let r = regularize(GroupAction::trivial(k.clone())).unwrap();
        assert_eq!(r.subdivisions(), 0);
        assert_eq!(
            r.fixed_subcomplex(&r.group().trivial_subgroup())
                .unwrap()
                .complex,
            k
        );
        assert!(r.isotropy(3).elements() == [0]);
        assert!(r.has_fixed_vertex());
    }

    #[test]
    fn isotropy_of_reflection() {
        let r =
            regularize(act(SimplicialComplex::boundary_sphere(2), &[vec![1, 0, 2, 3]]).unwrap())
                .unwrap();
        // vertex for the old vertex 2 is fixed by the swap
        assert_eq!(r.isotropy(2).order(), 2);
        assert_eq!(r.isotropy(0).order(), 1);
        assert_eq!(r.occurring_isotropy_subgroups().len(), 2);
    }

    #[test]
    fn g_connectivity_of_reflections() {
        // square model of S^1 reflected across the diagonal through 0 and 2
        let sq = act(
            SimplicialComplex::cycle_complex(4).unwrap(),
            &[vec![0, 3, 2, 1]],
        )
        .unwrap();
        let r = regularize(sq).unwrap();
        let cat = SubgroupCatalog::enumerate(
            r.group(),
            SubgroupMode::UpToConjugacy,
            DEFAULT_SUBGROUP_CAP,
        )
        .unwrap();
        let gc = r.is_g_connected(&cat).unwrap();
        assert!(!gc.connected);
        assert_eq!(gc.witness, Some((1, 2)));

        let s2 =
            regularize(act(SimplicialComplex::boundary_sphere(2), &[vec![1, 0, 2, 3]]).unwrap())
                .unwrap();
        let cat = SubgroupCatalog::enumerate(
            s2.group(),
            SubgroupMode::UpToConjugacy,
            DEFAULT_SUBGROUP_CAP,
        )
        .unwrap();
        assert!(s2.is_g_connected(&cat).unwrap().connected);

        let t = regularize(GroupAction::trivial(SimplicialComplex::torus7())).unwrap();
        let cat = SubgroupCatalog::enumerate(
            t.group(),
            SubgroupMode::UpToConjugacy,
            DEFAULT_SUBGROUP_CAP,
        )
        .unwrap();
        assert!(t.is_g_connected(&cat).unwrap().connected);
    }

    #[test]
    fn empty_fixed_sets_count_as_connected() {
        let r = regularize(
            act(
                SimplicialComplex::cycle_complex(4).unwrap(),
                &[rotation(4, 1)],
            )
            .unwrap(),
        )
        .unwrap();
        let cat =
            SubgroupCatalog::enumerate(r.group(), SubgroupMode::All, DEFAULT_SUBGROUP_CAP).unwrap();
        let gc = r.is_g_connected(&cat).unwrap();
        assert!(gc.connected);
        assert_eq!(gc.empty_fixed_sets, vec![1, 2]);
    }

    #[test]
    fn orbit_complexes() {
        let hex = || SimplicialComplex::cycle_complex(6).unwrap();
        let antipodal = regularize(act(hex(), &[rotation(6, 3)]).unwrap()).unwrap();
        let q = orbit_complex(&antipodal).unwrap();
        assert_eq!(q.extra_subdivisions, 0);
        assert_eq!(q.complex, SimplicialComplex::boundary_sphere(1));

        let rot = regularize(act(hex(), &[rotation(6, 1)]).unwrap()).unwrap();
        let q = orbit_complex(&rot).unwrap();
        assert_eq!(betti_numbers::<F2>(&q.complex).unwrap(), vec![1, 1]);

        let triv = regularize(GroupAction::trivial(hex())).unwrap();
        assert_eq!(orbit_complex(&triv).unwrap().complex, hex());
    }

    #[test]
    fn free_orbit_vertex_count() {
        let rot = regularize(
            act(
                SimplicialComplex::cycle_complex(8).unwrap(),
                &[rotation(8, 2)],
            )
            .unwrap(),
        )
        .unwrap();
        let q = orbit_complex(&rot).unwrap();
        let vertices_upstairs = q.vertex_orbit.len();
        assert_eq!(
            q.complex.vertex_count() * rot.group().order(),
            vertices_upstairs
        );
    }
}
