use proptest::prelude::*;

use tcbound::group::{
    orbit_complex, regularize, FiniteGroup, GroupAction, SubgroupCatalog, SubgroupMode,
};
use tcbound::homology::{betti_numbers, boundary_matrix, coboundary};
use tcbound::linalg::SparseVec;
use tcbound::ring::{
    cup_product_cochain, kunneth_tensor_ring, nilpotency_lower_bound, ring_structure,
    zero_divisor_set, Search, TensorRing, ZeroDivisorMode,
};
use tcbound::{Field, SimplicialComplex, F2, F3, Q};

/// A complex on `n` vertices from random faces, every vertex used.
fn complexes(max_vertices: usize, max_face: usize) -> impl Strategy<Value = SimplicialComplex> {
    (3..=max_vertices)
        .prop_flat_map(move |n| {
            let face = prop::collection::btree_set(0..n, 1..=max_face.min(n));
            (Just(n), prop::collection::vec(face, 1..7))
        })
        .prop_map(|(n, faces)| {
            let mut tops: Vec<Vec<usize>> =
                faces.into_iter().map(|f| f.into_iter().collect()).collect();
            tops.extend((0..n).map(|v| vec![v]));
            SimplicialComplex::from_maximal_simplices(n, &tops).unwrap()
        })
}

/// A random complex made invariant under a random involution by adding its image.
fn involution_complexes() -> impl Strategy<Value = (SimplicialComplex, Vec<usize>)> {
    (4..=7usize)
        .prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            let face = prop::collection::btree_set(0..n, 1..=3);
            (Just(n), perm, prop::collection::vec(face, 1..5), 0..=n / 2)
        })
        .prop_map(|(n, order, faces, swaps)| {
            let mut g: Vec<usize> = (0..n).collect();
            for i in 0..swaps {
                let (a, b) = (order[2 * i], order[2 * i + 1]);
                g.swap(a, b);
            }
            let mut tops: Vec<Vec<usize>> = Vec::new();
            for f in faces {
                let f: Vec<usize> = f.into_iter().collect();
                let mut image: Vec<usize> = f.iter().map(|&v| g[v]).collect();
                image.sort_unstable();
                tops.push(f);
                tops.push(image);
            }
            tops.extend((0..n).map(|v| vec![v]));
            (
                SimplicialComplex::from_maximal_simplices(n, &tops).unwrap(),
                g,
            )
        })
}

fn euler_from_betti(b: &[usize]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

fn cochain<S: Field>(seeds: &[i64], len: usize) -> Vec<S> {
    (0..len)
        .map(|i| S::from_i64(seeds[i % seeds.len()] + i as i64 % 3))
        .collect()
}

fn leibniz_holds<S: Field>(k: &SimplicialComplex, p: usize, q: usize, seeds: &[i64]) -> bool {
    let a = cochain::<S>(seeds, k.count(p));
    let b = cochain::<S>(&seeds[1..], k.count(q));
    let ab = cup_product_cochain(k, p, &a, q, &b).unwrap();
    let lhs = coboundary(k, p + q, &ab);
    let left = cup_product_cochain(k, p + 1, &coboundary(k, p, &a), q, &b).unwrap();
    let right = cup_product_cochain(k, p, &a, q + 1, &coboundary(k, q, &b)).unwrap();
    let sign = if p.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    };
    let rhs: Vec<S> = left
        .into_iter()
        .zip(right)
        .map(|(x, y)| x + sign.clone() * y)
        .collect();
    lhs == rhs
}

/// Longest nonzero ordered product, enumerating every ordered sequence.
fn brute_nil<S: Field>(t: &TensorRing<S>, z: &[SparseVec<S>], cap: usize) -> usize {
    let mut frontier: Vec<SparseVec<S>> = z.iter().filter(|v| !v.is_zero()).cloned().collect();
    let mut length = 0;
    while !frontier.is_empty() && length < cap {
        length += 1;
        frontier = frontier
            .iter()
            .flat_map(|p| z.iter().map(move |f| t.mul(p, f)))
            .filter(|v| !v.is_zero())
            .collect();
    }
    length
}

fn nil_matches<S: Field>(k: &SimplicialComplex) -> Result<(), TestCaseError> {
    let t = kunneth_tensor_ring(ring_structure::<S>(k).unwrap());
    let cap = 2 * k.dimension().unwrap();
    for mode in [ZeroDivisorMode::Elementary, ZeroDivisorMode::FullKernel] {
        let z = zero_divisor_set(&t, mode);
        for e in &z.elements {
            prop_assert!(t.cup(e).is_zero());
        }
        let c = nilpotency_lower_bound(&t, &z, cap.max(1), Search::Exhaustive).unwrap();
        prop_assert!(c.complete);
        prop_assert!(c.verify(|a, b| t.mul(a, b), &t.unit()));
        prop_assert_eq!(
            c.length,
            brute_nil(&t, &z.elements, cap.max(1)),
            "{:?} over {}",
            mode,
            S::spec()
        );
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_of_boundary_vanishes(k in complexes(7, 4)) {
        let dim = k.dimension().unwrap();
        for d in 1..dim {
            prop_assert!(boundary_matrix::<Q>(&k, d).mul(&boundary_matrix::<Q>(&k, d + 1)).is_zero());
            prop_assert!(boundary_matrix::<F2>(&k, d).mul(&boundary_matrix::<F2>(&k, d + 1)).is_zero());
        }
    }

    #[test]
    fn betti_numbers_match_euler_characteristic_and_components(k in complexes(7, 4)) {
        for b in [betti_numbers::<Q>(&k).unwrap(), betti_numbers::<F2>(&k).unwrap(), betti_numbers::<F3>(&k).unwrap()] {
            prop_assert_eq!(euler_from_betti(&b), k.euler_characteristic());
            prop_assert_eq!(b[0], k.connected_components());
        }
    }

    #[test]
    fn subdivision_preserves_betti_numbers(k in complexes(6, 3)) {
        let sd = k.barycentric_subdivision().complex;
        prop_assert_eq!(betti_numbers::<Q>(&sd).unwrap(), betti_numbers::<Q>(&k).unwrap());
        prop_assert_eq!(betti_numbers::<F2>(&sd).unwrap(), betti_numbers::<F2>(&k).unwrap());
    }

    #[test]
    fn cup_product_satisfies_leibniz(
        k in complexes(7, 4),
        p in 0usize..3,
        q in 0usize..3,
        seeds in prop::collection::vec(-5i64..5, 2..6),
    ) {
        let dim = k.dimension().unwrap();
        prop_assume!(p + q <= dim);
        prop_assert!(leibniz_holds::<Q>(&k, p, q, &seeds));
        prop_assert!(leibniz_holds::<F3>(&k, p, q, &seeds));
        prop_assert!(leibniz_holds::<F2>(&k, p, q, &seeds));
    }

    #[test]
    fn cohomology_ring_is_graded_commutative_and_associative(k in complexes(7, 4)) {
        let r = ring_structure::<Q>(&k).unwrap();
        let unit = r.unit();
        for i in 0..r.len() {
            let x = SparseVec::unit(i);
            prop_assert_eq!(r.mul(&unit, &x), x.clone());
            for j in 0..r.len() {
                let mut ji = r.structure_constant(j, i).clone();
                if r.degree(i) * r.degree(j) % 2 == 1 {
                    ji.scale(&Q::from_i64(-1));
                }
                prop_assert_eq!(r.structure_constant(i, j), &ji);
                for l in 0..r.len() {
                    let (y, z) = (SparseVec::unit(j), SparseVec::unit(l));
                    prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
                }
            }
        }
    }

    #[test]
    fn exhaustive_nil_search_agrees_with_brute_force(k in complexes(6, 3)) {
        prop_assume!(k.total_count() <= 50);
        nil_matches::<F2>(&k)?;
        nil_matches::<F3>(&k)?;
        nil_matches::<Q>(&k)?;
    }

    #[test]
    fn regularized_involutions(kg in involution_complexes()) {
        let (k, g) = kg;
        let group = FiniteGroup::closure(k.vertex_count(), &[g], 16).unwrap();
        let action = GroupAction::new(k.clone(), group).unwrap();
        let regular = regularize(action).unwrap();
        prop_assert!(regular.subdivisions() <= 2);
        prop_assert!(regular.action().fixed_point_violation().is_none());
        let rk = regular.complex();
        prop_assert_eq!(betti_numbers::<Q>(rk).unwrap(), betti_numbers::<Q>(&k).unwrap());

        let catalog = SubgroupCatalog::enumerate(regular.group(), SubgroupMode::All, 16).unwrap();
        let whole = catalog.get(catalog.whole_index());
        let fixed = regular.fixed_subcomplex(whole).unwrap();
        // the fixed set is exactly the full subcomplex on fixed vertices
        for (new, &old) in fixed.vertex_map.iter().enumerate() {
            prop_assert!(regular.isotropy(old).order() == whole.order(), "vertex {} ↦ {}", new, old);
        }
        // χ(X/G) = (χ(X) + χ(X^g)) / 2 for an involution g
        let q = orbit_complex(&regular).unwrap();
        let chi_fixed = if fixed.is_empty() { 0 } else { fixed.complex.euler_characteristic() };
        if whole.order() == 2 {
            prop_assert_eq!(2 * q.complex.euler_characteristic(), rk.euler_characteristic() + chi_fixed);
        } else {
            prop_assert_eq!(q.complex.euler_characteristic(), rk.euler_characteristic());
        }
    }
}
