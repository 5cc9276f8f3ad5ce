//! The example problems shipped with the tool.

use tcbound::engine::{Annotation, AssertedSide, AssociatedSpace, Problem, Value};
use tcbound::SimplicialComplex;

use crate::schema::ProblemFile;

pub fn names() -> Vec<String> {
    let mut out: Vec<String> = (1..=3).map(|n| format!("sphere-reflection-n{n}")).collect();
    out.extend((3..=8).map(|n| format!("ngon-rotation-{n}")));
    out.extend(["ngon-antipodal", "torus7", "klein-bound"].map(String::from));
    out
}

pub fn problem(name: &str) -> Option<Problem> {
    if let Some(n) = name.strip_prefix("sphere-reflection-n") {
        return match n.parse::<usize>() {
            Ok(n @ 1..=3) => Some(sphere_reflection(n)),
            _ => None,
        };
    }
    if let Some(n) = name.strip_prefix("ngon-rotation-") {
        return match n.parse::<usize>() {
            Ok(n @ 3..=8) => Some(ngon_rotation(n)),
            _ => None,
        };
    }
    match name {
        "ngon-antipodal" => Some(ngon_antipodal()),
        "torus7" => Some(Problem::new("torus7", SimplicialComplex::torus7(), vec![])),
        "klein-bound" => Some(klein_bound()),
        _ => None,
    }
}

pub fn file(name: &str) -> Option<ProblemFile> {
    problem(name).map(|p| ProblemFile::from_problem(&p))
}

/// `∂Δ^{n+1}` with vertices 0 and 1 swapped; the fixed set is an `S^{n-1}`.
fn sphere_reflection(n: usize) -> Problem {
    let k = SimplicialComplex::boundary_sphere(n);
    let mut g: Vec<usize> = (0..k.vertex_count()).collect();
    g.swap(0, 1);
    let p = Problem::new(format!("sphere-reflection-n{n}"), k, vec![g]);
    if n == 1 {
        return p;
    }
    p.assert(
        "cat_G(X)",
        AssertedSide::Equal,
        Value::Finite(2),
        "the open upper and lower caps, each enlarged past the equator, are invariant and deform equivariantly onto a point of the fixed equator",
    )
}

fn ngon_rotation(n: usize) -> Problem {
    let k = SimplicialComplex::cycle_complex(n).expect("n ≥ 3");
    let g = (0..n).map(|i| (i + 1) % n).collect();
    Problem::new(format!("ngon-rotation-{n}"), k, vec![g])
}

fn ngon_antipodal() -> Problem {
    let k = SimplicialComplex::cycle_complex(6).expect("hexagon");
    let g = (0..6).map(|i| (i + 3) % 6).collect();
    Problem::new("ngon-antipodal", k, vec![g])
        .annotate(Annotation::FreeAction)
        .annotate(Annotation::Metrizable)
}

/// The generalized Klein bottle `X_G = S¹ ×_{ℤ₂} S²` over the circle `S¹/ℤ₂`,
/// with the reflected sphere as fibre.
fn klein_bound() -> Problem {
    let fibre = sphere_reflection(2);
    let base = Problem::new(
        "circle",
        SimplicialComplex::cycle_complex(4).expect("square"),
        vec![],
    )
    .annotate(Annotation::TopologicalGroupHomomorphismAction);
    let mut p = Problem::new("klein-bound", fibre.complex, fibre.generators).assert(
        "TC_G(X)",
        AssertedSide::Equal,
        Value::Finite(3),
        "reflected spheres S^n with n ≥ 2 have TC_G = 3",
    );
    p.associated.push(AssociatedSpace {
        name: "X_G".to_string(),
        fiber: None,
        base: Box::new(base),
        justification: "the double cover S¹ → S¹ is a principal ℤ₂-bundle over a paracompact base"
            .to_string(),
    });
    p
}
