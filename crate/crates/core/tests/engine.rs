use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tcbound::engine::{
    analyze, Acting, Analysis, Annotation, AssertedSide, AssociatedSpace, Config, Problem,
    Quantity, Rule, Space, Step, Value,
};
use tcbound::{Error, SimplicialComplex};

fn swap01(n: usize) -> Vec<usize> {
    let mut g: Vec<usize> = (0..n).collect();
    g.swap(0, 1);
    g
}

fn reflection(n: usize) -> Problem {
    let k = SimplicialComplex::boundary_sphere(n);
    let v = k.vertex_count();
    Problem::new(format!("sphere-reflection-n{n}"), k, vec![swap01(v)])
}

fn with_cat_g(p: Problem) -> Problem {
    p.assert(
        "cat_G(X)",
        AssertedSide::Equal,
        Value::Finite(2),
        "two G-categorical open sets",
    )
}

fn main_interval(a: &Analysis) -> (Value, Value) {
    a.facts.interval(&a.main_quantity())
}

const F: fn(u64) -> Value = Value::Finite;

#[test]
fn spheres_with_trivial_group() {
    for (n, lower) in [(1, 2), (2, 3), (3, 2), (4, 3)] {
        let p = Problem::new("sphere", SimplicialComplex::boundary_sphere(n), vec![]);
        let a = analyze(&p, &Config::default()).unwrap();
        assert_eq!(
            main_interval(&a),
            (F(lower), F(2 * n as u64 + 1)),
            "n = {n}"
        );
        assert_eq!(a.headline(), vec![format!("TC ∈ [{lower},{}]", 2 * n + 1)]);
        let cat = Quantity::cat(0, Space::Base, Acting::Trivial);
        assert_eq!(a.facts.interval(&cat), (F(2), F(n as u64 + 1)));
    }
}

#[test]
fn reflected_circle_is_infinite() {
    let a = analyze(&reflection(1), &Config::default()).unwrap();
    assert_eq!(main_interval(&a).0, Value::Infinite);
    assert_eq!(a.headline(), vec!["TC_G = ∞"]);
    let ctx = &a.contexts[0];
    assert_eq!(ctx.connectivity.witness, Some((1, 2)));
    let best = a.facts.best_lower(&a.main_quantity()).unwrap();
    assert_eq!(best.rule, Rule::R9);
}

#[test]
fn reflected_spheres_close_with_assertion() {
    for n in [2, 3] {
        let a = analyze(&with_cat_g(reflection(n)), &Config::default()).unwrap();
        assert_eq!(main_interval(&a), (F(3), F(3)), "n = {n}");
        assert_eq!(a.headline(), vec!["TC_G ∈ [3,3]"]);
        let b = analyze(&reflection(n), &Config::default()).unwrap();
        assert_eq!(main_interval(&b), (F(3), Value::Infinite), "n = {n}");
        assert_eq!(b.headline(), vec!["TC_G ≥ 3"]);
    }
}

#[test]
fn reflection_fixed_sets_are_equators() {
    for n in [2, 3] {
        let a = analyze(&reflection(n), &Config::default()).unwrap();
        let fixed = a.contexts[0].fixed[1].as_ref().unwrap();
        let mut expected = vec![0; n];
        expected[0] = 1;
        expected[n - 1] += 1;
        assert_eq!(fixed.betti.as_ref().unwrap(), &expected);
    }
}

#[test]
fn free_antipodal_hexagon() {
    let hex = SimplicialComplex::cycle_complex(6).unwrap();
    let p = Problem::new("ngon-antipodal", hex, vec![vec![3, 4, 5, 0, 1, 2]])
        .annotate(Annotation::FreeAction)
        .annotate(Annotation::Metrizable);
    let a = analyze(&p, &Config::default()).unwrap();
    let cat_g = Quantity::cat(0, Space::Base, Acting::Subgroup(1));
    assert_eq!(a.facts.interval(&cat_g), (F(2), F(2)));
    let up = a.facts.best_upper(&cat_g).unwrap();
    assert_eq!(up.rule, Rule::R6);
}

#[test]
fn false_free_annotation_is_rejected() {
    let p = reflection(2).annotate(Annotation::FreeAction);
    assert!(matches!(
        analyze(&p, &Config::default()),
        Err(Error::InvalidAnnotation(_))
    ));
}

#[test]
fn klein_bottle_bound() {
    let base = Problem::new(
        "circle",
        SimplicialComplex::cycle_complex(4).unwrap(),
        vec![],
    )
    .annotate(Annotation::TopologicalGroupHomomorphismAction);
    let mut p = reflection(2).assert("TC_G(X)", AssertedSide::Equal, F(3), "reflected spheres");
    p.associated.push(AssociatedSpace {
        name: "X_G".into(),
        fiber: None,
        base: Box::new(base),
        justification: "antipodal double cover of the circle".into(),
    });
    let a = analyze(&p, &Config::default()).unwrap();
    assert_eq!(a.headline()[1], "TC(X_G) ≤ 6");
    let q = Quantity::tc(0, Space::Associated(0), Acting::Trivial);
    assert_eq!(a.facts.best_upper(&q).unwrap().rule, Rule::R18);
    let circle = Quantity::tc(1, Space::Base, Acting::Trivial);
    assert_eq!(a.facts.interval(&circle), (F(2), F(2)));
}

#[test]
fn torus_category_closes() {
    let p = Problem::new("torus7", SimplicialComplex::torus7(), vec![]);
    let a = analyze(&p, &Config::default()).unwrap();
    let cat = Quantity::cat(0, Space::Base, Acting::Trivial);
    assert_eq!(a.facts.interval(&cat), (F(3), F(3)));
    assert!(a.facts.lower(&a.main_quantity()) >= F(3));
    // trivial group: only non-equivariant quantities
    assert!(a.facts.quantities().all(|q| q.group == Acting::Trivial));
}

#[test]
fn inconsistent_assertion_is_reported() {
    let p = Problem::new("s2", SimplicialComplex::boundary_sphere(2), vec![]).assert(
        "cat(X)",
        AssertedSide::Upper,
        F(1),
        "wrong on purpose",
    );
    let a = analyze(&p, &Config::default()).unwrap();
    assert!(!a.facts.is_consistent());
    let clash = a.facts.inconsistencies()[0];
    assert_eq!(a.facts.bound(clash.lower).rule, Rule::R2);
    assert_eq!(a.facts.bound(clash.upper).rule, Rule::Asserted);
}

#[test]
fn unknown_assertion_quantity() {
    let p = reflection(2).assert("TC_K(Y)", AssertedSide::Lower, F(2), "");
    assert_eq!(
        analyze(&p, &Config::default()).unwrap_err(),
        Error::UnknownQuantity("TC_K(Y)".into())
    );
}

fn scenarios() -> Vec<Problem> {
    let rot = |n: usize| {
        Problem::new(
            format!("ngon-rotation-{n}"),
            SimplicialComplex::cycle_complex(n).unwrap(),
            vec![(0..n).map(|i| (i + 1) % n).collect()],
        )
    };
    vec![
        reflection(1),
        reflection(2),
        with_cat_g(reflection(2)),
        with_cat_g(reflection(3)),
        rot(4),
        rot(6),
        Problem::new("torus7", SimplicialComplex::torus7(), vec![]),
        Problem::new(
            "hex",
            SimplicialComplex::cycle_complex(6).unwrap(),
            vec![vec![3, 4, 5, 0, 1, 2]],
        )
        .annotate(Annotation::FreeAction)
        .annotate(Annotation::Metrizable),
    ]
}

#[test]
fn saturation_is_confluent_and_replayable() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in scenarios() {
        let base = Analysis::build(&p, &Config::default()).unwrap();
        let mut reference = base.clone();
        reference.facts.saturate().unwrap();
        let expect: Vec<_> = reference
            .facts
            .quantities()
            .map(|q| reference.facts.interval(q))
            .collect();
        for _ in 0..20 {
            let mut order: Vec<usize> = (0..base.facts.relations().len()).collect();
            order.shuffle(&mut rng);
            let mut a = base.clone();
            a.facts.saturate_in_order(&order).unwrap();
            let got: Vec<_> = a.facts.quantities().map(|q| a.facts.interval(q)).collect();
            assert_eq!(got, expect, "{}", p.name);
        }
        for b in reference.facts.bounds() {
            assert_eq!(
                reference.facts.replay(b.id),
                b.value,
                "{}: bound #{}",
                p.name,
                b.id
            );
            if b.step != Step::Seed {
                assert!(!b.premises.is_empty());
            }
            assert!(
                b.premises.iter().all(|&x| x < b.id),
                "provenance must be acyclic"
            );
        }
    }
}

#[test]
fn adding_facts_never_widens_intervals() {
    let plain = analyze(&reflection(2), &Config::default()).unwrap();
    let more = analyze(&with_cat_g(reflection(2)), &Config::default()).unwrap();
    for q in plain.facts.quantities() {
        let (l0, u0) = plain.facts.interval(q);
        let (l1, u1) = more.facts.interval(q);
        assert!(l1 >= l0 && u1 <= u0, "{}", plain.facts.name(q));
    }
}

#[test]
fn reports_are_deterministic_and_cite_sources() {
    let a = analyze(&with_cat_g(reflection(2)), &Config::default()).unwrap();
    let r1 = a.report();
    let r2 = analyze(&with_cat_g(reflection(2)), &Config::default())
        .unwrap()
        .report();
    assert_eq!(r1, r2);
    assert_eq!(r1.to_text(), r2.to_text());
    assert!(r1.to_text().contains("result: TC_G ∈ [3,3]"));
    let rules: Vec<&str> = r1.derivations.iter().map(|d| d.rule.as_str()).collect();
    assert!(rules.contains(&"R12") || rules.contains(&"R14"));
    assert!(rules.contains(&"R1"));
    assert!(r1.derivations.iter().all(|d| !d.citation.is_empty()));
}
