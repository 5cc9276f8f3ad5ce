//! Prints the analysis of the reflected 2-sphere with `cat_G(X) = 2` asserted.
use tcbound::engine::{analyze, AssertedSide, Config, Problem, Value};
use tcbound::SimplicialComplex;

fn main() {
    let p = Problem::new(
        "sphere-reflection-n2",
        SimplicialComplex::boundary_sphere(2),
        vec![vec![1, 0, 2, 3]],
    )
    .assert(
        "cat_G(X)",
        AssertedSide::Equal,
        Value::Finite(2),
        "two G-categorical open sets",
    );
    let a = analyze(&p, &Config::default()).expect("valid problem");
    print!("{}", a.report().to_text());
}
