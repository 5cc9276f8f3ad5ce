pub mod complex;
pub mod engine;
pub mod error;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod ring;
pub mod scalar;

pub use complex::{Simplex, SimplicialComplex, Subcomplex, Subdivision};
pub use error::{Error, Result};
pub use scalar::{Field, FieldSpec, Fp, Rational};

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type Q = Rational;

pub use engine::{analyze, Analysis, Config, Problem, Report, Value};
pub use group::{FiniteGroup, GroupAction, SubgroupMode};
