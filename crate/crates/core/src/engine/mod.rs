//! Saturation of interval bounds on cat, TC and their equivariant versions.
//!
//! Every bound carries its provenance: the rule that produced it, the
//! statement the rule encodes, the premises it was computed from, the
//! hypotheses it relied on and, for computed seeds, a certificate.

mod analysis;
mod facts;
mod problem;
mod quantity;
mod report;
mod rules;
mod value;

pub use analysis::{analyze, Analysis, Declaration, ProblemContext, SpaceSummary};
pub use facts::{Bound, BoundId, Certificate, FactBase, Inconsistency, Op, Relation, Side, Step};
pub use problem::{Annotation, AssertedSide, Assertion, AssociatedSpace, Config, Problem};
pub use quantity::{normalize_name, Acting, Kind, Naming, Quantity, Space};
pub use report::{
    headline_form, DerivationReport, InconsistencyReport, ProblemReport, QuantityReport, Report,
    SpaceReport, SubgroupReport, WitnessReport, REPORT_SCHEMA_VERSION,
};
pub use rules::Rule;
pub use value::Value;
