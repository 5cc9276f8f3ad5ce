use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Value;
use crate::complex::SimplicialComplex;
use crate::group::{SubgroupMode, DEFAULT_GROUP_CAP, DEFAULT_SUBGROUP_CAP};
use crate::scalar::FieldSpec;

/// Hypotheses that cannot be decided from a finite model and are taken on
/// the user's word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Annotation {
    FreeAction,
    Metrizable,
    TopologicalGroupHomomorphismAction,
    LeftTranslationAction,
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Annotation::FreeAction => "free_action",
            Annotation::Metrizable => "metrizable",
            Annotation::TopologicalGroupHomomorphismAction => {
                "topological_group_homomorphism_action"
            }
            Annotation::LeftTranslationAction => "left_translation_action",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssertedSide {
    Lower,
    Upper,
    Equal,
}

/// A numeric fact supplied by the user, e.g. `cat_G(X) = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub quantity: String,
    pub side: AssertedSide,
    pub value: Value,
    #[serde(default)]
    pub justification: String,
}

/// A declared fibre space `X_G = E ×_G F` over `B = E/G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedSpace {
    pub name: String,
    /// The fibre `F` with its action; `None` means the declaring problem.
    pub fiber: Option<Box<Problem>>,
    pub base: Box<Problem>,
    /// Why `E → B` is a numerable principal bundle.
    pub justification: String,
}

/// A complex with a group action and everything the user certifies about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub name: String,
    pub complex: SimplicialComplex,
    /// Generators as image arrays: vertex `i ↦ g[i]`.
    pub generators: Vec<Vec<usize>>,
    pub annotations: BTreeSet<Annotation>,
    pub assertions: Vec<Assertion>,
    pub associated: Vec<AssociatedSpace>,
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        complex: SimplicialComplex,
        generators: Vec<Vec<usize>>,
    ) -> Self {
        Problem {
            name: name.into(),
            complex,
            generators,
            annotations: BTreeSet::new(),
            assertions: Vec::new(),
            associated: Vec::new(),
        }
    }

    pub fn annotate(mut self, a: Annotation) -> Self {
        self.annotations.insert(a);
        self
    }

    pub fn assert(
        mut self,
        quantity: &str,
        side: AssertedSide,
        value: Value,
        justification: &str,
    ) -> Self {
        self.assertions.push(Assertion {
            quantity: quantity.to_string(),
            side,
            value,
            justification: justification.to_string(),
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub fields: Vec<FieldSpec>,
    /// Longest product tried by the zero-divisor search; `None` means `2·dim`.
    pub depth_cap: Option<usize>,
    /// Seeds the randomized fallback used when an exhaustive search runs out of budget.
    pub seed: u64,
    pub subgroups: SubgroupMode,
    pub group_cap: usize,
    pub subgroup_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            fields: FieldSpec::default_sweep(),
            depth_cap: None,
            seed: 0,
            subgroups: SubgroupMode::UpToConjugacy,
            group_cap: DEFAULT_GROUP_CAP,
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
        }
    }
}
