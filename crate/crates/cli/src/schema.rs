//! The on-disk problem format (JSON, `"schema_version": 1`).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tcbound::engine::{Annotation, Assertion, AssociatedSpace, Config, Problem, Value};
use tcbound::group::SubgroupMode;
use tcbound::{FieldSpec, SimplicialComplex};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Referenced problem files may themselves reference others; this bounds the chain.
const MAX_REF_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema_version: u32,
    pub name: String,
    pub vertex_count: usize,
    pub maximal_simplices: Vec<Vec<usize>>,
    /// Permutations as image arrays: vertex `i ↦ g[i]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub asserted_facts: Vec<Assertion>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub associated_spaces: Vec<AssociatedDecl>,
    #[serde(default, skip_serializing_if = "FileConfig::is_empty")]
    pub config: FileConfig,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssociatedDecl {
    pub name: String,
    /// Omitted: the declaring problem is the fibre.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<ProblemRef>,
    pub base: ProblemRef,
    #[serde(default)]
    pub justification: String,
}

/// A problem given inline or as a path relative to the referencing file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProblemRef {
    Path(String),
    Inline(Box<ProblemFile>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fields: Option<Vec<FieldSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroups: Option<SubgroupMode>,
}

impl FileConfig {
    pub fn is_empty(&self) -> bool {
        *self == FileConfig::default()
    }

    /// Fills in whatever the file leaves unset from `base`.
    pub fn apply(&self, mut base: Config) -> Config {
        if let Some(f) = &self.fields {
            base.fields = f.clone();
        }
        if self.depth_cap.is_some() {
            base.depth_cap = self.depth_cap;
        }
        if let Some(s) = self.seed {
            base.seed = s;
        }
        if let Some(m) = self.subgroups {
            base.subgroups = m;
        }
        base
    }
}

impl ProblemFile {
    pub fn parse(text: &str, origin: &str) -> Result<ProblemFile, CliError> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            origin: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })?;
        file.check_version(origin)?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<ProblemFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        ProblemFile::parse(&text, &path.display().to_string())
    }

    fn check_version(&self, origin: &str) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::invalid(
                origin,
                format!(
                    "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                    self.schema_version
                ),
            ));
        }
        for (i, sub) in self.associated_spaces.iter().enumerate() {
            for r in [sub.fiber.as_ref(), Some(&sub.base)].into_iter().flatten() {
                if let ProblemRef::Inline(p) = r {
                    p.check_version(&format!("{origin}: associated_spaces[{i}]"))?;
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("problem files always serialize");
        s.push('\n');
        s
    }

    /// Builds the in-memory problem, resolving path references against `dir`.
    pub fn to_problem(&self, dir: Option<&Path>) -> Result<Problem, CliError> {
        self.to_problem_at(dir, &self.name, 0)
    }

    pub(crate) fn to_problem_at(
        &self,
        dir: Option<&Path>,
        origin: &str,
        depth: usize,
    ) -> Result<Problem, CliError> {
        let complex =
            SimplicialComplex::from_maximal_simplices(self.vertex_count, &self.maximal_simplices)
                .map_err(|e| CliError::invalid(origin, format!("maximal_simplices: {e}")))?;
        for (i, g) in self.generators.iter().enumerate() {
            let mut seen = vec![false; self.vertex_count];
            let ok = g.len() == self.vertex_count
                && g.iter()
                    .all(|&v| v < self.vertex_count && !std::mem::replace(&mut seen[v], true));
            if !ok {
                return Err(CliError::invalid(
                    origin,
                    format!(
                        "generators[{i}]: not a permutation of 0..{}",
                        self.vertex_count
                    ),
                ));
            }
        }
        for (i, a) in self.asserted_facts.iter().enumerate() {
            if a.value == Value::Finite(0) {
                return Err(CliError::invalid(
                    origin,
                    format!("asserted_facts[{i}]: values are at least 1 or \"infinity\""),
                ));
            }
        }
        let mut associated = Vec::new();
        for (i, decl) in self.associated_spaces.iter().enumerate() {
            let at = format!("{origin}: associated_spaces[{i}]");
            let fiber = match &decl.fiber {
                None => None,
                Some(r) => Some(Box::new(r.resolve(dir, &at, depth)?)),
            };
            associated.push(AssociatedSpace {
                name: decl.name.clone(),
                fiber,
                base: Box::new(decl.base.resolve(dir, &at, depth)?),
                justification: decl.justification.clone(),
            });
        }
        Ok(Problem {
            name: self.name.clone(),
            complex,
            generators: self.generators.clone(),
            annotations: self.annotations.iter().copied().collect::<BTreeSet<_>>(),
            assertions: self.asserted_facts.clone(),
            associated,
        })
    }

    /// The canonical file for `p`, with associated spaces inlined.
    pub fn from_problem(p: &Problem) -> ProblemFile {
        ProblemFile {
            schema_version: SCHEMA_VERSION,
            name: p.name.clone(),
            vertex_count: p.complex.vertex_count(),
            maximal_simplices: p
                .complex
                .maximal_simplices()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect(),
            generators: p.generators.clone(),
            annotations: p.annotations.iter().copied().collect(),
            asserted_facts: p.assertions.clone(),
            associated_spaces: p
                .associated
                .iter()
                .map(|a| AssociatedDecl {
                    name: a.name.clone(),
                    fiber: a
                        .fiber
                        .as_ref()
                        .map(|f| ProblemRef::Inline(Box::new(ProblemFile::from_problem(f)))),
                    base: ProblemRef::Inline(Box::new(ProblemFile::from_problem(&a.base))),
                    justification: a.justification.clone(),
                })
                .collect(),
            config: FileConfig::default(),
        }
    }
}

impl ProblemRef {
    fn resolve(&self, dir: Option<&Path>, origin: &str, depth: usize) -> Result<Problem, CliError> {
        if depth >= MAX_REF_DEPTH {
            return Err(CliError::invalid(
                origin,
                "problem references nest too deeply".to_string(),
            ));
        }
        match self {
            ProblemRef::Inline(p) => p.to_problem_at(dir, origin, depth + 1),
            ProblemRef::Path(rel) => {
                let path: PathBuf = match dir {
                    Some(d) => d.join(rel),
                    None => PathBuf::from(rel),
                };
                let file = ProblemFile::load(&path)?;
                file.to_problem_at(path.parent(), &path.display().to_string(), depth + 1)
            }
        }
    }
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}
