//! Subcommand implementations. Each returns the text to print.

use std::path::{Path, PathBuf};

use tcbound::engine::{analyze, Config, Report};
use tcbound::group::{regularize, FiniteGroup, GroupAction, SubgroupCatalog, SubgroupMode};
use tcbound::homology::betti_numbers;
use tcbound::ring::{ring_bounds, Search};
use tcbound::{with_field, FieldSpec};

use crate::builtins;
use crate::error::CliError;
use crate::schema::ProblemFile;

/// A problem named on the command line: a file path or a builtin example.
pub struct Source {
    pub file: ProblemFile,
    pub dir: Option<PathBuf>,
    pub origin: String,
}

impl Source {
    pub fn resolve(arg: &str) -> Result<Source, CliError> {
        let path = Path::new(arg);
        if path.is_file() {
            return Ok(Source {
                file: ProblemFile::load(path)?,
                dir: path.parent().map(Path::to_path_buf),
                origin: arg.to_string(),
            });
        }
        match builtins::file(arg) {
            Some(file) => Ok(Source {
                file,
                dir: None,
                origin: arg.to_string(),
            }),
            None => Err(CliError::Io {
                path: arg.to_string(),
                message: format!(
                    "no such file or builtin example (builtins: {})",
                    builtins::names().join(", ")
                ),
            }),
        }
    }
}

impl Source {
    pub fn problem(&self) -> Result<tcbound::engine::Problem, CliError> {
        self.file
            .to_problem_at(self.dir.as_deref(), &self.origin, 0)
    }
}

/// Command-line overrides for `analyze`; `None` keeps the file's or default value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub fields: Option<Vec<FieldSpec>>,
    pub depth_cap: Option<usize>,
    pub seed: Option<u64>,
    pub subgroups: Option<SubgroupMode>,
    pub group_cap: Option<usize>,
}

pub fn effective_config(file: &ProblemFile, o: &Overrides) -> Config {
    let mut c = file.config.apply(Config::default());
    if let Some(f) = &o.fields {
        c.fields = f.clone();
    }
    if o.depth_cap.is_some() {
        c.depth_cap = o.depth_cap;
    }
    if let Some(s) = o.seed {
        c.seed = s;
    }
    if let Some(m) = o.subgroups {
        c.subgroups = m;
    }
    if let Some(g) = o.group_cap {
        c.group_cap = g;
    }
    c
}

/// Runs the full pipeline.
pub fn report(src: &Source, o: &Overrides) -> Result<Report, CliError> {
    let problem = src.problem()?;
    let config = effective_config(&src.file, o);
    let analysis = analyze(&problem, &config).map_err(|e| CliError::core(&src.origin, e))?;
    Ok(analysis.report())
}

pub fn report_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports always serialize");
    s.push('\n');
    s
}

pub fn betti(src: &Source, field: FieldSpec) -> Result<String, CliError> {
    let problem = src.problem()?;
    let b = with_field!(field, S => betti_numbers::<S>(&problem.complex))
        .and_then(|r| r)
        .map_err(|e| CliError::core(&src.origin, e))?;
    Ok(format!("{}\n", join(&b)))
}

/// Which subgroup `fixed` computes `X^H` for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupChoice {
    Full,
    Trivial,
    Index(usize),
}

impl std::str::FromStr for SubgroupChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" | "G" => Ok(SubgroupChoice::Full),
            "trivial" | "1" => Ok(SubgroupChoice::Trivial),
            _ => s
                .strip_prefix('H')
                .and_then(|i| i.parse().ok())
                .map(SubgroupChoice::Index)
                .ok_or_else(|| format!("expected full, trivial or H<index>, got {s:?}")),
        }
    }
}

pub fn fixed(
    src: &Source,
    choice: &SubgroupChoice,
    field: FieldSpec,
    mode: SubgroupMode,
) -> Result<String, CliError> {
    let problem = src.problem()?;
    let core = |e| CliError::core(&src.origin, e);
    let config = Config::default();
    let group = FiniteGroup::closure(
        problem.complex.vertex_count(),
        &problem.generators,
        config.group_cap,
    )
    .map_err(core)?;
    let regular = regularize(GroupAction::new(problem.complex.clone(), group).map_err(core)?)
        .map_err(core)?;
    let catalog =
        SubgroupCatalog::enumerate(regular.group(), mode, config.subgroup_cap).map_err(core)?;
    let index = match *choice {
        SubgroupChoice::Full => catalog.whole_index(),
        SubgroupChoice::Trivial => 0,
        SubgroupChoice::Index(i) if i < catalog.len() => i,
        SubgroupChoice::Index(i) => {
            return Err(CliError::Usage(format!(
                "subgroup H{i} does not exist; the catalog has indices 0..{}",
                catalog.len()
            )))
        }
    };
    let h = catalog.get(index);
    let sub = regular.fixed_subcomplex(h).map_err(core)?;
    let mut out = format!(
        "subgroup: {} (order {} of {})\nsubdivisions: {}\n",
        catalog.name(index),
        h.order(),
        regular.group().order(),
        regular.subdivisions()
    );
    if sub.is_empty() {
        out.push_str("fixed set: empty\n");
        return Ok(out);
    }
    let k = &sub.complex;
    let b = with_field!(field, S => betti_numbers::<S>(k))
        .and_then(|r| r)
        .map_err(core)?;
    out.push_str(&format!(
        "fixed set: {} vertices, {} simplices, dimension {}, {} component(s)\nbetti ({field}): {}\n",
        k.vertex_count(),
        k.total_count(),
        k.dimension().unwrap_or(0),
        k.connected_components(),
        join(&b)
    ));
    Ok(out)
}

pub fn cupfind(
    src: &Source,
    field: FieldSpec,
    depth_cap: Option<usize>,
) -> Result<String, CliError> {
    let problem = src.problem()?;
    let r = ring_bounds(&problem.complex, field, depth_cap, Search::Exhaustive)
        .map_err(|e| CliError::core(&src.origin, e))?;
    let mut out = format!("field {}, betti {}\n", r.field, join(&r.betti));
    out.push_str(&format!(
        "zero-divisor length {}, certificate [{}]\n",
        r.zero_divisor_length,
        r.zero_divisor_certificate.join(", ")
    ));
    out.push_str(&format!(
        "reduced cup-length {}, certificate [{}]\n",
        r.cuplength,
        r.cuplength_certificate.join(", ")
    ));
    if !r.complete {
        out.push_str("search incomplete: lengths are lower bounds\n");
    }
    Ok(out)
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
