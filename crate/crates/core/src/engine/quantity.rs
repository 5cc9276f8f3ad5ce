use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Cat,
    Tc,
}

/// The space an invariant is evaluated on, relative to one problem's `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Base,
    /// The formal product `X × X`.
    Square,
    /// `X^H` for a subgroup catalog entry.
    Fixed(usize),
    /// `X/G`.
    Orbit,
    /// The formal associated space `X_G` of a declaration.
    Associated(usize),
}

/// The group acting on the space; `Trivial` means the non-equivariant invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acting {
    Trivial,
    /// A subgroup catalog entry, acting diagonally on `X × X`.
    Subgroup(usize),
    /// `H × H` acting factorwise on `X × X`.
    Product(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quantity {
    pub problem: usize,
    pub kind: Kind,
    pub space: Space,
    pub group: Acting,
}

impl Quantity {
    /// Builds a quantity, folding the trivial subgroup (catalog index 0)
    /// into the non-equivariant invariant.
    pub fn new(problem: usize, kind: Kind, space: Space, group: Acting) -> Self {
        let group = match group {
            Acting::Subgroup(0) | Acting::Product(0) => Acting::Trivial,
            g => g,
        };
        Quantity {
            problem,
            kind,
            space,
            group,
        }
    }

    pub fn cat(problem: usize, space: Space, group: Acting) -> Self {
        Self::new(problem, Kind::Cat, space, group)
    }

    pub fn tc(problem: usize, space: Space, group: Acting) -> Self {
        Self::new(problem, Kind::Tc, space, group)
    }
}

/// Names used when printing and parsing quantities of one problem.
#[derive(Clone, Debug)]
pub struct Naming {
    pub problem: String,
    pub subgroups: Vec<String>,
    pub associated: Vec<String>,
    pub main: bool,
}

impl Naming {
    pub fn name(&self, q: &Quantity) -> String {
        let kind = match q.kind {
            Kind::Cat => "cat",
            Kind::Tc => "TC",
        };
        let group = match q.group {
            Acting::Trivial => String::new(),
            Acting::Subgroup(i) => format!("_{}", self.subgroups[i]),
            Acting::Product(i) => format!("_{{{0}×{0}}}", self.subgroups[i]),
        };
        let space = match q.space {
            Space::Base => "X".to_string(),
            Space::Square => "X×X".to_string(),
            Space::Fixed(k) => format!("X^{}", self.subgroups[k]),
            Space::Orbit => "X/G".to_string(),
            Space::Associated(a) => self.associated[a].clone(),
        };
        let base = format!("{kind}{group}({space})");
        if self.main {
            base
        } else {
            format!("{base}@{}", self.problem)
        }
    }
}

/// Normalizes a user-written quantity name for lookup.
pub fn normalize_name(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .replace("XxX", "X×X")
        .replace("X*X", "X×X")
        .replace("tc", "TC")
        .replace("Tc", "TC")
}
