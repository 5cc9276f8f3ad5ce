use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::analysis::{Analysis, SpaceSummary};
use super::facts::{BoundId, Certificate, Side, Step};
use super::problem::Config;
use super::quantity::{Acting, Quantity, Space};
use super::Value;
use crate::group::SubgroupMode;
use crate::ring::RingBounds;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub problem: String,
    pub config: Config,
    pub headline: Vec<String>,
    pub consistent: bool,
    pub problems: Vec<ProblemReport>,
    pub quantities: Vec<QuantityReport>,
    pub derivations: Vec<DerivationReport>,
    pub inconsistencies: Vec<InconsistencyReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemReport {
    pub name: String,
    pub group_order: usize,
    pub subdivisions: usize,
    pub subgroups: Vec<SubgroupReport>,
    pub g_connected: bool,
    pub witness: Option<WitnessReport>,
    pub caveats: Vec<String>,
    pub isotropy: Vec<String>,
    pub spaces: Vec<SpaceReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub name: String,
    pub order: usize,
    pub fixed_components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub subgroup: String,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub label: String,
    pub vertex_count: usize,
    pub simplex_count: usize,
    pub dimension: Option<usize>,
    pub components: usize,
    pub betti: Option<Vec<usize>>,
    pub ring: Vec<RingBounds>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantityReport {
    pub quantity: String,
    pub lower: Value,
    pub upper: Value,
    pub lower_bound: Option<BoundId>,
    pub upper_bound: Option<BoundId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub id: BoundId,
    pub quantity: String,
    pub side: Side,
    pub value: Value,
    pub rule: String,
    pub citation: String,
    pub quote: String,
    pub premises: Vec<BoundId>,
    pub hypotheses: Vec<String>,
    pub certificate: Option<Certificate>,
    pub step: Step,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InconsistencyReport {
    pub quantity: String,
    pub lower: BoundId,
    pub upper: BoundId,
}

/// `TC_G ∈ [3,3]`, `TC_G = ∞`, `TC(X_G) ≤ 6` or `TC_G ≥ 3`.
pub fn headline_form(symbol: &str, lower: Value, upper: Value) -> String {
    match (lower, upper) {
        (Value::Infinite, _) => format!("{symbol} = ∞"),
        (l, Value::Infinite) => format!("{symbol} ≥ {l}"),
        (Value::Finite(1), u) if u != Value::Finite(1) => format!("{symbol} ≤ {u}"),
        (l, u) => format!("{symbol} ∈ [{l},{u}]"),
    }
}

fn interval_form(lower: Value, upper: Value) -> String {
    match upper {
        Value::Infinite => format!("[{lower},∞)"),
        u => format!("[{lower},{u}]"),
    }
}

fn space_report(s: &SpaceSummary) -> SpaceReport {
    SpaceReport {
        label: s.label.clone(),
        vertex_count: s.vertex_count,
        simplex_count: s.simplex_count,
        dimension: s.dimension,
        components: s.components,
        betti: s.betti.clone(),
        ring: s.ring.clone(),
    }
}

impl Analysis {
    pub fn headline(&self) -> Vec<String> {
        let main = self.main_quantity();
        let symbol = if main.group == Acting::Trivial {
            "TC"
        } else {
            "TC_G"
        };
        let (l, u) = self.facts.interval(&main);
        let mut out = vec![headline_form(symbol, l, u)];
        for (a, d) in self.declarations.iter().enumerate() {
            let q = Quantity::tc(0, Space::Associated(a), Acting::Trivial);
            let (l, u) = self.facts.interval(&q);
            out.push(headline_form(&format!("TC({})", d.name), l, u));
        }
        out
    }

    pub fn report(&self) -> Report {
        let facts = &self.facts;
        let mut quantities = Vec::new();
        let mut roots = Vec::new();
        for q in facts.quantities() {
            let lower = facts.best_lower(q).map(|b| b.id);
            let upper = facts.best_upper(q).map(|b| b.id);
            roots.extend(lower);
            roots.extend(upper);
            quantities.push(QuantityReport {
                quantity: facts.name(q),
                lower: facts.lower(q),
                upper: facts.upper(q),
                lower_bound: lower,
                upper_bound: upper,
            });
        }
        let inconsistencies: Vec<InconsistencyReport> = facts
            .inconsistencies()
            .iter()
            .map(|i| {
                roots.push(i.lower);
                roots.push(i.upper);
                InconsistencyReport {
                    quantity: facts.name(&i.quantity),
                    lower: i.lower,
                    upper: i.upper,
                }
            })
            .collect();
        let used: BTreeSet<BoundId> = roots.iter().flat_map(|&r| facts.ancestors(r)).collect();
        let derivations = used
            .into_iter()
            .map(|id| {
                let b = facts.bound(id);
                DerivationReport {
                    id,
                    quantity: facts.name(&b.quantity),
                    side: b.side,
                    value: b.value,
                    rule: b.rule.id().to_string(),
                    citation: b.rule.citation().to_string(),
                    quote: b.rule.quote().to_string(),
                    premises: b.premises.clone(),
                    hypotheses: b.hypotheses.clone(),
                    certificate: b.certificate.clone(),
                    step: b.step,
                }
            })
            .collect();
        let problems = self
            .contexts
            .iter()
            .map(|c| {
                let subgroups = (0..c.catalog.len())
                    .map(|k| SubgroupReport {
                        name: c.subgroup_name(k),
                        order: c.catalog.get(k).order(),
                        fixed_components: c.connectivity.components[k],
                    })
                    .collect();
                let caveats = c
                    .connectivity
                    .empty_fixed_sets
                    .iter()
                    .map(|&k| format!("X^{} is empty and counted as connected", c.subgroup_name(k)))
                    .collect();
                let mut spaces = vec![space_report(&c.x)];
                spaces.extend(c.fixed.iter().flatten().map(space_report));
                spaces.extend(c.orbit.iter().map(space_report));
                ProblemReport {
                    name: c.name.clone(),
                    group_order: c.group().order(),
                    subdivisions: c.regular.subdivisions(),
                    subgroups,
                    g_connected: c.connectivity.connected,
                    witness: c.connectivity.witness.map(|(k, n)| WitnessReport {
                        subgroup: c.subgroup_name(k),
                        components: n,
                    }),
                    caveats,
                    isotropy: c.isotropy.iter().map(|&k| c.subgroup_name(k)).collect(),
                    spaces,
                }
            })
            .collect();
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            problem: self.contexts[0].name.clone(),
            config: self.config.clone(),
            headline: self.headline(),
            consistent: facts.is_consistent(),
            problems,
            quantities,
            derivations,
            inconsistencies,
        }
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let fields: Vec<String> = c.fields.iter().map(|f| f.to_string()).collect();
        let cap = c.depth_cap.map_or("2·dim".to_string(), |d| d.to_string());
        let mode = match c.subgroups {
            SubgroupMode::All => "all",
            SubgroupMode::UpToConjugacy => "up_to_conjugacy",
        };
        let _ = writeln!(s, "problem: {}", self.problem);
        let _ = writeln!(
            s,
            "config: fields {}; depth cap {cap}; seed {}; subgroups {mode}",
            fields.join(","),
            c.seed
        );
        for h in &self.headline {
            let _ = writeln!(s, "result: {h}");
        }
        if !self.consistent {
            let _ = writeln!(
                s,
                "INCONSISTENT: {} clash(es), see below",
                self.inconsistencies.len()
            );
        }
        for p in &self.problems {
            let _ = writeln!(s);
            let _ = writeln!(
                s,
                "[{}] group of order {}, {} regularizing subdivision(s)",
                p.name, p.group_order, p.subdivisions
            );
            for sp in &p.spaces {
                let betti = sp.betti.as_ref().map_or("-".to_string(), |b| {
                    b.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                });
                let dim = sp.dimension.map_or("-".to_string(), |d| d.to_string());
                let _ = writeln!(
                    s,
                    "  {}: {} vertices, {} simplices, dim {dim}, {} component(s), Betti ({}) {betti}",
                    sp.label,
                    sp.vertex_count,
                    sp.simplex_count,
                    sp.components,
                    fields.first().map_or("-", String::as_str),
                );
                for rb in &sp.ring {
                    let _ = writeln!(
                        s,
                        "    {}: zero-divisor length {} [{}], cup-length {} [{}]",
                        rb.field,
                        rb.zero_divisor_length,
                        rb.zero_divisor_certificate.join(", "),
                        rb.cuplength,
                        rb.cuplength_certificate.join(", "),
                    );
                }
            }
            if p.group_order > 1 {
                let subs: Vec<String> = p
                    .subgroups
                    .iter()
                    .map(|g| {
                        format!(
                            "{} (order {}, X^{} has {} component(s))",
                            g.name, g.order, g.name, g.fixed_components
                        )
                    })
                    .collect();
                let _ = writeln!(s, "  subgroups: {}", subs.join("; "));
                let _ = writeln!(s, "  isotropy: {}", p.isotropy.join(", "));
                match &p.witness {
                    None => {
                        let _ = writeln!(s, "  G-connected: yes");
                    }
                    Some(w) => {
                        let _ = writeln!(
                            s,
                            "  G-connected: no, witness: fixed set X^{} has {} components",
                            w.subgroup, w.components
                        );
                    }
                }
                for cv in &p.caveats {
                    let _ = writeln!(s, "  caveat: {cv}");
                }
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "intervals:");
        for q in &self.quantities {
            let _ = writeln!(s, "  {} ∈ {}", q.quantity, interval_form(q.lower, q.upper));
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "derivations:");
        for d in &self.derivations {
            let rel = match d.side {
                Side::Lower => "≥",
                Side::Upper => "≤",
            };
            let _ = write!(
                s,
                "  #{} {} {rel} {} [{}] {}",
                d.id, d.quantity, d.value, d.rule, d.citation
            );
            if !d.quote.is_empty() {
                let _ = write!(s, ": \"{}\"", d.quote);
            }
            if !d.premises.is_empty() {
                let ps: Vec<String> = d.premises.iter().map(|p| format!("#{p}")).collect();
                let _ = write!(s, " ← {}", ps.join(", "));
            }
            let _ = writeln!(s);
            for h in &d.hypotheses {
                let _ = writeln!(s, "      hypothesis: {h}");
            }
            if let Some(c) = &d.certificate {
                let _ = writeln!(s, "      certificate: {}", certificate_text(c));
            }
        }
        if !self.inconsistencies.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "inconsistencies:");
            for i in &self.inconsistencies {
                let _ = writeln!(
                    s,
                    "  {}: lower #{} exceeds upper #{}",
                    i.quantity, i.lower, i.upper
                );
            }
        }
        s
    }
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::ZeroDivisors {
            field,
            length,
            factors,
        } => {
            format!(
                "zero-divisor product of length {length} over {field}: [{}]",
                factors.join(", ")
            )
        }
        Certificate::CupLength {
            field,
            length,
            factors,
        } => {
            format!(
                "cup product of length {length} over {field}: [{}]",
                factors.join(", ")
            )
        }
        Certificate::Dimension { dimension } => format!("dimension {dimension}"),
        Certificate::Disconnected { space, components } => {
            format!("{space} has {components} components")
        }
        Certificate::Assertion { justification } => format!("asserted: {justification}"),
    }
}
