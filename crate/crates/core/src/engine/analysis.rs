use std::collections::{BTreeSet, HashMap};

use super::facts::{Certificate, FactBase, Op, Side};
use super::problem::{AssertedSide, Config, Problem};
use super::quantity::{normalize_name, Acting, Kind, Naming, Quantity, Space};
use super::rules::Rule;
use super::{Annotation, Value};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::group::{
    orbit_complex, regularize, FiniteGroup, GConnectivity, GroupAction, RegularAction,
    SubgroupCatalog,
};
use crate::homology::betti_numbers;
use crate::ring::{sweep_ring_bounds, RingBounds, Search};

/// Trials of the randomized search used when an exhaustive search runs out of budget.
const FALLBACK_TRIALS: usize = 64;

/// What was computed about one concrete space.
#[derive(Clone, Debug)]
pub struct SpaceSummary {
    pub label: String,
    pub vertex_count: usize,
    pub simplex_count: usize,
    pub dimension: Option<usize>,
    pub components: usize,
    /// Over the first configured field.
    pub betti: Option<Vec<usize>>,
    /// Per configured field; empty unless the space is connected.
    pub ring: Vec<RingBounds>,
}

/// A problem after validation, regularization and the per-space computations.
#[derive(Clone, Debug)]
pub struct ProblemContext {
    pub name: String,
    pub problem: Problem,
    pub regular: RegularAction,
    pub catalog: SubgroupCatalog,
    pub connectivity: GConnectivity,
    pub x: SpaceSummary,
    /// Indexed by catalog entry; `None` for the trivial subgroup.
    pub fixed: Vec<Option<SpaceSummary>>,
    pub orbit: Option<SpaceSummary>,
    /// Catalog entries occurring as vertex isotropy groups.
    pub isotropy: Vec<usize>,
}

impl ProblemContext {
    pub fn group(&self) -> &FiniteGroup {
        self.regular.group()
    }

    pub fn whole(&self) -> Acting {
        if self.catalog.whole_index() == 0 {
            Acting::Trivial
        } else {
            Acting::Subgroup(self.catalog.whole_index())
        }
    }

    pub fn subgroup_name(&self, i: usize) -> String {
        self.catalog.name(i)
    }

    fn fixed_components(&self, k: usize) -> usize {
        if k == 0 {
            self.x.components
        } else {
            self.fixed[k].as_ref().map_or(0, |s| s.components)
        }
    }

    /// Whether `X^K` is path-connected for every entry `K` subconjugate to `H_i`.
    pub fn is_connected_for(&self, i: usize) -> bool {
        self.disconnected_witness(i).is_none()
    }

    pub fn disconnected_witness(&self, i: usize) -> Option<(usize, usize)> {
        (0..self.catalog.len())
            .filter(|&k| self.catalog.is_subconjugate(k, i))
            .map(|k| (k, self.fixed_components(k)))
            .find(|&(_, c)| c > 1)
    }

    /// Entries below `H_i` whose fixed set is empty.
    pub fn empty_below(&self, i: usize) -> Vec<usize> {
        (0..self.catalog.len())
            .filter(|&k| self.catalog.is_subconjugate(k, i) && self.fixed_components(k) == 0)
            .collect()
    }

    pub fn has_fixed_points(&self, i: usize) -> bool {
        self.fixed_components(i) > 0
    }

    pub fn naming(&self, main: bool, associated: Vec<String>) -> Naming {
        Naming {
            problem: self.name.clone(),
            subgroups: (0..self.catalog.len())
                .map(|i| self.catalog.name(i))
                .collect(),
            associated,
            main,
        }
    }
}

/// A declared associated space, resolved to problem indices.
#[derive(Clone, Debug)]
pub struct Declaration {
    pub name: String,
    pub fiber: usize,
    pub base: usize,
    pub justification: String,
}

/// Everything computed for a problem, plus the fact base over it.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub config: Config,
    pub contexts: Vec<ProblemContext>,
    pub declarations: Vec<Declaration>,
    pub facts: FactBase,
}

/// Validates, computes, seeds and saturates.
pub fn analyze(problem: &Problem, config: &Config) -> Result<Analysis> {
    let mut a = Analysis::build(problem, config)?;
    a.facts.saturate()?;
    Ok(a)
}

fn summarize(label: String, k: &SimplicialComplex, config: &Config) -> Result<SpaceSummary> {
    let components = k.connected_components();
    let betti = match (k.is_empty(), config.fields.first()) {
        (false, Some(&f)) => Some(crate::with_field!(f, S => betti_numbers::<S>(k)?)?),
        _ => None,
    };
    let ring = if components == 1 {
        ring_bounds_with_fallback(k, config)?
    } else {
        Vec::new()
    };
    Ok(SpaceSummary {
        label,
        vertex_count: k.vertex_count(),
        simplex_count: k.total_count(),
        dimension: k.dimension(),
        components,
        betti,
        ring,
    })
}

fn ring_bounds_with_fallback(k: &SimplicialComplex, config: &Config) -> Result<Vec<RingBounds>> {
    let mut out = sweep_ring_bounds(k, &config.fields, config.depth_cap, Search::Exhaustive)?;
    for rb in &mut out {
        if !rb.complete {
            let search = Search::Randomized {
                seed: config.seed,
                trials: FALLBACK_TRIALS,
            };
            let alt = crate::ring::ring_bounds(k, rb.field, config.depth_cap, search)?;
            if alt.zero_divisor_length > rb.zero_divisor_length {
                rb.zero_divisor_length = alt.zero_divisor_length;
                rb.zero_divisor_certificate = alt.zero_divisor_certificate;
            }
        }
    }
    Ok(out)
}

fn build_context(problem: &Problem, name: String, config: &Config) -> Result<ProblemContext> {
    let n = problem.complex.vertex_count();
    let group = FiniteGroup::closure(n, &problem.generators, config.group_cap)?;
    let action = GroupAction::new(problem.complex.clone(), group)?;
    let regular = regularize(action)?;
    if problem.annotations.contains(&Annotation::FreeAction) && !regular.is_free() {
        return Err(Error::InvalidAnnotation(format!(
            "{}: free_action is annotated but some vertex has nontrivial isotropy",
            problem.name
        )));
    }
    let catalog =
        SubgroupCatalog::enumerate(regular.group(), config.subgroups, config.subgroup_cap)?;
    let connectivity = regular.is_g_connected(&catalog)?;
    let x = summarize("X".to_string(), &problem.complex, config)?;
    let mut fixed = vec![None];
    for k in 1..catalog.len() {
        let sub = regular.fixed_subcomplex(catalog.get(k))?;
        let label = format!("X^{}", catalog.name(k));
        fixed.push(if sub.complex.is_empty() {
            Some(SpaceSummary {
                label,
                vertex_count: 0,
                simplex_count: 0,
                dimension: None,
                components: 0,
                betti: None,
                ring: Vec::new(),
            })
        } else {
            Some(summarize(label, &sub.complex, config)?)
        });
    }
    let orbit = if catalog.whole_index() > 0 {
        let q = orbit_complex(&regular)?;
        Some(summarize("X/G".to_string(), &q.complex, config)?)
    } else {
        None
    };
    let isotropy: BTreeSet<usize> = regular
        .occurring_isotropy_subgroups()
        .iter()
        .filter_map(|h| catalog.locate(h))
        .collect();
    Ok(ProblemContext {
        name,
        problem: problem.clone(),
        regular,
        catalog,
        connectivity,
        x,
        fixed,
        orbit,
        isotropy: isotropy.into_iter().collect(),
    })
}

impl Analysis {
    /// Validates and computes everything and seeds the fact base, without saturating.
    pub fn build(problem: &Problem, config: &Config) -> Result<Analysis> {
        if config.depth_cap == Some(0) {
            return Err(Error::DepthCap);
        }
        let mut contexts = vec![build_context(problem, problem.name.clone(), config)?];
        let mut declarations = Vec::new();
        for decl in &problem.associated {
            let fiber = match &decl.fiber {
                None => 0,
                Some(f) => {
                    let name = unique_name(&contexts, &f.name);
                    contexts.push(build_context(f, name, config)?);
                    contexts.len() - 1
                }
            };
            let name = unique_name(&contexts, &decl.base.name);
            contexts.push(build_context(&decl.base, name, config)?);
            declarations.push(Declaration {
                name: decl.name.clone(),
                fiber,
                base: contexts.len() - 1,
                justification: decl.justification.clone(),
            });
        }
        let associated: Vec<String> = declarations.iter().map(|d| d.name.clone()).collect();
        let namings = contexts
            .iter()
            .enumerate()
            .map(|(p, c)| {
                c.naming(
                    p == 0,
                    if p == 0 {
                        associated.clone()
                    } else {
                        Vec::new()
                    },
                )
            })
            .collect();
        let mut facts = FactBase::new(namings);
        for (p, ctx) in contexts.iter().enumerate() {
            seed_problem(&mut facts, p, ctx);
        }
        for (a, d) in declarations.iter().enumerate() {
            let fiber = &contexts[d.fiber];
            facts.relate(
                Rule::R18,
                Quantity::tc(0, Space::Associated(a), Acting::Trivial),
                Op::Product,
                vec![
                    Quantity::tc(d.fiber, Space::Base, fiber.whole()),
                    Quantity::tc(d.base, Space::Base, Acting::Trivial),
                ],
                vec![format!(
                    "numerable principal bundle over the base (user-certified: {})",
                    d.justification
                )],
            );
        }
        for (p, ctx) in contexts.iter().enumerate() {
            let local = ctx.naming(
                true,
                if p == 0 {
                    associated.clone()
                } else {
                    Vec::new()
                },
            );
            let lookup = name_lookup(p, ctx, &local);
            for a in &ctx.problem.assertions {
                let q = *lookup
                    .get(&normalize_name(&a.quantity))
                    .ok_or_else(|| Error::UnknownQuantity(a.quantity.clone()))?;
                let cert = Some(Certificate::Assertion {
                    justification: a.justification.clone(),
                });
                let hyp = vec!["asserted by the user".to_string()];
                if matches!(a.side, AssertedSide::Lower | AssertedSide::Equal) {
                    facts.seed(
                        q,
                        Side::Lower,
                        a.value,
                        Rule::Asserted,
                        hyp.clone(),
                        cert.clone(),
                    );
                }
                if matches!(a.side, AssertedSide::Upper | AssertedSide::Equal) {
                    facts.seed(q, Side::Upper, a.value, Rule::Asserted, hyp, cert);
                }
            }
        }
        Ok(Analysis {
            config: config.clone(),
            contexts,
            declarations,
            facts,
        })
    }

    /// `TC_G(X)` of the main problem (`TC(X)` for the trivial group).
    pub fn main_quantity(&self) -> Quantity {
        Quantity::tc(0, Space::Base, self.contexts[0].whole())
    }
}

fn unique_name(contexts: &[ProblemContext], name: &str) -> String {
    let taken = |n: &str| contexts.iter().any(|c| c.name == n);
    if !taken(name) {
        return name.to_string();
    }
    (2..)
        .map(|i| format!("{name}#{i}"))
        .find(|n| !taken(n))
        .unwrap()
}

fn name_lookup(p: usize, ctx: &ProblemContext, naming: &Naming) -> HashMap<String, Quantity> {
    let n = ctx.catalog.len();
    let mut spaces = vec![Space::Base, Space::Square, Space::Orbit];
    spaces.extend((1..n).map(Space::Fixed));
    spaces.extend((0..naming.associated.len()).map(Space::Associated));
    let mut groups = vec![Acting::Trivial];
    groups.extend((1..n).map(Acting::Subgroup));
    groups.extend((1..n).map(Acting::Product));
    let mut out = HashMap::new();
    for kind in [Kind::Cat, Kind::Tc] {
        for &space in &spaces {
            for &group in &groups {
                let q = Quantity::new(p, kind, space, group);
                out.insert(normalize_name(&naming.name(&q)), q);
            }
        }
    }
    out
}

fn connected_hypothesis(ctx: &ProblemContext, i: usize) -> String {
    let mut h = if i == 0 {
        "X is path-connected (computed)".to_string()
    } else {
        format!("X is {}-connected (computed)", ctx.subgroup_name(i))
    };
    let empty = ctx.empty_below(i);
    if !empty.is_empty() {
        let names: Vec<String> = empty
            .iter()
            .map(|&k| format!("X^{}", ctx.subgroup_name(k)))
            .collect();
        h.push_str(&format!(
            "; caveat: empty fixed sets {} counted as connected",
            names.join(", ")
        ));
    }
    h
}

fn user_certified(a: Annotation) -> String {
    format!("{a} (user-certified)")
}

/// Seeds the computed bounds of one concrete space: `X`, a fixed set or the orbit space.
fn seed_space(facts: &mut FactBase, p: usize, space: Space, s: &SpaceSummary, note: &str) {
    let tc = Quantity::tc(p, space, Acting::Trivial);
    let cat = Quantity::cat(p, space, Acting::Trivial);
    facts.register(tc);
    facts.register(cat);
    if s.components > 1 {
        facts.seed(
            tc,
            Side::Lower,
            Value::Infinite,
            Rule::R9,
            vec![format!("{} is not path-connected (computed)", s.label)],
            Some(Certificate::Disconnected {
                space: s.label.clone(),
                components: s.components,
            }),
        );
        return;
    }
    if s.components == 0 {
        return;
    }
    let connected = vec![format!("{} is path-connected (computed)", s.label)];
    for rb in &s.ring {
        facts.seed(
            tc,
            Side::Lower,
            Value::Finite(rb.zero_divisor_length as u64 + 1),
            Rule::R1,
            Vec::new(),
            Some(Certificate::ZeroDivisors {
                field: rb.field,
                length: rb.zero_divisor_length,
                factors: rb.zero_divisor_certificate.clone(),
            }),
        );
        facts.seed(
            cat,
            Side::Lower,
            Value::Finite(rb.cuplength as u64 + 1),
            Rule::R2,
            Vec::new(),
            Some(Certificate::CupLength {
                field: rb.field,
                length: rb.cuplength,
                factors: rb.cuplength_certificate.clone(),
            }),
        );
    }
    if let Some(d) = s.dimension {
        let mut hyp = connected.clone();
        if !note.is_empty() {
            hyp.push(note.to_string());
        }
        facts.seed(
            tc,
            Side::Upper,
            Value::Finite(2 * d as u64 + 1),
            Rule::R4,
            hyp.clone(),
            Some(Certificate::Dimension { dimension: d }),
        );
        facts.seed(
            cat,
            Side::Upper,
            Value::Finite(d as u64 + 1),
            Rule::R4b,
            hyp,
            Some(Certificate::Dimension { dimension: d }),
        );
    }
    facts.at_most(Rule::R3, cat, tc, connected);
}

fn seed_problem(facts: &mut FactBase, p: usize, ctx: &ProblemContext) {
    let ann = &ctx.problem.annotations;
    let sub = ctx.regular.subdivisions();
    let note = if sub == 0 {
        String::new()
    } else {
        format!("dimension of X as given, before {sub} regularizing subdivision(s)")
    };
    seed_space(facts, p, Space::Base, &ctx.x, &note);
    for (k, s) in ctx.fixed.iter().enumerate().skip(1) {
        if let Some(s) = s {
            seed_space(facts, p, Space::Fixed(k), s, "");
        }
    }
    if let Some(o) = &ctx.orbit {
        seed_space(facts, p, Space::Orbit, o, "");
    }

    let tc_x = Quantity::tc(p, Space::Base, Acting::Trivial);
    let cat_x = Quantity::cat(p, Space::Base, Acting::Trivial);
    if ctx.x.components == 1 {
        let conn = vec![connected_hypothesis(ctx, 0)];
        let cat_sq = Quantity::cat(p, Space::Square, Acting::Trivial);
        facts.at_most(Rule::R3, tc_x, cat_sq, conn.clone());
        facts.relate(
            Rule::R5,
            cat_sq,
            Op::Affine { mul: 2, add: -1 },
            vec![cat_x],
            conn.clone(),
        );
        if ann.contains(&Annotation::TopologicalGroupHomomorphismAction) {
            let mut h = conn.clone();
            h.push(user_certified(
                Annotation::TopologicalGroupHomomorphismAction,
            ));
            facts.equal(Rule::R16, tc_x, cat_x, h);
        }
    }

    let n = ctx.catalog.len();
    for i in 1..n {
        let g = Acting::Subgroup(i);
        let tc_i = Quantity::tc(p, Space::Base, g);
        let cat_i = Quantity::cat(p, Space::Base, g);
        let name_i = ctx.subgroup_name(i);
        facts.register(tc_i);
        facts.register(cat_i);
        if let Some((k, c)) = ctx.disconnected_witness(i) {
            let label = if k == 0 {
                "X".to_string()
            } else {
                format!("X^{}", ctx.subgroup_name(k))
            };
            facts.seed(
                tc_i,
                Side::Lower,
                Value::Infinite,
                Rule::R9,
                vec![format!(
                    "X is not {name_i}-connected: {label} has {c} components (computed)"
                )],
                Some(Certificate::Disconnected {
                    space: label,
                    components: c,
                }),
            );
        }
        facts.at_most(Rule::R19, tc_x, tc_i, Vec::new());
        for j in 1..n {
            if j != i && ctx.catalog.is_subconjugate(j, i) {
                let below = format!("{} ≤ {name_i} up to conjugacy", ctx.subgroup_name(j));
                facts.at_most(
                    Rule::R8,
                    Quantity::tc(p, Space::Base, Acting::Subgroup(j)),
                    tc_i,
                    vec![below],
                );
            }
        }
        for k in 1..n {
            if ctx.catalog.is_subconjugate(k, i) && ctx.has_fixed_points(k) {
                let below = format!("{} ≤ {name_i} up to conjugacy", ctx.subgroup_name(k));
                facts.at_most(
                    Rule::R7,
                    Quantity::tc(p, Space::Fixed(k), Acting::Trivial),
                    tc_i,
                    vec![below],
                );
            }
        }
        facts.relate(
            Rule::R15,
            Quantity::cat(p, Space::Square, Acting::Product(i)),
            Op::Affine { mul: 2, add: -1 },
            vec![cat_i],
            Vec::new(),
        );
        if !ctx.is_connected_for(i) {
            continue;
        }
        let conn = connected_hypothesis(ctx, i);
        let cat_sq = Quantity::cat(p, Space::Square, g);
        facts.at_most(Rule::R10, tc_i, cat_sq, vec![conn.clone()]);
        for k in isotropy_within(ctx, i) {
            let h = vec![
                conn.clone(),
                format!(
                    "{} is the isotropy group of a point of X in {name_i}",
                    ctx.subgroup_name(k)
                ),
            ];
            facts.at_most(
                Rule::R11,
                Quantity::cat(p, Space::Base, Acting::Subgroup(k)),
                tc_i,
                h,
            );
        }
        if ctx.has_fixed_points(i) {
            let h = vec![conn.clone(), format!("X^{name_i} ≠ ∅ (computed)")];
            facts.at_most(Rule::R12, cat_i, tc_i, h.clone());
            facts.relate(
                Rule::R12,
                tc_i,
                Op::Affine { mul: 2, add: -1 },
                vec![cat_i],
                h.clone(),
            );
            facts.relate(Rule::R13, cat_i, Op::UnitGate, vec![tc_i], h.clone());
            facts.relate(
                Rule::R14,
                cat_sq,
                Op::Affine { mul: 2, add: -1 },
                vec![cat_i],
                h,
            );
        }
        if ann.contains(&Annotation::TopologicalGroupHomomorphismAction) {
            let h = vec![
                conn,
                user_certified(Annotation::TopologicalGroupHomomorphismAction),
            ];
            facts.equal(Rule::R16, tc_i, cat_i, h);
        }
    }

    let whole = ctx.whole();
    if let Acting::Subgroup(_) = whole {
        let cat_g = Quantity::cat(p, Space::Base, whole);
        let cat_orbit = Quantity::cat(p, Space::Orbit, Acting::Trivial);
        facts.at_most(Rule::R6, cat_orbit, cat_g, Vec::new());
        if ann.contains(&Annotation::FreeAction) && ann.contains(&Annotation::Metrizable) {
            let h = vec![
                format!(
                    "{} (user-certified; agrees with computed isotropy)",
                    Annotation::FreeAction
                ),
                user_certified(Annotation::Metrizable),
            ];
            facts.at_most(Rule::R6, cat_g, cat_orbit, h);
        }
    }
    if ann.contains(&Annotation::LeftTranslationAction)
        && ann.contains(&Annotation::Metrizable)
        && ctx.x.components == 1
    {
        let h = vec![
            connected_hypothesis(ctx, 0),
            user_certified(Annotation::LeftTranslationAction),
            user_certified(Annotation::Metrizable),
        ];
        facts.equal(Rule::R17, Quantity::tc(p, Space::Base, whole), cat_x, h);
    }
}

/// Catalog entries of `G_z ∩ H_i` over the points `z` of `X`.
fn isotropy_within(ctx: &ProblemContext, i: usize) -> Vec<usize> {
    let h = ctx.catalog.get(i);
    let mut out = BTreeSet::new();
    for v in 0..ctx.regular.complex().vertex_count() {
        let iso = ctx.regular.isotropy(v);
        let meet = crate::group::Subgroup::from_indices(
            iso.elements().iter().copied().filter(|&x| h.contains(x)),
        );
        if let Some(k) = ctx.catalog.locate(&meet) {
            out.insert(k);
        }
    }
    out.into_iter().collect()
}
