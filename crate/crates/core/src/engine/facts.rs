use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::quantity::{Naming, Quantity};
use super::rules::Rule;
use super::Value;
use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

pub type BoundId = usize;

/// Rounds over the relation list before saturation is abandoned.
const MAX_ROUNDS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

/// Evidence behind a seeded bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    ZeroDivisors {
        field: FieldSpec,
        length: usize,
        factors: Vec<String>,
    },
    CupLength {
        field: FieldSpec,
        length: usize,
        factors: Vec<String>,
    },
    Dimension {
        dimension: usize,
    },
    Disconnected {
        space: String,
        components: usize,
    },
    Assertion {
        justification: String,
    },
}

/// How a relation's right-hand side bounds its left-hand side:
/// `lhs ≤ op(rhs…)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Op {
    Identity,
    /// `m·x + c`
    Affine {
        mul: u64,
        add: i64,
    },
    /// `x·y`
    Product,
    /// `1` if `x = 1`, else `∞`.
    UnitGate,
}

impl Op {
    pub fn apply(self, args: &[Value]) -> Value {
        match self {
            Op::Identity => args[0],
            Op::Affine { mul, add } => args[0].affine(mul, add),
            Op::Product => args[0].times(args[1]),
            Op::UnitGate => {
                if args[0] == Value::Finite(1) {
                    Value::Finite(1)
                } else {
                    Value::Infinite
                }
            }
        }
    }

    /// Lower bound for one argument, given a lower bound for the result and
    /// upper bounds for the other arguments.
    pub fn invert(self, lower: Value, others: &[Value]) -> Option<Value> {
        match self {
            Op::Identity => Some(lower),
            Op::Affine { mul, add } => Some(lower.affine_preimage(mul, add)),
            Op::Product => lower.quotient_preimage(others[0]),
            Op::UnitGate => (lower > Value::Finite(1)).then_some(Value::Finite(2)),
        }
    }
}

/// How a bound's value follows from its premises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    Seed,
    /// Premises are upper bounds of the right-hand side, in order.
    Forward {
        op: Op,
    },
    /// First premise is a lower bound of the left-hand side, the rest are
    /// upper bounds of the other right-hand quantities.
    Backward {
        op: Op,
        position: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub id: BoundId,
    pub quantity: Quantity,
    pub side: Side,
    pub value: Value,
    pub rule: Rule,
    pub premises: Vec<BoundId>,
    pub hypotheses: Vec<String>,
    pub certificate: Option<Certificate>,
    pub step: Step,
}

/// `lhs ≤ op(rhs…)`, valid whenever `hypotheses` hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub rule: Rule,
    pub lhs: Quantity,
    pub op: Op,
    pub rhs: Vec<Quantity>,
    pub hypotheses: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inconsistency {
    pub quantity: Quantity,
    pub lower: BoundId,
    pub upper: BoundId,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Best {
    lower: Option<BoundId>,
    upper: Option<BoundId>,
}

/// Bounds with provenance, the relations between quantities, and the best
/// known interval of every quantity.
#[derive(Clone, Debug, Default)]
pub struct FactBase {
    bounds: Vec<Bound>,
    best: BTreeMap<Quantity, Best>,
    relations: Vec<Relation>,
    inconsistencies: Vec<Inconsistency>,
    namings: Vec<Naming>,
}

impl FactBase {
    pub fn new(namings: Vec<Naming>) -> Self {
        FactBase {
            namings,
            ..Default::default()
        }
    }

    pub fn name(&self, q: &Quantity) -> String {
        self.namings[q.problem].name(q)
    }

    pub fn namings(&self) -> &[Naming] {
        &self.namings
    }

    /// Makes `q` known, with the conventional lower bound 1.
    pub fn register(&mut self, q: Quantity) {
        if let std::collections::btree_map::Entry::Vacant(e) = self.best.entry(q) {
            e.insert(Best::default());
            self.insert(
                q,
                Side::Lower,
                Value::Finite(1),
                Rule::Unnormalized,
                Vec::new(),
                Vec::new(),
                None,
                Step::Seed,
            );
        }
    }

    pub fn seed(
        &mut self,
        q: Quantity,
        side: Side,
        value: Value,
        rule: Rule,
        hypotheses: Vec<String>,
        certificate: Option<Certificate>,
    ) -> Option<BoundId> {
        self.register(q);
        self.insert(
            q,
            side,
            value,
            rule,
            Vec::new(),
            hypotheses,
            certificate,
            Step::Seed,
        )
    }

    pub fn relate(
        &mut self,
        rule: Rule,
        lhs: Quantity,
        op: Op,
        rhs: Vec<Quantity>,
        hypotheses: Vec<String>,
    ) {
        self.register(lhs);
        for q in &rhs {
            self.register(*q);
        }
        self.relations.push(Relation {
            rule,
            lhs,
            op,
            rhs,
            hypotheses,
        });
    }

    /// `a ≤ b`
    pub fn at_most(&mut self, rule: Rule, a: Quantity, b: Quantity, hypotheses: Vec<String>) {
        self.relate(rule, a, Op::Identity, vec![b], hypotheses);
    }

    /// `a = b`
    pub fn equal(&mut self, rule: Rule, a: Quantity, b: Quantity, hypotheses: Vec<String>) {
        self.at_most(rule, a, b, hypotheses.clone());
        self.at_most(rule, b, a, hypotheses);
    }

    #[allow(clippy::too_many_arguments)]
    fn insert(
        &mut self,
        q: Quantity,
        side: Side,
        value: Value,
        rule: Rule,
        premises: Vec<BoundId>,
        hypotheses: Vec<String>,
        certificate: Option<Certificate>,
        step: Step,
    ) -> Option<BoundId> {
        let current = match side {
            Side::Lower => self.lower(&q),
            Side::Upper => self.upper(&q),
        };
        let known = self.best_id(&q, side).is_some();
        let improves = match side {
            Side::Lower => value > current || !known,
            Side::Upper => value < current,
        };
        if !improves {
            return None;
        }
        let id = self.bounds.len();
        self.bounds.push(Bound {
            id,
            quantity: q,
            side,
            value,
            rule,
            premises,
            hypotheses,
            certificate,
            step,
        });
        let best = self.best.entry(q).or_default();
        match side {
            Side::Lower => best.lower = Some(id),
            Side::Upper => best.upper = Some(id),
        }
        if let (Some(l), Some(u)) = (best.lower, best.upper) {
            if self.bounds[l].value > self.bounds[u].value
                && !self.inconsistencies.iter().any(|i| i.quantity == q)
            {
                self.inconsistencies.push(Inconsistency {
                    quantity: q,
                    lower: l,
                    upper: u,
                });
            }
        }
        Some(id)
    }

    fn best_id(&self, q: &Quantity, side: Side) -> Option<BoundId> {
        let b = self.best.get(q)?;
        match side {
            Side::Lower => b.lower,
            Side::Upper => b.upper,
        }
    }

    pub fn lower(&self, q: &Quantity) -> Value {
        self.best_id(q, Side::Lower)
            .map_or(Value::Finite(1), |i| self.bounds[i].value)
    }

    pub fn upper(&self, q: &Quantity) -> Value {
        self.best_id(q, Side::Upper)
            .map_or(Value::Infinite, |i| self.bounds[i].value)
    }

    pub fn interval(&self, q: &Quantity) -> (Value, Value) {
        (self.lower(q), self.upper(q))
    }

    pub fn best_lower(&self, q: &Quantity) -> Option<&Bound> {
        self.best_id(q, Side::Lower).map(|i| &self.bounds[i])
    }

    pub fn best_upper(&self, q: &Quantity) -> Option<&Bound> {
        self.best_id(q, Side::Upper).map(|i| &self.bounds[i])
    }

    pub fn quantities(&self) -> impl Iterator<Item = &Quantity> {
        self.best.keys()
    }

    pub fn contains(&self, q: &Quantity) -> bool {
        self.best.contains_key(q)
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    pub fn bound(&self, id: BoundId) -> &Bound {
        &self.bounds[id]
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn inconsistencies(&self) -> &[Inconsistency] {
        &self.inconsistencies
    }

    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }

    /// Applies every relation in both directions until no interval improves.
    pub fn saturate(&mut self) -> Result<()> {
        let order: Vec<usize> = (0..self.relations.len()).collect();
        self.saturate_in_order(&order)
    }

    /// As [`FactBase::saturate`], visiting relations in the given order each round.
    pub fn saturate_in_order(&mut self, order: &[usize]) -> Result<()> {
        for _ in 0..MAX_ROUNDS {
            let mut changed = false;
            for &r in order {
                changed |= self.apply(r);
            }
            if !changed {
                return Ok(());
            }
        }
        Err(Error::SaturationCap(MAX_ROUNDS))
    }

    fn apply(&mut self, r: usize) -> bool {
        let rel = self.relations[r].clone();
        let mut changed = false;

        let uppers: Vec<Option<BoundId>> = rel
            .rhs
            .iter()
            .map(|q| self.best_id(q, Side::Upper))
            .collect();
        if uppers.iter().all(Option::is_some) {
            let premises: Vec<BoundId> = uppers.into_iter().flatten().collect();
            let args: Vec<Value> = premises.iter().map(|&i| self.bounds[i].value).collect();
            let value = rel.op.apply(&args);
            if value.is_finite() {
                changed |= self
                    .insert(
                        rel.lhs,
                        Side::Upper,
                        value,
                        rel.rule,
                        premises,
                        rel.hypotheses.clone(),
                        None,
                        Step::Forward { op: rel.op },
                    )
                    .is_some();
            }
        }

        if let Some(l) = self.best_id(&rel.lhs, Side::Lower) {
            for position in 0..rel.rhs.len() {
                let others: Vec<Option<BoundId>> = rel
                    .rhs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != position)
                    .map(|(_, q)| self.best_id(q, Side::Upper))
                    .collect();
                if others.iter().any(Option::is_none) {
                    continue;
                }
                let mut premises = vec![l];
                premises.extend(others.into_iter().flatten());
                let other_values: Vec<Value> = premises[1..]
                    .iter()
                    .map(|&i| self.bounds[i].value)
                    .collect();
                if let Some(value) = rel.op.invert(self.bounds[l].value, &other_values) {
                    changed |= self
                        .insert(
                            rel.rhs[position],
                            Side::Lower,
                            value,
                            rel.rule,
                            premises,
                            rel.hypotheses.clone(),
                            None,
                            Step::Backward {
                                op: rel.op,
                                position,
                            },
                        )
                        .is_some();
                }
            }
        }
        changed
    }

    /// Recomputes a bound's value from its premises, recursively.
    pub fn replay(&self, id: BoundId) -> Value {
        let b = &self.bounds[id];
        let values: Vec<Value> = b.premises.iter().map(|&p| self.replay(p)).collect();
        match b.step {
            Step::Seed => b.value,
            Step::Forward { op } => op.apply(&values),
            Step::Backward { op, .. } => op
                .invert(values[0], &values[1..])
                .unwrap_or(Value::Finite(1)),
        }
    }

    /// The bounds `id` depends on, including itself, in increasing id order.
    pub fn ancestors(&self, id: BoundId) -> Vec<BoundId> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                stack.extend(self.bounds[x].premises.iter().copied());
            }
        }
        seen.into_iter().collect()
    }
}
