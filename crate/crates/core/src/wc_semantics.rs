//! Stable models and answer sets of weight constraint programs, strong
//! satisfiability and circular justification.
//!
//! The per-interpretation functions here work directly on the syntax with
//! exact rationals. The enumerators go through the bitmask engine.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;

use crate::engine::{self, EnumOptions, WcSemantics};
use crate::error::{Error, Result};
use crate::model::{
    Atom, Interpretation, Literal, WeightConstraint, WeightProgram, WeightRule, WeightedLiteral,
};
use crate::number::Rational;

/// The reduct `l' [a1=w1, ..., an=wn]` of a weight constraint: the positive
/// elements with the lower bound lowered by the weight of the not-atoms
/// false in `M`; no upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductConstraint {
    pub lower: Option<Rational>,
    pub elements: Vec<(Atom, Rational)>,
}

impl ReductConstraint {
    pub fn weight_value(&self, s: &Interpretation) -> Rational {
        self.elements.iter().filter(|(a, _)| s.contains(a)).map(|(_, w)| w).sum()
    }

    pub fn satisfied_by(&self, s: &Interpretation) -> bool {
        self.lower.as_ref().is_none_or(|l| &self.weight_value(s) >= l)
    }

    pub fn to_constraint(&self) -> WeightConstraint {
        WeightConstraint::new(
            self.lower.clone(),
            self.elements
                .iter()
                .map(|(a, w)| WeightedLiteral::new(Literal::pos(a.clone()), w.clone()))
                .collect(),
            None,
        )
    }
}

/// Negative weights are eliminated first.
pub fn reduct_constraint(w: &WeightConstraint, m: &Interpretation) -> ReductConstraint {
    let w = w.eliminate_negative_weights();
    let falsified: Rational = w
        .elements
        .iter()
        .filter(|e| e.literal.negated && !m.contains(&e.literal.atom))
        .map(|e| &e.weight)
        .sum();
    ReductConstraint {
        lower: w.lower().map(|l| l - falsified),
        elements: w
            .elements
            .iter()
            .filter(|e| !e.literal.negated)
            .map(|e| (e.literal.atom.clone(), e.weight.clone()))
            .collect(),
    }
}

/// P^M: `p :- W1^M, ..., Wn^M` for each positive head literal `p ∈ M` of a
/// rule whose body constraints all stay within their upper bounds at `M`.
pub fn reduct_program(p: &WeightProgram, m: &Interpretation) -> WeightProgram {
    let mut out = Vec::new();
    for rule in &p.rules {
        let rule = rule.normalized();
        let within = rule
            .body
            .iter()
            .all(|w| w.upper().is_none_or(|u| &w.weight_value(m) <= u));
        if !within {
            continue;
        }
        let body: Vec<WeightConstraint> =
            rule.body.iter().map(|w| reduct_constraint(w, m).to_constraint()).collect();
        for a in rule.head.positive_atoms() {
            if m.contains(&a) {
                out.push(WeightRule::new(WeightConstraint::literal(Literal::pos(a)), body.clone()));
            }
        }
    }
    WeightProgram::new(out)
}

fn is_monotone_body(w: &WeightConstraint) -> bool {
    w.upper().is_none() && !w.has_negative_literals() && !w.has_negative_weights()
}

fn basic_heads(p: &WeightProgram) -> Result<Vec<&Atom>> {
    p.rules
        .iter()
        .enumerate()
        .map(|(i, r)| r.basic_head().ok_or(Error::NotBasic { rule: i + 1 }))
        .collect()
}

/// Least fixpoint of T_P from the empty set, for a basic monotone program.
pub fn tp_closure(p: &WeightProgram) -> Result<Interpretation> {
    let heads = basic_heads(p).map_err(|e| match e {
        Error::NotBasic { rule } => Error::NotBasicMonotone { rule },
        other => other,
    })?;
    if let Some(i) = p.rules.iter().position(|r| !r.body.iter().all(is_monotone_body)) {
        return Err(Error::NotBasicMonotone { rule: i + 1 });
    }
    let mut s = Interpretation::new();
    loop {
        let next: Interpretation = p
            .rules
            .iter()
            .zip(&heads)
            .filter(|(r, _)| r.body_satisfied_by(&s))
            .map(|(_, h)| (*h).clone())
            .collect();
        if next == s {
            return Ok(s);
        }
        s = next;
    }
}

/// `M ⊨ P` and `M` is the closure of `P^M`.
pub fn is_stable_model(p: &WeightProgram, m: &Interpretation) -> bool {
    p.satisfied_by(m)
        && tp_closure(&reduct_program(p, m)).expect("reducts are basic and monotone") == *m
}

pub fn stable_models(p: &WeightProgram) -> Result<Vec<Interpretation>> {
    stable_models_with(p, &EnumOptions::default())
}

/// All stable models, sorted.
pub fn stable_models_with(p: &WeightProgram, options: &EnumOptions) -> Result<Vec<Interpretation>> {
    engine::enumerate_wc(p, WcSemantics::Stable, options)
}

/// Per atom of Dom(W): the weight it contributes when true and when false.
fn contributions(w: &WeightConstraint) -> BTreeMap<Atom, (Rational, Rational)> {
    let mut per_atom: BTreeMap<Atom, (Rational, Rational)> = BTreeMap::new();
    for e in &w.elements {
        let entry = per_atom
            .entry(e.literal.atom.clone())
            .or_insert_with(|| (Rational::zero(), Rational::zero()));
        if e.literal.negated {
            entry.1 += &e.weight;
        } else {
            entry.0 += &e.weight;
        }
    }
    per_atom
}

/// R ⊨_S W: `R ⊨ W` and every `I` with `R∩Dom(W) ⊆ I ⊆ S∩Dom(W)` satisfies
/// `W`. Computed from the least and greatest value over that interval.
pub fn cond_satisfies_wc(r: &Interpretation, s: &Interpretation, w: &WeightConstraint) -> bool {
    if !w.satisfied_by(r) {
        return false;
    }
    let per_atom = contributions(w);
    if per_atom.keys().any(|a| r.contains(a) && !s.contains(a)) {
        // The interval is empty.
        return true;
    }
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for (a, (when_in, when_out)) in per_atom {
        if r.contains(&a) {
            lo += &when_in;
            hi += &when_in;
        } else if s.contains(&a) {
            lo += when_in.clone().min(when_out.clone());
            hi += when_in.max(when_out);
        } else {
            lo += &when_out;
            hi += &when_out;
        }
    }
    w.bounds.contains(&lo) && w.bounds.contains(&hi)
}

/// inst(P, M): `a :- body` for each positive head literal `a ∈ M` of a rule
/// whose head `M` satisfies.
pub fn instance_of(p: &WeightProgram, m: &Interpretation) -> WeightProgram {
    let mut out = Vec::new();
    for rule in &p.rules {
        let head = rule.head.eliminate_negative_weights();
        if !head.satisfied_by(m) {
            continue;
        }
        for a in head.positive_atoms() {
            if m.contains(&a) {
                out.push(WeightRule::new(
                    WeightConstraint::literal(Literal::pos(a)),
                    rule.body.clone(),
                ));
            }
        }
    }
    WeightProgram::new(out)
}

/// Least fixpoint of `R ↦ K_P(R, M)` from the empty set, for a basic
/// program. Iterates are accumulated so the loop also ends when `M` is not
/// a model.
pub fn kp_fixpoint(p: &WeightProgram, m: &Interpretation) -> Result<Interpretation> {
    let heads = basic_heads(p)?;
    let mut r = Interpretation::new();
    loop {
        let derived: Interpretation = p
            .rules
            .iter()
            .zip(&heads)
            .filter(|(rule, _)| rule.body.iter().all(|w| cond_satisfies_wc(&r, m, w)))
            .map(|(_, h)| (*h).clone())
            .collect();
        let next = r.union(&derived);
        if next == r {
            return Ok(r);
        }
        r = next;
    }
}

/// `M ⊨ P` and `M` is the K fixpoint of inst(P, M).
pub fn is_answer_set(p: &WeightProgram, m: &Interpretation) -> bool {
    p.satisfied_by(m)
        && kp_fixpoint(&instance_of(p, m), m).expect("instances are basic") == *m
}

pub fn answer_sets(p: &WeightProgram) -> Result<Vec<Interpretation>> {
    answer_sets_with(p, &EnumOptions::default())
}

/// All answer sets, sorted.
pub fn answer_sets_with(p: &WeightProgram, options: &EnumOptions) -> Result<Vec<Interpretation>> {
    engine::enumerate_wc(p, WcSemantics::Answer, options)
}

/// If `M ⊨ W`, then removing any set of not-atoms of `W` from `M` keeps the
/// value within the upper bound. The worst case removes exactly the atoms
/// whose removal raises the value.
pub fn strongly_satisfiable_by(w: &WeightConstraint, m: &Interpretation) -> bool {
    let w = w.eliminate_negative_weights();
    let Some(u) = w.upper() else { return true };
    if !w.satisfied_by(m) {
        return true;
    }
    let per_atom = contributions(&w);
    let mut worst = w.weight_value(m);
    for b in w.m_b(m).iter() {
        let (when_in, when_out) = &per_atom[b];
        if when_out > when_in {
            worst += when_out - when_in;
        }
    }
    &worst <= u
}

/// Strongly satisfiable by every interpretation; checking the subsets of
/// Dom(W) suffices.
pub fn strongly_satisfiable(w: &WeightConstraint) -> bool {
    let domain: Vec<Atom> = w.domain().into_iter().collect();
    domain
        .iter()
        .powerset()
        .all(|m| strongly_satisfiable_by(w, &m.into_iter().cloned().collect()))
}

/// The cheap sufficient conditions: no upper bound, only atoms, or the total
/// weight within the upper bound.
pub fn syntactically_strongly_satisfiable(w: &WeightConstraint) -> bool {
    let w = w.eliminate_negative_weights();
    match w.upper() {
        None => true,
        Some(u) => !w.has_negative_literals() || &w.total_weight() <= u,
    }
}

/// Every body constraint of every rule is strongly satisfiable.
pub fn is_strongly_satisfiable_program(p: &WeightProgram) -> bool {
    p.rules.iter().flat_map(|r| &r.body).all(strongly_satisfiable)
}

/// A nonempty `U ⊆ M` such that no rule with a member of `U` in its head
/// has its body satisfied by `M∖U`; the smallest such set, ties broken
/// lexicographically. `M` must be a stable model of `P`.
pub fn is_circular(p: &WeightProgram, m: &Interpretation) -> Result<Option<Interpretation>> {
    if !is_stable_model(p, m) {
        return Err(Error::NotStableModel { model: m.to_string() });
    }
    Ok(circularity_witness(p, m))
}

fn circularity_witness(p: &WeightProgram, m: &Interpretation) -> Option<Interpretation> {
    let rules: Vec<(Interpretation, &WeightRule)> = p
        .rules
        .iter()
        .map(|r| (r.head.eliminate_negative_weights().positive_atoms().into(), r))
        .collect();
    let atoms: Vec<&Atom> = m.iter().collect();
    for size in 1..=atoms.len() {
        for u in atoms.iter().combinations(size) {
            let u: Interpretation = u.into_iter().map(|a| (*a).clone()).collect();
            let rest = m.difference(&u);
            let unsupported = rules.iter().all(|(heads, rule)| {
                u.iter().all(|a| !heads.contains(a)) || !rule.body_satisfied_by(&rest)
            });
            if unsupported {
                return Some(u);
            }
        }
    }
    None
}

/// Status of one interpretation under both semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticsReport {
    pub model: Interpretation,
    pub is_stable: bool,
    pub is_answer_set: bool,
    /// `None` when the interpretation is not a stable model.
    pub is_circular: Option<bool>,
    pub circularity_witness: Option<Interpretation>,
}

pub fn report(p: &WeightProgram, m: &Interpretation) -> SemanticsReport {
    let is_stable = is_stable_model(p, m);
    let witness = if is_stable { circularity_witness(p, m) } else { None };
    SemanticsReport {
        model: m.clone(),
        is_stable,
        is_answer_set: is_answer_set(p, m),
        is_circular: is_stable.then_some(witness.is_some()),
        circularity_witness: witness,
    }
}

/// Reports for every stable model and every answer set, sorted. The two
/// sets differ in both directions when a constraint has complementary
/// literals.
pub fn reports(p: &WeightProgram, options: &EnumOptions) -> Result<Vec<SemanticsReport>> {
    let mut models = stable_models_with(p, options)?;
    models.extend(answer_sets_with(p, options)?);
    models.sort();
    models.dedup();
    Ok(models.iter().map(|m| report(p, m)).collect())
}
