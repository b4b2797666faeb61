//! Weight constraint encodings of aggregates and the translation of
//! aggregate programs into weight constraint programs.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::agg::{AggElement, AggFunc, AggregateAtom, AggregateProgram, BodyItem, RelOp};
use crate::error::{Error, Result};
use crate::model::{
    Atom, Interpretation, Literal, WeightConstraint, WeightProgram, WeightRule, WeightedLiteral,
};
use crate::number::int;

/// Names of atoms introduced by the translation start with this prefix.
pub const AUX_PREFIX: &str = "__aux_";

/// Allocates `__aux_<atom>_pos_<n>` / `__aux_<atom>_neg_<n>` with a counter
/// shared by all allocations, so names never collide.
#[derive(Clone, Debug, Default)]
pub struct FreshAtoms {
    next: usize,
}

impl FreshAtoms {
    pub fn new() -> Self {
        FreshAtoms::default()
    }

    /// The `p⁺` and `p⁻` companions of `base`.
    pub fn pair(&mut self, base: &Atom) -> (Atom, Atom) {
        self.next += 1;
        let n = self.next;
        (
            Atom::unchecked(format!("{AUX_PREFIX}{base}_pos_{n}")),
            Atom::unchecked(format!("{AUX_PREFIX}{base}_neg_{n}")),
        )
    }
}

/// How MAX and MIN with `>=`, `>` and `=` are encoded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MaxMinStyle {
    /// Without fresh atoms: `MAX >= k` is `1 [p(a)=1 : a >= k]`, `MIN >= k`
    /// is `[p(a)=1 : a < k] 0` plus nonemptiness.
    #[default]
    Direct,
    /// The `p⁺`/`p⁻` construction with auxiliary constraints per element.
    Auxiliary,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TauOptions {
    pub max_min: MaxMinStyle,
}

/// The encoding `e(A)`, split into relation constraints `r(A)` and
/// auxiliary constraints `a(A)`, each paired with the domain atom it
/// belongs to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AggEncoding {
    pub relation_constraints: Vec<WeightConstraint>,
    pub auxiliary_constraints: Vec<(Atom, WeightConstraint)>,
    pub fresh_atoms: BTreeSet<Atom>,
}

impl AggEncoding {
    pub fn constraints(&self) -> impl Iterator<Item = &WeightConstraint> + '_ {
        self.relation_constraints
            .iter()
            .chain(self.auxiliary_constraints.iter().map(|(_, w)| w))
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        self.constraints().all(|w| w.satisfied_by(m))
    }

    fn push_relation(&mut self, w: WeightConstraint) {
        if !self.relation_constraints.contains(&w) {
            self.relation_constraints.push(w);
        }
    }
}

fn element(atom: &Atom, negated: bool, weight: i64) -> WeightedLiteral {
    WeightedLiteral::new(Literal { atom: atom.clone(), negated }, int(weight))
}

fn constraint(lower: Option<i64>, elements: Vec<WeightedLiteral>, upper: Option<i64>) -> WeightConstraint {
    WeightConstraint::new(lower.map(int), elements, upper.map(int))
}

/// One literal per element, except that an atom whose weights have both
/// signs gets a single element with the net weight: eliminating the
/// negative weights would otherwise put `p` and `not p` in one constraint,
/// which the reduct treats differently from conditional satisfaction.
fn weighted(elements: &[AggElement], weight: impl Fn(i64) -> i64) -> Vec<WeightedLiteral> {
    let weights_of = |a: &Atom| -> Vec<i64> { elements.iter().filter(|e| &e.atom == a).map(|e| weight(e.value)).collect() };
    let mixed: BTreeSet<&Atom> = elements
        .iter()
        .map(|e| &e.atom)
        .filter(|a| {
            let ws = weights_of(a);
            ws.iter().any(|w| *w > 0) && ws.iter().any(|w| *w < 0)
        })
        .collect();
    let mut merged = BTreeSet::new();
    let mut out = Vec::new();
    for e in elements {
        if !mixed.contains(&e.atom) {
            out.push(element(&e.atom, false, weight(e.value)));
        } else if merged.insert(&e.atom) {
            out.push(element(&e.atom, false, weights_of(&e.atom).iter().sum()));
        }
    }
    out
}

fn selected(elements: &[AggElement], keep: impl Fn(i64) -> bool) -> Vec<WeightedLiteral> {
    elements.iter().filter(|e| keep(e.value)).map(|e| element(&e.atom, false, 1)).collect()
}

fn nonempty(elements: &[AggElement]) -> WeightConstraint {
    constraint(Some(1), selected(elements, |_| true), None)
}

/// `MAX >= k` with companions: for `d = a - k + 1`,
/// `0 [p=-1, p+=1, p-=1] 0`, `0 [p=-d, p+=d]`, `0 [p=d, p-=-d]` per element,
/// then `1 [p=d, p+=d, p-=-d, ...]` and `1 [p=1, ...]`.
fn max_ge_auxiliary(elements: &[AggElement], k: i64, fresh: &mut FreshAtoms, out: &mut AggEncoding) {
    let mut relation = Vec::new();
    for e in elements {
        let d = e.value - k + 1;
        let (plus, minus) = fresh.pair(&e.atom);
        let p = &e.atom;
        out.auxiliary_constraints.extend([
            (p.clone(), constraint(Some(0), vec![element(p, false, -1), element(&plus, false, 1), element(&minus, false, 1)], Some(0))),
            (p.clone(), constraint(Some(0), vec![element(p, false, -d), element(&plus, false, d)], None)),
            (p.clone(), constraint(Some(0), vec![element(p, false, d), element(&minus, false, -d)], None)),
        ]);
        relation.extend([element(p, false, d), element(&plus, false, d), element(&minus, false, -d)]);
        out.fresh_atoms.extend([plus, minus]);
    }
    out.push_relation(constraint(Some(1), relation, None));
    out.push_relation(nonempty(elements));
}

/// `MIN >= k` with companions: for `d = a - k`,
/// `0 [p+=1, p-=1, p=-1] 0`, `0 [p+=d, p=-d]`, `0 [p-=-d, p=d]` per element,
/// then `0 [p=d, p+=-d, p-=d, ...] 0` and `1 [p=1, ...]`.
fn min_ge_auxiliary(elements: &[AggElement], k: i64, fresh: &mut FreshAtoms, out: &mut AggEncoding) {
    let mut relation = Vec::new();
    for e in elements {
        let d = e.value - k;
        let (plus, minus) = fresh.pair(&e.atom);
        let p = &e.atom;
        out.auxiliary_constraints.extend([
            (p.clone(), constraint(Some(0), vec![element(&plus, false, 1), element(&minus, false, 1), element(p, false, -1)], Some(0))),
            (p.clone(), constraint(Some(0), vec![element(&plus, false, d), element(p, false, -d)], None)),
            (p.clone(), constraint(Some(0), vec![element(&minus, false, -d), element(p, false, d)], None)),
        ]);
        relation.extend([element(p, false, d), element(&plus, false, -d), element(&minus, false, d)]);
        out.fresh_atoms.extend([plus, minus]);
    }
    out.push_relation(constraint(Some(0), relation, Some(0)));
    out.push_relation(nonempty(elements));
}

fn encode_ge(
    func: AggFunc,
    elements: &[AggElement],
    k: i64,
    style: MaxMinStyle,
    fresh: &mut FreshAtoms,
    out: &mut AggEncoding,
) {
    match (func, style) {
        (AggFunc::Sum, _) => out.push_relation(constraint(Some(k), weighted(elements, |a| a), None)),
        (AggFunc::Count, _) => out.push_relation(constraint(Some(k), weighted(elements, |_| 1), None)),
        (AggFunc::Avg, _) => {
            out.push_relation(constraint(Some(0), weighted(elements, |a| a - k), None));
            out.push_relation(nonempty(elements));
        }
        (AggFunc::Max, MaxMinStyle::Auxiliary) => max_ge_auxiliary(elements, k, fresh, out),
        (AggFunc::Max, MaxMinStyle::Direct) => {
            out.push_relation(constraint(Some(1), selected(elements, |a| a >= k), None))
        }
        (AggFunc::Min, MaxMinStyle::Auxiliary) => min_ge_auxiliary(elements, k, fresh, out),
        (AggFunc::Min, MaxMinStyle::Direct) => {
            out.push_relation(constraint(None, selected(elements, |a| a < k), Some(0)));
            out.push_relation(nonempty(elements));
        }
    }
}

fn encode_le(func: AggFunc, elements: &[AggElement], k: i64, out: &mut AggEncoding) {
    match func {
        AggFunc::Sum => out.push_relation(constraint(None, weighted(elements, |a| a), Some(k))),
        AggFunc::Count => out.push_relation(constraint(None, weighted(elements, |_| 1), Some(k))),
        AggFunc::Avg => {
            out.push_relation(constraint(None, weighted(elements, |a| a - k), Some(0)));
            out.push_relation(nonempty(elements));
        }
        AggFunc::Max => {
            out.push_relation(constraint(None, selected(elements, |a| a > k), Some(0)));
            out.push_relation(nonempty(elements));
        }
        AggFunc::Min => out.push_relation(constraint(Some(1), selected(elements, |a| a <= k), None)),
    }
}

/// Encodes with the default style for MAX and MIN.
pub fn encode_aggregate(a: &AggregateAtom, fresh: &mut FreshAtoms) -> Result<AggEncoding> {
    encode_aggregate_with(a, fresh, MaxMinStyle::default())
}

/// `>` and `<` become `>= k+1` and `<= k-1`, except for AVG whose value is
/// not an integer: there `> k` is `1 [p(a)=a-k]` and `< k` is
/// `[p(a)=a-k] -1`, both with nonemptiness. `=` is the conjunction of the
/// `>=` and `<=` encodings.
pub fn encode_aggregate_with(a: &AggregateAtom, fresh: &mut FreshAtoms, style: MaxMinStyle) -> Result<AggEncoding> {
    if a.elements.is_empty() {
        return Err(Error::EmptyAggregate { rule: None });
    }
    let mut out = AggEncoding::default();
    let (func, elements, k) = (a.func, a.elements.as_slice(), a.result);
    match (a.op, func) {
        (RelOp::Ne, AggFunc::Count) => return Err(Error::DisjunctiveAggregate { rule: None }),
        (RelOp::Ne, _) => {
            return Err(Error::UnsupportedAggregate { rule: None, func: func.name().to_string() })
        }
        (RelOp::Ge, _) => encode_ge(func, elements, k, style, fresh, &mut out),
        (RelOp::Le, _) => encode_le(func, elements, k, &mut out),
        (RelOp::Gt, AggFunc::Avg) => {
            out.push_relation(constraint(Some(1), weighted(elements, |v| v - k), None));
            out.push_relation(nonempty(elements));
        }
        (RelOp::Lt, AggFunc::Avg) => {
            out.push_relation(constraint(None, weighted(elements, |v| v - k), Some(-1)));
            out.push_relation(nonempty(elements));
        }
        (RelOp::Gt, _) => encode_ge(func, elements, k + 1, style, fresh, &mut out),
        (RelOp::Lt, _) => encode_le(func, elements, k - 1, &mut out),
        (RelOp::Eq, _) => {
            encode_ge(func, elements, k, style, fresh, &mut out);
            encode_le(func, elements, k, &mut out);
        }
    }
    Ok(out)
}

pub fn tau_program(p: &AggregateProgram) -> Result<WeightProgram> {
    tau_program_with(p, &TauOptions::default())
}

/// τ(P): `h :- r(A1), ..., r(An)` per rule plus `W :- p(a)` for every
/// auxiliary constraint `W` of a domain atom `p(a)`. Plain literals become
/// `1 [l=1] 1`. A rule with `count{...} != k` is split into one rule with
/// `> k` and one with `< k` (every combination when there are several).
pub fn tau_program_with(p: &AggregateProgram, options: &TauOptions) -> Result<WeightProgram> {
    let mut fresh = FreshAtoms::new();
    let mut main = Vec::new();
    let mut auxiliary = Vec::new();
    for (i, rule) in p.rules.iter().enumerate() {
        let number = Some(i + 1);
        let mut alternatives: Vec<Vec<Vec<WeightConstraint>>> = Vec::new();
        for item in &rule.body {
            let a = match item {
                BodyItem::Literal(l) => {
                    alternatives.push(vec![vec![WeightConstraint::literal(l.clone())]]);
                    continue;
                }
                BodyItem::Aggregate(a) => a,
            };
            let split = match (a.op, a.func) {
                (RelOp::Ne, AggFunc::Count) => vec![
                    AggregateAtom { op: RelOp::Gt, ..a.clone() },
                    AggregateAtom { op: RelOp::Lt, ..a.clone() },
                ],
                _ => vec![a.clone()],
            };
            let mut options_for_item = Vec::new();
            for part in &split {
                let encoding = encode_aggregate_with(part, &mut fresh, options.max_min).map_err(|e| match e {
                    Error::EmptyAggregate { .. } => Error::EmptyAggregate { rule: number },
                    Error::UnsupportedAggregate { func, .. } => Error::UnsupportedAggregate { rule: number, func },
                    other => other,
                })?;
                for (trigger, w) in encoding.auxiliary_constraints {
                    auxiliary.push(WeightRule::new(w, vec![WeightConstraint::literal(Literal::pos(trigger))]));
                }
                options_for_item.push(encoding.relation_constraints);
            }
            alternatives.push(options_for_item);
        }
        let head = WeightConstraint::literal(Literal::pos(rule.head.clone()));
        if alternatives.is_empty() {
            main.push(WeightRule::new(head, Vec::new()));
            continue;
        }
        for combination in alternatives.iter().multi_cartesian_product() {
            main.push(WeightRule::new(head.clone(), combination.into_iter().flatten().cloned().collect()));
        }
    }
    main.extend(auxiliary);
    Ok(WeightProgram::new(main))
}

/// Drops the atoms introduced by the translation.
pub fn restrict_to_source(m: &Interpretation) -> Interpretation {
    m.iter().filter(|a| !a.name().starts_with(AUX_PREFIX)).cloned().collect()
}
