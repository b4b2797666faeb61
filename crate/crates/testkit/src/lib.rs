//! Random program generators and brute-force reference implementations.
//!
//! The oracles here work directly from the definitions, over every subset
//! of the atoms, and share no code with the solver beyond the data types,
//! classical satisfaction and negative-weight elimination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use wclp_core::transforms::{ne_encode_wc, ne_program, ss_encode};
use wclp_core::{
    AggElement, AggFunc, AggregateAtom, AggregateProgram, AggregateRule, Atom, BodyItem,
    Interpretation, Literal, NestedExpr, NestedProgram, NestedRule, Rational, RelOp, WeightConstraint,
    WeightProgram, WeightRule, WeightedLiteral,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn atom(name: &str) -> Atom {
    Atom::new(name).expect("valid atom name")
}

pub fn interp(names: &[&str]) -> Interpretation {
    names.iter().map(|n| atom(n)).collect()
}

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Every subset of `atoms`, smallest first.
pub fn subsets(atoms: &BTreeSet<Atom>) -> Vec<Interpretation> {
    let atoms: Vec<&Atom> = atoms.iter().collect();
    assert!(atoms.len() < 24, "powerset of {} atoms", atoms.len());
    let mut out: Vec<Interpretation> = (0u32..1 << atoms.len())
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| (*a).clone())
                .collect()
        })
        .collect();
    out.sort_by_key(|m| m.len());
    out
}

/// Every `I` with `lo ⊆ I ⊆ hi`.
pub fn interval(lo: &Interpretation, hi: &Interpretation) -> Vec<Interpretation> {
    let free: BTreeSet<Atom> = hi.difference(lo).atoms().clone();
    subsets(&free).into_iter().map(|x| x.union(lo)).collect()
}

fn sorted(mut v: Vec<Interpretation>) -> Vec<Interpretation> {
    v.sort();
    v
}

// ---------------------------------------------------------------------------
// Generators

/// Shape of random weight constraint programs.
#[derive(Clone, Debug)]
pub struct WcShape {
    pub atoms: usize,
    pub max_rules: usize,
    pub max_elements: usize,
    pub max_body: usize,
    pub weights: (i64, i64),
    pub bounds: (i64, i64),
}

impl Default for WcShape {
    fn default() -> Self {
        WcShape { atoms: 6, max_rules: 5, max_elements: 3, max_body: 2, weights: (0, 3), bounds: (0, 4) }
    }
}

fn pool(n: usize) -> Vec<Atom> {
    ["a", "b", "c", "d", "e", "f", "g", "h"][..n].iter().map(|n| atom(n)).collect()
}

pub fn random_literal(rng: &mut impl Rng, atoms: &[Atom]) -> Literal {
    let a = atoms.choose(rng).expect("nonempty pool").clone();
    Literal { atom: a, negated: rng.gen_bool(0.5) }
}

fn random_bound(rng: &mut impl Rng, range: (i64, i64)) -> Option<Rational> {
    if rng.gen_bool(0.25) {
        None
    } else {
        Some(rat(rng.gen_range(range.0..=range.1)))
    }
}

pub fn random_constraint(rng: &mut impl Rng, atoms: &[Atom], shape: &WcShape) -> WeightConstraint {
    if rng.gen_bool(0.2) {
        return WeightConstraint::literal(random_literal(rng, atoms));
    }
    let n = rng.gen_range(0..=shape.max_elements);
    let elements = (0..n)
        .map(|_| {
            WeightedLiteral::new(
                random_literal(rng, atoms),
                rat(rng.gen_range(shape.weights.0..=shape.weights.1)),
            )
        })
        .collect();
    WeightConstraint::new(random_bound(rng, shape.bounds), elements, random_bound(rng, shape.bounds))
}

/// A random program over the first `shape.atoms` letters.
pub fn random_wc_program(rng: &mut impl Rng, shape: &WcShape) -> WeightProgram {
    let atoms = pool(shape.atoms);
    let rules = rng.gen_range(1..=shape.max_rules);
    (0..rules)
        .map(|_| {
            let head = if rng.gen_bool(0.5) {
                WeightConstraint::literal(Literal::pos(atoms.choose(rng).expect("pool").clone()))
            } else {
                random_constraint(rng, &atoms, shape)
            };
            let body = (0..rng.gen_range(0..=shape.max_body))
                .map(|_| random_constraint(rng, &atoms, shape))
                .collect();
            WeightRule::new(head, body)
        })
        .collect()
}

/// A constraint over `domain` with weights drawn from `weights`, possibly
/// negative, and bounds from `bounds`.
pub fn random_constraint_over(
    rng: &mut impl Rng,
    domain: &[Atom],
    max_elements: usize,
    weights: (i64, i64),
    bounds: (i64, i64),
) -> WeightConstraint {
    let n = rng.gen_range(1..=max_elements);
    let elements = (0..n)
        .map(|_| WeightedLiteral::new(random_literal(rng, domain), rat(rng.gen_range(weights.0..=weights.1))))
        .collect();
    WeightConstraint::new(random_bound(rng, bounds), elements, random_bound(rng, bounds))
}

pub fn random_aggregate(rng: &mut impl Rng, atoms: &[Atom]) -> AggregateAtom {
    let funcs = [AggFunc::Sum, AggFunc::Count, AggFunc::Avg, AggFunc::Max, AggFunc::Min];
    let ops = [RelOp::Ge, RelOp::Gt, RelOp::Le, RelOp::Lt, RelOp::Eq];
    let func = *funcs.choose(rng).expect("funcs");
    let mut op = *ops.choose(rng).expect("ops");
    if func == AggFunc::Count && rng.gen_bool(0.15) {
        op = RelOp::Ne;
    }
    let n = rng.gen_range(1..=3);
    let elements = (0..n)
        .map(|_| AggElement::new(atoms.choose(rng).expect("pool").clone(), rng.gen_range(-2..=3)))
        .collect();
    AggregateAtom::new(func, elements, op, rng.gen_range(-1..=3))
}

/// A random aggregate program with at most `atoms` base atoms.
pub fn random_agg_program(rng: &mut impl Rng, atoms: usize, max_rules: usize) -> AggregateProgram {
    let atoms = pool(atoms);
    let rules = rng.gen_range(1..=max_rules);
    let rules = (0..rules)
        .map(|_| {
            let head = atoms.choose(rng).expect("pool").clone();
            let body = (0..rng.gen_range(0..=2))
                .map(|_| {
                    if rng.gen_bool(0.6) {
                        BodyItem::Aggregate(random_aggregate(rng, &atoms))
                    } else {
                        BodyItem::Literal(random_literal(rng, &atoms))
                    }
                })
                .collect();
            AggregateRule::new(head, body)
        })
        .collect();
    AggregateProgram::new(rules)
}

/// A random formula of depth at most `depth`, built with the simplifying
/// constructors.
pub fn random_nested(rng: &mut impl Rng, atoms: &[Atom], depth: usize) -> NestedExpr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..10) {
            0 => NestedExpr::Top,
            1 => NestedExpr::Bottom,
            _ => NestedExpr::Atom(atoms.choose(rng).expect("pool").clone()),
        };
    }
    match rng.gen_range(0..3) {
        0 => NestedExpr::negation(random_nested(rng, atoms, depth - 1)),
        1 => NestedExpr::and((0..rng.gen_range(2..=3)).map(|_| random_nested(rng, atoms, depth - 1))),
        _ => NestedExpr::or((0..rng.gen_range(2..=3)).map(|_| random_nested(rng, atoms, depth - 1))),
    }
}

/// A random nested program over the first `atoms` letters.
pub fn random_nested_program(rng: &mut impl Rng, atoms: usize, max_rules: usize) -> NestedProgram {
    let atoms = pool(atoms);
    let rules = rng.gen_range(1..=max_rules);
    NestedProgram::new(
        (0..rules)
            .map(|_| NestedRule::new(random_nested(rng, &atoms, 2), random_nested(rng, &atoms, 2)))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Weight constraint oracles

/// `s ⊨ W^m` for the normalized `W`.
pub fn naive_reduct_sat(w: &WeightConstraint, m: &Interpretation, s: &Interpretation) -> bool {
    let w = w.eliminate_negative_weights();
    let Some(l) = w.lower() else { return true };
    let mut lowered = l.clone();
    let mut value = rat(0);
    for e in &w.elements {
        if e.literal.negated {
            if !m.contains(&e.literal.atom) {
                lowered -= &e.weight;
            }
        } else if s.contains(&e.literal.atom) {
            value += &e.weight;
        }
    }
    value >= lowered
}

/// `w(W, m) <= u`, with `W` normalized.
pub fn naive_within_upper(w: &WeightConstraint, m: &Interpretation) -> bool {
    let w = w.eliminate_negative_weights();
    w.upper().is_none_or(|u| &w.weight_value(m) <= u)
}

/// Stable models from the reduct and least-fixpoint definitions.
pub fn naive_stable_models(p: &WeightProgram) -> Vec<Interpretation> {
    let atoms = p.atoms();
    sorted(subsets(&atoms).into_iter().filter(|m| naive_is_stable(p, m)).collect())
}

pub fn naive_is_stable(p: &WeightProgram, m: &Interpretation) -> bool {
    if !p.satisfied_by(m) {
        return false;
    }
    // (head atom, body) pairs of P^M.
    let mut reduct: Vec<(Atom, &[WeightConstraint])> = Vec::new();
    for r in &p.rules {
        if !r.body.iter().all(|w| naive_within_upper(w, m)) {
            continue;
        }
        let head = r.head.eliminate_negative_weights();
        for a in head.positive_atoms() {
            if m.contains(&a) {
                reduct.push((a, &r.body));
            }
        }
    }
    let mut s = Interpretation::new();
    loop {
        let next: Interpretation = reduct
            .iter()
            .filter(|(_, body)| body.iter().all(|w| naive_reduct_sat(w, m, &s)))
            .map(|(a, _)| a.clone())
            .collect();
        if next == s {
            return s == *m;
        }
        s = next;
    }
}

/// `r ⊨_s W`: `r ⊨ W` and every `I` between `r ∩ Dom(W)` and `s ∩ Dom(W)`
/// satisfies `W`.
pub fn naive_cond_sat(r: &Interpretation, s: &Interpretation, w: &WeightConstraint) -> bool {
    let dom = w.domain();
    w.satisfied_by(r)
        && interval(&r.restrict(&dom), &s.restrict(&dom)).iter().all(|i| w.satisfied_by(i))
}

/// Answer sets from instances and the `K` fixpoint.
pub fn naive_answer_sets(p: &WeightProgram) -> Vec<Interpretation> {
    let atoms = p.atoms();
    sorted(subsets(&atoms).into_iter().filter(|m| naive_is_answer_set(p, m)).collect())
}

pub fn naive_is_answer_set(p: &WeightProgram, m: &Interpretation) -> bool {
    if !p.satisfied_by(m) {
        return false;
    }
    let mut inst: Vec<(Atom, &[WeightConstraint])> = Vec::new();
    for r in &p.rules {
        if !r.head.satisfied_by(m) {
            continue;
        }
        let head = r.head.eliminate_negative_weights();
        for a in head.positive_atoms() {
            if m.contains(&a) {
                inst.push((a, &r.body));
            }
        }
    }
    let mut s = Interpretation::new();
    loop {
        let next: Interpretation = inst
            .iter()
            .filter(|(_, body)| body.iter().all(|w| naive_cond_sat(&s, m, w)))
            .map(|(a, _)| a.clone())
            .collect();
        if next == s {
            return s == *m;
        }
        s = next;
    }
}

/// Strong satisfiability of `W` by `M`, checking every `V ⊆ M_b(W)`.
pub fn naive_strongly_satisfiable_by(w: &WeightConstraint, m: &Interpretation) -> bool {
    let w = w.eliminate_negative_weights();
    if !w.satisfied_by(m) {
        return true;
    }
    let Some(u) = w.upper() else { return true };
    subsets(w.m_b(m).atoms()).iter().all(|v| &w.weight_value(&m.difference(v)) <= u)
}

pub fn naive_strongly_satisfiable(w: &WeightConstraint) -> bool {
    subsets(&w.domain()).iter().all(|m| naive_strongly_satisfiable_by(w, m))
}

/// Some nonempty `U ⊆ M` such that no rule with a member of `U` positively
/// in its head has a body satisfied by `M ∖ U`.
pub fn naive_circular(p: &WeightProgram, m: &Interpretation) -> bool {
    subsets(m.atoms()).iter().filter(|u| !u.is_empty()).any(|u| {
        let rest = m.difference(u);
        u.iter().all(|x| {
            !p.rules.iter().any(|r| {
                r.head.eliminate_negative_weights().positive_atoms().contains(x)
                    && r.body_satisfied_by(&rest)
            })
        })
    })
}

// ---------------------------------------------------------------------------
// Nested expression oracles

/// `s ⊨ F^m` without building the reduct.
pub fn reduct_eval(f: &NestedExpr, m: &Interpretation, s: &Interpretation) -> bool {
    match f {
        NestedExpr::Top => true,
        NestedExpr::Bottom => false,
        NestedExpr::Atom(a) => s.contains(a),
        NestedExpr::Not(g) => !plain_eval(g, m),
        NestedExpr::And(items) => items.iter().all(|g| reduct_eval(g, m, s)),
        NestedExpr::Or(items) => items.iter().any(|g| reduct_eval(g, m, s)),
    }
}

pub fn plain_eval(f: &NestedExpr, m: &Interpretation) -> bool {
    match f {
        NestedExpr::Top => true,
        NestedExpr::Bottom => false,
        NestedExpr::Atom(a) => m.contains(a),
        NestedExpr::Not(g) => !plain_eval(g, m),
        NestedExpr::And(items) => items.iter().all(|g| plain_eval(g, m)),
        NestedExpr::Or(items) => items.iter().any(|g| plain_eval(g, m)),
    }
}

fn reduct_model(p: &NestedProgram, m: &Interpretation, s: &Interpretation) -> bool {
    p.rules.iter().all(|r| !reduct_eval(&r.body, m, s) || reduct_eval(&r.head, m, s))
}

/// Stable models as minimal models of the reduct, by exhaustive search.
pub fn naive_stable_models_ne(p: &NestedProgram) -> Vec<Interpretation> {
    let atoms = p.atoms();
    sorted(
        subsets(&atoms)
            .into_iter()
            .filter(|m| {
                reduct_model(p, m, m)
                    && subsets(m.atoms()).iter().all(|s| s == m || !reduct_model(p, m, s))
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Aggregate oracles

/// Values of the selected elements, with multiplicity.
fn selected(a: &AggregateAtom, m: &Interpretation) -> Vec<i64> {
    a.elements.iter().filter(|e| m.contains(&e.atom)).map(|e| e.value).collect()
}

/// Satisfaction computed with rational averages; AVG, MAX and MIN of an
/// empty selection are false.
pub fn naive_agg_sat(a: &AggregateAtom, m: &Interpretation) -> bool {
    let values = selected(a, m);
    let value: Rational = match a.func {
        AggFunc::Sum => rat(values.iter().sum()),
        AggFunc::Count => rat(values.len() as i64),
        AggFunc::Avg if values.is_empty() => return false,
        AggFunc::Avg => rat(values.iter().sum()) / rat(values.len() as i64),
        AggFunc::Max => match values.iter().max() {
            Some(v) => rat(*v),
            None => return false,
        },
        AggFunc::Min => match values.iter().min() {
            Some(v) => rat(*v),
            None => return false,
        },
    };
    let k = rat(a.result);
    match a.op {
        RelOp::Eq => value == k,
        RelOp::Ne => value != k,
        RelOp::Lt => value < k,
        RelOp::Gt => value > k,
        RelOp::Le => value <= k,
        RelOp::Ge => value >= k,
    }
}

/// `MAX >= k` read as "some selected value is at least k".
pub fn max_ge_selection(a: &AggregateAtom, m: &Interpretation, k: i64) -> bool {
    selected(a, m).iter().any(|v| *v >= k)
}

/// `MIN >= k` read as "the selection is nonempty and every value is at
/// least k".
pub fn min_ge_selection(a: &AggregateAtom, m: &Interpretation, k: i64) -> bool {
    let values = selected(a, m);
    !values.is_empty() && values.iter().all(|v| *v >= k)
}

fn naive_item_cond(item: &BodyItem, r: &Interpretation, s: &Interpretation) -> bool {
    match item {
        BodyItem::Literal(l) if l.negated => !s.contains(&l.atom),
        BodyItem::Literal(l) => r.contains(&l.atom),
        BodyItem::Aggregate(a) => {
            let dom = a.domain();
            naive_agg_sat(a, r)
                && interval(&r.restrict(&dom), &s.restrict(&dom)).iter().all(|i| naive_agg_sat(a, i))
        }
    }
}

fn naive_item_sat(item: &BodyItem, m: &Interpretation) -> bool {
    match item {
        BodyItem::Literal(l) => l.holds(m),
        BodyItem::Aggregate(a) => naive_agg_sat(a, m),
    }
}

pub fn naive_agg_answer_sets(p: &AggregateProgram) -> Vec<Interpretation> {
    let atoms = p.atoms();
    let answer = |m: &Interpretation| {
        let model = p
            .rules
            .iter()
            .all(|r| !r.body.iter().all(|b| naive_item_sat(b, m)) || m.contains(&r.head));
        if !model {
            return false;
        }
        let mut s = Interpretation::new();
        loop {
            let next: Interpretation = p
                .rules
                .iter()
                .filter(|r| r.body.iter().all(|b| naive_item_cond(b, &s, m)))
                .map(|r| r.head.clone())
                .collect();
            if next == s {
                return s == *m;
            }
            s = next;
        }
    };
    sorted(subsets(&atoms).into_iter().filter(|m| answer(m)).collect())
}

/// Model correspondence between an aggregate and constraints over its
/// domain plus `fresh`: every model of `A` extends to a model of the
/// constraints, and every model of the constraints restricts to a model
/// of `A`. Returns a description of the first violation.
pub fn check_encoding(
    a: &AggregateAtom,
    constraints: &[WeightConstraint],
    fresh: &BTreeSet<Atom>,
) -> Result<(), String> {
    check_encoding_against(a, constraints, fresh, |m| naive_agg_sat(a, m))
}

/// [`check_encoding`] with the aggregate's truth given by `holds`.
pub fn check_encoding_against(
    a: &AggregateAtom,
    constraints: &[WeightConstraint],
    fresh: &BTreeSet<Atom>,
    holds: impl Fn(&Interpretation) -> bool,
) -> Result<(), String> {
    let fresh: Vec<&Atom> = fresh.iter().collect();
    for m in subsets(&a.domain()) {
        let mut assigned = Vec::new();
        let extends = extendable(constraints, &m, &fresh, &mut assigned);
        match (holds(&m), extends) {
            (true, false) => return Err(format!("{{{m}}} satisfies the aggregate but has no model of the encoding")),
            (false, true) => return Err(format!("{{{m}}} violates the aggregate but extends to a model of the encoding")),
            _ => {}
        }
    }
    Ok(())
}

/// Whether some assignment to the rest of `fresh` (after the `assigned`
/// prefix) satisfies every constraint together with `base`. Branches are
/// cut as soon as a constraint's reachable values miss its bounds.
fn extendable(
    constraints: &[WeightConstraint],
    base: &Interpretation,
    fresh: &[&Atom],
    assigned: &mut Vec<bool>,
) -> bool {
    let open: BTreeSet<&Atom> = fresh[assigned.len()..].iter().copied().collect();
    let current: Interpretation = base
        .iter()
        .cloned()
        .chain(fresh.iter().zip(assigned.iter()).filter(|(_, v)| **v).map(|(a, _)| (*a).clone()))
        .collect();
    for w in constraints {
        let (mut lo, mut hi) = (rat(0), rat(0));
        for e in &w.elements {
            if open.contains(&e.literal.atom) {
                if e.weight > rat(0) {
                    hi += &e.weight;
                } else {
                    lo += &e.weight;
                }
            } else if e.literal.holds(&current) {
                lo += &e.weight;
                hi += &e.weight;
            }
        }
        if w.lower().is_some_and(|l| &hi < l) || w.upper().is_some_and(|u| &lo > u) {
            return false;
        }
    }
    if assigned.len() == fresh.len() {
        return true;
    }
    for value in [false, true] {
        assigned.push(value);
        let found = extendable(constraints, base, fresh, assigned);
        assigned.pop();
        if found {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Constraint-level correspondences
//
// Each check runs over every pair `S ⊆ M ⊆ Dom(W)` (or every `M`) and
// returns the first violation. Conditional satisfaction and reducts come
// from the oracles above; only the encodings come from the library.

/// Every pair `(S, M)` with `S ⊆ M ⊆ atoms`.
pub fn nested_pairs(atoms: &BTreeSet<Atom>) -> Vec<(Interpretation, Interpretation)> {
    subsets(atoms)
        .into_iter()
        .flat_map(|m| subsets(m.atoms()).into_iter().map(move |s| (s, m.clone())))
        .collect()
}

fn violation(what: &str, s: &Interpretation, m: &Interpretation) -> String {
    format!("{what} at S = {{{s}}}, M = {{{m}}}")
}

/// `S ⊨_M W` implies `S ⊨ W^M` and `w(W, M) <= u`.
pub fn check_cond_sat_implies_reduct(w: &WeightConstraint) -> Result<(), String> {
    for (s, m) in nested_pairs(&w.domain()) {
        if naive_cond_sat(&s, &m, w) && !(naive_reduct_sat(w, &m, &s) && naive_within_upper(w, &m)) {
            return Err(violation("conditionally satisfied but the reduct fails", &s, &m));
        }
    }
    Ok(())
}

/// `S ⊨ W^M` and `W` strongly satisfiable by `M` imply `S ⊨_M W`. With
/// `gated`, only pairs with `w(W, M) <= u` are considered.
pub fn check_reduct_implies_cond_sat(w: &WeightConstraint, gated: bool) -> Result<(), String> {
    for (s, m) in nested_pairs(&w.domain()) {
        if gated && !naive_within_upper(w, &m) {
            continue;
        }
        if naive_reduct_sat(w, &m, &s) && naive_strongly_satisfiable_by(w, &m) && !naive_cond_sat(&s, &m, w) {
            return Err(violation("the reduct holds but conditional satisfaction fails", &s, &m));
        }
    }
    Ok(())
}

/// `M ⊨ W` iff `M ⊨ W_l` and `M ⊨ W_u`.
pub fn check_ss_satisfaction(w: &WeightConstraint) -> Result<(), String> {
    let e = ss_encode(w);
    for m in subsets(&w.domain()) {
        if w.satisfied_by(&m) != (e.lower_part.satisfied_by(&m) && e.upper_part.satisfied_by(&m)) {
            return Err(format!("satisfaction differs at M = {{{m}}}"));
        }
    }
    Ok(())
}

/// `S ⊨_M W` iff `S ⊨ W_l^M` and `S ⊨ W_u^M`.
pub fn check_ss_reduct(w: &WeightConstraint) -> Result<(), String> {
    let e = ss_encode(w);
    for (s, m) in nested_pairs(&w.domain()) {
        let parts = naive_reduct_sat(&e.lower_part, &m, &s) && naive_reduct_sat(&e.upper_part, &m, &s);
        if naive_cond_sat(&s, &m, w) != parts {
            return Err(violation("conditional satisfaction and the encoded reducts differ", &s, &m));
        }
    }
    Ok(())
}

/// `S ⊨_M W` iff `S ⊨ NE(W)^M`.
pub fn check_ne_reduct(w: &WeightConstraint) -> Result<(), String> {
    let f = ne_encode_wc(w).map_err(|e| e.to_string())?;
    for (s, m) in nested_pairs(&w.domain()) {
        if naive_cond_sat(&s, &m, w) != reduct_eval(&f, &m, &s) {
            return Err(violation("conditional satisfaction and the nested reduct differ", &s, &m));
        }
    }
    Ok(())
}

/// `S ⊨ NE(W)^M` iff `S ⊨ W_l^M` and `S ⊨ W_u^M`.
pub fn check_ne_matches_ss(w: &WeightConstraint) -> Result<(), String> {
    let f = ne_encode_wc(w).map_err(|e| e.to_string())?;
    let e = ss_encode(w);
    for (s, m) in nested_pairs(&w.domain()) {
        let parts = naive_reduct_sat(&e.lower_part, &m, &s) && naive_reduct_sat(&e.upper_part, &m, &s);
        if reduct_eval(&f, &m, &s) != parts {
            return Err(violation("the nested reduct and the encoded reducts differ", &s, &m));
        }
    }
    Ok(())
}

/// `M ⊨ W` iff `M ⊨ NE(W)` iff `M ⊨ NE(W)^M`.
pub fn check_ne_satisfaction(w: &WeightConstraint) -> Result<(), String> {
    let f = ne_encode_wc(w).map_err(|e| e.to_string())?;
    for m in subsets(&w.domain()) {
        let sat = w.satisfied_by(&m);
        if sat != plain_eval(&f, &m) || sat != reduct_eval(&f, &m, &m) {
            return Err(format!("satisfaction differs at M = {{{m}}}"));
        }
    }
    Ok(())
}

/// `M ⊨ P` iff `M ⊨ NE(P)` iff `M ⊨ NE(P)^M`.
pub fn check_ne_program_models(p: &WeightProgram) -> Result<(), String> {
    let ne = ne_program(p).map_err(|e| e.to_string())?;
    for m in subsets(&p.atoms()) {
        let sat = p.satisfied_by(&m);
        let plain = ne.rules.iter().all(|r| !plain_eval(&r.body, &m) || plain_eval(&r.head, &m));
        if sat != plain || sat != reduct_model(&ne, &m, &m) {
            return Err(format!("models differ at M = {{{m}}}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Text helpers

pub fn wc_program(text: &str) -> WeightProgram {
    wclp_core::syntax::parse_wc(text).expect("well-formed weight constraint program")
}

pub fn agg_program(text: &str) -> AggregateProgram {
    wclp_core::syntax::parse_agg(text).expect("well-formed aggregate program")
}

pub fn ne_program_text(text: &str) -> NestedProgram {
    wclp_core::syntax::parse_ne(text).expect("well-formed nested program")
}

/// A single constraint, written as it would appear in a rule body.
pub fn constraint(text: &str) -> WeightConstraint {
    let mut p = wc_program(&format!("x :- {text}."));
    p.rules.remove(0).body.remove(0)
}

/// A single aggregate atom, e.g. `sum{p:1, q:2} >= 2`.
pub fn aggregate(text: &str) -> AggregateAtom {
    let mut p = agg_program(&format!("x :- {text}."));
    match p.rules.remove(0).body.remove(0) {
        BodyItem::Aggregate(a) => a,
        BodyItem::Literal(l) => panic!("`{l}` is not an aggregate"),
    }
}

pub fn nested(text: &str) -> NestedExpr {
    ne_program_text(&format!("x :- {text}.")).rules.remove(0).body
}

/// Models rendered the way the command line prints them.
pub fn show(models: &[Interpretation]) -> Vec<String> {
    models.iter().map(|m| m.to_string()).collect()
}
