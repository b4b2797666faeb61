//! Ground aggregate programs and their answer sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::engine::{self, AtomTable, EnumOptions, Mask, Search};
use crate::error::{Error, Result};
use crate::model::{Atom, Interpretation, Literal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AggFunc {
    Sum,
    Count,
    Avg,
    Max,
    Min,
}

impl AggFunc {
    pub const ALL: [AggFunc; 5] = [AggFunc::Sum, AggFunc::Count, AggFunc::Avg, AggFunc::Max, AggFunc::Min];

    pub fn name(self) -> &'static str {
        match self {
            AggFunc::Sum => "sum",
            AggFunc::Count => "count",
            AggFunc::Avg => "avg",
            AggFunc::Max => "max",
            AggFunc::Min => "min",
        }
    }

    pub fn from_name(name: &str) -> Option<AggFunc> {
        AggFunc::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for AggFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelOp {
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

impl RelOp {
    pub const ALL: [RelOp; 6] = [RelOp::Eq, RelOp::Ne, RelOp::Lt, RelOp::Gt, RelOp::Le, RelOp::Ge];

    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
            RelOp::Lt => "<",
            RelOp::Gt => ">",
            RelOp::Le => "<=",
            RelOp::Ge => ">=",
        }
    }

    pub fn from_symbol(symbol: &str) -> Option<RelOp> {
        RelOp::ALL.into_iter().find(|op| op.symbol() == symbol)
    }

    pub fn holds<T: Ord>(self, lhs: T, rhs: T) -> bool {
        match self {
            RelOp::Eq => lhs == rhs,
            RelOp::Ne => lhs != rhs,
            RelOp::Lt => lhs < rhs,
            RelOp::Gt => lhs > rhs,
            RelOp::Le => lhs <= rhs,
            RelOp::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for RelOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One member `p(a)` of the aggregate domain together with its value `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AggElement {
    pub atom: Atom,
    pub value: i64,
}

impl AggElement {
    pub fn new(atom: Atom, value: i64) -> Self {
        AggElement { atom, value }
    }
}

/// `func{p1:a1, ..., pn:an} op result`; the element list is a multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AggregateAtom {
    pub func: AggFunc,
    pub elements: Vec<AggElement>,
    pub op: RelOp,
    pub result: i64,
}

impl AggregateAtom {
    pub fn new(func: AggFunc, elements: Vec<AggElement>, op: RelOp, result: i64) -> Self {
        AggregateAtom { func, elements, op, result }
    }

    /// Dom(A).
    pub fn domain(&self) -> BTreeSet<Atom> {
        self.elements.iter().map(|e| e.atom.clone()).collect()
    }

    /// The values of the elements whose atom is in `m`, with multiplicity.
    pub fn selection(&self, m: &Interpretation) -> Vec<i64> {
        self.elements.iter().filter(|e| m.contains(&e.atom)).map(|e| e.value).collect()
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        evaluate(self.func, &self.selection(m), self.op, self.result)
    }
}

/// Applies the function and the comparison. AVG, MAX and MIN of an empty
/// selection have no value, and the comparison fails whatever the operator.
pub fn evaluate(func: AggFunc, values: &[i64], op: RelOp, result: i64) -> bool {
    let result = i128::from(result);
    let sum = || values.iter().map(|&v| i128::from(v)).sum::<i128>();
    match func {
        AggFunc::Sum => op.holds(sum(), result),
        AggFunc::Count => op.holds(values.len() as i128, result),
        // sum / n op k  <=>  sum op k * n  for n > 0
        AggFunc::Avg if !values.is_empty() => op.holds(sum(), result * values.len() as i128),
        AggFunc::Max => values.iter().max().is_some_and(|&v| op.holds(i128::from(v), result)),
        AggFunc::Min => values.iter().min().is_some_and(|&v| op.holds(i128::from(v), result)),
        AggFunc::Avg => false,
    }
}

pub fn satisfies_agg(m: &Interpretation, a: &AggregateAtom) -> bool {
    a.satisfied_by(m)
}

/// R ⊨_S A: `R ⊨ A` and every `I` with `R∩Dom(A) ⊆ I ⊆ S∩Dom(A)` satisfies
/// `A`, checked by enumerating the interval.
pub fn cond_satisfies_agg(r: &Interpretation, s: &Interpretation, a: &AggregateAtom) -> bool {
    if !a.satisfied_by(r) {
        return false;
    }
    let domain = a.domain();
    let low = r.restrict(&domain);
    let high = s.restrict(&domain);
    if !low.is_subset(&high) {
        return true;
    }
    let free: Vec<Atom> = high.difference(&low).iter().cloned().collect();
    (0u64..1 << free.len()).all(|choice| {
        let mut i = low.clone();
        for (k, atom) in free.iter().enumerate() {
            if choice & (1 << k) != 0 {
                i.insert(atom.clone());
            }
        }
        a.satisfied_by(&i)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BodyItem {
    Aggregate(AggregateAtom),
    Literal(Literal),
}

impl BodyItem {
    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        match self {
            BodyItem::Aggregate(a) => a.satisfied_by(m),
            BodyItem::Literal(l) => l.holds(m),
        }
    }

    /// Plain literals read as in normal programs: `a` against `R`,
    /// `not b` against `S`.
    pub fn cond_satisfied_by(&self, r: &Interpretation, s: &Interpretation) -> bool {
        match self {
            BodyItem::Aggregate(a) => cond_satisfies_agg(r, s, a),
            BodyItem::Literal(l) if l.negated => !s.contains(&l.atom),
            BodyItem::Literal(l) => r.contains(&l.atom),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        match self {
            BodyItem::Aggregate(a) => a.domain(),
            BodyItem::Literal(l) => BTreeSet::from([l.atom.clone()]),
        }
    }
}

/// `h :- A1, ..., An`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AggregateRule {
    pub head: Atom,
    pub body: Vec<BodyItem>,
}

impl AggregateRule {
    pub fn new(head: Atom, body: Vec<BodyItem>) -> Self {
        AggregateRule { head, body }
    }

    pub fn body_satisfied_by(&self, m: &Interpretation) -> bool {
        self.body.iter().all(|b| b.satisfied_by(m))
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        m.contains(&self.head) || !self.body_satisfied_by(m)
    }

    pub fn aggregates(&self) -> impl Iterator<Item = &AggregateAtom> + '_ {
        self.body.iter().filter_map(|b| match b {
            BodyItem::Aggregate(a) => Some(a),
            BodyItem::Literal(_) => None,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AggregateProgram {
    pub rules: Vec<AggregateRule>,
}

impl AggregateProgram {
    pub fn new(rules: Vec<AggregateRule>) -> Self {
        AggregateProgram { rules }
    }

    /// At(P).
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut atoms = BTreeSet::new();
        for rule in &self.rules {
            atoms.insert(rule.head.clone());
            for item in &rule.body {
                atoms.extend(item.atoms());
            }
        }
        atoms
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        self.rules.iter().all(|r| r.satisfied_by(m))
    }
}

/// Least fixpoint of `R ↦ K_P(R, M)` from the empty set. Iterates are
/// accumulated: when `M ⊨ P` the chain is increasing anyway, and otherwise
/// the plain iteration may oscillate.
pub fn agg_kp_fixpoint(p: &AggregateProgram, m: &Interpretation) -> Interpretation {
    let mut r = Interpretation::new();
    loop {
        let derived: Interpretation = p
            .rules
            .iter()
            .filter(|rule| rule.body.iter().all(|b| b.cond_satisfied_by(&r, m)))
            .map(|rule| rule.head.clone())
            .collect();
        let next = r.union(&derived);
        if next == r {
            return r;
        }
        r = next;
    }
}

/// `M ⊨ P` and `M = K_P^∞(∅, M)`.
pub fn is_agg_answer_set(p: &AggregateProgram, m: &Interpretation) -> bool {
    p.satisfied_by(m) && agg_kp_fixpoint(p, m) == *m
}

struct AggSearch<'a> {
    program: &'a AggregateProgram,
    table: &'a AtomTable,
    /// Per rule: the head bit and the atoms the rule mentions.
    rules: Vec<(Mask, Mask)>,
}

impl Search for AggSearch<'_> {
    fn refuted(&self, fixed: Mask, open: Mask) -> bool {
        // Only rules whose atoms are all decided can be checked.
        let decided: Vec<usize> = self
            .rules
            .iter()
            .enumerate()
            .filter(|(_, (_, atoms))| atoms & open == 0)
            .map(|(i, _)| i)
            .collect();
        if decided.is_empty() {
            return false;
        }
        let m = self.table.interpretation(fixed);
        decided.into_iter().any(|i| !self.program.rules[i].satisfied_by(&m))
    }

    fn accepts(&self, m: Mask) -> bool {
        is_agg_answer_set(self.program, &self.table.interpretation(m))
    }
}

/// Refuses what the weight constraint translation cannot express: `!=`
/// outside COUNT and empty element lists. The answer set definition itself
/// covers both, so the solver does not call this.
pub fn check_supported(p: &AggregateProgram) -> Result<()> {
    for (i, rule) in p.rules.iter().enumerate() {
        for a in rule.aggregates() {
            if a.elements.is_empty() {
                return Err(Error::EmptyAggregate { rule: Some(i + 1) });
            }
            if a.op == RelOp::Ne && a.func != AggFunc::Count {
                return Err(Error::UnsupportedAggregate { rule: Some(i + 1), func: a.func.name().to_string() });
            }
        }
    }
    Ok(())
}

pub fn agg_answer_sets(p: &AggregateProgram) -> Result<Vec<Interpretation>> {
    agg_answer_sets_with(p, &EnumOptions::default())
}

/// All answer sets, sorted.
pub fn agg_answer_sets_with(p: &AggregateProgram, options: &EnumOptions) -> Result<Vec<Interpretation>> {
    let atoms = p.atoms();
    options.check(atoms.len())?;
    let table = AtomTable::new(atoms);
    let rules: Vec<(Mask, Mask)> = p
        .rules
        .iter()
        .map(|r| {
            let head = table.bit(&r.head);
            let body = r.body.iter().flat_map(|b| b.atoms()).fold(0, |acc, a| acc | table.bit(&a));
            (head, head | body)
        })
        .collect();
    let heads = rules.iter().fold(0, |acc, (h, _)| acc | h);
    let search = AggSearch { program: p, table: &table, rules };
    Ok(engine::sorted(&table, engine::search(&search, heads, options.jobs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(n: &str) -> Atom {
        Atom::new(n).unwrap()
    }

    #[test]
    fn empty_selection() {
        for op in RelOp::ALL {
            for func in [AggFunc::Avg, AggFunc::Max, AggFunc::Min] {
                assert!(!evaluate(func, &[], op, 0), "{func} {op}");
            }
        }
        assert!(evaluate(AggFunc::Count, &[], RelOp::Ge, 0));
        assert!(evaluate(AggFunc::Sum, &[], RelOp::Eq, 0));
    }

    #[test]
    fn average_is_exact() {
        // avg{1, 2} = 3/2
        assert!(evaluate(AggFunc::Avg, &[1, 2], RelOp::Gt, 1));
        assert!(evaluate(AggFunc::Avg, &[1, 2], RelOp::Lt, 2));
        assert!(!evaluate(AggFunc::Avg, &[1, 2], RelOp::Eq, 1));
        assert!(evaluate(AggFunc::Avg, &[-3, 1], RelOp::Eq, -1));
    }

    #[test]
    fn literal_items_follow_normal_programs() {
        let r = Interpretation::new();
        let s: Interpretation = [at("b")].into_iter().collect();
        assert!(!BodyItem::Literal(Literal::neg(at("b"))).cond_satisfied_by(&r, &s));
        assert!(BodyItem::Literal(Literal::neg(at("c"))).cond_satisfied_by(&r, &s));
        assert!(!BodyItem::Literal(Literal::pos(at("b"))).cond_satisfied_by(&r, &s));
    }
}
