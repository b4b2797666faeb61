//! Atoms, literals, weight constraints and weight programs.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{abs, ExactNumber, Rational};

/// A propositional atom, ordered by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Checks the name: a letter or underscore followed by letters, digits,
    /// underscores and balanced parenthesised groups such as `p(1)` or
    /// `edge(a,-2)`.
    pub fn new(name: &str) -> Result<Atom> {
        if is_valid_atom_name(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    pub(crate) fn unchecked(name: String) -> Atom {
        debug_assert!(is_valid_atom_name(&name), "{name}");
        Atom(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_valid_atom_name(name: &str) -> bool {
    let bytes = name.as_bytes();
    match bytes.first() {
        Some(b) if b.is_ascii_alphabetic() || *b == b'_' => {}
        _ => return false,
    }
    let mut depth = 0usize;
    for &b in bytes {
        match b {
            b'(' => depth += 1,
            b')' => {
                if depth == 0 {
                    return false;
                }
                depth -= 1;
            }
            b',' | b'-' if depth > 0 => {}
            _ if b.is_ascii_alphanumeric() || b == b'_' => {}
            _ => return false,
        }
    }
    depth == 0 && !matches!(name, "not" | "top" | "bot")
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal { atom, negated: false }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal { atom, negated: true }
    }

    pub fn flipped(&self) -> Literal {
        Literal { atom: self.atom.clone(), negated: !self.negated }
    }

    /// Truth of the literal in `m`.
    pub fn holds(&self, m: &Interpretation) -> bool {
        m.contains(&self.atom) != self.negated
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "not {}", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedLiteral {
    pub literal: Literal,
    pub weight: Rational,
}

impl WeightedLiteral {
    pub fn new(literal: Literal, weight: Rational) -> Self {
        WeightedLiteral { literal, weight }
    }
}

/// Lower and upper bound of a weight constraint; `None` is the missing
/// bound (−∞ below, +∞ above).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bounds {
    pub fn new(lower: Option<Rational>, upper: Option<Rational>) -> Self {
        Bounds { lower, upper }
    }

    pub fn lower_bound(&self) -> ExactNumber {
        self.lower.clone().map_or(ExactNumber::NegInfinity, ExactNumber::Finite)
    }

    pub fn upper_bound(&self) -> ExactNumber {
        self.upper.clone().map_or(ExactNumber::PosInfinity, ExactNumber::Finite)
    }

    pub fn contains(&self, value: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| l <= value)
            && self.upper.as_ref().is_none_or(|u| value <= u)
    }
}

/// `l [a1=w, ..., not b1=w, ...] u` over a multiset of weighted literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightConstraint {
    pub bounds: Bounds,
    pub elements: Vec<WeightedLiteral>,
}

impl WeightConstraint {
    pub fn new(
        lower: Option<Rational>,
        elements: Vec<WeightedLiteral>,
        upper: Option<Rational>,
    ) -> Self {
        WeightConstraint { bounds: Bounds::new(lower, upper), elements }
    }

    /// The shorthand `1 [l=1] 1`.
    pub fn literal(literal: Literal) -> Self {
        let one = Rational::from_integer(1.into());
        WeightConstraint::new(
            Some(one.clone()),
            vec![WeightedLiteral::new(literal, one.clone())],
            Some(one),
        )
    }

    /// If this constraint is the `1 [l=1] 1` shorthand, the literal.
    pub fn as_literal(&self) -> Option<&Literal> {
        let one = Rational::from_integer(1.into());
        match self.elements.as_slice() {
            [e] if e.weight == one
                && self.bounds.lower.as_ref() == Some(&one)
                && self.bounds.upper.as_ref() == Some(&one) =>
            {
                Some(&e.literal)
            }
            _ => None,
        }
    }

    pub fn lower(&self) -> Option<&Rational> {
        self.bounds.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&Rational> {
        self.bounds.upper.as_ref()
    }

    /// lit(W): the set of literals occurring in the constraint.
    pub fn literals(&self) -> BTreeSet<Literal> {
        self.elements.iter().map(|e| e.literal.clone()).collect()
    }

    /// Dom(W): the atoms occurring in the constraint, either sign.
    pub fn domain(&self) -> BTreeSet<Atom> {
        self.elements.iter().map(|e| e.literal.atom.clone()).collect()
    }

    /// Atoms occurring positively.
    pub fn positive_atoms(&self) -> BTreeSet<Atom> {
        self.elements
            .iter()
            .filter(|e| !e.literal.negated)
            .map(|e| e.literal.atom.clone())
            .collect()
    }

    /// Atoms occurring under `not`.
    pub fn negative_atoms(&self) -> BTreeSet<Atom> {
        self.elements
            .iter()
            .filter(|e| e.literal.negated)
            .map(|e| e.literal.atom.clone())
            .collect()
    }

    /// M_a(W): atoms of `m` occurring positively in the constraint.
    pub fn m_a(&self, m: &Interpretation) -> Interpretation {
        self.positive_atoms().into_iter().filter(|a| m.contains(a)).collect()
    }

    /// M_b(W): atoms of `m` occurring under `not` in the constraint.
    pub fn m_b(&self, m: &Interpretation) -> Interpretation {
        self.negative_atoms().into_iter().filter(|a| m.contains(a)).collect()
    }

    /// Sum of all weights, with multiplicity.
    pub fn total_weight(&self) -> Rational {
        self.elements.iter().map(|e| &e.weight).sum()
    }

    pub fn has_negative_weights(&self) -> bool {
        self.elements.iter().any(|e| e.weight.is_negative())
    }

    pub fn has_negative_literals(&self) -> bool {
        self.elements.iter().any(|e| e.literal.negated)
    }

    /// Some atom occurs both as `a` and as `not a` once negative weights
    /// are eliminated. The reduct treats the two occurrences separately,
    /// while conditional satisfaction only sees their combined effect, so
    /// for such constraints the two semantics can disagree in either
    /// direction.
    pub fn has_complementary_literals(&self) -> bool {
        let w = self.eliminate_negative_weights();
        !w.positive_atoms().is_disjoint(&w.negative_atoms())
    }

    /// w(W, M): positive elements true in `m` plus negative elements whose
    /// atom is outside `m`, counted with multiplicity.
    pub fn weight_value(&self, m: &Interpretation) -> Rational {
        self.elements
            .iter()
            .filter(|e| e.literal.holds(m))
            .map(|e| &e.weight)
            .sum()
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        self.bounds.contains(&self.weight_value(m))
    }

    /// Replaces `a=w` (w < 0) by `not a=|w|` and likewise for not-atoms,
    /// raising both present bounds by |w|.
    pub fn eliminate_negative_weights(&self) -> WeightConstraint {
        let mut shift = Rational::zero();
        let elements = self
            .elements
            .iter()
            .map(|e| {
                if e.weight.is_negative() {
                    let w = abs(&e.weight);
                    shift += &w;
                    WeightedLiteral::new(e.literal.flipped(), w)
                } else {
                    e.clone()
                }
            })
            .collect();
        WeightConstraint::new(
            self.bounds.lower.as_ref().map(|l| l + &shift),
            elements,
            self.bounds.upper.as_ref().map(|u| u + &shift),
        )
    }
}

pub fn weight_value(w: &WeightConstraint, m: &Interpretation) -> Rational {
    w.weight_value(m)
}

pub fn satisfies_wc(m: &Interpretation, w: &WeightConstraint) -> bool {
    w.satisfied_by(m)
}

pub fn eliminate_negative_weights(w: &WeightConstraint) -> WeightConstraint {
    w.eliminate_negative_weights()
}

/// `W0 :- W1, ..., Wn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightRule {
    pub head: WeightConstraint,
    pub body: Vec<WeightConstraint>,
}

impl WeightRule {
    pub fn new(head: WeightConstraint, body: Vec<WeightConstraint>) -> Self {
        WeightRule { head, body }
    }

    pub fn body_satisfied_by(&self, m: &Interpretation) -> bool {
        self.body.iter().all(|w| w.satisfied_by(m))
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        !self.body_satisfied_by(m) || self.head.satisfied_by(m)
    }

    /// The atom of a `1 [a=1] 1` head.
    pub fn basic_head(&self) -> Option<&Atom> {
        self.head.as_literal().filter(|l| !l.negated).map(|l| &l.atom)
    }

    pub fn normalized(&self) -> WeightRule {
        WeightRule::new(
            self.head.eliminate_negative_weights(),
            self.body.iter().map(WeightConstraint::eliminate_negative_weights).collect(),
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightProgram {
    pub rules: Vec<WeightRule>,
}

impl WeightProgram {
    pub fn new(rules: Vec<WeightRule>) -> Self {
        WeightProgram { rules }
    }

    /// At(P): every atom occurring anywhere in the program.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut atoms = BTreeSet::new();
        for rule in &self.rules {
            atoms.extend(rule.head.domain());
            for w in &rule.body {
                atoms.extend(w.domain());
            }
        }
        atoms
    }

    /// Every head is `1 [a=1] 1` for an atom `a`.
    /// Some head or body constraint has complementary literals.
    pub fn has_complementary_literals(&self) -> bool {
        self.rules
            .iter()
            .any(|r| r.head.has_complementary_literals() || r.body.iter().any(|w| w.has_complementary_literals()))
    }

    pub fn is_basic(&self) -> bool {
        self.rules.iter().all(|r| r.basic_head().is_some())
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        self.rules.iter().all(|r| r.satisfied_by(m))
    }

    pub fn normalized(&self) -> WeightProgram {
        WeightProgram::new(self.rules.iter().map(WeightRule::normalized).collect())
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

impl FromIterator<WeightRule> for WeightProgram {
    fn from_iter<T: IntoIterator<Item = WeightRule>>(iter: T) -> Self {
        WeightProgram::new(iter.into_iter().collect())
    }
}

pub fn satisfies_program(m: &Interpretation, p: &WeightProgram) -> bool {
    p.satisfied_by(m)
}

/// One rule `p :- body` for every positive head literal `p` that is in `m`,
/// regardless of whether `m` satisfies the head.
pub fn to_basic(p: &WeightProgram, m: &Interpretation) -> WeightProgram {
    let mut out = Vec::new();
    for rule in &p.rules {
        let head = rule.head.eliminate_negative_weights();
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

/// A finite set of atoms.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation(BTreeSet<Atom>);

impl Interpretation {
    pub fn new() -> Self {
        Interpretation(BTreeSet::new())
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        self.0.insert(atom)
    }

    pub fn remove(&mut self, atom: &Atom) -> bool {
        self.0.remove(atom)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    /// The atoms of `self` that are in `domain`.
    pub fn restrict(&self, domain: &BTreeSet<Atom>) -> Interpretation {
        Interpretation(self.0.intersection(domain).cloned().collect())
    }

    pub fn difference(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.difference(&other.0).cloned().collect())
    }

    pub fn union(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.union(&other.0).cloned().collect())
    }
}

impl From<BTreeSet<Atom>> for Interpretation {
    fn from(atoms: BTreeSet<Atom>) -> Self {
        Interpretation(atoms)
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Interpretation {
    type Item = &'a Atom;
    type IntoIter = std::collections::btree_set::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Comma-separated atoms in order; the empty set renders as nothing.
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::int;

    fn at(name: &str) -> Atom {
        Atom::new(name).unwrap()
    }

    fn interp(names: &[&str]) -> Interpretation {
        names.iter().map(|n| at(n)).collect()
    }

    fn el(name: &str, negated: bool, w: i64) -> WeightedLiteral {
        WeightedLiteral::new(Literal { atom: at(name), negated }, int(w))
    }

    #[test]
    fn atom_names() {
        for ok in ["a", "p(1)", "p(-1)", "edge(a,b)", "_x", "f(g(1),2)", "a_1"] {
            assert!(Atom::new(ok).is_ok(), "{ok}");
        }
        for bad in ["", "1a", "a-b", "p(", "p)", "p(1))", "not", "top", "bot", "a b", "-a"] {
            assert!(Atom::new(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn interpretations_order_lexicographically() {
        let mut models = [interp(&["b"]), interp(&["a", "b"]), interp(&[]), interp(&["a"])];
        models.sort();
        let shown: Vec<String> = models.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["", "a", "a,b", "b"]);
    }

    #[test]
    fn value_counts_duplicates() {
        let w = WeightConstraint::new(Some(int(2)), vec![el("p1", false, 1), el("p1", false, 1)], None);
        assert_eq!(w.weight_value(&interp(&["p1"])), int(2));
        assert!(w.satisfied_by(&interp(&["p1"])));
    }

    #[test]
    fn shorthand_literal_round_trips() {
        let w = WeightConstraint::literal(Literal::neg(at("a")));
        assert_eq!(w.as_literal(), Some(&Literal::neg(at("a"))));
        assert!(WeightConstraint::new(Some(int(1)), vec![el("a", false, 1)], None)
            .as_literal()
            .is_none());
    }

    #[test]
    fn to_basic_ignores_head_satisfaction() {
        let head = WeightConstraint::new(
            Some(int(2)),
            vec![el("a", false, 1), el("b", false, 1)],
            Some(int(2)),
        );
        let p = WeightProgram::new(vec![WeightRule::new(head, vec![])]);
        let basic = to_basic(&p, &interp(&["a"]));
        assert_eq!(basic.rules.len(), 1);
        assert_eq!(basic.rules[0].basic_head(), Some(&at("a")));
        assert!(to_basic(&p, &Interpretation::new()).is_empty());
    }
}
