//! Programs with nested expressions: satisfaction, reduct and stable models.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::engine::{self, AtomTable, EnumOptions, Mask, Search};
use crate::error::Result;
use crate::model::{Atom, Interpretation, Literal};

/// A formula over atoms, ⊤ and ⊥ built with `not`, `,` and `;`.
///
/// The variants can be built directly; [`NestedExpr::and`] and
/// [`NestedExpr::or`] additionally drop neutral elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NestedExpr {
    Top,
    Bottom,
    Atom(Atom),
    Not(Box<NestedExpr>),
    And(Vec<NestedExpr>),
    Or(Vec<NestedExpr>),
}

impl NestedExpr {
    pub fn atom(atom: Atom) -> NestedExpr {
        NestedExpr::Atom(atom)
    }

    pub fn literal(literal: &Literal) -> NestedExpr {
        let atom = NestedExpr::Atom(literal.atom.clone());
        if literal.negated {
            NestedExpr::negation(atom)
        } else {
            atom
        }
    }

    pub fn negation(f: NestedExpr) -> NestedExpr {
        NestedExpr::Not(Box::new(f))
    }

    /// Conjunction without ⊤ members; ⊥ if any member is ⊥.
    pub fn and(items: impl IntoIterator<Item = NestedExpr>) -> NestedExpr {
        let mut kept = Vec::new();
        for item in items {
            match item {
                NestedExpr::Top => {}
                NestedExpr::Bottom => return NestedExpr::Bottom,
                other => kept.push(other),
            }
        }
        match kept.len() {
            0 => NestedExpr::Top,
            1 => kept.pop().expect("one element"),
            _ => NestedExpr::And(kept),
        }
    }

    /// Disjunction without ⊥ members; ⊤ if any member is ⊤.
    pub fn or(items: impl IntoIterator<Item = NestedExpr>) -> NestedExpr {
        let mut kept = Vec::new();
        for item in items {
            match item {
                NestedExpr::Bottom => {}
                NestedExpr::Top => return NestedExpr::Top,
                other => kept.push(other),
            }
        }
        match kept.len() {
            0 => NestedExpr::Bottom,
            1 => kept.pop().expect("one element"),
            _ => NestedExpr::Or(kept),
        }
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        match self {
            NestedExpr::Top => true,
            NestedExpr::Bottom => false,
            NestedExpr::Atom(a) => m.contains(a),
            NestedExpr::Not(f) => !f.satisfied_by(m),
            NestedExpr::And(fs) => fs.iter().all(|f| f.satisfied_by(m)),
            NestedExpr::Or(fs) => fs.iter().any(|f| f.satisfied_by(m)),
        }
    }

    /// F^M: every `not G` becomes ⊥ if `M ⊨ G` and ⊤ otherwise.
    pub fn reduct(&self, m: &Interpretation) -> NestedExpr {
        match self {
            NestedExpr::Top | NestedExpr::Bottom | NestedExpr::Atom(_) => self.clone(),
            NestedExpr::Not(f) => {
                if f.satisfied_by(m) {
                    NestedExpr::Bottom
                } else {
                    NestedExpr::Top
                }
            }
            NestedExpr::And(fs) => NestedExpr::And(fs.iter().map(|f| f.reduct(m)).collect()),
            NestedExpr::Or(fs) => NestedExpr::Or(fs.iter().map(|f| f.reduct(m)).collect()),
        }
    }

    pub fn is_negation_free(&self) -> bool {
        match self {
            NestedExpr::Top | NestedExpr::Bottom | NestedExpr::Atom(_) => true,
            NestedExpr::Not(_) => false,
            NestedExpr::And(fs) | NestedExpr::Or(fs) => fs.iter().all(NestedExpr::is_negation_free),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out, true);
        out
    }

    /// Atoms with an occurrence outside the scope of any `not`.
    pub fn positive_atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out, false);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>, include_negated: bool) {
        match self {
            NestedExpr::Top | NestedExpr::Bottom => {}
            NestedExpr::Atom(a) => {
                out.insert(a.clone());
            }
            NestedExpr::Not(f) => {
                if include_negated {
                    f.collect_atoms(out, true)
                }
            }
            NestedExpr::And(fs) | NestedExpr::Or(fs) => {
                fs.iter().for_each(|f| f.collect_atoms(out, include_negated))
            }
        }
    }
}

pub fn satisfies_ne(m: &Interpretation, f: &NestedExpr) -> bool {
    f.satisfied_by(m)
}

pub fn ne_reduct(f: &NestedExpr, m: &Interpretation) -> NestedExpr {
    f.reduct(m)
}

/// `Head :- Body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NestedRule {
    pub head: NestedExpr,
    pub body: NestedExpr,
}

impl NestedRule {
    pub fn new(head: NestedExpr, body: NestedExpr) -> Self {
        NestedRule { head, body }
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        !self.body.satisfied_by(m) || self.head.satisfied_by(m)
    }

    pub fn reduct(&self, m: &Interpretation) -> NestedRule {
        NestedRule::new(self.head.reduct(m), self.body.reduct(m))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NestedProgram {
    pub rules: Vec<NestedRule>,
}

impl NestedProgram {
    pub fn new(rules: Vec<NestedRule>) -> Self {
        NestedProgram { rules }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            out.extend(r.head.atoms());
            out.extend(r.body.atoms());
        }
        out
    }

    pub fn satisfied_by(&self, m: &Interpretation) -> bool {
        self.rules.iter().all(|r| r.satisfied_by(m))
    }

    pub fn reduct(&self, m: &Interpretation) -> NestedProgram {
        NestedProgram::new(self.rules.iter().map(|r| r.reduct(m)).collect())
    }
}

/// `M` is a minimal model of P^M. Minimality is checked against every
/// proper subset of `M`.
pub fn is_stable_model_ne(p: &NestedProgram, m: &Interpretation) -> bool {
    let reduct = p.reduct(m);
    if !reduct.satisfied_by(m) {
        return false;
    }
    let atoms: Vec<&Atom> = m.iter().collect();
    atoms
        .iter()
        .powerset()
        .filter(|sub| sub.len() < atoms.len())
        .all(|sub| !reduct.satisfied_by(&sub.into_iter().map(|a| (*a).clone()).collect()))
}

/// A formula over numbered atoms.
#[derive(Clone, Debug)]
enum Compiled {
    Const(bool),
    Atom(Mask),
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
}

impl Compiled {
    fn new(f: &NestedExpr, table: &AtomTable) -> Compiled {
        match f {
            NestedExpr::Top => Compiled::Const(true),
            NestedExpr::Bottom => Compiled::Const(false),
            NestedExpr::Atom(a) => Compiled::Atom(table.bit(a)),
            NestedExpr::Not(g) => Compiled::Not(Box::new(Compiled::new(g, table))),
            NestedExpr::And(fs) => Compiled::And(fs.iter().map(|g| Compiled::new(g, table)).collect()),
            NestedExpr::Or(fs) => Compiled::Or(fs.iter().map(|g| Compiled::new(g, table)).collect()),
        }
    }

    fn eval(&self, m: Mask) -> bool {
        match self {
            Compiled::Const(v) => *v,
            Compiled::Atom(b) => m & b != 0,
            Compiled::Not(g) => !g.eval(m),
            Compiled::And(gs) => gs.iter().all(|g| g.eval(m)),
            Compiled::Or(gs) => gs.iter().any(|g| g.eval(m)),
        }
    }

    /// Kleene value under a partial assignment. When `reduct_of` is given,
    /// `not G` is the constant fixed by that interpretation.
    fn eval3(&self, fixed: Mask, open: Mask, reduct_of: Option<Mask>) -> Option<bool> {
        match self {
            Compiled::Const(v) => Some(*v),
            Compiled::Atom(b) => {
                if fixed & b != 0 {
                    Some(true)
                } else if open & b != 0 {
                    None
                } else {
                    Some(false)
                }
            }
            Compiled::Not(g) => match reduct_of {
                Some(m) => Some(!g.eval(m)),
                None => g.eval3(fixed, open, None).map(|v| !v),
            },
            Compiled::And(gs) => {
                let mut unknown = false;
                for g in gs {
                    match g.eval3(fixed, open, reduct_of) {
                        Some(false) => return Some(false),
                        None => unknown = true,
                        Some(true) => {}
                    }
                }
                (!unknown).then_some(true)
            }
            Compiled::Or(gs) => {
                let mut unknown = false;
                for g in gs {
                    match g.eval3(fixed, open, reduct_of) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                (!unknown).then_some(false)
            }
        }
    }
}

struct CompiledProgram {
    rules: Vec<(Compiled, Compiled)>,
}

impl CompiledProgram {
    fn violated(&self, fixed: Mask, open: Mask, reduct_of: Option<Mask>) -> bool {
        self.rules.iter().any(|(head, body)| {
            body.eval3(fixed, open, reduct_of) == Some(true)
                && head.eval3(fixed, open, reduct_of) == Some(false)
        })
    }

    fn is_model(&self, m: Mask) -> bool {
        !self.violated(m, 0, None)
    }
}

/// Looks for a model of P^M strictly inside `M`.
struct SmallerModel<'a> {
    program: &'a CompiledProgram,
    m: Mask,
}

impl Search for SmallerModel<'_> {
    fn refuted(&self, fixed: Mask, open: Mask) -> bool {
        self.program.violated(fixed, open, Some(self.m))
    }

    fn accepts(&self, n: Mask) -> bool {
        n != self.m
    }
}

struct StableSearch<'a> {
    program: &'a CompiledProgram,
}

impl Search for StableSearch<'_> {
    fn refuted(&self, fixed: Mask, open: Mask) -> bool {
        self.program.violated(fixed, open, None)
    }

    fn accepts(&self, m: Mask) -> bool {
        // M ⊨ P^M iff M ⊨ P, so only minimality remains.
        self.program.is_model(m)
            && engine::find(&SmallerModel { program: self.program, m }, m).is_none()
    }
}

pub fn stable_models_ne(p: &NestedProgram) -> Result<Vec<Interpretation>> {
    stable_models_ne_with(p, &EnumOptions::default())
}

/// All stable models, sorted. Atoms without an occurrence outside `not` in
/// some head are false in every stable model, so only the others are
/// enumerated.
pub fn stable_models_ne_with(p: &NestedProgram, options: &EnumOptions) -> Result<Vec<Interpretation>> {
    let atoms = p.atoms();
    options.check(atoms.len())?;
    let table = AtomTable::new(atoms);
    let program = CompiledProgram {
        rules: p
            .rules
            .iter()
            .map(|r| (Compiled::new(&r.head, &table), Compiled::new(&r.body, &table)))
            .collect(),
    };
    let candidates = p
        .rules
        .iter()
        .flat_map(|r| r.head.positive_atoms())
        .fold(0, |acc, a| acc | table.bit(&a));
    let found = engine::search(&StableSearch { program: &program }, candidates, options.jobs);
    Ok(engine::sorted(&table, found))
}
