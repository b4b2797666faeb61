//! Weight constraint programs as programs with nested expressions.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Atom, Literal, WeightConstraint, WeightProgram, WeightRule};
use crate::nested::{NestedExpr, NestedProgram, NestedRule};
use crate::number::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeOptions {
    /// Constraints with larger domains are refused; the encoding may have
    /// exponentially many disjuncts.
    pub domain_cap: usize,
    /// Wrap the head formula in `not not` when the head constraint has
    /// not-atoms. Without it a head such as `1 [a=1, not b=1] 1` can be
    /// satisfied through `not b` in the reduct, which admits stable models
    /// that are not answer sets.
    pub guard_negative_heads: bool,
    /// Drop a `(l; not l)` conjunct when every disjunct of the head formula
    /// already contains `l`.
    pub simplify_heads: bool,
}

impl Default for NeOptions {
    fn default() -> Self {
        NeOptions { domain_cap: 12, guard_negative_heads: true, simplify_heads: false }
    }
}

/// A partial assignment to the domain: atoms fixed true and atoms fixed
/// false; the rest are free.
struct Cube {
    positive: Vec<Atom>,
    negative: Vec<Atom>,
}

impl Cube {
    fn literals(&self) -> Vec<Literal> {
        self.positive
            .iter()
            .map(|a| Literal::pos(a.clone()))
            .chain(self.negative.iter().map(|a| Literal::neg(a.clone())))
            .collect()
    }
}

/// The maximal cubes (fewest fixed atoms) whose least and greatest value
/// over all completions pass `accept`, as a disjunction of conjunctions,
/// atoms before not-atoms, disjuncts in lexicographic order.
fn cube_cover(
    w: &WeightConstraint,
    cap: usize,
    accept: impl Fn(&Rational, &Rational) -> bool,
) -> Result<NestedExpr> {
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
    if per_atom.len() > cap {
        return Err(Error::DomainLimit { size: per_atom.len(), cap });
    }
    let atoms: Vec<(Atom, Rational, Rational)> =
        per_atom.into_iter().map(|(a, (i, o))| (a, i, o)).collect();
    // 0 free, 1 true, 2 false
    let valid = |state: &[u8]| {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for ((_, when_in, when_out), s) in atoms.iter().zip(state) {
            match s {
                1 => {
                    lo += when_in;
                    hi += when_in;
                }
                2 => {
                    lo += when_out;
                    hi += when_out;
                }
                _ => {
                    lo += when_in.min(when_out);
                    hi += when_in.max(when_out);
                }
            }
        }
        accept(&lo, &hi)
    };
    let mut cubes: Vec<Vec<Literal>> = Vec::new();
    let mut state = vec![0u8; atoms.len()];
    let total = 3usize.pow(atoms.len() as u32);
    for code in 0..total {
        let mut c = code;
        for s in state.iter_mut() {
            *s = (c % 3) as u8;
            c /= 3;
        }
        if !valid(&state) {
            continue;
        }
        let maximal = (0..state.len()).filter(|&i| state[i] != 0).all(|i| {
            let mut freed = state.clone();
            freed[i] = 0;
            !valid(&freed)
        });
        if maximal {
            let pick = |wanted: u8| {
                atoms
                    .iter()
                    .zip(&state)
                    .filter(|(_, s)| **s == wanted)
                    .map(|((a, _, _), _)| a.clone())
                    .collect()
            };
            cubes.push(Cube { positive: pick(1), negative: pick(2) }.literals());
        }
    }
    cubes.sort();
    Ok(NestedExpr::or(
        cubes.iter().map(|lits| NestedExpr::and(lits.iter().map(NestedExpr::literal))),
    ))
}

fn within(w: &WeightConstraint) -> impl Fn(&Rational, &Rational) -> bool + '_ {
    |lo, hi| w.lower().is_none_or(|l| lo >= l) && w.upper().is_none_or(|u| hi <= u)
}

/// NE(W): a disjunction of conjunctions of literals that holds exactly in
/// the interpretations satisfying `W`. Each disjunct fixes as few atoms as
/// possible, so `S ⊨ NE(W)^M` coincides with `S ⊨_M W`.
pub fn ne_encode_wc(w: &WeightConstraint) -> Result<NestedExpr> {
    ne_encode_wc_with(w, NeOptions::default().domain_cap)
}

pub fn ne_encode_wc_with(w: &WeightConstraint, cap: usize) -> Result<NestedExpr> {
    cube_cover(w, cap, within(w))
}

/// `(l1; not l1), ..., (lp; not lp), NE(W0)` for the atoms `li` occurring
/// positively in `W0`.
fn head_formula(head: &WeightConstraint, options: &NeOptions) -> Result<NestedExpr> {
    let head = head.eliminate_negative_weights();
    let encoded = ne_encode_wc_with(&head, options.domain_cap)?;
    let guarded = options.guard_negative_heads
        && head.has_negative_literals()
        && !matches!(encoded, NestedExpr::Top | NestedExpr::Bottom);
    let mut conjuncts = Vec::new();
    for atom in head.positive_atoms() {
        if options.simplify_heads && !guarded && in_every_disjunct(&encoded, &atom) {
            continue;
        }
        let a = NestedExpr::atom(atom);
        conjuncts.push(NestedExpr::Or(vec![a.clone(), NestedExpr::negation(a)]));
    }
    conjuncts.push(if guarded {
        NestedExpr::negation(NestedExpr::negation(encoded))
    } else {
        encoded
    });
    Ok(NestedExpr::and(conjuncts))
}

fn in_every_disjunct(f: &NestedExpr, atom: &Atom) -> bool {
    let disjuncts = match f {
        NestedExpr::Or(ds) => ds.as_slice(),
        other => std::slice::from_ref(other),
    };
    !disjuncts.is_empty()
        && disjuncts.iter().all(|d| match d {
            NestedExpr::Atom(a) => a == atom,
            NestedExpr::And(cs) => cs.iter().any(|c| matches!(c, NestedExpr::Atom(a) if a == atom)),
            _ => false,
        })
}

pub fn ne_program(p: &WeightProgram) -> Result<NestedProgram> {
    ne_program_with(p, &NeOptions::default())
}

/// NE(P): one nested rule per weight rule, head as in [`head_formula`] and
/// body the conjunction of NE(Wi).
pub fn ne_program_with(p: &WeightProgram, options: &NeOptions) -> Result<NestedProgram> {
    translate(p, options, |w| ne_encode_wc_with(w, options.domain_cap))
}

pub fn fl_program(p: &WeightProgram) -> Result<NestedProgram> {
    fl_program_with(p, &NeOptions::default())
}

/// Like NE(P), except that a body constraint `l [S] u` becomes
/// `NE(l [S]), not G` where `G` encodes "the value of `S` exceeds `u`".
/// The upper bound is thus read as "not greater than", which introduces
/// double negation.
pub fn fl_program_with(p: &WeightProgram, options: &NeOptions) -> Result<NestedProgram> {
    translate(p, options, |w| {
        let lower = cube_cover(w, options.domain_cap, |lo, _| w.lower().is_none_or(|l| lo >= l))?;
        let Some(u) = w.upper() else { return Ok(lower) };
        let exceeds = cube_cover(w, options.domain_cap, |lo, _| lo > u)?;
        Ok(NestedExpr::and([lower, NestedExpr::negation(exceeds)]))
    })
}

fn translate(
    p: &WeightProgram,
    options: &NeOptions,
    body: impl Fn(&WeightConstraint) -> Result<NestedExpr>,
) -> Result<NestedProgram> {
    p.rules
        .iter()
        .map(|WeightRule { head, body: constraints }| {
            Ok(NestedRule::new(
                head_formula(head, options)?,
                NestedExpr::and(constraints.iter().map(&body).collect::<Result<Vec<_>>>()?),
            ))
        })
        .collect::<Result<Vec<_>>>()
        .map(NestedProgram::new)
}
