//! Bitmask evaluation of weight constraints and the pruned enumerator that
//! backs every `*_models` / `*_sets` function.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Atom, Interpretation, WeightConstraint, WeightProgram};
use crate::number::Rational;

/// Interpretations are packed into a `u64`, so no program may exceed this
/// many atoms whatever the configured cap.
pub const HARD_ATOM_LIMIT: usize = 64;

pub const DEFAULT_MAX_ATOMS: usize = 22;

/// Limits for exhaustive model enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Programs with more atoms than this are refused.
    pub max_atoms: usize,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { max_atoms: DEFAULT_MAX_ATOMS, jobs: 1 }
    }
}

impl EnumOptions {
    pub(crate) fn check(&self, atoms: usize) -> Result<()> {
        if atoms > HARD_ATOM_LIMIT {
            return Err(Error::HardAtomLimit { atoms, limit: HARD_ATOM_LIMIT });
        }
        if atoms > self.max_atoms {
            return Err(Error::AtomLimit { atoms, cap: self.max_atoms });
        }
        Ok(())
    }
}

pub(crate) type Mask = u64;

pub(crate) fn bit(i: usize) -> Mask {
    1 << i
}

/// Dense numbering of a fixed atom set.
#[derive(Clone, Debug)]
pub(crate) struct AtomTable {
    atoms: Vec<Atom>,
    index: BTreeMap<Atom, usize>,
}

impl AtomTable {
    pub(crate) fn new(atoms: BTreeSet<Atom>) -> Self {
        let atoms: Vec<Atom> = atoms.into_iter().collect();
        let index = atoms.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        AtomTable { atoms, index }
    }

    pub(crate) fn index(&self, atom: &Atom) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub(crate) fn bit(&self, atom: &Atom) -> Mask {
        self.index(atom).map_or(0, bit)
    }

    pub(crate) fn interpretation(&self, mask: Mask) -> Interpretation {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & bit(*i) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    }
}

/// Integer arithmetic used after scaling a constraint to integral weights.
pub(crate) trait Weight:
    Clone + Ord + Debug + Send + Sync + Zero + for<'a> std::ops::AddAssign<&'a Self>
{
}

impl Weight for i64 {}

impl Weight for BigInt {}

#[derive(Clone, Debug)]
struct Term<N> {
    bit: Mask,
    pos: N,
    neg: N,
    delta: N,
}

/// A normalized weight constraint over numbered atoms.
///
/// Each atom `x` contributes `pos(x)` when true and `neg(x)` when false, so
/// the value of `m` is `base + Σ_{x∈m} delta(x)`.
#[derive(Clone, Debug)]
pub(crate) struct Linear<N> {
    base: N,
    terms: Vec<Term<N>>,
    lower: Option<N>,
    upper: Option<N>,
    /// Every atom of the domain.
    pub(crate) support: Mask,
    /// Atoms that occur positively (with any weight, after normalization).
    pub(crate) positive: Mask,
}

impl<N: Weight> Linear<N> {
    pub(crate) fn value(&self, m: Mask) -> N {
        let mut v = self.base.clone();
        for t in &self.terms {
            if m & t.bit != 0 {
                v += &t.delta;
            }
        }
        v
    }

    fn in_bounds(&self, v: &N) -> bool {
        self.lower.as_ref().is_none_or(|l| l <= v) && self.upper.as_ref().is_none_or(|u| v <= u)
    }

    pub(crate) fn satisfied(&self, m: Mask) -> bool {
        self.in_bounds(&self.value(m))
    }

    /// Least and greatest value over all `i` with `fixed ⊆ i ⊆ fixed ∪ open`.
    pub(crate) fn range(&self, fixed: Mask, open: Mask) -> (N, N) {
        let mut lo = self.base.clone();
        let mut hi = self.base.clone();
        for t in &self.terms {
            if fixed & t.bit != 0 {
                lo += &t.delta;
                hi += &t.delta;
            } else if open & t.bit != 0 {
                if t.delta < N::zero() {
                    lo += &t.delta;
                } else {
                    hi += &t.delta;
                }
            }
        }
        (lo, hi)
    }

    /// Every `i` between `fixed` and `fixed ∪ open` satisfies the constraint.
    pub(crate) fn surely(&self, fixed: Mask, open: Mask) -> bool {
        let (lo, hi) = self.range(fixed, open);
        self.in_bounds(&lo) && self.in_bounds(&hi)
    }

    /// No `i` between `fixed` and `fixed ∪ open` satisfies the constraint.
    pub(crate) fn surely_not(&self, fixed: Mask, open: Mask) -> bool {
        let (lo, hi) = self.range(fixed, open);
        self.lower.as_ref().is_some_and(|l| &hi < l) || self.upper.as_ref().is_some_and(|u| &lo > u)
    }

    /// R ⊨_S W with `r ⊆ s`.
    pub(crate) fn cond_satisfied(&self, r: Mask, s: Mask) -> bool {
        self.surely(r, s & !r)
    }

    /// The value does not exceed the upper bound at `m`.
    pub(crate) fn upper_ok(&self, m: Mask) -> bool {
        self.upper.as_ref().is_none_or(|u| &self.value(m) <= u)
    }

    /// `s` satisfies the reduct of the constraint with respect to `m`:
    /// `Σ_{x∈s} pos(x) ≥ l − Σ_{x∉m} neg(x)`.
    pub(crate) fn reduct_satisfied(&self, s: Mask, m: Mask) -> bool {
        let Some(l) = &self.lower else { return true };
        let mut v = N::zero();
        for t in &self.terms {
            if s & t.bit != 0 {
                v += &t.pos;
            }
            if m & t.bit == 0 {
                v += &t.neg;
            }
        }
        &v >= l
    }
}

fn lcm_denominators<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// The scale includes every denominator, so the product is integral.
fn scaled(v: &Rational, scale: &BigInt) -> BigInt {
    (v * Rational::from_integer(scale.clone())).to_integer()
}

/// Compiles a constraint, normalizing negative weights first.
fn compile_big(w: &WeightConstraint, table: &AtomTable) -> Linear<BigInt> {
    let w = w.eliminate_negative_weights();
    let scale = lcm_denominators(
        w.elements.iter().map(|e| &e.weight).chain(w.lower()).chain(w.upper()),
    );
    let mut per_atom: BTreeMap<usize, (BigInt, BigInt)> = BTreeMap::new();
    let mut positive = 0;
    for e in &w.elements {
        let i = table.index(&e.literal.atom).expect("atom registered in table");
        let entry = per_atom.entry(i).or_insert_with(|| (BigInt::zero(), BigInt::zero()));
        let weight = scaled(&e.weight, &scale);
        if e.literal.negated {
            entry.1 += weight;
        } else {
            entry.0 += weight;
            positive |= bit(i);
        }
    }
    let mut base = BigInt::zero();
    let mut terms = Vec::with_capacity(per_atom.len());
    let mut support = 0;
    for (i, (pos, neg)) in per_atom {
        base += &neg;
        support |= bit(i);
        let delta = &pos - &neg;
        terms.push(Term { bit: bit(i), pos, neg, delta });
    }
    Linear {
        base,
        terms,
        lower: w.lower().map(|l| scaled(l, &scale)),
        upper: w.upper().map(|u| scaled(u, &scale)),
        support,
        positive,
    }
}

const SMALL_LIMIT: i64 = 1 << 60;

fn to_small(c: &Linear<BigInt>) -> Option<Linear<i64>> {
    let mut magnitude = BigInt::zero();
    for t in &c.terms {
        magnitude += t.pos.abs() + t.neg.abs();
    }
    for b in c.lower.iter().chain(&c.upper) {
        magnitude += b.abs();
    }
    if magnitude >= BigInt::from(SMALL_LIMIT) {
        return None;
    }
    let small = |v: &BigInt| v.to_i64().expect("checked magnitude");
    Some(Linear {
        base: small(&c.base),
        terms: c
            .terms
            .iter()
            .map(|t| Term { bit: t.bit, pos: small(&t.pos), neg: small(&t.neg), delta: small(&t.delta) })
            .collect(),
        lower: c.lower.as_ref().map(small),
        upper: c.upper.as_ref().map(small),
        support: c.support,
        positive: c.positive,
    })
}

#[derive(Clone, Debug)]
pub(crate) struct Rule<N> {
    pub(crate) head: Linear<N>,
    pub(crate) body: Vec<Linear<N>>,
}

impl<N: Weight> Rule<N> {
    fn satisfied(&self, m: Mask) -> bool {
        !self.body.iter().all(|b| b.satisfied(m)) || self.head.satisfied(m)
    }

    /// No completion of the partial assignment satisfies this rule.
    fn surely_violated(&self, fixed: Mask, open: Mask) -> bool {
        self.head.surely_not(fixed, open) && self.body.iter().all(|b| b.surely(fixed, open))
    }
}

/// A weight program over numbered atoms, with all constraints in the same
/// integer representation.
#[derive(Clone, Debug)]
pub(crate) struct Program<N> {
    pub(crate) rules: Vec<Rule<N>>,
    /// Atoms occurring positively in some head; every other atom is false
    /// in any stable model or answer set.
    pub(crate) heads: Mask,
}

impl<N: Weight> Program<N> {
    pub(crate) fn is_model(&self, m: Mask) -> bool {
        self.rules.iter().all(|r| r.satisfied(m))
    }

    pub(crate) fn refuted(&self, fixed: Mask, open: Mask) -> bool {
        self.rules.iter().any(|r| r.surely_violated(fixed, open))
    }

    /// Least fixpoint of the reduct of the program with respect to `m`.
    pub(crate) fn reduct_closure(&self, m: Mask) -> Mask {
        let active: Vec<&Rule<N>> = self
            .rules
            .iter()
            .filter(|r| r.head.positive & m != 0 && r.body.iter().all(|b| b.upper_ok(m)))
            .collect();
        let mut s = 0;
        loop {
            let mut next = s;
            for r in &active {
                if r.body.iter().all(|b| b.reduct_satisfied(s, m)) {
                    next |= r.head.positive & m;
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Least fixpoint of K over the instance of the program with respect to `m`.
    pub(crate) fn k_closure(&self, m: Mask) -> Mask {
        let instance: Vec<&Rule<N>> = self
            .rules
            .iter()
            .filter(|r| r.head.positive & m != 0 && r.head.satisfied(m))
            .collect();
        let mut r = 0;
        loop {
            let mut next = r;
            for rule in &instance {
                if rule.body.iter().all(|b| b.cond_satisfied(r, m)) {
                    next |= rule.head.positive & m;
                }
            }
            if next == r {
                return r;
            }
            r = next;
        }
    }

    pub(crate) fn is_stable(&self, m: Mask) -> bool {
        self.is_model(m) && self.reduct_closure(m) == m
    }

    pub(crate) fn is_answer_set(&self, m: Mask) -> bool {
        self.is_model(m) && self.k_closure(m) == m
    }
}

fn compile_rules(p: &WeightProgram, table: &AtomTable) -> Vec<Rule<BigInt>> {
    p.rules
        .iter()
        .map(|r| Rule {
            head: compile_big(&r.head, table),
            body: r.body.iter().map(|b| compile_big(b, table)).collect(),
        })
        .collect()
}

/// A compiled program in whichever representation fits.
pub(crate) enum Compiled {
    Small(Program<i64>),
    Big(Program<BigInt>),
}

pub(crate) fn compile(p: &WeightProgram, table: &AtomTable) -> Compiled {
    let big = compile_rules(p, table);
    let heads = big.iter().fold(0, |acc, r| acc | r.head.positive);
    let small: Option<Vec<Rule<i64>>> = big
        .iter()
        .map(|r| {
            Some(Rule {
                head: to_small(&r.head)?,
                body: r.body.iter().map(to_small).collect::<Option<_>>()?,
            })
        })
        .collect();
    match small {
        Some(rules) => Compiled::Small(Program { rules, heads }),
        None => Compiled::Big(Program { rules: big, heads }),
    }
}

#[cfg(test)]
pub(crate) fn compile_constraint(w: &WeightConstraint, table: &AtomTable) -> Linear<BigInt> {
    compile_big(w, table)
}

/// A search problem over subsets of a set of candidate atoms.
pub(crate) trait Search: Sync {
    /// No set `m` with `fixed ⊆ m ⊆ fixed ∪ open` is accepted.
    fn refuted(&self, fixed: Mask, open: Mask) -> bool;
    fn accepts(&self, m: Mask) -> bool;
}

fn dfs<S: Search + ?Sized>(s: &S, bits: &[Mask], fixed: Mask, out: &mut Vec<Mask>) {
    let open = bits.iter().fold(0, |acc, b| acc | b);
    if s.refuted(fixed, open) {
        return;
    }
    match bits.split_first() {
        None => {
            if s.accepts(fixed) {
                out.push(fixed);
            }
        }
        Some((b, rest)) => {
            dfs(s, rest, fixed, out);
            dfs(s, rest, fixed | b, out);
        }
    }
}

/// Every accepted subset of `candidates`, in no particular order.
pub(crate) fn search<S: Search>(s: &S, candidates: Mask, jobs: usize) -> Vec<Mask> {
    let bits: Vec<Mask> = (0..HARD_ATOM_LIMIT).map(bit).filter(|b| candidates & b != 0).collect();
    if jobs <= 1 || bits.len() < 4 {
        let mut out = Vec::new();
        dfs(s, &bits, 0, &mut out);
        return out;
    }
    let split = ((jobs * 8).next_power_of_two().trailing_zeros() as usize).min(bits.len() - 1);
    let (prefix, rest) = bits.split_at(split);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        (0..1u64 << split)
            .into_par_iter()
            .flat_map_iter(|choice| {
                let fixed = prefix
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| choice & (1 << i) != 0)
                    .fold(0, |acc, (_, b)| acc | b);
                let mut out = Vec::new();
                dfs(s, rest, fixed, &mut out);
                out
            })
            .collect()
    })
}

/// Finds one accepted subset of `candidates`, trying smaller sets first
/// along each branch.
pub(crate) fn find<S: Search + ?Sized>(s: &S, candidates: Mask) -> Option<Mask> {
    fn go<S: Search + ?Sized>(s: &S, bits: &[Mask], fixed: Mask) -> Option<Mask> {
        let open = bits.iter().fold(0, |acc, b| acc | b);
        if s.refuted(fixed, open) {
            return None;
        }
        match bits.split_first() {
            None => s.accepts(fixed).then_some(fixed),
            Some((b, rest)) => go(s, rest, fixed).or_else(|| go(s, rest, fixed | b)),
        }
    }
    let bits: Vec<Mask> = (0..HARD_ATOM_LIMIT).map(bit).filter(|b| candidates & b != 0).collect();
    go(s, &bits, 0)
}

pub(crate) fn sorted(table: &AtomTable, masks: Vec<Mask>) -> Vec<Interpretation> {
    let mut out: Vec<Interpretation> = masks.into_iter().map(|m| table.interpretation(m)).collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum WcSemantics {
    Stable,
    Answer,
}

struct WcSearch<'a, N> {
    program: &'a Program<N>,
    semantics: WcSemantics,
}

impl<N: Weight> Search for WcSearch<'_, N> {
    fn refuted(&self, fixed: Mask, open: Mask) -> bool {
        self.program.refuted(fixed, open)
    }

    fn accepts(&self, m: Mask) -> bool {
        match self.semantics {
            WcSemantics::Stable => self.program.is_stable(m),
            WcSemantics::Answer => self.program.is_answer_set(m),
        }
    }
}

pub(crate) fn enumerate_wc(
    p: &WeightProgram,
    semantics: WcSemantics,
    options: &EnumOptions,
) -> Result<Vec<Interpretation>> {
    let atoms = p.atoms();
    options.check(atoms.len())?;
    let table = AtomTable::new(atoms);
    let masks = match compile(p, &table) {
        Compiled::Small(prog) => {
            search(&WcSearch { program: &prog, semantics }, prog.heads, options.jobs)
        }
        Compiled::Big(prog) => {
            search(&WcSearch { program: &prog, semantics }, prog.heads, options.jobs)
        }
    };
    Ok(sorted(&table, masks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Literal, WeightedLiteral};
    use crate::number::parse_rational;

    fn at(n: &str) -> Atom {
        Atom::new(n).unwrap()
    }

    #[test]
    fn fractional_weights_scale_exactly() {
        // 1/2 [a=1/3, not b=1/6] 1/2
        let w = WeightConstraint::new(
            Some(parse_rational("1/2").unwrap()),
            vec![
                WeightedLiteral::new(Literal::pos(at("a")), parse_rational("1/3").unwrap()),
                WeightedLiteral::new(Literal::neg(at("b")), parse_rational("1/6").unwrap()),
            ],
            Some(parse_rational("1/2").unwrap()),
        );
        let table = AtomTable::new(w.domain());
        let c = compile_constraint(&w, &table);
        for mask in 0..4u64 {
            let m = table.interpretation(mask);
            assert_eq!(c.satisfied(mask), w.satisfied_by(&m), "{m:?}");
        }
    }

    #[test]
    fn huge_weights_fall_back_to_big_integers() {
        let huge = Rational::from_integer(BigInt::from(1u8) << 80);
        let w = WeightConstraint::new(
            Some(huge.clone()),
            vec![WeightedLiteral::new(Literal::pos(at("a")), huge)],
            None,
        );
        let p = WeightProgram::new(vec![crate::model::WeightRule::new(
            WeightConstraint::literal(Literal::pos(at("a"))),
            vec![w],
        )]);
        let table = AtomTable::new(p.atoms());
        assert!(matches!(compile(&p, &table), Compiled::Big(_)));
        let models = enumerate_wc(&p, WcSemantics::Stable, &EnumOptions::default()).unwrap();
        assert_eq!(models, vec![Interpretation::new()]);
    }

    #[test]
    fn cap_is_enforced() {
        let rules = (0..5)
            .map(|i| {
                crate::model::WeightRule::new(
                    WeightConstraint::literal(Literal::pos(at(&format!("a{i}")))),
                    vec![],
                )
            })
            .collect();
        let p = WeightProgram::new(rules);
        let options = EnumOptions { max_atoms: 4, jobs: 1 };
        assert_eq!(
            enumerate_wc(&p, WcSemantics::Stable, &options),
            Err(Error::AtomLimit { atoms: 5, cap: 4 })
        );
    }
}
