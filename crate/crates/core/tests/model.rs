use proptest::prelude::*;
use wclp_core::*;
use wclp_testkit::*;

#[test]
fn weight_value_examples() {
    assert_eq!(weight_value(&constraint("1 [a=1, b=1] 1"), &interp(&["a"])), rat(1));
    let w = constraint("[not a=1] 0");
    assert_eq!(weight_value(&w, &interp(&["a"])), rat(0));
    assert_eq!(weight_value(&w, &interp(&[])), rat(1));
}

#[test]
fn weight_value_of_normalized_constraint() {
    let w = constraint("2 [not a1=1, a2=2, not b1=1, b2=2] 4");
    let m = interp(&["a2", "b2"]);
    // Independent fold: not a1 holds (1), a2 holds (2), not b1 holds (1), b2 holds (2).
    let expected: i64 = w
        .elements
        .iter()
        .map(|e| {
            let inside = m.contains(&e.literal.atom);
            if inside != e.literal.negated { e.weight.to_integer().try_into().unwrap() } else { 0 }
        })
        .sum();
    assert_eq!(expected, 6);
    assert_eq!(weight_value(&w, &m), rat(expected));
}

#[test]
fn satisfaction_examples() {
    let w = constraint("1 [a=1, not b=2] 2");
    assert!(satisfies_wc(&interp(&["a", "b"]), &w));
    assert!(!satisfies_wc(&interp(&["a"]), &w));
    assert!(satisfies_wc(&interp(&["q"]), &constraint("[]")));
    let a = constraint("2 [a=1, b=1, not c=1]");
    assert!(satisfies_wc(&interp(&["a"]), &a));
    assert!(!satisfies_wc(&interp(&["a", "c"]), &a));
    assert!(satisfies_wc(&interp(&["a", "b", "c"]), &a));
}

#[test]
fn lower_above_upper_is_unsatisfiable() {
    let w = constraint("3 [a=1, b=1] 1");
    assert!(subsets(&w.domain()).iter().all(|m| !satisfies_wc(m, &w)));
}

#[test]
fn duplicates_count_with_multiplicity() {
    let w = constraint("2 [p1=1, p1=1]");
    assert!(satisfies_wc(&interp(&["p1"]), &w));
    assert!(!satisfies_wc(&interp(&[]), &w));
}

#[test]
fn negative_weight_elimination_example() {
    let w = constraint("-1 [a1=-1, a2=2, not b1=1, not b2=-2] 1");
    assert_eq!(eliminate_negative_weights(&w), constraint("2 [not a1=1, a2=2, not b1=1, b2=2] 4"));
    let plain = constraint("1 [a=1] 2");
    assert_eq!(eliminate_negative_weights(&plain), plain);
    let open = constraint("[a=-1]");
    assert_eq!(eliminate_negative_weights(&open), constraint("[not a=1]"));
}

#[test]
fn program_satisfaction_examples() {
    let p = wc_program("a :- [not a=1] 0.");
    assert!(satisfies_program(&interp(&[]), &p));
    assert!(satisfies_program(&interp(&["a"]), &p));
    assert!(satisfies_program(&interp(&["z"]), &WeightProgram::default()));
    let q = wc_program("a :- [not a=1] 0. f :- not f, not a.");
    assert!(!satisfies_program(&interp(&[]), &q));
}

#[test]
fn to_basic_examples() {
    let p = wc_program("1 [a=1, b=1] 1 :- c.");
    assert_eq!(to_basic(&p, &interp(&["a"])), wc_program("a :- c."));
    assert!(to_basic(&p, &interp(&[])).is_empty());
    // The head is unsatisfied by {a, b}, but both atoms still get a rule.
    assert_eq!(to_basic(&p, &interp(&["a", "b"])), wc_program("a :- c. b :- c."));
    assert!(to_basic(&p, &interp(&["a", "b"])).is_basic());
}

#[test]
fn accessors() {
    let w = constraint("1 [a=1, not b=2, a=1, c=0] 3");
    assert_eq!(w.literals().len(), 3);
    assert_eq!(w.domain().len(), 3);
    let m = interp(&["a", "b", "z"]);
    assert_eq!(w.m_a(&m), interp(&["a"]));
    assert_eq!(w.m_b(&m), interp(&["b"]));
    assert_eq!(w.bounds.lower_bound(), ExactNumber::Finite(rat(1)));
    assert_eq!(constraint("[a=1]").bounds.lower_bound(), ExactNumber::NegInfinity);
    assert_eq!(constraint("[a=1]").bounds.upper_bound(), ExactNumber::PosInfinity);
    assert!(wc_program("a. b :- c.").is_basic());
    assert!(!wc_program("1 [a=1, b=1] 1.").is_basic());
    assert_eq!(wc_program("a :- 1 [b=1, not c=1].").atoms().len(), 3);
}

#[test]
fn atom_names() {
    for ok in ["a", "p(1)", "edge(a,-2)", "_x", "f(g(x))"] {
        assert!(Atom::new(ok).is_ok(), "{ok}");
    }
    for bad in ["", "1a", "not", "top", "bot", "a-b", "p(", "a b"] {
        assert!(Atom::new(bad).is_err(), "{bad}");
    }
    assert!(atom("b") > atom("a"));
}

#[test]
fn interpretation_display() {
    assert_eq!(interp(&["b", "a"]).to_string(), "a,b");
    assert_eq!(interp(&[]).to_string(), "");
    assert!(interp(&[]) < interp(&["a"]));
    assert!(interp(&["a", "b"]) < interp(&["b"]));
}

proptest! {
    #[test]
    fn elimination_preserves_satisfaction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let dom: Vec<Atom> = ["a", "b", "c", "d", "e"].iter().map(|n| atom(n)).collect();
        let w = random_constraint_over(&mut r, &dom, 6, (-3, 3), (-4, 4));
        let n = eliminate_negative_weights(&w);
        prop_assert!(!n.has_negative_weights());
        prop_assert_eq!(eliminate_negative_weights(&n), n.clone());
        prop_assert_eq!(n.lower().is_some(), w.lower().is_some());
        prop_assert_eq!(n.upper().is_some(), w.upper().is_some());
        for m in subsets(&w.domain()) {
            prop_assert_eq!(satisfies_wc(&m, &w), satisfies_wc(&m, &n));
        }
    }

    #[test]
    fn elimination_over_ten_atoms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let dom: Vec<Atom> = (0..10).map(|i| atom(&format!("p{i}"))).collect();
        let w = random_constraint_over(&mut r, &dom, 12, (-3, 3), (-6, 6));
        let n = eliminate_negative_weights(&w);
        for m in subsets(&w.domain()) {
            prop_assert_eq!(satisfies_wc(&m, &w), satisfies_wc(&m, &n));
        }
    }

    #[test]
    fn value_monotone_in_positive_atoms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let dom: Vec<Atom> = ["a", "b", "c", "d"].iter().map(|n| atom(n)).collect();
        let w = eliminate_negative_weights(&random_constraint_over(&mut r, &dom, 6, (-3, 3), (0, 4)));
        for m in subsets(&w.domain()) {
            for x in w.domain() {
                let mut bigger = m.clone();
                bigger.insert(x.clone());
                if !w.negative_atoms().contains(&x) {
                    prop_assert!(weight_value(&w, &bigger) >= weight_value(&w, &m));
                }
                if !w.positive_atoms().contains(&x) {
                    prop_assert!(weight_value(&w, &bigger) <= weight_value(&w, &m));
                }
            }
        }
    }

    #[test]
    fn value_depends_only_on_domain(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pool: Vec<Atom> = ["a", "b", "c", "d", "e"].iter().map(|n| atom(n)).collect();
        let w = random_constraint_over(&mut r, &pool[..3], 4, (-3, 3), (0, 4));
        let all = pool.iter().cloned().collect();
        for m in subsets(&all) {
            prop_assert_eq!(weight_value(&w, &m), weight_value(&w, &m.restrict(&w.domain())));
        }
    }
}
