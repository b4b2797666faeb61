use proptest::prelude::*;
use wclp_core::*;
use wclp_testkit::*;

fn formulas() -> impl Strategy<Value = NestedExpr> {
    any::<u64>().prop_map(|seed| {
        let atoms: Vec<Atom> = ["a", "b", "c", "d"].iter().map(|n| atom(n)).collect();
        random_nested(&mut rng(seed), &atoms, 4)
    })
}

fn programs() -> impl Strategy<Value = NestedProgram> {
    any::<u64>().prop_map(|seed| random_nested_program(&mut rng(seed), 4, 4))
}

#[test]
fn satisfaction_examples() {
    assert!(satisfies_ne(&interp(&[]), &nested("not a")));
    assert!(satisfies_ne(&interp(&["a"]), &nested("not not a")));
    assert!(!satisfies_ne(&interp(&[]), &nested("not not a")));
    assert!(satisfies_ne(&interp(&["q"]), &nested("top")));
    assert!(!satisfies_ne(&interp(&["q"]), &nested("bot")));

    let f = nested("(a, not b); (b, not a)");
    let sat: Vec<Interpretation> = subsets(&f.atoms()).into_iter().filter(|m| satisfies_ne(m, &f)).collect();
    assert_eq!(show(&sat), ["a", "b"]);
}

#[test]
fn empty_connectives() {
    assert!(NestedExpr::And(vec![]).satisfied_by(&interp(&[])));
    assert!(!NestedExpr::Or(vec![]).satisfied_by(&interp(&[])));
    assert_eq!(NestedExpr::and([]), NestedExpr::Top);
    assert_eq!(NestedExpr::or([]), NestedExpr::Bottom);
    assert_eq!(NestedExpr::and([nested("a"), NestedExpr::Bottom]), NestedExpr::Bottom);
    assert_eq!(NestedExpr::or([nested("a"), NestedExpr::Bottom]), nested("a"));
}

#[test]
fn reduct_examples() {
    assert_eq!(ne_reduct(&nested("not a"), &interp(&[])), NestedExpr::Top);
    assert_eq!(ne_reduct(&nested("not a"), &interp(&["a"])), NestedExpr::Bottom);
    assert_eq!(ne_reduct(&nested("not not a"), &interp(&["a"])), NestedExpr::Top);
    assert_eq!(ne_reduct(&nested("not not a"), &interp(&[])), NestedExpr::Bottom);
    assert_eq!(ne_reduct(&nested("a, not b"), &interp(&["a"])), NestedExpr::And(vec![nested("a"), NestedExpr::Top]));
    assert_eq!(ne_reduct(&nested("a; b"), &interp(&[])), nested("a; b"));
}

#[test]
fn stable_model_examples() {
    let cases: [(&str, &[&str]); 7] = [
        ("a :- a.", &[""]),
        ("a :- not not a.", &["", "a"]),
        ("a; not a.", &["", "a"]),
        ("a :- not b. b :- not a.", &["a", "b"]),
        ("a; b.", &["a", "b"]),
        ("a :- not a.", &[]),
        ("a, b :- top. c :- a, not d.", &["a,b,c"]),
    ];
    for (text, expected) in cases {
        let p = ne_program_text(text);
        assert_eq!(show(&stable_models_ne(&p).unwrap()), expected, "{text}");
        for m in subsets(&p.atoms()) {
            assert_eq!(is_stable_model_ne(&p, &m), expected.contains(&m.to_string().as_str()), "{text} {{{m}}}");
        }
    }
    assert_eq!(show(&stable_models_ne(&NestedProgram::default()).unwrap()), [""]);
}

#[test]
fn constraints_and_bottom_heads() {
    let p = ne_program_text("a; b. bot :- a.");
    assert_eq!(show(&stable_models_ne(&p).unwrap()), ["b"]);
}

#[test]
fn enumeration_cap_is_a_refusal() {
    let text: String = (0..30).map(|i| format!("p{i}; q{i}. ")).collect();
    let p = ne_program_text(&text);
    assert_eq!(stable_models_ne(&p), Err(Error::AtomLimit { atoms: 60, cap: DEFAULT_MAX_ATOMS }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduct_is_negation_free_and_idempotent(f in formulas()) {
        for m in subsets(&f.atoms()) {
            let r = ne_reduct(&f, &m);
            prop_assert!(r.is_negation_free());
            prop_assert_eq!(ne_reduct(&r, &m), r.clone());
        }
    }

    #[test]
    fn reduct_matches_oracle(f in formulas()) {
        for m in subsets(&f.atoms()) {
            prop_assert_eq!(satisfies_ne(&m, &f), plain_eval(&f, &m));
            for s in subsets(&f.atoms()) {
                prop_assert_eq!(ne_reduct(&f, &m).satisfied_by(&s), reduct_eval(&f, &m, &s));
            }
        }
    }

    #[test]
    fn reducts_are_monotone(f in formulas()) {
        let all = subsets(&f.atoms());
        for m in &all {
            let r = ne_reduct(&f, m);
            for s in all.iter().filter(|s| r.satisfied_by(s)) {
                for n in all.iter().filter(|n| s.is_subset(n)) {
                    prop_assert!(r.satisfied_by(n));
                }
            }
        }
    }

    #[test]
    fn satisfaction_agrees_with_own_reduct(f in formulas()) {
        for m in subsets(&f.atoms()) {
            prop_assert_eq!(satisfies_ne(&m, &f), ne_reduct(&f, &m).satisfied_by(&m));
        }
    }

    #[test]
    fn solver_matches_naive(p in programs()) {
        prop_assert_eq!(stable_models_ne(&p).unwrap(), naive_stable_models_ne(&p));
    }

    #[test]
    fn parallel_matches_sequential(p in programs()) {
        let options = EnumOptions { jobs: 4, ..EnumOptions::default() };
        prop_assert_eq!(stable_models_ne_with(&p, &options).unwrap(), stable_models_ne(&p).unwrap());
    }
}
