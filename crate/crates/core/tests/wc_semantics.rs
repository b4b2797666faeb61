use proptest::prelude::*;
use wclp_core::*;
use wclp_testkit::*;

const SELF_SUPPORT: &str = "a :- [not a=1] 0.";
const MINIMAL_CIRCULAR: &str = "a :- [not a=1] 0. f :- not f, not a.";
const NOT_CIRCULAR: &str = "b :- 1 [not b=1]. b :- [not b=1] 0.";

fn small_programs() -> impl Strategy<Value = WeightProgram> {
    any::<u64>().prop_map(|seed| random_wc_program(&mut rng(seed), &WcShape::default()))
}

/// Programs in which no constraint mentions an atom under both signs; the
/// relation between the two semantics only holds for these (see
/// `complementary_literals_break_inclusion`).
fn clean_programs() -> impl Strategy<Value = WeightProgram> {
    small_programs().prop_filter("complementary literals", |p| !p.has_complementary_literals())
}

#[test]
fn reduct_constraint_examples() {
    let r = reduct_constraint(&constraint("[not a=1] 0"), &interp(&["a"]));
    assert_eq!(r.lower, None);
    assert!(r.elements.is_empty());
    assert!(r.satisfied_by(&interp(&[])));

    let r = reduct_constraint(&constraint("1 [not b=1]"), &interp(&["b"]));
    assert_eq!(r.lower, Some(rat(1)));
    assert!(r.elements.is_empty());
    assert!(!r.satisfied_by(&interp(&["b"])));

    let r = reduct_constraint(&constraint("1 [a=1, b=2] 3"), &interp(&[]));
    assert_eq!(r.to_constraint(), constraint("1 [a=1, b=2]"));

    // Negative weights are eliminated first: [a=-1] -1 is [not a=1] 0.
    let r = reduct_constraint(&constraint("[a=-1] -1"), &interp(&["a"]));
    assert_eq!(r.to_constraint(), constraint("[]"));
}

#[test]
fn reduct_program_examples() {
    let p = wc_program(SELF_SUPPORT);
    assert_eq!(reduct_program(&p, &interp(&["a"])), wc_program("a :- []."));
    assert!(reduct_program(&p, &interp(&[])).is_empty());
    let q = wc_program("a :- 0 [not a=3] 2.");
    assert_eq!(reduct_program(&q, &interp(&["a"])), wc_program("a :- 0 []."));
    let reduct = reduct_program(&wc_program("1 [a=1, b=1, not c=1] 2 :- 1 [d=1, not e=2]."), &interp(&["a", "b"]));
    assert_eq!(reduct, wc_program("a :- -1 [d=1]. b :- -1 [d=1]."));
}

#[test]
fn tp_closure_examples() {
    assert_eq!(tp_closure(&wc_program("a :- [].")).unwrap(), interp(&["a"]));
    assert_eq!(tp_closure(&wc_program("a :- 1 [b=1].")).unwrap(), interp(&[]));
    assert_eq!(tp_closure(&wc_program("a :- []. b :- 1 [a=1].")).unwrap(), interp(&["a", "b"]));
    assert_eq!(tp_closure(&wc_program("b :- 1 [a=1]. a :- [].")).unwrap(), interp(&["a", "b"]));
    assert_eq!(tp_closure(&wc_program("c :- 2 [a=1, b=1]. b :- 1 [a=1]. a.")).unwrap(), interp(&["a", "b", "c"]));
}

#[test]
fn tp_closure_rejects_non_monotone_programs() {
    for text in ["a :- not b.", "1 [a=1, b=1] 1.", "a :- [b=1] 2."] {
        let err = tp_closure(&wc_program(text)).unwrap_err();
        assert!(matches!(err, Error::NotBasicMonotone { .. }), "{text}: {err}");
        assert!(err.is_refusal());
    }
}

#[test]
fn stable_model_examples() {
    let p = wc_program(SELF_SUPPORT);
    assert!(is_stable_model(&p, &interp(&[])));
    assert!(is_stable_model(&p, &interp(&["a"])));
    assert_eq!(show(&stable_models(&p).unwrap()), ["", "a"]);

    let q = wc_program(MINIMAL_CIRCULAR);
    assert!(is_stable_model(&q, &interp(&["a"])));
    assert_eq!(show(&stable_models(&q).unwrap()), ["a"]);

    assert!(is_stable_model(&wc_program(NOT_CIRCULAR), &interp(&["b"])));
    assert_eq!(show(&stable_models(&WeightProgram::default()).unwrap()), [""]);
}

#[test]
fn stable_models_of_tr_example() {
    let tr = wc_program("a :- 0 [not a=3], 1 [a=3].");
    assert_eq!(show(&stable_models(&tr).unwrap()), [""]);
    let p = wc_program("a :- 0 [not a=3] 2.");
    assert_eq!(show(&stable_models(&p).unwrap()), ["", "a"]);
    assert_eq!(show(&answer_sets(&p).unwrap()), [""]);
}

#[test]
fn conditional_satisfaction_examples() {
    assert!(!cond_satisfies_wc(&interp(&[]), &interp(&["b"]), &constraint("1 [not b=1]")));
    assert!(!cond_satisfies_wc(&interp(&[]), &interp(&["a"]), &constraint("[not a=1] 0")));
    // Monotone constraint: the interval adds nothing.
    assert!(cond_satisfies_wc(&interp(&["a"]), &interp(&["a", "b"]), &constraint("1 [a=1, b=1]")));
    // The top of the interval counts: {a, b} breaks the upper bound.
    assert!(!cond_satisfies_wc(&interp(&["a"]), &interp(&["a", "b"]), &constraint("1 [a=1, b=1] 1")));
}

#[test]
fn conditional_satisfaction_at_r_equals_s() {
    let mut r = rng(7);
    let dom: Vec<Atom> = ["a", "b", "c", "d"].iter().map(|n| atom(n)).collect();
    for _ in 0..200 {
        let w = random_constraint_over(&mut r, &dom, 4, (-2, 3), (-1, 4));
        for m in subsets(&w.domain()) {
            assert_eq!(cond_satisfies_wc(&m, &m, &w), satisfies_wc(&m, &w));
        }
    }
}

#[test]
fn instance_examples() {
    let p = wc_program("1 [a=1, b=1] 1 :- c.");
    assert_eq!(instance_of(&p, &interp(&["a"])), wc_program("a :- c."));
    assert!(instance_of(&p, &interp(&["a", "b"])).is_empty());
    let q = wc_program(NOT_CIRCULAR);
    assert_eq!(instance_of(&q, &interp(&["b"])), q);
}

#[test]
fn kp_fixpoint_examples() {
    let p = wc_program(SELF_SUPPORT);
    assert_eq!(kp_fixpoint(&p, &interp(&["a"])).unwrap(), interp(&[]));
    let q = wc_program(NOT_CIRCULAR);
    assert_eq!(kp_fixpoint(&q, &interp(&["b"])).unwrap(), interp(&[]));
    assert_eq!(kp_fixpoint(&wc_program("a :- []."), &interp(&["a"])).unwrap(), interp(&["a"]));
    assert!(matches!(kp_fixpoint(&wc_program("1 [a=1, b=1]."), &interp(&[])), Err(Error::NotBasic { .. })));
}

#[test]
fn answer_set_examples() {
    let p = wc_program(SELF_SUPPORT);
    assert!(is_answer_set(&p, &interp(&[])));
    assert!(!is_answer_set(&p, &interp(&["a"])));
    assert_eq!(show(&answer_sets(&p).unwrap()), [""]);
    assert!(!is_answer_set(&wc_program(NOT_CIRCULAR), &interp(&["b"])));
    assert!(answer_sets(&wc_program(NOT_CIRCULAR)).unwrap().is_empty());
    assert_eq!(show(&answer_sets(&WeightProgram::default()).unwrap()), [""]);
}

#[test]
fn strong_satisfiability_examples() {
    for text in ["1 [a=1, b=2] 2", "1 [a=1, not b=2] 3", "1 [a=1, not b=2]"] {
        assert!(strongly_satisfiable(&constraint(text)), "{text}");
    }
    let w = constraint("1 [a=1, not b=2] 2");
    assert!(!strongly_satisfiable(&w));
    assert!(!strongly_satisfiable_by(&w, &interp(&["a", "b"])));
    assert!(!syntactically_strongly_satisfiable(&w));

    let a = constraint("2 [a=1, b=1, not c=1]");
    assert!(strongly_satisfiable(&a));
    assert!(syntactically_strongly_satisfiable(&a));

    assert!(strongly_satisfiable(&constraint("0 [a=5, b=1] 1")));
    assert!(!strongly_satisfiable(&constraint("[not a=1] 0")));
}

#[test]
fn strong_satisfiability_by_any_model_without_upper_bound_or_not_atoms() {
    let all = ["a", "b", "c"].iter().map(|n| atom(n)).collect();
    for text in ["2 [a=1, not b=1]", "1 [a=2, b=1] 2", "[a=1, c=3] 0"] {
        let w = constraint(text);
        for m in subsets(&all) {
            assert!(strongly_satisfiable_by(&w, &m), "{text} / {m}");
        }
    }
}

#[test]
fn circularity_examples() {
    assert_eq!(is_circular(&wc_program(SELF_SUPPORT), &interp(&["a"])).unwrap(), Some(interp(&["a"])));
    let q = wc_program(MINIMAL_CIRCULAR);
    assert_eq!(is_circular(&q, &interp(&["a"])).unwrap(), Some(interp(&["a"])));
    assert_eq!(is_circular(&wc_program(NOT_CIRCULAR), &interp(&["b"])).unwrap(), None);
    assert!(matches!(
        is_circular(&wc_program(SELF_SUPPORT), &interp(&["b"])),
        Err(Error::NotStableModel { .. })
    ));
}

#[test]
fn circularity_witness_is_smallest_then_lexicographic() {
    let p = wc_program("a :- [not a=1] 0. b :- [not b=1] 0. c :- a, b.");
    let m = interp(&["a", "b", "c"]);
    assert!(is_stable_model(&p, &m));
    assert_eq!(is_circular(&p, &m).unwrap(), Some(interp(&["a"])));
}

#[test]
fn minimal_model_can_be_circular() {
    let p = wc_program(MINIMAL_CIRCULAR);
    let m = interp(&["a"]);
    assert!(satisfies_program(&m, &p));
    assert!(!satisfies_program(&interp(&[]), &p));
}

#[test]
fn report_examples() {
    let r = report(&wc_program(SELF_SUPPORT), &interp(&["a"]));
    assert!(r.is_stable && !r.is_answer_set);
    assert_eq!(r.is_circular, Some(true));
    assert_eq!(r.circularity_witness, Some(interp(&["a"])));
    let r = report(&wc_program(NOT_CIRCULAR), &interp(&["b"]));
    assert_eq!((r.is_stable, r.is_answer_set, r.is_circular), (true, false, Some(false)));
    let r = report(&wc_program(SELF_SUPPORT), &interp(&["x"]));
    assert_eq!((r.is_stable, r.is_circular), (false, None));
    let all = reports(&wc_program(SELF_SUPPORT), &EnumOptions::default()).unwrap();
    assert_eq!(all.len(), 2);
}

#[test]
fn enumeration_cap_is_a_refusal() {
    let text: String = (0..30).map(|i| format!("p{i} :- not q{i}.\n")).collect();
    let p = wc_program(&text);
    let err = stable_models(&p).unwrap_err();
    assert_eq!(err, Error::AtomLimit { atoms: 60, cap: DEFAULT_MAX_ATOMS });
    assert!(err.to_string().contains("--max-atoms"));
    assert_eq!(answer_sets_with(&p, &EnumOptions { max_atoms: 60, jobs: 1 }).unwrap().len(), 1);
    let wide: String = (0..70).map(|i| format!("p{i}.\n")).collect();
    let err = stable_models_with(&wc_program(&wide), &EnumOptions { max_atoms: 100, jobs: 1 }).unwrap_err();
    assert!(matches!(err, Error::HardAtomLimit { .. }));
}

#[test]
fn parallel_enumeration_matches_sequential() {
    let mut r = rng(11);
    let shape = WcShape { atoms: 8, max_rules: 8, ..WcShape::default() };
    for _ in 0..50 {
        let p = random_wc_program(&mut r, &shape);
        let par = EnumOptions { jobs: 4, ..EnumOptions::default() };
        assert_eq!(stable_models_with(&p, &par).unwrap(), stable_models(&p).unwrap());
        assert_eq!(answer_sets_with(&p, &par).unwrap(), answer_sets(&p).unwrap());
    }
}

#[test]
fn fractional_weights() {
    let p = wc_program("a :- 1/2 [b=1/3, c=1/6]. b. c :- 1 [b=2/3, not d=1/3].");
    assert_eq!(show(&stable_models(&p).unwrap()), ["a,b,c"]);
    assert_eq!(stable_models(&p).unwrap(), naive_stable_models(&p));
    assert_eq!(answer_sets(&p).unwrap(), naive_answer_sets(&p));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumerators_match_definitions(p in small_programs()) {
        prop_assert_eq!(stable_models(&p).unwrap(), naive_stable_models(&p));
        prop_assert_eq!(answer_sets(&p).unwrap(), naive_answer_sets(&p));
    }

    #[test]
    fn answer_sets_are_stable_models(p in clean_programs()) {
        let stable = stable_models(&p).unwrap();
        for m in answer_sets(&p).unwrap() {
            prop_assert!(stable.contains(&m));
        }
    }

    #[test]
    fn strongly_satisfiable_programs_have_coinciding_semantics(p in clean_programs()) {
        if is_strongly_satisfiable_program(&p) {
            prop_assert_eq!(answer_sets(&p).unwrap(), stable_models(&p).unwrap());
        }
    }

    #[test]
    fn answer_sets_are_not_circular(p in small_programs()) {
        // Circularity is defined for stable models only.
        for m in answer_sets(&p).unwrap().into_iter().filter(|m| is_stable_model(&p, m)) {
            prop_assert_eq!(is_circular(&p, &m).unwrap(), None);
            prop_assert!(!naive_circular(&p, &m));
        }
        for m in stable_models(&p).unwrap() {
            prop_assert_eq!(is_circular(&p, &m).unwrap().is_some(), naive_circular(&p, &m));
        }
    }

    #[test]
    fn to_basic_preserves_status(p in small_programs()) {
        for m in subsets(&p.atoms()) {
            let b = to_basic(&p, &m);
            prop_assert!(b.is_basic());
            // Both semantics need M ⊨ P, which P' does not record.
            if satisfies_program(&m, &p) {
                prop_assert_eq!(is_stable_model(&p, &m), is_stable_model(&b, &m));
                prop_assert_eq!(is_answer_set(&p, &m), is_answer_set(&b, &m));
            }
        }
    }

    #[test]
    fn report_invariants(p in clean_programs()) {
        for m in subsets(&p.atoms()) {
            let r = report(&p, &m);
            if r.is_answer_set {
                prop_assert!(r.is_stable);
                prop_assert_eq!(r.is_circular, Some(false));
            }
            prop_assert_eq!(r.circularity_witness.is_some(), r.is_circular == Some(true));
        }
    }

    #[test]
    fn strong_satisfiability_checks_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let dom: Vec<Atom> = ["a", "b", "c", "d"].iter().map(|n| atom(n)).collect();
        let w = random_constraint_over(&mut r, &dom, 5, (-2, 3), (-1, 5));
        let exact = strongly_satisfiable(&w);
        prop_assert_eq!(exact, naive_strongly_satisfiable(&w));
        for m in subsets(&w.domain()) {
            prop_assert_eq!(strongly_satisfiable_by(&w, &m), naive_strongly_satisfiable_by(&w, &m));
        }
        if syntactically_strongly_satisfiable(&w) {
            prop_assert!(exact);
        }
    }

    #[test]
    fn conditional_satisfaction_matches_interval_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let dom: Vec<Atom> = ["a", "b", "c", "d"].iter().map(|n| atom(n)).collect();
        let w = random_constraint_over(&mut r, &dom, 5, (-2, 3), (-1, 5));
        let all = dom.iter().cloned().collect();
        for m in subsets(&all) {
            for s in subsets(m.atoms()) {
                prop_assert_eq!(cond_satisfies_wc(&s, &m, &w), naive_cond_sat(&s, &m, &w));
            }
        }
    }

    #[test]
    fn reduct_programs_are_basic_and_monotone(p in small_programs()) {
        for m in subsets(&p.atoms()) {
            let reduct = reduct_program(&p, &m);
            prop_assert!(reduct.is_basic());
            prop_assert!(tp_closure(&reduct).is_ok());
            let inst = instance_of(&p, &m);
            prop_assert!(inst.is_basic());
            let k = kp_fixpoint(&inst, &m).unwrap();
            if satisfies_program(&m, &p) {
                prop_assert!(k.is_subset(&m));
            }
        }
    }
}

#[test]
fn some_stable_models_are_not_answer_sets() {
    let mut r = rng(5);
    let strict = (0..500)
        .map(|_| random_wc_program(&mut r, &WcShape::default()))
        .filter(|p| answer_sets(p).unwrap().len() < stable_models(p).unwrap().len())
        .count();
    assert!(strict > 0);
}

#[test]
fn complementary_literals_break_inclusion() {
    // The body holds at {} through `not c` and at {c} through `c`, so it is
    // conditionally satisfied by {} w.r.t. {c}; its reduct 1 [c=2] is not
    // satisfied by {}.
    let p = wc_program("c :- 4 [not e=3, not c=3, c=2].");
    assert!(p.has_complementary_literals());
    let m = interp(&["c"]);
    assert!(is_answer_set(&p, &m));
    assert!(!is_stable_model(&p, &m));
    assert!(naive_is_answer_set(&p, &m) && !naive_is_stable(&p, &m));
    assert!(is_strongly_satisfiable_program(&p));
    let w = &p.rules[0].body[0];
    assert!(cond_satisfies_wc(&interp(&[]), &m, w));
    assert!(!reduct_constraint(w, &m).satisfied_by(&interp(&[])));
}

#[test]
fn complementary_literals_after_weight_elimination() {
    assert!(constraint("[a=1, a=-1]").has_complementary_literals());
    assert!(!constraint("[a=1, a=2, not b=1]").has_complementary_literals());
    assert!(wc_program("1 [a=1, not a=1] 1.").has_complementary_literals());
}

#[test]
fn reports_include_answer_sets_that_are_not_stable() {
    let p = wc_program("c :- 4 [not e=3, not c=3, c=2].");
    let all = reports(&p, &EnumOptions::default()).unwrap();
    let c = all.iter().find(|r| r.model == interp(&["c"])).expect("row for {c}");
    assert!(c.is_answer_set && !c.is_stable);
    assert_eq!(c.is_circular, None);
}
