//! Ground logic programs with weight constraints, aggregates and nested
//! expressions.
//!
//! Weight constraint programs have two semantics here: stable models,
//! defined through the reduct and the `T_P` closure, and answer sets,
//! defined through conditional satisfaction and the `K_P` fixpoint. The
//! [`transforms`] module relates them: [`transforms::tr_program`] makes a
//! program strongly satisfiable so that its stable models are the answer
//! sets of the original, [`transforms::tau_program`] compiles aggregates to
//! weight constraints, and [`transforms::ne_program`] /
//! [`transforms::fl_program`] map to nested expressions under the two
//! readings of upper bounds.
//!
//! All solving is exhaustive enumeration with pruning; it is meant for
//! small programs (see [`EnumOptions`]).

pub mod agg;
mod engine;
pub mod error;
pub mod model;
pub mod nested;
pub mod number;
pub mod syntax;
pub mod transforms;
pub mod wc_semantics;

pub use agg::{
    agg_answer_sets, agg_answer_sets_with, agg_kp_fixpoint, check_supported, cond_satisfies_agg, is_agg_answer_set,
    satisfies_agg, AggElement, AggFunc, AggregateAtom, AggregateProgram, AggregateRule, BodyItem,
    RelOp,
};
pub use engine::{EnumOptions, DEFAULT_MAX_ATOMS, HARD_ATOM_LIMIT};
pub use error::{Error, Result};
pub use model::{
    eliminate_negative_weights, satisfies_program, satisfies_wc, to_basic, weight_value, Atom,
    Bounds, Interpretation, Literal, WeightConstraint, WeightProgram, WeightRule, WeightedLiteral,
};
pub use nested::{
    is_stable_model_ne, ne_reduct, satisfies_ne, stable_models_ne, stable_models_ne_with,
    NestedExpr, NestedProgram, NestedRule,
};
pub use number::{ExactNumber, Rational};
pub use wc_semantics::{
    answer_sets, answer_sets_with, cond_satisfies_wc, instance_of, is_answer_set, is_circular,
    is_stable_model, is_strongly_satisfiable_program, kp_fixpoint, reduct_constraint,
    reduct_program, report, reports, stable_models, stable_models_with, strongly_satisfiable,
    strongly_satisfiable_by, syntactically_strongly_satisfiable, tp_closure, ReductConstraint,
    SemanticsReport,
};
