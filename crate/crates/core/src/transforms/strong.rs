use crate::model::{WeightConstraint, WeightProgram, WeightRule, WeightedLiteral};
use crate::number::Rational;

/// The pair `(W_l, W_u)` of lower-bound-only constraints that together
/// express `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSEncoding {
    pub lower_part: WeightConstraint,
    pub upper_part: WeightConstraint,
}

/// `W_l = l [S]` and `W_u = (−u + Σw) [S with every literal flipped]`.
/// Without an upper bound, `W_u` is the empty constraint with no bounds.
pub fn ss_encode(w: &WeightConstraint) -> SSEncoding {
    let w = w.eliminate_negative_weights();
    let lower_part = WeightConstraint::new(w.lower().cloned(), w.elements.clone(), None);
    let upper_part = match w.upper() {
        None => WeightConstraint::default(),
        Some(u) => {
            let total: Rational = w.total_weight();
            WeightConstraint::new(
                Some(total - u),
                w.elements
                    .iter()
                    .map(|e| WeightedLiteral::new(e.literal.flipped(), e.weight.clone()))
                    .collect(),
                None,
            )
        }
    };
    SSEncoding { lower_part, upper_part }
}

/// Tr(P): every body constraint `W` becomes `W_l, W_u`; heads are kept.
/// `W_u` is omitted when `W` has no upper bound.
pub fn tr_program(p: &WeightProgram) -> WeightProgram {
    p.rules
        .iter()
        .map(|r| {
            let mut body = Vec::with_capacity(r.body.len() * 2);
            for w in &r.body {
                let SSEncoding { lower_part, upper_part } = ss_encode(w);
                body.push(lower_part);
                if w.upper().is_some() {
                    body.push(upper_part);
                }
            }
            WeightRule::new(r.head.clone(), body)
        })
        .collect()
}
