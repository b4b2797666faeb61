use crate::syntax::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Parse(Diagnostic),

    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),

    #[error(
        "refused: the program has {atoms} atoms, above the enumeration cap of {cap} \
         (raise it with --max-atoms)"
    )]
    AtomLimit { atoms: usize, cap: usize },

    #[error(
        "refused: the program has {atoms} atoms, above the hard limit of {limit} \
         supported by the enumerator"
    )]
    HardAtomLimit { atoms: usize, limit: usize },

    #[error(
        "refused: {}`{func}` aggregate with `!=` is unsupported; only count may use `!=` \
         (for the other functions it raises the complexity of deciding answer set existence)",
        RulePrefix(*rule)
    )]
    UnsupportedAggregate { rule: Option<usize>, func: String },

    #[error(
        "refused: {}count with `!=` is the disjunction of `>` and `<` and has no single \
         encoding; the rule must be split in two",
        RulePrefix(*rule)
    )]
    DisjunctiveAggregate { rule: Option<usize> },

    #[error("refused: {}aggregate over an empty element list", RulePrefix(*rule))]
    EmptyAggregate { rule: Option<usize> },

    #[error(
        "refused: rule {rule}: closure needs a basic monotone program \
         (single atom head, lower-bound-only bodies over atoms with nonnegative weights)"
    )]
    NotBasicMonotone { rule: usize },

    #[error("refused: rule {rule}: the fixpoint needs a basic program (single atom heads)")]
    NotBasic { rule: usize },

    #[error("refused: the circularity check needs a stable model of the program, got {{{model}}}")]
    NotStableModel { model: String },

    #[error(
        "refused: constraint domain has {size} atoms, above the cap of {cap} \
         for the nested-expression encoding"
    )]
    DomainLimit { size: usize, cap: usize },
}

impl Error {
    /// Refusals are well-formed requests outside the supported envelope, as
    /// opposed to malformed input.
    pub fn is_refusal(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::InvalidAtom(_))
    }
}

struct RulePrefix(Option<usize>);

impl std::fmt::Display for RulePrefix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            Some(rule) => write!(f, "rule {rule}: "),
            None => Ok(()),
        }
    }
}
