//! Program translations: the strongly satisfiable encoding, aggregate
//! encodings, and the two nested-expression translations.

pub mod aggregate;
pub mod nested;
pub mod strong;

pub use aggregate::{encode_aggregate, encode_aggregate_with, restrict_to_source, tau_program, tau_program_with, AggEncoding, FreshAtoms, AUX_PREFIX, MaxMinStyle, TauOptions};
pub use nested::{fl_program, fl_program_with, ne_encode_wc, ne_encode_wc_with, ne_program, ne_program_with, NeOptions};
pub use strong::{ss_encode, tr_program, SSEncoding};
