//! Text formats for the three program classes.
//!
//! Weight constraint programs (`.wc`):
//!
//! ```text
//! a :- 0 [not a=3] 2.          % l [elements] u, either bound optional
//! 1 [a=1, b=1] 1 :- c, not d.  % a bare literal is 1 [l=1] 1
//! ```
//!
//! Aggregate programs (`.agg`):
//!
//! ```text
//! h :- sum{p1:-1, p2:1, p3:1, p4:2} >= 2, not q.
//! ```
//!
//! Programs with nested expressions (`.ne`):
//!
//! ```text
//! (a; not a), b :- not not a, top.
//! ```

mod agg;
mod lexer;
mod ne;
mod wc;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

pub use agg::{parse_agg, render_agg, render_aggregate};
pub use ne::{parse_ne, render_ne, render_ne_expr, render_ne_rule};
pub use wc::{parse_wc, render_constraint, render_rule, render_wc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
            Severity::Warning => f.write_str("warning"),
        }
    }
}

/// A located message; lines and columns count from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn error(line: usize, column: usize, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, line, column, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.severity, self.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceFormat {
    Wc,
    Agg,
    Ne,
}

impl SourceFormat {
    pub fn from_path(path: &Path) -> Option<SourceFormat> {
        path.extension()?.to_str()?.parse().ok()
    }

    pub fn extension(self) -> &'static str {
        match self {
            SourceFormat::Wc => "wc",
            SourceFormat::Agg => "agg",
            SourceFormat::Ne => "ne",
        }
    }
}

impl FromStr for SourceFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wc" => Ok(SourceFormat::Wc),
            "agg" => Ok(SourceFormat::Agg),
            "ne" => Ok(SourceFormat::Ne),
            other => Err(format!("unknown format `{other}` (expected wc, agg or ne)")),
        }
    }
}

impl fmt::Display for SourceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}
