use std::fmt::Write as _;

use super::lexer::{Cursor, Tok};
use crate::error::Result;
use crate::model::{Literal, WeightConstraint, WeightProgram, WeightRule, WeightedLiteral};
use crate::number::{parse_rational, DisplayRational, Rational};

pub(super) fn number(c: &mut Cursor) -> Result<Rational> {
    match c.peek().clone() {
        Tok::Number(text) => {
            let value = parse_rational(&text).map_err(|e| c.error(e.to_string()))?;
            c.bump();
            Ok(value)
        }
        _ => Err(c.unexpected("a number")),
    }
}

fn literal(c: &mut Cursor) -> Result<Literal> {
    let negated = c.eat(&Tok::Not);
    Ok(Literal { atom: c.atom()?, negated })
}

fn constraint(c: &mut Cursor) -> Result<WeightConstraint> {
    if matches!(c.peek(), Tok::Ident(_) | Tok::Not) {
        return Ok(WeightConstraint::literal(literal(c)?));
    }
    let lower = match c.peek() {
        Tok::Number(_) => Some(number(c)?),
        _ => None,
    };
    c.expect(&Tok::LBracket, "`[`, an atom or `not`")?;
    let mut elements = Vec::new();
    if !c.eat(&Tok::RBracket) {
        loop {
            let l = literal(c)?;
            c.expect(&Tok::Op("="), "`=` and a weight")?;
            elements.push(WeightedLiteral::new(l, number(c)?));
            if c.eat(&Tok::RBracket) {
                break;
            }
            c.expect(&Tok::Comma, "`,` or `]`")?;
        }
    }
    let upper = match c.peek() {
        Tok::Number(_) => Some(number(c)?),
        _ => None,
    };
    Ok(WeightConstraint::new(lower, elements, upper))
}

/// Parses a weight constraint program.
pub fn parse_wc(text: &str) -> Result<WeightProgram> {
    let mut c = Cursor::new(text)?;
    let mut rules = Vec::new();
    while !c.at_eof() {
        let head = constraint(&mut c)?;
        let mut body = Vec::new();
        if c.eat(&Tok::If) {
            loop {
                body.push(constraint(&mut c)?);
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        c.expect(&Tok::Dot, "`.`")?;
        rules.push(WeightRule::new(head, body));
    }
    Ok(WeightProgram::new(rules))
}

/// `0 [not a=3] 2`, or the bare literal for `1 [l=1] 1`.
pub fn render_constraint(w: &WeightConstraint) -> String {
    if let Some(l) = w.as_literal() {
        return l.to_string();
    }
    let mut out = String::new();
    if let Some(l) = w.lower() {
        write!(out, "{} ", DisplayRational(l)).unwrap();
    }
    out.push('[');
    for (i, e) in w.elements.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{}={}", e.literal, DisplayRational(&e.weight)).unwrap();
    }
    out.push(']');
    if let Some(u) = w.upper() {
        write!(out, " {}", DisplayRational(u)).unwrap();
    }
    out
}

pub fn render_rule(r: &WeightRule) -> String {
    let mut out = render_constraint(&r.head);
    if !r.body.is_empty() {
        out.push_str(" :- ");
        out.push_str(&r.body.iter().map(render_constraint).collect::<Vec<_>>().join(", "));
    }
    out.push('.');
    out
}

/// One rule per line.
pub fn render_wc(p: &WeightProgram) -> String {
    p.rules.iter().map(|r| render_rule(r) + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn negative_literal_with_bounds() {
        let p = parse_wc("a :- 0 [not a=3] 2.").unwrap();
        assert_eq!(render_wc(&p), "a :- 0 [not a=3] 2.\n");
        let w = &p.rules[0].body[0];
        assert_eq!(w.elements.len(), 1);
        assert!(w.elements[0].literal.negated);
    }

    #[test]
    fn bounds_are_optional() {
        for text in ["a :- [not a=1] 0.", "b :- 1 [a=1/2, a=1/2].", "c :- [].", "1 [a=1, b=1] 1 :- c, not d."] {
            let p = parse_wc(text).unwrap();
            assert_eq!(render_wc(&p).trim_end(), text);
        }
    }

    #[test]
    fn located_errors() {
        let err = parse_wc("a :- 1 [b=1.\n").unwrap_err();
        match err {
            Error::Parse(d) => assert_eq!((d.line, d.column), (1, 12)),
            other => panic!("{other:?}"),
        }
        assert!(parse_wc("a :- .").is_err());
        assert!(parse_wc("a").is_err());
        assert!(parse_wc("1 [a=1/0].").is_err());
    }
}
