use super::lexer::{Cursor, Tok};
use crate::error::Result;
use crate::nested::{NestedExpr, NestedProgram, NestedRule};

fn formula(c: &mut Cursor) -> Result<NestedExpr> {
    let mut items = vec![conjunction(c)?];
    while c.eat(&Tok::Semicolon) {
        items.push(conjunction(c)?);
    }
    Ok(if items.len() == 1 { items.pop().expect("one item") } else { NestedExpr::Or(items) })
}

fn conjunction(c: &mut Cursor) -> Result<NestedExpr> {
    let mut items = vec![unary(c)?];
    while c.eat(&Tok::Comma) {
        items.push(unary(c)?);
    }
    Ok(if items.len() == 1 { items.pop().expect("one item") } else { NestedExpr::And(items) })
}

fn unary(c: &mut Cursor) -> Result<NestedExpr> {
    match c.peek() {
        Tok::Not => {
            c.bump();
            Ok(NestedExpr::negation(unary(c)?))
        }
        Tok::Top => {
            c.bump();
            Ok(NestedExpr::Top)
        }
        Tok::Bot => {
            c.bump();
            Ok(NestedExpr::Bottom)
        }
        Tok::LParen => {
            c.bump();
            let f = formula(c)?;
            c.expect(&Tok::RParen, "`)`")?;
            Ok(f)
        }
        Tok::Ident(_) => Ok(NestedExpr::Atom(c.atom()?)),
        _ => Err(c.unexpected("a formula")),
    }
}

/// Parses a program with nested expressions; a rule without `:-` has the
/// body `top`.
pub fn parse_ne(text: &str) -> Result<NestedProgram> {
    let mut c = Cursor::new(text)?;
    let mut rules = Vec::new();
    while !c.at_eof() {
        let head = formula(&mut c)?;
        let body = if c.eat(&Tok::If) { formula(&mut c)? } else { NestedExpr::Top };
        c.expect(&Tok::Dot, "`.`")?;
        rules.push(NestedRule::new(head, body));
    }
    Ok(NestedProgram::new(rules))
}

fn render_into(f: &NestedExpr, nested: bool, out: &mut String) {
    let group = |items: &[NestedExpr], sep: &str, empty: &str, out: &mut String| {
        if items.is_empty() {
            out.push_str(empty);
            return;
        }
        if nested {
            out.push('(');
        }
        for (i, item) in items.iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            render_into(item, true, out);
        }
        if nested {
            out.push(')');
        }
    };
    match f {
        NestedExpr::Top => out.push_str("top"),
        NestedExpr::Bottom => out.push_str("bot"),
        NestedExpr::Atom(a) => out.push_str(a.name()),
        NestedExpr::Not(g) => {
            out.push_str("not ");
            render_into(g, true, out);
        }
        NestedExpr::And(items) => group(items, ", ", "top", out),
        NestedExpr::Or(items) => group(items, "; ", "bot", out),
    }
}

/// Every compound subformula is parenthesised; the outermost one is not.
pub fn render_ne_expr(f: &NestedExpr) -> String {
    let mut out = String::new();
    render_into(f, false, &mut out);
    out
}

pub fn render_ne_rule(r: &NestedRule) -> String {
    let head = render_ne_expr(&r.head);
    if r.body == NestedExpr::Top {
        format!("{head}.")
    } else {
        format!("{head} :- {}.", render_ne_expr(&r.body))
    }
}

/// One rule per line.
pub fn render_ne(p: &NestedProgram) -> String {
    p.rules.iter().map(|r| render_ne_rule(r) + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_negation() {
        let p = parse_ne("a :- not not a.").unwrap();
        let a = NestedExpr::Atom(crate::model::Atom::new("a").unwrap());
        assert_eq!(p.rules[0].body, NestedExpr::negation(NestedExpr::negation(a)));
        assert_eq!(render_ne(&p), "a :- not not a.\n");
    }

    #[test]
    fn precedence_and_grouping() {
        let p = parse_ne("b :- (not a, not b); (b, not a); (a, b).").unwrap();
        match &p.rules[0].body {
            NestedExpr::Or(ds) => assert_eq!(ds.len(), 3),
            other => panic!("{other:?}"),
        }
        let p = parse_ne("x :- not a, b; c.").unwrap();
        assert_eq!(render_ne(&p), "x :- (not a, b); c.\n");
    }

    #[test]
    fn nested_groups_round_trip() {
        let text = "(a; not a), a :- a.\nx :- not (a, (b; c)), top, bot.\n";
        let p = parse_ne(text).unwrap();
        assert_eq!(render_ne(&p), text);
        assert_eq!(parse_ne(&render_ne(&p)).unwrap(), p);
    }
}
