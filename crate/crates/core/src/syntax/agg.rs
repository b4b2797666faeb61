use super::lexer::{Cursor, Tok};
use crate::agg::{AggElement, AggFunc, AggregateAtom, AggregateProgram, AggregateRule, BodyItem, RelOp};
use crate::error::Result;
use crate::model::{Atom, Literal};
use crate::transforms::aggregate::AUX_PREFIX;

fn integer(c: &mut Cursor, negate: bool) -> Result<i64> {
    let Tok::Number(text) = c.peek().clone() else {
        return Err(c.unexpected("an integer"));
    };
    if text.contains('/') || (negate && text.starts_with('-')) {
        return Err(c.error(format!("expected an integer, found `{text}`")));
    }
    let value: i64 = text
        .parse()
        .map_err(|_| c.error(format!("integer `{text}` out of range")))?;
    c.bump();
    Ok(if negate { -value } else { value })
}

fn atom(c: &mut Cursor) -> Result<Atom> {
    if let Tok::Ident(name) = c.peek() {
        if name.starts_with(AUX_PREFIX) {
            return Err(c.error(format!("atom names starting with `{AUX_PREFIX}` are reserved")));
        }
    }
    c.atom()
}

fn aggregate(c: &mut Cursor, func: AggFunc) -> Result<AggregateAtom> {
    c.expect(&Tok::LBrace, "`{`")?;
    let mut elements = Vec::new();
    loop {
        let a = atom(c)?;
        // `p:-1` lexes as `p`, `:-`, `1`.
        let value = if c.eat(&Tok::If) {
            integer(c, true)?
        } else {
            c.expect(&Tok::Colon, "`:` and a value")?;
            integer(c, false)?
        };
        elements.push(AggElement::new(a, value));
        if c.eat(&Tok::RBrace) {
            break;
        }
        c.expect(&Tok::Comma, "`,` or `}`")?;
    }
    let op = match c.peek() {
        Tok::Op(symbol) => RelOp::from_symbol(symbol).expect("lexer emits known operators"),
        _ => return Err(c.unexpected("a comparison operator")),
    };
    c.bump();
    let result = integer(c, false)?;
    Ok(AggregateAtom::new(func, elements, op, result))
}

fn body_item(c: &mut Cursor) -> Result<BodyItem> {
    if let (Tok::Ident(name), Tok::LBrace) = (c.peek(), c.peek_at(1)) {
        let func = AggFunc::from_name(name)
            .ok_or_else(|| c.error(format!("unknown aggregate function `{name}`")))?;
        c.bump();
        return Ok(BodyItem::Aggregate(aggregate(c, func)?));
    }
    let negated = c.eat(&Tok::Not);
    Ok(BodyItem::Literal(Literal { atom: atom(c)?, negated }))
}

/// Parses an aggregate program. `!=` is accepted for every function here;
/// translation and solving decide what they support.
pub fn parse_agg(text: &str) -> Result<AggregateProgram> {
    let mut c = Cursor::new(text)?;
    let mut rules = Vec::new();
    while !c.at_eof() {
        let head = atom(&mut c)?;
        let mut body = Vec::new();
        if c.eat(&Tok::If) {
            loop {
                body.push(body_item(&mut c)?);
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        c.expect(&Tok::Dot, "`.`")?;
        rules.push(AggregateRule::new(head, body));
    }
    Ok(AggregateProgram::new(rules))
}

/// `sum{p1:-1, p2:1} >= 2`.
pub fn render_aggregate(a: &AggregateAtom) -> String {
    let elements: Vec<String> = a.elements.iter().map(|e| format!("{}:{}", e.atom, e.value)).collect();
    format!("{}{{{}}} {} {}", a.func, elements.join(", "), a.op, a.result)
}

/// One rule per line.
pub fn render_agg(p: &AggregateProgram) -> String {
    let mut out = String::new();
    for rule in &p.rules {
        out.push_str(rule.head.name());
        if !rule.body.is_empty() {
            let items: Vec<String> = rule
                .body
                .iter()
                .map(|item| match item {
                    BodyItem::Aggregate(a) => render_aggregate(a),
                    BodyItem::Literal(l) => l.to_string(),
                })
                .collect();
            out.push_str(" :- ");
            out.push_str(&items.join(", "));
        }
        out.push_str(".\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_shape() {
        let p = parse_agg("h :- sum{p1:-1, p2:1, p3:1, p4:2} >= 2.").unwrap();
        let a = match &p.rules[0].body[0] {
            BodyItem::Aggregate(a) => a,
            other => panic!("{other:?}"),
        };
        assert_eq!(a.func, AggFunc::Sum);
        assert_eq!(a.elements.iter().map(|e| e.value).collect::<Vec<_>>(), [-1, 1, 1, 2]);
        assert_eq!(render_agg(&p), "h :- sum{p1:-1, p2:1, p3:1, p4:2} >= 2.\n");
    }

    #[test]
    fn mixed_items() {
        let text = "h :- count{a:1} >= 1, not q, r.\nq.\n";
        assert_eq!(render_agg(&parse_agg(text).unwrap()), text);
    }

    #[test]
    fn rejects() {
        assert!(parse_agg("h :- sum{p:1/2} >= 1.").is_err());
        assert!(parse_agg("h :- median{p:1} >= 1.").is_err());
        assert!(parse_agg("h :- sum{} >= 1.").is_err());
        assert!(parse_agg("__aux_x.").is_err());
        assert!(parse_agg("h :- sum{p:--1} >= 1.").is_err());
    }

    #[test]
    fn ne_parses() {
        assert!(parse_agg("h :- sum{p1:1} != 0.").is_ok());
    }
}
