use std::fmt;

use super::Diagnostic;
use crate::error::{Error, Result};
use crate::model::{is_valid_atom_name, Atom};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(String),
    Not,
    Top,
    Bot,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semicolon,
    Dot,
    If,
    Colon,
    Op(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(s) => write!(f, "number `{s}`"),
            Tok::Not => f.write_str("`not`"),
            Tok::Top => f.write_str("`top`"),
            Tok::Bot => f.write_str("`bot`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semicolon => f.write_str("`;`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Op(op) => write!(f, "`{op}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn error_at(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse(Diagnostic::error(line, column, message))
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_column) = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            ';' => (Tok::Semicolon, 1),
            '.' => (Tok::Dot, 1),
            ':' if next == Some('-') => (Tok::If, 2),
            ':' => (Tok::Colon, 1),
            '=' => (Tok::Op("="), 1),
            '!' if next == Some('=') => (Tok::Op("!="), 2),
            '<' if next == Some('=') => (Tok::Op("<="), 2),
            '>' if next == Some('=') => (Tok::Op(">="), 2),
            '<' => (Tok::Op("<"), 1),
            '>' => (Tok::Op(">"), 1),
            '-' | '0'..='9' => {
                let mut j = i + 1;
                if c == '-' && !next.is_some_and(|d| d.is_ascii_digit()) {
                    return Err(error_at(line, column, "`-` must be followed by digits"));
                }
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if chars.get(j) == Some(&'/') {
                    j += 1;
                    let digits = j;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == digits {
                        return Err(error_at(line, column + j - i, "expected digits after `/`"));
                    }
                }
                if chars.get(j).is_some_and(|d| d.is_ascii_alphabetic() || *d == '_') {
                    return Err(error_at(line, column, "atom names must not begin with a digit"));
                }
                (Tok::Number(chars[i..j].iter().collect()), j - i)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                match word.as_str() {
                    "not" => (Tok::Not, j - i),
                    "top" => (Tok::Top, j - i),
                    "bot" => (Tok::Bot, j - i),
                    _ => {
                        j = absorb_arguments(&chars, j).ok_or_else(|| {
                            error_at(line, column, "unterminated or malformed atom arguments")
                        })?;
                        let name: String = chars[i..j].iter().collect();
                        if !is_valid_atom_name(&name) {
                            return Err(error_at(line, column, format!("invalid atom name `{name}`")));
                        }
                        (Tok::Ident(name), j - i)
                    }
                }
            }
            other => return Err(error_at(line, column, format!("unexpected character `{other}`"))),
        };
        tokens.push(Token { tok, line: start_line, column: start_column });
        i += len;
        column += len;
    }
    tokens.push(Token { tok: Tok::Eof, line, column });
    Ok(tokens)
}

/// Extends an identifier over directly attached parenthesised groups:
/// `p(1)`, `edge(a,-2)`, `f(g(x))`.
fn absorb_arguments(chars: &[char], mut j: usize) -> Option<usize> {
    while chars.get(j) == Some(&'(') {
        let mut depth = 0usize;
        loop {
            match chars.get(j) {
                Some('(') => depth += 1,
                Some(')') => {
                    depth -= 1;
                    if depth == 0 {
                        j += 1;
                        break;
                    }
                }
                Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | ',' | '-') => {}
                _ => return None,
            }
            j += 1;
        }
        while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
            j += 1;
        }
    }
    Some(j)
}

/// Cursor over a token list with the shared helpers of the three parsers.
pub(crate) struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Cursor> {
        Ok(Cursor { tokens: tokenize(text)?, pos: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    pub fn here(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let t = self.here();
        error_at(t.line, t.column, message)
    }

    pub fn unexpected(&self, expected: &str) -> Error {
        self.error(format!("expected {expected}, found {}", self.peek()))
    }

    pub fn expect(&mut self, tok: &Tok, expected: &str) -> Result<Token> {
        if self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(expected))
        }
    }

    pub fn at_eof(&self) -> bool {
        self.peek() == &Tok::Eof
    }

    pub fn atom(&mut self) -> Result<Atom> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Atom::unchecked(name))
            }
            _ => Err(self.unexpected("an atom")),
        }
    }
}
