//! Formula parser and printer.
//!
//! Grammar: infix operators share one precedence level and associate to the
//! right; prefix operators bind tightest. Any connective may also be written
//! by name as `name(a, b, ...)`; a bare name of a 0-ary connective is that
//! constant.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::matrix::{is_identifier, ConnId, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown connective `{0}`")]
    UnknownConnective(String),
    #[error("connective `{name}` expects {expected} argument(s), found {found}")]
    Arity { name: String, expected: usize, found: usize },
}

/// A parse failure with the character position where it was detected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Sym(ConnId, String),
    LParen,
    RParen,
    Comma,
    End,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str, m: &Matrix) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    // symbolic aliases, longest first
    let mut symbols: Vec<(Vec<char>, ConnId, &str)> = m
        .connectives()
        .flat_map(|(id, c)| c.aliases.iter().filter(|a| !is_identifier(a)).map(move |a| (a.chars().collect(), id, a.as_str())))
        .collect();
    symbols.sort_by(|a, b| b.0.len().cmp(&a.0.len()));

    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        match c {
            '(' => {
                out.push((Tok::LParen, start));
                i += 1;
                continue;
            }
            ')' => {
                out.push((Tok::RParen, start));
                i += 1;
                continue;
            }
            ',' => {
                out.push((Tok::Comma, start));
                i += 1;
                continue;
            }
            _ => {}
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let alias = m
                .connectives()
                .find(|(_, con)| con.aliases.iter().any(|a| *a == word))
                .map(|(id, _)| id);
            match alias {
                Some(id) => out.push((Tok::Sym(id, word), start)),
                None => out.push((Tok::Ident(word), start)),
            }
            continue;
        }
        let hit = symbols
            .iter()
            .find(|(s, _, _)| chars.len() - i >= s.len() && chars[i..i + s.len()] == s[..]);
        match hit {
            Some((s, id, text)) => {
                out.push((Tok::Sym(*id, text.to_string()), start));
                i += s.len();
            }
            None => {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
                })
            }
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    m: &'a Matrix,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.at(), kind: ParseErrorKind::Syntax(msg.into()) })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Formula, ParseError> {
        let left = self.unary()?;
        if let Tok::Sym(id, _) = self.peek().clone() {
            if self.m.arity(id) == 2 {
                self.bump();
                let right = self.expr()?;
                return Ok(Formula::binary(id, left, right));
            }
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Sym(id, text) => {
                let arity = self.m.arity(id);
                match arity {
                    0 => {
                        self.bump();
                        Ok(Formula::constant(id))
                    }
                    1 => {
                        self.bump();
                        let a = self.unary()?;
                        Ok(Formula::unary(id, a))
                    }
                    2 => self.syntax(format!("infix operator `{text}` is missing its left operand")),
                    _ => {
                        let pos = self.at();
                        self.bump();
                        self.call(id, pos)
                    }
                }
            }
            _ => self.primary(),
        }
    }

    fn call(&mut self, id: ConnId, pos: usize) -> Result<Formula, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                args.push(self.expr()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        let c = self.m.connective(id);
        if args.len() != c.arity {
            return Err(ParseError {
                position: pos,
                kind: ParseErrorKind::Arity { name: c.name.clone(), expected: c.arity, found: args.len() },
            });
        }
        Ok(Formula::app(id, args))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.at();
        match self.bump() {
            Tok::LParen => {
                let f = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) => {
                let id = self.m.conn_by_name(&name);
                if *self.peek() == Tok::LParen {
                    match id {
                        Some(id) => self.call(id, pos),
                        None => Err(ParseError { position: pos, kind: ParseErrorKind::UnknownConnective(name) }),
                    }
                } else {
                    match id {
                        Some(id) if self.m.arity(id) == 0 => Ok(Formula::constant(id)),
                        Some(id) => Err(ParseError {
                            position: pos,
                            kind: ParseErrorKind::Arity { name, expected: self.m.arity(id), found: 0 },
                        }),
                        None => Ok(Formula::atom(&name)),
                    }
                }
            }
            Tok::End => Err(ParseError { position: pos, kind: ParseErrorKind::Syntax("unexpected end of input".into()) }),
            Tok::RParen => Err(ParseError { position: pos, kind: ParseErrorKind::Syntax("unexpected `)`".into()) }),
            Tok::Comma => Err(ParseError { position: pos, kind: ParseErrorKind::Syntax("unexpected `,`".into()) }),
            Tok::Sym(..) => unreachable!("symbols are handled by unary"),
        }
    }
}

impl Matrix {
    /// Parses a formula over this matrix's connectives.
    pub fn parse(&self, text: &str) -> Result<Formula, ParseError> {
        let toks = lex(text, self)?;
        let mut p = Parser { toks, pos: 0, m: self };
        let f = p.expr()?;
        if *p.peek() != Tok::End {
            return p.syntax("unexpected trailing input");
        }
        Ok(f)
    }

    /// Display adapter that prints `f` with this matrix's aliases.
    pub fn show<'a>(&'a self, f: &'a Formula) -> Shown<'a> {
        Shown { m: self, f }
    }

    fn prints_infix(&self, f: &Formula) -> bool {
        match f {
            Formula::App(c, args) => args.len() == 2 && !self.connective(*c).aliases.is_empty(),
            Formula::Atom(_) => false,
        }
    }

    fn write_formula(&self, f: &Formula, out: &mut String) {
        match f {
            Formula::Atom(a) => out.push_str(a.name()),
            Formula::App(c, args) => {
                let con = self.connective(*c);
                let alias = con.aliases.first();
                match (args.len(), alias) {
                    (0, Some(a)) => out.push_str(a),
                    (0, None) => out.push_str(&con.name),
                    (1, Some(a)) => {
                        out.push_str(a);
                        let arg = &args[0];
                        if self.prints_infix(arg) {
                            out.push('(');
                            self.write_formula(arg, out);
                            out.push(')');
                        } else {
                            let mut inner = String::new();
                            self.write_formula(arg, &mut inner);
                            let glue = a.chars().last().is_some_and(is_ident_char)
                                && inner.chars().next().is_some_and(is_ident_char);
                            if glue {
                                out.push(' ');
                            }
                            out.push_str(&inner);
                        }
                    }
                    (2, Some(a)) => {
                        if self.prints_infix(&args[0]) {
                            out.push('(');
                            self.write_formula(&args[0], out);
                            out.push(')');
                        } else {
                            self.write_formula(&args[0], out);
                        }
                        out.push(' ');
                        out.push_str(a);
                        out.push(' ');
                        self.write_formula(&args[1], out);
                    }
                    _ => {
                        out.push_str(&con.name);
                        out.push('(');
                        for (i, a) in args.iter().enumerate() {
                            if i > 0 {
                                out.push_str(", ");
                            }
                            self.write_formula(a, out);
                        }
                        out.push(')');
                    }
                }
            }
        }
    }

    /// Prints a formula to a string.
    pub fn render(&self, f: &Formula) -> String {
        let mut s = String::new();
        self.write_formula(f, &mut s);
        s
    }
}

/// See [`Matrix::show`].
pub struct Shown<'a> {
    m: &'a Matrix,
    f: &'a Formula,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.m.render(self.f))
    }
}
