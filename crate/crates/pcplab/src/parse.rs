//! Expression syntax:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom "'"*
//! atom   := S<i> | T<i> | R<i> | P<i> | I | i | rational
//!         | chi[a,b] U(r,k) | chi[a,b;slot] U(r,k,p) | chi[..]
//!         | U(r,k) | U(r,k,p) | '(' expr ')'
//! ```
//!
//! A bare `chi[..]` is the multiplication operator `χ U^e`; a bare `U(..)`
//! is the substitute unit `χ_{ran β} U`.

use std::fmt;

use pcplab_core::algebra::{cuntz_generator, matrix_generators};
use pcplab_core::{
    AlgebraElement, ClopenSet, Error, GElem, HElem, NAdic, Rational, Scalar, Session,
    SlotFunction, StepFunction,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at {pos}: {source}")]
    Invalid { pos: usize, source: Error },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Invalid { pos, .. } => *pos,
        }
    }
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax { pos, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Punct(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(q) => write!(f, "`{q}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = digits(i);
            if j + 1 < bytes.len() && bytes[j] == b'/' && bytes[j + 1].is_ascii_digit() {
                j = digits(j + 1);
            }
            let q: Rational = match src[i..j].parse() {
                Ok(q) => q,
                Err(_) => return syntax(i, format!("bad number `{}`", &src[i..j])),
            };
            out.push((i, Tok::Num(q)));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_alphabetic() {
                j += 1;
            }
            j = digits(j);
            out.push((i, Tok::Ident(src[i..j].to_string())));
            i = j;
        } else if "+-*'()[],;".contains(c) {
            out.push((i, Tok::Punct(c)));
            i += 1;
        } else {
            return syntax(i, format!("unexpected character `{c}`"));
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    S,
    T,
    R,
    P,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unit {
    pub r: Rational,
    pub k: i32,
    pub p: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Adjoint(Box<ExprAst>),
    Generator { pos: usize, kind: GenKind, index: usize },
    Identity,
    Scalar(Scalar),
    Chi { pos: usize, lo: Rational, hi: Rational, slot: Option<usize>, unit: Option<Unit> },
    Unit { pos: usize, unit: Unit },
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            syntax(self.pos(), format!("expected `{c}`, found {}", self.peek()))
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        if self.eat('-') {
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let mut a = self.atom()?;
        while self.eat('\'') {
            a = ExprAst::Adjoint(Box::new(a));
        }
        Ok(a)
    }

    fn signed(&mut self) -> Result<Rational, ParseError> {
        let neg = self.eat('-');
        match self.bump() {
            (_, Tok::Num(q)) => Ok(if neg { -q } else { q }),
            (pos, t) => syntax(pos, format!("expected a number, found {t}")),
        }
    }

    fn integer(&mut self) -> Result<i32, ParseError> {
        let pos = self.pos();
        let q = self.signed()?;
        if !q.is_integer() {
            return syntax(pos, format!("expected an integer, found `{q}`"));
        }
        i32::try_from(*q.numer()).or_else(|_| syntax(pos, "integer out of range"))
    }

    fn unit_args(&mut self) -> Result<Unit, ParseError> {
        self.expect('(')?;
        let r = self.signed()?;
        self.expect(',')?;
        let k = self.integer()?;
        let p = if self.eat(',') { Some(self.integer()?) } else { None };
        self.expect(')')?;
        Ok(Unit { r, k, p })
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Num(q) => Ok(ExprAst::Scalar(Scalar::real(q))),
            Tok::Punct('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(pos, &name),
            t => syntax(pos, format!("unexpected {t}")),
        }
    }

    fn named(&mut self, pos: usize, name: &str) -> Result<ExprAst, ParseError> {
        match name {
            "I" => return Ok(ExprAst::Identity),
            "i" => return Ok(ExprAst::Scalar(Scalar::i())),
            "U" => return Ok(ExprAst::Unit { pos, unit: self.unit_args()? }),
            "chi" => {
                self.expect('[')?;
                let lo = self.signed()?;
                self.expect(',')?;
                let hi = self.signed()?;
                let slot = if self.eat(';') {
                    let p = self.pos();
                    let s = self.integer()?;
                    Some(usize::try_from(s).or_else(|_| syntax(p, "negative slot"))?)
                } else {
                    None
                };
                self.expect(']')?;
                let unit = if *self.peek() == Tok::Ident("U".into()) {
                    self.bump();
                    Some(self.unit_args()?)
                } else {
                    None
                };
                return Ok(ExprAst::Chi { pos, lo, hi, slot, unit });
            }
            _ => {}
        }
        let (head, idx) = name.split_at(1);
        let kind = match head {
            "S" => GenKind::S,
            "T" => GenKind::T,
            "R" => GenKind::R,
            "P" => GenKind::P,
            _ => return syntax(pos, format!("unknown name `{name}`")),
        };
        match idx.parse::<usize>() {
            Ok(index) if !idx.is_empty() => Ok(ExprAst::Generator { pos, kind, index }),
            _ => syntax(pos, format!("`{head}` needs a numeric index")),
        }
    }
}

pub fn parse_ast(src: &str) -> Result<ExprAst, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return syntax(p.pos(), format!("unexpected {}", p.peek()));
    }
    Ok(e)
}

fn endpoint(session: Session, q: Rational, pos: usize) -> Result<NAdic, ParseError> {
    NAdic::from_rational(q, session.base()).ok_or_else(|| ParseError::Syntax {
        pos,
        msg: format!("`{q}` is not a {}-adic rational", session.n()),
    })
}

fn invalid(pos: usize) -> impl Fn(Error) -> ParseError {
    move |source| ParseError::Invalid { pos, source }
}

fn helem(session: Session, u: &Unit, pos: usize) -> Result<HElem, ParseError> {
    let r = endpoint(session, u.r, pos)?;
    Ok(HElem { g: GElem::new(r, u.k), p: u.p.unwrap_or(0) })
}

pub fn eval(ast: &ExprAst, session: Session) -> Result<AlgebraElement, ParseError> {
    let bin = |a: &ExprAst, b: &ExprAst| Ok::<_, ParseError>((eval(a, session)?, eval(b, session)?));
    Ok(match ast {
        ExprAst::Add(a, b) => {
            let (a, b) = bin(a, b)?;
            &a + &b
        }
        ExprAst::Sub(a, b) => {
            let (a, b) = bin(a, b)?;
            &a - &b
        }
        ExprAst::Mul(a, b) => {
            let (a, b) = bin(a, b)?;
            &a * &b
        }
        ExprAst::Neg(a) => -&eval(a, session)?,
        ExprAst::Adjoint(a) => eval(a, session)?.adjoint(),
        ExprAst::Identity => AlgebraElement::identity(session),
        ExprAst::Scalar(c) => AlgebraElement::scalar(session, *c),
        ExprAst::Generator { pos, kind, index } => generator(session, *kind, *index, *pos)?,
        ExprAst::Unit { pos, unit } => AlgebraElement::substitute_unit(session, helem(session, unit, *pos)?),
        ExprAst::Chi { pos, lo, hi, slot, unit } => {
            let pos = *pos;
            let set = ClopenSet::interval(endpoint(session, *lo, pos)?, endpoint(session, *hi, pos)?)
                .map_err(invalid(pos))?;
            let slot = slot.unwrap_or(0);
            if slot >= session.slots() {
                return Err(ParseError::Invalid {
                    pos,
                    source: Error::SlotOutOfRange { slot, slots: session.slots() },
                });
            }
            let f = SlotFunction::single(StepFunction::indicator(&set), slot, session.slots());
            let h = match unit {
                Some(u) => helem(session, u, pos)?,
                None => HElem::identity(session.base()),
            };
            AlgebraElement::monomial(session, h, f).map_err(invalid(pos))?
        }
    })
}

fn generator(session: Session, kind: GenKind, index: usize, pos: usize) -> Result<AlgebraElement, ParseError> {
    if kind == GenKind::S {
        return cuntz_generator(session, index).map_err(invalid(pos));
    }
    let m = matrix_generators(session);
    let family = match kind {
        GenKind::T => &m.t,
        GenKind::R => &m.r,
        _ => &m.p,
    };
    index
        .checked_sub(1)
        .and_then(|i| family.get(i))
        .cloned()
        .ok_or(ParseError::Invalid { pos, source: Error::GeneratorIndex { index, max: family.len() } })
}

pub fn parse_expr(src: &str, session: Session) -> Result<AlgebraElement, ParseError> {
    eval(&parse_ast(src)?, session)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn serialize(a: &AlgebraElement, format: Format) -> String {
    match format {
        Format::Text => a.to_string(),
        Format::Json => crate::json::element_to_string(a),
    }
}
