//! Surface syntax: a lexer and recursive-descent parser producing a
//! spanned source tree, expansion of the logical symbols into kernel
//! terms, and the inverse pretty-printer.
//!
//! Grammar, loosest to tightest:
//!
//! ```text
//! term  := binder | iff
//! binder:= "forall" x ":" term "," term
//!        | "exists" x ":" term "," term
//!        | "fun" x ":" term "=>" term
//! iff   := arrow ("<->" iff)?
//! arrow := or ("->" arrow)?
//! or    := and ("\/" or)?
//! and   := eq ("/\" and)?
//! eq    := neg ("=" neg ":>" neg)?
//! neg   := "~" neg | app
//! app   := atom atom*
//! atom  := "Prop" | "Type0" | "Type1" | ... | "False" | ident | "(" term ")"
//! ```
//!
//! Binder forms are also accepted on the right of every operator, so
//! `A -> forall x : B, C` parses without parentheses.

use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;

use thiserror::Error;

use crate::term::{self, Context, Ident, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    fn point(p: Pos) -> Span {
        Span { start: p, end: p }
    }

    fn merge(self, other: Span) -> Span {
        Span {
            start: self.start,
            end: other.end,
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("parse error at {span}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub span: Span,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ContextError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("duplicate name `{name}` in context at {span}")]
    DuplicateName { name: Ident, span: Span },
}

/// Concrete syntax tree; every node carries its source span. Logical
/// symbols are still present here and expand during [`lower`].
#[derive(Debug, Clone, PartialEq)]
pub struct SourceTerm {
    pub node: SourceNode,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SourceNode {
    Var(Ident),
    App(Box<SourceTerm>, Box<SourceTerm>),
    Lam(Ident, Box<SourceTerm>, Box<SourceTerm>),
    Pi(Ident, Box<SourceTerm>, Box<SourceTerm>),
    Prop,
    Type(u32),
    False,
    Arrow(Box<SourceTerm>, Box<SourceTerm>),
    And(Box<SourceTerm>, Box<SourceTerm>),
    Or(Box<SourceTerm>, Box<SourceTerm>),
    Neg(Box<SourceTerm>),
    Iff(Box<SourceTerm>, Box<SourceTerm>),
    Exists(Ident, Box<SourceTerm>, Box<SourceTerm>),
    Eq(Box<SourceTerm>, Box<SourceTerm>, Box<SourceTerm>),
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Ident(Ident),
    TypeLevel(u32),
    TypeBare,
    Forall,
    Fun,
    Exists,
    Prop,
    False,
    LParen,
    RParen,
    Comma,
    Colon,
    Semicolon,
    Arrow,
    FatArrow,
    IffOp,
    OrOp,
    AndOp,
    Tilde,
    EqOp,
    ColonGt,
    Eof,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::TypeLevel(i) => format!("`Type{i}`"),
            TokenKind::TypeBare => "`Type`".into(),
            TokenKind::Forall => "`forall`".into(),
            TokenKind::Fun => "`fun`".into(),
            TokenKind::Exists => "`exists`".into(),
            TokenKind::Prop => "`Prop`".into(),
            TokenKind::False => "`False`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Semicolon => "`;`".into(),
            TokenKind::Arrow => "`->`".into(),
            TokenKind::FatArrow => "`=>`".into(),
            TokenKind::IffOp => "`<->`".into(),
            TokenKind::OrOp => "`\\/`".into(),
            TokenKind::AndOp => "`/\\`".into(),
            TokenKind::Tilde => "`~`".into(),
            TokenKind::EqOp => "`=`".into(),
            TokenKind::ColonGt => "`:>`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    span: Span,
}

struct Lexer<'a> {
    chars: Peekable<CharIndices<'a>>,
    line: u32,
    col: u32,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.char_indices().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn error(&self, at: Pos, expected: &[&str], found: String) -> ParseError {
        ParseError {
            span: Span::point(at),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn lex(mut self) -> Result<Vec<Token>, ParseError> {
        let mut tokens = Vec::new();
        loop {
            while matches!(self.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let start = self.pos();
            let Some(c) = self.peek() else {
                tokens.push(Token {
                    kind: TokenKind::Eof,
                    span: Span::point(start),
                });
                return Ok(tokens);
            };
            let kind = if is_ident_start(c) {
                let mut word = String::new();
                while matches!(self.peek(), Some(c) if is_ident_continue(c)) {
                    word.push(self.bump().unwrap());
                }
                match word.as_str() {
                    "forall" => TokenKind::Forall,
                    "fun" => TokenKind::Fun,
                    "exists" => TokenKind::Exists,
                    "Prop" => TokenKind::Prop,
                    "False" => TokenKind::False,
                    "Type" => TokenKind::TypeBare,
                    _ => {
                        if let Some(digits) = word.strip_prefix("Type") {
                            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                                let level = digits.parse().map_err(|_| {
                                    self.error(start, &["a smaller universe level"], word.clone())
                                })?;
                                tokens.push(Token {
                                    kind: TokenKind::TypeLevel(level),
                                    span: self.span_from(start),
                                });
                                continue;
                            }
                        }
                        TokenKind::Ident(word)
                    }
                }
            } else {
                self.bump();
                match c {
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    ',' => TokenKind::Comma,
                    ';' => TokenKind::Semicolon,
                    '~' => TokenKind::Tilde,
                    ':' => {
                        if self.peek() == Some('>') {
                            self.bump();
                            TokenKind::ColonGt
                        } else {
                            TokenKind::Colon
                        }
                    }
                    '=' => {
                        if self.peek() == Some('>') {
                            self.bump();
                            TokenKind::FatArrow
                        } else {
                            TokenKind::EqOp
                        }
                    }
                    '-' => {
                        if self.peek() == Some('>') {
                            self.bump();
                            TokenKind::Arrow
                        } else {
                            return Err(self.error(start, &["`->`"], format!("`{c}`")));
                        }
                    }
                    '<' => {
                        if self.bump() == Some('-') && self.peek() == Some('>') {
                            self.bump();
                            TokenKind::IffOp
                        } else {
                            return Err(self.error(start, &["`<->`"], "`<`".into()));
                        }
                    }
                    '\\' => {
                        if self.peek() == Some('/') {
                            self.bump();
                            TokenKind::OrOp
                        } else {
                            return Err(self.error(start, &["`\\/`"], "`\\`".into()));
                        }
                    }
                    '/' => {
                        if self.peek() == Some('\\') {
                            self.bump();
                            TokenKind::AndOp
                        } else {
                            return Err(self.error(start, &["`/\\`"], "`/`".into()));
                        }
                    }
                    other => {
                        return Err(self.error(start, &["a term"], format!("`{other}`")));
                    }
                }
            };
            tokens.push(Token {
                kind,
                span: self.span_from(start),
            });
        }
    }

    fn span_from(&self, start: Pos) -> Span {
        Span {
            start,
            end: self.pos(),
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if &self.peek().kind == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[kind.describe()]))
        }
    }

    fn unexpected(&self, expected: &[String]) -> ParseError {
        let tok = self.peek();
        ParseError {
            span: tok.span,
            expected: expected.to_vec(),
            found: tok.kind.describe(),
        }
    }

    fn binder_name(&mut self) -> Result<(Ident, Span), ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                let tok = self.bump();
                Ok((name, tok.span))
            }
            _ => Err(self.unexpected(&["an identifier".into()])),
        }
    }

    fn term(&mut self) -> Result<SourceTerm, ParseError> {
        self.iff_level()
    }

    /// Parses a binder form if one starts here.
    fn binder_opt(&mut self) -> Result<Option<SourceTerm>, ParseError> {
        let kw = match self.peek().kind {
            TokenKind::Forall | TokenKind::Fun | TokenKind::Exists => self.bump(),
            _ => return Ok(None),
        };
        let (name, _) = self.binder_name()?;
        self.expect(TokenKind::Colon)?;
        let annot = self.term()?;
        let sep = if kw.kind == TokenKind::Fun {
            TokenKind::FatArrow
        } else {
            TokenKind::Comma
        };
        self.expect(sep)?;
        let body = self.term()?;
        let span = kw.span.merge(body.span);
        let node = match kw.kind {
            TokenKind::Forall => SourceNode::Pi(name, Box::new(annot), Box::new(body)),
            TokenKind::Fun => SourceNode::Lam(name, Box::new(annot), Box::new(body)),
            TokenKind::Exists => SourceNode::Exists(name, Box::new(annot), Box::new(body)),
            _ => unreachable!(),
        };
        Ok(Some(SourceTerm { node, span }))
    }

    fn iff_level(&mut self) -> Result<SourceTerm, ParseError> {
        if let Some(b) = self.binder_opt()? {
            return Ok(b);
        }
        let lhs = self.arrow_level()?;
        if self.eat(&TokenKind::IffOp) {
            let rhs = self.iff_level()?;
            let span = lhs.span.merge(rhs.span);
            return Ok(SourceTerm {
                node: SourceNode::Iff(Box::new(lhs), Box::new(rhs)),
                span,
            });
        }
        Ok(lhs)
    }

    fn arrow_level(&mut self) -> Result<SourceTerm, ParseError> {
        if let Some(b) = self.binder_opt()? {
            return Ok(b);
        }
        let lhs = self.or_level()?;
        if self.eat(&TokenKind::Arrow) {
            let rhs = self.arrow_level()?;
            let span = lhs.span.merge(rhs.span);
            return Ok(SourceTerm {
                node: SourceNode::Arrow(Box::new(lhs), Box::new(rhs)),
                span,
            });
        }
        Ok(lhs)
    }

    fn or_level(&mut self) -> Result<SourceTerm, ParseError> {
        if let Some(b) = self.binder_opt()? {
            return Ok(b);
        }
        let lhs = self.and_level()?;
        if self.eat(&TokenKind::OrOp) {
            let rhs = self.or_level()?;
            let span = lhs.span.merge(rhs.span);
            return Ok(SourceTerm {
                node: SourceNode::Or(Box::new(lhs), Box::new(rhs)),
                span,
            });
        }
        Ok(lhs)
    }

    fn and_level(&mut self) -> Result<SourceTerm, ParseError> {
        if let Some(b) = self.binder_opt()? {
            return Ok(b);
        }
        let lhs = self.eq_level()?;
        if self.eat(&TokenKind::AndOp) {
            let rhs = self.and_level()?;
            let span = lhs.span.merge(rhs.span);
            return Ok(SourceTerm {
                node: SourceNode::And(Box::new(lhs), Box::new(rhs)),
                span,
            });
        }
        Ok(lhs)
    }

    fn eq_level(&mut self) -> Result<SourceTerm, ParseError> {
        if let Some(b) = self.binder_opt()? {
            return Ok(b);
        }
        let lhs = self.neg_level()?;
        if self.eat(&TokenKind::EqOp) {
            let rhs = self.neg_level()?;
            self.expect(TokenKind::ColonGt)?;
            let ty = self.neg_level()?;
            let span = lhs.span.merge(ty.span);
            return Ok(SourceTerm {
                node: SourceNode::Eq(Box::new(lhs), Box::new(rhs), Box::new(ty)),
                span,
            });
        }
        Ok(lhs)
    }

    fn neg_level(&mut self) -> Result<SourceTerm, ParseError> {
        if let Some(b) = self.binder_opt()? {
            return Ok(b);
        }
        if self.peek().kind == TokenKind::Tilde {
            let tok = self.bump();
            let inner = self.neg_level()?;
            let span = tok.span.merge(inner.span);
            return Ok(SourceTerm {
                node: SourceNode::Neg(Box::new(inner)),
                span,
            });
        }
        self.app_level()
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek().kind,
            TokenKind::Ident(_)
                | TokenKind::Prop
                | TokenKind::False
                | TokenKind::TypeLevel(_)
                | TokenKind::TypeBare
                | TokenKind::LParen
        )
    }

    fn app_level(&mut self) -> Result<SourceTerm, ParseError> {
        let mut head = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            let span = head.span.merge(arg.span);
            head = SourceTerm {
                node: SourceNode::App(Box::new(head), Box::new(arg)),
                span,
            };
        }
        Ok(head)
    }

    fn atom(&mut self) -> Result<SourceTerm, ParseError> {
        let tok = self.peek().clone();
        let node = match tok.kind {
            TokenKind::Ident(name) => SourceNode::Var(name),
            TokenKind::Prop => SourceNode::Prop,
            TokenKind::False => SourceNode::False,
            TokenKind::TypeLevel(i) => SourceNode::Type(i),
            TokenKind::TypeBare => {
                return Err(ParseError {
                    span: tok.span,
                    expected: vec!["an explicit universe such as `Type0`".into()],
                    found: "`Type`".into(),
                });
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.term()?;
                let close = self.expect(TokenKind::RParen)?;
                return Ok(SourceTerm {
                    node: inner.node,
                    span: tok.span.merge(close.span),
                });
            }
            _ => return Err(self.unexpected(&["a term".into()])),
        };
        self.bump();
        Ok(SourceTerm {
            node,
            span: tok.span,
        })
    }
}

/// Parses text into the spanned source tree without expanding sugar.
pub fn parse_source(text: &str) -> Result<SourceTerm, ParseError> {
    let tokens = Lexer::new(text).lex()?;
    let mut parser = Parser { tokens, at: 0 };
    let t = parser.term()?;
    parser.expect(TokenKind::Eof)?;
    Ok(t)
}

/// Expands the logical symbols of a source tree into kernel syntax.
pub fn lower(st: &SourceTerm) -> Term {
    match &st.node {
        SourceNode::Var(x) => term::var(x.clone()),
        SourceNode::App(f, a) => term::app(lower(f), lower(a)),
        SourceNode::Lam(x, dom, body) => term::lam(x.clone(), lower(dom), lower(body)),
        SourceNode::Pi(x, dom, cod) => term::pi(x.clone(), lower(dom), lower(cod)),
        SourceNode::Prop => Term::Prop,
        SourceNode::Type(i) => Term::Type(*i),
        SourceNode::False => term::bottom(),
        SourceNode::Arrow(a, b) => term::arrow(lower(a), lower(b)),
        SourceNode::And(a, b) => term::and(lower(a), lower(b)),
        SourceNode::Or(a, b) => term::or(lower(a), lower(b)),
        SourceNode::Neg(a) => term::neg(lower(a)),
        SourceNode::Iff(a, b) => term::iff(lower(a), lower(b)),
        SourceNode::Exists(x, a, q) => term::exists(x.clone(), lower(a), lower(q)),
        SourceNode::Eq(x, y, ty) => term::equality(lower(ty), lower(x), lower(y)),
    }
}

/// Parses a term, expanding all logical symbols.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    Ok(lower(&parse_source(text)?))
}

/// Parses a context: semicolon-separated `name : type` entries, left to
/// right. Entries may mention earlier names.
pub fn parse_context(text: &str) -> Result<Context, ContextError> {
    let tokens = Lexer::new(text).lex()?;
    let mut parser = Parser { tokens, at: 0 };
    let mut ctx = Context::new();
    if parser.eat(&TokenKind::Eof) {
        return Ok(ctx);
    }
    loop {
        let (name, span) = parser.binder_name()?;
        parser.expect(TokenKind::Colon)?;
        let ty = lower(&parser.term()?);
        if ctx.try_push(name.clone(), ty).is_err() {
            return Err(ContextError::DuplicateName { name, span });
        }
        if parser.eat(&TokenKind::Semicolon) {
            continue;
        }
        parser.expect(TokenKind::Eof)?;
        return Ok(ctx);
    }
}

// ---------------------------------------------------------------------------
// Pretty-printing
// ---------------------------------------------------------------------------

// Precedence ranks used when printing; parentheses appear whenever a
// form's rank is below the position's minimum.
const PREC_BINDER: u8 = 0;
const PREC_ARROW: u8 = 2;
const PREC_ARROW_LHS: u8 = 3;
const PREC_APP: u8 = 7;
const PREC_ATOM: u8 = 8;

fn term_prec(t: &Term) -> u8 {
    match t {
        Term::Var(_) | Term::Prop | Term::Type(_) => PREC_ATOM,
        Term::App(_, _) => PREC_APP,
        Term::Lam(_, _, _) => PREC_BINDER,
        Term::Pi(x, _, cod) => {
            if term::free_vars(cod).contains(x) {
                PREC_BINDER
            } else {
                PREC_ARROW
            }
        }
    }
}

fn pretty_at(t: &Term, min: u8, out: &mut String) {
    let prec = term_prec(t);
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Prop => out.push_str("Prop"),
        Term::Type(i) => {
            out.push_str("Type");
            out.push_str(&i.to_string());
        }
        Term::App(f, a) => {
            pretty_at(f, PREC_APP, out);
            out.push(' ');
            pretty_at(a, PREC_ATOM, out);
        }
        Term::Lam(x, dom, body) => {
            out.push_str("fun ");
            out.push_str(x);
            out.push_str(" : ");
            pretty_at(dom, PREC_BINDER, out);
            out.push_str(" => ");
            pretty_at(body, PREC_BINDER, out);
        }
        Term::Pi(x, dom, cod) => {
            if term::free_vars(cod).contains(x) {
                out.push_str("forall ");
                out.push_str(x);
                out.push_str(" : ");
                pretty_at(dom, PREC_BINDER, out);
                out.push_str(", ");
                pretty_at(cod, PREC_BINDER, out);
            } else {
                pretty_at(dom, PREC_ARROW_LHS, out);
                out.push_str(" -> ");
                pretty_at(cod, PREC_ARROW, out);
            }
        }
    }
    if parens {
        out.push(')');
    }
}

/// Minimal-parenthesization rendering; parsing the result yields a term
/// alpha-equal to the input.
pub fn pretty(t: &Term) -> String {
    let mut out = String::new();
    pretty_at(t, PREC_BINDER, &mut out);
    out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{alpha_eq, app, arrow, bottom, lam, neg, or, pi, var};

    #[test]
    fn parse_forall() {
        let t = parse_term("forall P : Prop, P").unwrap();
        assert_eq!(t, pi("P", Term::Prop, var("P")));
    }

    #[test]
    fn parse_false_expands() {
        let t = parse_term("False").unwrap();
        assert!(alpha_eq(&t, &bottom()));
    }

    #[test]
    fn parse_excluded_middle_expansion() {
        let t = parse_term("forall P : Prop, P \\/ ~P").unwrap();
        let expected = pi("P", Term::Prop, or(var("P"), neg(var("P"))));
        assert!(alpha_eq(&t, &expected));
    }

    #[test]
    fn parse_application_left_assoc() {
        let t = parse_term("f a b").unwrap();
        assert_eq!(t, app(app(var("f"), var("a")), var("b")));
    }

    #[test]
    fn parse_arrow_right_assoc() {
        let t = parse_term("A -> B -> C").unwrap();
        let expected = arrow(var("A"), arrow(var("B"), var("C")));
        assert!(alpha_eq(&t, &expected));
    }

    #[test]
    fn parse_binder_after_operator() {
        let t = parse_term("A -> forall x : Prop, x").unwrap();
        let expected = arrow(var("A"), pi("x", Term::Prop, var("x")));
        assert!(alpha_eq(&t, &expected));
    }

    #[test]
    fn parse_eq_with_annotation() {
        let t = parse_term("x = y :> A").unwrap();
        let expected = term::equality(var("A"), var("x"), var("y"));
        assert!(alpha_eq(&t, &expected));
    }

    #[test]
    fn parse_exists() {
        let t = parse_term("exists x : Prop, x").unwrap();
        let expected = term::exists("x", Term::Prop, var("x"));
        assert!(alpha_eq(&t, &expected));
    }

    #[test]
    fn bare_type_rejected() {
        let err = parse_term("Type").unwrap_err();
        assert!(err.expected.iter().any(|e| e.contains("Type0")));
        assert!(parse_term("Type0").is_ok());
        assert!(parse_term("Type12").is_ok());
    }

    #[test]
    fn parse_error_has_span() {
        let err = parse_term("forall P :").unwrap_err();
        assert_eq!(err.span.start.line, 1);
        assert!(err.span.start.col >= 10);
    }

    #[test]
    fn pretty_examples() {
        assert_eq!(pretty(&pi("P", Term::Prop, var("P"))), "forall P : Prop, P");
        assert_eq!(pretty(&app(app(var("f"), var("a")), var("b"))), "f a b");
        assert_eq!(pretty(&arrow(var("A"), var("B"))), "A -> B");
        assert_eq!(
            pretty(&lam("P", Term::Prop, var("P"))),
            "fun P : Prop => P"
        );
    }

    #[test]
    fn pretty_parenthesizes_tighter_positions() {
        let t = app(var("f"), app(var("g"), var("x")));
        assert_eq!(pretty(&t), "f (g x)");
        let u = arrow(arrow(var("A"), var("B")), var("C"));
        assert_eq!(pretty(&u), "(A -> B) -> C");
    }

    #[test]
    fn parse_context_examples() {
        assert_eq!(parse_context("").unwrap(), Context::new());
        let ctx = parse_context("P : Prop").unwrap();
        assert_eq!(ctx.len(), 1);
        assert_eq!(ctx.lookup("P"), Some(&Term::Prop));
        let ctx = parse_context("P : Prop; h : P").unwrap();
        assert_eq!(ctx.len(), 2);
        assert_eq!(ctx.lookup("h"), Some(&var("P")));
    }

    #[test]
    fn parse_context_duplicate_name() {
        let err = parse_context("P : Prop; P : Prop").unwrap_err();
        assert!(matches!(err, ContextError::DuplicateName { .. }));
    }

    #[test]
    fn spans_nest() {
        let st = parse_source("forall P : Prop, P \\/ ~P").unwrap();
        fn check(st: &SourceTerm) {
            let within = |inner: &SourceTerm| {
                let s = st.span;
                let i = inner.span;
                (s.start.line, s.start.col) <= (i.start.line, i.start.col)
                    && (i.end.line, i.end.col) <= (s.end.line, s.end.col)
            };
            match &st.node {
                SourceNode::App(a, b)
                | SourceNode::Arrow(a, b)
                | SourceNode::And(a, b)
                | SourceNode::Or(a, b)
                | SourceNode::Iff(a, b) => {
                    assert!(within(a) && within(b));
                    check(a);
                    check(b);
                }
                SourceNode::Lam(_, a, b)
                | SourceNode::Pi(_, a, b)
                | SourceNode::Exists(_, a, b) => {
                    assert!(within(a) && within(b));
                    check(a);
                    check(b);
                }
                SourceNode::Eq(a, b, c) => {
                    assert!(within(a) && within(b) && within(c));
                    check(a);
                    check(b);
                    check(c);
                }
                SourceNode::Neg(a) => {
                    assert!(within(a));
                    check(a);
                }
                _ => {}
            }
        }
        check(&st);
    }
}
