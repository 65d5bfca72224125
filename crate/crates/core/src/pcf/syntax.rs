//! Lexer and recursive-descent parser.
//!
//! ```text
//! term  ::= "fun" ident ":" type "->" term
//!         | "ifz" term "then" term "else" term
//!         | sum
//! sum   ::= app ("+" app)*
//! app   ::= unit unit*
//! unit  ::= ("succ" | "pred" | "fix") app | numeral | ident | "omega" | "(" term ")"
//! type  ::= "nat" | "(" type ")" | type "->" type
//! ```
//!
//! `#` starts a line comment. The line `#pragma plus_rl` makes every `+` in
//! the file evaluate its right operand first.

use std::fmt;

use super::PcfError;
use crate::strategy::builtin::AddOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Nat,
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub fn arrow(a: Type, b: Type) -> Type {
        Type::Arrow(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Nat => write!(f, "nat"),
            Type::Arrow(a, b) if matches!(**a, Type::Arrow(..)) => write!(f, "({a}) -> {b}"),
            Type::Arrow(a, b) => write!(f, "{a} -> {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermKind {
    Num(u32),
    Var(String),
    Lam(String, Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    Succ(Box<Term>),
    Pred(Box<Term>),
    Add(Box<Term>, Box<Term>, AddOrder),
    Ifz(Box<Term>, Box<Term>, Box<Term>),
    Fix(Box<Term>),
    Omega,
}

#[derive(Debug, Clone)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

/// Terms compare by structure; positions are ignored.
impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Term {}

impl Term {
    pub fn new(kind: TermKind, span: Span) -> Term {
        Term { kind, span }
    }

    fn is_atomic(&self) -> bool {
        matches!(self.kind, TermKind::Num(_) | TermKind::Var(_) | TermKind::Omega)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |t: &Term| {
            if t.is_atomic() {
                t.to_string()
            } else {
                format!("({t})")
            }
        };
        match &self.kind {
            TermKind::Num(n) => write!(f, "{n}"),
            TermKind::Var(x) => write!(f, "{x}"),
            TermKind::Omega => write!(f, "omega"),
            TermKind::Lam(x, ty, body) => write!(f, "fun {x}: {ty} -> {body}"),
            TermKind::App(m, n) => match m.kind {
                TermKind::App(..) => write!(f, "{m} {}", wrap(n)),
                _ => write!(f, "{} {}", wrap(m), wrap(n)),
            },
            TermKind::Succ(m) => write!(f, "succ {}", wrap(m)),
            TermKind::Pred(m) => write!(f, "pred {}", wrap(m)),
            TermKind::Fix(m) => write!(f, "fix {}", wrap(m)),
            TermKind::Add(m, n, _) => write!(f, "{} + {}", wrap(m), wrap(n)),
            TermKind::Ifz(c, a, b) => write!(f, "ifz {c} then {a} else {b}"),
        }
    }
}

/// A parsed source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub term: Term,
    pub plus_order: AddOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(u32),
    Ident(String),
    Fun,
    Nat,
    Succ,
    Pred,
    Ifz,
    Then,
    Else,
    Fix,
    Omega,
    Colon,
    Arrow,
    LParen,
    RParen,
    Plus,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Num(n) => return write!(f, "numeral {n}"),
            Tok::Ident(x) => return write!(f, "identifier `{x}`"),
            Tok::Fun => "`fun`",
            Tok::Nat => "`nat`",
            Tok::Succ => "`succ`",
            Tok::Pred => "`pred`",
            Tok::Ifz => "`ifz`",
            Tok::Then => "`then`",
            Tok::Else => "`else`",
            Tok::Fix => "`fix`",
            Tok::Omega => "`omega`",
            Tok::Colon => "`:`",
            Tok::Arrow => "`->`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Plus => "`+`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn syntax(span: Span, msg: impl Into<String>) -> PcfError {
    PcfError::Syntax {
        line: span.line,
        col: span.col,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<(Vec<(Tok, Span)>, AddOrder), PcfError> {
    let mut toks = Vec::new();
    let mut order = AddOrder::LeftToRight;
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (byte, c) = chars[i];
            let span = Span {
                line: li + 1,
                col: i + 1,
            };
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '#' {
                let rest = line[byte + 1..].trim();
                if let Some(p) = rest.strip_prefix("pragma") {
                    match p.trim() {
                        "plus_rl" => order = AddOrder::RightToLeft,
                        "plus_lr" => order = AddOrder::LeftToRight,
                        other => return Err(syntax(span, format!("unknown pragma `{other}`"))),
                    }
                }
                break;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = chars.get(i).map_or(line.len(), |&(b, _)| b);
                let n = line[byte..end]
                    .parse()
                    .map_err(|_| syntax(span, "numeral too large"))?;
                toks.push((Tok::Num(n), span));
                debug_assert!(i > start);
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                    i += 1;
                }
                let end = chars.get(i).map_or(line.len(), |&(b, _)| b);
                let word = &line[byte..end];
                let tok = match word {
                    "fun" => Tok::Fun,
                    "nat" => Tok::Nat,
                    "succ" => Tok::Succ,
                    "pred" => Tok::Pred,
                    "ifz" => Tok::Ifz,
                    "then" => Tok::Then,
                    "else" => Tok::Else,
                    "fix" => Tok::Fix,
                    "omega" => Tok::Omega,
                    _ => Tok::Ident(word.to_string()),
                };
                toks.push((tok, span));
                continue;
            }
            let tok = match c {
                ':' => Tok::Colon,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '+' => Tok::Plus,
                '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                    i += 1;
                    Tok::Arrow
                }
                _ => return Err(syntax(span, format!("unexpected character `{c}`"))),
            };
            toks.push((tok, span));
            i += 1;
        }
    }
    let end = Span {
        line: src.lines().count().max(1),
        col: src.lines().last().map_or(0, |l| l.chars().count()) + 1,
    };
    toks.push((Tok::Eof, end));
    Ok((toks, order))
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    order: AddOrder,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, PcfError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(syntax(self.span(), format!("expected {tok}, found {}", self.peek())))
        }
    }

    fn term(&mut self) -> Result<Term, PcfError> {
        let span = self.span();
        match self.peek() {
            Tok::Fun => {
                self.bump();
                let name = match self.bump() {
                    (Tok::Ident(x), _) => x,
                    (t, s) => return Err(syntax(s, format!("expected a parameter name, found {t}"))),
                };
                self.expect(Tok::Colon)?;
                let ty = self.binder_type()?;
                let body = self.term()?;
                Ok(Term::new(TermKind::Lam(name, ty, Box::new(body)), span))
            }
            Tok::Ifz => {
                self.bump();
                let c = self.term()?;
                self.expect(Tok::Then)?;
                let a = self.term()?;
                self.expect(Tok::Else)?;
                let b = self.term()?;
                Ok(Term::new(TermKind::Ifz(Box::new(c), Box::new(a), Box::new(b)), span))
            }
            _ => self.sum(),
        }
    }

    /// The annotation of a binder together with the `->` that ends it. The
    /// arrow separating type from body is the last one after which no type
    /// follows.
    fn binder_type(&mut self) -> Result<Type, PcfError> {
        let mut parts = vec![self.type_atom()?];
        loop {
            self.expect(Tok::Arrow)?;
            let save = self.pos;
            match self.type_atom() {
                Ok(t) if *self.peek() == Tok::Arrow => parts.push(t),
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        let mut ty = parts.pop().expect("at least one part");
        while let Some(a) = parts.pop() {
            ty = Type::arrow(a, ty);
        }
        Ok(ty)
    }

    fn type_atom(&mut self) -> Result<Type, PcfError> {
        match self.peek() {
            Tok::Nat => {
                self.bump();
                Ok(Type::Nat)
            }
            Tok::LParen => {
                self.bump();
                let t = self.full_type()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            t => Err(syntax(self.span(), format!("expected a type, found {t}"))),
        }
    }

    fn full_type(&mut self) -> Result<Type, PcfError> {
        let a = self.type_atom()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            Ok(Type::arrow(a, self.full_type()?))
        } else {
            Ok(a)
        }
    }

    fn sum(&mut self) -> Result<Term, PcfError> {
        let mut lhs = self.app()?;
        while *self.peek() == Tok::Plus {
            let span = self.bump().1;
            let rhs = self.app()?;
            lhs = Term::new(TermKind::Add(Box::new(lhs), Box::new(rhs), self.order), span);
        }
        Ok(lhs)
    }

    fn starts_unit(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Num(_) | Tok::Ident(_) | Tok::Omega | Tok::LParen | Tok::Succ | Tok::Pred | Tok::Fix
        )
    }

    fn app(&mut self) -> Result<Term, PcfError> {
        if !self.starts_unit() {
            return Err(syntax(self.span(), format!("expected a term, found {}", self.peek())));
        }
        let mut head = self.unit()?;
        while self.starts_unit() {
            let arg = self.unit()?;
            let span = head.span;
            head = Term::new(TermKind::App(Box::new(head), Box::new(arg)), span);
        }
        Ok(head)
    }

    fn unit(&mut self) -> Result<Term, PcfError> {
        let (tok, span) = self.bump();
        let kind = match tok {
            Tok::Num(n) => TermKind::Num(n),
            Tok::Ident(x) => TermKind::Var(x),
            Tok::Omega => TermKind::Omega,
            Tok::Succ => TermKind::Succ(Box::new(self.app()?)),
            Tok::Pred => TermKind::Pred(Box::new(self.app()?)),
            Tok::Fix => TermKind::Fix(Box::new(self.app()?)),
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                return Ok(Term { span, ..t });
            }
            t => return Err(syntax(span, format!("expected a term, found {t}"))),
        };
        Ok(Term::new(kind, span))
    }
}

/// Parses a whole source file.
pub fn parse(src: &str) -> Result<Program, PcfError> {
    let (toks, order) = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        order,
    };
    let term = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(p.span(), format!("unexpected {} after term", p.peek())));
    }
    Ok(Program {
        term,
        plus_order: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(src: &str) -> Term {
        parse(src).unwrap().term
    }

    fn var(x: &str) -> Box<Term> {
        Box::new(Term::new(TermKind::Var(x.into()), Span::default()))
    }

    #[test]
    fn numerals_and_lambdas() {
        assert_eq!(t("3").kind, TermKind::Num(3));
        assert_eq!(
            t("fun x: nat -> succ x").kind,
            TermKind::Lam("x".into(), Type::Nat, Box::new(Term::new(TermKind::Succ(var("x")), Span::default())))
        );
    }

    #[test]
    fn binder_types_take_the_longest_arrow_chain() {
        let TermKind::Fix(inner) = t("fix (fun f: nat -> nat -> f)").kind else { panic!() };
        let TermKind::Lam(_, ty, body) = inner.kind else { panic!() };
        assert_eq!(ty, Type::arrow(Type::Nat, Type::Nat));
        assert_eq!(*body, *var("f"));
        let TermKind::Lam(_, ty, _) = t("fun g: (nat -> nat) -> nat -> g 1").kind else { panic!() };
        assert_eq!(ty, Type::arrow(Type::arrow(Type::Nat, Type::Nat), Type::Nat));
        let TermKind::Lam(_, ty, body) = t("fun x: nat -> (x)").kind else { panic!() };
        assert_eq!((ty, *body), (Type::Nat, *var("x")));
    }

    #[test]
    fn application_and_plus() {
        let term = t("f x y + succ z");
        let TermKind::Add(l, r, AddOrder::LeftToRight) = term.kind else { panic!() };
        assert_eq!(l.to_string(), "f x y");
        assert_eq!(r.to_string(), "succ z");
    }

    #[test]
    fn pragma_and_comments() {
        let p = parse("# adds right first\n#pragma plus_rl\nfun x: nat -> fun y: nat -> x + y").unwrap();
        assert_eq!(p.plus_order, AddOrder::RightToLeft);
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "fun x: nat -> fun y: nat -> x + y",
            "ifz pred 1 then 2 else (fun x: nat -> x) 3",
            "fix (fun f: (nat -> nat) -> nat -> f) 2",
            "fun f: nat -> nat -> f (f omega)",
        ] {
            let term = t(src);
            assert_eq!(t(&term.to_string()), term, "{src}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("fun x nat -> x").unwrap_err().position(), (1, 7));
        assert_eq!(parse("succ\n  )").unwrap_err().position(), (2, 3));
        assert_eq!(parse("1 2 )").unwrap_err().position(), (1, 5));
        assert!(parse("x $ y").is_err());
        assert!(parse("").is_err());
    }
}
