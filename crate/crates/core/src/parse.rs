//! Expression parser for phase-space and operator polynomials.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*      juxtaposition multiplies
//! factor := atom ('^' '-'? int)?
//! atom   := ident | int | '(' expr ')'
//! ```
//!
//! Identifiers are `hbar`, `l`, `sqrt2`, `i` plus the variables of the target
//! algebra (`x`, `p` for phase-space polynomials; `X`, `P`, `a`, `ad` for
//! operators). Division and negative exponents are only allowed on
//! single-term scalars, which makes `n/m` rational literals a special case.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::phasepoly::PhasePoly;
use crate::scalar::Scalar;

const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected {found}, expected {expected}")]
    UnexpectedToken { found: String, expected: &'static str },
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("negative exponent on `{0}`")]
    NegativeExponent(String),
    #[error("exponent must be an integer")]
    NonIntegerExponent,
    #[error("exponent {0} exceeds the limit of {MAX_EXPONENT}")]
    ExponentTooLarge(String),
    #[error("decimal literals are not exact; write a rational n/m")]
    DecimalLiteral,
    #[error("division by an expression containing variables")]
    DivisionByNonScalar,
    #[error("divisor is zero or a sum of scalar terms and has no exact inverse")]
    NonInvertibleDivisor,
}

/// Syntax or semantic error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

/// A ring the parser can build values in.
pub trait ExprAlgebra: Sized {
    fn from_scalar(s: Scalar) -> Self;
    /// Value of an algebra-specific identifier, if recognised.
    fn variable(name: &str) -> Option<Self>;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The value as a pure scalar, if it has no variable content.
    fn as_scalar(&self) -> Option<Scalar>;
}

impl ExprAlgebra for PhasePoly {
    fn from_scalar(s: Scalar) -> Self {
        PhasePoly::constant(s)
    }
    fn variable(name: &str) -> Option<Self> {
        match name {
            "x" => Some(PhasePoly::x()),
            "p" => Some(PhasePoly::p()),
            _ => None,
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_scalar(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.len() == 1 {
            let (e, c) = self.terms().next()?;
            if *e == (0, 0) {
                return Some(c.clone());
            }
        }
        None
    }
}

/// Parse a phase-space expression into its expanded polynomial.
pub fn parse_phase_expr(text: &str) -> Result<PhasePoly, ParseError> {
    parse_expr(text)
}

/// Parse `text` into any [`ExprAlgebra`].
pub fn parse_expr<A: ExprAlgebra>(text: &str) -> Result<A, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len(), _marker: std::marker::PhantomData::<A> };
    let value = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError {
            kind: ParseErrorKind::UnexpectedToken { found: tok.kind.describe(), expected: "operator or end of input" },
            position: tok.at,
        });
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq)]
enum TokKind {
    Int(BigInt),
    Decimal,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl TokKind {
    fn describe(&self) -> String {
        match self {
            TokKind::Int(n) => format!("number `{n}`"),
            TokKind::Decimal => "decimal number".into(),
            TokKind::Ident(s) => format!("identifier `{s}`"),
            TokKind::Plus => "`+`".into(),
            TokKind::Minus => "`-`".into(),
            TokKind::Star => "`*`".into(),
            TokKind::Slash => "`/`".into(),
            TokKind::Caret => "`^`".into(),
            TokKind::LParen => "`(`".into(),
            TokKind::RParen => "`)`".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, TokKind::Int(_) | TokKind::Decimal | TokKind::Ident(_) | TokKind::LParen)
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokKind,
    at: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let at = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token { kind: TokKind::Decimal, at });
                continue;
            }
            let n: BigInt = text[at..i].parse().expect("digits");
            out.push(Token { kind: TokKind::Int(n), at });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { kind: TokKind::Ident(text[at..i].to_string()), at });
            continue;
        }
        let kind = match c {
            '+' => TokKind::Plus,
            '-' => TokKind::Minus,
            '*' => TokKind::Star,
            '/' => TokKind::Slash,
            '^' => TokKind::Caret,
            '(' => TokKind::LParen,
            ')' => TokKind::RParen,
            _ => {
                let ch = text[at..].chars().next().unwrap_or('?');
                return Err(ParseError { kind: ParseErrorKind::UnexpectedChar(ch), position: at });
            }
        };
        out.push(Token { kind, at });
        i += 1;
    }
    Ok(out)
}

struct Parser<A> {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
    _marker: std::marker::PhantomData<A>,
}

impl<A: ExprAlgebra> Parser<A> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.at)
    }

    fn err<T>(&self, kind: ParseErrorKind, position: usize) -> Result<T, ParseError> {
        Err(ParseError { kind, position })
    }

    fn expr(&mut self) -> Result<A, ParseError> {
        let negate = match self.peek().map(|t| &t.kind) {
            Some(TokKind::Minus) => {
                self.pos += 1;
                true
            }
            Some(TokKind::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokKind::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs);
                }
                Some(TokKind::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().map(|t| t.kind.clone()) {
                Some(TokKind::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs);
                }
                Some(TokKind::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let rhs = self.factor()?;
                    let Some(s) = rhs.as_scalar() else {
                        return self.err(ParseErrorKind::DivisionByNonScalar, at);
                    };
                    let Some(inv) = s.inverse() else {
                        return self.err(ParseErrorKind::NonInvertibleDivisor, at);
                    };
                    acc = acc.mul(&A::from_scalar(inv));
                }
                Some(k) if k.starts_atom() => {
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<A, ParseError> {
        let base_at = self.here();
        let (base, base_name) = self.atom()?;
        if !matches!(self.peek().map(|t| &t.kind), Some(TokKind::Caret)) {
            return Ok(base);
        }
        self.pos += 1;
        let exp_at = self.here();
        let negative = if matches!(self.peek().map(|t| &t.kind), Some(TokKind::Minus)) {
            self.pos += 1;
            true
        } else {
            false
        };
        let magnitude = match self.next() {
            Some(Token { kind: TokKind::Int(n), .. }) => n,
            Some(Token { kind: TokKind::Decimal, at }) => return self.err(ParseErrorKind::NonIntegerExponent, at),
            Some(t) => {
                return self.err(
                    ParseErrorKind::UnexpectedToken { found: t.kind.describe(), expected: "integer exponent" },
                    t.at,
                )
            }
            None => return self.err(ParseErrorKind::UnexpectedEnd("integer exponent"), self.end),
        };
        let e = match magnitude.to_u32() {
            Some(e) if e <= MAX_EXPONENT => e,
            _ => return self.err(ParseErrorKind::ExponentTooLarge(magnitude.to_string()), exp_at),
        };
        if negative {
            let name = base_name.unwrap_or_else(|| "expression".to_string());
            let Some(s) = base.as_scalar() else {
                return self.err(ParseErrorKind::NegativeExponent(name), exp_at);
            };
            let Some(v) = s.pow(-(e as i32)) else {
                return self.err(ParseErrorKind::NonInvertibleDivisor, base_at);
            };
            return Ok(A::from_scalar(v));
        }
        let mut acc = A::from_scalar(Scalar::one());
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Returns the value and, for identifiers, the name (used in error text).
    fn atom(&mut self) -> Result<(A, Option<String>), ParseError> {
        let Some(tok) = self.next() else {
            return self.err(ParseErrorKind::UnexpectedEnd("a value"), self.end);
        };
        match tok.kind {
            TokKind::Int(n) => Ok((A::from_scalar(Scalar::from_rational(BigRational::from_integer(n))), None)),
            TokKind::Decimal => self.err(ParseErrorKind::DecimalLiteral, tok.at),
            TokKind::Ident(name) => {
                let value = match name.as_str() {
                    "hbar" => A::from_scalar(Scalar::hbar()),
                    "l" => A::from_scalar(Scalar::l()),
                    "sqrt2" => A::from_scalar(Scalar::sqrt2()),
                    "i" => A::from_scalar(Scalar::i()),
                    other => match A::variable(other) {
                        Some(v) => v,
                        None => return self.err(ParseErrorKind::UnknownIdentifier(name), tok.at),
                    },
                };
                Ok((value, Some(name)))
            }
            TokKind::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token { kind: TokKind::RParen, .. }) => Ok((inner, None)),
                    Some(t) => {
                        self.err(ParseErrorKind::UnexpectedToken { found: t.kind.describe(), expected: "`)`" }, t.at)
                    }
                    None => self.err(ParseErrorKind::UnexpectedEnd("`)`"), self.end),
                }
            }
            other => self.err(ParseErrorKind::UnexpectedToken { found: other.describe(), expected: "a value" }, tok.at),
        }
    }
}
