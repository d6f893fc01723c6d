//! Text syntax for polynomials.
//!
//! Grammar (standard precedence, `^` binds tightest, unary minus allowed):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | '(' sum ')'
//! ```
//!
//! Division is only accepted by a nonzero constant, which is how rational
//! coefficients such as `3/2*x` are written. The printer emits exactly this
//! syntax, so `parse_polynomial(&p.to_string(), ctx) == p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Polynomial, Rational, VariableContext};
use crate::error::{Error, Result};

pub fn parse_polynomial(text: &str, ctx: &VariableContext) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        ctx,
    };
    let p = parser.sum()?;
    match parser.peek() {
        None => Ok(p),
        Some(t) => Err(t.error(format!("unexpected `{}`", t.kind))),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Int(BigInt),
    Ident(String),
    Op(char),
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Int(n) => write!(f, "{n}"),
            Kind::Ident(s) => write!(f, "{s}"),
            Kind::Op(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    line: usize,
    column: usize,
}

impl Token {
    fn error(&self, message: String) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message,
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                kind: Kind::Int(s.parse().expect("digits")),
                line: tl,
                column: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                kind: Kind::Ident(chars[start..i].iter().collect()),
                line: tl,
                column: tc,
            });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Token {
                kind: Kind::Op(c),
                line: tl,
                column: tc,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Parse {
            line: tl,
            column: tc,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ctx: &'a VariableContext,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_op(&self) -> Option<char> {
        match self.peek() {
            Some(Token { kind: Kind::Op(c), .. }) => Some(*c),
            _ => None,
        }
    }

    fn eof_error(&self) -> Error {
        let (line, column) = self
            .tokens
            .last()
            .map(|t| (t.line, t.column + t.kind.to_string().len()))
            .unwrap_or((1, 1));
        Error::Parse {
            line,
            column,
            message: "unexpected end of input".into(),
        }
    }

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            let op_tok = self.tokens[self.pos].clone();
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err(op_tok.error("division is only allowed by a nonzero constant".into()));
                }
                acc = acc.scale(&rhs.constant_term().recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let tok = self.peek().cloned().ok_or_else(|| self.eof_error())?;
        match &tok.kind {
            Kind::Int(n) => {
                self.pos += 1;
                let e: u32 = n
                    .try_into()
                    .map_err(|_| tok.error(format!("exponent {n} too large")))?;
                Ok(base.pow(e))
            }
            _ => Err(tok.error("exponent must be a non-negative integer literal".into())),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let tok = self.peek().cloned().ok_or_else(|| self.eof_error())?;
        self.pos += 1;
        match &tok.kind {
            Kind::Int(n) => Ok(Polynomial::constant(self.ctx, Rational::from_integer(n.clone()))),
            Kind::Ident(name) => match self.ctx.index_of(name) {
                Some(i) => Ok(Polynomial::var(self.ctx, i)),
                None => Err(Error::UnknownIdentifier(name.clone())),
            },
            Kind::Op('(') => {
                let inner = self.sum()?;
                match self.peek() {
                    Some(Token { kind: Kind::Op(')'), .. }) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(t) => Err(t.error(format!("expected `)`, found `{}`", t.kind))),
                    None => Err(self.eof_error()),
                }
            }
            other => Err(tok.error(format!("unexpected `{other}`"))),
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut first = true;
            if m.is_one() || !a.is_one() {
                write_rational(f, &a)?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ctx().name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn ctx() -> VariableContext {
        VariableContext::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn precedence() {
        let c = ctx();
        let a = parse_polynomial("-x^2", &c).unwrap();
        assert_eq!(a, -&parse_polynomial("x*x", &c).unwrap());
        let b = parse_polynomial("2*x + 3*y^2*z", &c).unwrap();
        assert_eq!(b.to_string(), "3*y^2*z + 2*x");
        assert_eq!(parse_polynomial("0", &c).unwrap(), Polynomial::zero(&c));
        assert_eq!(
            parse_polynomial("1/2 - 3/4", &c).unwrap(),
            Polynomial::constant(&c, rat(-1, 4))
        );
    }

    #[test]
    fn toy_relation_text() {
        let c = ctx();
        let p = parse_polynomial("x^2*y - (y^2 - x*z)^2", &c).unwrap();
        assert_eq!(p.to_string(), "-x^2*z^2 + 2*x*y^2*z - y^4 + x^2*y");
        let s = parse_polynomial("y^2 - x*z", &c).unwrap();
        assert_eq!(s.to_string(), "-x*z + y^2");
    }

    #[test]
    fn printer_formats() {
        let c = ctx();
        let p = Polynomial::constant(&c, rat(-3, 2));
        assert_eq!(p.to_string(), "-3/2");
        let q = parse_polynomial("-3/2*x^2*y + 5", &c).unwrap();
        assert_eq!(q.to_string(), "-3/2*x^2*y + 5");
        assert_eq!(parse_polynomial(&q.to_string(), &c).unwrap(), q);
        assert_eq!(Polynomial::constant(&c, int(-1)).to_string(), "-1");
    }

    #[test]
    fn errors_carry_position() {
        let c = ctx();
        match parse_polynomial("x +\n  * y", &c) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_polynomial("x + w", &c), Err(Error::UnknownIdentifier("w".into())));
        assert!(matches!(parse_polynomial("x / y", &c), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("(x + 1", &c), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x^y", &c), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("x $ 1", &c), Err(Error::Parse { line: 1, column: 3, .. })));
    }
}
