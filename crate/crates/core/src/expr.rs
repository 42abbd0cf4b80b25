//! Arithmetic expression grammar shared by the text formats.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
//! atom     := INT | IDENT | '(' expr ')'
//! ```

use alloc::boxed::Box;
use alloc::string::{String, ToString};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// `base ^ (num / den)`; `den` is 1 for integer exponents.
    Pow(Box<Expr>, i64, i64),
}

/// Interprets an [`Expr`] in some concrete ring.
pub trait Evaluator {
    type Value;
    type Error;

    fn int(&self, c: i64) -> Result<Self::Value, Self::Error>;
    fn var(&self, name: &str) -> Result<Self::Value, Self::Error>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value, Self::Error>;
    fn pow(&self, a: Self::Value, num: i64, den: i64) -> Result<Self::Value, Self::Error>;
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ParseError> {
        let mut p = Parser { src: src.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(ParseError::new(p.pos, "unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn eval<E: Evaluator>(&self, ev: &E) -> Result<E::Value, E::Error> {
        match self {
            Expr::Int(c) => ev.int(*c),
            Expr::Var(name) => ev.var(name),
            Expr::Neg(a) => {
                let a = a.eval(ev)?;
                ev.neg(a)
            }
            Expr::Add(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.add(a, b)
            }
            Expr::Sub(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.sub(a, b)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.mul(a, b)
            }
            Expr::Div(a, b) => {
                let (a, b) = (a.eval(ev)?, b.eval(ev)?);
                ev.div(a, b)
            }
            Expr::Pow(a, n, d) => {
                let a = a.eval(ev)?;
                ev.pow(a, *n, *d)
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, alloc::format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.unary()?;
                lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            let a = self.unary()?;
            return Ok(Expr::Neg(Box::new(a)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let (n, d) = if self.eat(b'(') {
            let neg = self.eat(b'-');
            let n = self.int()?;
            let d = if self.eat(b'/') { self.int()? } else { 1 };
            self.expect(b')')?;
            if d == 0 {
                return Err(ParseError::new(self.pos, "zero exponent denominator"));
            }
            (if neg { -n } else { n }, d)
        } else {
            let neg = self.eat(b'-');
            let n = self.int()?;
            (if neg { -n } else { n }, 1)
        };
        Ok(Expr::Pow(Box::new(base), n, d))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected integer"));
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<i64>().map_err(|_| ParseError::new(start, "integer out of range"))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.int()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::Var(s.to_string()))
            }
            Some(_) => Err(ParseError::new(self.pos, "unexpected character")),
            None => Err(ParseError::new(self.pos, "unexpected end of input")),
        }
    }
}

/// True for names accepted as variables by the grammar.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = Expr::parse("-x^2 + 3*y/z").unwrap();
        let want = Expr::Add(
            Box::new(Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var("x".into())), 2, 1)))),
            Box::new(Expr::Div(
                Box::new(Expr::Mul(Box::new(Expr::Int(3)), Box::new(Expr::Var("y".into())))),
                Box::new(Expr::Var("z".into())),
            )),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn exponents() {
        assert_eq!(Expr::parse("y^-2").unwrap(), Expr::Pow(Box::new(Expr::Var("y".into())), -2, 1));
        assert_eq!(Expr::parse("x^(1/9)").unwrap(), Expr::Pow(Box::new(Expr::Var("x".into())), 1, 9));
        assert_eq!(Expr::parse("x^(-2/3)").unwrap(), Expr::Pow(Box::new(Expr::Var("x".into())), -2, 3));
    }

    #[test]
    fn errors_carry_offsets() {
        let err = Expr::parse("x + * y").unwrap_err();
        assert_eq!(err.offset, 4);
        assert!(Expr::parse("(x").is_err());
        assert!(Expr::parse("x y").is_err());
        assert!(Expr::parse("x^(1/0)").is_err());
    }
}
