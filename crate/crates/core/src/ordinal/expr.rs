//! Order-type expressions: naturals, `w`, `+`, `*`, `^` and `rev(...)`.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Nat(u64),
    Omega,
    Sum(Box<Expr>, Box<Expr>),
    /// `a * b`: `b` copies of `a`, ordered by `b`.
    Product(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, Box<Expr>),
    /// The reverse order.
    Rev(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl Expr {
    pub fn sum(a: Expr, b: Expr) -> Expr {
        Expr::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: Expr, b: Expr) -> Expr {
        Expr::Product(Box::new(a), Box::new(b))
    }

    pub fn power(a: Expr, b: Expr) -> Expr {
        Expr::Power(Box::new(a), Box::new(b))
    }

    pub fn rev(a: Expr) -> Expr {
        Expr::Rev(Box::new(a))
    }

    pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected input after expression"));
        }
        Ok(e)
    }

    /// True when no `rev` occurs anywhere inside.
    pub fn is_pure_ordinal(&self) -> bool {
        match self {
            Expr::Nat(_) | Expr::Omega => true,
            Expr::Sum(a, b) | Expr::Product(a, b) | Expr::Power(a, b) => a.is_pure_ordinal() && b.is_pure_ordinal(),
            Expr::Rev(_) => false,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Nat(_) | Expr::Omega => 0,
            Expr::Sum(a, b) | Expr::Product(a, b) | Expr::Power(a, b) => 1 + a.depth().max(b.depth()),
            Expr::Rev(a) => 1 + a.depth(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum(..) => 1,
            Expr::Product(..) => 2,
            Expr::Power(..) => 3,
            _ => 4,
        }
    }
}

/// The reverse of `e` with reversal pushed through sums, double reversals
/// cancelled and finite orders (which are self-dual) left bare.
pub fn reverse(e: &Expr) -> Expr {
    match e {
        Expr::Sum(a, b) => Expr::sum(reverse(b), reverse(a)),
        Expr::Rev(a) => push_reversals(a),
        Expr::Nat(n) => Expr::Nat(*n),
        other => Expr::rev(push_reversals(other)),
    }
}

/// Normalizes every `rev(...)` inside `e` the way [`reverse`] does.
pub fn push_reversals(e: &Expr) -> Expr {
    match e {
        Expr::Nat(_) | Expr::Omega => e.clone(),
        Expr::Sum(a, b) => Expr::sum(push_reversals(a), push_reversals(b)),
        Expr::Product(a, b) => Expr::product(push_reversals(a), push_reversals(b)),
        Expr::Power(a, b) => Expr::power(push_reversals(a), push_reversals(b)),
        Expr::Rev(a) => reverse(a),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // sums and products are left-associative, powers right-associative
        let side = |f: &mut fmt::Formatter<'_>, child: &Expr, min: u8| {
            if child.precedence() < min {
                write!(f, "({child})")
            } else {
                write!(f, "{child}")
            }
        };
        match self {
            Expr::Nat(n) => write!(f, "{n}"),
            Expr::Omega => f.write_str("w"),
            Expr::Sum(a, b) => {
                side(f, a, 1)?;
                f.write_str("+")?;
                side(f, b, 2)
            }
            Expr::Product(a, b) => {
                side(f, a, 2)?;
                f.write_str("*")?;
                side(f, b, 3)
            }
            Expr::Power(a, b) => {
                side(f, a, 4)?;
                f.write_str("^")?;
                side(f, b, 3)
            }
            Expr::Rev(a) => write!(f, "rev({a})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
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

    fn sum(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.product()?;
        while self.eat(b'+') {
            e = Expr::sum(e, self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.power()?;
        while self.eat(b'*') {
            e = Expr::product(e, self.power()?);
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.pos;
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exp_start = self.pos;
        let exp = self.power()?;
        if !base.is_pure_ordinal() {
            return Err(SyntaxError {
                position: start,
                message: "the base of `^` must not contain `rev`".into(),
            });
        }
        if !exp.is_pure_ordinal() {
            return Err(SyntaxError {
                position: exp_start,
                message: "the exponent of `^` must not contain `rev`".into(),
            });
        }
        Ok(Expr::power(base, exp))
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Expr::Omega)
            }
            Some(b'r') if self.src[self.pos..].starts_with(b"rev") => {
                self.pos += 3;
                if !self.eat(b'(') {
                    return Err(self.error("expected `(` after `rev`"));
                }
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(Expr::rev(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                digits.parse().map(Expr::Nat).map_err(|_| SyntaxError {
                    position: start,
                    message: "natural literal too large".into(),
                })
            }
            Some(_) => Err(self.error("expected a natural, `w`, `rev(` or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
