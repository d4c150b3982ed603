//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := base ('^' integer)?
//! base     := rational | var | func '(' expr ')' | '(' expr ')' | '-' base
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Note that `-x^2` parses as `(-x)^2`, exactly as the grammar says.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Expr, Func, VarId};
use crate::error::{Error, Result};

/// Parses `text` into a raw (non-canonicalized) expression tree.
pub fn parse_expr(text: &str, vars: &[VarId]) -> Result<Expr> {
    let table: HashMap<&str, &VarId> = vars.iter().map(|v| (v.name(), v)).collect();
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: table,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: HashMap<&'a str, &'a VarId>,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                let t = self.term()?;
                terms.push(negate(t));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::raw_sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        let mut factors = Vec::new();
        loop {
            if self.eat(b'*') {
                factors.push(acc);
                acc = self.factor()?;
            } else if self.eat(b'/') {
                let den = self.factor()?;
                let num = collapse(std::mem::take(&mut factors), acc);
                acc = Expr::raw_quotient(num, den);
            } else {
                break;
            }
        }
        Ok(collapse(factors, acc))
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let neg = self.eat(b'-');
            self.skip_ws();
            let n = self.digits()?;
            let n: i64 = n
                .try_into()
                .map_err(|_| Error::Syntax { offset: start, message: "exponent too large".into() })?;
            let n = if neg { -n } else { n };
            let n = i32::try_from(n)
                .map_err(|_| Error::Syntax { offset: start, message: "exponent too large".into() })?;
            return Ok(Expr::raw_pow(base, n));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'-') => {
                self.pos += 1;
                Ok(negate(self.base()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            Some(c) => Err(self.error(&format!("unexpected character `{}`", c as char))),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits parse"))
    }

    fn rational(&mut self) -> Result<Expr> {
        let n = self.digits()?;
        // `integer / positive-integer` is a single literal when digits follow the slash.
        let save = self.pos;
        if self.eat(b'/') && self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let dpos = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(Error::Syntax {
                    offset: dpos,
                    message: "zero denominator in rational literal".into(),
                });
            }
            return Ok(Expr::raw_const(BigRational::new(n, d)));
        }
        self.pos = save;
        Ok(Expr::raw_const(BigRational::from_integer(n)))
    }

    fn identifier(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        if let Some(f) = Func::from_name(name) {
            self.expect(b'(')?;
            let arg = self.expr()?;
            self.expect(b')')?;
            return Ok(Expr::func(f, arg));
        }
        match self.vars.get(name) {
            Some(v) => Ok(Expr::raw_var(v)),
            None => Err(Error::UnknownVariable(name.to_string())),
        }
    }
}

fn negate(e: Expr) -> Expr {
    Expr::raw_product(vec![Expr::raw_const(BigRational::from_integer((-1).into())), e])
}

fn collapse(mut factors: Vec<Expr>, last: Expr) -> Expr {
    if factors.is_empty() {
        last
    } else {
        factors.push(last);
        Expr::raw_product(factors)
    }
}
