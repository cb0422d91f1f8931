//! A small expression grammar for polynomials such as `x^3+y^3+z^7` or
//! `2*t3-10/7*t1*t2`.
//!
//! Identifiers are variable names of the target ring; an identifier of the
//! form `zN` that is not a variable denotes the root of unity e^{2πi/N}.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{Poly, Vars};
use super::scalar::Scalar;
use crate::error::{Result, SqhError};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(SqhError::Parse(format!(
            "{msg} at position {} in '{}'",
            self.pos,
            self.chars.iter().collect::<String>()
        )))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '\u{2212}'
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.vars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some(c) if Self::is_minus(c) => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            let t = self.term()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    if !f.is_constant() || f.is_zero() {
                        return self.err("division by a non-constant or zero");
                    }
                    let inv = f
                        .constant_term()
                        .inverse()
                        .expect("nonzero constant checked");
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let negative = matches!(self.chars.get(self.pos), Some(c) if Self::is_minus(*c));
            if negative {
                self.pos += 1;
            }
            let n = self.integer()?;
            let e: i64 = n
                .try_into()
                .or_else(|_| self.err("exponent too large"))?;
            if negative {
                if !base.is_constant() || base.is_zero() {
                    return self.err("negative exponent of a non-constant");
                }
                let c = base.constant_term().pow(-e);
                return Ok(Poly::constant(self.vars, c));
            }
            let e: u32 = e.try_into().or_else(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>().or_else(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(
                    self.vars,
                    Scalar::from_rational(BigRational::from_integer(n)),
                ))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if let Some(i) = self.vars.index_of(&name) {
                    return Ok(Poly::var(self.vars, i));
                }
                if let Some(rest) = name.strip_prefix('z') {
                    if let Ok(n) = rest.parse::<u32>() {
                        if n >= 1 {
                            return Ok(Poly::constant(self.vars, Scalar::root_of_unity(n, 1)));
                        }
                    }
                }
                self.err(&format!("unknown identifier '{name}'"))
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

/// Parses an expression into a polynomial over `vars`.
pub fn parse_poly(input: &str, vars: &Vars) -> Result<Poly> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        vars,
    };
    if p.peek().is_none() {
        return Err(SqhError::Parse("empty expression".into()));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses an exact scalar such as `10/7`, `-3`, `z21^5` or `-1-z3`.
pub fn parse_scalar(input: &str) -> Result<Scalar> {
    let vars = Vars::new(Vec::<String>::new());
    let p = parse_poly(input, &vars)?;
    Ok(p.constant_term())
}
