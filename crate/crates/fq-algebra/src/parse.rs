//! Parser for human-written polynomials such as `T^2+T+1` or `T*(T+1)`.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := power ('*' power)*`,
//! `power := atom ('^' int)?`, `atom := int | 'T' | '(' expr ')'`, with an
//! optional leading sign on an expression. Integer literals are reduced mod p
//! for prime fields; for q = p^n (n > 1) a literal must be below q and names
//! the F_q element with that table index.

use crate::error::AlgebraError;
use crate::field::Fq;
use crate::poly::PolyA;

/// Parses `input` as an element of F_q[T].
pub fn parse_poly(field: &'static Fq, input: &str) -> Result<PolyA, AlgebraError> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { field, chars: &chars, pos: 0, input };
    if chars.is_empty() {
        return Err(p.err("empty input"));
    }
    let v = p.expr()?;
    if p.pos != chars.len() {
        return Err(p.err(&format!("unexpected {:?}", chars[p.pos])));
    }
    Ok(v)
}

struct Parser<'a> {
    field: &'static Fq,
    chars: &'a [char],
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> AlgebraError {
        AlgebraError::Parse { input: self.input.to_string(), reason: reason.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<PolyA, AlgebraError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PolyA, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                // implicit product such as 2T or (T+1)(T+2)
                Some('T' | 't' | '(') => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<PolyA, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyA, AlgebraError> {
        match self.peek() {
            Some('T' | 't') => {
                self.pos += 1;
                Ok(PolyA::t(self.field))
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let f = self.field;
                if f.n() == 1 {
                    Ok(PolyA::from_ints(f, &[(n % u64::from(f.p())) as i64]))
                } else if n < u64::from(f.q()) {
                    Ok(PolyA::from_indices(f, &[n as u32]))
                } else {
                    Err(self.err(&format!("literal {n} is not an index of F_{}", f.q())))
                }
            }
            Some(c) => Err(self.err(&format!("unexpected {c:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<u64, AlgebraError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer too large"))
    }
}
