//! Text syntax for polynomials: `3/2*x^2*y - 1`.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' uint]
//! atom   := uint ['/' uint] | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are resolved against the caller's variable table;
//! unknown names are an error with a byte offset for diagnostics.

use super::poly::Polynomial;
use super::scalar::{FieldKind, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    /// Byte offset into the input where the problem starts.
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (at byte {})", self.message, self.offset)
    }
}

impl std::error::Error for PolyParseError {}

pub fn parse_polynomial(
    input: &str,
    vars: &[String],
    kind: FieldKind,
) -> Result<Polynomial, PolyParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
        vars,
        kind,
    };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: &'a [String],
    kind: FieldKind,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> PolyParseError {
        PolyParseError {
            offset: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyParseError> {
        let arity = self.vars.len();
        let mut acc = Polynomial::zero(arity);
        let mut negate = self.eat(b'-');
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, PolyParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.uint()?;
            if e > 64 {
                return Err(self.error("exponent too large"));
            }
            Ok(base.pow(e as u32))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, PolyParseError> {
        let arity = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.uint()?;
                    let s = Scalar::from_ratio(self.kind, n as i64, d).map_err(|e| PolyParseError {
                        offset: self.pos,
                        message: e.to_string(),
                    })?;
                    Ok(Polynomial::constant(arity, s))
                } else {
                    Ok(Polynomial::constant(
                        arity,
                        Scalar::from_i64(self.kind, n as i64),
                    ))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .map(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'\'')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let idx = self.vars.iter().position(|v| v == name).ok_or_else(|| {
                    PolyParseError {
                        offset: start,
                        message: format!("unknown variable `{name}`"),
                    }
                })?;
                self.skip_ws();
                Ok(Polynomial::variable(arity, idx, self.kind))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }

    fn uint(&mut self) -> Result<u64, PolyParseError> {
        let start = self.pos;
        while self.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        self.skip_ws();
        text.parse().map_err(|_| PolyParseError {
            offset: start,
            message: "number out of range".to_string(),
        })
    }
}
