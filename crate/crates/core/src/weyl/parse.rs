//! Text syntax for algebra elements.
//!
//! ```text
//! expr     := [ '-' ] term { ( '+' | '-' ) term }
//! term     := factor { '*' factor }
//! factor   := atom [ '^' uint ]
//! atom     := 'x' uint | 'd' uint | rational | '(' expr ')'
//! rational := uint [ '/' uint ]
//! ```
//!
//! Whitespace is ignored between tokens. Generator indices are 1-based. The
//! number of variables is inferred as the largest index mentioned unless an
//! explicit `m` is supplied, which must cover every index used. Examples:
//! `d1*x1`, `x1^2*d3 + 3/2`, `-(x1 + d2)^2`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::rat::Rat;

use super::WeylElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylParseError {
    pub position: usize,
    pub message: String,
}

impl core::fmt::Display for WeylParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

#[derive(Clone, Debug)]
enum Ast {
    Scalar(Rat),
    Gen { is_x: bool, index: usize },
    Neg(Vec<Ast>),
    Sum(Vec<(bool, Ast)>), // (negated, term)
    Product(Vec<Ast>),
    Power(Vec<Ast>, u32),
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    max_index: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, WeylParseError> {
        Err(WeylParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn parse_uint(&mut self) -> Result<u64, WeylParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse().map_err(|_| WeylParseError {
            position: start,
            message: String::from("number too large"),
        })
    }

    fn parse_expr(&mut self) -> Result<Ast, WeylParseError> {
        let mut terms = Vec::new();
        let mut negated = if self.peek() == Some(b'-') {
            self.bump();
            true
        } else {
            false
        };
        loop {
            let term = self.parse_term()?;
            terms.push((negated, term));
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    negated = false;
                }
                Some(b'-') => {
                    self.bump();
                    negated = true;
                }
                _ => break,
            }
        }
        Ok(Ast::Sum(terms))
    }

    fn parse_term(&mut self) -> Result<Ast, WeylParseError> {
        let mut factors = alloc::vec![self.parse_factor()?];
        while self.peek() == Some(b'*') {
            self.bump();
            factors.push(self.parse_factor()?);
        }
        Ok(Ast::Product(factors))
    }

    fn parse_factor(&mut self) -> Result<Ast, WeylParseError> {
        let base = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.parse_uint()?;
            if e > u32::MAX as u64 {
                return self.err("exponent too large");
            }
            return Ok(Ast::Power(alloc::vec![base], e as u32));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Ast, WeylParseError> {
        match self.peek() {
            Some(b'x') | Some(b'd') => {
                let is_x = self.bump() == Some(b'x');
                let idx = self.parse_uint()?;
                if idx == 0 {
                    return self.err("generator indices start at 1");
                }
                let index = idx as usize;
                self.max_index = self.max_index.max(index);
                Ok(Ast::Gen { is_x, index })
            }
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(Ast::Neg(alloc::vec![inner]).simplify_paren())
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.parse_uint()?;
                let q = if self.peek() == Some(b'/') {
                    self.bump();
                    let q = self.parse_uint()?;
                    if q == 0 {
                        return self.err("zero denominator");
                    }
                    q
                } else {
                    1
                };
                Ok(Ast::Scalar(Rat::new(BigInt::from(p), BigInt::from(q))))
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

impl Ast {
    // A parenthesized expression is just itself; the Neg wrapper only exists
    // so the variant count stays small.
    fn simplify_paren(self) -> Ast {
        match self {
            Ast::Neg(mut inner) if inner.len() == 1 => inner.pop().unwrap(),
            other => other,
        }
    }

    fn eval(&self, m: usize) -> Result<WeylElement, WeylParseError> {
        match self {
            Ast::Scalar(r) => Ok(WeylElement::scalar(m, r.clone())),
            Ast::Gen { is_x, index } => {
                let g = if *is_x {
                    WeylElement::xgen(m, *index)
                } else {
                    WeylElement::dgen(m, *index)
                };
                g.map_err(|e| WeylParseError {
                    position: 0,
                    message: format!("{e}"),
                })
            }
            Ast::Neg(inner) => Ok(inner[0].eval(m)?.neg()),
            Ast::Sum(terms) => {
                let mut acc = WeylElement::zero(m);
                for (negated, t) in terms {
                    let v = t.eval(m)?;
                    let v = if *negated { v.neg() } else { v };
                    acc = acc.add(&v).unwrap();
                }
                Ok(acc)
            }
            Ast::Product(factors) => {
                let mut acc = WeylElement::one(m);
                for f in factors {
                    acc = acc.multiply(&f.eval(m)?).unwrap();
                }
                Ok(acc)
            }
            Ast::Power(base, e) => Ok(base[0].eval(m)?.pow(*e).unwrap()),
        }
    }
}

/// Parses an element. `m_override` fixes the number of variables; it must be
/// at least the largest generator index mentioned. Without an override the
/// arity is the largest index (zero for pure scalars).
pub fn parse_element(
    input: &str,
    m_override: Option<usize>,
) -> Result<WeylElement, WeylParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
        max_index: 0,
    };
    let ast = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    let m = match m_override {
        Some(m) => {
            if m < p.max_index {
                return Err(WeylParseError {
                    position: 0,
                    message: format!(
                        "m={} is smaller than the largest generator index {}",
                        m, p.max_index
                    ),
                });
            }
            m
        }
        None => p.max_index,
    };
    ast.eval(m)
}
