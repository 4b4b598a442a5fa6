//! Recursive-descent parser shared by scalar entries and noncommutative
//! polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor | factor)*      juxtaposition: polynomials only
//! factor := '-' factor | atom ('^' uint)?
//! atom   := '(' expr ')' | integer | 'w' | 'x' | 'y'   x, y: polynomials only
//! ```
//!
//! Unary minus applies to a whole factor, so `-w^2` is `-(w^2)`.

use num_bigint::BigInt;

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Expr {
    Int(BigInt, usize),
    W(usize),
    X(usize),
    Y(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Dividend, divisor, byte offset of the `/`.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    polynomial: bool,
}

pub(crate) fn parse_expr(text: &str, polynomial: bool) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        polynomial,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(ParseError::new(p.pos, "an operator or end of input"));
    }
    Ok(e)
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

    fn atom_expectation(&self) -> &'static str {
        if self.polynomial {
            "a number, 'w', 'x', 'y', '(' or '-'"
        } else {
            "a number, 'w', '(' or '-'"
        }
    }

    fn starts_atom(&self, c: u8) -> bool {
        c == b'(' || c == b'w' || c.is_ascii_digit() || (self.polynomial && (c == b'x' || c == b'y'))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs), at);
                }
                Some(c) if self.polynomial && self.starts_atom(c) => {
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(ParseError::new(start, "an unsigned integer exponent"));
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
            let e: u32 = digits
                .parse()
                .map_err(|_| ParseError::new(start, "an exponent below 2^32"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = match self.peek() {
            Some(_) => self.pos,
            None => return Err(ParseError::new(self.src.len(), self.atom_expectation())),
        };
        let c = self.src[at];
        match c {
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::new(self.pos, "')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            b'w' => {
                self.pos += 1;
                Ok(Expr::W(at))
            }
            b'x' if self.polynomial => {
                self.pos += 1;
                Ok(Expr::X(at))
            }
            b'y' if self.polynomial => {
                self.pos += 1;
                Ok(Expr::Y(at))
            }
            d if d.is_ascii_digit() => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[at..self.pos]).expect("ascii digits");
                Ok(Expr::Int(digits.parse().expect("digits parse as BigInt"), at))
            }
            _ => Err(ParseError::new(at, self.atom_expectation())),
        }
    }
}
