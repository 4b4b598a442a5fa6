//! Exact scalar rings: arbitrary-precision rationals, cyclotomic fields
//! Q(ζ_N), and polynomials in a generic root-of-unity symbol `w`.
//!
//! All matrix and polynomial code is written against the [`Ring`] and
//! [`Field`] traits below. Operations take `&self` and return fresh values;
//! scalars are never mutated after construction.

mod cyclotomic;
mod genpoly;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, omega, CycNum, CyclotomicField};
pub use genpoly::GenPoly;

use crate::error::Result;
use crate::parse::{self, Expr};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for building small rationals in code and tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    Cyclotomic(u32),
    Generic,
    Complex,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarKind::Rational => f.write_str("rational"),
            ScalarKind::Cyclotomic(n) => write!(f, "cyclotomic {n}"),
            ScalarKind::Generic => f.write_str("generic"),
            ScalarKind::Complex => f.write_str("complex"),
        }
    }
}

/// A commutative ring with identity whose elements know enough about their
/// parent (e.g. the cyclotomic order) to build constants of the same kind.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Division that succeeds only when the quotient exists in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
    fn kind(&self) -> ScalarKind;

    /// Whether two values may be combined (same cyclotomic order, etc.).
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.from_rational_like(&int(n))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// Entry representation in matrix files.
    fn file_repr(&self) -> String {
        self.to_string()
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// A field, either exact (all equality tests decidable) or complex floating point.
pub trait Field: Ring {
    /// True for exact arithmetic; false for floating point.
    const EXACT: bool;

    fn try_inv(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().map(|inv| self.times(&inv))
    }

    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_u(e as u64))
        } else {
            self.try_inv().map(|inv| inv.pow_u(e.unsigned_abs()))
        }
    }
}

/// Rings whose constants need no context.
pub trait ConstScalar: Ring {
    fn zero() -> Self;
    fn one() -> Self;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        int(0)
    }
    fn one_like(&self) -> Self {
        int(1)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.try_div(rhs)
    }
    fn kind(&self) -> ScalarKind {
        ScalarKind::Rational
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn try_inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
}

impl ConstScalar for Rational {
    fn zero() -> Self {
        int(0)
    }
    fn one() -> Self {
        int(1)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out of f64 range: saturate with the right sign.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

impl Ring for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.try_div(rhs)
    }
    fn kind(&self) -> ScalarKind {
        ScalarKind::Complex
    }
    fn file_repr(&self) -> String {
        format!("{:?} {:?}", self.re, self.im)
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn try_inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

impl ConstScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
}

/// Evaluate a parsed scalar expression. `w` is the value bound to the symbol
/// `w`, or `None` if the symbol is not allowed.
pub(crate) fn eval_scalar_expr<T: Ring>(expr: &Expr, one: &T, w: Option<&T>) -> Result<T> {
    use crate::error::ParseError;
    Ok(match expr {
        Expr::Int(n, _) => one.from_rational_like(&Rational::from_integer(n.clone())),
        Expr::W(pos) => match w {
            Some(w) => w.clone(),
            None => {
                return Err(ParseError::new(*pos, "a rational scalar ('w' needs a cyclotomic order)").into())
            }
        },
        Expr::X(pos) | Expr::Y(pos) => {
            return Err(ParseError::new(*pos, "a scalar (x and y are polynomial variables)").into())
        }
        Expr::Neg(a) => eval_scalar_expr(a, one, w)?.negated(),
        Expr::Add(a, b) => eval_scalar_expr(a, one, w)?.plus(&eval_scalar_expr(b, one, w)?),
        Expr::Sub(a, b) => eval_scalar_expr(a, one, w)?.minus(&eval_scalar_expr(b, one, w)?),
        Expr::Mul(a, b) => eval_scalar_expr(a, one, w)?.times(&eval_scalar_expr(b, one, w)?),
        Expr::Div(a, b, pos) => {
            let num = eval_scalar_expr(a, one, w)?;
            let den = eval_scalar_expr(b, one, w)?;
            if den.is_zero() {
                return Err(ParseError::new(*pos, "a nonzero divisor").into());
            }
            num.exact_div(&den)
                .ok_or_else(|| ParseError::new(*pos, "a divisor that divides exactly"))?
        }
        Expr::Pow(a, e) => eval_scalar_expr(a, one, w)?.pow_u(*e as u64),
    })
}

/// Parse a rational scalar (the symbol `w` is rejected).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let expr = parse::parse_expr(text, false)?;
    eval_scalar_expr(&expr, &int(1), None)
}

/// Parse a scalar in Q(ζ_N), with `w` bound to [`omega`]`(order)`.
pub fn parse_scalar(text: &str, order: u32) -> Result<CycNum> {
    let w = omega(order);
    let expr = parse::parse_expr(text, false)?;
    eval_scalar_expr(&expr, &w.one_like(), Some(&w))
}

/// Format a rational coefficient in front of a monomial `w^k` (or `x`, `y`
/// words), producing `sign` separately so callers can join terms with ` + ` /
/// ` - `. Returns (is_negative, body).
pub(crate) fn format_term(coeff: &Rational, monomial: &str) -> (bool, String) {
    let neg = coeff.is_negative();
    let abs = coeff.abs();
    let body = if monomial.is_empty() {
        abs.to_string()
    } else if num_traits::One::is_one(&abs) {
        monomial.to_string()
    } else {
        format!("{abs}*{monomial}")
    };
    (neg, body)
}

/// Join signed terms as `a + b - c`; an empty list prints as `0`.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_print() {
        assert_eq!(parse_rational("1/2 + 1/3").unwrap(), rat(5, 6));
        assert_eq!(parse_rational("-(3)^2").unwrap(), int(-9));
        assert_eq!(parse_rational("(-3)^2").unwrap(), int(9));
        assert!(parse_rational("w").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(rat(-4, 6).to_string(), "-2/3");
    }

    #[test]
    fn scalar_grammar_examples() {
        let w5 = omega(5);
        let expected = rat(1, 2).pipe_cyc(5).plus(&w5.pow_u(2).times(&w5.from_int_like(3)));
        assert_eq!(parse_scalar("1/2 + 3*w^2", 5).unwrap(), expected);
        assert!(parse_scalar("w^3", 3).unwrap().is_one());

        let w4 = omega(4);
        let one = w4.one_like();
        let num = one.plus(&w4).negated();
        let den = one.minus(&w4.pow_u(2));
        let oracle = num.try_div(&den).unwrap();
        assert_eq!(parse_scalar("-(1+w)/(1-w^2)", 4).unwrap(), oracle);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let err = parse_scalar("1 + * 2", 3).unwrap_err();
        match err {
            crate::Error::Parse(p) => assert_eq!(p.offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_scalar("1/(w-w)", 3).unwrap_err() {
            crate::Error::Parse(p) => assert_eq!(p.offset, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    trait PipeCyc {
        fn pipe_cyc(self, order: u32) -> CycNum;
    }
    impl PipeCyc for Rational {
        fn pipe_cyc(self, order: u32) -> CycNum {
            CycNum::from_rational(order, self)
        }
    }
}
