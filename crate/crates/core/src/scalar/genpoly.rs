use std::fmt;

use super::{format_term, join_terms, ConstScalar, Rational, Ring, ScalarKind};
use crate::error::Result;
use crate::parse;
use crate::poly::Poly;

/// A polynomial with rational coefficients in the symbol `w`, standing for
/// an unspecified ω. Exact division is only defined when the remainder vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPoly(Poly<Rational>);

impl GenPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self(Poly::new(coeffs))
    }

    /// The symbol `w` itself.
    pub fn w() -> Self {
        Self::new(vec![<Rational as ConstScalar>::zero(), <Rational as ConstScalar>::one()])
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        Self(p)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.0.coeffs()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    pub fn as_poly(&self) -> &Poly<Rational> {
        &self.0
    }

    /// Substitute a value for `w` in any ring that contains Q.
    pub fn eval_at<T: Ring>(&self, w: &T) -> T {
        let mut acc = w.zero_like();
        for c in self.0.coeffs().iter().rev() {
            acc = acc.times(w).plus(&w.from_rational_like(c));
        }
        acc
    }

    pub fn parse(text: &str) -> Result<Self> {
        let expr = parse::parse_expr(text, false)?;
        super::eval_scalar_expr(&expr, &Self::one(), Some(&Self::w()))
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.0.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
            let mono = match k {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{k}"),
            };
            format_term(c, &mono)
        });
        f.write_str(&join_terms(terms))
    }
}

impl Ring for GenPoly {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        Self::constant(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        Self(self.0.add(&rhs.0))
    }
    fn minus(&self, rhs: &Self) -> Self {
        Self(self.0.sub(&rhs.0))
    }
    fn times(&self, rhs: &Self) -> Self {
        Self(self.0.mul(&rhs.0))
    }
    fn negated(&self) -> Self {
        Self(self.0.neg())
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.0.div_rem(&rhs.0);
        r.is_zero().then_some(Self(q))
    }
    fn kind(&self) -> ScalarKind {
        ScalarKind::Generic
    }
}

impl ConstScalar for GenPoly {
    fn zero() -> Self {
        Self(Poly::zero())
    }
    fn one() -> Self {
        Self::constant(<Rational as ConstScalar>::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, omega};

    #[test]
    fn exact_division_only() {
        let a = GenPoly::parse("1 - w^2").unwrap();
        let b = GenPoly::parse("1 + w").unwrap();
        assert_eq!(a.exact_div(&b).unwrap(), GenPoly::parse("1 - w").unwrap());
        assert!(b.exact_div(&a).is_none());
        assert!(GenPoly::parse("w/(1+w)").is_err());
        assert_eq!(GenPoly::parse("w/2").unwrap().to_string(), "1/2*w");
    }

    #[test]
    fn evaluation() {
        let p = GenPoly::parse("1 + w + w^2").unwrap();
        assert_eq!(p.eval_at(&int(2)), int(7));
        assert!(p.eval_at(&omega(3)).is_zero());
    }

    #[test]
    fn printing() {
        assert_eq!(GenPoly::parse("-w^2 + 2*w - 1").unwrap().to_string(), "-1 + 2*w - w^2");
        assert_eq!(GenPoly::zero().to_string(), "0");
    }
}
