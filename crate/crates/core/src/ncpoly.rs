//! Polynomials in noncommuting `x`, `y` and their normal forms in the quantum
//! plane `xy = ωyx`.
//!
//! A word `w` normal-orders to `ω^{inv(w)} y^i x^j`, where `inv(w)` counts the
//! pairs (an `x` before a `y`) that must be swapped. That closed form is the
//! unique fixed point of the rewriting `xy → ω·yx`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::matrix::Matrix;
use crate::parse::{self, Expr};
use crate::scalar::{omega, ConstScalar, CycNum, GenPoly, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
}

pub type Word = Vec<Var>;

/// Number of (x before y) pairs.
pub fn inversions(word: &[Var]) -> u64 {
    let mut xs = 0u64;
    let mut inv = 0u64;
    for v in word {
        match v {
            Var::X => xs += 1,
            Var::Y => inv += xs,
        }
    }
    inv
}

pub fn word_to_string(word: &[Var]) -> String {
    word.iter()
        .map(|v| match v {
            Var::X => 'x',
            Var::Y => 'y',
        })
        .collect()
}

/// An element of the free algebra: nonzero coefficients indexed by words.
#[derive(Debug, Clone, PartialEq)]
pub struct NCPoly<T> {
    terms: BTreeMap<Word, T>,
    /// Representative scalar, so constants of the right ring can be built.
    one: T,
}

impl<T: Ring> NCPoly<T> {
    pub fn zero(one: &T) -> Self {
        Self {
            terms: BTreeMap::new(),
            one: one.one_like(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn monomial(c: T, word: Word) -> Self {
        let mut p = Self::zero(&c);
        if !c.is_zero() {
            p.terms.insert(word, c);
        }
        p
    }

    pub fn var(v: Var, one: &T) -> Self {
        Self::monomial(one.one_like(), vec![v])
    }

    pub fn terms(&self) -> &BTreeMap<Word, T> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn one_scalar(&self) -> &T {
        &self.one
    }

    fn accumulate(terms: &mut BTreeMap<Word, T>, word: Word, c: T) {
        use std::collections::btree_map::Entry;
        match terms.entry(word) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get().plus(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (w, c) in &rhs.terms {
            Self::accumulate(&mut terms, w.clone(), c.clone());
        }
        Self { terms, one: self.one.clone() }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.negated())).collect(),
            one: self.one.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(&self.one);
        for (w, c) in &self.terms {
            Self::accumulate(&mut out.terms, w.clone(), c.times(s));
        }
        out
    }

    /// Noncommutative product (word concatenation).
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(&self.one);
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                Self::accumulate(&mut out.terms, w, a.times(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.one.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The scalar value of a constant polynomial.
    fn as_scalar(&self) -> Option<T> {
        match self.terms.len() {
            0 => Some(self.one.zero_like()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Map coefficients into another ring, e.g. substituting a value for `w`.
    pub fn map_coeffs<U: Ring>(&self, one: &U, f: impl Fn(&T) -> U) -> NCPoly<U> {
        let mut out = NCPoly::zero(one);
        for (w, c) in &self.terms {
            NCPoly::accumulate(&mut out.terms, w.clone(), f(c));
        }
        out
    }

    /// Project to the quantum plane.
    pub fn normal_order(&self, omega: &T) -> NormalForm<T> {
        let mut out = NormalForm::zero(&self.one);
        for (w, c) in &self.terms {
            let j = w.iter().filter(|&&v| v == Var::X).count();
            let i = w.len() - j;
            out.accumulate((i, j), c.times(&omega.pow_u(inversions(w))));
        }
        out
    }

    /// Membership in the two-sided ideal generated by `xy − ω·yx`.
    pub fn ideal_member(&self, omega: &T) -> bool {
        self.normal_order(omega).is_zero()
    }

    /// Substitute `x ↦ A`, `y ↦ B`, embedding coefficients with `embed`.
    pub fn evaluate_with<U: Ring>(
        &self,
        a: &Matrix<U>,
        b: &Matrix<U>,
        embed: impl Fn(&T) -> U,
    ) -> Result<Matrix<U>> {
        if !a.is_square() || a.shape() != b.shape() {
            return Err(Error::DimensionMismatch {
                op: "evaluate",
                left: a.shape(),
                right: b.shape(),
            });
        }
        let template = a.template().or(b.template()).ok_or(Error::DimensionMismatch {
            op: "evaluate",
            left: (0, 0),
            right: (0, 0),
        })?;
        let n = a.rows();
        let id = Matrix::identity(n, template);
        let mut acc = Matrix::zero(n, n, template);
        for (w, c) in &self.terms {
            let mut m = id.clone();
            for v in w {
                m = m.try_mul(if *v == Var::X { a } else { b })?;
            }
            acc = acc.try_add(&m.scale(&embed(c)))?;
        }
        Ok(acc)
    }

    fn from_expr(expr: &Expr, one: &T, w: &T) -> Result<Self> {
        let rec = |e: &Expr| Self::from_expr(e, one, w);
        Ok(match expr {
            Expr::Int(n, _) => Self::constant(one.from_rational_like(&crate::scalar::Rational::from_integer(n.clone()))),
            Expr::W(_) => Self::constant(w.clone()),
            Expr::X(_) => Self::var(Var::X, one),
            Expr::Y(_) => Self::var(Var::Y, one),
            Expr::Neg(a) => rec(a)?.neg(),
            Expr::Add(a, b) => rec(a)?.add(&rec(b)?),
            Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?),
            Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?),
            Expr::Div(a, b, pos) => {
                let den = rec(b)?
                    .as_scalar()
                    .ok_or_else(|| ParseError::new(*pos, "a scalar divisor"))?;
                if den.is_zero() {
                    return Err(ParseError::new(*pos, "a nonzero divisor").into());
                }
                let num = rec(a)?;
                let mut out = Self::zero(one);
                for (word, c) in &num.terms {
                    let q = c
                        .exact_div(&den)
                        .ok_or_else(|| ParseError::new(*pos, "a divisor that divides exactly"))?;
                    Self::accumulate(&mut out.terms, word.clone(), q);
                }
                out
            }
            Expr::Pow(a, e) => rec(a)?.pow(*e),
        })
    }
}

impl<T: Ring> NCPoly<T> {
    /// `xy − ω·yx`.
    pub fn generator(omega: &T) -> Self {
        let one = omega.one_like();
        let x = Self::var(Var::X, &one);
        let y = Self::var(Var::Y, &one);
        x.mul(&y).sub(&y.mul(&x).scale(omega))
    }
}

/// Parse with generic coefficients (polynomials in `w`).
pub fn parse_ncpoly_generic(text: &str) -> Result<NCPoly<GenPoly>> {
    let expr = parse::parse_expr(text, true)?;
    NCPoly::from_expr(&expr, &GenPoly::one(), &GenPoly::w())
}

/// Parse with `w` bound to ζ_N.
pub fn parse_ncpoly(text: &str, order: u32) -> Result<NCPoly<CycNum>> {
    let expr = parse::parse_expr(text, true)?;
    let w = omega(order);
    NCPoly::from_expr(&expr, &w.one_like(), &w)
}

/// `Σ c_{ij} y^i x^j`, keyed by `(i, j)` = (y-degree, x-degree).
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm<T> {
    terms: BTreeMap<(usize, usize), T>,
    one: T,
}

impl<T: Ring> NormalForm<T> {
    pub fn zero(one: &T) -> Self {
        Self {
            terms: BTreeMap::new(),
            one: one.one_like(),
        }
    }

    pub fn monomial(c: T, i: usize, j: usize) -> Self {
        let mut out = Self::zero(&c);
        out.accumulate((i, j), c);
        out
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), T> {
        &self.terms
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| self.one.zero_like())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, key: (usize, usize), c: T) {
        let s = match self.terms.remove(&key) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }

    /// Product in the quantum plane: `x^j · y^i = ω^{ij} y^i x^j`.
    pub fn mul(&self, rhs: &Self, omega: &T) -> Self {
        let mut out = Self::zero(&self.one);
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                let c = a.times(b).times(&omega.pow_u((j1 * i2) as u64));
                out.accumulate((i1 + i2, j1 + j2), c);
            }
        }
        out
    }

    /// Substitute a value for `w` in every coefficient.
    pub fn map_coeffs<U: Ring>(&self, one: &U, f: impl Fn(&T) -> U) -> NormalForm<U> {
        let mut out = NormalForm::zero(one);
        for (k, c) in &self.terms {
            out.accumulate(*k, f(c));
        }
        out
    }
}

impl NormalForm<GenPoly> {
    /// Specialise a generic normal form at ω = ζ_N.
    pub fn specialize(&self, order: u32) -> NormalForm<CycNum> {
        let w = omega(order);
        self.map_coeffs(&w.one_like(), |c| c.eval_at(&w))
    }
}

/// Normal form of `(x + y)^q`, built by repeated multiplication in the
/// quantum plane (equivalent to normal-ordering all `2^q` words).
pub fn expand_power<T: Ring>(q: u32, omega: &T) -> NormalForm<T> {
    let one = omega.one_like();
    let linear = NormalForm::monomial(one.clone(), 0, 1).add(&NormalForm::monomial(one.clone(), 1, 0));
    let mut acc = NormalForm::monomial(one, 0, 0);
    for _ in 0..q {
        acc = acc.mul(&linear, omega);
    }
    acc
}

fn monomial_string(i: usize, j: usize) -> String {
    let pow = |v: &str, e: usize| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    [pow("y", i), pow("x", j)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

/// Render signed terms `coeff*monomial`, parenthesising compound coefficients.
fn render<'a, T: Ring + 'a>(terms: impl Iterator<Item = (String, &'a T)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let cs = c.to_string();
        let compound = cs.contains(" + ") || cs.contains(" - ");
        let (neg, body) = match cs.strip_prefix('-') {
            Some(rest) if !compound => (true, rest.to_string()),
            _ if compound => (false, format!("({cs})")),
            _ => (false, cs),
        };
        let term = match (mono.is_empty(), body.as_str()) {
            (true, _) => body,
            (false, "1") => mono,
            (false, _) => format!("{body}*{mono}"),
        };
        match (out.is_empty(), neg) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<T: Ring> fmt::Display for NormalForm<T> {
    /// Terms in lexicographic `(i, j)` order, e.g. `x^2 + (1 + w)*y*x + y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.terms.iter().map(|(&(i, j), c)| (monomial_string(i, j), c))))
    }
}

impl<T: Ring> fmt::Display for NCPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words = self.terms.iter().map(|(w, c)| {
            let mono = w
                .iter()
                .map(|v| if *v == Var::X { "x" } else { "y" })
                .collect::<Vec<_>>()
                .join("*");
            (mono, c)
        });
        f.write_str(&render(words))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbinom::qbinomial;

    fn word(s: &str) -> Word {
        s.chars().map(|c| if c == 'x' { Var::X } else { Var::Y }).collect()
    }

    #[test]
    fn parsing() {
        let g = parse_ncpoly_generic("x*y - w*y*x").unwrap();
        assert_eq!(g.terms().len(), 2);
        let cube = parse_ncpoly_generic("(x+y)^3").unwrap();
        assert_eq!(cube.terms().len(), 8);
        assert!(cube.terms().values().all(Ring::is_one));
        let p = parse_ncpoly_generic("2*x^2*y - y*x^2*2").unwrap();
        assert_eq!(p.terms()[&word("xxy")], GenPoly::constant(crate::scalar::int(2)));
        assert_eq!(p.terms()[&word("yxx")], GenPoly::constant(crate::scalar::int(-2)));
        assert!(parse_ncpoly_generic("x/y").is_err());
        assert_eq!(parse_ncpoly_generic("x*").unwrap_err().to_string().contains("byte 2"), true);
        assert_eq!(parse_ncpoly_generic("(2x - 4y)/2").unwrap().to_string(), "x - 2*y");
    }

    #[test]
    fn normal_ordering() {
        let w = GenPoly::w();
        assert!(NCPoly::generator(&w).ideal_member(&w));
        let xyxy = NCPoly::monomial(GenPoly::one(), word("xyxy")).normal_order(&w);
        assert_eq!(xyxy, NormalForm::monomial(w.pow_u(3), 2, 2));
        let yx = parse_ncpoly_generic("y*x").unwrap();
        assert!(!yx.ideal_member(&w));
        assert_eq!(inversions(&word("xxyy")), 4);
    }

    #[test]
    fn expansions() {
        let w = GenPoly::w();
        assert_eq!(expand_power(0, &w).to_string(), "1");
        assert_eq!(expand_power(2, &w).to_string(), "x^2 + (1 + w)*y*x + y^2");
        let cube = expand_power(3, &omega(3));
        assert_eq!(cube.to_string(), "x^3 + y^3");
        for q in 0..=6u32 {
            let nf = expand_power(q, &w);
            let free = parse_ncpoly_generic(&format!("(x+y)^{q}")).unwrap().normal_order(&w);
            assert_eq!(nf, free);
            for k in 0..=q as usize {
                assert_eq!(nf.coeff(k, q as usize - k), qbinomial(q as usize, k as i64));
            }
        }
    }

    #[test]
    fn membership_of_theorem_one_identity() {
        let f = parse_ncpoly("(x+y)^3 - x^3 - y^3", 3).unwrap();
        assert!(f.ideal_member(&omega(3)));
        let g = parse_ncpoly("(x+y)^3 - x^3 - y^3", 4).unwrap();
        assert!(!g.ideal_member(&omega(4)));
    }
}
