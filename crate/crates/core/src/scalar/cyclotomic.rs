//! The cyclotomic field Q(ζ_N), elements stored as polynomials in ζ_N of
//! degree below φ(N), reduced modulo the N-th cyclotomic polynomial.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::{format_term, join_terms, rational_to_f64, ConstScalar, Field, Rational, Ring, ScalarKind};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let (mut n, mut result) = (n, n);
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Coefficients (constant term first) of the N-th cyclotomic polynomial,
/// obtained by dividing `x^N - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<Rational> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut table: BTreeMap<u32, Poly<Rational>> = BTreeMap::new();
    for d in divisors(n) {
        let mut p = Poly::monomial(Rational::one(), d as usize).sub(&Poly::constant(Rational::one()));
        for e in divisors(d) {
            if e < d {
                let (q, r) = p.div_rem(&table[&e]);
                debug_assert!(r.is_zero());
                p = q;
            }
        }
        table.insert(d, p);
    }
    table.remove(&n).unwrap().into_coeffs()
}

/// The field Q(ζ_N) together with its defining polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    /// Monic Φ_N, constant term first.
    modulus: Vec<Rational>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Arc<Self> {
        Arc::new(Self {
            order,
            modulus: cyclotomic_polynomial(order),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(N), the dimension of the field over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

/// The generator ζ_N of Q(ζ_N).
pub fn omega(order: u32) -> CycNum {
    let field = CyclotomicField::new(order);
    CycNum::from_poly(field, vec![Rational::zero(), Rational::one()])
}

impl CycNum {
    /// Reduce an arbitrary polynomial in ζ modulo Φ_N.
    pub fn from_poly(field: Arc<CyclotomicField>, mut coeffs: Vec<Rational>) -> Self {
        let d = field.degree();
        for i in (d..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[i]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in field.modulus[..d].iter().enumerate() {
                coeffs[i - d + j] -= &c * m;
            }
        }
        coeffs.resize(d, Rational::zero());
        Self { field, coeffs }
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        Self::in_field(CyclotomicField::new(order), r)
    }

    pub fn in_field(field: Arc<CyclotomicField>, r: Rational) -> Self {
        let d = field.degree();
        let mut coeffs = vec![Rational::zero(); d];
        coeffs[0] = r;
        Self { field, coeffs }
    }

    pub fn zero(order: u32) -> Self {
        Self::from_rational(order, Rational::zero())
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Coordinates in the power basis 1, ζ, …, ζ^{φ(N)-1}.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// ζ_N^k for any integer k, in the same field as `self`.
    pub fn zeta_pow(&self, k: i64) -> Self {
        let n = self.order() as i64;
        let e = k.rem_euclid(n) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Self::from_poly(self.field.clone(), coeffs)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Ring::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.order() == rhs.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order(), rhs.order()))
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.plus(rhs))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.minus(rhs))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.times(rhs))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        self.try_div(rhs).ok_or(Error::DivisionByZero)
    }

    /// Smallest `k >= 1` with `self^k = 1`, if `self` is a root of unity.
    /// Roots of unity in Q(ζ_N) have order dividing lcm(N, 2).
    pub fn root_of_unity_order(&self) -> Option<u32> {
        let bound = 2 * self.order();
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.times(self);
        }
        None
    }

    /// True when `self` is a primitive k-th root of unity.
    pub fn is_primitive_root(&self, k: u32) -> bool {
        self.root_of_unity_order() == Some(k)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.order(), self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
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

impl Ring for CycNum {
    fn zero_like(&self) -> Self {
        Self::in_field(self.field.clone(), Rational::zero())
    }

    fn one_like(&self) -> Self {
        Self::in_field(self.field.clone(), Rational::one())
    }

    fn from_rational_like(&self, r: &Rational) -> Self {
        Self::in_field(self.field.clone(), r.clone())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn is_one(&self) -> bool {
        Ring::is_one(&self.coeffs[0]) && self.coeffs[1..].iter().all(Ring::is_zero)
    }

    fn plus(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "cyclotomic order mismatch");
        if let Some(r) = rhs.as_rational() {
            return Self {
                field: self.field.clone(),
                coeffs: self.coeffs.iter().map(|a| a * r).collect(),
            };
        }
        let d = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.field.clone(), prod)
    }

    fn negated(&self) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.try_div(rhs)
    }

    fn kind(&self) -> ScalarKind {
        ScalarKind::Cyclotomic(self.order())
    }

    fn compatible(&self, other: &Self) -> bool {
        self.order() == other.order()
    }
}

impl Field for CycNum {
    const EXACT: bool = true;

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(self.from_rational_like(&r.recip()));
        }
        let a = Poly::new(self.coeffs.clone());
        let m = Poly::new(self.field.modulus.clone());
        let (g, s, _) = a.ext_gcd(&m);
        // Φ_N is irreducible, so any nonzero element is coprime to it.
        debug_assert_eq!(g.degree(), Some(0));
        Some(Self::from_poly(self.field.clone(), s.into_coeffs()))
    }

    fn to_complex(&self) -> Complex64 {
        let n = self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n) * rational_to_f64(c))
            .sum()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.plus(b));
forward_binop!(Sub, sub, |a, b| a.minus(b));
forward_binop!(Mul, mul, |a, b| a.times(b));
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("cyclotomic division"));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.negated()
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.negated()
    }
}
