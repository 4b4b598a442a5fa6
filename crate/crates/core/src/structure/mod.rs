//! Quasi-commutative pairs `AB = ωBA`: detection, the Wielandt pair, the
//! Potter identity, commutants, block decompositions and worked examples.

mod construct;
mod decompose;
pub mod gallery;

use std::fmt;

pub use construct::{direct_sum, embed_commuting_pair, random_block, random_pair, random_unimodular, PairType};
pub use decompose::{decompose, kurosaki_reduce, Block, BlockType, ChainData, DecompositionReport, KurosakiForm, ReducedForm};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{omega, CycNum, Field, Ring};

/// Default tolerance for float comparisons in this module.
pub const DEFAULT_TOL: f64 = 1e-8;

/// A pair `(A, B)` with its commutation factor.
#[derive(Clone, PartialEq)]
pub struct QuasiPair<T> {
    pub a: Matrix<T>,
    pub b: Matrix<T>,
    pub omega: T,
    pub verified: bool,
}

impl<T: Ring> fmt::Debug for QuasiPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuasiPair")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("omega", &self.omega)
            .field("verified", &self.verified)
            .finish()
    }
}

impl<T: Field> QuasiPair<T> {
    /// Build a pair and record whether `AB = ωBA` holds.
    pub fn new(a: Matrix<T>, b: Matrix<T>, omega: T, tol: f64) -> Result<Self> {
        let verified = check_quasi(&a, &b, &omega, tol)?;
        Ok(Self { a, b, omega, verified })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// `(S⁻¹AS, S⁻¹BS)`.
    pub fn conjugate(&self, s: &Matrix<T>) -> Result<Self> {
        let inv = s.inverse()?;
        Ok(Self {
            a: inv.try_mul(&self.a)?.try_mul(s)?,
            b: inv.try_mul(&self.b)?.try_mul(s)?,
            omega: self.omega.clone(),
            verified: self.verified,
        })
    }
}

/// Where `AB = ω·BA` breaks.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation<T> {
    pub row: usize,
    pub col: usize,
    pub ab: T,
    pub ba: T,
    /// The candidate factor, when one could be formed.
    pub omega: Option<T>,
}

impl<T: Ring> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry ({}, {}): AB = {}, BA = {}", self.row + 1, self.col + 1, self.ab, self.ba)?;
        match &self.omega {
            Some(w) => write!(f, ", inconsistent with ω = {w}"),
            None => write!(f, ", no nonzero ω fits"),
        }
    }
}

/// Outcome of [`detect_omega`].
#[derive(Debug, Clone, PartialEq)]
pub enum OmegaDetection<T> {
    Determined(T),
    /// `AB = BA = 0`: every ω works.
    Unconstrained,
    NotQuasi(Violation<T>),
}

impl<T> OmegaDetection<T> {
    pub fn is_quasi(&self) -> bool {
        !matches!(self, OmegaDetection::NotQuasi(_))
    }
}

fn require_pair<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Result<()> {
    if !a.is_square() || a.shape() != b.shape() || a.rows() == 0 {
        return Err(Error::DimensionMismatch {
            op: "pair",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(())
}

/// Scale for float comparisons: the largest entry of either operand, at least 1.
fn scale_of<T: Field>(ms: &[&Matrix<T>]) -> f64 {
    ms.iter().map(|m| m.norm_max()).fold(1.0, f64::max)
}

pub(crate) fn close<T: Field>(x: &T, y: &T, tol: f64, scale: f64) -> bool {
    if T::EXACT {
        x == y
    } else {
        x.minus(y).magnitude() <= tol * scale
    }
}

/// Entrywise agreement: exact equality for exact scalars, otherwise within
/// `tol` relative to the larger max-norm (at least 1).
pub fn matrices_agree<T: Field>(x: &Matrix<T>, y: &Matrix<T>, tol: f64) -> bool {
    if x.shape() != y.shape() {
        return false;
    }
    if T::EXACT {
        return x == y;
    }
    let scale = scale_of(&[x, y]);
    x.data().iter().zip(y.data()).all(|(p, q)| close(p, q, tol, scale))
}

/// Find ω with `AB = ω·BA` from the largest entry of `BA` (first in row-major
/// order on ties) and verify it everywhere. A zero ratio counts as failure.
pub fn detect_omega<T: Field>(a: &Matrix<T>, b: &Matrix<T>, tol: f64) -> Result<OmegaDetection<T>> {
    require_pair(a, b)?;
    let p = a.try_mul(b)?;
    let q = b.try_mul(a)?;
    let negligible = |x: &T, s: f64| if T::EXACT { x.is_zero() } else { x.magnitude() <= tol * s };
    let scale = scale_of(&[&p, &q]);
    let p_zero = p.data().iter().all(|x| negligible(x, scale));
    let q_zero = q.data().iter().all(|x| negligible(x, scale));
    if p_zero && q_zero {
        return Ok(OmegaDetection::Unconstrained);
    }
    let n = a.cols();
    let violation = |idx: usize, omega: Option<T>| {
        OmegaDetection::NotQuasi(Violation {
            row: idx / n,
            col: idx % n,
            ab: p.data()[idx].clone(),
            ba: q.data()[idx].clone(),
            omega,
        })
    };
    if q_zero {
        let idx = p.data().iter().position(|x| !negligible(x, scale)).unwrap();
        return Ok(violation(idx, None));
    }
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, x) in q.data().iter().enumerate() {
        let m = x.magnitude();
        if m > best_mag {
            best = i;
            best_mag = m;
        }
    }
    let w = p.data()[best].try_div(&q.data()[best]).expect("largest entry is nonzero");
    if negligible(&w, 1.0) {
        return Ok(violation(best, None));
    }
    for (i, (x, y)) in p.data().iter().zip(q.data()).enumerate() {
        if !close(x, &w.times(y), tol, scale) {
            return Ok(violation(i, Some(w)));
        }
    }
    Ok(OmegaDetection::Determined(w))
}

/// Direct check of `AB = ω·BA`.
pub fn check_quasi<T: Field>(a: &Matrix<T>, b: &Matrix<T>, omega: &T, tol: f64) -> Result<bool> {
    require_pair(a, b)?;
    let p = a.try_mul(b)?;
    let q = b.try_mul(a)?.scale(omega);
    Ok(matrices_agree(&p, &q, tol))
}

/// Wielandt's pair: `A` the cyclic shift (ones below the diagonal and in the
/// top-right corner), `B = diag(1, ζ, …, ζ^{q-1})` with ζ = ζ_q. Then
/// `BA = ζ·AB`, so the pair is reported with `ω = ζ^{q-1}`.
pub fn wielandt_pair(q: u32) -> QuasiPair<CycNum> {
    assert!(q >= 1, "the Wielandt pair needs q >= 1");
    let z = omega(q);
    let (zero, one) = (z.zero_like(), z.one_like());
    let n = q as usize;
    let a = Matrix::from_fn(n, n, |i, j| {
        if (i == j + 1) || (i == 0 && j == n - 1) {
            one.clone()
        } else {
            zero.clone()
        }
    });
    let b = Matrix::diag(&(0..n).map(|i| z.pow_u(i as u64)).collect::<Vec<_>>());
    let w = match detect_omega(&a, &b, 0.0).expect("square pair") {
        OmegaDetection::Determined(w) => w,
        other => unreachable!("Wielandt pair must be quasi-commutative: {other:?}"),
    };
    debug_assert_eq!(w, z.pow_u(q as u64 - 1));
    QuasiPair {
        a,
        b,
        omega: w,
        verified: true,
    }
}

/// `(sA + tB)^q = (sA)^q + (tB)^q` for every sample `(s, t)`.
pub fn check_potter<T: Field>(a: &Matrix<T>, b: &Matrix<T>, q: u32, samples: &[(T, T)], tol: f64) -> Result<bool> {
    require_pair(a, b)?;
    for (s, t) in samples {
        let sa = a.scale(s);
        let tb = b.scale(t);
        let lhs = sa.try_add(&tb)?.pow(q as u64)?;
        let rhs = sa.pow(q as u64)?.try_add(&tb.pow(q as u64)?)?;
        if !matrices_agree(&lhs, &rhs, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of `{X : AX = αXA}`, via the nullspace of `I⊗A − α·Aᵀ⊗I` acting on
/// the column-major vectorisation of `X`.
pub fn commutant_basis<T: Field>(a: &Matrix<T>, alpha: &T) -> Result<Vec<Matrix<T>>> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::DimensionMismatch {
            op: "commutant",
            left: a.shape(),
            right: a.shape(),
        });
    }
    let n = a.rows();
    let id = Matrix::identity(n, alpha);
    let op = id.kron(a)?.try_sub(&a.transpose().kron(&id)?.scale(alpha))?;
    Ok(op
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |i, j| v.get(j * n + i, 0).clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn wielandt_small() {
        let p1 = wielandt_pair(1);
        assert!(p1.omega.is_one());
        let p2 = wielandt_pair(2);
        assert_eq!(p2.omega, omega(2));
        assert_eq!(p2.a.to_string(), "[0, 1]\n[1, 0]");
        let p3 = wielandt_pair(3);
        assert!(p3.omega.is_primitive_root(3));
        assert!(check_quasi(&p3.a, &p3.b, &p3.omega, 0.0).unwrap());
        let cp = p3.a.try_add(&p3.b).unwrap().char_poly().unwrap();
        assert_eq!(cp.display_with("λ"), "λ^3 - 2");
    }

    #[test]
    fn detection_outcomes() {
        let a = m(&[&[1, 1], &[0, 2]]);
        let b = m(&[&[-1, 0], &[7, -2]]);
        assert!(!detect_omega(&a, &b, 0.0).unwrap().is_quasi());
        let z = Matrix::<Rational>::zeros(2, 2);
        assert_eq!(detect_omega(&a, &z, 0.0).unwrap(), OmegaDetection::Unconstrained);
        assert!(check_quasi(&a, &z, &int(5), 0.0).unwrap());
        // AB = 0 but BA ≠ 0.
        let a2 = m(&[&[0, 1], &[0, 2]]);
        let b2 = m(&[&[-2, 2], &[0, 0]]);
        assert!(!detect_omega(&a2, &b2, 0.0).unwrap().is_quasi());
        assert!(detect_omega(&a, &m(&[&[1]]), 0.0).is_err());
    }

    #[test]
    fn commutant_of_identity() {
        let id = Matrix::<Rational>::eye(3);
        assert_eq!(commutant_basis(&id, &int(1)).unwrap().len(), 9);
        let a = m(&[&[1, 1], &[0, 1]]);
        for x in commutant_basis(&a, &int(1)).unwrap() {
            assert_eq!(&a * &x, &x * &a);
        }
    }
}
