//! Gaussian binomial coefficients and the φ_k products.
//!
//! `qbinomial(q, k)` is built from the Pascal-type recurrence
//! `[n, k] = [n-1, k-1] + w^k [n-1, k]`, which never divides. The identity
//! `φ_k φ_{q-k} c_k = φ_q` is then checked as a theorem by [`verify_eq4`].

use std::fmt;

use crate::scalar::{int, omega, ConstScalar, CycNum, GenPoly, Ring};

/// `φ_k = ∏_{s=1}^{k} (1 + ω + … + ω^{s-1})`, evaluated in `omega`'s ring.
pub fn phi<T: Ring>(k: usize, omega: &T) -> T {
    let mut acc = omega.one_like();
    let mut partial = omega.zero_like();
    let mut power = omega.one_like();
    for _ in 0..k {
        partial = partial.plus(&power);
        power = power.times(omega);
        acc = acc.times(&partial);
    }
    acc
}

/// Row `n` of the generic Gaussian triangle, `[n, 0] … [n, n]`.
fn row(n: usize) -> Vec<GenPoly> {
    let mut cur = vec![GenPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let left = if k >= 1 { cur[k - 1].clone() } else { GenPoly::zero() };
            let right = if k < m {
                shift(&cur[k], k)
            } else {
                GenPoly::zero()
            };
            next.push(left.plus(&right));
        }
        cur = next;
    }
    cur
}

/// `p · w^k`.
fn shift(p: &GenPoly, k: usize) -> GenPoly {
    GenPoly::from_poly(p.as_poly().shift(k))
}

/// The Gaussian binomial `[q, k]` as a polynomial in `w`; zero outside `0..=q`.
pub fn qbinomial(q: usize, k: i64) -> GenPoly {
    if k < 0 || k as usize > q {
        return GenPoly::zero();
    }
    row(q).swap_remove(k as usize)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QBinomMode {
    Generic,
    /// Specialised at ω = ζ_N.
    Specialized(u32),
}

/// The coefficients `c_0 … c_q` of `(x + y)^q = Σ c_k y^k x^{q-k}`.
#[derive(Debug, Clone, PartialEq)]
pub enum QBinomTable {
    Generic { q: usize, coeffs: Vec<GenPoly> },
    Specialized { q: usize, order: u32, coeffs: Vec<CycNum> },
}

impl QBinomTable {
    pub fn generic(q: usize) -> Self {
        QBinomTable::Generic { q, coeffs: row(q) }
    }

    pub fn q(&self) -> usize {
        match self {
            QBinomTable::Generic { q, .. } | QBinomTable::Specialized { q, .. } => *q,
        }
    }

    pub fn mode(&self) -> QBinomMode {
        match self {
            QBinomTable::Generic { .. } => QBinomMode::Generic,
            QBinomTable::Specialized { order, .. } => QBinomMode::Specialized(*order),
        }
    }

    /// Coefficients rendered canonically.
    pub fn entries(&self) -> Vec<String> {
        match self {
            QBinomTable::Generic { coeffs, .. } => coeffs.iter().map(ToString::to_string).collect(),
            QBinomTable::Specialized { coeffs, .. } => coeffs.iter().map(ToString::to_string).collect(),
        }
    }

    /// True when every interior coefficient `c_1 … c_{q-1}` is zero.
    pub fn interior_vanishes(&self) -> bool {
        match self {
            QBinomTable::Generic { coeffs, .. } => interior(coeffs).iter().all(Ring::is_zero),
            QBinomTable::Specialized { coeffs, .. } => interior(coeffs).iter().all(Ring::is_zero),
        }
    }
}

fn interior<T>(v: &[T]) -> &[T] {
    if v.len() <= 2 {
        &[]
    } else {
        &v[1..v.len() - 1]
    }
}

impl fmt::Display for QBinomTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.entries().iter().enumerate() {
            writeln!(f, "c_{k} = {c}")?;
        }
        Ok(())
    }
}

/// The generic table evaluated at ω = ζ_N.
pub fn potter_coefficients(q: usize, order: u32) -> QBinomTable {
    let w = omega(order);
    QBinomTable::Specialized {
        q,
        order,
        coeffs: row(q).iter().map(|c| c.eval_at(&w)).collect(),
    }
}

/// Check `φ_k φ_{q-k} c_k = φ_q` for every `k = 0 … q` as an identity in `w`.
pub fn verify_eq4(q: usize) -> bool {
    let w = GenPoly::w();
    let phis: Vec<GenPoly> = (0..=q).map(|k| phi(k, &w)).collect();
    row(q)
        .iter()
        .enumerate()
        .all(|(k, c)| phis[k].times(&phis[q - k]).times(c) == phis[q])
}

/// The same identity after substituting `w = 2` in exact rationals.
pub fn verify_eq4_at_two(q: usize) -> bool {
    let two = int(2);
    let phis: Vec<_> = (0..=q).map(|k| phi(k, &two)).collect();
    row(q)
        .iter()
        .enumerate()
        .all(|(k, c)| phis[k].times(&phis[q - k]).times(&c.eval_at(&two)) == phis[q])
}
