//! Building quasi-commutative pairs: the commuting-pair embedding and seeded
//! random pairs of each block type.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_quasi, close, matrices_agree, QuasiPair};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{int, omega, CycNum, Field, Ring};

/// The four block types, by which of σ(A), σ(B) is `{0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairType {
    /// Both spectra `{0}`.
    I,
    /// σ(A) = {0}, σ(B) a chain.
    II,
    /// σ(A) a chain, σ(B) = {0}.
    III,
    /// Both spectra chains.
    IV,
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairType::I => "I",
            PairType::II => "II",
            PairType::III => "III",
            PairType::IV => "IV",
        })
    }
}

impl FromStr for PairType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "1" => Ok(PairType::I),
            "II" | "2" => Ok(PairType::II),
            "III" | "3" => Ok(PairType::III),
            "IV" | "4" => Ok(PairType::IV),
            _ => Err(Error::ParamOutOfDomain(format!("unknown pair type `{s}`"))),
        }
    }
}

/// `A = diag(M, ωM, …, ω^{k-1}M)` and `B` cyclic with `N` in the top-right
/// block and identities below the diagonal; then `AB = ωBA`.
pub fn embed_commuting_pair<T: Field>(m: &Matrix<T>, n: &Matrix<T>, k: usize, omega: &T) -> Result<QuasiPair<T>> {
    let tol = 1e-12;
    if !m.is_square() || m.shape() != n.shape() || m.rows() == 0 {
        return Err(Error::DimensionMismatch {
            op: "embed",
            left: m.shape(),
            right: n.shape(),
        });
    }
    if k == 0 {
        return Err(Error::PreconditionFailed("chain length k must be positive".into()));
    }
    if !matrices_agree(&m.try_mul(n)?, &n.try_mul(m)?, tol) {
        return Err(Error::NotCommuting);
    }
    let singular = |x: &Matrix<T>| -> Result<bool> {
        let d = x.determinant()?;
        Ok(if T::EXACT { d.is_zero() } else { d.magnitude() <= tol * x.norm_max().max(1.0).powi(x.rows() as i32) })
    };
    if singular(m)? && singular(n)? {
        return Err(Error::PreconditionFailed("both M and N are singular".into()));
    }
    let one = omega.one_like();
    let mut power = one.clone();
    for j in 1..=k {
        power = power.times(omega);
        let is_one = close(&power, &one, tol, 1.0);
        if (j < k && is_one) || (j == k && !is_one) {
            return Err(Error::PreconditionFailed(format!("ω is not a primitive {k}-th root of unity")));
        }
    }
    let d = m.rows();
    let template = omega.clone();
    let mut a = Matrix::zero(d * k, d * k, &template);
    let mut b = Matrix::zero(d * k, d * k, &template);
    let id = Matrix::identity(d, &template);
    let mut wj = one;
    for j in 0..k {
        a.set_block(j * d, j * d, &m.scale(&wj));
        wj = wj.times(omega);
        if j + 1 < k {
            b.set_block((j + 1) * d, j * d, &id);
        }
    }
    b.set_block(0, (k - 1) * d, n);
    let pair = QuasiPair::new(a, b, omega.clone(), 1e-10)?;
    debug_assert!(pair.verified);
    Ok(pair)
}

fn small_nonzero(rng: &mut impl Rng, max: i64) -> i64 {
    let v = rng.gen_range(1..=max);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Random strictly upper triangular integer matrix with entries in −2..=2.
fn random_nilpotent(d: usize, rng: &mut impl Rng, template: &CycNum) -> Matrix<CycNum> {
    Matrix::from_fn(d, d, |i, j| {
        if j > i {
            template.from_int_like(rng.gen_range(-2..=2))
        } else {
            template.zero_like()
        }
    })
}

/// `c0·I + c1·X + c2·X²` with random `c1, c2` in −2..=2.
fn random_poly_in(x: &Matrix<CycNum>, c0: i64, rng: &mut impl Rng) -> Matrix<CycNum> {
    let t = x.template().expect("nonempty").clone();
    let id = Matrix::identity(x.rows(), &t);
    let x2 = x.try_mul(x).expect("square");
    let (c1, c2) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
    id.scale(&t.from_int_like(c0)) + x.scale(&t.from_int_like(c1)) + x2.scale(&t.from_int_like(c2))
}

/// Integer unimodular matrix: a product of `n` random shears with
/// multipliers in {−2, −1, 1, 2}.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> Matrix<crate::scalar::Rational> {
    let mut s = Matrix::eye(n);
    if n < 2 {
        return s;
    }
    for _ in 0..n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = int(small_nonzero(rng, 2));
        // Column operation: col_j += c · col_i.
        for r in 0..n {
            let v = s.get(r, j) + &(s.get(r, i) * &c);
            s.set(r, j, v);
        }
    }
    s
}

/// An unconjugated pair of the given type over Q(ζ_k) with ω = ζ_k.
/// Types II–IV embed commuting `M = λI + p(X)`, `N = νI + r(X)` (the
/// nilpotent side drops its constant term); type I uses `A = J·s(J^k)`,
/// `B = D·r(J)` with `J` the nilpotent shift and `D = diag(ω^i)`.
pub fn random_block(kind: PairType, n: usize, k: usize, lambda: i64, nu: i64, rng: &mut impl Rng) -> Result<QuasiPair<CycNum>> {
    if n == 0 || k == 0 {
        return Err(Error::PreconditionFailed("n and k must be positive".into()));
    }
    let w = omega(k as u32);
    if kind == PairType::I {
        let j = Matrix::from_fn(n, n, |r, c| if c == r + 1 { w.one_like() } else { w.zero_like() });
        let jk = j.pow(k as u64)?;
        let s = random_poly_in(&jk, small_nonzero(rng, 2), rng);
        let a = j.try_mul(&s)?;
        let r = j.try_mul(&random_poly_in(&j, small_nonzero(rng, 2), rng))?;
        let d = Matrix::diag(&(0..n).map(|i| w.pow_u(i as u64)).collect::<Vec<_>>());
        let b = d.try_mul(&r)?;
        return QuasiPair::new(a, b, w, 0.0);
    }
    if n % k != 0 {
        return Err(Error::PreconditionFailed(format!("chain length {k} does not divide n = {n}")));
    }
    if lambda == 0 || nu == 0 {
        return Err(Error::PreconditionFailed("chain values must be nonzero".into()));
    }
    let d = n / k;
    let x = random_nilpotent(d, rng, &w);
    let (c_m, c_n) = match kind {
        PairType::II => (0, nu),
        PairType::III => (lambda, 0),
        _ => (lambda, nu),
    };
    let m = random_poly_in(&x, c_m, rng);
    let nn = random_poly_in(&x, c_n, rng);
    embed_commuting_pair(&m, &nn, k, &w)
}

/// Seeded random pair of the given type, conjugated by a random integer
/// unimodular matrix. Always verified exactly.
pub fn random_pair(kind: PairType, n: usize, k: usize, seed: u64) -> Result<QuasiPair<CycNum>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = small_nonzero(&mut rng, 3);
    let nu = small_nonzero(&mut rng, 3);
    let block = random_block(kind, n, k, lambda, nu, &mut rng)?;
    let w = block.omega.clone();
    let s = random_unimodular(n, &mut rng).map(|r| CycNum::in_field(w.field().clone(), r.clone()));
    let pair = block.conjugate(&s)?;
    debug_assert!(check_quasi(&pair.a, &pair.b, &pair.omega, 0.0)?);
    Ok(pair)
}

/// Block-diagonal sum of pairs sharing one ω.
pub fn direct_sum<T: Field>(pairs: &[QuasiPair<T>]) -> Result<QuasiPair<T>> {
    let first = pairs
        .first()
        .ok_or_else(|| Error::PreconditionFailed("direct sum of no pairs".into()))?;
    if pairs.iter().any(|p| p.omega != first.omega) {
        return Err(Error::PreconditionFailed("summands have different ω".into()));
    }
    let a = Matrix::block_diag(&pairs.iter().map(|p| &p.a).collect::<Vec<_>>());
    let b = Matrix::block_diag(&pairs.iter().map(|p| &p.b).collect::<Vec<_>>());
    Ok(QuasiPair {
        a,
        b,
        omega: first.omega.clone(),
        verified: pairs.iter().all(|p| p.verified),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn embed_unit_case() {
        let one = Matrix::<Rational>::eye(1);
        let p = embed_commuting_pair(&one, &one, 2, &int(-1)).unwrap();
        assert_eq!(p.a, Matrix::diag(&[int(1), int(-1)]));
        assert_eq!(p.b.to_string(), "[0, 1]\n[1, 0]");
        assert!(p.verified);
    }

    #[test]
    fn embed_preconditions() {
        let m = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap();
        let n = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        assert!(matches!(embed_commuting_pair(&m, &n, 2, &int(-1)), Err(Error::NotCommuting)));
        let z = Matrix::<Rational>::zeros(2, 2);
        assert!(matches!(embed_commuting_pair(&z, &z, 2, &int(-1)), Err(Error::PreconditionFailed(_))));
        assert!(matches!(embed_commuting_pair(&m, &m, 2, &int(1)), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn embed_six_by_six() {
        let w = omega(3);
        let lift = |rows: Vec<Vec<i64>>| {
            Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| w.from_int_like(x)).collect()).collect()).unwrap()
        };
        let m = lift(vec![vec![2, 1], vec![0, 2]]);
        let n = lift(vec![vec![1, 1], vec![0, 1]]);
        let p = embed_commuting_pair(&m, &n, 3, &w).unwrap();
        assert_eq!(p.dim(), 6);
        // Independent check by exact multiplication.
        assert_eq!(&p.a * &p.b, (&p.b * &p.a).scale(&w));
    }

    #[test]
    fn random_pairs_are_quasi() {
        for (i, kind) in [PairType::I, PairType::II, PairType::III, PairType::IV].into_iter().enumerate() {
            let p = random_pair(kind, 6, 3, 17 + i as u64).unwrap();
            assert!(p.verified, "{kind}");
            assert!(check_quasi(&p.a, &p.b, &p.omega, 0.0).unwrap());
        }
        assert!(random_pair(PairType::IV, 5, 2, 1).is_err());
    }

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..6 {
            let d = random_unimodular(n, &mut rng).determinant().unwrap();
            assert_eq!(d, int(1));
        }
    }
}
