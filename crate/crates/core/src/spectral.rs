//! Eigenvalues and their organisation into ω-chains.
//!
//! Exact matrices go through their exact characteristic polynomial, which is
//! split into square-free factors first; each factor then has simple roots,
//! found by Durand–Kerner iteration. Multiplicities are therefore exact for
//! exact input. Float matrices use the float characteristic polynomial
//! directly, where clustered roots are only as accurate as conditioning allows.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Field;

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-9;
pub const DEFAULT_ORBIT_TOL: f64 = 1e-8;
const MAX_SWEEPS: usize = 1000;
const RESIDUAL_TARGET: f64 = 1e-13;

type C = Complex64;

/// Eigenvalue clusters with multiplicities, sorted by descending modulus and
/// then by argument in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<(C, usize)>,
    tol: f64,
}

impl Spectrum {
    /// Cluster raw values (repeated entries allowed) at distance `tol`.
    pub fn from_values(values: &[C], tol: f64) -> Self {
        Self::from_weighted(values.iter().map(|&z| (z, 1)), tol)
    }

    pub fn from_weighted(values: impl IntoIterator<Item = (C, usize)>, tol: f64) -> Self {
        // (sum of members, count) per cluster.
        let mut clusters: Vec<(C, usize)> = Vec::new();
        for (z, m) in values {
            let found = clusters
                .iter_mut()
                .find(|(sum, count)| (*sum / *count as f64 - z).norm() <= tol);
            match found {
                Some((sum, count)) => {
                    *sum += z * m as f64;
                    *count += m;
                }
                None => clusters.push((z * m as f64, m)),
            }
        }
        let mut values: Vec<(C, usize)> =
            clusters.into_iter().map(|(s, c)| (s / c as f64, c)).collect();
        values.sort_by(|a, b| order_key(a.0, tol).partial_cmp(&order_key(b.0, tol)).unwrap());
        Self { values, tol }
    }

    pub fn values(&self) -> &[(C, usize)] {
        &self.values
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> usize {
        self.values.iter().map(|v| v.1).sum()
    }
}

/// Argument mapped into `[0, 2π)`, with values within `tol` of `2π` folded to 0.
pub fn positive_arg(z: C, tol: f64) -> f64 {
    let mut a = z.arg();
    if a < 0.0 {
        a += TAU;
    }
    if TAU - a <= tol || a <= tol {
        0.0
    } else {
        a
    }
}

/// Sort key: descending modulus, then ascending argument. Moduli closer than
/// the tolerance compare equal so ties are decided by argument.
fn order_key(z: C, tol: f64) -> (f64, f64) {
    let r = z.norm();
    let quant = if tol > 0.0 { (r / (10.0 * tol)).round() * 10.0 * tol } else { r };
    (-quant, positive_arg(z, tol))
}

pub fn format_complex(z: C) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    format!("{re:.12}{im:+.12}i")
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (z, m) in &self.values {
            writeln!(f, "{}  (multiplicity {m})", format_complex(*z))?;
        }
        Ok(())
    }
}

/// Roots of a complex polynomial (with multiplicity, unordered) by
/// Durand–Kerner iteration, followed by a Newton polish.
pub fn poly_roots(p: &Poly<C>) -> Result<Vec<C>> {
    let Some(deg) = p.degree() else {
        return Ok(Vec::new());
    };
    // Exact zero roots are split off first.
    let zeros = p.coeffs().iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots = vec![C::new(0.0, 0.0); zeros];
    let coeffs: Vec<C> = p.coeffs()[zeros..].to_vec();
    let n = deg - zeros;
    if n == 0 {
        return Ok(roots);
    }
    let lc = coeffs[n];
    let monic: Vec<C> = coeffs.iter().map(|c| c / lc).collect();
    if n == 1 {
        roots.push(-monic[0]);
        return Ok(roots);
    }
    let eval = |z: C| monic.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * z + c);
    let scale = |z: C| {
        let r = z.norm();
        monic.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    };
    // Fujiwara-type bound for the initial circle.
    let radius = (0..n)
        .map(|k| monic[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3)
        * 1.5;
    let mut z: Vec<C> = (0..n)
        .map(|k| C::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let converged = |z: &[C]| z.iter().all(|&zi| eval(zi).norm() <= RESIDUAL_TARGET * scale(zi).max(1e-300));
    let mut sweeps = 0;
    while !converged(&z) {
        if sweeps == MAX_SWEEPS {
            let residual = z
                .iter()
                .map(|&zi| eval(zi).norm() / scale(zi).max(1e-300))
                .fold(0.0, f64::max);
            return Err(Error::NoConvergence { sweeps, residual });
        }
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = C::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                z[i] += C::new(1e-10, 1e-10);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        sweeps += 1;
        if moved < 1e-17 {
            break;
        }
    }
    // Newton polish on the (square-free by construction, when exact) polynomial.
    let deriv: Vec<C> = (1..=n).map(|k| monic[k] * k as f64).collect();
    let eval_d = |x: C| deriv.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * x + c);
    for zi in &mut z {
        for _ in 0..2 {
            let d = eval_d(*zi);
            if d.norm() == 0.0 {
                break;
            }
            let cand = *zi - eval(*zi) / d;
            if eval(cand).norm() < eval(*zi).norm() {
                *zi = cand;
            }
        }
    }
    roots.extend(z);
    Ok(roots)
}

/// Eigenvalues of a square matrix, clustered at distance `tol`.
pub fn eigenvalues<T: Field>(a: &Matrix<T>, tol: f64) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            op: "eigenvalues",
            left: a.shape(),
            right: a.shape(),
        });
    }
    if a.rows() == 0 {
        return Ok(Spectrum { values: Vec::new(), tol });
    }
    let mut weighted = Vec::new();
    if T::EXACT {
        let cp = a.char_poly()?;
        for (factor, mult) in cp.squarefree_factors() {
            for z in poly_roots(&factor.map(Field::to_complex))? {
                weighted.push((z, mult));
            }
        }
    } else {
        let cp = a.to_complex().char_poly()?;
        for z in poly_roots(&cp)? {
            weighted.push((z, 1));
        }
    }
    Ok(Spectrum::from_weighted(weighted, tol))
}

/// Smallest `p ≥ 1` with `|ω^p − 1| ≤ tol` (searched up to 10 000).
pub fn root_order(omega: C, tol: f64) -> Option<usize> {
    if (omega.norm() - 1.0).abs() > tol {
        return None;
    }
    let mut p = omega;
    for k in 1..=10_000 {
        if (p - 1.0).norm() <= tol {
            return Some(k);
        }
        p *= omega;
    }
    None
}

/// One ω-orbit run `base, ω·base, …, ω^{length-1}·base`, each member with
/// multiplicity `multiplicity`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub base: C,
    pub length: usize,
    pub multiplicity: usize,
}

impl Chain {
    pub fn members(&self, omega: C) -> Vec<C> {
        (0..self.length).map(|j| self.base * omega.powi(j as i32)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChainPartition {
    pub zero_multiplicity: usize,
    pub chains: Vec<Chain>,
}

impl fmt::Display for ChainPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "zero multiplicity: {}", self.zero_multiplicity)?;
        for c in &self.chains {
            writeln!(
                f,
                "chain base {} length {} multiplicity {}",
                format_complex(c.base),
                c.length,
                c.multiplicity
            )?;
        }
        Ok(())
    }
}

/// Why a spectrum is not Carollian.
#[derive(Debug, Clone, PartialEq)]
pub struct CarollianFailure {
    pub base: C,
    pub missing: C,
    pub needed_multiplicity: usize,
}

impl fmt::Display for CarollianFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "orbit of {} lacks {} (needed multiplicity {})",
            format_complex(self.base),
            format_complex(self.missing),
            self.needed_multiplicity
        )
    }
}

/// Working multiset: nonzero clusters in spectrum order, plus the zero count.
fn split_zero(spec: &Spectrum, tol: f64) -> (usize, Vec<(C, usize)>) {
    let mut zero = 0;
    let mut rest = Vec::new();
    for &(z, m) in &spec.values {
        if z.norm() <= tol {
            zero += m;
        } else {
            rest.push((z, m));
        }
    }
    rest.sort_by(|a, b| order_key(a.0, tol).partial_cmp(&order_key(b.0, tol)).unwrap());
    (zero, rest)
}

fn find(rest: &[(C, usize)], target: C, tol: f64) -> Option<usize> {
    let scale = 1.0f64.max(target.norm());
    rest.iter()
        .position(|&(z, m)| m > 0 && (z - target).norm() <= tol * scale)
}

/// Succeeds iff the nonzero spectrum is a disjoint union of full ω-orbits with
/// matched multiplicities. Bases are taken greedily by largest modulus.
pub fn carollian_check(spec: &Spectrum, omega: C, tol: f64) -> std::result::Result<ChainPartition, CarollianFailure> {
    let (zero_multiplicity, mut rest) = split_zero(spec, tol);
    let p = root_order(omega, tol);
    let mut chains = Vec::new();
    while let Some(bi) = rest.iter().position(|v| v.1 > 0) {
        let (base, m) = rest[bi];
        let Some(p) = p else {
            return Err(CarollianFailure {
                base,
                missing: base * omega,
                needed_multiplicity: m,
            });
        };
        let mut idx = vec![bi];
        for j in 1..p {
            let target = base * omega.powi(j as i32);
            match find(&rest, target, tol) {
                Some(k) if rest[k].1 >= m && !idx.contains(&k) => idx.push(k),
                _ => {
                    return Err(CarollianFailure {
                        base,
                        missing: target,
                        needed_multiplicity: m,
                    })
                }
            }
        }
        for k in idx {
            rest[k].1 -= m;
        }
        chains.push(Chain {
            base,
            length: p,
            multiplicity: m,
        });
    }
    Ok(ChainPartition {
        zero_multiplicity,
        chains,
    })
}

/// Split the nonzero spectrum into maximal runs `μ, ωμ, ω²μ, …`; partial
/// orbits are allowed. Runs start at a value whose ω-predecessor is absent,
/// or (for complete orbits) at the value with the smallest argument.
pub fn chain_partition(spec: &Spectrum, omega: C, tol: f64) -> ChainPartition {
    let (zero_multiplicity, mut rest) = split_zero(spec, tol);
    let max_len = root_order(omega, tol).unwrap_or(usize::MAX);
    let mut chains = Vec::new();
    while rest.iter().any(|v| v.1 > 0) {
        let live: Vec<usize> = (0..rest.len()).filter(|&i| rest[i].1 > 0).collect();
        let start = live
            .iter()
            .copied()
            .find(|&i| max_len == 1 || find(&rest, rest[i].0 / omega, tol).is_none())
            .unwrap_or(live[0]);
        let (base, mut m) = rest[start];
        let mut idx = vec![start];
        while idx.len() < max_len {
            let target = base * omega.powi(idx.len() as i32);
            match find(&rest, target, tol) {
                Some(k) if !idx.contains(&k) => {
                    m = m.min(rest[k].1);
                    idx.push(k);
                }
                _ => break,
            }
        }
        for &k in &idx {
            rest[k].1 -= m;
        }
        chains.push(Chain {
            base,
            length: idx.len(),
            multiplicity: m,
        });
    }
    chains.sort_by(|a, b| order_key(a.base, tol).partial_cmp(&order_key(b.base, tol)).unwrap());
    ChainPartition {
        zero_multiplicity,
        chains,
    }
}

/// True iff the eigenvalue multiset of `A` equals `ω` times itself.
pub fn spectrum_symmetry_check<T: Field>(a: &Matrix<T>, omega: C, tol: f64) -> Result<bool> {
    let spec = eigenvalues(a, DEFAULT_CLUSTER_TOL.min(tol))?;
    Ok(spectrum_is_symmetric(&spec, omega, tol))
}

pub fn spectrum_is_symmetric(spec: &Spectrum, omega: C, tol: f64) -> bool {
    let vals = spec.values();
    let mut used = vec![false; vals.len()];
    for &(z, m) in vals {
        let target = z * omega;
        let scale = 1.0f64.max(target.norm());
        let hit = (0..vals.len()).find(|&k| !used[k] && vals[k].1 == m && (vals[k].0 - target).norm() <= tol * scale);
        match hit {
            Some(k) => used[k] = true,
            None => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, omega, Rational, Ring};

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn roots_of_unity_diagonal() {
        let w = omega(3);
        let d = Matrix::diag(&[w.one_like(), w.clone(), w.pow_u(2)]);
        let s = eigenvalues(&d, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(s.values().len(), 3);
        assert!(s.values().iter().all(|v| v.1 == 1));
        assert!((s.values()[0].0 - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn nilpotent_block() {
        let j = Matrix::from_rows(vec![
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(0), int(0), int(0)],
        ])
        .unwrap();
        let s = eigenvalues(&j, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(s.values(), &[(c(0.0, 0.0), 3)]);
        let f = eigenvalues(&j.to_complex(), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(f.dimension(), 3);
    }

    #[test]
    fn repeated_exact_root() {
        // (λ - 2)^2 (λ + 1)
        let a = Matrix::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![int(0), int(2), int(0)],
            vec![int(0), int(0), int(-1)],
        ])
        .unwrap();
        let s = eigenvalues::<Rational>(&a, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(s.values().len(), 2);
        assert_eq!(s.values()[0].1, 2);
        assert!((s.values()[0].0 - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn carollian_cases() {
        let zero = Spectrum::from_values(&[c(0.0, 0.0), c(0.0, 0.0)], DEFAULT_CLUSTER_TOL);
        let p = carollian_check(&zero, c(-1.0, 0.0), 1e-8).unwrap();
        assert_eq!(p.zero_multiplicity, 2);
        assert!(p.chains.is_empty());

        let bad = Spectrum::from_values(&[c(1.0, 0.0), c(2.0, 0.0)], DEFAULT_CLUSTER_TOL);
        let err = carollian_check(&bad, c(-1.0, 0.0), 1e-8).unwrap_err();
        assert!((err.missing - c(-2.0, 0.0)).norm() < 1e-12);
        // The orbit of the smaller value fails the same way if it is reached first.
        let bad1 = Spectrum::from_values(&[c(1.0, 0.0)], DEFAULT_CLUSTER_TOL);
        assert!(carollian_check(&bad1, c(-1.0, 0.0), 1e-8).is_err());
    }

    #[test]
    fn partitions() {
        let w = C::from_polar(1.0, TAU / 3.0);
        let vals = [c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), w * 2.0, w * w * 2.0];
        let p = chain_partition(&Spectrum::from_values(&vals, 1e-9), w, 1e-8);
        assert_eq!(p.zero_multiplicity, 2);
        assert_eq!(p.chains.len(), 1);
        assert_eq!(p.chains[0].length, 3);
        assert!((p.chains[0].base - c(2.0, 0.0)).norm() < 1e-12);

        let partial = [w * 3.0, w * w * 3.0];
        let p = chain_partition(&Spectrum::from_values(&partial, 1e-9), w, 1e-8);
        assert_eq!(p.chains.len(), 1);
        assert_eq!(p.chains[0].length, 2);
        assert!((p.chains[0].base - w * 3.0).norm() < 1e-12);

        assert_eq!(chain_partition(&Spectrum::from_values(&[], 1e-9), w, 1e-8), ChainPartition::default());
    }

    #[test]
    fn symmetry() {
        let a = Matrix::diag(&[int(1), int(2)]);
        assert!(!spectrum_symmetry_check(&a, c(-1.0, 0.0), 1e-8).unwrap());
        let z = Matrix::diag(&[int(0), int(0)]);
        assert!(spectrum_symmetry_check(&z, c(0.3, 0.1), 1e-8).unwrap());
        let w = omega(4);
        let b = Matrix::diag(&[w.one_like(), w.clone(), w.pow_u(2), w.pow_u(3)]);
        assert!(spectrum_symmetry_check(&b, w.to_complex(), 1e-8).unwrap());
    }
}
