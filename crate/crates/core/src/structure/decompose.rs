//! Simultaneous block decomposition of a quasi-commutative pair into blocks of
//! types I–IV, and the reduction of nonsingular pairs to the cyclic form
//! `A = diag(a, ωa, …)`, `B` = identities below the diagonal plus `b` in the
//! top-right block.
//!
//! Since `AB = ωBA`, `B` maps the generalised eigenspace of `A` for μ into the
//! one for ωμ, so the sum over an ω-orbit of eigenvalues is invariant under
//! both matrices; likewise with the roles of `A` and `B` exchanged. The orbit
//! projectors of `A` therefore commute with those of `B`, and the blocks are
//! the ranges of their products. All of this is done in floating point.

use std::fmt;

use num_complex::Complex64;

use super::{PairType, QuasiPair};
use crate::error::{Error, Result};
use crate::matrix::{format_matrix, Matrix};
use crate::spectral::{self, carollian_check, eigenvalues, format_complex, positive_arg, root_order, Spectrum};
use crate::scalar::Field;

type C = Complex64;

pub type BlockType = PairType;

/// Condition-number ceiling for the assembled similarity.
const MAX_CONDITION: f64 = 1e12;

/// The eigenvalues of one matrix on one block: an ω-orbit run starting at
/// `members[0]`, each with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainData {
    pub members: Vec<(C, usize)>,
}

impl ChainData {
    pub fn base(&self) -> C {
        self.members[0].0
    }

    pub fn length(&self) -> usize {
        self.members.len()
    }
}

impl fmt::Display for ChainData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mults: Vec<String> = self.members.iter().map(|m| m.1.to_string()).collect();
        write!(
            f,
            "base {} length {} multiplicities [{}]",
            format_complex(self.base()),
            self.length(),
            mults.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    /// Half-open index range `start..end` of rows and columns.
    pub start: usize,
    pub end: usize,
    pub block_type: BlockType,
    /// `None` when the spectrum on the block is `{0}`.
    pub a_chain: Option<ChainData>,
    pub b_chain: Option<ChainData>,
}

/// `(a, b, k)` for a type-IV block in cyclic form.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedForm {
    /// Index into [`DecompositionReport::blocks`].
    pub block: usize,
    pub a: Matrix<C>,
    pub b: Matrix<C>,
    pub k: usize,
    /// `‖ab − ba‖_max`.
    pub commutator: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    pub omega: C,
    pub s: Matrix<C>,
    /// `S⁻¹AS` and `S⁻¹BS`.
    pub a_reduced: Matrix<C>,
    pub b_reduced: Matrix<C>,
    pub blocks: Vec<Block>,
    pub reduced_forms: Vec<ReducedForm>,
    /// Largest off-block entry of `S⁻¹AS`, relative to `‖A‖_max`; same for B.
    pub residual_a: f64,
    pub residual_b: f64,
    pub condition: f64,
}

impl DecompositionReport {
    pub fn residual(&self) -> f64 {
        self.residual_a.max(self.residual_b)
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "omega {}", format_complex(self.omega))?;
        writeln!(f, "blocks {}", self.blocks.len())?;
        for (i, b) in self.blocks.iter().enumerate() {
            writeln!(f, "block {}: rows {}-{} type {}", i + 1, b.start + 1, b.end, b.block_type)?;
            match &b.a_chain {
                Some(c) => writeln!(f, "  A chain: {c}")?,
                None => writeln!(f, "  A spectrum: {{0}}")?,
            }
            match &b.b_chain {
                Some(c) => writeln!(f, "  B chain: {c}")?,
                None => writeln!(f, "  B spectrum: {{0}}")?,
            }
            if let Some(r) = self.reduced_forms.iter().find(|r| r.block == i) {
                writeln!(f, "  reduced form: k {} size {} commutator {:.3e}", r.k, r.a.rows(), r.commutator)?;
            }
        }
        writeln!(f, "residual A {:.3e} B {:.3e}", self.residual_a, self.residual_b)?;
        writeln!(f, "condition {:.3e}", self.condition)?;
        writeln!(f, "# S")?;
        f.write_str(&format_matrix(&self.s))?;
        writeln!(f, "# S^-1 A S")?;
        f.write_str(&format_matrix(&self.a_reduced))?;
        writeln!(f, "# S^-1 B S")?;
        f.write_str(&format_matrix(&self.b_reduced))?;
        for r in &self.reduced_forms {
            writeln!(f, "# block {} a", r.block + 1)?;
            f.write_str(&format_matrix(&r.a))?;
            writeln!(f, "# block {} b", r.block + 1)?;
            f.write_str(&format_matrix(&r.b))?;
        }
        Ok(())
    }
}

/// One ω-orbit of eigenvalues of a matrix with its spectral projectors.
struct Group {
    /// `None` for the zero eigenvalue.
    zero: bool,
    /// Ordered from the base by increasing power of ω.
    members: Vec<C>,
    member_projectors: Vec<Matrix<C>>,
    projector: Matrix<C>,
}

fn c0() -> C {
    C::new(0.0, 0.0)
}

/// Generalised eigenspaces, their spectral projectors, grouped into ω-orbits.
fn orbit_groups(x: &Matrix<C>, spec: &Spectrum, omega: C, tol: f64) -> Result<Vec<Group>> {
    let n = x.rows();
    let id = Matrix::<C>::eye(n);
    let mut kernels = Vec::new();
    for &(mu, m) in spec.values() {
        let shifted = x.try_sub(&id.scale(&mu))?.pow(m as u64)?;
        kernels.push(shifted.kernel_of_dim(m));
    }
    let mut basis = kernels[0].clone();
    for k in &kernels[1..] {
        basis = basis.hstack(k)?;
    }
    let inv = basis.inverse().map_err(|_| Error::IllConditioned(f64::INFINITY))?;
    let mut projectors = Vec::new();
    let mut offset = 0;
    for k in &kernels {
        let rows = inv.submatrix(offset, offset + k.cols(), 0, n);
        projectors.push(k.try_mul(&rows)?);
        offset += k.cols();
    }

    let vals: Vec<C> = spec.values().iter().map(|v| v.0).collect();
    let ord = root_order(omega, tol).unwrap_or(n.max(1));
    let related = |a: C, b: C| -> Option<usize> {
        let scale = 1.0f64.max(a.norm());
        (0..ord).find(|&j| (a * omega.powi(j as i32) - b).norm() <= tol * scale)
    };
    let is_zero = |z: C| z.norm() <= tol;
    // Union-find over orbit relation.
    let mut parent: Vec<usize> = (0..vals.len()).collect();
    fn root(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            let linked = if is_zero(vals[i]) || is_zero(vals[j]) {
                is_zero(vals[i]) && is_zero(vals[j])
            } else {
                related(vals[i], vals[j]).is_some() || related(vals[j], vals[i]).is_some()
            };
            if linked {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Group> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for i in 0..vals.len() {
        let r = root(&mut parent, i);
        if seen.contains(&r) {
            continue;
        }
        seen.push(r);
        let idx: Vec<usize> = (0..vals.len()).filter(|&j| root(&mut parent, j) == r).collect();
        let zero = is_zero(vals[idx[0]]);
        // Base: the member from which all others are reached with the smallest
        // largest exponent; ties go to the smaller argument in [0, 2π).
        let mut best: Option<(usize, usize, f64, Vec<usize>)> = None;
        for &b in &idx {
            let exps: Option<Vec<usize>> = idx.iter().map(|&j| related(vals[b], vals[j])).collect();
            let Some(exps) = exps else { continue };
            let span = exps.iter().copied().max().unwrap_or(0);
            let arg = positive_arg(vals[b], tol);
            let better = match &best {
                None => true,
                Some((_, s, a, _)) => span < *s || (span == *s && arg < *a - tol),
            };
            if better {
                best = Some((b, span, arg, exps));
            }
        }
        let order: Vec<usize> = match (zero, best) {
            (false, Some((_, _, _, exps))) => {
                let mut o = idx.clone();
                o.sort_by_key(|&j| exps[idx.iter().position(|&x| x == j).unwrap()]);
                o
            }
            _ => idx.clone(),
        };
        let mut projector = Matrix::zero(n, n, &c0());
        for &j in &order {
            projector = projector.try_add(&projectors[j])?;
        }
        groups.push(Group {
            zero,
            members: order.iter().map(|&j| if zero { c0() } else { vals[j] }).collect(),
            member_projectors: order.iter().map(|&j| projectors[j].clone()).collect(),
            projector,
        });
    }
    // Zero group first, then by descending base modulus, ties by argument.
    groups.sort_by(|a, b| {
        let key = |g: &Group| {
            if g.zero {
                (0, 0.0, 0.0)
            } else {
                (1, -g.members[0].norm(), positive_arg(g.members[0], tol))
            }
        };
        let (ka, kb) = (key(a), key(b));
        ka.0.cmp(&kb.0)
            .then(round_cmp(ka.1, kb.1, tol))
            .then(ka.2.total_cmp(&kb.2))
    });
    Ok(groups)
}

fn round_cmp(a: f64, b: f64, tol: f64) -> std::cmp::Ordering {
    if (a - b).abs() <= tol * (1.0 + a.abs()) {
        std::cmp::Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

fn rounded_trace(m: &Matrix<C>) -> usize {
    m.trace().re.round().max(0.0) as usize
}

fn chain_data(group: &Group, other: &Matrix<C>, left: bool) -> Option<ChainData> {
    if group.zero {
        return None;
    }
    let members: Vec<(C, usize)> = group
        .members
        .iter()
        .zip(&group.member_projectors)
        .map(|(&z, p)| {
            let prod = if left { p * other } else { other * p };
            (z, rounded_trace(&prod))
        })
        .filter(|m| m.1 > 0)
        .collect();
    Some(ChainData { members })
}

/// Spectrum of a matrix given exactly or in floating point, with exact
/// multiplicities in the exact case.
fn spectrum_of<T: Field>(m: &Matrix<T>) -> Result<Spectrum> {
    eigenvalues(m, spectral::DEFAULT_CLUSTER_TOL)
}

fn off_block_max(m: &Matrix<C>, ranges: &[(usize, usize)]) -> f64 {
    let owner = |i: usize| ranges.iter().position(|&(s, e)| i >= s && i < e);
    let mut worst: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if owner(i) != owner(j) {
                worst = worst.max(m.get(i, j).norm());
            }
        }
    }
    worst
}

/// Block-diagonalise a quasi-commutative pair. `tol` is the orbit-matching
/// tolerance for eigenvalues.
pub fn decompose<T: Field>(pair: &QuasiPair<T>, tol: f64) -> Result<DecompositionReport> {
    let omega = pair.omega.to_complex();
    if root_order(omega, tol).is_none() {
        return Err(Error::PreconditionFailed("ω is not a root of unity".into()));
    }
    let n = pair.dim();
    let ac = pair.a.to_complex();
    let bc = pair.b.to_complex();
    let ga = orbit_groups(&ac, &spectrum_of(&pair.a)?, omega, tol)?;
    let gb = orbit_groups(&bc, &spectrum_of(&pair.b)?, omega, tol)?;

    let mut blocks = Vec::new();
    let mut bases: Vec<Matrix<C>> = Vec::new();
    let mut kurosaki: Vec<Option<usize>> = Vec::new();
    let mut start = 0;
    for h in &ga {
        for g in &gb {
            let joint = h.projector.try_mul(&g.projector)?;
            let r = rounded_trace(&joint);
            if r == 0 {
                continue;
            }
            let block_type = match (h.zero, g.zero) {
                (true, true) => PairType::I,
                (true, false) => PairType::II,
                (false, true) => PairType::III,
                (false, false) => PairType::IV,
            };
            let a_chain = chain_data(h, &g.projector, true);
            let b_chain = chain_data(g, &h.projector, false);
            let mut basis = None;
            let mut k_used = None;
            if block_type == PairType::IV {
                let k = h.members.len();
                let v0_proj = h.member_projectors[0].try_mul(&g.projector)?;
                let d = rounded_trace(&v0_proj);
                if d * k == r {
                    let v0 = v0_proj.range_of_dim(d);
                    let mut s = v0.clone();
                    let mut v = v0;
                    for _ in 1..k {
                        v = bc.try_mul(&v)?;
                        s = s.hstack(&v)?;
                    }
                    basis = Some(s);
                    k_used = Some(k);
                }
            }
            bases.push(basis.unwrap_or_else(|| joint.range_of_dim(r)));
            kurosaki.push(k_used);
            blocks.push(Block {
                start,
                end: start + r,
                block_type,
                a_chain,
                b_chain,
            });
            start += r;
        }
    }
    if start != n {
        return Err(Error::PreconditionFailed(format!(
            "block dimensions sum to {start}, expected {n}; the pair is not quasi-commutative or too ill-conditioned"
        )));
    }
    let mut s = bases[0].clone();
    for b in &bases[1..] {
        s = s.hstack(b)?;
    }
    let condition = s.cond1();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned(condition));
    }
    let sinv = s.inverse()?;
    let a_reduced = sinv.try_mul(&ac)?.try_mul(&s)?;
    let b_reduced = sinv.try_mul(&bc)?.try_mul(&s)?;
    let ranges: Vec<(usize, usize)> = blocks.iter().map(|b| (b.start, b.end)).collect();
    let rel = |m: &Matrix<C>, orig: &Matrix<C>| {
        let off = off_block_max(m, &ranges);
        let norm = orig.norm_max();
        if norm > 0.0 {
            off / norm
        } else {
            off
        }
    };
    let residual_a = rel(&a_reduced, &ac);
    let residual_b = rel(&b_reduced, &bc);

    let mut reduced_forms = Vec::new();
    for (i, (blk, k)) in blocks.iter().zip(&kurosaki).enumerate() {
        let Some(k) = *k else { continue };
        let d = (blk.end - blk.start) / k;
        let a = a_reduced.submatrix(blk.start, blk.start + d, blk.start, blk.start + d);
        let b = b_reduced.submatrix(blk.start, blk.start + d, blk.end - d, blk.end);
        let commutator = a.try_mul(&b)?.max_abs_diff(&b.try_mul(&a)?);
        reduced_forms.push(ReducedForm {
            block: i,
            a,
            b,
            k,
            commutator,
        });
    }
    Ok(DecompositionReport {
        omega,
        s,
        a_reduced,
        b_reduced,
        blocks,
        reduced_forms,
        residual_a,
        residual_b,
        condition,
    })
}

/// The cyclic form of a nonsingular pair.
#[derive(Debug, Clone, PartialEq)]
pub struct KurosakiForm {
    pub s: Matrix<C>,
    pub a: Matrix<C>,
    pub b: Matrix<C>,
    pub k: usize,
    /// `‖S·A'·S⁻¹ − A‖_max / ‖A‖_max`, maximised with the same for `B`, where
    /// `(A', B')` is the cyclic pair rebuilt from `(a, b, k)`.
    pub residual: f64,
}

/// Rebuild `diag(a, ωa, …)` and the cyclic `B` from `(a, b, k)`.
pub fn cyclic_pair(a: &Matrix<C>, b: &Matrix<C>, k: usize, omega: C) -> (Matrix<C>, Matrix<C>) {
    let d = a.rows();
    let mut big_a = Matrix::zero(d * k, d * k, &c0());
    let mut big_b = Matrix::zero(d * k, d * k, &c0());
    let id = Matrix::<C>::eye(d);
    for j in 0..k {
        big_a.set_block(j * d, j * d, &a.scale(&omega.powi(j as i32)));
        if j + 1 < k {
            big_b.set_block((j + 1) * d, j * d, &id);
        }
    }
    big_b.set_block(0, (k - 1) * d, b);
    (big_a, big_b)
}

/// Reduce a pair with both matrices nonsingular to `A = diag(a, ωa, …)` and
/// `B` cyclic with identity blocks except `b` in the top-right corner.
pub fn kurosaki_reduce<T: Field>(pair: &QuasiPair<T>, tol: f64) -> Result<KurosakiForm> {
    let n = pair.dim();
    let omega = pair.omega.to_complex();
    let k = root_order(omega, tol)
        .ok_or_else(|| Error::PreconditionFailed("ω is not a root of unity".into()))?;
    if n % k != 0 {
        return Err(Error::PreconditionFailed(format!("the order {k} of ω does not divide n = {n}")));
    }
    let spec_a = spectrum_of(&pair.a)?;
    let spec_b = spectrum_of(&pair.b)?;
    if spec_a.values().iter().any(|v| v.0.norm() <= tol) {
        return Err(Error::PreconditionFailed("A is singular".into()));
    }
    if spec_b.values().iter().any(|v| v.0.norm() <= tol) {
        return Err(Error::PreconditionFailed("B is singular".into()));
    }
    if let Err(f) = carollian_check(&spec_a, omega, tol) {
        return Err(Error::PreconditionFailed(format!("σ(A) is not a union of full chains: {f}")));
    }
    let ac = pair.a.to_complex();
    let bc = pair.b.to_complex();
    let groups = orbit_groups(&ac, &spec_a, omega, tol)?;
    let mut p0 = Matrix::zero(n, n, &c0());
    for g in &groups {
        p0 = p0.try_add(&g.member_projectors[0])?;
    }
    let d = n / k;
    let v0 = p0.range_of_dim(d);
    let mut s = v0.clone();
    let mut v = v0;
    for _ in 1..k {
        v = bc.try_mul(&v)?;
        s = s.hstack(&v)?;
    }
    let condition = s.cond1();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned(condition));
    }
    let sinv = s.inverse()?;
    let ar = sinv.try_mul(&ac)?.try_mul(&s)?;
    let br = sinv.try_mul(&bc)?.try_mul(&s)?;
    let a = ar.submatrix(0, d, 0, d);
    let b = br.submatrix(0, d, n - d, n);
    let (big_a, big_b) = cyclic_pair(&a, &b, k, omega);
    let back_a = s.try_mul(&big_a)?.try_mul(&sinv)?;
    let back_b = s.try_mul(&big_b)?.try_mul(&sinv)?;
    let residual = (back_a.max_abs_diff(&ac) / ac.norm_max()).max(back_b.max_abs_diff(&bc) / bc.norm_max());
    Ok(KurosakiForm { s, a, b, k, residual })
}
