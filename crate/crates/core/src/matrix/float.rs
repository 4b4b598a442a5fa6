//! Numerical helpers for complex floating-point matrices.

use num_complex::Complex64;

use super::Matrix;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);

impl Matrix<C> {
    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// 1-norm condition number; infinite for numerically singular input.
    pub fn cond1(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.norm1() * inv.norm1(),
            Err(_) => f64::INFINITY,
        }
    }

    /// Kernel of dimension `dim` (known in advance) by elimination with
    /// complete pivoting, returned as orthonormal columns.
    pub fn kernel_of_dim(&self, dim: usize) -> Matrix<C> {
        let (n, m) = self.shape();
        let rank = m.saturating_sub(dim).min(n);
        let mut a = self.clone();
        let mut colperm: Vec<usize> = (0..m).collect();
        for k in 0..rank {
            let (mut pi, mut pj, mut best) = (k, k, -1.0);
            for i in k..n {
                for j in k..m {
                    let v = a.get(i, j).norm();
                    if v > best {
                        (pi, pj, best) = (i, j, v);
                    }
                }
            }
            a.swap_rows(pi, k);
            a.swap_cols(pj, k);
            colperm.swap(pj, k);
            let inv = a.get(k, k).inv();
            for i in k + 1..n {
                let f = a.get(i, k) * inv;
                if f == ZERO {
                    continue;
                }
                for j in k..m {
                    let v = a.get(i, j) - f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        // Back-substitute: unknowns 0..rank in terms of the free ones.
        let mut basis = Matrix::zero(m, m - rank, &ZERO);
        for (f, free) in (rank..m).enumerate() {
            let mut x = vec![ZERO; m];
            x[free] = C::new(1.0, 0.0);
            for k in (0..rank).rev() {
                let mut s = ZERO;
                for j in k + 1..m {
                    s += a.get(k, j) * x[j];
                }
                x[k] = -s / a.get(k, k);
            }
            for (p, &orig) in colperm.iter().enumerate() {
                basis.set(orig, f, x[p]);
            }
        }
        basis.orthonormalize_columns()
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Modified Gram–Schmidt, applied twice for stability. Columns that
    /// vanish numerically are kept as computed (callers pass full-rank input).
    pub fn orthonormalize_columns(&self) -> Matrix<C> {
        let mut q = self.clone();
        for _ in 0..2 {
            for j in 0..q.cols {
                for p in 0..j {
                    let dot: C = (0..q.rows).map(|i| q.get(i, p).conj() * q.get(i, j)).sum();
                    for i in 0..q.rows {
                        let v = q.get(i, j) - dot * q.get(i, p);
                        q.set(i, j, v);
                    }
                }
                let norm = (0..q.rows).map(|i| q.get(i, j).norm_sqr()).sum::<f64>().sqrt();
                if norm > 0.0 {
                    for i in 0..q.rows {
                        let v = q.get(i, j) / norm;
                        q.set(i, j, v);
                    }
                }
            }
        }
        q
    }

    /// Orthonormal basis (as columns) of a `dim`-dimensional column space,
    /// chosen greedily by largest residual column norm.
    pub fn range_of_dim(&self, dim: usize) -> Matrix<C> {
        let mut work = self.clone();
        let mut out = Matrix::zero(self.rows, dim, &ZERO);
        for k in 0..dim {
            let norms: Vec<f64> = (0..work.cols)
                .map(|j| (0..work.rows).map(|i| work.get(i, j).norm_sqr()).sum())
                .collect();
            let best = (0..work.cols).max_by(|&a, &b| norms[a].total_cmp(&norms[b])).unwrap_or(0);
            let nb = norms.get(best).copied().unwrap_or(0.0).sqrt();
            if nb == 0.0 {
                break;
            }
            let q: Vec<C> = (0..work.rows).map(|i| work.get(i, best) / nb).collect();
            for (i, v) in q.iter().enumerate() {
                out.set(i, k, *v);
            }
            for j in 0..work.cols {
                let dot: C = (0..work.rows).map(|i| q[i].conj() * work.get(i, j)).sum();
                for (i, qi) in q.iter().enumerate() {
                    let v = work.get(i, j) - dot * qi;
                    work.set(i, j, v);
                }
            }
        }
        out.orthonormalize_columns()
    }

    /// Largest entrywise distance.
    pub fn max_abs_diff(&self, rhs: &Matrix<C>) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
