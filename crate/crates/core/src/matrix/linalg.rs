use super::Matrix;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Field;

/// Default relative rank tolerance for floating-point elimination.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

impl<T: Field> Matrix<T> {
    fn require_square(&self, op: &'static str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: self.shape(),
            })
        }
    }

    /// Determinant: fraction-free Bareiss elimination for exact scalars,
    /// partial-pivot LU for floats. The empty matrix has determinant 1 only if
    /// a template is available, so callers must pass nonempty matrices.
    pub fn determinant(&self) -> Result<T> {
        self.require_square("determinant")?;
        let n = self.rows;
        let one = self.data[0].one_like();
        if T::EXACT {
            let mut m = self.clone();
            let mut sign_flip = false;
            let mut prev = one;
            for k in 0..n.saturating_sub(1) {
                if m.get(k, k).is_zero() {
                    match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                        Some(i) => {
                            m.swap_rows(i, k);
                            sign_flip = !sign_flip;
                        }
                        None => return Ok(prev.zero_like()),
                    }
                }
                let pivot = m.get(k, k).clone();
                for i in k + 1..n {
                    for j in k + 1..n {
                        let v = m.get(i, j).times(&pivot).minus(&m.get(i, k).times(m.get(k, j)));
                        m.set(i, j, v.try_div(&prev).expect("Bareiss divisor is a previous pivot"));
                    }
                    m.set(i, k, pivot.zero_like());
                }
                prev = pivot;
            }
            let d = m.get(n - 1, n - 1).clone();
            Ok(if sign_flip { d.negated() } else { d })
        } else {
            let (lu, _, sign_flip) = match self.lu_partial() {
                Some(x) => x,
                None => return Ok(one.zero_like()),
            };
            let mut d = one;
            for i in 0..n {
                d = d.times(lu.get(i, i));
            }
            Ok(if sign_flip { d.negated() } else { d })
        }
    }

    /// In-place partial-pivot LU; `None` when an exactly zero column is met.
    fn lu_partial(&self) -> Option<(Self, Vec<usize>, bool)> {
        let n = self.rows;
        let mut m = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut flip = false;
        for k in 0..n {
            let p = (k..n).max_by(|&a, &b| m.get(a, k).magnitude().total_cmp(&m.get(b, k).magnitude()))?;
            if m.get(p, k).is_zero() {
                return None;
            }
            if p != k {
                m.swap_rows(p, k);
                perm.swap(p, k);
                flip = !flip;
            }
            let inv = m.get(k, k).try_inv()?;
            for i in k + 1..n {
                let f = m.get(i, k).times(&inv);
                for j in k + 1..n {
                    let v = m.get(i, j).minus(&f.times(m.get(k, j)));
                    m.set(i, j, v);
                }
                m.set(i, k, f);
            }
        }
        Some((m, perm, flip))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss–Jordan inverse. Exact scalars give an exact inverse; floats use
    /// partial pivoting and report singularity for pivots at rounding level.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square("inverse")?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let scale = self.norm_max();
        let negligible = |x: &T| {
            if T::EXACT {
                x.is_zero()
            } else {
                x.magnitude() <= f64::EPSILON * scale * n as f64
            }
        };
        let mut m = self.clone();
        let mut inv = Self::identity(n, &self.data[0]);
        for k in 0..n {
            let p = if T::EXACT {
                (k..n).find(|&i| !m.get(i, k).is_zero())
            } else {
                (k..n).max_by(|&a, &b| m.get(a, k).magnitude().total_cmp(&m.get(b, k).magnitude()))
            };
            let p = match p {
                Some(p) if !negligible(m.get(p, k)) => p,
                _ => return Err(Error::SingularMatrix),
            };
            m.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pinv = m.get(k, k).try_inv().ok_or(Error::SingularMatrix)?;
            for j in 0..n {
                m.set(k, j, m.get(k, j).times(&pinv));
                inv.set(k, j, inv.get(k, j).times(&pinv));
            }
            for i in 0..n {
                if i == k || m.get(i, k).is_zero() {
                    continue;
                }
                let f = m.get(i, k).clone();
                for j in 0..n {
                    m.set(i, j, m.get(i, j).minus(&f.times(m.get(k, j))));
                    inv.set(i, j, inv.get(i, j).minus(&f.times(inv.get(k, j))));
                }
            }
        }
        Ok(inv)
    }

    /// `S⁻¹ · self · S`.
    pub fn conjugate(&self, s: &Self) -> Result<Self> {
        s.inverse()?.try_mul(self)?.try_mul(s)
    }

    /// Characteristic polynomial `det(λI − A)` by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Result<Poly<T>> {
        self.require_square("char_poly")?;
        let n = self.rows;
        let Some(template) = self.data.first() else {
            return Ok(Poly::zero());
        };
        let one = template.one_like();
        let mut coeffs = vec![template.zero_like(); n + 1];
        coeffs[n] = one.clone();
        let id = Self::identity(n, template);
        let mut m = Self::zero(n, n, template);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(A M_k) / k
            m = self.try_mul(&m)?.try_add(&id.scale(&coeffs[n - k + 1]))?;
            let t = self.try_mul(&m)?.trace();
            let kk = template.from_int_like(k as i64);
            coeffs[n - k] = t.negated().try_div(&kk).expect("k is a nonzero integer");
        }
        Ok(Poly::new(coeffs))
    }

    /// Evaluate a polynomial at this matrix (Horner).
    pub fn eval_poly(&self, p: &Poly<T>) -> Result<Self> {
        self.require_square("eval_poly")?;
        let template = &self.data[0];
        let id = Self::identity(self.rows, template);
        let mut acc = Self::zero(self.rows, self.cols, template);
        for c in p.coeffs().iter().rev() {
            acc = acc.try_mul(self)?.try_add(&id.scale(c))?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form and pivot columns. In float mode a pivot
    /// counts as zero when `|pivot| ≤ tol · (largest initial column norm)`.
    pub fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        if self.data.is_empty() {
            return (m, pivots);
        }
        let thresh = if T::EXACT {
            0.0
        } else {
            let max_col = (0..self.cols)
                .map(|j| {
                    (0..self.rows)
                        .map(|i| self.get(i, j).magnitude().powi(2))
                        .sum::<f64>()
                        .sqrt()
                })
                .fold(0.0, f64::max);
            tol * max_col
        };
        let negligible = |x: &T| if T::EXACT { x.is_zero() } else { x.magnitude() <= thresh };
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let p = if T::EXACT {
                (r..self.rows).find(|&i| !m.get(i, c).is_zero())
            } else {
                (r..self.rows).max_by(|&a, &b| m.get(a, c).magnitude().total_cmp(&m.get(b, c).magnitude()))
            };
            let Some(p) = p.filter(|&p| !negligible(m.get(p, c))) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).try_inv().expect("pivot is nonzero");
            for j in 0..self.cols {
                m.set(r, j, m.get(r, j).times(&inv));
            }
            for i in 0..self.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..self.cols {
                    m.set(i, j, m.get(i, j).minus(&f.times(m.get(r, j))));
                }
            }
            pivots.push(c);
            r += 1;
        }
        if !T::EXACT {
            // Flush the rows below the rank to exact zeros.
            for i in r..self.rows {
                for j in 0..self.cols {
                    m.set(i, j, m.get(i, j).zero_like());
                }
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref(DEFAULT_RANK_TOL).1.len()
    }

    /// Basis of `{v : Av = 0}` as column vectors in echelon parametrisation
    /// (one free variable set to 1, the others to 0).
    pub fn nullspace(&self) -> Vec<Self> {
        self.nullspace_tol(DEFAULT_RANK_TOL)
    }

    pub fn nullspace_tol(&self, tol: f64) -> Vec<Self> {
        let Some(template) = self.data.first() else {
            return Vec::new();
        };
        let (r, pivots) = self.rref(tol);
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = Self::zero(self.cols, 1, template);
            v.set(f, 0, template.one_like());
            for (row, &pc) in pivots.iter().enumerate() {
                v.set(pc, 0, r.get(row, f).negated());
            }
            v
        })
        .collect()
    }
}
