//! Dense row-major matrices over any [`Ring`], with exact linear algebra over
//! [`Field`]s and a few floating-point helpers for complex matrices.

mod float;
mod io;
mod linalg;

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

pub use io::{format_matrix, parse_matrices, AnyMatrix};

use crate::error::{Error, Result};
use crate::scalar::{ConstScalar, Field, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    /// Build from row-major data; fails when the length is wrong or entries
    /// live in different scalar rings.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        if let Some(first) = data.first() {
            if let Some(bad) = data.iter().find(|x| !first.compatible(x)) {
                return Err(Error::ScalarKindMismatch(format!("{} vs {}", first.kind(), bad.kind())));
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (r, c),
                right: (1, bad.len()),
            });
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// The zero matrix whose entries live in the same ring as `template`.
    pub fn zero(rows: usize, cols: usize, template: &T) -> Self {
        Self {
            rows,
            cols,
            data: vec![template.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, template: &T) -> Self {
        let (zero, one) = (template.zero_like(), template.one_like());
        Self::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    /// Diagonal matrix; `entries` must be nonempty.
    pub fn diag(entries: &[T]) -> Self {
        let zero = entries[0].zero_like();
        Self::from_fn(entries.len(), entries.len(), |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                zero.clone()
            }
        })
    }

    /// Block-diagonal assembly; at least one block must be nonempty.
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let template = blocks
            .iter()
            .find_map(|b| b.data.first())
            .expect("block_diag needs a nonempty block")
            .clone();
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(n, m, &template);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    /// A representative entry, used to build constants of the right kind.
    pub fn template(&self) -> Option<&T> {
        self.data.first()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Self {
        Self::from_fn(self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        self.check_kind(rhs)?;
        if self.rows != rhs.rows {
            return Err(self.mismatch("hstack", rhs));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    fn mismatch(&self, op: &'static str, rhs: &Self) -> Error {
        Error::DimensionMismatch {
            op,
            left: self.shape(),
            right: rhs.shape(),
        }
    }

    fn check_kind(&self, rhs: &Self) -> Result<()> {
        match (self.data.first(), rhs.data.first()) {
            (Some(a), Some(b)) if !a.compatible(b) => {
                Err(Error::ScalarKindMismatch(format!("{} vs {}", a.kind(), b.kind())))
            }
            _ => Ok(()),
        }
    }

    fn zip(&self, rhs: &Self, op: &'static str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(self.mismatch(op, rhs));
        }
        self.check_kind(rhs)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, "add", T::plus)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, "sub", T::minus)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(self.mismatch("mul", rhs));
        }
        self.check_kind(rhs)?;
        let template = match self.data.first().or(rhs.data.first()) {
            Some(t) => t.clone(),
            None => return Ok(Self { rows: self.rows, cols: rhs.cols, data: Vec::new() }),
        };
        let mut out = Self::zero(self.rows, rhs.cols, &template);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = out.data[idx].plus(&a.times(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn negated(&self) -> Self {
        self.map(Ring::negated)
    }

    /// Non-negative power by repeated squaring; `A^0 = I` even for singular `A`.
    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(self.mismatch("pow", self));
        }
        let Some(template) = self.data.first() else {
            return Ok(self.clone());
        };
        let mut acc = Self::identity(self.rows, template);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Sum of the diagonal; square matrices only.
    pub fn trace(&self) -> T {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows {
            acc = acc.plus(self.get(i, i));
        }
        acc
    }

    /// Kronecker product: block `(i, j)` is `a_ij * rhs`.
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        self.check_kind(rhs)?;
        let (p, q) = rhs.shape();
        Ok(Self::from_fn(self.rows * p, self.cols * q, |r, c| {
            self.get(r / p, c / q).times(rhs.get(r % p, c % q))
        }))
    }
}

impl<T: ConstScalar> Matrix<T> {
    pub fn eye(n: usize) -> Self {
        Self::identity(n, &T::one())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::zero(rows, cols, &T::zero())
    }
}

impl<T: Field> Matrix<T> {
    /// Entrywise conversion to complex floating point.
    pub fn to_complex(&self) -> Matrix<num_complex::Complex64> {
        self.map(Field::to_complex)
    }

    /// Largest entry modulus.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(Field::magnitude).fold(0.0, f64::max)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<T: Ring> $tr<&Matrix<T>> for &Matrix<T> {
            type Output = Matrix<T>;
            fn $method(self, rhs: &Matrix<T>) -> Matrix<T> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<T: Ring> $tr<Matrix<T>> for Matrix<T> {
            type Output = Matrix<T>;
            fn $method(self, rhs: Matrix<T>) -> Matrix<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.negated()
    }
}
