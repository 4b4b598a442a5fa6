//! The plain-text matrix format:
//!
//! ```text
//! cyclotomic 3          (or `rational`, or `complex`)
//! 2 2
//! 1, w
//! 0, -w^2
//! ```
//!
//! Complex entries are written as `<re> <im>`. Several matrices may follow one
//! another in a single file; blank lines and `#` comments are ignored.

use std::fmt;

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, parse_scalar, CycNum, Rational, Ring};

/// A matrix read from text, tagged by its scalar kind.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Rational(Matrix<Rational>),
    Cyclotomic(u32, Matrix<CycNum>),
    Complex(Matrix<Complex64>),
}

impl AnyMatrix {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Rational(m) => m.shape(),
            AnyMatrix::Cyclotomic(_, m) => m.shape(),
            AnyMatrix::Complex(m) => m.shape(),
        }
    }

    /// Lift into Q(ζ_N). Complex matrices cannot be lifted.
    pub fn to_cyclotomic(&self, order: u32) -> Result<Matrix<CycNum>> {
        match self {
            AnyMatrix::Rational(m) => Ok(m.map(|r| CycNum::from_rational(order, r.clone()))),
            AnyMatrix::Cyclotomic(n, m) if *n == order => Ok(m.clone()),
            AnyMatrix::Cyclotomic(n, _) => Err(Error::OrderMismatch(*n, order)),
            AnyMatrix::Complex(_) => Err(Error::ScalarKindMismatch("complex matrix where an exact one is required".into())),
        }
    }

    pub fn to_complex(&self) -> Matrix<Complex64> {
        match self {
            AnyMatrix::Rational(m) => m.to_complex(),
            AnyMatrix::Cyclotomic(_, m) => m.to_complex(),
            AnyMatrix::Complex(m) => m.clone(),
        }
    }
}

impl fmt::Display for AnyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyMatrix::Rational(m) => f.write_str(&format_matrix(m)),
            AnyMatrix::Cyclotomic(_, m) => f.write_str(&format_matrix(m)),
            AnyMatrix::Complex(m) => f.write_str(&format_matrix(m)),
        }
    }
}

/// Serialise in the text format, header included, ending with a newline.
pub fn format_matrix<T: Ring>(m: &Matrix<T>) -> String {
    let header = match m.template().map(Ring::kind) {
        Some(kind) => kind.to_string(),
        None => "rational".to_string(),
    };
    let mut out = format!("{header}\n{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(Ring::file_repr).collect();
        out.push_str(&row.join(", "));
        out.push('\n');
    }
    out
}

/// Parse every matrix contained in `text`.
pub fn parse_matrices(text: &str) -> Result<Vec<AnyMatrix>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let mut out = Vec::new();
    while let Some((lno, header)) = lines.next() {
        let kind: Vec<&str> = header.split_whitespace().collect();
        let (dim_line, dims) = lines.next().ok_or(Error::Format {
            line: lno + 1,
            reason: "missing `<rows> <cols>` line".into(),
        })?;
        let dims: Vec<usize> = dims
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Format {
                line: dim_line,
                reason: "expected `<rows> <cols>`".into(),
            })?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Format {
                line: dim_line,
                reason: "expected exactly two dimensions".into(),
            });
        };
        let mut cells: Vec<(usize, Vec<String>)> = Vec::with_capacity(rows);
        for r in 0..rows {
            let (l, text) = lines.next().ok_or(Error::Format {
                line: dim_line + r + 1,
                reason: format!("expected {rows} rows"),
            })?;
            let entries: Vec<String> = text.split(',').map(|e| e.trim().to_string()).collect();
            if entries.len() != cols {
                return Err(Error::Format {
                    line: l,
                    reason: format!("expected {cols} entries, found {}", entries.len()),
                });
            }
            cells.push((l, entries));
        }
        let entry_err = |line: usize, e: Error| Error::Format { line, reason: e.to_string() };
        let matrix = match kind[..] {
            ["rational"] => {
                let mut data = Vec::with_capacity(rows * cols);
                for (l, row) in &cells {
                    for e in row {
                        data.push(parse_rational(e).map_err(|err| entry_err(*l, err))?);
                    }
                }
                AnyMatrix::Rational(Matrix::from_vec(rows, cols, data)?)
            }
            ["cyclotomic", n] => {
                let order: u32 = n.parse().ok().filter(|&n| n >= 1).ok_or(Error::Format {
                    line: lno,
                    reason: "cyclotomic order must be a positive integer".into(),
                })?;
                let mut data = Vec::with_capacity(rows * cols);
                for (l, row) in &cells {
                    for e in row {
                        data.push(parse_scalar(e, order).map_err(|err| entry_err(*l, err))?);
                    }
                }
                AnyMatrix::Cyclotomic(order, Matrix::from_vec(rows, cols, data)?)
            }
            ["complex"] => {
                let mut data = Vec::with_capacity(rows * cols);
                for (l, row) in &cells {
                    for e in row {
                        let parts: Vec<f64> = e
                            .split_whitespace()
                            .map(str::parse)
                            .collect::<std::result::Result<_, _>>()
                            .map_err(|_| Error::Format {
                                line: *l,
                                reason: format!("bad complex entry `{e}`"),
                            })?;
                        let [re, im] = parts[..] else {
                            return Err(Error::Format {
                                line: *l,
                                reason: format!("complex entry `{e}` must be `<re> <im>`"),
                            });
                        };
                        data.push(Complex64::new(re, im));
                    }
                }
                AnyMatrix::Complex(Matrix::from_vec(rows, cols, data)?)
            }
            _ => {
                return Err(Error::Format {
                    line: lno,
                    reason: "header must be `cyclotomic <N>`, `rational` or `complex`".into(),
                })
            }
        };
        out.push(matrix);
    }
    Ok(out)
}
