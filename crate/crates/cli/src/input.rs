//! Reading matrices and polynomials from files or inline arguments.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use quasicomm::matrix::{parse_matrices, AnyMatrix};
use quasicomm::{CycNum, Matrix};

use crate::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// All matrices in the given files, in order.
pub fn read_matrices(files: &[PathBuf]) -> Result<Vec<AnyMatrix>, CliError> {
    let mut out = Vec::new();
    for f in files {
        let text = read_file(f)?;
        let ms = parse_matrices(&text).map_err(|e| CliError::Usage(format!("{}: {e}", f.display())))?;
        out.extend(ms);
    }
    Ok(out)
}

/// Exactly `count` matrices from the files.
pub fn read_exactly(files: &[PathBuf], count: usize) -> Result<Vec<AnyMatrix>, CliError> {
    let ms = read_matrices(files)?;
    if ms.len() != count {
        return Err(CliError::Usage(format!("expected {count} matrices in the input, found {}", ms.len())));
    }
    Ok(ms)
}

/// Matrices brought to a common scalar kind.
pub enum Common {
    Exact(u32, Vec<Matrix<CycNum>>),
    Float(Vec<Matrix<Complex64>>),
}

/// Rational matrices are lifted into the cyclotomic field of the others (or
/// of `--omega`); any complex matrix makes the whole set complex.
pub fn unify(ms: &[AnyMatrix], order: Option<u32>) -> Result<Common, CliError> {
    if ms.iter().any(|m| matches!(m, AnyMatrix::Complex(_))) {
        return Ok(Common::Float(ms.iter().map(AnyMatrix::to_complex).collect()));
    }
    let mut field = order;
    for m in ms {
        if let AnyMatrix::Cyclotomic(n, _) = m {
            match field {
                None => field = Some(*n),
                Some(f) if f == *n => {}
                Some(f) => {
                    return Err(CliError::Usage(format!(
                        "matrices over Q(ζ_{n}) and Q(ζ_{f}) cannot be combined"
                    )))
                }
            }
        }
    }
    let order = field.unwrap_or(1);
    let lifted = ms.iter().map(|m| m.to_cyclotomic(order)).collect::<Result<Vec<_>, _>>()?;
    Ok(Common::Exact(order, lifted))
}

/// Inline text or `--file`, but not both.
pub fn inline_or_file(inline: Option<&str>, file: Option<&Path>, what: &str) -> Result<String, CliError> {
    match (inline, file) {
        (Some(_), Some(_)) => Err(CliError::Usage(format!("give the {what} inline or with --file, not both"))),
        (Some(t), None) => Ok(t.to_string()),
        (None, Some(f)) => Ok(read_file(f)?.trim().to_string()),
        (None, None) => Err(CliError::Usage(format!("no {what} given"))),
    }
}
