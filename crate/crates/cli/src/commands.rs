use std::path::{Path, PathBuf};

use num_complex::Complex64;
use quasicomm::matrix::format_matrix;
use quasicomm::ncpoly::{expand_power, parse_ncpoly, parse_ncpoly_generic};
use quasicomm::qbinom::{potter_coefficients, QBinomTable};
use quasicomm::scalar::{parse_rational, parse_scalar, Rational};
use quasicomm::spectral::{carollian_check, chain_partition, eigenvalues, format_complex, root_order, DEFAULT_CLUSTER_TOL};
use quasicomm::structure::gallery::GalleryParams;
use quasicomm::structure::{self, check_potter, detect_omega, OmegaDetection, QuasiPair};
use quasicomm::{omega, Field, GenPoly, Matrix};

use crate::input::{inline_or_file, read_exactly, unify, Common};
use crate::{CliError, Status};

fn show<T: Field>(x: &T) -> String {
    if T::EXACT {
        x.to_string()
    } else {
        format_complex(x.to_complex())
    }
}

pub fn qbinom(q: usize, k: Option<i64>, order: Option<u32>) -> Result<Status, CliError> {
    let table = match order {
        Some(n) => potter_coefficients(q, n),
        None => QBinomTable::generic(q),
    };
    match k {
        Some(k) if k < 0 || k as usize > q => println!("0"),
        Some(k) => println!("{}", table.entries()[k as usize]),
        None => print!("{table}"),
    }
    Ok(Status::Ok)
}

pub fn expand(q: u32, order: Option<u32>) -> Result<Status, CliError> {
    match order {
        Some(n) => println!("{}", expand_power(q, &omega(n))),
        None => println!("{}", expand_power(q, &GenPoly::w())),
    }
    Ok(Status::Ok)
}

pub fn normalform(poly: Option<&str>, file: Option<&Path>, order: Option<u32>) -> Result<Status, CliError> {
    let text = inline_or_file(poly, file, "polynomial")?;
    match order {
        Some(n) => println!("{}", parse_ncpoly(&text, n)?.normal_order(&omega(n))),
        None => println!("{}", parse_ncpoly_generic(&text)?.normal_order(&GenPoly::w())),
    }
    Ok(Status::Ok)
}

pub fn member(poly: Option<&str>, file: Option<&Path>, order: Option<u32>) -> Result<Status, CliError> {
    let text = inline_or_file(poly, file, "polynomial")?;
    let is_member = match order {
        Some(n) => parse_ncpoly(&text, n)?.ideal_member(&omega(n)),
        None => parse_ncpoly_generic(&text)?.ideal_member(&GenPoly::w()),
    };
    println!("member: {is_member}");
    Ok(is_member.into())
}

fn read_pair(files: &[PathBuf], order: Option<u32>) -> Result<Common, CliError> {
    let ms = match files.len() {
        1 => read_exactly(files, 2)?,
        _ => {
            let mut a = read_exactly(&files[..1], 1)?;
            a.extend(read_exactly(&files[1..], 1)?);
            a
        }
    };
    unify(&ms, order)
}

/// The detected ω, or the failure already reported on stdout.
fn detected<T: Field>(a: &Matrix<T>, b: &Matrix<T>, tol: f64) -> Result<Result<T, Status>, CliError> {
    match detect_omega(a, b, tol)? {
        OmegaDetection::Determined(w) => Ok(Ok(w)),
        OmegaDetection::Unconstrained => {
            println!("AB = BA = 0: every ω works; nothing to decompose");
            Ok(Err(Status::PropertyFailed))
        }
        OmegaDetection::NotQuasi(v) => {
            println!("not quasi-commutative: {v}");
            Ok(Err(Status::PropertyFailed))
        }
    }
}

fn check_generic<T: Field>(a: &Matrix<T>, b: &Matrix<T>, tol: f64) -> Result<Status, CliError> {
    match detect_omega(a, b, tol)? {
        OmegaDetection::Determined(w) => {
            println!("quasi-commutative: AB = ω·BA with ω = {}", show(&w));
            match root_order(w.to_complex(), 1e-9) {
                Some(k) => println!("ω is a primitive root of unity of order {k}"),
                None => println!("ω is not a root of unity"),
            }
            Ok(Status::Ok)
        }
        OmegaDetection::Unconstrained => {
            println!("quasi-commutative: AB = BA = 0, every ω works");
            Ok(Status::Ok)
        }
        OmegaDetection::NotQuasi(v) => {
            println!("not quasi-commutative: {v}");
            Ok(Status::PropertyFailed)
        }
    }
}

pub fn check(files: &[PathBuf], order: Option<u32>, tol: f64) -> Result<Status, CliError> {
    match read_pair(files, order)? {
        Common::Exact(_, m) => check_generic(&m[0], &m[1], tol),
        Common::Float(m) => check_generic(&m[0], &m[1], tol),
    }
}

fn parse_samples(text: &str) -> Result<Vec<(Rational, Rational)>, CliError> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').collect();
            match parts[..] {
                [s, t] => Ok((parse_rational(s.trim())?, parse_rational(t.trim())?)),
                _ => Err(CliError::Usage(format!("sample `{pair}` is not of the form s,t"))),
            }
        })
        .collect()
}

fn potter_generic<T: Field>(a: &Matrix<T>, b: &Matrix<T>, q: u32, samples: &[(Rational, Rational)], tol: f64) -> Result<Status, CliError> {
    let one = a.template().expect("nonempty").one_like();
    for (s, t) in samples {
        let point = [(one.from_rational_like(s), one.from_rational_like(t))];
        if !check_potter(a, b, q, &point, tol)? {
            println!("(sA + tB)^{q} ≠ (sA)^{q} + (tB)^{q} at s = {s}, t = {t}");
            return Ok(Status::PropertyFailed);
        }
    }
    println!("(sA + tB)^{q} = (sA)^{q} + (tB)^{q} at all {} sample points", samples.len());
    Ok(Status::Ok)
}

pub fn potter(files: &[PathBuf], order: Option<u32>, tol: f64, q: u32, samples: &str) -> Result<Status, CliError> {
    let samples = parse_samples(samples)?;
    match read_pair(files, order)? {
        Common::Exact(_, m) => potter_generic(&m[0], &m[1], q, &samples, tol),
        Common::Float(m) => potter_generic(&m[0], &m[1], q, &samples, tol),
    }
}

fn decompose_generic<T: Field>(a: &Matrix<T>, b: &Matrix<T>, tol: f64) -> Result<Status, CliError> {
    let w = match detected(a, b, tol)? {
        Ok(w) => w,
        Err(status) => return Ok(status),
    };
    let pair = QuasiPair::new(a.clone(), b.clone(), w, tol)?;
    print!("{}", structure::decompose(&pair, tol)?);
    Ok(Status::Ok)
}

pub fn decompose(files: &[PathBuf], order: Option<u32>, tol: f64) -> Result<Status, CliError> {
    match read_pair(files, order)? {
        Common::Exact(_, m) => decompose_generic(&m[0], &m[1], tol),
        Common::Float(m) => decompose_generic(&m[0], &m[1], tol),
    }
}

fn reduce_generic<T: Field>(a: &Matrix<T>, b: &Matrix<T>, tol: f64) -> Result<Status, CliError> {
    let w = match detected(a, b, tol)? {
        Ok(w) => w,
        Err(status) => return Ok(status),
    };
    let pair = QuasiPair::new(a.clone(), b.clone(), w, tol)?;
    let f = structure::kurosaki_reduce(&pair, tol)?;
    println!("omega {}", format_complex(pair.omega.to_complex()));
    println!("k {}", f.k);
    println!("residual {:.3e}", f.residual);
    println!("# a");
    print!("{}", format_matrix(&f.a));
    println!("# b");
    print!("{}", format_matrix(&f.b));
    println!("# S");
    print!("{}", format_matrix(&f.s));
    Ok(Status::Ok)
}

pub fn reduce(files: &[PathBuf], order: Option<u32>, tol: f64) -> Result<Status, CliError> {
    match read_pair(files, order)? {
        Common::Exact(_, m) => reduce_generic(&m[0], &m[1], tol),
        Common::Float(m) => reduce_generic(&m[0], &m[1], tol),
    }
}

pub fn commutant(file: &Path, alpha: &str, order: Option<u32>) -> Result<Status, CliError> {
    let ms = read_exactly(&[file.to_path_buf()], 1)?;
    let (order, a) = match unify(&ms, order)? {
        Common::Exact(n, mut m) => (n, m.remove(0)),
        Common::Float(_) => return Err(CliError::Usage("the commutant is computed exactly; give a rational or cyclotomic matrix".into())),
    };
    let alpha = parse_scalar(alpha, order)?;
    let basis = structure::commutant_basis(&a, &alpha)?;
    println!("dimension {}", basis.len());
    for (i, x) in basis.iter().enumerate() {
        println!("# X{}", i + 1);
        print!("{}", format_matrix(x));
    }
    Ok(Status::Ok)
}

pub fn spectrum(file: &Path, order: Option<u32>, carollian: bool, tol: f64) -> Result<Status, CliError> {
    let ms = read_exactly(&[file.to_path_buf()], 1)?;
    let spec = match unify(&ms, None)? {
        Common::Exact(_, m) => eigenvalues(&m[0], DEFAULT_CLUSTER_TOL)?,
        Common::Float(m) => eigenvalues(&m[0], DEFAULT_CLUSTER_TOL)?,
    };
    print!("{spec}");
    let Some(n) = order else { return Ok(Status::Ok) };
    let w: Complex64 = omega(n).to_complex();
    if carollian {
        return match carollian_check(&spec, w, tol) {
            Ok(p) => {
                println!("Carollian: yes");
                print!("{p}");
                Ok(Status::Ok)
            }
            Err(f) => {
                println!("Carollian: no, {f}");
                Ok(Status::PropertyFailed)
            }
        };
    }
    print!("{}", chain_partition(&spec, w, tol));
    Ok(Status::Ok)
}

pub fn wielandt(q: u32) -> Result<Status, CliError> {
    if q == 0 {
        return Err(CliError::Usage("q must be at least 1".into()));
    }
    let p = structure::wielandt_pair(q);
    print!("{}", format_matrix(&p.a));
    print!("{}", format_matrix(&p.b));
    eprintln!("omega = {}", p.omega);
    Ok(Status::Ok)
}

pub fn embed(files: &[PathBuf], k: usize) -> Result<Status, CliError> {
    if k == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    let m = match read_pair(files, Some(k as u32))? {
        Common::Exact(_, m) => m,
        Common::Float(_) => return Err(CliError::Usage("the embedding is exact; give rational or cyclotomic matrices".into())),
    };
    let p = structure::embed_commuting_pair(&m[0], &m[1], k, &omega(k as u32))?;
    print!("{}", format_matrix(&p.a));
    print!("{}", format_matrix(&p.b));
    eprintln!("omega = {}", p.omega);
    Ok(Status::Ok)
}

pub fn gallery(example: &str, lambda: Option<&str>, alpha: Option<&str>, x: Option<&str>, omega_power: u32) -> Result<Status, CliError> {
    let mut params = GalleryParams {
        omega_power,
        ..GalleryParams::default()
    };
    if let Some(l) = lambda {
        params.lambda = parse_scalar(l, 3)?;
    }
    if let Some(a) = alpha {
        params.alpha = parse_rational(a)?;
    }
    if let Some(x) = x {
        let vals = x.split(',').map(|v| parse_rational(v.trim())).collect::<Result<Vec<_>, _>>()?;
        params.x = vals
            .try_into()
            .map_err(|_| CliError::Usage("--x takes exactly three values x1,x2,x3".into()))?;
    }
    let report = structure::gallery::gallery(example, &params)?;
    println!("{report}");
    Ok(report.passed().into())
}
