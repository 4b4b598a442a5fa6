//! Worked examples: the Example 5 commutants and the counterexamples to the
//! converse of Potter's identity. Every check is exact.

use std::fmt;

use super::{commutant_basis, detect_omega, OmegaDetection};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{int, omega, rat, CycNum, Field, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalleryReport {
    pub example: String,
    /// Named matrices, already rendered.
    pub matrices: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl GalleryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn show<T: Ring>(&mut self, name: &str, m: &Matrix<T>) {
        self.matrices.push((name.to_string(), m.to_string()));
    }
}

impl fmt::Display for GalleryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "example {}", self.example)?;
        for (name, m) in &self.matrices {
            writeln!(f, "{name} =")?;
            writeln!(f, "{m}")?;
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "[{mark}] {}", c.name)?;
            } else {
                writeln!(f, "[{mark}] {}: {}", c.name, c.detail)?;
            }
        }
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Parameters; unused fields are ignored by examples that do not need them.
#[derive(Debug, Clone)]
pub struct GalleryParams {
    /// Example 5: eigenvalue λ; Example 11: the parameter λ (in Q(ζ₃)).
    pub lambda: CycNum,
    /// Example 5: the commutation factor α.
    pub alpha: Rational,
    /// Example 13: the strictly upper entries of B.
    pub x: [Rational; 3],
    /// Examples 13, 14: ω = ζ₃^omega_power, with power 1 or 2.
    pub omega_power: u32,
}

impl Default for GalleryParams {
    fn default() -> Self {
        Self {
            lambda: CycNum::from_rational(3, int(2)),
            alpha: int(3),
            x: [int(1), int(1), int(1)],
            omega_power: 1,
        }
    }
}

pub const EXAMPLES: [&str; 6] = ["5", "11", "12a", "12b", "13", "14"];

pub fn gallery(example: &str, params: &GalleryParams) -> Result<GalleryReport> {
    match example {
        "5" => example_5(params.lambda.as_rational().cloned(), &params.alpha),
        "11" => example_11(&params.lambda),
        "12a" => example_12(true),
        "12b" => example_12(false),
        "13" => example_13(&params.x, params.omega_power),
        "14" => example_14(params.omega_power),
        other => Err(Error::ParamOutOfDomain(format!(
            "unknown example `{other}` (expected one of {})",
            EXAMPLES.join(", ")
        ))),
    }
}

fn report(example: &str) -> GalleryReport {
    GalleryReport {
        example: example.to_string(),
        matrices: Vec::new(),
        checks: Vec::new(),
    }
}

fn cyc_matrix(rows: Vec<Vec<CycNum>>) -> Matrix<CycNum> {
    Matrix::from_rows(rows).expect("rectangular literal")
}

fn lift(w: &CycNum, rows: &[&[i64]]) -> Matrix<CycNum> {
    cyc_matrix(rows.iter().map(|r| r.iter().map(|&x| w.from_int_like(x)).collect()).collect())
}

/// Outcome of the ω-detection as a failed-converse check.
fn not_quasi<T: Field>(rep: &mut GalleryReport, a: &Matrix<T>, b: &Matrix<T>) -> Result<()> {
    let detail = match detect_omega(a, b, 0.0)? {
        OmegaDetection::NotQuasi(v) => (true, v.to_string()),
        OmegaDetection::Determined(w) => (false, format!("AB = ω·BA with ω = {w}")),
        OmegaDetection::Unconstrained => (false, "AB = BA = 0".to_string()),
    };
    rep.push("not quasi-commutative (no scalar ω with AB = ωBA)", detail.0, detail.1);
    Ok(())
}

fn one_line<T: Ring>(m: &Matrix<T>) -> String {
    m.to_string().replace('\n', " ")
}

/// Entry-for-entry comparison with a displayed product.
fn product_check(rep: &mut GalleryReport, name: &str, computed: &Matrix<CycNum>, shown: &Matrix<CycNum>) {
    let detail = if computed == shown {
        one_line(computed)
    } else {
        format!("computed {}, displayed {}", one_line(computed), one_line(shown))
    };
    rep.push(format!("{name} matches the displayed product"), computed == shown, detail);
}

fn cube_identity(a: &Matrix<CycNum>, b: &Matrix<CycNum>, samples: &[(Rational, Rational)]) -> Result<(bool, String)> {
    let w = a.template().expect("nonempty").clone();
    for (s, t) in samples {
        let sa = a.scale(&w.from_rational_like(s));
        let tb = b.scale(&w.from_rational_like(t));
        let lhs = sa.try_add(&tb)?.pow(3)?;
        let rhs = sa.pow(3)?.try_add(&tb.pow(3)?)?;
        if lhs != rhs {
            return Ok((false, format!("fails at s = {s}, t = {t}")));
        }
    }
    let shown: Vec<String> = samples.iter().map(|(s, t)| format!("({s}, {t})")).collect();
    Ok((true, format!("(s, t) ∈ {{{}}}", shown.join(", "))))
}

/// `X` with `AX = αXA` for the 5×5 matrix `J₃(λ) ⊕ J₂(αλ)`.
pub fn example_5_matrix(lambda: &Rational, alpha: &Rational) -> Matrix<Rational> {
    let al = alpha * lambda;
    Matrix::from_fn(5, 5, |i, j| {
        if i == j {
            if i < 3 {
                lambda.clone()
            } else {
                al.clone()
            }
        } else if j == i + 1 && i != 2 {
            int(1)
        } else {
            int(0)
        }
    })
}

/// The displayed solution pattern: one matrix per free parameter, 0-indexed
/// `(row, col, coefficient)` entries.
fn example_5_pattern(lambda_zero: bool, alpha: &Rational) -> Vec<(&'static str, Vec<(usize, usize, Rational)>)> {
    let a = alpha.clone();
    let a2 = alpha * alpha;
    let mut p = vec![
        ("x1", vec![(3, 1, int(1)), (4, 2, a.clone())]),
        ("x2", vec![(3, 2, int(1))]),
    ];
    if lambda_zero || *alpha == int(-1) {
        p.push(("y1", vec![(0, 3, int(1)), (1, 4, a.clone())]));
        p.push(("y2", vec![(0, 4, int(1))]));
    }
    if lambda_zero {
        p.push(("u1", vec![(0, 0, int(1)), (1, 1, a.clone()), (2, 2, a2)]));
        p.push(("u2", vec![(0, 1, int(1)), (1, 2, a.clone())]));
        p.push(("u3", vec![(0, 2, int(1))]));
        p.push(("v1", vec![(3, 3, int(1)), (4, 4, a)]));
        p.push(("v2", vec![(3, 4, int(1))]));
    }
    p
}

fn example_5(lambda: Option<Rational>, alpha: &Rational) -> Result<GalleryReport> {
    let lambda = lambda.ok_or_else(|| Error::ParamOutOfDomain("Example 5 needs a rational λ".into()))?;
    if *alpha == int(0) {
        return Err(Error::ParamOutOfDomain("α must be nonzero".into()));
    }
    let lambda_zero = lambda == int(0);
    if !lambda_zero && *alpha == int(1) {
        return Err(Error::ParamOutOfDomain("α = 1 with λ ≠ 0 merges the two Jordan blocks' eigenvalues".into()));
    }
    let mut rep = report("5");
    let a = example_5_matrix(&lambda, alpha);
    rep.show("A", &a);
    let basis = commutant_basis(&a, alpha)?;
    let pattern = example_5_pattern(lambda_zero, alpha);
    let names: Vec<&str> = pattern.iter().map(|p| p.0).collect();
    rep.push(
        "solution space dimension",
        basis.len() == pattern.len(),
        format!("{} (free parameters {})", basis.len(), names.join(", ")),
    );
    let all_solve = basis.iter().all(|x| &a * x == x.scale(alpha) * a.clone());
    rep.push("every basis element satisfies AX = αXA", all_solve, "");
    // The displayed family spans the same space: each pattern matrix solves
    // the equation, and they are independent.
    let pattern_mats: Vec<Matrix<Rational>> = pattern
        .iter()
        .map(|(_, entries)| {
            let mut m = Matrix::zeros(5, 5);
            for (i, j, c) in entries {
                m.set(*i, *j, c.clone());
            }
            m
        })
        .collect();
    let pattern_solves = pattern_mats.iter().all(|x| &a * x == x.scale(alpha) * a.clone());
    let stacked = Matrix::from_fn(25, pattern_mats.len(), |r, c| pattern_mats[c].get(r / 5, r % 5).clone());
    let independent = stacked.rank() == pattern_mats.len();
    rep.push(
        "displayed form solves AX = αXA with independent parameters",
        pattern_solves && independent,
        "",
    );
    let mut general = vec![vec![String::from("0"); 5]; 5];
    for (name, entries) in &pattern {
        for (i, j, c) in entries {
            let term = if *c == int(1) {
                name.to_string()
            } else if *c == int(-1) {
                format!("-{name}")
            } else {
                format!("{c}·{name}")
            };
            let cell = &mut general[*i][*j];
            *cell = if cell == "0" { term } else { format!("{cell} + {term}") };
        }
    }
    let general: Vec<String> = general.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    rep.matrices.push(("X".into(), general.join("\n")));
    Ok(rep)
}

fn example_11(lambda: &CycNum) -> Result<GalleryReport> {
    let w = omega(3);
    let lambda = if lambda.order() == 3 {
        lambda.clone()
    } else if let Some(r) = lambda.as_rational() {
        CycNum::from_rational(3, r.clone())
    } else {
        return Err(Error::ParamOutOfDomain("λ must lie in Q(ζ₃)".into()));
    };
    let one = w.one_like();
    for (bad, what) in [
        (w.zero_like(), "0"),
        (one.negated(), "−1"),
        (w.clone(), "a primitive cube root of unity"),
        (w.times(&w), "a primitive cube root of unity"),
    ] {
        if lambda == bad {
            return Err(Error::ParamOutOfDomain(format!("λ must not be {what}")));
        }
    }
    let mut rep = report("11");
    let inv = |x: &CycNum| x.try_inv().expect("nonzero by domain check");
    let lp1 = lambda.plus(&one);
    let e2 = lp1.times(&inv(&lambda)).negated();
    let e3 = inv(&lp1).negated();
    let z = w.zero_like();
    let a = cyc_matrix(vec![
        vec![z.clone(), z.clone(), inv(&lambda)],
        vec![one.clone(), z.clone(), z.clone()],
        vec![z.clone(), e2.clone(), z.clone()],
    ]);
    let b = lift(&w, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
    let e = Matrix::diag(&[lambda.clone(), e2.clone(), e3.clone()]);
    rep.show("A", &a);
    rep.show("B", &b);
    rep.show("E", &e);
    let ab = a.try_mul(&b)?;
    let ba = b.try_mul(&a)?;
    rep.push("BA = E·AB", ba == e.try_mul(&ab)?, "");
    let id = Matrix::identity(3, &w);
    let e_inv_plus = e.inverse()?.try_add(&id)?;
    rep.push("A(E⁻¹ + I) = −EA", a.try_mul(&e_inv_plus)? == e.try_mul(&a)?.negated(), "");
    rep.push("(E⁻¹ + I)B = −BE", e_inv_plus.try_mul(&b)? == b.try_mul(&e)?.negated(), "");
    let samples: Vec<(Rational, Rational)> = [int(1), int(2), int(-1), rat(1, 2), rat(-7, 3)]
        .into_iter()
        .map(|t| (int(1), t))
        .collect();
    let (ok, detail) = cube_identity(&a, &b, &samples)?;
    rep.push("(A + tB)³ = A³ + t³B³", ok, detail);
    let distinct = lambda != e2 && lambda != e3 && e2 != e3;
    rep.push(
        "E has three distinct eigenvalues",
        distinct,
        format!("{lambda}, {e2}, {e3}"),
    );
    not_quasi(&mut rep, &a, &b)?;
    Ok(rep)
}

fn example_12(first: bool) -> Result<GalleryReport> {
    let w = CycNum::one(1);
    let (name, a, b, ab_shown, ba_shown) = if first {
        (
            "12a",
            lift(&w, &[&[1, 1], &[0, 2]]),
            lift(&w, &[&[-1, 0], &[7, -2]]),
            lift(&w, &[&[6, -2], &[14, -4]]),
            lift(&w, &[&[-1, -1], &[7, -4]]),
        )
    } else {
        (
            "12b",
            lift(&w, &[&[0, 1], &[0, 2]]),
            lift(&w, &[&[-2, 2], &[0, 0]]),
            lift(&w, &[&[0, 0], &[0, 0]]),
            lift(&w, &[&[0, 2], &[0, 0]]),
        )
    };
    let mut rep = report(name);
    rep.show("A", &a);
    rep.show("B", &b);
    let ab = a.try_mul(&b)?;
    let ba = b.try_mul(&a)?;
    product_check(&mut rep, "AB", &ab, &ab_shown);
    product_check(&mut rep, "BA", &ba, &ba_shown);
    let (ok, detail) = cube_identity(&a, &b, &[(int(1), int(1))])?;
    rep.push("(A + B)³ = A³ + B³", ok, detail);
    not_quasi(&mut rep, &a, &b)?;
    Ok(rep)
}

fn primitive_cube_root(power: u32) -> Result<CycNum> {
    match power {
        1 | 2 => Ok(omega(3).pow_u(power as u64)),
        _ => Err(Error::ParamOutOfDomain(format!("ω must be ζ₃ or ζ₃², got power {power}"))),
    }
}

fn example_13(x: &[Rational; 3], omega_power: u32) -> Result<GalleryReport> {
    let w = primitive_cube_root(omega_power)?;
    if x.iter().any(|v| *v == int(0)) {
        return Err(Error::ParamOutOfDomain("x₁, x₂, x₃ must be nonzero".into()));
    }
    let mut rep = report("13");
    let z = w.zero_like();
    let c = |r: &Rational| w.from_rational_like(r);
    let w2 = w.times(&w);
    let a = Matrix::diag(&[w.one_like(), w.clone(), w2.clone()]);
    let b = cyc_matrix(vec![
        vec![z.clone(), c(&x[0]), c(&x[1])],
        vec![z.clone(), z.clone(), c(&x[2])],
        vec![z.clone(), z.clone(), z.clone()],
    ]);
    rep.show("A", &a);
    rep.show("B", &b);
    let id = Matrix::identity(3, &w);
    rep.push("A³ = I", a.pow(3)? == id, "");
    rep.push("B³ = 0", b.pow(3)?.is_zero(), "");
    let ts = [int(1), int(-2), rat(1, 3), rat(5, 2)];
    let mut all = true;
    for t in &ts {
        all &= a.try_add(&b.scale(&c(t)))?.pow(3)? == id;
    }
    let shown: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
    rep.push("(A + tB)³ = I", all, format!("t ∈ {{{}}}", shown.join(", ")));
    let ab_shown = cyc_matrix(vec![
        vec![z.clone(), w.times(&c(&x[0])), w2.times(&c(&x[1]))],
        vec![z.clone(), z.clone(), w2.times(&c(&x[2]))],
        vec![z.clone(), z.clone(), z.clone()],
    ]);
    let ba_shown = cyc_matrix(vec![
        vec![z.clone(), c(&x[0]), c(&x[1])],
        vec![z.clone(), z.clone(), w.times(&c(&x[2]))],
        vec![z.clone(), z.clone(), z.clone()],
    ]);
    let ab = a.try_mul(&b)?;
    let ba = b.try_mul(&a)?;
    product_check(&mut rep, "AB", &ab, &ab_shown);
    product_check(&mut rep, "BA", &ba, &ba_shown);
    rep.push(
        "displayed products agree with the labels AB and BA exchanged",
        ab == ba_shown && ba == ab_shown,
        "",
    );
    not_quasi(&mut rep, &a, &b)?;
    Ok(rep)
}

/// `A = diag(A₁, ωA₁, ω²A₁)` and `B` with `B₁` on the block superdiagonal and
/// in the bottom-left block.
pub fn example_14_pair(a1: &Matrix<CycNum>, b1: &Matrix<CycNum>, w: &CycNum) -> (Matrix<CycNum>, Matrix<CycNum>) {
    let zero = Matrix::zero(2, 2, w);
    let w2 = w.times(w);
    let a = Matrix::block_diag(&[a1, &a1.scale(w), &a1.scale(&w2)]);
    let mut b = Matrix::block_diag(&[&zero, &zero, &zero]);
    b.set_block(0, 2, b1);
    b.set_block(2, 4, b1);
    b.set_block(4, 0, b1);
    (a, b)
}

/// The 2×2 blocks as printed: `A₁ = [[1, 1 + ω/(1 − ω²)], [0, ω²]]`,
/// `B₁ = [[1, 1], [0, ω²]]`.
pub fn example_14_blocks(w: &CycNum) -> (Matrix<CycNum>, Matrix<CycNum>) {
    let one = w.one_like();
    let w2 = w.times(w);
    let corner = one.plus(&w.try_div(&one.minus(&w2)).expect("1 − ω² ≠ 0"));
    let a1 = cyc_matrix(vec![vec![one.clone(), corner], vec![w.zero_like(), w2.clone()]]);
    let b1 = cyc_matrix(vec![vec![one.clone(), one.clone()], vec![w.zero_like(), w2]]);
    (a1, b1)
}

fn example_14(omega_power: u32) -> Result<GalleryReport> {
    let w = primitive_cube_root(omega_power)?;
    let mut rep = report("14");
    let (a1, b1) = example_14_blocks(&w);
    let (a, b) = example_14_pair(&a1, &b1, &w);
    rep.show("A1", &a1);
    rep.show("B1", &b1);
    let samples = [(int(1), int(1)), (int(2), int(-1)), (rat(1, 2), int(3))];
    let (ok, detail) = cube_identity(&a, &b, &samples)?;
    rep.push("(sA + tB)³ = (sA)³ + (tB)³", ok, detail);
    let j = lift(&w, &[&[1, 1], &[0, 1]]);
    let a1b1 = a1.try_mul(&b1)?;
    let b1a1 = b1.try_mul(&a1)?;
    rep.push("B1·A1 = J·A1·B1 with J = [[1, 1], [0, 1]]", b1a1 == j.try_mul(&a1b1)?, "");
    rep.push("A1 and B1 do not commute", a1b1 != b1a1, "");
    not_quasi(&mut rep, &a, &b)?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_5_dimensions() {
        let p = |l: i64, a: i64| gallery("5", &GalleryParams {
            lambda: CycNum::from_rational(3, int(l)),
            alpha: int(a),
            ..Default::default()
        });
        for (l, a, dim) in [(2, 3, "2 "), (2, -1, "4 "), (0, 3, "9 ")] {
            let r = p(l, a).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.check("solution space dimension").unwrap().detail.starts_with(dim));
        }
        assert!(matches!(p(2, 0), Err(Error::ParamOutOfDomain(_))));
        assert!(matches!(p(2, 1), Err(Error::ParamOutOfDomain(_))));
    }

    #[test]
    fn example_11_default_and_domain() {
        let r = gallery("11", &GalleryParams::default()).unwrap();
        assert!(r.passed(), "{r}");
        let bad = GalleryParams {
            lambda: CycNum::from_rational(3, int(-1)),
            ..Default::default()
        };
        assert!(matches!(gallery("11", &bad), Err(Error::ParamOutOfDomain(_))));
        let cube = GalleryParams {
            lambda: omega(3),
            ..Default::default()
        };
        assert!(gallery("11", &cube).is_err());
    }

    #[test]
    fn examples_12_13() {
        // The displayed BA for 12a has (2, 2) entry −4; the exact product has 3.
        let r = gallery("12a", &GalleryParams::default()).unwrap();
        let failing: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failing, ["BA matches the displayed product"]);
        assert!(r.check("BA matches the displayed product").unwrap().detail.starts_with("computed [-1, -1] [7, 3]"));
        assert!(gallery("12b", &GalleryParams::default()).unwrap().passed());
        // The displayed products for 13 carry exchanged labels.
        let p = GalleryParams {
            omega_power: 2,
            x: [int(2), rat(-1, 3), int(5)],
            ..Default::default()
        };
        for r in [gallery("13", &GalleryParams::default()).unwrap(), gallery("13", &p).unwrap()] {
            let failing: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            assert_eq!(failing, ["AB matches the displayed product", "BA matches the displayed product"], "{r}");
        }
    }

    #[test]
    fn example_14_literal_blocks() {
        let r = gallery("14", &GalleryParams::default()).unwrap();
        assert!(r.check("B1·A1 = J·A1·B1 with J = [[1, 1], [0, 1]]").unwrap().passed);
        assert!(r.check("not quasi-commutative (no scalar ω with AB = ωBA)").unwrap().passed);
    }
}
