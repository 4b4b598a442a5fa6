//! Acceptance suite: one line per criterion, each with its tolerance and time
//! budget. Runs without the libtest harness so every line is printed; exits
//! nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use quasicomm::matrix::Matrix;
use quasicomm::ncpoly::{expand_power, inversions, NCPoly, NormalForm, Var};
use quasicomm::poly::Poly;
use quasicomm::qbinom::{potter_coefficients, qbinomial, verify_eq4, verify_eq4_at_two, QBinomTable};
use quasicomm::scalar::{int, rat, ConstScalar, CycNum, GenPoly, Rational, Ring};
use quasicomm::spectral::{carollian_check, eigenvalues, DEFAULT_CLUSTER_TOL};
use quasicomm::structure::gallery::{gallery, GalleryParams};
use quasicomm::structure::{
    check_potter, check_quasi, commutant_basis, decompose, direct_sum, embed_commuting_pair,
    kurosaki_reduce, random_block, random_pair, random_unimodular, wielandt_pair, PairType, QuasiPair,
};
use quasicomm::{omega, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ratio(rng: &mut impl Rng) -> Rational {
    let mut n = rng.gen_range(-5i64..=5);
    if n == 0 {
        n = 1;
    }
    rat(n, rng.gen_range(1..=4))
}

fn samples(rng: &mut impl Rng, count: usize) -> Vec<(Rational, Rational)> {
    (0..count).map(|_| (ratio(rng), ratio(rng))).collect()
}

fn lift(w: &CycNum, ss: &[(Rational, Rational)]) -> Vec<(CycNum, CycNum)> {
    ss.iter().map(|(s, t)| (w.from_rational_like(s), w.from_rational_like(t))).collect()
}

// 1 ─ interior coefficients of (x + y)^q vanish at ω = ζ_q.
fn potter_coefficients_vanish() -> Outcome {
    for q in 2..=12usize {
        let table = potter_coefficients(q, q as u32);
        let QBinomTable::Specialized { coeffs, .. } = &table else {
            return Err(format!("q = {q}: not specialised"));
        };
        ensure(coeffs.len() == q + 1, || format!("q = {q}: {} coefficients", coeffs.len()))?;
        ensure(coeffs[0].is_one() && coeffs[q].is_one(), || format!("q = {q}: end coefficients {table}"))?;
        ensure(table.interior_vanishes(), || format!("q = {q}: {table}"))?;
    }
    Ok("q = 2..12".into())
}

// 2 ─ φ_k φ_{q−k} [q, k] = φ_q, generically and at w = 2.
fn eq4_identity() -> Outcome {
    for q in 0..=10 {
        ensure(verify_eq4(q), || format!("generic identity fails at q = {q}"))?;
        ensure(verify_eq4_at_two(q), || format!("w = 2 identity fails at q = {q}"))?;
    }
    Ok("q = 0..10, generic and w = 2".into())
}

/// Independent rewriting oracle: bubble each x past a following y, one
/// `xy → w·yx` step at a time.
fn rewrite_word(word: &[Var]) -> (usize, usize, usize) {
    let mut w = word.to_vec();
    let mut steps = 0;
    loop {
        let Some(i) = w.windows(2).position(|p| p == [Var::X, Var::Y]) else { break };
        w.swap(i, i + 1);
        steps += 1;
    }
    let ys = w.iter().filter(|v| **v == Var::Y).count();
    (steps, ys, w.len() - ys)
}

// 3 ─ (x + y)^q = Σ [q, k] y^k x^{q−k}, and normal ordering of single words.
fn potter_schutzenberger() -> Outcome {
    let w = GenPoly::w();
    for q in 0..=10u32 {
        let got = expand_power(q, &w);
        let mut want = NormalForm::zero(&GenPoly::one());
        for k in 0..=q as usize {
            want = want.add(&NormalForm::monomial(qbinomial(q as usize, k as i64), k, q as usize - k));
        }
        ensure(got == want, || format!("q = {q}: expansion differs"))?;
    }
    let mut words = 0;
    for len in 0..=8usize {
        for bits in 0..(1u32 << len) {
            let word: Vec<Var> = (0..len).map(|i| if bits >> i & 1 == 1 { Var::Y } else { Var::X }).collect();
            let (steps, i, j) = rewrite_word(&word);
            ensure(steps as u64 == inversions(&word), || format!("inversion count differs on {word:?}"))?;
            let nf = NCPoly::monomial(GenPoly::one(), word.clone()).normal_order(&w);
            let want = NormalForm::monomial(w.pow_u(steps as u64), i, j);
            ensure(nf == want, || format!("normal form differs on {word:?}"))?;
            words += 1;
        }
    }
    Ok(format!("q = 0..10; {words} words of length <= 8"))
}

/// Seeded pair parameters: (type, n, k) with n <= max_n.
fn pair_shape(rng: &mut impl Rng, kind: PairType, max_n: usize) -> (usize, usize) {
    let k = rng.gen_range(2..=4usize);
    let n = match kind {
        PairType::I => rng.gen_range(1..=max_n),
        _ => k * rng.gen_range(1..=max_n / k),
    };
    (n, k)
}

const KINDS: [PairType; 4] = [PairType::I, PairType::II, PairType::III, PairType::IV];

// 4 ─ (sA + tB)^q = (sA)^q + (tB)^q on Wielandt and random pairs.
fn proposition_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for q in 1..=6u32 {
        let p = wielandt_pair(q);
        let ss = lift(&p.omega, &samples(&mut rng, 5));
        ensure(check_potter(&p.a, &p.b, q, &ss, 0.0).map_err(|e| e.to_string())?, || format!("Wielandt q = {q}"))?;
    }
    for i in 0..50u64 {
        let kind = KINDS[i as usize % 4];
        let (n, k) = pair_shape(&mut rng, kind, 8);
        let p = random_pair(kind, n, k, 400 + i).map_err(|e| e.to_string())?;
        ensure(p.verified, || format!("pair {i} not verified"))?;
        let ss = lift(&p.omega, &samples(&mut rng, 5));
        let ok = check_potter(&p.a, &p.b, k as u32, &ss, 0.0).map_err(|e| e.to_string())?;
        ensure(ok, || format!("pair {i}: type {kind}, n = {n}, k = {k}"))?;
    }
    Ok("Wielandt q = 1..6 and 50 random pairs, 5 samples each, exact".into())
}

// 5 ─ char_poly(sA + tB) = λ^q − (s^q + t^q) for the Wielandt pair.
fn wielandt_char_poly() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in 1..=8u32 {
        let p = wielandt_pair(q);
        let w = &p.omega;
        for (s, t) in samples(&mut rng, 3) {
            let (sc, tc) = (w.from_rational_like(&s), w.from_rational_like(&t));
            let m = p.a.scale(&sc).try_add(&p.b.scale(&tc)).map_err(|e| e.to_string())?;
            let got = m.char_poly().map_err(|e| e.to_string())?;
            let mut coeffs = vec![w.zero_like(); q as usize + 1];
            coeffs[q as usize] = w.one_like();
            coeffs[0] = sc.pow_u(q as u64).plus(&tc.pow_u(q as u64)).negated();
            ensure(got == Poly::new(coeffs), || format!("q = {q}, s = {s}, t = {t}: {}", got.display_with("λ")))?;
        }
    }
    Ok("q = 1..8, 3 samples each, exact".into())
}

// 6 ─ σ(A + B) is Carollian for nonsingular pairs.
fn carollian_spectra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..30u64 {
        let (n, k) = pair_shape(&mut rng, PairType::IV, 12);
        let p = random_pair(PairType::IV, n, k, 600 + i).map_err(|e| e.to_string())?;
        let sum = p.a.try_add(&p.b).map_err(|e| e.to_string())?;
        let spec = eigenvalues(&sum, DEFAULT_CLUSTER_TOL).map_err(|e| e.to_string())?;
        carollian_check(&spec, p.omega.to_complex(), 1e-8)
            .map_err(|f| format!("pair {i} (n = {n}, k = {k}): {f}"))?;
    }
    Ok("30 nonsingular pairs, n <= 12, tol 1e-8".into())
}

// 7 ─ commutant dimensions 2 / 4 / 9.
fn commutant_dimensions() -> Outcome {
    let example = |l: i64, a: i64| {
        let (lambda, alpha) = (int(l), int(a));
        let al = &alpha * &lambda;
        let m = Matrix::from_fn(5, 5, |i, j| match (i, j) {
            _ if i == j && i < 3 => lambda.clone(),
            _ if i == j => al.clone(),
            _ if j == i + 1 && i != 2 => int(1),
            _ => int(0),
        });
        (m, alpha)
    };
    let mut dims = Vec::new();
    for ((l, a), want) in [((2, 3), 2), ((2, -1), 4), ((0, 3), 9)] {
        let (m, alpha) = example(l, a);
        let basis = commutant_basis(&m, &alpha).map_err(|e| e.to_string())?;
        ensure(basis.len() == want, || format!("λ = {l}, α = {a}: dimension {}", basis.len()))?;
        for x in &basis {
            ensure(&m * x == x.scale(&alpha) * m.clone(), || format!("λ = {l}, α = {a}: AX ≠ αXA"))?;
        }
        let stacked = Matrix::from_fn(25, basis.len(), |r, c| basis[c].get(r % 5, r / 5).clone());
        ensure(stacked.rank() == want, || "basis is dependent".into())?;
        dims.push(basis.len().to_string());
    }
    Ok(format!("dimensions {}, exact", dims.join(" / ")))
}

// 8 ─ the counterexamples: every listed identity holds and ω-detection fails.
fn gallery_exactness() -> Outcome {
    let mut failures = Vec::new();
    for ex in ["11", "12a", "12b", "13", "14"] {
        let r = gallery(ex, &GalleryParams::default()).map_err(|e| e.to_string())?;
        for c in r.checks.iter().filter(|c| !c.passed) {
            failures.push(format!("{ex}: {} ({})", c.name, c.detail));
        }
        // Both directions must be present: a Potter-type identity and failed detection.
        ensure(r.checks.iter().any(|c| c.name.contains("³")), || format!("{ex}: no Potter-type check"))?;
        ensure(r.check("not quasi-commutative (no scalar ω with AB = ωBA)").is_some(), || format!("{ex}: no detection check"))?;
    }
    if failures.is_empty() {
        Ok("examples 11, 12a, 12b, 13, 14, exact".into())
    } else {
        Err(failures.join("; "))
    }
}

/// Direct sum of random blocks with pairwise distinct chain moduli, conjugated
/// by a unimodular matrix; returns the pair and the sorted block types.
fn mixed_pair(seed: u64) -> Result<(QuasiPair<CycNum>, Vec<PairType>), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(2..=3usize);
    let count = rng.gen_range(1..=3usize);
    let mut blocks = Vec::new();
    let mut kinds = Vec::new();
    let mut used_type_i = false;
    let mut size = 0;
    for i in 0..count {
        let mut kind = KINDS[rng.gen_range(0..4)];
        if kind == PairType::I && used_type_i {
            kind = PairType::IV;
        }
        used_type_i |= kind == PairType::I;
        let n = if kind == PairType::I { rng.gen_range(1..=3) } else { k * rng.gen_range(1..=2) };
        if size + n > 12 {
            break;
        }
        size += n;
        let sign = |r: &mut ChaCha8Rng| if r.gen_bool(0.5) { 1 } else { -1 };
        let lambda = (i as i64 + 1) * sign(&mut rng);
        let nu = (i as i64 + 1) * sign(&mut rng);
        blocks.push(random_block(kind, n, k, lambda, nu, &mut rng).map_err(|e| e.to_string())?);
        kinds.push(kind);
    }
    let sum = direct_sum(&blocks).map_err(|e| e.to_string())?;
    let s = random_unimodular(sum.dim(), &mut rng).map(|r| CycNum::in_field(sum.omega.field().clone(), r.clone()));
    let pair = sum.conjugate(&s).map_err(|e| e.to_string())?;
    kinds.sort();
    Ok((pair, kinds))
}

// 9 ─ decomposition round trip and Kurosaki reconstruction.
fn decomposition_round_trip() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..30u64 {
        let (pair, kinds) = mixed_pair(900 + i)?;
        ensure(check_quasi(&pair.a, &pair.b, &pair.omega, 0.0).unwrap_or(false), || format!("pair {i} not quasi"))?;
        let r = decompose(&pair, 1e-8).map_err(|e| format!("pair {i}: {e}"))?;
        let mut got: Vec<PairType> = r.blocks.iter().map(|b| b.block_type).collect();
        got.sort();
        ensure(got == kinds, || format!("pair {i}: types {got:?}, expected {kinds:?}"))?;
        // Reconstruction from the block-diagonal part.
        let sinv = r.s.inverse().map_err(|e| e.to_string())?;
        let mut blk_a = Matrix::zero(pair.dim(), pair.dim(), &Complex64::new(0.0, 0.0));
        let mut blk_b = blk_a.clone();
        for b in &r.blocks {
            blk_a.set_block(b.start, b.start, &r.a_reduced.submatrix(b.start, b.end, b.start, b.end));
            blk_b.set_block(b.start, b.start, &r.b_reduced.submatrix(b.start, b.end, b.start, b.end));
        }
        let ac = pair.a.to_complex();
        let bc = pair.b.to_complex();
        let back_a = r.s.try_mul(&blk_a).and_then(|m| m.try_mul(&sinv)).map_err(|e| e.to_string())?;
        let back_b = r.s.try_mul(&blk_b).and_then(|m| m.try_mul(&sinv)).map_err(|e| e.to_string())?;
        let res = (back_a.max_abs_diff(&ac) / ac.norm_max().max(1.0)).max(back_b.max_abs_diff(&bc) / bc.norm_max().max(1.0));
        worst = worst.max(res).max(r.residual());
        ensure(res <= 1e-8 && r.residual() <= 1e-8, || format!("pair {i}: residual {res:.2e} / {:.2e}", r.residual()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_k: f64 = 0.0;
    for i in 0..20 {
        let k = [2usize, 3, 4][i % 3];
        let d = rng.gen_range(1..=3usize);
        let w = omega(k as u32);
        let x = Matrix::from_fn(d, d, |r, c| if c > r { w.from_int_like(rng.gen_range(-2..=2)) } else { w.zero_like() });
        let poly = |c0: i64, rng: &mut ChaCha8Rng| {
            let id = Matrix::identity(d, &w);
            let x2 = &x * &x;
            id.scale(&w.from_int_like(c0)) + x.scale(&w.from_int_like(rng.gen_range(-2..=2))) + x2.scale(&w.from_int_like(rng.gen_range(-2..=2)))
        };
        let c_m = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let c_n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let (m, n) = (poly(c_m, &mut rng), poly(c_n, &mut rng));
        let p = embed_commuting_pair(&m, &n, k, &w).map_err(|e| e.to_string())?;
        let f = kurosaki_reduce(&p, 1e-8).map_err(|e| format!("embedding {i}: {e}"))?;
        let ab = f.a.try_mul(&f.b).map_err(|e| e.to_string())?;
        let ba = f.b.try_mul(&f.a).map_err(|e| e.to_string())?;
        worst_k = worst_k.max(f.residual);
        ensure(f.k == k && f.residual <= 1e-8 && ab.max_abs_diff(&ba) <= 1e-8, || {
            format!("embedding {i}: k = {}, residual {:.2e}", f.k, f.residual)
        })?;
    }
    Ok(format!(
        "30 decompositions (worst residual {worst:.1e}), 20 reductions (worst {worst_k:.1e}), tol 1e-8"
    ))
}

/// Random word of length `len`.
fn random_word(rng: &mut impl Rng, len: usize) -> Vec<Var> {
    (0..len).map(|_| if rng.gen_bool(0.5) { Var::X } else { Var::Y }).collect()
}

// 10 ─ ideal membership and its converse through the Wielandt pair.
fn ideal_membership() -> Outcome {
    let q = 5;
    let pair = wielandt_pair(q);
    let w = pair.omega.clone();
    let one = w.one_like();
    let g = NCPoly::generator(&w);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..100 {
        let mut f = NCPoly::zero(&one);
        for _ in 0..rng.gen_range(1..=3) {
            let (lu, lv) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
            let u = NCPoly::monomial(w.from_rational_like(&ratio(&mut rng)), random_word(&mut rng, lu));
            let v = NCPoly::monomial(w.pow_u(rng.gen_range(0..q as u64)), random_word(&mut rng, lv));
            f = f.add(&u.mul(&g).mul(&v));
        }
        ensure(f.ideal_member(&w), || format!("combination {i} not recognised"))?;
    }
    let sample_pts = samples(&mut rng, 3);
    for i in 0..100 {
        let mut f = NCPoly::zero(&one);
        while f.is_zero() {
            for _ in 0..rng.gen_range(1..=4) {
                let (yi, xj) = (rng.gen_range(0..q as usize), rng.gen_range(0..q as usize));
                let word: Vec<Var> = std::iter::repeat(Var::Y).take(yi).chain(std::iter::repeat(Var::X).take(xj)).collect();
                f = f.add(&NCPoly::monomial(w.from_rational_like(&ratio(&mut rng)), word));
            }
        }
        ensure(!f.ideal_member(&w), || format!("normal-ordered polynomial {i} reported as member"))?;
        let mut witnessed = false;
        for (s, t) in &sample_pts {
            let sa = pair.a.scale(&w.from_rational_like(s));
            let tb = pair.b.scale(&w.from_rational_like(t));
            let value = f.evaluate_with(&sa, &tb, Clone::clone).map_err(|e| e.to_string())?;
            if !value.is_zero() {
                witnessed = true;
                break;
            }
        }
        ensure(witnessed, || format!("polynomial {i} vanishes on the sampled Wielandt pairs"))?;
    }
    Ok(format!("100 members, 100 non-members witnessed on the q = {q} Wielandt pair"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "Potter coefficients vanish", budget: Duration::from_secs(1), run: potter_coefficients_vanish },
        Criterion { id: 2, name: "q-binomial product identity", budget: Duration::from_secs(1), run: eq4_identity },
        Criterion { id: 3, name: "Potter–Schützenberger expansion", budget: Duration::from_secs(10), run: potter_schutzenberger },
        Criterion { id: 4, name: "(sA + tB)^q = (sA)^q + (tB)^q", budget: Duration::from_secs(30), run: proposition_4 },
        Criterion { id: 5, name: "Wielandt characteristic polynomial", budget: Duration::from_secs(5), run: wielandt_char_poly },
        Criterion { id: 6, name: "Carollian spectra", budget: Duration::from_secs(10), run: carollian_spectra },
        Criterion { id: 7, name: "commutant dimensions", budget: Duration::from_secs(5), run: commutant_dimensions },
        Criterion { id: 8, name: "gallery exactness", budget: Duration::from_secs(5), run: gallery_exactness },
        Criterion { id: 9, name: "decomposition round trip", budget: Duration::from_secs(60), run: decomposition_round_trip },
        Criterion { id: 10, name: "ideal membership", budget: Duration::from_secs(30), run: ideal_membership },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == &c.id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?}, budget {:?}", c.budget)),
            Err(e) => (false, e),
        };
        failed += usize::from(!pass);
        println!(
            "criterion {:>2} {}: {} [{:.2?} / {:?}] {}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            elapsed,
            c.budget,
            detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
