//! Acceptance suite. Every criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ksquant_core::focknum::{
    bohmian_momentum, build_ladder, coherent_projector, coherent_state, fock_wavefunction, gaussian_bump,
    husimi_expectations, op_to_matrix, position_range_projector, toeplitz_quantize, toeplitz_quantize_fn,
    wigner_function, wigner_symbol_grid, BohmianOptions, DensityMatrix, FockConfig, FockMatrix, PhaseGrid,
};
use ksquant_core::kscolor::{bundled, find_bases, search_valuation, BasisList, BUNDLED, DEFAULT_TOL};
use ksquant_core::{
    antiwick_quantize, antiwick_symbol, change_alphabet, ks2b_report, op_mul, parse_op_expr, parse_phase_expr,
    weierstrass_transform, weyl_quantize, weyl_symbol, Alphabet, GaussRat, Letter, OpPoly, PhasePoly, Scalar, Scheme,
};
use nalgebra::DVector;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn phase(s: &str) -> PhasePoly {
    parse_phase_expr(s).unwrap()
}

fn op(s: &str) -> OpPoly {
    parse_op_expr(s).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = rat(rng.random_range(-6..=6), rng.random_range(1..=4));
    let im = if rng.random_bool(0.5) { rat(rng.random_range(-6..=6), rng.random_range(1..=4)) } else { rat(0, 1) };
    let q = GaussRat::new(re, im);
    let mut s = Scalar::monomial(q, rng.random_range(-2..=2), rng.random_range(-2..=2), rng.random_range(0..=1));
    if rng.random_bool(0.3) {
        s = &s + &Scalar::from_int(rng.random_range(-3..=3));
    }
    s
}

fn random_phase_poly(rng: &mut ChaCha8Rng, max_degree: u32) -> PhasePoly {
    let terms = rng.random_range(0..=6);
    let mut out = PhasePoly::zero();
    for _ in 0..terms {
        let d = rng.random_range(0..=max_degree);
        let j = rng.random_range(0..=d);
        out = &out + &PhasePoly::monomial(j, d - j, random_scalar(rng));
    }
    out
}

fn random_op_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> OpPoly {
    let (alphabet, letters) = if rng.random_bool(0.5) {
        (Alphabet::XP, [Letter::X, Letter::P])
    } else {
        (Alphabet::Ladder, [Letter::A, Letter::Ad])
    };
    let words: Vec<_> = (0..rng.random_range(1..=5))
        .map(|_| {
            let len = rng.random_range(0..=max_degree);
            let w = (0..len).map(|_| letters[rng.random_range(0..2)]).collect();
            (w, random_scalar(rng))
        })
        .collect();
    OpPoly::from_words(alphabet, words).unwrap()
}

fn permutations(items: &[Letter]) -> Vec<Vec<Letter>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn brute_force_colorable(bl: &BasisList) -> bool {
    let support = bl.support();
    let slot: Vec<Option<usize>> = {
        let mut s = vec![None; bl.num_vectors];
        for (k, &i) in support.iter().enumerate() {
            s[i] = Some(k);
        }
        s
    };
    (0u64..1 << support.len())
        .any(|mask| bl.bases.iter().all(|b| b.iter().filter(|&&i| mask >> slot[i].unwrap() & 1 == 1).count() == 1))
}

fn ordering_identities() -> Outcome {
    let start = Instant::now();
    let a = weyl_quantize(&phase("x*p"));
    let sym = OpPoly::from_words(
        Alphabet::XP,
        [(vec![Letter::X, Letter::P], Scalar::ratio(1, 2)), (vec![Letter::P, Letter::X], Scalar::ratio(1, 2))],
    )
    .unwrap();
    ensure(a == sym, format!("W(xp) = {a}"))?;
    let c = op_mul(&a, &a).unwrap();
    ensure(c == op("X^2 P^2 - 2 i hbar X P - hbar^2/4"), format!("W(xp)^2 = {c}"))?;
    let w = weyl_quantize(&phase("x^2*p^2"));
    ensure(w == op("X^2 P^2 - 2 i hbar X P - hbar^2/2"), format!("W(x^2p^2) = {w}"))?;
    let diff = &c - &w;
    ensure(diff == op("hbar^2/4"), format!("difference {diff}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("W(xp)^2 - W(x^2p^2) = {diff} in {elapsed:?}"))
}

fn ks2b_discrepancies() -> Outcome {
    let r = ks2b_report(&phase("x*p"), &phase("x*p"), Scheme::Weyl);
    ensure(r.discrepancy == phase("hbar^2/4"), format!("Weyl xp*xp: {}", r.discrepancy))?;
    for m in 0..=5 {
        for n in 0..=5 {
            let r = ks2b_report(&PhasePoly::x().pow(m), &PhasePoly::x().pow(n), Scheme::Weyl);
            ensure(r.discrepancy.is_zero(), format!("Weyl x^{m} x^{n}: {}", r.discrepancy))?;
        }
    }
    let r = ks2b_report(&PhasePoly::x(), &PhasePoly::x(), Scheme::AntiWick);
    ensure(r.discrepancy == phase("-l^2/2"), format!("anti-Wick x*x: {}", r.discrepancy))?;
    Ok("hbar^2/4, 0 (36 pairs), -l^2/2".into())
}

fn antiwick_squares() -> Outcome {
    let x2 = antiwick_quantize(&phase("x^2"));
    ensure(x2 == op("X^2 + l^2/2"), format!("AW(x^2) = {x2}"))?;
    let p2 = antiwick_quantize(&phase("p^2"));
    ensure(p2 == op("P^2 + hbar^2/(2 l^2)"), format!("AW(p^2) = {p2}"))?;
    Ok(format!("AW(x^2) = {}; AW(p^2) = {}", change_alphabet(&x2, Alphabet::XP), change_alphabet(&p2, Alphabet::XP)))
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let a = random_phase_poly(&mut rng, 6);
        let w = weyl_symbol(&weyl_quantize(&a));
        ensure(w == a, format!("Weyl round trip of {a} gave {w}"))?;
        let aw = antiwick_symbol(&antiwick_quantize(&a));
        ensure(aw == a, format!("anti-Wick round trip of {a} gave {aw}"))?;
    }
    let mut checked = 0;
    for d in 0..=6usize {
        for j in 0..=d {
            let k = d - j;
            let mut letters = vec![Letter::X; j];
            letters.extend(std::iter::repeat_n(Letter::P, k));
            let words = permutations(&letters).into_iter().map(|w| (w, Scalar::ratio(1, factorial(d))));
            let oracle = OpPoly::from_words(Alphabet::XP, words).unwrap();
            let w = weyl_quantize(&PhasePoly::monomial(j as u32, k as u32, Scalar::one()));
            ensure(w == oracle, format!("permutation sum for x^{j} p^{k}"))?;
            checked += 1;
        }
    }
    Ok(format!("200 polynomials both schemes; {checked} monomials against permutation sums"))
}

fn weierstrass_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let o = random_op_poly(&mut rng, 6);
        let lhs = weierstrass_transform(&antiwick_symbol(&o));
        let rhs = weyl_symbol(&o);
        ensure(lhs == rhs, format!("operator {o}: {lhs} vs {rhs}"))?;
    }
    let x2 = op("X^2");
    let aw = antiwick_symbol(&x2);
    ensure(aw == phase("x^2 - l^2/2"), format!("AW symbol of X^2 = {aw}"))?;
    let w = weierstrass_transform(&aw);
    ensure(w == phase("x^2"), format!("Weierstrass transform = {w}"))?;
    Ok("50 random operators; X^2: x^2 - l^2/2 -> x^2".into())
}

fn linearity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let a = random_phase_poly(&mut rng, 6);
        let b = random_phase_poly(&mut rng, 6);
        let al = random_scalar(&mut rng);
        let be = random_scalar(&mut rng);
        let combo = &a.scale(&al) + &b.scale(&be);
        let w = &weyl_quantize(&a).scale(&al) + &weyl_quantize(&b).scale(&be);
        ensure(weyl_quantize(&combo) == w, "Weyl quantization is not linear")?;
        let aw = &antiwick_quantize(&a).scale(&al) + &antiwick_quantize(&b).scale(&be);
        ensure(antiwick_quantize(&combo) == aw, "anti-Wick quantization is not linear")?;
    }
    Ok("100 tuples, both schemes".into())
}

fn fock_backend() -> Outcome {
    let start = Instant::now();
    let cfg = FockConfig::unit(64).unwrap();
    let lad = build_ladder(cfg);
    let comm = lad.x.commutator(&lad.p);
    let i_id = FockMatrix::identity(cfg).scaled(Complex64::new(0.0, 1.0));
    let e_comm = comm.max_abs_distance(&i_id, 63);
    ensure(e_comm < 1e-12, format!("[X,P] - i: {e_comm:e}"))?;
    let grid = PhaseGrid::covering(cfg, 64);
    let tx2 = toeplitz_quantize(&phase("x^2"), cfg, &grid).map_err(|e| e.to_string())?;
    let target = op_to_matrix(&op("X^2"), cfg).sum(&FockMatrix::identity(cfg).scaled(Complex64::new(0.5, 0.0)));
    let e_x2 = tx2.max_abs_distance(&target, 32);
    ensure(e_x2 < 1e-8, format!("T(x^2) - (X^2 + 1/2): {e_x2:e}"))?;
    let t1 = toeplitz_quantize(&PhasePoly::one(), cfg, &grid).map_err(|e| e.to_string())?;
    let e_1 = t1.max_abs_distance(&FockMatrix::identity(cfg), 32);
    ensure(e_1 < 1e-8, format!("T(1) - I: {e_1:e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), format!("took {elapsed:?}"))?;
    Ok(format!("[X,P] {e_comm:.1e}, T(x^2) {e_x2:.1e}, T(1) {e_1:.1e} in {elapsed:.2?}"))
}

fn husimi_identity() -> Outcome {
    let cfg = FockConfig::unit(64).unwrap();
    let grid = PhaseGrid::covering(cfg, 64);
    let observables = [
        "1",
        "x",
        "p",
        "x^2",
        "p^2",
        "x*p",
        "x^2 + p^2",
        "x^3 - 2*p",
        "x^2*p^2",
        "x^4",
        "p^4",
        "x^3*p",
        "x*p^3 + 3*x*p",
        "x^2*p - 1/2*p^3 + x",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let weights: Vec<f64> = (0..4).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mixture: Vec<(f64, DVector<Complex64>)> = weights
        .iter()
        .enumerate()
        .map(|(n, w)| {
            let mut v = DVector::zeros(64);
            v[n] = Complex64::new(1.0, 0.0);
            (w / total, v)
        })
        .collect();
    let mut states =
        vec![("vacuum".to_string(), DensityMatrix::new(FockMatrix::number_projector(0, cfg).unwrap()).unwrap())];
    for (x, p) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        states.push((format!("coherent({x},{p})"), DensityMatrix::pure(&coherent_state(x, p, cfg), cfg).unwrap()));
    }
    states.push(("mixture".into(), DensityMatrix::mixture(&mixture, cfg).unwrap()));
    let mut worst = 0.0f64;
    for (name, rho) in &states {
        let polys: Vec<PhasePoly> = observables.iter().map(|a| phase(a)).collect();
        let values = husimi_expectations(&polys, rho, &grid).map_err(|e| e.to_string())?;
        for ((a, poly), q) in observables.iter().zip(&polys).zip(values) {
            let tr = op_to_matrix(&antiwick_quantize(poly), cfg).trace_product(rho.matrix());
            let err = (q - tr).norm();
            worst = worst.max(err);
            ensure(err < 1e-8, format!("{a} in {name}: {q} vs {tr}"))?;
        }
    }
    Ok(format!("{} observables x {} states, max error {worst:.1e}", observables.len(), states.len()))
}

fn coherent_wigner() -> Outcome {
    let cfg = FockConfig::unit(64).unwrap();
    let rho = coherent_projector(0.0, 0.0, cfg);
    let axis: Vec<f64> = (0..=24).map(|i| -3.0 + 0.25 * i as f64).collect();
    let sym = wigner_symbol_grid(&rho, &axis, &axis).map_err(|e| e.to_string())?;
    let hbar = cfg.hbar();
    let l = cfg.l();
    let mut worst = 0.0f64;
    for (i, x) in axis.iter().enumerate() {
        for (j, p) in axis.iter().enumerate() {
            let density = sym[i][j] / (2.0 * PI * hbar);
            let gauss = (-(x * x) / (l * l) - p * p * l * l / (hbar * hbar)).exp() / (PI * hbar);
            worst = worst.max((density - gauss).abs());
        }
    }
    ensure(worst < 1e-6, format!("max error {worst:e}"))?;
    Ok(format!("max error {worst:.1e} on 25x25 points"))
}

fn projector_symbol() -> Outcome {
    let mut errs = Vec::new();
    for n in [128, 256] {
        let cfg = FockConfig::unit(n).unwrap();
        let pi = position_range_projector(-1.0, 1.0, cfg).map_err(|e| e.to_string())?;
        let inside = wigner_function(&pi, 0.0, 0.0).map_err(|e| e.to_string())?;
        let outside = wigner_function(&pi, 3.0, 0.0).map_err(|e| e.to_string())?;
        errs.push(((inside - 1.0).abs(), outside.abs()));
    }
    let (e0, e3) = errs[0];
    let (f0, f3) = errs[1];
    let summary = format!("cutoff 128: |W(0,0)-1| = {e0:.4}, |W(3,0)| = {e3:.4}; cutoff 256: {f0:.4}, {f3:.4}");
    ensure(e0 < 5e-2 && e3 < 5e-2, format!("{summary} (tolerance 5e-2)"))?;
    ensure(f0 < e0 && f3 < e3, format!("{summary} (no improvement)"))?;
    Ok(summary)
}

fn delta_limit() -> Outcome {
    let cfg = FockConfig::unit(64).unwrap();
    let target = coherent_projector(0.0, 0.0, cfg);
    let mut dists = Vec::new();
    for k in 1..=5 {
        let sigma = cfg.l() / f64::powi(2.0, k);
        let sp = sigma * cfg.hbar() / (cfg.l() * cfg.l());
        let grid = PhaseGrid::centered(0.0, 0.0, 9.0 * sigma, 9.0 * sp, 96, 96).unwrap();
        let t =
            toeplitz_quantize_fn(gaussian_bump(0.0, 0.0, sigma, cfg), cfg, &grid, false).map_err(|e| e.to_string())?;
        dists.push(t.frobenius_distance(&target, 32));
    }
    let summary = dists.iter().map(|d| format!("{d:.2e}")).collect::<Vec<_>>().join(" > ");
    ensure(dists.windows(2).all(|w| w[1] < w[0]), format!("not decreasing: {summary}"))?;
    let last = *dists.last().unwrap();
    ensure(last < 1e-3, format!("distance {last:e} at l/32"))?;
    Ok(format!("widths l/2..l/32: {summary}"))
}

fn bohmian() -> Outcome {
    let cfg = FockConfig::unit(32).unwrap();
    let n = 1601;
    let dx = 16.0 / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| -8.0 + i as f64 * dx).collect();
    let psi: Vec<Complex64> = fock_wavefunction(0, &xs, cfg).into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    let field = bohmian_momentum(&psi, xs[0], dx, cfg, BohmianOptions::default()).map_err(|e| e.to_string())?;
    let max_p = field.max_abs();
    ensure(max_p < 1e-12, format!("max |p| = {max_p:e}"))?;
    let bohm_p2 = field.moment(2);
    ensure(bohm_p2 == 0.0, format!("Bohmian <p^2> = {bohm_p2}"))?;
    let rho = FockMatrix::number_projector(0, cfg).unwrap();
    let quantum = op_to_matrix(&op("P^2"), cfg).trace_product(&rho);
    ensure((quantum - Complex64::new(0.5, 0.0)).norm() < 1e-8, format!("Tr(P^2 rho) = {quantum}"))?;
    ensure(bohm_p2 != quantum.re, "Bohmian and quantum second moments agree")?;
    Ok(format!("max |p| = {max_p:e}; Bohmian <p^2> = {bohm_p2} != Tr(P^2 rho) = {:.10}", quantum.re))
}

fn ks_colorability() -> Outcome {
    let vs = bundled("ks18-d4").unwrap();
    let bl = find_bases(&vs, DEFAULT_TOL);
    ensure(bl.len() == 9, format!("{} bases", bl.len()))?;
    let start = Instant::now();
    let verdict = search_valuation(&bl);
    let elapsed = start.elapsed();
    ensure(!verdict.colorable, "18-vector set reported colorable")?;
    ensure(elapsed < Duration::from_secs(1), format!("search took {elapsed:?}"))?;
    for k in 0..bl.len() {
        let sub = bl.without(k);
        ensure(search_valuation(&sub).colorable, format!("dropping basis {k} left it uncolorable"))?;
    }
    let mut compared = 0;
    for (name, _) in BUNDLED {
        let set = bundled(name).unwrap();
        if set.len() > 20 {
            continue;
        }
        let bases = find_bases(&set, DEFAULT_TOL);
        let mut lists = vec![bases.clone()];
        lists.extend((0..bases.len()).map(|k| bases.without(k)));
        for list in lists.iter().filter(|l| !l.is_empty()) {
            let v = search_valuation(list);
            ensure(v.colorable == brute_force_colorable(list), format!("{name}: solver disagrees with brute force"))?;
            compared += 1;
        }
    }
    Ok(format!(
        "9 bases, uncolorable in {elapsed:.2?} ({} nodes); every single drop colorable; {compared} lists match brute force",
        verdict.nodes_explored
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("ordering identities for products of x p", ordering_identities),
        ("product-rule discrepancies", ks2b_discrepancies),
        ("anti-Wick images of x^2 and p^2", antiwick_squares),
        ("quantize/symbol round trips and permutation sums", round_trips),
        ("Weierstrass transform links the two symbols", weierstrass_consistency),
        ("linearity of both quantizations", linearity),
        ("truncated Fock backend and Toeplitz operators", fock_backend),
        ("Husimi expectation identity", husimi_identity),
        ("Wigner density of the vacuum", coherent_wigner),
        ("Weyl symbol of a position-range projector", projector_symbol),
        ("Toeplitz delta-sequence limit", delta_limit),
        ("Bohmian momentum of the ground state", bohmian),
        ("Kochen-Specker colorability", ks_colorability),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
