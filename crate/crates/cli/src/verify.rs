use std::f64::consts::PI;

use clap::ValueEnum;
use nalgebra::DVector;
use num_complex::Complex64;
use serde_json::{json, Value};

use ksquant_core::focknum::{
    bohmian_momentum, build_ladder, coherent_projector, coherent_state, fock_wavefunction, husimi_expectations,
    op_to_matrix, position_range_projector, toeplitz_quantize, wigner_function, wigner_symbol_grid, BohmianOptions,
    DensityMatrix, FockConfig, FockError, FockMatrix, PhaseGrid,
};
use ksquant_core::{antiwick_quantize, parse_op_expr, parse_phase_expr, PhasePoly};

use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    WignerCoherent,
    HusimiExpect,
    Toeplitz,
    ProjectorSymbol,
    Bohmian,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::WignerCoherent => "wigner-coherent",
            Suite::HusimiExpect => "husimi-expect",
            Suite::Toeplitz => "toeplitz",
            Suite::ProjectorSymbol => "projector-symbol",
            Suite::Bohmian => "bohmian",
        }
    }

    pub fn default_cutoff(self) -> usize {
        match self {
            Suite::WignerCoherent | Suite::HusimiExpect | Suite::Toeplitz => 64,
            Suite::ProjectorSymbol => 128,
            Suite::Bohmian => 32,
        }
    }

    pub fn run(self, cfg: FockConfig) -> Result<(Value, Vec<Check>), FockError> {
        match self {
            Suite::WignerCoherent => wigner_coherent(cfg),
            Suite::HusimiExpect => husimi_expect(cfg),
            Suite::Toeplitz => toeplitz(cfg),
            Suite::ProjectorSymbol => projector_symbol(cfg),
            Suite::Bohmian => bohmian(cfg),
        }
    }
}

fn op_matrix(s: &str, cfg: FockConfig) -> FockMatrix {
    op_to_matrix(&parse_op_expr(s).expect("fixed expression"), cfg)
}

fn phase(s: &str) -> PhasePoly {
    parse_phase_expr(s).expect("fixed expression")
}

fn identity_times(c: f64, cfg: FockConfig) -> FockMatrix {
    FockMatrix::identity(cfg).scaled(Complex64::new(c, 0.0))
}

fn wigner_coherent(cfg: FockConfig) -> Result<(Value, Vec<Check>), FockError> {
    let (hbar, l) = (cfg.hbar(), cfg.l());
    let rho = coherent_projector(0.0, 0.0, cfg);
    let steps: Vec<f64> = (0..=24).map(|i| -3.0 + 0.25 * i as f64).collect();
    let xs: Vec<f64> = steps.iter().map(|s| s * l).collect();
    let ps: Vec<f64> = steps.iter().map(|s| s * hbar / l).collect();
    let sym = wigner_symbol_grid(&rho, &xs, &ps)?;
    let mut worst = 0.0f64;
    for (i, x) in xs.iter().enumerate() {
        for (j, p) in ps.iter().enumerate() {
            let density = sym[i][j] / (2.0 * PI * hbar);
            let gauss = (-(x * x) / (l * l) - p * p * l * l / (hbar * hbar)).exp() / (PI * hbar);
            worst = worst.max((density - gauss).abs());
        }
    }
    let peak = sym[12][12] / (2.0 * PI * hbar);
    let result = json!({
        "points": xs.len() * ps.len(),
        "peak_density": peak,
        "expected_peak": 1.0 / (PI * hbar),
        "max_error": worst,
    });
    Ok((result, vec![Check::below("max |W - exp(-x^2/l^2 - l^2 p^2/hbar^2)/(pi hbar)|", worst, 1e-6)]))
}

fn husimi_expect(cfg: FockConfig) -> Result<(Value, Vec<Check>), FockError> {
    let n = cfg.cutoff();
    let (x0, p0) = (cfg.l(), cfg.hbar() / cfg.l());
    let grid = PhaseGrid::covering(cfg, n);
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
    let polys: Vec<PhasePoly> = observables.iter().map(|a| phase(a)).collect();
    let operators: Vec<FockMatrix> = polys.iter().map(|a| op_to_matrix(&antiwick_quantize(a), cfg)).collect();
    let basis = |k: usize| {
        let mut v = DVector::zeros(n);
        v[k] = Complex64::new(1.0, 0.0);
        v
    };
    let mixture: Vec<(f64, DVector<Complex64>)> =
        [0.4, 0.3, 0.2, 0.1].iter().enumerate().map(|(k, &w)| (w, basis(k))).collect();
    let mut states = vec![("vacuum".to_string(), DensityMatrix::pure(&basis(0), cfg)?)];
    for (sx, sp) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let state = coherent_state(sx * x0, sp * p0, cfg);
        states.push((format!("coherent({sx:+},{sp:+})"), DensityMatrix::pure(&state, cfg)?));
    }
    states.push(("mixture 0.4|0>+0.3|1>+0.2|2>+0.1|3>".into(), DensityMatrix::mixture(&mixture, cfg)?));
    let mut checks = Vec::new();
    let mut worst = 0.0f64;
    for (name, rho) in &states {
        let values = husimi_expectations(&polys, rho, &grid)?;
        let err =
            values.iter().zip(&operators).map(|(q, a)| (q - a.trace_product(rho.matrix())).norm()).fold(0.0, f64::max);
        worst = worst.max(err);
        checks.push(Check::below(format!("{name}: max |int A Q - Tr(A rho)|"), err, 1e-8));
    }
    let result = json!({
        "observables": observables,
        "states": states.iter().map(|(s, _)| s).collect::<Vec<_>>(),
        "max_error": worst,
    });
    Ok((result, checks))
}

fn toeplitz(cfg: FockConfig) -> Result<(Value, Vec<Check>), FockError> {
    let n = cfg.cutoff();
    let k = cfg.trusted_block();
    let (hbar, l) = (cfg.hbar(), cfg.l());
    let lad = build_ladder(cfg);
    let i_hbar = FockMatrix::identity(cfg).scaled(Complex64::new(0.0, hbar));
    let e_comm = lad.x.commutator(&lad.p).max_abs_distance(&i_hbar, n - 1);
    let grid = PhaseGrid::covering(cfg, n);
    let t1 = toeplitz_quantize(&PhasePoly::one(), cfg, &grid)?;
    let tx2 = toeplitz_quantize(&phase("x^2"), cfg, &grid)?;
    let tp2 = toeplitz_quantize(&phase("p^2"), cfg, &grid)?;
    let e_1 = t1.max_abs_distance(&FockMatrix::identity(cfg), k);
    let e_x2 = tx2.max_abs_distance(&op_matrix("X^2", cfg).sum(&identity_times(l * l / 2.0, cfg)), k);
    let e_p2 = tp2.max_abs_distance(&op_matrix("P^2", cfg).sum(&identity_times(hbar * hbar / (2.0 * l * l), cfg)), k);
    let result = json!({
        "commutator_block": n - 1,
        "trusted_block": k,
        "errors": { "commutator": e_comm, "identity": e_1, "x^2": e_x2, "p^2": e_p2 },
    });
    let checks = vec![
        Check::below("[X,P] - i hbar on leading cutoff-1 block", e_comm, 1e-12),
        Check::below("T(1) - I", e_1, 1e-8),
        Check::below("T(x^2) - (X^2 + l^2/2)", e_x2, 1e-8),
        Check::below("T(p^2) - (P^2 + hbar^2/(2 l^2))", e_p2, 1e-8),
    ];
    Ok((result, checks))
}

fn projector_symbol(cfg: FockConfig) -> Result<(Value, Vec<Check>), FockError> {
    let l = cfg.l();
    let mut rows = Vec::new();
    for n in [cfg.cutoff(), 2 * cfg.cutoff()] {
        let c = FockConfig::new(n, cfg.hbar(), l)?;
        let pi = position_range_projector(-l, l, c)?;
        let inside = wigner_function(&pi, 0.0, 0.0)?;
        let outside = wigner_function(&pi, 3.0 * l, 0.0)?;
        rows.push((n, inside, outside));
    }
    let (n0, in0, out0) = rows[0];
    let (n1, in1, out1) = rows[1];
    let (e0, e3, f0, f3) = ((in0 - 1.0).abs(), out0.abs(), (in1 - 1.0).abs(), out1.abs());
    let result = json!({
        "interval": [-l, l],
        "symbols": rows.iter().map(|(n, a, b)| json!({"cutoff": n, "at_origin": a, "at_3l": b})).collect::<Vec<_>>(),
    });
    let checks = vec![
        Check::below(format!("cutoff {n0}: |W(0,0) - 1|"), e0, 5e-2),
        Check::below(format!("cutoff {n0}: |W(3l,0)|"), e3, 5e-2),
        Check::below(format!("cutoff {n1} vs {n0}: |W(0,0) - 1| ratio"), f0 / e0, 1.0),
        Check::below(format!("cutoff {n1} vs {n0}: |W(3l,0)| ratio"), f3 / e3, 1.0),
    ];
    Ok((result, checks))
}

fn bohmian(cfg: FockConfig) -> Result<(Value, Vec<Check>), FockError> {
    let (hbar, l) = (cfg.hbar(), cfg.l());
    let samples = 1601;
    let dx = 16.0 * l / (samples - 1) as f64;
    let xs: Vec<f64> = (0..samples).map(|i| -8.0 * l + i as f64 * dx).collect();
    let psi: Vec<Complex64> = fock_wavefunction(0, &xs, cfg).into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    let field = bohmian_momentum(&psi, xs[0], dx, cfg, BohmianOptions::default())?;
    let max_p = field.max_abs();
    let bohm_p2 = field.moment(2);
    let rho = FockMatrix::number_projector(0, cfg)?;
    let quantum = op_matrix("P^2", cfg).trace_product(&rho).re;
    let expected = hbar * hbar / (2.0 * l * l);
    let result = json!({
        "samples": samples,
        "max_abs_momentum": max_p,
        "bohmian_p2": bohm_p2,
        "quantum_p2": quantum,
        "expected_quantum_p2": expected,
        "inequality": bohm_p2 < quantum,
    });
    let checks = vec![
        Check::below("max |p(x)| on the ground state", max_p, 1e-12),
        Check::below("Bohmian <p^2>", bohm_p2.abs(), 1e-12),
        Check::below("|Tr(P^2 rho) - hbar^2/(2 l^2)|", (quantum - expected).abs(), 1e-8),
        Check::above("Tr(P^2 rho) - Bohmian <p^2>", quantum - bohm_p2, 0.0),
    ];
    Ok((result, checks))
}
