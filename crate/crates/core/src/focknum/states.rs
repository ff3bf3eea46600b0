use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::matrix::{FockConfig, FockMatrix, PhaseGrid};
use super::quadrature::hermite_functions;
use super::FockError;
use crate::phasepoly::PhasePoly;

const DENSITY_TOL: f64 = 1e-10;
const HUSIMI_FLOOR: f64 = -1e-12;
const COVERAGE_TOL: f64 = 1e-9;
const CHUNK: usize = 2048;

/// Fock components `e^{-|α|²/2} αⁿ/√n!`, without renormalization.
pub(crate) fn coherent_components(alpha: Complex64, out: &mut [Complex64]) {
    if out.is_empty() {
        return;
    }
    out[0] = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 1..out.len() {
        out[n] = out[n - 1] * alpha / (n as f64).sqrt();
    }
}

/// Coherent state `|(x, p)⟩` centered at the phase-space point `(x, p)`.
///
/// Logs a warning when `|α|² > cutoff/4`, where truncation loses norm.
pub fn coherent_state(x: f64, p: f64, config: FockConfig) -> DVector<Complex64> {
    let alpha = config.alpha(x, p);
    if alpha.norm_sqr() > config.cutoff() as f64 / 4.0 {
        log::warn!(
            "coherent state at ({x}, {p}) has |alpha|^2 = {:.3} > cutoff/4; truncation error is significant",
            alpha.norm_sqr()
        );
    }
    let mut v = DVector::zeros(config.cutoff());
    coherent_components(alpha, v.as_mut_slice());
    v
}

/// `|(x, p)⟩⟨(x, p)|`
pub fn coherent_projector(x: f64, p: f64, config: FockConfig) -> FockMatrix {
    FockMatrix::projector(&coherent_state(x, p, config), config).expect("matching dimension")
}

/// Position wavefunction `φ_n(q) = l^{-1/2} ψ_n(q/l)` sampled at `xs`.
pub fn fock_wavefunction(n: usize, xs: &[f64], config: FockConfig) -> Vec<f64> {
    let scale = config.l().powf(-0.5);
    xs.iter().map(|&q| hermite_functions(n + 1, q / config.l())[n] * scale).collect()
}

/// A validated density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    rho: FockMatrix,
}

impl DensityMatrix {
    pub fn new(rho: FockMatrix) -> Result<Self, FockError> {
        let dev = rho.hermitian_deviation();
        if dev > DENSITY_TOL {
            return Err(FockError::InvalidDensity(format!("not Hermitian (deviation {dev:e})")));
        }
        let tr = rho.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(FockError::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let herm = (rho.entries() + rho.entries().adjoint()) * Complex64::new(0.5, 0.0);
        let eig = herm.symmetric_eigenvalues();
        let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -DENSITY_TOL {
            return Err(FockError::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix { rho })
    }

    /// Pure state `|ψ⟩⟨ψ|` after normalizing `ψ`.
    pub fn pure(state: &DVector<Complex64>, config: FockConfig) -> Result<Self, FockError> {
        let norm = state.norm();
        if norm == 0.0 {
            return Err(FockError::InvalidDensity("zero state vector".into()));
        }
        DensityMatrix::new(FockMatrix::projector(&(state / Complex64::new(norm, 0.0)), config)?)
    }

    /// `Σ w_k |ψ_k⟩⟨ψ_k|` with normalized states and weights summing to one.
    pub fn mixture(parts: &[(f64, DVector<Complex64>)], config: FockConfig) -> Result<Self, FockError> {
        let mut acc = FockMatrix::zeros(config);
        for (w, psi) in parts {
            let norm = psi.norm();
            if norm == 0.0 {
                return Err(FockError::InvalidDensity("zero state vector".into()));
            }
            let proj = FockMatrix::projector(&(psi / Complex64::new(norm, 0.0)), config)?;
            acc = acc.sum(&proj.scaled(Complex64::new(*w, 0.0)));
        }
        DensityMatrix::new(acc)
    }

    pub fn matrix(&self) -> &FockMatrix {
        &self.rho
    }

    pub fn config(&self) -> FockConfig {
        self.rho.config()
    }
}

fn check_floor(q: f64) -> Result<f64, FockError> {
    if q < HUSIMI_FLOOR {
        return Err(FockError::InvalidDensity(format!("negative Husimi value {q:e}")));
    }
    Ok(q.max(0.0))
}

/// Husimi function `Q(x,p) = ⟨(x,p)|ρ|(x,p)⟩ / (2πħ)`, normalized for `dx dp`.
pub fn husimi(rho: &DensityMatrix, x: f64, p: f64) -> Result<f64, FockError> {
    let cfg = rho.config();
    let mut v = DVector::zeros(cfg.cutoff());
    coherent_components(cfg.alpha(x, p), v.as_mut_slice());
    let val = (v.adjoint() * rho.matrix().entries() * &v)[(0, 0)].re;
    check_floor(val / (2.0 * PI * cfg.hbar()))
}

/// Husimi values at a batch of points, computed blockwise.
fn husimi_batch(rho: &DensityMatrix, pts: &[(f64, f64)]) -> Result<Vec<f64>, FockError> {
    let cfg = rho.config();
    let n = cfg.cutoff();
    let norm = 1.0 / (2.0 * PI * cfg.hbar());
    let mut out = Vec::with_capacity(pts.len());
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for chunk in pts.chunks(CHUNK) {
        let mut z = DMatrix::<Complex64>::zeros(n, chunk.len());
        for (k, &(x, p)) in chunk.iter().enumerate() {
            coherent_components(cfg.alpha(x, p), &mut col);
            z.column_mut(k).copy_from_slice(&col);
        }
        let rz = rho.matrix().entries() * &z;
        for k in 0..chunk.len() {
            let q = z.column(k).dotc(&rz.column(k)).re * norm;
            out.push(check_floor(q)?);
        }
    }
    Ok(out)
}

/// Husimi values on the uniform lattice of `grid`, as `(x, p, Q)` rows.
pub fn husimi_grid(rho: &DensityMatrix, grid: &PhaseGrid) -> Result<Vec<(f64, f64, f64)>, FockError> {
    let pts = grid.points();
    let q = husimi_batch(rho, &pts)?;
    Ok(pts.iter().zip(q).map(|(&(x, p), v)| (x, p, v)).collect())
}

/// `∫ A(x,p) Q(x,p) dx dp` by tensor Gauss-Legendre quadrature on `grid`.
///
/// Fails when the grid misses Husimi mass (`|∫Q − 1| > 1e-9`).
pub fn husimi_expectation(a: &PhasePoly, rho: &DensityMatrix, grid: &PhaseGrid) -> Result<Complex64, FockError> {
    Ok(husimi_expectations(std::slice::from_ref(a), rho, grid)?[0])
}

/// [`husimi_expectation`] for several observables sharing one Husimi evaluation.
pub fn husimi_expectations(
    observables: &[PhasePoly],
    rho: &DensityMatrix,
    grid: &PhaseGrid,
) -> Result<Vec<Complex64>, FockError> {
    let cfg = rho.config();
    let nodes = grid.quadrature();
    let pts: Vec<(f64, f64)> = nodes.iter().map(|&(x, p, _)| (x, p)).collect();
    let q = husimi_batch(rho, &pts)?;
    let mass: f64 = nodes.iter().zip(&q).map(|(&(_, _, w), qv)| w * qv).sum();
    if (mass - 1.0).abs() > COVERAGE_TOL {
        return Err(FockError::InsufficientCoverage { mass });
    }
    Ok(observables
        .iter()
        .map(|a| {
            let coeffs = a.numeric_coeffs(cfg.hbar(), cfg.l());
            let mut acc = Complex64::new(0.0, 0.0);
            for (&(x, p, w), qv) in nodes.iter().zip(&q) {
                let av: Complex64 = coeffs.iter().map(|&((j, k), c)| c * x.powi(j as i32) * p.powi(k as i32)).sum();
                acc += av * (w * qv);
            }
            acc
        })
        .collect())
}
