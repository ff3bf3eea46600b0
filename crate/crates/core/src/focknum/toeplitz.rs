use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{FockConfig, FockMatrix, PhaseGrid};
use super::states::coherent_components;
use super::FockError;
use crate::phasepoly::PhasePoly;

const IDENTITY_TOL: f64 = 1e-7;
const CHUNK: usize = 2048;

/// `(1/2πħ) ∫ A(x,p) |(x,p)⟩⟨(x,p)| dx dp` by tensor Gauss-Legendre on `grid`.
///
/// The same rule applied to `A = 1` must reproduce the identity on the
/// leading `cutoff/2` block, otherwise the grid is reported as too coarse.
pub fn toeplitz_quantize(a: &PhasePoly, config: FockConfig, grid: &PhaseGrid) -> Result<FockMatrix, FockError> {
    let coeffs = a.numeric_coeffs(config.hbar(), config.l());
    let f = |x: f64, p: f64| -> Complex64 {
        coeffs.iter().map(|&((j, k), c)| c * x.powi(j as i32) * p.powi(k as i32)).sum()
    };
    toeplitz_quantize_fn(f, config, grid, true)
}

/// Toeplitz operator of an arbitrary phase-space function.
///
/// With `check_identity` off, no coverage check is made; use this for
/// functions concentrated on a small region.
pub fn toeplitz_quantize_fn<F>(
    f: F,
    config: FockConfig,
    grid: &PhaseGrid,
    check_identity: bool,
) -> Result<FockMatrix, FockError>
where
    F: Fn(f64, f64) -> Complex64,
{
    let n = config.cutoff();
    let norm = 1.0 / (2.0 * PI * config.hbar());
    let nodes = grid.quadrature();
    let mut acc = DMatrix::<Complex64>::zeros(n, n);
    let mut ident = DMatrix::<Complex64>::zeros(n, n);
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for chunk in nodes.chunks(CHUNK) {
        let mut z = DMatrix::<Complex64>::zeros(n, chunk.len());
        let mut za = DMatrix::<Complex64>::zeros(n, chunk.len());
        let mut zw = DMatrix::<Complex64>::zeros(n, chunk.len());
        for (k, &(x, p, w)) in chunk.iter().enumerate() {
            coherent_components(config.alpha(x, p), &mut col);
            z.column_mut(k).copy_from_slice(&col);
            let weight = w * norm;
            let fa = f(x, p) * weight;
            for (r, c) in col.iter().enumerate() {
                za[(r, k)] = c * fa;
                zw[(r, k)] = c * weight;
            }
        }
        let zh = z.adjoint();
        acc += &za * &zh;
        if check_identity {
            ident += &zw * &zh;
        }
    }
    if check_identity {
        let k = config.trusted_block();
        let dev = (ident.view((0, 0), (k, k)) - DMatrix::<Complex64>::identity(k, k))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if dev > IDENTITY_TOL {
            return Err(FockError::GridTooCoarse { deviation: dev });
        }
    }
    FockMatrix::new(acc, config)
}

/// `2πħ` times a normalized Gaussian centered at `(x0, p0)` with widths
/// `σ` in `x` and `σħ/l²` in `p`; at `σ = l` this is `2πħ` times the
/// coherent-state Gaussian. As `σ → 0` it tends to the normalized delta.
pub fn gaussian_bump(x0: f64, p0: f64, sigma: f64, config: FockConfig) -> impl Fn(f64, f64) -> Complex64 {
    let sx = sigma;
    let sp = sigma * config.hbar() / (config.l() * config.l());
    let pref = 2.0 * PI * config.hbar() / (PI * sx * sp);
    move |x: f64, p: f64| {
        let dx = (x - x0) / sx;
        let dp = (p - p0) / sp;
        Complex64::new(pref * (-dx * dx - dp * dp).exp(), 0.0)
    }
}
