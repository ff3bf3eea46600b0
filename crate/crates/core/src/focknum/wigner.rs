use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::{FockConfig, FockMatrix};
use super::quadrature::{composite_gauss_legendre, hermite_functions_into};
use super::FockError;

const HERMITIAN_TOL: f64 = 1e-10;
const IMAG_TOL: f64 = 1e-9;
const CONVERGENCE_TOL: f64 = 1e-8;
const ORDER: usize = 24;
const CHECK_ORDER: usize = 16;
/// Margin, in units of `l`, past the classical turning point of the top level.
const TAIL_MARGIN: f64 = 10.0;

/// Half-width of the region where the retained Hermite functions are non-negligible.
fn support(config: FockConfig) -> f64 {
    config.l() * ((2.0 * config.cutoff() as f64 + 1.0).sqrt() + TAIL_MARGIN)
}

/// Largest local wavenumber of the retained Hermite functions.
fn max_wavenumber(config: FockConfig) -> f64 {
    (2.0 * config.cutoff() as f64 + 1.0).sqrt() / config.l()
}

/// Columns `φ_n(q_i)` for all retained levels, as a complex matrix.
fn hermite_columns(qs: &[f64], config: FockConfig) -> DMatrix<Complex64> {
    let n = config.cutoff();
    let scale = config.l().powf(-0.5);
    let mut buf = vec![0.0; n];
    let mut out = DMatrix::<Complex64>::zeros(n, qs.len());
    for (k, &q) in qs.iter().enumerate() {
        hermite_functions_into(q / config.l(), &mut buf);
        for (r, v) in buf.iter().enumerate() {
            out[(r, k)] = Complex64::new(v * scale, 0.0);
        }
    }
    out
}

/// Samples `f(y) = ⟨x+y|M|x−y⟩` on a composite rule in `y`.
fn off_diagonal_kernel(m: &FockMatrix, x: f64, p_max: f64, order: usize) -> Vec<(f64, f64, Complex64)> {
    let cfg = m.config();
    let reach = support(cfg) - x.abs();
    if reach <= 0.0 {
        return Vec::new();
    }
    let k = 2.0 * max_wavenumber(cfg) + 2.0 * p_max / cfg.hbar();
    let width = (2.0 * PI / k).min(cfg.l());
    let rule = composite_gauss_legendre(-reach, reach, width, order);
    let plus: Vec<f64> = rule.iter().map(|(y, _)| x + y).collect();
    let minus: Vec<f64> = rule.iter().map(|(y, _)| x - y).collect();
    let phi_plus = hermite_columns(&plus, cfg);
    let phi_minus = hermite_columns(&minus, cfg);
    let m_phi = m.entries() * &phi_minus;
    rule.iter()
        .enumerate()
        .map(|(i, &(y, w))| {
            let v = phi_plus.column(i).dot(&m_phi.column(i));
            (y, w, v)
        })
        .collect()
}

fn transform(kernel: &[(f64, f64, Complex64)], p: f64, hbar: f64) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for &(y, w, f) in kernel {
        let phase = Complex64::from_polar(1.0, -2.0 * p * y / hbar);
        acc += phase * f * w;
        scale += (f * w).norm();
    }
    (acc * 2.0, 2.0 * scale)
}

/// Weyl symbol `2 ∫ e^{-2ipy/ħ} ⟨x+y|M|x−y⟩ dy` on the lattice `xs × ps`.
///
/// Entry `[i][j]` is the value at `(xs[i], ps[j])`. The kernel is computed
/// once per `x` and reused for every `p`.
pub fn wigner_symbol_grid(m: &FockMatrix, xs: &[f64], ps: &[f64]) -> Result<Vec<Vec<f64>>, FockError> {
    let dev = m.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(FockError::NotHermitian { deviation: dev });
    }
    let cfg = m.config();
    let p_max = ps.iter().fold(0.0f64, |acc, p| acc.max(p.abs()));
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let fine = off_diagonal_kernel(m, x, p_max, ORDER);
        let coarse = off_diagonal_kernel(m, x, p_max, CHECK_ORDER);
        let mut row = Vec::with_capacity(ps.len());
        for &p in ps {
            let (w, scale) = transform(&fine, p, cfg.hbar());
            let (wc, _) = transform(&coarse, p, cfg.hbar());
            let tol_scale = scale.max(1.0);
            let diff = (w - wc).norm();
            if diff > CONVERGENCE_TOL * tol_scale {
                return Err(FockError::NonConvergence { difference: diff });
            }
            if w.im.abs() > IMAG_TOL * tol_scale {
                return Err(FockError::NonReal { residue: w.im.abs() });
            }
            row.push(w.re);
        }
        out.push(row);
    }
    Ok(out)
}

/// Weyl symbol of `M` at one point. The identity maps to 1.
pub fn wigner_function(m: &FockMatrix, x: f64, p: f64) -> Result<f64, FockError> {
    Ok(wigner_symbol_grid(m, &[x], &[p])?[0][0])
}

/// Wigner quasi-probability density of a state: Weyl symbol over `2πħ`,
/// so that it integrates to `Tr M` over `dx dp`.
pub fn wigner_density(m: &FockMatrix, x: f64, p: f64) -> Result<f64, FockError> {
    Ok(wigner_function(m, x, p)? / (2.0 * PI * m.config().hbar()))
}

/// `Π_jk = ∫_lo^hi φ_j(q) φ_k(q) dq`: the position-range projector
/// compressed to the retained levels. Infinite bounds are allowed.
pub fn position_range_projector(lo: f64, hi: f64, config: FockConfig) -> Result<FockMatrix, FockError> {
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(FockError::EmptyInterval { lo, hi });
    }
    let q = support(config);
    let a = lo.max(-q);
    let b = hi.min(q);
    let n = config.cutoff();
    if a >= b {
        return FockMatrix::new(DMatrix::zeros(n, n), config);
    }
    let width = (PI / max_wavenumber(config)).min(config.l());
    let rule = composite_gauss_legendre(a, b, width, ORDER);
    let qs: Vec<f64> = rule.iter().map(|(x, _)| *x).collect();
    let phi = hermite_columns(&qs, config);
    let mut weighted = phi.clone();
    for (k, (_, w)) in rule.iter().enumerate() {
        weighted.column_mut(k).scale_mut(*w);
    }
    FockMatrix::new(weighted * phi.transpose(), config)
}
