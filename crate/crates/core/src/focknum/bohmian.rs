use num_complex::Complex64;

use super::matrix::FockConfig;
use super::FockError;

/// Node handling for [`bohmian_momentum`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BohmianOptions {
    /// Samples with `|ψ| < threshold · max|ψ|` count as nodes.
    pub threshold: f64,
    /// Samples on each side of a node that are also excluded.
    pub exclusion_radius: usize,
}

impl Default for BohmianOptions {
    fn default() -> Self {
        BohmianOptions { threshold: 1e-10, exclusion_radius: 3 }
    }
}

/// Guidance-equation momentum on a uniform grid. Endpoints and samples
/// near nodes have no value.
#[derive(Debug, Clone, PartialEq)]
pub struct BohmianField {
    pub xs: Vec<f64>,
    pub momentum: Vec<Option<f64>>,
    /// `|ψ|²` at each sample.
    pub density: Vec<f64>,
    pub dx: f64,
}

impl BohmianField {
    /// `∫ |ψ|² p^k dx / ∫ |ψ|² dx` over the samples with a value.
    pub fn moment(&self, k: i32) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (p, rho) in self.momentum.iter().zip(&self.density) {
            if let Some(p) = p {
                num += rho * p.powi(k);
                den += rho;
            }
        }
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    }

    /// Largest `|p|` over the samples with a value.
    pub fn max_abs(&self) -> f64 {
        self.momentum.iter().flatten().fold(0.0, |acc, p| acc.max(p.abs()))
    }

    pub fn excluded(&self) -> usize {
        self.momentum.iter().filter(|p| p.is_none()).count()
    }
}

/// `p(x) = ħ Im(ψ′/ψ)` with `ψ′` from central differences.
///
/// `psi[i]` is the wavefunction at `x0 + i·dx`.
pub fn bohmian_momentum(
    psi: &[Complex64],
    x0: f64,
    dx: f64,
    config: FockConfig,
    opts: BohmianOptions,
) -> Result<BohmianField, FockError> {
    if psi.len() < 3 {
        return Err(FockError::InvalidWavefunction("need at least 3 samples".into()));
    }
    if !(dx > 0.0 && dx.is_finite()) {
        return Err(FockError::InvalidWavefunction(format!("grid spacing {dx} must be positive")));
    }
    if psi.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(FockError::InvalidWavefunction("non-finite sample".into()));
    }
    let peak = psi.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    if peak == 0.0 {
        return Err(FockError::InvalidWavefunction("wavefunction vanishes identically".into()));
    }
    let n = psi.len();
    let mut keep = vec![true; n];
    keep[0] = false;
    keep[n - 1] = false;
    let cut = opts.threshold * peak;
    for (i, z) in psi.iter().enumerate() {
        if z.norm() < cut {
            let lo = i.saturating_sub(opts.exclusion_radius);
            let hi = (i + opts.exclusion_radius).min(n - 1);
            keep[lo..=hi].iter_mut().for_each(|k| *k = false);
        }
    }
    let momentum = (0..n)
        .map(|i| {
            keep[i].then(|| {
                let d = (psi[i + 1] - psi[i - 1]) / (2.0 * dx);
                config.hbar() * (d / psi[i]).im
            })
        })
        .collect();
    Ok(BohmianField {
        xs: (0..n).map(|i| x0 + i as f64 * dx).collect(),
        momentum,
        density: psi.iter().map(|z| z.norm_sqr()).collect(),
        dx,
    })
}
