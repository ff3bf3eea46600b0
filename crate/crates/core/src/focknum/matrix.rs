use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::quadrature::gauss_legendre_on;
use super::FockError;
use crate::opalg::{Letter, OpPoly};

/// Number-basis cutoff and the physical scales ħ and `l = √(ħ/(mω))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FockConfig {
    cutoff: usize,
    hbar: f64,
    l: f64,
}

impl FockConfig {
    pub fn new(cutoff: usize, hbar: f64, l: f64) -> Result<Self, FockError> {
        if cutoff < 2 {
            return Err(FockError::InvalidConfig(format!("cutoff {cutoff} < 2")));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(FockError::InvalidConfig(format!("hbar = {hbar} must be positive")));
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(FockError::InvalidConfig(format!("l = {l} must be positive")));
        }
        Ok(FockConfig { cutoff, hbar, l })
    }

    /// Units ħ = l = 1.
    pub fn unit(cutoff: usize) -> Result<Self, FockError> {
        FockConfig::new(cutoff, 1.0, 1.0)
    }

    pub fn from_mass_frequency(cutoff: usize, hbar: f64, mass: f64, omega: f64) -> Result<Self, FockError> {
        if !(mass > 0.0 && omega > 0.0) {
            return Err(FockError::InvalidConfig("mass and frequency must be positive".into()));
        }
        FockConfig::new(cutoff, hbar, (hbar / (mass * omega)).sqrt())
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    /// Size of the block on which truncated results are trusted.
    pub fn trusted_block(&self) -> usize {
        self.cutoff / 2
    }

    /// Coherent-state label `α = (x/l + i l p/ħ)/√2`.
    pub fn alpha(&self, x: f64, p: f64) -> Complex64 {
        Complex64::new(x / self.l, self.l * p / self.hbar) / SQRT_2
    }
}

/// Dense operator on the truncated number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix {
    entries: DMatrix<Complex64>,
    config: FockConfig,
}

impl FockMatrix {
    pub fn new(entries: DMatrix<Complex64>, config: FockConfig) -> Result<Self, FockError> {
        if entries.nrows() != config.cutoff || entries.ncols() != config.cutoff {
            return Err(FockError::DimensionMismatch(entries.nrows(), config.cutoff));
        }
        Ok(FockMatrix { entries, config })
    }

    pub(crate) fn from_parts(entries: DMatrix<Complex64>, config: FockConfig) -> Self {
        debug_assert_eq!(entries.nrows(), config.cutoff);
        FockMatrix { entries, config }
    }

    pub fn zeros(config: FockConfig) -> Self {
        FockMatrix::from_parts(DMatrix::zeros(config.cutoff, config.cutoff), config)
    }

    pub fn identity(config: FockConfig) -> Self {
        FockMatrix::from_parts(DMatrix::identity(config.cutoff, config.cutoff), config)
    }

    /// `|ψ⟩⟨ψ|` for a state vector of length `cutoff`.
    pub fn projector(state: &DVector<Complex64>, config: FockConfig) -> Result<Self, FockError> {
        if state.len() != config.cutoff {
            return Err(FockError::DimensionMismatch(state.len(), config.cutoff));
        }
        Ok(FockMatrix::from_parts(state * state.adjoint(), config))
    }

    /// `|n⟩⟨n|`
    pub fn number_projector(n: usize, config: FockConfig) -> Result<Self, FockError> {
        if n >= config.cutoff {
            return Err(FockError::DimensionMismatch(n, config.cutoff));
        }
        let mut m = DMatrix::zeros(config.cutoff, config.cutoff);
        m[(n, n)] = Complex64::new(1.0, 0.0);
        Ok(FockMatrix::from_parts(m, config))
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn config(&self) -> FockConfig {
        self.config
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Top-left `k × k` block.
    pub fn leading(&self, k: usize) -> DMatrix<Complex64> {
        let k = k.min(self.dim());
        self.entries.view((0, 0), (k, k)).into_owned()
    }

    /// `max |M − M†|` over all entries.
    pub fn hermitian_deviation(&self) -> f64 {
        let diff = &self.entries - self.entries.adjoint();
        diff.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Frobenius distance between the leading `k × k` blocks.
    pub fn frobenius_distance(&self, other: &FockMatrix, k: usize) -> f64 {
        (self.leading(k) - other.leading(k)).norm()
    }

    /// Largest entry-wise deviation between the leading `k × k` blocks.
    pub fn max_abs_distance(&self, other: &FockMatrix, k: usize) -> f64 {
        (self.leading(k) - other.leading(k)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn product(&self, other: &FockMatrix) -> FockMatrix {
        FockMatrix::from_parts(&self.entries * &other.entries, self.config)
    }

    pub fn sum(&self, other: &FockMatrix) -> FockMatrix {
        FockMatrix::from_parts(&self.entries + &other.entries, self.config)
    }

    pub fn scaled(&self, c: Complex64) -> FockMatrix {
        FockMatrix::from_parts(&self.entries * c, self.config)
    }

    /// `[self, other]`
    pub fn commutator(&self, other: &FockMatrix) -> FockMatrix {
        FockMatrix::from_parts(&self.entries * &other.entries - &other.entries * &self.entries, self.config)
    }

    /// `Tr(self · other)`
    pub fn trace_product(&self, other: &FockMatrix) -> Complex64 {
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.entries[(i, k)] * other.entries[(k, i)];
            }
        }
        acc
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }
}

/// Ladder, position and momentum matrices at one cutoff.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub a: FockMatrix,
    pub adag: FockMatrix,
    pub x: FockMatrix,
    pub p: FockMatrix,
}

impl Ladder {
    pub fn letter(&self, l: Letter) -> &FockMatrix {
        match l {
            Letter::X => &self.x,
            Letter::P => &self.p,
            Letter::A => &self.a,
            Letter::Ad => &self.adag,
        }
    }
}

/// `a|n⟩ = √n |n−1⟩`, with `X = l(a + a†)/√2` and `P = iħ(a† − a)/(l√2)`.
pub fn build_ladder(config: FockConfig) -> Ladder {
    let n = config.cutoff;
    let mut a = DMatrix::<Complex64>::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    let adag = a.adjoint();
    let x = (&a + &adag) * Complex64::new(config.l / SQRT_2, 0.0);
    let p = (&adag - &a) * Complex64::new(0.0, config.hbar / (config.l * SQRT_2));
    Ladder {
        a: FockMatrix::from_parts(a, config),
        adag: FockMatrix::from_parts(adag, config),
        x: FockMatrix::from_parts(x, config),
        p: FockMatrix::from_parts(p, config),
    }
}

/// Evaluate an operator polynomial on truncated matrices.
///
/// Entries within `degree` levels of the cutoff carry truncation error.
pub fn op_to_matrix(op: &OpPoly, config: FockConfig) -> FockMatrix {
    let ladder = build_ladder(config);
    let n = config.cutoff;
    let mut acc = DMatrix::<Complex64>::zeros(n, n);
    for (word, c) in op.terms() {
        let coeff = c.to_complex(config.hbar, config.l);
        let mut m = DMatrix::<Complex64>::identity(n, n);
        for &letter in word {
            m = &m * ladder.letter(letter).entries();
        }
        acc += m * coeff;
    }
    FockMatrix::from_parts(acc, config)
}

/// Rectangular phase-space region with a node count per axis.
///
/// Dumps sample it on a uniform lattice; integrals use a tensor-product
/// Gauss-Legendre rule with `nx × np` nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub nx: usize,
    pub np: usize,
}

impl PhaseGrid {
    pub fn new(x_min: f64, x_max: f64, p_min: f64, p_max: f64, nx: usize, np: usize) -> Result<Self, FockError> {
        if !(x_min < x_max && p_min < p_max) {
            return Err(FockError::InvalidGrid("bounds must be increasing".into()));
        }
        if nx < 2 || np < 2 {
            return Err(FockError::InvalidGrid("need at least 2 points per axis".into()));
        }
        if ![x_min, x_max, p_min, p_max].iter().all(|v| v.is_finite()) {
            return Err(FockError::InvalidGrid("bounds must be finite".into()));
        }
        Ok(PhaseGrid { x_min, x_max, p_min, p_max, nx, np })
    }

    /// Square grid centered on `(x0, p0)` with half-widths `hx`, `hp`.
    pub fn centered(x0: f64, p0: f64, hx: f64, hp: f64, nx: usize, np: usize) -> Result<Self, FockError> {
        PhaseGrid::new(x0 - hx, x0 + hx, p0 - hp, p0 + hp, nx, np)
    }

    /// Grid that resolves coherent-state matrix elements up to Fock level
    /// `levels` around the origin.
    pub fn covering(config: FockConfig, levels: usize) -> PhaseGrid {
        let reach = (levels as f64).sqrt() + 7.0;
        let hx = SQRT_2 * config.l * reach;
        let hp = SQRT_2 * config.hbar / config.l * reach;
        let nodes = (8.0 * reach).ceil() as usize + 40;
        PhaseGrid::centered(0.0, 0.0, hx, hp, nodes, nodes).expect("valid covering grid")
    }

    pub fn xs(&self) -> Vec<f64> {
        lattice(self.x_min, self.x_max, self.nx)
    }

    pub fn ps(&self) -> Vec<f64> {
        lattice(self.p_min, self.p_max, self.np)
    }

    /// Uniform lattice points in row-major order (x outer, p inner).
    pub fn points(&self) -> Vec<(f64, f64)> {
        let ps = self.ps();
        self.xs().into_iter().flat_map(|x| ps.iter().map(move |&p| (x, p))).collect()
    }

    /// Tensor Gauss-Legendre nodes `(x, p, weight)`.
    pub fn quadrature(&self) -> Vec<(f64, f64, f64)> {
        let gx = gauss_legendre_on(self.x_min, self.x_max, self.nx);
        let gp = gauss_legendre_on(self.p_min, self.p_max, self.np);
        gx.iter().flat_map(|&(x, wx)| gp.iter().map(move |&(p, wp)| (x, p, wx * wp))).collect()
    }
}

fn lattice(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}
