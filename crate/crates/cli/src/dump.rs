use std::str::FromStr;

use ksquant_core::focknum::{
    coherent_projector, husimi_grid, position_range_projector, wigner_symbol_grid, DensityMatrix, FockConfig,
    FockError, FockMatrix, PhaseGrid,
};

/// Operator to sample, as given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Fock(usize),
    Coherent(f64, f64),
    PositionProjector(f64, f64),
}

fn pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two comma-separated numbers, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

impl FromStr for StateSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, arg) = s.split_once(':').ok_or_else(|| format!("state `{s}` has no `kind:` prefix"))?;
        match kind {
            "fock" => arg.trim().parse().map(StateSpec::Fock).map_err(|e| format!("fock level `{arg}`: {e}")),
            "coherent" => pair(arg).map(|(x, p)| StateSpec::Coherent(x, p)),
            "position-projector" => pair(arg).map(|(lo, hi)| StateSpec::PositionProjector(lo, hi)),
            other => Err(format!("unknown state kind `{other}` (expected fock, coherent or position-projector)")),
        }
    }
}

impl StateSpec {
    pub fn matrix(&self, cfg: FockConfig) -> Result<FockMatrix, FockError> {
        match *self {
            StateSpec::Fock(n) => FockMatrix::number_projector(n, cfg),
            StateSpec::Coherent(x, p) => Ok(coherent_projector(x, p, cfg)),
            StateSpec::PositionProjector(lo, hi) => position_range_projector(lo, hi, cfg),
        }
    }
}

/// Closed interval `lo,hi` with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range(pub f64, pub f64);

impl FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = pair(s)?;
        if lo >= hi || !lo.is_finite() || !hi.is_finite() {
            return Err(format!("range `{s}` must satisfy lo < hi"));
        }
        Ok(Range(lo, hi))
    }
}

pub fn grid(x: Range, p: Range, points: usize) -> Result<PhaseGrid, FockError> {
    PhaseGrid::new(x.0, x.1, p.0, p.1, points, points)
}

/// Wigner values on the lattice; the Weyl symbol when `symbol` is set,
/// otherwise the density (symbol over `2πħ`).
pub fn wigner_rows(m: &FockMatrix, grid: &PhaseGrid, symbol: bool) -> Result<Vec<(f64, f64, f64)>, FockError> {
    let xs = grid.xs();
    let ps = grid.ps();
    let values = wigner_symbol_grid(m, &xs, &ps)?;
    let scale = if symbol { 1.0 } else { 1.0 / (2.0 * std::f64::consts::PI * m.config().hbar()) };
    Ok(xs
        .iter()
        .zip(values)
        .flat_map(|(&x, row)| ps.iter().zip(row).map(move |(&p, v)| (x, p, v * scale)).collect::<Vec<_>>())
        .collect())
}

pub fn husimi_rows(m: FockMatrix, grid: &PhaseGrid) -> Result<Vec<(f64, f64, f64)>, FockError> {
    husimi_grid(&DensityMatrix::new(m)?, grid)
}
