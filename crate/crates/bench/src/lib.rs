//! Benchmark inputs shared by the criterion targets in `benches/`.

use ksquant_core::{parse_phase_expr, PhasePoly};

/// `(x + p)^n`, which touches every monomial of degree `n`.
pub fn dense_poly(n: u32) -> PhasePoly {
    parse_phase_expr("x + p").expect("fixed expression").pow(n)
}
