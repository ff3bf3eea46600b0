//! Exact Weyl and anti-Wick quantization of phase-space polynomials, a
//! truncated-Fock numeric backend, and a Kochen-Specker colorability solver.
//!
//! The symbolic side ([`scalar`], [`phasepoly`], [`opalg`], [`quantmaps`])
//! works in exact arithmetic so operator identities compare by equality.
//! [`focknum`] checks the same identities, and the integral ones that have
//! no symbolic form, numerically at a finite number-basis cutoff.
//! [`kscolor`] decides whether a finite set of rays admits a {0,1} value
//! assignment with exactly one 1 in every orthonormal basis.

pub mod focknum;
pub mod kscolor;
pub mod opalg;
pub mod parse;
pub mod phasepoly;
mod print;
pub mod quantmaps;
pub mod scalar;

pub use opalg::{
    adjoint, canonicalize, change_alphabet, commutator, op_mul, parse_op_expr, Alphabet, Letter, OpError, OpPoly,
    OrderTag,
};
pub use parse::{parse_phase_expr, ParseError, ParseErrorKind};
pub use phasepoly::{poly_mul, PhasePoly};
pub use quantmaps::{
    antiwick_quantize, antiwick_symbol, ks2b_report, quantize, symbol, weierstrass_transform, weyl_quantize,
    weyl_symbol, DiscrepancyReport, Scheme,
};
pub use scalar::{EvalError, GaussRat, Scalar};

/// Owned-operand forwarding for types that implement the ring operators on references.
#[macro_export]
#[doc(hidden)]
macro_rules! forward_ring_ops {
    ($t:ty) => {
        impl ::std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl ::std::ops::Add<&$t> for $t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                &self + rhs
            }
        }
        impl ::std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl ::std::ops::Sub<&$t> for $t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                &self - rhs
            }
        }
        impl ::std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl ::std::ops::Mul<&$t> for $t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                &self * rhs
            }
        }
        impl ::std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
