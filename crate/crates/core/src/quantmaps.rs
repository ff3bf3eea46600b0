//! Weyl and anti-Wick quantization of polynomials, their inverse symbol
//! maps, the Weierstrass transform between the two symbol calculi, and the
//! product-rule discrepancy report.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::opalg::{canonicalize, change_alphabet, commutator, op_mul, Alphabet, OpPoly, OrderTag};
use crate::phasepoly::{bivariate_mul, Exponents, PhasePoly};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Scheme {
    Weyl,
    AntiWick,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Weyl => "weyl",
            Scheme::AntiWick => "antiwick",
        })
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "weyl" => Ok(Scheme::Weyl),
            "antiwick" | "anti-wick" | "coherent" | "toeplitz" => Ok(Scheme::AntiWick),
            other => Err(format!("unknown scheme `{other}` (expected weyl or antiwick)")),
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn int_scalar(n: BigInt) -> Scalar {
    Scalar::from_rational(BigRational::from_integer(n))
}

/// Weyl image of `x^j p^k` via `2^{-j} Σ_r C(j,r) X^r P^k X^{j-r}`, in standard order.
pub fn weyl_monomial(j: u32, k: u32) -> OpPoly {
    let pk = OpPoly::p().pow(k);
    let mut acc = OpPoly::zero(Alphabet::XP);
    for r in 0..=j {
        let left = OpPoly::x().pow(r);
        let right = OpPoly::x().pow(j - r);
        let word = op_mul(&op_mul(&left, &pk).expect("XP"), &right).expect("XP");
        acc = &acc + &word.scale(&int_scalar(binomial(j, r)));
    }
    let two_pow = Scalar::from_int(2).pow(-(j as i32)).expect("2 is invertible");
    acc.scale(&two_pow)
}

/// Weyl quantization: linear, fully symmetrized in `X` and `P`.
pub fn weyl_quantize(a: &PhasePoly) -> OpPoly {
    let mut out = OpPoly::zero(Alphabet::XP);
    for (&(j, k), c) in a.terms() {
        out = &out + &weyl_monomial(j, k).scale(c);
    }
    out
}

/// Weyl symbol of an operator polynomial.
///
/// The Weyl image of `x^j p^k` is `X^j P^k` plus terms of strictly lower
/// total degree, so peeling off the highest standard-ordered term inverts
/// the map exactly.
pub fn weyl_symbol(op: &OpPoly) -> PhasePoly {
    let mut rest =
        canonicalize(&change_alphabet(op, Alphabet::XP), OrderTag::Standard).expect("standard order is valid on XP");
    let mut symbol = PhasePoly::zero();
    while let Some(((j, k), c)) = leading_standard_term(&rest) {
        symbol = &symbol + &PhasePoly::monomial(j, k, c.clone());
        rest = &rest - &weyl_monomial(j, k).scale(&c);
    }
    symbol
}

fn leading_standard_term(op: &OpPoly) -> Option<(Exponents, Scalar)> {
    op.ordered_terms(OrderTag::Standard).expect("XP standard").into_iter().max_by_key(|((j, k), _)| (j + k, *j))
}

fn half_sqrt2() -> Scalar {
    &Scalar::ratio(1, 2) * &Scalar::sqrt2()
}

/// `x` and `p` as polynomials in `(α, α*)`, keyed by `(power of α, power of α*)`,
/// for `α = (x/l + i l p/ħ)/√2`.
fn alpha_images() -> (BTreeMap<Exponents, Scalar>, BTreeMap<Exponents, Scalar>) {
    let xl = &half_sqrt2() * &Scalar::l();
    let pc = &(&(&half_sqrt2() * &Scalar::i()) * &Scalar::hbar()) * &Scalar::l().inverse().expect("l");
    let x = BTreeMap::from([((1, 0), xl.clone()), ((0, 1), xl)]);
    // p = iħ(α* − α)/(√2 l)
    let p = BTreeMap::from([((1, 0), -&pc), ((0, 1), pc)]);
    (x, p)
}

fn bivariate_pow(base: &BTreeMap<Exponents, Scalar>, n: u32) -> BTreeMap<Exponents, Scalar> {
    let mut acc = BTreeMap::from([((0, 0), Scalar::one())]);
    for _ in 0..n {
        acc = bivariate_mul(&acc, base);
    }
    acc
}

/// Anti-Wick (coherent-state) quantization: substitute `x, p` by their
/// `α, α*` expressions, expand, and read `α^m (α*)^n` as `a^m (a†)^n`.
pub fn antiwick_quantize(a: &PhasePoly) -> OpPoly {
    let (xi, pi) = alpha_images();
    let mut out = OpPoly::zero(Alphabet::Ladder);
    for (&(j, k), c) in a.terms() {
        let expanded = bivariate_mul(&bivariate_pow(&xi, j), &bivariate_pow(&pi, k));
        for ((m, n), s) in expanded {
            out = &out + &OpPoly::antinormal_monomial(m, n, &s * c);
        }
    }
    out
}

/// Anti-Wick symbol: anti-normally order, then read `a^m (a†)^n` as `α^m (α*)^n`.
pub fn antiwick_symbol(op: &OpPoly) -> PhasePoly {
    let ladder = canonicalize(&change_alphabet(op, Alphabet::Ladder), OrderTag::AntiNormal)
        .expect("anti-normal order is valid on ladder");
    let linv = Scalar::l().inverse().expect("l");
    let alpha = PhasePoly::from_terms([
        ((1, 0), &half_sqrt2() * &linv),
        ((0, 1), &(&half_sqrt2() * &Scalar::i()) * &(&Scalar::l() * &Scalar::hbar().inverse().expect("hbar"))),
    ]);
    let alpha_bar = alpha.conj();
    let mut out = PhasePoly::zero();
    for ((m, n), c) in ladder.ordered_terms(OrderTag::AntiNormal).expect("ladder anti-normal") {
        out = &out + &(&alpha.pow(m) * &alpha_bar.pow(n)).scale(&c);
    }
    out
}

/// Even central moments `E[U^r]` of a centered Gaussian with the given variance.
fn gaussian_moment(r: u32, variance: &Scalar) -> Scalar {
    if r % 2 == 1 {
        return Scalar::zero();
    }
    let t = r / 2;
    let double_fact: i64 = (1..=t as i64).map(|i| 2 * i - 1).product();
    &Scalar::from_int(double_fact) * &variance.pow(t as i32).expect("nonnegative power")
}

/// Convolution with the coherent-state Gaussian (`x`-variance `l²/2`,
/// `p`-variance `ħ²/(2l²)`), computed exactly from Gaussian moments.
pub fn weierstrass_transform(a: &PhasePoly) -> PhasePoly {
    let half = Scalar::ratio(1, 2);
    let var_x = &half * &Scalar::l().pow(2).expect("l");
    let var_p = &half * &(&Scalar::hbar().pow(2).expect("hbar") * &Scalar::l().pow(-2).expect("l"));
    let mut out = PhasePoly::zero();
    for (&(j, k), c) in a.terms() {
        for r in (0..=j).step_by(2) {
            let mx = &gaussian_moment(r, &var_x) * &int_scalar(binomial(j, r));
            for s in (0..=k).step_by(2) {
                let mp = &gaussian_moment(s, &var_p) * &int_scalar(binomial(k, s));
                out = &out + &PhasePoly::monomial(j - r, k - s, &(&mx * &mp) * c);
            }
        }
    }
    out
}

pub fn quantize(a: &PhasePoly, scheme: Scheme) -> OpPoly {
    match scheme {
        Scheme::Weyl => weyl_quantize(a),
        Scheme::AntiWick => antiwick_quantize(a),
    }
}

pub fn symbol(op: &OpPoly, scheme: Scheme) -> PhasePoly {
    match scheme {
        Scheme::Weyl => weyl_symbol(op),
        Scheme::AntiWick => antiwick_symbol(op),
    }
}

/// Whether the symbol of a product of quantized variables is the product of the variables.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyReport {
    pub scheme: Scheme,
    pub a: PhasePoly,
    pub b: PhasePoly,
    /// Symbol of `Â·B̂` under the same scheme.
    pub product_symbol: PhasePoly,
    /// `A·B`
    pub classical_product: PhasePoly,
    /// `product_symbol − classical_product`
    pub discrepancy: PhasePoly,
    /// Whether `[Â, B̂] = 0`.
    pub commute: bool,
}

pub fn ks2b_report(a: &PhasePoly, b: &PhasePoly, scheme: Scheme) -> DiscrepancyReport {
    let qa = quantize(a, scheme);
    let qb = quantize(b, scheme);
    let product = op_mul(&qa, &qb).expect("same scheme gives same alphabet");
    let product_symbol = symbol(&product, scheme);
    let classical_product = a * b;
    let discrepancy = &product_symbol - &classical_product;
    let commute = commutator(&qa, &qb).expect("same alphabet").is_zero();
    DiscrepancyReport { scheme, a: a.clone(), b: b.clone(), product_symbol, classical_product, discrepancy, commute }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::parse_op_expr;
    use crate::parse::parse_phase_expr;

    fn pp(s: &str) -> PhasePoly {
        parse_phase_expr(s).unwrap()
    }

    fn op(s: &str) -> OpPoly {
        parse_op_expr(s).unwrap()
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_quantize(&pp("x*p")), op("1/2 (X P + P X)"));
        assert_eq!(weyl_quantize(&pp("x^2*p^2")), op("X^2 P^2 - 2 i hbar X P - hbar^2/2"));
        for m in 0..6 {
            assert_eq!(weyl_quantize(&pp("x").pow(m)), OpPoly::x().pow(m));
        }
    }

    #[test]
    fn weyl_symbol_examples() {
        assert_eq!(weyl_symbol(&op("1/2 (X P + P X)")), pp("x p"));
        let s = op("1/2 (X P + P X)");
        assert_eq!(weyl_symbol(&(&s * &s)), pp("x^2 p^2 + hbar^2/4"));
        assert_eq!(weyl_symbol(&op("X^2")), pp("x^2"));
        // standard-ordered X P carries the half commutator
        assert_eq!(weyl_symbol(&op("X P")), pp("x p + i hbar/2"));
    }

    #[test]
    fn antiwick_examples() {
        assert_eq!(antiwick_quantize(&pp("x^2")), op("X^2 + l^2/2"));
        assert_eq!(antiwick_quantize(&pp("x")), op("X"));
        assert_eq!(antiwick_quantize(&pp("p^2")), op("P^2 + hbar^2/(2 l^2)"));
        assert_eq!(antiwick_symbol(&op("X")), pp("x"));
        assert_eq!(antiwick_symbol(&op("a ad")), pp("1/2 x^2/l^2 + 1/2 l^2 p^2/hbar^2"));
        assert_eq!(antiwick_symbol(&op("X^2")), pp("x^2 - l^2/2"));
    }

    #[test]
    fn weierstrass_examples() {
        assert_eq!(weierstrass_transform(&pp("1")), pp("1"));
        assert_eq!(weierstrass_transform(&pp("x^2")), pp("x^2 + l^2/2"));
        assert_eq!(weierstrass_transform(&pp("x^2 - l^2/2")), pp("x^2"));
        assert_eq!(weierstrass_transform(&pp("p^2")), pp("p^2 + hbar^2/(2 l^2)"));
    }

    #[test]
    fn ks2b_examples() {
        let r = ks2b_report(&pp("x p"), &pp("x p"), Scheme::Weyl);
        assert_eq!(r.discrepancy, pp("hbar^2/4"));
        assert!(r.commute);
        for m in 0..=5 {
            for n in 0..=5 {
                let r = ks2b_report(&pp("x").pow(m), &pp("x").pow(n), Scheme::Weyl);
                assert!(r.discrepancy.is_zero());
                assert!(r.commute);
            }
        }
        let r = ks2b_report(&pp("x"), &pp("x"), Scheme::AntiWick);
        assert_eq!(r.discrepancy, pp("-l^2/2"));
        assert!(r.commute);
        let r = ks2b_report(&pp("x"), &pp("p"), Scheme::Weyl);
        assert!(!r.commute);
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("weyl".parse::<Scheme>().unwrap(), Scheme::Weyl);
        assert_eq!("AntiWick".parse::<Scheme>().unwrap(), Scheme::AntiWick);
        assert!("wick".parse::<Scheme>().is_err());
    }
}
