mod common;

use common::*;
use ksquant_core::{
    adjoint, antiwick_quantize, antiwick_symbol, change_alphabet, ks2b_report, parse_op_expr, parse_phase_expr,
    quantize, weierstrass_transform, weyl_quantize, weyl_symbol, Alphabet, GaussRat, OpPoly, PhasePoly, Scalar, Scheme,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// Symbol of the standard-ordered monomial `X^j P^k`:
/// `Σ_r r! C(j,r) C(k,r) (iħ/2)^r x^{j-r} p^{k-r}`.
fn standard_monomial_symbol(j: u32, k: u32) -> PhasePoly {
    let ih2 = Scalar::monomial(GaussRat::new(BigRational::from_integer(BigInt::from(0)), rat(1, 2)), 1, 0, 0);
    let mut out = PhasePoly::zero();
    for r in 0..=j.min(k) {
        let c = Scalar::from_int(factorial(r) * binomial(j, r) * binomial(k, r));
        let c = &c * &ih2.pow(r as i32).unwrap();
        out = &out + &PhasePoly::monomial(j - r, k - r, c);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_round_trip(a in phase_poly(6)) {
        prop_assert_eq!(weyl_symbol(&weyl_quantize(&a)), a);
    }

    #[test]
    fn antiwick_round_trip(a in phase_poly(6)) {
        prop_assert_eq!(antiwick_symbol(&antiwick_quantize(&a)), a);
    }

    #[test]
    fn symbols_invert_quantization_from_operators(o in op_poly(5)) {
        prop_assert_eq!(weyl_quantize(&weyl_symbol(&o)), o.clone());
        prop_assert_eq!(antiwick_quantize(&antiwick_symbol(&o)), o);
    }

    #[test]
    fn quantization_is_linear(a in phase_poly(5), b in phase_poly(5), al in scalar(), be in scalar()) {
        for scheme in [Scheme::Weyl, Scheme::AntiWick] {
            let lhs = quantize(&(&a.scale(&al) + &b.scale(&be)), scheme);
            let rhs = &quantize(&a, scheme).scale(&al) + &quantize(&b, scheme).scale(&be);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn weyl_quantizes_powers_of_linear_forms(a in rational(), b in rational(), j in 0u32..=6) {
        let lin = &PhasePoly::x().scale(&Scalar::from_rational(a.clone())) + &PhasePoly::p().scale(&Scalar::from_rational(b.clone()));
        let op = &OpPoly::x().scale(&Scalar::from_rational(a)) + &OpPoly::p().scale(&Scalar::from_rational(b));
        prop_assert_eq!(weyl_quantize(&lin.pow(j)), op.pow(j));
    }

    #[test]
    fn weierstrass_links_symbols(o in op_poly(6)) {
        prop_assert_eq!(weierstrass_transform(&antiwick_symbol(&o)), weyl_symbol(&o));
    }

    #[test]
    fn real_symbols_give_self_adjoint_operators(a in real_phase_poly(6)) {
        for scheme in [Scheme::Weyl, Scheme::AntiWick] {
            let q = quantize(&a, scheme);
            prop_assert_eq!(adjoint(&q), q.clone());
            prop_assert!(q.is_self_adjoint());
        }
    }

    #[test]
    fn weyl_products_of_x_only_are_exact(a in phase_poly(4), b in phase_poly(4)) {
        let xs = |f: &PhasePoly| PhasePoly::from_terms(f.terms().filter(|(e, _)| e.1 == 0).map(|(e, c)| (*e, c.clone())));
        let ps = |f: &PhasePoly| PhasePoly::from_terms(f.terms().filter(|(e, _)| e.0 == 0).map(|(e, c)| (*e, c.clone())));
        prop_assert!(ks2b_report(&xs(&a), &xs(&b), Scheme::Weyl).discrepancy.is_zero());
        prop_assert!(ks2b_report(&ps(&a), &ps(&b), Scheme::Weyl).discrepancy.is_zero());
    }
}

#[test]
fn standard_ordered_symbols_match_closed_formula() {
    for j in 0..=6 {
        for k in 0..=6 - j {
            let op = OpPoly::standard_monomial(j, k, Scalar::one());
            assert_eq!(weyl_symbol(&op), standard_monomial_symbol(j, k), "X^{j} P^{k}");
        }
    }
}

#[test]
fn mixed_products_are_generically_inexact() {
    let r = ks2b_report(&PhasePoly::x(), &PhasePoly::p(), Scheme::Weyl);
    assert_eq!(r.discrepancy, parse_phase_expr("i*hbar/2").unwrap());
    assert!(!r.commute);
    let r = ks2b_report(&PhasePoly::x(), &PhasePoly::x(), Scheme::AntiWick);
    assert!(r.commute);
    assert_eq!(r.discrepancy, parse_phase_expr("-l^2/2").unwrap());
}

#[test]
fn weyl_examples() {
    let w = weyl_quantize(&parse_phase_expr("x*p").unwrap());
    assert_eq!(w.to_string(), "X P - i hbar/2");
    assert_eq!(w, parse_op_expr("(X P + P X)/2").unwrap());
    assert_eq!(weyl_quantize(&parse_phase_expr("x^2").unwrap()), parse_op_expr("X^2").unwrap());
    assert_eq!(weyl_quantize(&parse_phase_expr("x^2*p").unwrap()), parse_op_expr("(X^2 P + X P X + P X^2)/3").unwrap());
}

#[test]
fn antiwick_examples() {
    let x2 = antiwick_quantize(&parse_phase_expr("x^2").unwrap());
    assert_eq!(change_alphabet(&x2, Alphabet::XP).to_string(), "X^2 + l^2/2");
    let xp = antiwick_quantize(&parse_phase_expr("x*p").unwrap());
    assert_eq!(xp, weyl_quantize(&parse_phase_expr("x*p").unwrap()));
    assert_eq!(
        antiwick_symbol(&parse_op_expr("a ad").unwrap()),
        parse_phase_expr("(x^2/l^2 + l^2 p^2/hbar^2)/2").unwrap()
    );
}

#[test]
fn weierstrass_examples() {
    let t = |s: &str| weierstrass_transform(&parse_phase_expr(s).unwrap());
    assert_eq!(t("x^2 - l^2/2"), parse_phase_expr("x^2").unwrap());
    assert_eq!(t("p^2"), parse_phase_expr("p^2 + hbar^2/(2*l^2)").unwrap());
    assert_eq!(t("x^4"), parse_phase_expr("x^4 + 3*l^2*x^2 + 3*l^4/4").unwrap());
    assert_eq!(t("x*p"), parse_phase_expr("x*p").unwrap());
}
