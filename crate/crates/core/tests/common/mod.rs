#![allow(dead_code)]

use ksquant_core::{Alphabet, GaussRat, Letter, OpPoly, PhasePoly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn gauss_rat() -> impl Strategy<Value = GaussRat> {
    (rational(), prop_oneof![Just(rat(0, 1)), rational()]).prop_map(|(re, im)| GaussRat::new(re, im))
}

/// Scalars with up to three terms, with or without a factor of √2.
pub fn scalar_with(sqrt2: bool) -> impl Strategy<Value = Scalar> {
    let s2 = if sqrt2 { 1 } else { 0 };
    prop::collection::vec((gauss_rat(), -2i32..=2, -2i32..=2, 0..=s2), 1..=3).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (q, h, l, s)| &acc + &Scalar::monomial(q, h, l, s))
    })
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    scalar_with(true)
}

pub fn phase_poly_with(max_degree: u32, sqrt2: bool) -> impl Strategy<Value = PhasePoly> {
    prop::collection::vec((0..=max_degree, 0..=max_degree, scalar_with(sqrt2)), 0..=5)
        .prop_map(move |terms| PhasePoly::from_terms(terms.into_iter().map(|(d, j, c)| ((j.min(d), d - j.min(d)), c))))
}

pub fn phase_poly(max_degree: u32) -> impl Strategy<Value = PhasePoly> {
    phase_poly_with(max_degree, true)
}

/// Polynomials with real rational coefficients (times powers of ħ and l).
pub fn real_phase_poly(max_degree: u32) -> impl Strategy<Value = PhasePoly> {
    prop::collection::vec((0..=max_degree, 0..=max_degree, rational(), -1i32..=1, -1i32..=1), 0..=5).prop_map(|terms| {
        PhasePoly::from_terms(terms.into_iter().map(|(d, j, q, h, l)| {
            let j = j.min(d);
            ((j, d - j), Scalar::monomial(GaussRat::real(q), h, l, 0))
        }))
    })
}

pub fn letters(alphabet: Alphabet) -> [Letter; 2] {
    match alphabet {
        Alphabet::XP => [Letter::X, Letter::P],
        Alphabet::Ladder => [Letter::A, Letter::Ad],
    }
}

pub fn alphabet() -> impl Strategy<Value = Alphabet> {
    prop_oneof![Just(Alphabet::XP), Just(Alphabet::Ladder)]
}

/// Unordered sums of random words.
pub fn op_poly_in(alphabet: Alphabet, max_len: usize) -> impl Strategy<Value = OpPoly> {
    let [l0, l1] = letters(alphabet);
    prop::collection::vec((prop::collection::vec(prop::bool::ANY, 0..=max_len), scalar()), 1..=4).prop_map(
        move |terms| {
            let words =
                terms.into_iter().map(|(bits, c)| (bits.into_iter().map(|b| if b { l1 } else { l0 }).collect(), c));
            OpPoly::from_words(alphabet, words).unwrap()
        },
    )
}

pub fn op_poly(max_len: usize) -> impl Strategy<Value = OpPoly> {
    alphabet().prop_flat_map(move |a| op_poly_in(a, max_len))
}
