//! Shared printer for scalars, phase-space polynomials and operator polynomials.
//!
//! Output always re-parses to the same value. Each printed term is a signed
//! rational, an optional `i`, the symbolic constants and a trailing monomial or
//! word; negative powers go to a denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::scalar::Powers;

pub(crate) struct PrintTerm {
    negative: bool,
    num: BigInt,
    den: BigInt,
    imag: bool,
    powers: Powers,
    tail: String,
}

impl PrintTerm {
    pub(crate) fn new(coeff: &BigRational, imag: bool, powers: Powers, tail: &str) -> Self {
        PrintTerm {
            negative: coeff.is_negative(),
            num: coeff.numer().abs(),
            den: coeff.denom().clone(),
            imag,
            powers,
            tail: tail.to_string(),
        }
    }

    fn body(&self, sep: &str) -> String {
        let mut numer: Vec<String> = Vec::new();
        let mut denom: Vec<String> = Vec::new();
        if !self.num.is_one() {
            numer.push(self.num.to_string());
        }
        if self.imag {
            numer.push("i".into());
        }
        if self.powers.sqrt2 == 1 {
            numer.push("sqrt2".into());
        }
        if !self.den.is_one() {
            denom.push(self.den.to_string());
        }
        for (name, e) in [("hbar", self.powers.hbar), ("l", self.powers.l)] {
            match e {
                0 => {}
                e if e > 0 => numer.push(power(name, e as u32)),
                e => denom.push(power(name, e.unsigned_abs())),
            }
        }
        let scalar_is_one = numer.is_empty() && denom.is_empty();
        let mut out = if numer.is_empty() { "1".to_string() } else { numer.join(sep) };
        if !denom.is_empty() {
            out.push('/');
            if denom.len() == 1 {
                out.push_str(&denom[0]);
            } else {
                out.push('(');
                out.push_str(&denom.join(sep));
                out.push(')');
            }
        }
        if self.tail.is_empty() {
            out
        } else if scalar_is_one {
            self.tail.clone()
        } else {
            format!("{out}{sep}{}", self.tail)
        }
    }
}

pub(crate) fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

pub(crate) fn render_terms(terms: Vec<PrintTerm>, sep: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, t) in terms.iter().enumerate() {
        match (idx, t.negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&t.body(sep));
    }
    out
}
