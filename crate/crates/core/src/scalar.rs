//! Exact coefficients: Gaussian rationals times integer powers of ℏ, l and √2.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::print::{render_terms, PrintTerm};

/// A Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        GaussRat::real(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        GaussRat::from_int(0)
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussRat { re: &self.re * r, im: &self.im * r }
    }

    pub fn pow(&self, exp: i32) -> Option<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = GaussRat::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Scalar::from(self.clone()).to_string())
    }
}

/// Exponents of the symbolic constants in one scalar term.
///
/// `sqrt2` is always 0 or 1: even powers are folded into the rational part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Powers {
    pub hbar: i32,
    pub l: i32,
    pub sqrt2: u8,
}

impl Powers {
    pub const ONE: Powers = Powers { hbar: 0, l: 0, sqrt2: 0 };
}

/// Exact scalar: a finite sum of `q · ℏ^h · l^k · √2^s`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    terms: BTreeMap<Powers, GaussRat>,
}

/// Failure of exact evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("cannot substitute zero for `{0}`: it appears with a negative exponent")]
    ZeroSubstitution(&'static str),
    #[error("odd power of sqrt2 has no exact rational value; use approximate evaluation")]
    Inexact,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::term(GaussRat::one(), Powers::ONE)
    }

    pub fn i() -> Self {
        Scalar::term(GaussRat::i(), Powers::ONE)
    }

    pub fn hbar() -> Self {
        Scalar::term(GaussRat::one(), Powers { hbar: 1, ..Powers::ONE })
    }

    pub fn l() -> Self {
        Scalar::term(GaussRat::one(), Powers { l: 1, ..Powers::ONE })
    }

    pub fn sqrt2() -> Self {
        Scalar::term(GaussRat::one(), Powers { sqrt2: 1, ..Powers::ONE })
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::term(GaussRat::from_int(n), Powers::ONE)
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::term(GaussRat::ratio(n, d), Powers::ONE)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::term(GaussRat::real(r), Powers::ONE)
    }

    /// Single term `q · ℏ^h · l^k · √2^s` with an arbitrary `sqrt2` exponent.
    pub fn monomial(q: GaussRat, hbar: i32, l: i32, sqrt2: i32) -> Self {
        let mut q = q;
        let half = sqrt2.div_euclid(2);
        let s = sqrt2.rem_euclid(2) as u8;
        if half != 0 {
            let two = GaussRat::from_int(2).pow(half).expect("2 is invertible");
            q = &q * &two;
        }
        Scalar::term(q, Powers { hbar, l, sqrt2: s })
    }

    fn term(q: GaussRat, powers: Powers) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(powers, q);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Powers::ONE).is_some_and(|q| *q == GaussRat::one())
    }

    /// True when every coefficient is real (ℏ, l and √2 are real symbols).
    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRat::is_real)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Powers, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term, if there is exactly one.
    pub fn as_single(&self) -> Option<(&Powers, &GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Rational constant with no symbolic part.
    pub fn as_constant(&self) -> Option<&GaussRat> {
        match self.as_single() {
            Some((p, q)) if *p == Powers::ONE => Some(q),
            _ => None,
        }
    }

    fn insert_add(&mut self, powers: Powers, q: GaussRat) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&powers) {
            Some(existing) => {
                *existing = &*existing + &q;
                if existing.is_zero() {
                    self.terms.remove(&powers);
                }
            }
            None => {
                self.terms.insert(powers, q);
            }
        }
    }

    pub fn conj(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|(p, q)| (*p, q.conj())).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = Scalar::zero();
        for (p, q) in &self.terms {
            out.insert_add(*p, q.scale(r));
        }
        out
    }

    /// Inverse of a single-term scalar. Sums have no exact inverse here.
    pub fn inverse(&self) -> Option<Self> {
        let (p, q) = self.as_single()?;
        let qi = q.inverse()?;
        Some(Scalar::monomial(qi, -p.hbar, -p.l, -(p.sqrt2 as i32)))
    }

    pub fn pow(&self, exp: i32) -> Option<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Floating value at the given ℏ and l.
    pub fn to_complex(&self, hbar: f64, l: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(p, q)| {
                let sym = hbar.powi(p.hbar) * l.powi(p.l) * std::f64::consts::SQRT_2.powi(p.sqrt2 as i32);
                q.to_complex() * sym
            })
            .sum()
    }

    /// Exact value at rational ℏ and l. Fails on odd powers of √2.
    pub fn evaluate(&self, hbar: &BigRational, l: &BigRational) -> Result<GaussRat, EvalError> {
        let mut acc = GaussRat::zero();
        for (p, q) in &self.terms {
            if p.sqrt2 != 0 {
                return Err(EvalError::Inexact);
            }
            let h = rational_pow(hbar, p.hbar).ok_or(EvalError::ZeroSubstitution("hbar"))?;
            let lv = rational_pow(l, p.l).ok_or(EvalError::ZeroSubstitution("l"))?;
            acc = &acc + &q.scale(&(h * lv));
        }
        Ok(acc)
    }

    pub(crate) fn print_terms(&self, tail: &str) -> Vec<PrintTerm> {
        let mut out = Vec::new();
        // Display order: larger powers of ℏ first, then l, then √2.
        for (p, q) in self.terms.iter().rev() {
            if !q.re.is_zero() {
                out.push(PrintTerm::new(&q.re, false, *p, tail));
            }
            if !q.im.is_zero() {
                out.push(PrintTerm::new(&q.im, true, *p, tail));
            }
        }
        out
    }
}

pub(crate) fn rational_pow(base: &BigRational, exp: i32) -> Option<BigRational> {
    if exp < 0 && base.is_zero() {
        return None;
    }
    let b = if exp < 0 { base.recip() } else { base.clone() };
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    Some(acc)
}

impl From<GaussRat> for Scalar {
    fn from(q: GaussRat) -> Self {
        Scalar::term(q, Powers::ONE)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (p, q) in &rhs.terms {
            out.insert_add(*p, q.clone());
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (p, q) in &rhs.terms {
            out.insert_add(*p, -q);
        }
        out
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        let two = GaussRat::from_int(2);
        for (pa, qa) in &self.terms {
            for (pb, qb) in &rhs.terms {
                let mut q = qa * qb;
                let mut s = pa.sqrt2 + pb.sqrt2;
                if s == 2 {
                    q = &q * &two;
                    s = 0;
                }
                out.insert_add(Powers { hbar: pa.hbar + pb.hbar, l: pa.l + pb.l, sqrt2: s }, q);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(p, q)| (*p, -q)).collect() }
    }
}

crate::forward_ring_ops!(Scalar);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.print_terms(""), "*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let s = Scalar::sqrt2();
        assert_eq!(&s * &s, Scalar::from_int(2));
        let inv = s.inverse().unwrap();
        assert_eq!(&inv * &s, Scalar::one());
        assert_eq!(inv, &Scalar::ratio(1, 2) * &Scalar::sqrt2());
    }

    #[test]
    fn like_terms_merge_and_cancel() {
        let a = &Scalar::hbar() + &Scalar::l();
        let b = &a - &Scalar::hbar();
        assert_eq!(b, Scalar::l());
        assert!((&b - &Scalar::l()).is_zero());
    }

    #[test]
    fn negative_powers_allowed() {
        let inv_l2 = Scalar::l().pow(-2).unwrap();
        assert_eq!(&inv_l2 * &Scalar::l().pow(2).unwrap(), Scalar::one());
        assert!(Scalar::zero().inverse().is_none());
        assert!((&Scalar::one() + &Scalar::l()).inverse().is_none());
    }

    #[test]
    fn exact_evaluation() {
        let s = &Scalar::hbar().pow(2).unwrap() * &Scalar::ratio(1, 4);
        let two = BigRational::from_integer(2.into());
        assert_eq!(s.evaluate(&two, &two).unwrap(), GaussRat::one());
        assert_eq!(Scalar::sqrt2().evaluate(&two, &two), Err(EvalError::Inexact));
        let zero = BigRational::zero();
        assert_eq!(Scalar::l().inverse().unwrap().evaluate(&two, &zero), Err(EvalError::ZeroSubstitution("l")));
    }

    #[test]
    fn gauss_inverse() {
        let q = GaussRat::new(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        assert_eq!(&q * &q.inverse().unwrap(), GaussRat::one());
    }

    #[test]
    fn display() {
        let s = &Scalar::hbar().pow(2).unwrap() * &Scalar::ratio(1, 4);
        assert_eq!(s.to_string(), "hbar^2/4");
        let t = &(&Scalar::i() * &Scalar::hbar()) * &Scalar::ratio(-1, 2);
        assert_eq!(t.to_string(), "-i*hbar/2");
        let u = &Scalar::hbar().pow(2).unwrap() * &Scalar::l().pow(-2).unwrap();
        assert_eq!((&u * &Scalar::ratio(1, 2)).to_string(), "hbar^2/(2*l^2)");
        assert_eq!(Scalar::zero().to_string(), "0");
    }
}
