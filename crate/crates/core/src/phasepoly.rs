//! Commutative polynomials in the phase-space variables `x` and `p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;

use crate::print::{power, render_terms};
use crate::scalar::{rational_pow, EvalError, GaussRat, Scalar};

/// Exponent pair `(j, k)` of the monomial `x^j p^k`.
pub type Exponents = (u32, u32);

/// A dynamical variable `A(x, p)` with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PhasePoly {
    coeffs: BTreeMap<Exponents, Scalar>,
}

impl PhasePoly {
    pub fn zero() -> Self {
        PhasePoly::default()
    }

    pub fn one() -> Self {
        PhasePoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        PhasePoly::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        PhasePoly::monomial(1, 0, Scalar::one())
    }

    pub fn p() -> Self {
        PhasePoly::monomial(0, 1, Scalar::one())
    }

    /// `c · x^j p^k`
    pub fn monomial(j: u32, k: u32, c: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((j, k), c);
        }
        PhasePoly { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, Scalar)>) -> Self {
        let mut out = PhasePoly::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, j: u32, k: u32) -> Scalar {
        self.coeffs.get(&(j, k)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(j, k)| j + k).max()
    }

    /// True when the polynomial depends on `x` only.
    pub fn is_x_only(&self) -> bool {
        self.coeffs.keys().all(|&(_, k)| k == 0)
    }

    pub fn is_p_only(&self) -> bool {
        self.coeffs.keys().all(|&(j, _)| j == 0)
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.coeffs.values().all(Scalar::is_real)
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PhasePoly::from_terms(self.coeffs.iter().map(|(e, s)| (*e, s * c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = PhasePoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        PhasePoly { coeffs: self.coeffs.iter().map(|(e, s)| (*e, s.conj())).collect() }
    }

    /// Exact substitution. Odd powers of √2 are rejected.
    pub fn evaluate(
        &self,
        x: &BigRational,
        p: &BigRational,
        hbar: &BigRational,
        l: &BigRational,
    ) -> Result<GaussRat, EvalError> {
        let mut acc = GaussRat::zero();
        for (&(j, k), c) in &self.coeffs {
            let mono = rational_pow(x, j as i32).expect("nonnegative exponent")
                * rational_pow(p, k as i32).expect("nonnegative exponent");
            acc = &acc + &c.evaluate(hbar, l)?.scale(&mono);
        }
        Ok(acc)
    }

    /// Floating substitution; √2 is taken numerically.
    pub fn evaluate_approx(&self, x: f64, p: f64, hbar: f64, l: f64) -> Complex64 {
        self.coeffs.iter().map(|(&(j, k), c)| c.to_complex(hbar, l) * x.powi(j as i32) * p.powi(k as i32)).sum()
    }

    /// Coefficients evaluated at fixed ℏ and l, for repeated numeric evaluation.
    pub fn numeric_coeffs(&self, hbar: f64, l: f64) -> Vec<(Exponents, Complex64)> {
        self.coeffs.iter().map(|(e, c)| (*e, c.to_complex(hbar, l))).collect()
    }

    /// Expression text in the canonical grammar; `parse_phase_expr` reads it back.
    pub fn to_expr_string(&self) -> String {
        let mut keys: Vec<&Exponents> = self.coeffs.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        let mut terms = Vec::new();
        for key in keys {
            let (j, k) = *key;
            let mut parts = Vec::new();
            if j > 0 {
                parts.push(power("x", j));
            }
            if k > 0 {
                parts.push(power("p", k));
            }
            terms.extend(self.coeffs[key].print_terms(&parts.join("*")));
        }
        render_terms(terms, "*")
    }
}

/// Product of two bivariate coefficient maps.
pub(crate) fn bivariate_mul(
    a: &BTreeMap<Exponents, Scalar>,
    b: &BTreeMap<Exponents, Scalar>,
) -> BTreeMap<Exponents, Scalar> {
    let mut out = PhasePoly::zero();
    for (&(ja, ka), ca) in a {
        for (&(jb, kb), cb) in b {
            out.add_term((ja + jb, ka + kb), &(ca * cb));
        }
    }
    out.coeffs
}

impl Add for &PhasePoly {
    type Output = PhasePoly;
    fn add(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &PhasePoly {
    type Output = PhasePoly;
    fn sub(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: &PhasePoly) -> PhasePoly {
        PhasePoly { coeffs: bivariate_mul(&self.coeffs, &rhs.coeffs) }
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        PhasePoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

crate::forward_ring_ops!(PhasePoly);

impl From<Scalar> for PhasePoly {
    fn from(c: Scalar) -> Self {
        PhasePoly::constant(c)
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

/// Product of two phase-space polynomials.
pub fn poly_mul(a: &PhasePoly, b: &PhasePoly) -> PhasePoly {
    a * b
}
