//! Noncommutative operator polynomials over `{X, P}` or `{a, a†}`.
//!
//! Canonical orders move one letter class to the left of the other:
//! standard order writes every word as `X^j P^k`, anti-normal order as
//! `a^m (a†)^n` and normal order as `(a†)^n a^m`. Reordering is driven by
//! the single commutator `[R, L] = c` of the letter pair, which is central.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::print::{power, render_terms};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Alphabet {
    /// Position and momentum operators.
    XP,
    /// Annihilation and creation operators.
    Ladder,
}

impl Alphabet {
    pub fn default_order(self) -> OrderTag {
        match self {
            Alphabet::XP => OrderTag::Standard,
            Alphabet::Ladder => OrderTag::AntiNormal,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::XP => "xp",
            Alphabet::Ladder => "ladder",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    X,
    P,
    /// annihilation operator `a`
    A,
    /// creation operator `a†`
    Ad,
}

impl Letter {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Letter::X | Letter::P => Alphabet::XP,
            Letter::A | Letter::Ad => Alphabet::Ladder,
        }
    }

    fn dagger(self) -> Letter {
        match self {
            Letter::A => Letter::Ad,
            Letter::Ad => Letter::A,
            other => other,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Letter::X => "X",
            Letter::P => "P",
            Letter::A => "a",
            Letter::Ad => "ad",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrderTag {
    /// `X` left of `P` in every word.
    Standard,
    /// `a†` left of `a`.
    Normal,
    /// `a` left of `a†`.
    AntiNormal,
    /// Raw words, no ordering guarantee.
    Unordered,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: Alphabet, right: Alphabet },
    #[error("order {order:?} is not defined for the {alphabet} alphabet")]
    IncompatibleOrder { order: OrderTag, alphabet: Alphabet },
    #[error("letter {letter:?} does not belong to the {alphabet} alphabet")]
    ForeignLetter { letter: Letter, alphabet: Alphabet },
}

pub type Word = Vec<Letter>;

/// Reordering rule: canonical words are `left^m right^n`, and
/// `right · left = left · right + commutator`.
#[derive(Clone, Debug)]
struct Rule {
    left: Letter,
    right: Letter,
    commutator: Scalar,
}

fn rule(order: OrderTag, alphabet: Alphabet) -> Result<Rule, OpError> {
    let r = match (order, alphabet) {
        (OrderTag::Standard, Alphabet::XP) => Rule {
            left: Letter::X,
            right: Letter::P,
            // [P, X] = -iħ
            commutator: -&(&Scalar::i() * &Scalar::hbar()),
        },
        (OrderTag::AntiNormal, Alphabet::Ladder) => {
            Rule { left: Letter::A, right: Letter::Ad, commutator: Scalar::from_int(-1) }
        }
        (OrderTag::Normal, Alphabet::Ladder) => Rule { left: Letter::Ad, right: Letter::A, commutator: Scalar::one() },
        _ => return Err(OpError::IncompatibleOrder { order, alphabet }),
    };
    Ok(r)
}

impl Rule {
    fn word(&self, m: u32, n: u32) -> Word {
        let mut w = vec![self.left; m as usize];
        w.extend(std::iter::repeat_n(self.right, n as usize));
        w
    }

    /// Exponents `(m, n)` of a canonical word.
    fn split(&self, w: &[Letter]) -> (u32, u32) {
        let m = w.iter().take_while(|&&c| c == self.left).count();
        debug_assert!(w[m..].iter().all(|&c| c == self.right));
        (m as u32, (w.len() - m) as u32)
    }

    fn is_canonical(&self, w: &[Letter]) -> bool {
        !w.windows(2).any(|p| p[0] == self.right && p[1] == self.left)
    }
}

/// Operator polynomial with exact coefficients.
#[derive(Clone, Debug)]
pub struct OpPoly {
    alphabet: Alphabet,
    order: OrderTag,
    terms: BTreeMap<Word, Scalar>,
}

fn add_into(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(existing) => {
            *existing = &*existing + &c;
            if existing.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c);
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

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

impl OpPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        OpPoly { alphabet, order: alphabet.default_order(), terms: BTreeMap::new() }
    }

    pub fn scalar(alphabet: Alphabet, c: Scalar) -> Self {
        let mut out = OpPoly::zero(alphabet);
        add_into(&mut out.terms, Vec::new(), c);
        out
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        OpPoly::scalar(alphabet, Scalar::one())
    }

    pub fn letter(l: Letter) -> Self {
        let mut out = OpPoly::zero(l.alphabet());
        out.terms.insert(vec![l], Scalar::one());
        out
    }

    pub fn x() -> Self {
        OpPoly::letter(Letter::X)
    }

    pub fn p() -> Self {
        OpPoly::letter(Letter::P)
    }

    pub fn a() -> Self {
        OpPoly::letter(Letter::A)
    }

    pub fn ad() -> Self {
        OpPoly::letter(Letter::Ad)
    }

    /// Sum of raw words, kept unordered until canonicalized.
    pub fn from_words(alphabet: Alphabet, words: impl IntoIterator<Item = (Word, Scalar)>) -> Result<Self, OpError> {
        let mut terms = BTreeMap::new();
        for (w, c) in words {
            if let Some(&letter) = w.iter().find(|l| l.alphabet() != alphabet) {
                return Err(OpError::ForeignLetter { letter, alphabet });
            }
            add_into(&mut terms, w, c);
        }
        Ok(OpPoly { alphabet, order: OrderTag::Unordered, terms })
    }

    /// Standard-ordered monomial `c · X^j P^k`.
    pub fn standard_monomial(j: u32, k: u32, c: Scalar) -> Self {
        let r = rule(OrderTag::Standard, Alphabet::XP).expect("valid rule");
        let mut out = OpPoly::zero(Alphabet::XP);
        add_into(&mut out.terms, r.word(j, k), c);
        out
    }

    /// Anti-normally ordered monomial `c · a^m (a†)^n`.
    pub fn antinormal_monomial(m: u32, n: u32, c: Scalar) -> Self {
        let r = rule(OrderTag::AntiNormal, Alphabet::Ladder).expect("valid rule");
        let mut out = OpPoly::zero(Alphabet::Ladder);
        add_into(&mut out.terms, r.word(m, n), c);
        out
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn order(&self) -> OrderTag {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Letter]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the longest word; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|w| w.len() as u32).max()
    }

    /// The operator as a multiple of the identity, if it is one.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Exponent pairs of a canonical representation in `order`.
    pub fn ordered_terms(&self, order: OrderTag) -> Result<Vec<(crate::phasepoly::Exponents, Scalar)>, OpError> {
        let r = rule(order, self.alphabet)?;
        let c = canonicalize(self, order)?;
        Ok(c.terms.iter().map(|(w, s)| (r.split(w), s.clone())).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (w, s) in &self.terms {
            add_into(&mut terms, w.clone(), s * c);
        }
        OpPoly { alphabet: self.alphabet, order: self.order, terms }
    }

    fn to_default(&self) -> OpPoly {
        canonicalize(self, self.alphabet.default_order()).expect("default order is valid")
    }

    /// Bring `self` and `other` to a common alphabet and order for addition.
    fn unify(&self, other: &OpPoly) -> (OpPoly, OpPoly) {
        let alphabet = if self.as_scalar().is_some() { other.alphabet } else { self.alphabet };
        let a = change_alphabet(self, alphabet);
        let b = change_alphabet(other, alphabet);
        if a.order == b.order && a.order != OrderTag::Unordered {
            (a, b)
        } else {
            (a.to_default(), b.to_default())
        }
    }

    pub fn pow(&self, n: u32) -> OpPoly {
        let mut acc = OpPoly::identity(self.alphabet);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_self_adjoint(&self) -> bool {
        adjoint(self) == *self
    }

    /// Printed with words as `X^j P^k` / `a^m ad^n` and a scalar prefix.
    pub fn to_expr_string(&self) -> String {
        let first = match self.alphabet {
            Alphabet::XP => Letter::X,
            Alphabet::Ladder => Letter::A,
        };
        let mut words: Vec<&Word> = self.terms.keys().collect();
        words.sort_by(|a, b| {
            let ka = (a.len(), a.iter().filter(|&&c| c == first).count());
            let kb = (b.len(), b.iter().filter(|&&c| c == first).count());
            kb.cmp(&ka).then_with(|| a.cmp(b))
        });
        let mut terms = Vec::new();
        for w in words {
            terms.extend(self.terms[w].print_terms(&word_string(w)));
        }
        render_terms(terms, " ")
    }
}

/// Run-length printing of a word: `X^2 P`, `a ad^3`.
pub fn word_string(w: &[Letter]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        parts.push(power(w[i].symbol(), (j - i) as u32));
        i = j;
    }
    parts.join(" ")
}

impl PartialEq for OpPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.unify(other);
        a.to_default().terms == b.to_default().terms
    }
}

impl Eq for OpPoly {}

impl fmt::Display for OpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

/// Product of canonical term maps using the closed reordering formula
/// `R^n L^p = Σ_r C(n,r) C(p,r) r! c^r L^{p-r} R^{n-r}`.
fn mul_canonical(r: &Rule, a: &BTreeMap<Word, Scalar>, b: &BTreeMap<Word, Scalar>) -> BTreeMap<Word, Scalar> {
    let mut out = BTreeMap::new();
    let mut cpow = vec![Scalar::one()];
    for (wa, ca) in a {
        let (la, ra) = r.split(wa);
        for (wb, cb) in b {
            let (lb, rb) = r.split(wb);
            let base = ca * cb;
            for k in 0..=ra.min(lb) {
                while cpow.len() <= k as usize {
                    let next = cpow.last().expect("nonempty") * &r.commutator;
                    cpow.push(next);
                }
                let mult = binomial(ra, k) * binomial(lb, k) * factorial(k);
                let coeff = &(&base * &cpow[k as usize]).scale(&BigRational::from_integer(mult));
                add_into(&mut out, r.word(la + lb - k, ra + rb - k), coeff.clone());
            }
        }
    }
    out
}

/// Canonical product; both factors must share an alphabet.
///
/// The result is in the alphabet's default order (standard or anti-normal).
pub fn op_mul(a: &OpPoly, b: &OpPoly) -> Result<OpPoly, OpError> {
    if a.alphabet != b.alphabet {
        return Err(OpError::AlphabetMismatch { left: a.alphabet, right: b.alphabet });
    }
    let order = a.alphabet.default_order();
    let r = rule(order, a.alphabet)?;
    let ca = canonicalize(a, order)?;
    let cb = canonicalize(b, order)?;
    Ok(OpPoly { alphabet: a.alphabet, order, terms: mul_canonical(&r, &ca.terms, &cb.terms) })
}

/// Rewrite into `target` order by repeatedly replacing the leftmost
/// out-of-order adjacent pair `R L` with `L R + c`.
///
/// Each rewrite lowers the inversion count of the word, so this terminates.
pub fn canonicalize(a: &OpPoly, target: OrderTag) -> Result<OpPoly, OpError> {
    let r = rule(target, a.alphabet)?;
    if a.order == target {
        return Ok(a.clone());
    }
    let mut pending: BTreeMap<Word, Scalar> = a.terms.clone();
    let mut done = BTreeMap::new();
    while let Some((w, c)) = pending.pop_first() {
        let hit = w.windows(2).position(|p| p[0] == r.right && p[1] == r.left);
        match hit {
            None => add_into(&mut done, w, c),
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                add_into(&mut pending, swapped, c.clone());
                let mut contracted = w[..i].to_vec();
                contracted.extend_from_slice(&w[i + 2..]);
                add_into(&mut pending, contracted, &c * &r.commutator);
            }
        }
    }
    debug_assert!(done.keys().all(|w| r.is_canonical(w)));
    Ok(OpPoly { alphabet: a.alphabet, order: target, terms: done })
}

fn letter_image(l: Letter) -> OpPoly {
    let half_sqrt2 = &Scalar::ratio(1, 2) * &Scalar::sqrt2();
    let linv = Scalar::l().inverse().expect("l is invertible");
    let hinv = Scalar::hbar().inverse().expect("hbar is invertible");
    match l {
        // X = (l/√2)(a + a†)
        Letter::X => (&OpPoly::a() + &OpPoly::ad()).scale(&(&half_sqrt2 * &Scalar::l())),
        // P = (iħ/(l√2))(a† − a)
        Letter::P => {
            (&OpPoly::ad() - &OpPoly::a()).scale(&(&(&half_sqrt2 * &Scalar::i()) * &(&Scalar::hbar() * &linv)))
        }
        // a = (1/√2)(X/l + i l P/ħ)
        Letter::A => (&OpPoly::x().scale(&linv) + &OpPoly::p().scale(&(&Scalar::i() * &(&Scalar::l() * &hinv))))
            .scale(&half_sqrt2),
        // a† = (1/√2)(X/l − i l P/ħ)
        Letter::Ad => (&OpPoly::x().scale(&linv) - &OpPoly::p().scale(&(&Scalar::i() * &(&Scalar::l() * &hinv))))
            .scale(&half_sqrt2),
    }
}

/// Exact substitution between the position/momentum and ladder alphabets.
pub fn change_alphabet(a: &OpPoly, target: Alphabet) -> OpPoly {
    if a.alphabet == target {
        return a.clone();
    }
    let order = target.default_order();
    let images: BTreeMap<Letter, OpPoly> = [Letter::X, Letter::P, Letter::A, Letter::Ad]
        .into_iter()
        .filter(|l| l.alphabet() == a.alphabet)
        .map(|l| (l, letter_image(l)))
        .collect();
    let mut out = OpPoly::zero(target);
    for (w, c) in &a.terms {
        let mut acc = OpPoly::scalar(target, c.clone());
        for l in w {
            acc = op_mul(&acc, &images[l]).expect("same alphabet");
        }
        out = &out + &acc;
    }
    debug_assert_eq!(out.order, order);
    out
}

/// `AB − BA`, canonicalized.
pub fn commutator(a: &OpPoly, b: &OpPoly) -> Result<OpPoly, OpError> {
    let ab = op_mul(a, b)?;
    let ba = op_mul(b, a)?;
    Ok(&ab - &ba)
}

/// Hermitian adjoint: conjugate coefficients, reverse words, swap `a ↔ a†`.
pub fn adjoint(a: &OpPoly) -> OpPoly {
    let mut terms = BTreeMap::new();
    for (w, c) in &a.terms {
        let rev: Word = w.iter().rev().map(|l| l.dagger()).collect();
        add_into(&mut terms, rev, c.conj());
    }
    let raw = OpPoly { alphabet: a.alphabet, order: OrderTag::Unordered, terms };
    match a.order {
        OrderTag::Unordered => raw,
        order => canonicalize(&raw, order).expect("order valid for alphabet"),
    }
}

impl Add for &OpPoly {
    type Output = OpPoly;
    /// Converts `rhs` to the alphabet of `self` when they differ.
    fn add(self, rhs: &OpPoly) -> OpPoly {
        let (mut a, b) = self.unify(rhs);
        for (w, c) in b.terms {
            add_into(&mut a.terms, w, c);
        }
        a
    }
}

impl Sub for &OpPoly {
    type Output = OpPoly;
    fn sub(self, rhs: &OpPoly) -> OpPoly {
        self + &(-rhs)
    }
}

impl Neg for &OpPoly {
    type Output = OpPoly;
    fn neg(self) -> OpPoly {
        OpPoly {
            alphabet: self.alphabet,
            order: self.order,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &OpPoly {
    type Output = OpPoly;
    /// Like [`op_mul`] but converts `rhs` to the alphabet of `self` first.
    fn mul(self, rhs: &OpPoly) -> OpPoly {
        let (a, b) = self.unify(rhs);
        op_mul(&a, &b).expect("unified alphabets")
    }
}

crate::forward_ring_ops!(OpPoly);

impl crate::parse::ExprAlgebra for OpPoly {
    fn from_scalar(s: Scalar) -> Self {
        OpPoly::scalar(Alphabet::XP, s)
    }
    fn variable(name: &str) -> Option<Self> {
        match name {
            "X" => Some(OpPoly::x()),
            "P" => Some(OpPoly::p()),
            "a" => Some(OpPoly::a()),
            "ad" => Some(OpPoly::ad()),
            _ => None,
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn as_scalar(&self) -> Option<Scalar> {
        OpPoly::as_scalar(self)
    }
}

/// Parse an operator expression over `X`, `P`, `a`, `ad`.
pub fn parse_op_expr(text: &str) -> Result<OpPoly, crate::parse::ParseError> {
    crate::parse::parse_expr(text)
}
