//! Dense univariate polynomials over a pluggable coefficient ring.

pub mod fp;
mod gcd;
mod param;
pub mod parse;
mod rational;
mod resultant;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use gcd::PolyGcd;
pub use resultant::sylvester_matrix;

/// Which coefficient ring a polynomial lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Rationals,
    PrimeField(u64),
    /// `Q[a]`, rational polynomials in a single parameter `a`.
    ParamRing,
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
            CoefficientRing::ParamRing => write!(f, "Q[a]"),
        }
    }
}

/// Coefficient ring interface.
///
/// Arithmetic goes through the by-reference methods so that big-number
/// coefficients are not cloned in inner loops. The `convolve` and
/// `poly_div_rem` hooks let a ring replace schoolbook multiplication and
/// long division with something faster.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;

    /// Exact quotient; `None` when `rhs` does not divide `self` in the ring
    /// (or `rhs` is zero).
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// Characteristic tag for mismatch detection: the prime for `F_p`
    /// elements, 0 otherwise (and for modulus-free constants).
    fn modulus(&self) -> u64 {
        0
    }

    fn ring_of(modulus: u64) -> CoefficientRing;

    fn is_unit(&self) -> bool;

    /// `(negative, magnitude, compound)` used by the pretty printer.
    /// A compound magnitude is parenthesised when multiplied by a power of x.
    fn display_parts(&self) -> (bool, String, bool);

    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        schoolbook(a, b)
    }

    fn poly_div_rem(num: &[Self], den: &[Self]) -> Result<(Vec<Self>, Vec<Self>)> {
        long_division(num, den)
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Coefficient rings in which every nonzero element is invertible.
pub trait Field: Coeff {
    fn inv(&self) -> Self;
}

pub(crate) fn schoolbook<R: Coeff>(a: &[R], b: &[R]) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![R::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add_ref(&ai.mul_ref(bj));
        }
    }
    out
}

pub(crate) fn long_division<R: Coeff>(num: &[R], den: &[R]) -> Result<(Vec<R>, Vec<R>)> {
    let Some(lead) = den.last() else {
        return Err(Error::ZeroDivisor);
    };
    if num.len() < den.len() {
        return Ok((Vec::new(), num.to_vec()));
    }
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![R::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + dd];
        if top.is_zero() {
            continue;
        }
        let q = top.div_exact(lead).ok_or_else(|| {
            Error::InexactCoefficient(format!("{top} is not divisible by {lead}"))
        })?;
        for (j, dj) in den.iter().enumerate() {
            if !dj.is_zero() {
                rem[k + j] = rem[k + j].sub_ref(&q.mul_ref(dj));
            }
        }
        quot[k] = q;
    }
    rem.truncate(dd);
    Ok((quot, rem))
}

/// Dense polynomial, coefficients in ascending degree. The leading
/// coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

/// Operations accepted by [`Polynomial::ring_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

impl<R: Coeff> Polynomial<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| R::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    /// The compositional identity `x`.
    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// `x^n - 1`.
    pub fn xn_minus_one(n: usize) -> Self {
        Self::monomial(R::one(), n) - Self::one()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Exponent of the largest power of x dividing `self`; `None` for zero.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Prime modulus shared by the coefficients, or 0 when there is none.
    pub fn modulus(&self) -> u64 {
        self.coeffs.iter().map(R::modulus).find(|&m| m != 0).unwrap_or(0)
    }

    pub fn ring(&self) -> CoefficientRing {
        R::ring_of(self.modulus())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        let (a, b) = (self.modulus(), other.modulus());
        if a != 0 && b != 0 && a != b {
            return Err(Error::RingMismatch(format!("F{a} vs F{b}")));
        }
        Ok(())
    }

    /// Ring-checked arithmetic: errors instead of panicking when the two
    /// operands live over different prime fields.
    pub fn ring_arith(&self, op: RingOp, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        Ok(match op {
            RingOp::Add => self + rhs,
            RingOp::Sub => self - rhs,
            RingOp::Mul => self * rhs,
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul_ref(v).add_ref(c))
    }

    pub fn checked_eval(&self, v: &R) -> Result<R> {
        let (a, b) = (self.modulus(), v.modulus());
        if a != 0 && b != 0 && a != b {
            return Err(Error::RingMismatch(format!("F{a} vs F{b}")));
        }
        Ok(self.eval(v))
    }

    /// `self(inner(x))` by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc = acc.add_constant(c);
        }
        acc
    }

    pub fn checked_compose(&self, inner: &Self) -> Result<Self> {
        self.check_ring(inner)?;
        Ok(self.compose(inner))
    }

    /// The `k`-fold iterate `f^k`, with `f^0 = x`.
    pub fn iterate(&self, k: usize) -> Self {
        let mut acc = Self::x();
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `[f^0, f^1, ..., f^k]`.
    pub fn iterates(&self, k: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(Self::x());
        for i in 0..k {
            let next = self.compose(&out[i]);
            out.push(next);
        }
        out
    }

    pub fn add_constant(&self, c: &R) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(c.clone());
        } else {
            coeffs[0] = coeffs[0].add_ref(c);
        }
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&R::from_i64(k as i64)))
                .collect(),
        )
    }

    /// Quotient and remainder with `deg rem < deg den`.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self)> {
        self.check_ring(den)?;
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let (q, r) = R::poly_div_rem(&self.coeffs, &den.coeffs)?;
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, den: &Self) -> Result<Self> {
        Ok(self.div_rem(den)?.1)
    }

    /// Quotient `q` with `self = den * q`; a nonzero remainder is returned
    /// inside [`Error::ExactDivision`].
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::ExactDivision {
                remainder_degree: r.deg(),
                remainder: r.to_string(),
            })
        }
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    /// Remainder modulo `x^n - 1`, computed by folding exponents mod n.
    pub fn rem_xn_minus_one(&self, n: usize) -> Self {
        assert!(n >= 1, "n must be positive");
        let mut folded = vec![R::zero(); n.min(self.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            let slot = &mut folded[k % n];
            *slot = slot.add_ref(c);
        }
        Self::new(folded)
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Polynomial<S>> {
        Ok(Polynomial::new(self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }

    /// Display with a chosen variable name.
    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag, compound) = c.display_parts();
            let first = out.is_empty();
            match (first, neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let xpow = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 && compound && !first {
                out.push_str(&format!("({mag})"));
            } else if k == 0 {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&xpow);
            } else if compound {
                out.push_str(&format!("({mag})*{xpow}"));
            } else {
                out.push_str(&format!("{mag}*{xpow}"));
            }
        }
        out
    }
}

impl<R: Field> Polynomial<R> {
    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(c) => self.scale(&c.inv()),
        }
    }
}

impl<R: Coeff> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl<R: Coeff> Default for Polynomial<R> {
    fn default() -> Self {
        Self::zero()
    }
}

fn zip_with<R: Coeff>(a: &[R], b: &[R], op: impl Fn(&R, &R) -> R) -> Vec<R> {
    let n = a.len().max(b.len());
    let zero = R::zero();
    (0..n)
        .map(|i| op(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

impl<'a, R: Coeff> Add<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
        Polynomial::new(zip_with(&self.coeffs, &rhs.coeffs, R::add_ref))
    }
}

impl<'a, R: Coeff> Sub<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
        Polynomial::new(zip_with(&self.coeffs, &rhs.coeffs, R::sub_ref))
    }
}

impl<'a, R: Coeff> Mul<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
        Polynomial::new(R::convolve(&self.coeffs, &rhs.coeffs))
    }
}

impl<R: Coeff> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<R: Coeff> Neg for Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Coeff> $tr<Polynomial<R>> for Polynomial<R> {
            type Output = Polynomial<R>;
            fn $m(self, rhs: Polynomial<R>) -> Polynomial<R> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, R: Coeff> $tr<&'a Polynomial<R>> for Polynomial<R> {
            type Output = Polynomial<R>;
            fn $m(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
                (&self).$m(rhs)
            }
        }
        impl<'a, R: Coeff> $tr<Polynomial<R>> for &'a Polynomial<R> {
            type Output = Polynomial<R>;
            fn $m(self, rhs: Polynomial<R>) -> Polynomial<R> {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Coeff> Zero for Polynomial<R> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Coeff> One for Polynomial<R> {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl<R: Coeff> std::iter::Product for Polynomial<R> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, QPoly};

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn ring_arith_examples() {
        assert_eq!(q(&[-1, 0, 1]) + q(&[1]), q(&[0, 0, 1]));
        assert_eq!(q(&[-1, 1]) * q(&[1, 1]), q(&[-1, 0, 1]));
        let m6 = q(&[0, 1, -1, -1, 0, 0, 1]).scale(&ratio(1, 6));
        assert_eq!(m6.to_string(), "1/6*x^6 - 1/6*x^3 - 1/6*x^2 + 1/6*x");
        assert_eq!(q(&[1, 2]).ring_arith(RingOp::Sub, &q(&[1, 2])).unwrap(), QPoly::zero());
    }

    #[test]
    fn degree_of_product_adds() {
        let a = q(&[3, 0, 2]);
        let b = q(&[1, 1, 1, 5]);
        assert_eq!((&a * &b).degree(), Some(5));
        assert_eq!((&a * &QPoly::zero()).degree(), None);
    }

    #[test]
    fn evaluate_examples() {
        let p = q(&[-5, 1, 1]);
        assert_eq!(p.eval(&rat(3)), rat(7));
        assert_eq!(p.eval(&rat(0)), rat(-5));
        let m6 = q(&[0, 1, -1, -1, 0, 0, 1]).scale(&ratio(1, 6));
        assert_eq!(m6.eval(&rat(1)), rat(0));
    }

    #[test]
    fn compose_examples() {
        let g = q(&[1, 0, 1]);
        assert_eq!(QPoly::x().compose(&g), g);
        assert_eq!(g.compose(&g), q(&[2, 0, 2, 0, 1]));
        assert_eq!(q(&[0, 0, 1]).compose(&q(&[0, 0, 0, 1])), q(&[0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn iterate_examples() {
        let sq = q(&[0, 0, 1]);
        assert_eq!(sq.iterate(3), QPoly::monomial(rat(1), 8));
        assert_eq!(q(&[1, 0, 1]).iterate(0), QPoly::x());
        assert_eq!(q(&[1, 0, 1]).iterate(2), q(&[2, 0, 2, 0, 1]));
        let its = q(&[1, 0, 1]).iterates(3);
        assert_eq!(its[3], q(&[1, 0, 1]).iterate(3));
    }

    #[test]
    fn div_exact_examples() {
        assert_eq!(q(&[0, -1, 0, 0, 1]).div_exact(&q(&[0, -1, 1])).unwrap(), q(&[0, 1, 1, 1]).div_exact(&QPoly::x()).unwrap());
        assert_eq!(q(&[0, -1, 0, 0, 1]).div_exact(&q(&[0, -1, 1])).unwrap(), q(&[1, 1, 1]));
        let p = q(&[4, 0, -3, 1]);
        assert_eq!(p.div_exact(&p).unwrap(), QPoly::one());
        assert_eq!(
            q(&[-1, 0, 0, 0, 0, 0, 1]).div_exact(&q(&[1, -1, 1])).unwrap(),
            q(&[-1, -1, 0, 1, 1])
        );
        match q(&[1, 0, 1]).div_exact(&q(&[-1, 1])) {
            Err(Error::ExactDivision { remainder_degree, remainder }) => {
                assert_eq!(remainder_degree, 0);
                assert_eq!(remainder, "2");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(q(&[1, 1]).div_exact(&QPoly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn remainder_examples() {
        assert_eq!(QPoly::monomial(rat(1), 5).rem(&q(&[-1, 0, 1])).unwrap(), QPoly::x());
        let p = q(&[3, 1, 4, 1, 5, 9, 2, 6]);
        assert_eq!(p.rem_xn_minus_one(3), p.rem(&QPoly::xn_minus_one(3)).unwrap());
    }

    #[test]
    fn derivative_example() {
        let p = QPoly::monomial(rat(1), 8) - QPoly::monomial(rat(1), 2);
        assert_eq!(p.derivative(), QPoly::monomial(rat(8), 7) - QPoly::monomial(rat(2), 1));
    }

    #[test]
    fn display_roundtrip_shapes() {
        assert_eq!(q(&[-5, 1, 1]).to_string(), "x^2 + x - 5");
        assert_eq!(q(&[0, 0, -1]).to_string(), "-x^2");
        assert_eq!(QPoly::zero().to_string(), "0");
    }
}
