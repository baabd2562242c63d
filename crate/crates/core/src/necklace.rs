//! Necklace polynomials and the bracket calculus of necklace operators.
//!
//! A bracket `[k]` acts on polynomials by `[k]g(x) = g(x^k)`. Integer
//! combinations of brackets form a ring under `[j][k] = [jk]`, and the
//! necklace operator `phi_d = sum_{e | d} mu(e) [d/e]` sends `x` to
//! `d * M_d(x)`. Divisibility of `M_d` by `x^m (x^n - 1)` is the vanishing of
//! `phi_d` in the quotient where `[m + n] = [m]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::numtheory::{factorize, Factorization};
use crate::{Coeff, Error, Polynomial, QPoly, Rational, Result};

/// Sparse form of `d * M_d`: pairs `(exponent d/e, mu(e))` with nonzero
/// Möbius value, sorted by exponent.
pub fn necklace_terms(d: u128) -> Result<Vec<(u128, i8)>> {
    let f = factorize(d)?;
    Ok(terms_of(&f))
}

fn terms_of(f: &Factorization) -> Vec<(u128, i8)> {
    let d = f.value();
    let mut out: Vec<(u128, i8)> = f
        .squarefree_divisors()
        .into_iter()
        .map(|(e, mu)| (d / e, mu))
        .collect();
    out.sort_unstable();
    out
}

/// `M_d(x) = (1/d) sum_{e | d} mu(e) x^{d/e}`.
pub fn necklace_poly(d: u64) -> Result<QPoly> {
    if d == 0 {
        return Err(Error::Domain("necklace polynomial needs d >= 1".into()));
    }
    let terms = necklace_terms(d as u128)?;
    let mut coeffs = vec![Rational::zero(); d as usize + 1];
    let scale = crate::ratio(1, d as i64);
    for (k, mu) in terms {
        coeffs[k as usize] = &scale * crate::rat(mu as i64);
    }
    Ok(QPoly::new(coeffs))
}

/// `x`-adic valuation of `M_d`, read off the sparse form (the exponents
/// `d/e` are distinct, so nothing cancels).
pub fn necklace_valuation(d: u128) -> Result<u128> {
    Ok(necklace_terms(d)?[0].0)
}

/// Integer combination of brackets `[k]`, `k >= 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PsiElement {
    terms: BTreeMap<u64, i64>,
}

impl PsiElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn bracket(k: u64) -> Self {
        Self::from_terms([(k, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: u64, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(k).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<u64, i64> {
        &self.terms
    }

    pub fn coeff(&self, k: u64) -> i64 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, &c)| (k, -c)))
    }

    /// Bracket product `[j][k] = [jk]`, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&j, &a) in &self.terms {
            for (&k, &b) in &other.terms {
                out.add_term(j * k, a * b);
            }
        }
        out
    }

    /// The part with positive coefficients.
    pub fn positive_part(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(_, &c)| c > 0).map(|(&k, &c)| (k, c)))
    }

    /// Minus the part with negative coefficients, so `e = e+ - e-`.
    pub fn negative_part(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(_, &c)| c < 0).map(|(&k, &c)| (k, -c)))
    }

    /// Apply to a polynomial: `sum c_k g(x^k)`. `[0]` sends `g` to `g(1)`.
    pub fn apply<R: Coeff>(&self, g: &Polynomial<R>) -> Polynomial<R> {
        let mut out = Polynomial::zero();
        for (&k, &c) in &self.terms {
            let gk = if k == 0 {
                Polynomial::constant(g.eval(&R::one()))
            } else {
                let mut coeffs = vec![R::zero(); g.deg() * k as usize + 1];
                for (i, gi) in g.coeffs().iter().enumerate() {
                    coeffs[i * k as usize] = gi.clone();
                }
                Polynomial::new(coeffs)
            };
            out = &out + &gk.scale(&R::from_i64(c));
        }
        out
    }
}

impl fmt::Display for PsiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c.abs()) {
                (0, 1) if c < 0 => write!(f, "-[{k}]")?,
                (0, 1) => write!(f, "[{k}]")?,
                (0, a) => write!(f, "{}{a}[{k}]", if c < 0 { "-" } else { "" })?,
                (_, 1) => write!(f, " {sign} [{k}]")?,
                (_, a) => write!(f, " {sign} {a}[{k}]")?,
            }
        }
        Ok(())
    }
}

/// The quotient of the bracket ring by `[m + n] = [m]`, modelled on
/// `Q[x] / (x^{m+n} - x^m)`. Representatives are `0..m+n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PsiQuotient {
    pub m: u64,
    pub n: u64,
}

impl PsiQuotient {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("quotient needs n >= 1".into()));
        }
        Ok(PsiQuotient { m, n })
    }

    pub fn dimension(&self) -> u64 {
        self.m + self.n
    }

    /// Representative of the class of `[k]`.
    pub fn rep(&self, k: u64) -> u64 {
        if k < self.m + self.n {
            k
        } else {
            self.m + (k - self.m) % self.n
        }
    }

    fn rep_wide(&self, k: u128) -> u64 {
        let (m, n) = (self.m as u128, self.n as u128);
        if k < m + n {
            k as u64
        } else {
            (m + (k - m) % n) as u64
        }
    }

    pub fn reduce(&self, e: &PsiElement) -> PsiElement {
        PsiElement::from_terms(e.terms.iter().map(|(&k, &c)| (self.rep(k), c)))
    }

    pub fn mul(&self, a: &PsiElement, b: &PsiElement) -> PsiElement {
        let mut out = PsiElement::zero();
        for (&j, &x) in &a.terms {
            for (&k, &y) in &b.terms {
                out.add_term(self.rep_wide(j as u128 * k as u128), x * y);
            }
        }
        out
    }

    /// Inverse of a signed bracket `±[k]`, found by searching the
    /// representatives for `j` with `[k][j] = [1]`.
    pub fn inverse(&self, e: &PsiElement) -> Result<PsiElement> {
        let e = self.reduce(e);
        let (k, c) = match e.terms.iter().next() {
            Some((&k, &c)) if e.terms.len() == 1 && c.abs() == 1 => (k, c),
            _ => {
                return Err(Error::NotInvertible(format!(
                    "{e} is not a signed bracket in the quotient (m, n) = ({}, {})",
                    self.m, self.n
                )))
            }
        };
        let one = self.rep(1);
        (0..self.dimension())
            .find(|&j| self.rep_wide(k as u128 * j as u128) == one)
            .map(|j| PsiElement::from_terms([(j, c)]))
            .ok_or_else(|| {
                Error::NotInvertible(format!("[{k}] has no inverse modulo [{}] = [{}]", self.m + self.n, self.m))
            })
    }

    /// `[d] * prod_{p | d} (1 - [p]^{-1})` evaluated in the quotient; agrees
    /// with the reduced necklace operator whenever every `[p]` is invertible.
    pub fn factored_operator(&self, d: u64) -> Result<PsiElement> {
        let f = factorize(d as u128)?;
        let mut acc = self.reduce(&PsiElement::bracket(d));
        for p in f.primes() {
            let inv = self.inverse(&PsiElement::bracket(p as u64))?;
            let factor = self.reduce(&PsiElement::bracket(1).sub(&inv));
            acc = self.mul(&acc, &factor);
        }
        Ok(acc)
    }
}

/// `phi_d = sum_{e | d} mu(e) [d/e]`.
pub fn necklace_operator(d: u64) -> Result<PsiElement> {
    let terms = necklace_terms(d as u128)?;
    Ok(PsiElement::from_terms(terms.into_iter().map(|(k, mu)| (k as u64, mu as i64))))
}

pub fn psi_reduce(e: &PsiElement, q: PsiQuotient) -> PsiElement {
    q.reduce(e)
}

/// Whether `phi_d` vanishes in the quotient `[m + n] = [m]`, i.e. whether
/// `x^m (x^n - 1)` divides `M_d`.
pub fn psi_vanishes(d: u64, m: u64, n: u64) -> Result<bool> {
    let q = PsiQuotient::new(m, n)?;
    Ok(q.reduce(&necklace_operator(d)?).is_zero())
}

/// `x^n - 1 | M_d`, decided from the Möbius sums over residue classes of
/// the exponents `d/e` mod n.
pub fn fast_xn1_divides(d: u128, n: u128) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(xn1_divides_factored(&factorize(d)?, n))
}

/// As [`fast_xn1_divides`] for an already factored `d`.
pub fn xn1_divides_factored(f: &Factorization, n: u128) -> bool {
    let d = f.value();
    let mut sums: HashMap<u128, i64> = HashMap::new();
    for (e, mu) in f.squarefree_divisors() {
        *sums.entry((d / e) % n).or_insert(0) += mu as i64;
    }
    sums.values().all(|&s| s == 0)
}

/// Every `(d, n)` in `[1, d_max] x [1, n_max]` with `x^n - 1 | M_d`,
/// ordered by `(d, n)`. Rows for each `d` are computed in parallel and
/// concatenated in order.
pub fn scan_grid(d_max: u64, n_max: u64) -> Result<Vec<(u64, u64)>> {
    let rows: Vec<Vec<(u64, u64)>> = (1..=d_max)
        .into_par_iter()
        .map(|d| {
            let f = factorize(d as u128)?;
            Ok((1..=n_max)
                .filter(|&n| xn1_divides_factored(&f, n as u128))
                .map(|n| (d, n))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(rows.concat())
}

/// `M_{f,d} = (1/d) sum_{e | d} mu(e) f^{d/e}`.
pub fn dynamical_necklace<R: Coeff>(f: &Polynomial<R>, d: u64) -> Result<Polynomial<R>> {
    let lead = f
        .leading()
        .ok_or_else(|| Error::Domain("dynamical necklace of the zero polynomial".into()))?;
    // a ring-bound one, so that prime-field constants carry the modulus
    let one = lead.div_exact(lead).expect("leading coefficient is nonzero");
    let inv_d = one
        .div_exact(&one.mul_ref(&R::from_i64(d as i64)))
        .ok_or_else(|| Error::Domain(format!("{d} is not invertible in {}", f.ring())))?;
    let iterates = f.iterates(d as usize);
    let mut acc = Polynomial::zero();
    for (k, mu) in necklace_terms(d as u128)? {
        acc = &acc + &iterates[k as usize].scale(&R::from_i64(mu as i64));
    }
    Ok(acc.scale(&inv_d))
}
