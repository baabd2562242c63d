//! Greatest common divisors and squarefreeness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::resultant::pseudo_rem;
use super::{Coeff, Field, Polynomial};
use crate::{Error, Fp, FpPoly, QPoly, QaPoly, Rational, Result};

/// Coefficient rings with a polynomial gcd.
///
/// Over a field the gcd is monic. Over `Q[a]` it is primitive (content 1)
/// and scaled so the leading coefficient in `x` is monic in `a`.
pub trait PolyGcd: Coeff {
    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Result<Polynomial<Self>>;
}

/// Result of a squarefreeness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separability {
    Squarefree,
    Repeated,
    /// Positive degree with identically zero derivative (characteristic p).
    Inseparable,
}

fn field_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
    let mut a = a.make_monic();
    let mut b = b.make_monic();
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r.make_monic();
    }
    Ok(a)
}

impl PolyGcd for Fp {
    fn poly_gcd(a: &FpPoly, b: &FpPoly) -> Result<FpPoly> {
        field_gcd(a, b)
    }
}

const CERT_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 2_147_483_647, 1_000_000_007];

pub(crate) fn reduce_rational(c: &Rational, p: u64) -> Option<Fp> {
    let pm = BigInt::from(p);
    let n = c.numer().mod_floor(&pm).to_i64()?;
    let d = c.denom().mod_floor(&pm).to_i64()?;
    if d == 0 {
        return None;
    }
    let n = Fp::new(n, p).ok()?;
    let d = Fp::new(d, p).ok()?;
    n.div_exact(&d)
}

/// Reduces a rational polynomial mod p, refusing primes that divide a
/// denominator or the leading coefficient.
pub(crate) fn reduce_mod_p(a: &QPoly, p: u64) -> Option<FpPoly> {
    let coeffs: Option<Vec<Fp>> = a.coeffs().iter().map(|c| reduce_rational(c, p)).collect();
    let red = FpPoly::new(coeffs?);
    (red.degree() == a.degree()).then_some(red)
}

impl PolyGcd for Rational {
    fn poly_gcd(a: &QPoly, b: &QPoly) -> Result<QPoly> {
        // A coprimality certificate mod p: if p keeps both degrees and the
        // reductions are coprime over F_p, the rational gcd is 1.
        if a.deg() >= 1 && b.deg() >= 1 {
            for &p in &CERT_PRIMES {
                if let (Some(ap), Some(bp)) = (reduce_mod_p(a, p), reduce_mod_p(b, p)) {
                    if field_gcd(&ap, &bp)?.degree() == Some(0) {
                        return Ok(QPoly::one());
                    }
                    break;
                }
            }
        }
        field_gcd(a, b)
    }
}

fn param_content(p: &QaPoly) -> Result<QPoly> {
    let mut g = QPoly::zero();
    for c in p.coeffs() {
        g = Rational::poly_gcd(&g, c)?;
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(g)
}

fn param_primitive(p: &QaPoly) -> Result<QaPoly> {
    if p.is_zero() {
        return Ok(QaPoly::zero());
    }
    let c = param_content(p)?;
    let pp = p.try_map_coeffs(|x| {
        x.div_exact(&c)
    })?;
    // normalise so that the leading x-coefficient is monic in a
    let lead: Rational = pp.coeff(pp.deg()).coeff(pp.coeff(pp.deg()).deg());
    Ok(pp.map_coeffs(|x| x.scale(&lead.inv())))
}

impl PolyGcd for QPoly {
    fn poly_gcd(a: &QaPoly, b: &QaPoly) -> Result<QaPoly> {
        if a.is_zero() {
            if b.is_zero() {
                return Ok(QaPoly::zero());
            }
            return Ok(param_primitive(b)?.scale(&param_content(b)?));
        }
        if b.is_zero() {
            return Self::poly_gcd(b, a);
        }
        let content = Rational::poly_gcd(&param_content(a)?, &param_content(b)?)?;
        let (mut x, mut y) = (param_primitive(a)?, param_primitive(b)?);
        if x.deg() < y.deg() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            if y.deg() == 0 {
                return Ok(QaPoly::constant(content));
            }
            let r = pseudo_rem(&x, &y);
            x = y;
            y = param_primitive(&r)?;
        }
        Ok(x.scale(&content))
    }
}

impl<R: PolyGcd> Polynomial<R> {
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.modulus(), other.modulus());
        if a != 0 && b != 0 && a != b {
            return Err(Error::RingMismatch(format!("F{a} vs F{b}")));
        }
        R::poly_gcd(self, other)
    }
}

impl<R: PolyGcd + Field> Polynomial<R> {
    pub fn separability(&self) -> Result<Separability> {
        if self.is_zero() {
            return Ok(Separability::Repeated);
        }
        let d = self.derivative();
        if self.deg() >= 1 && d.is_zero() {
            return Ok(Separability::Inseparable);
        }
        Ok(if self.gcd(&d)?.degree() == Some(0) {
            Separability::Squarefree
        } else {
            Separability::Repeated
        })
    }

    /// `gcd(p, p')` is a nonzero constant (and `p'` is nonzero when
    /// `deg p >= 1`).
    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(self.separability()? == Separability::Squarefree)
    }
}
