//! Prime field elements with a runtime modulus.
//!
//! Every element carries its modulus. Constants produced without a ring in
//! scope (`Zero::zero`, `One::one`, `Coeff::from_i64`) have modulus 0 and
//! adopt the modulus of whatever they are combined with.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{CoefficientRing, Coeff, Field};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    value: i64,
    modulus: u64,
}

impl Fp {
    /// Element `v mod p`. The modulus must be prime and below 2^62.
    pub fn new(v: i64, p: u64) -> Result<Self> {
        if p < 2 || p >= 1 << 62 || !crate::numtheory::is_prime(p as u128) {
            return Err(Error::Domain(format!("{p} is not a supported prime modulus")));
        }
        Ok(Self::reduced(v as i128, p))
    }

    fn reduced(v: i128, p: u64) -> Self {
        Fp {
            value: v.rem_euclid(p as i128) as i64,
            modulus: p,
        }
    }

    /// Canonical representative in `0..p` (or the raw integer when unbound).
    pub fn value(&self) -> i64 {
        self.value
    }

    fn combine(self, rhs: Fp, op: impl Fn(i128, i128) -> i128) -> Fp {
        let m = match (self.modulus, rhs.modulus) {
            (0, m) | (m, 0) => m,
            (a, b) if a == b => a,
            (a, b) => panic!("prime field mismatch: F{a} vs F{b}"),
        };
        let v = op(self.value as i128, rhs.value as i128);
        if m == 0 {
            Fp {
                value: i64::try_from(v).expect("unbound F_p constant overflowed"),
                modulus: 0,
            }
        } else {
            Self::reduced(v, m)
        }
    }

    pub fn pow(self, e: u64) -> Fp {
        Coeff::pow_u(&self, e)
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (self.modulus, other.modulus) {
            (0, 0) => self.value == other.value,
            (0, m) | (m, 0) => {
                (self.value as i128).rem_euclid(m as i128) == (other.value as i128).rem_euclid(m as i128)
            }
            (a, b) => a == b && self.value == other.value,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.combine(rhs, |a, b| a * b)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.modulus == 0 {
            Fp { value: -self.value, modulus: 0 }
        } else {
            Self::reduced(-(self.value as i128), self.modulus)
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { value: 0, modulus: 0 }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { value: 1, modulus: 0 }
    }
}

impl Coeff for Fp {
    fn add_ref(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        let m = if rhs.modulus != 0 { rhs.modulus } else { self.modulus };
        if m == 0 {
            // both unbound: integer division when exact
            return (rhs.value != 0 && self.value % rhs.value == 0).then(|| Fp {
                value: self.value / rhs.value,
                modulus: 0,
            });
        }
        let r = Self::reduced(rhs.value as i128, m);
        if r.is_zero() {
            return None;
        }
        Some(*self * r.inv())
    }
    fn from_i64(v: i64) -> Self {
        Fp { value: v, modulus: 0 }
    }
    fn modulus(&self) -> u64 {
        self.modulus
    }
    fn ring_of(modulus: u64) -> CoefficientRing {
        CoefficientRing::PrimeField(modulus)
    }
    fn is_unit(&self) -> bool {
        if self.modulus == 0 {
            self.value == 1 || self.value == -1
        } else {
            self.value != 0
        }
    }
    fn display_parts(&self) -> (bool, String, bool) {
        (self.value < 0, self.value.unsigned_abs().to_string(), false)
    }
}

impl Field for Fp {
    fn inv(&self) -> Self {
        assert!(self.modulus != 0, "inverse of an unbound F_p constant");
        assert!(self.value != 0, "inverse of zero in F_{}", self.modulus);
        self.pow(self.modulus - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_five() {
        let two = Fp::new(2, 5).unwrap();
        assert_eq!(two * two * two * two, Fp::new(1, 5).unwrap());
        assert_eq!(two.inv(), Fp::new(3, 5).unwrap());
        assert_eq!(two - Fp::from_i64(3), Fp::new(4, 5).unwrap());
        assert_eq!(Fp::from_i64(7), Fp::new(2, 5).unwrap());
        assert!(Fp::new(1, 6).is_err());
    }

    #[test]
    #[should_panic(expected = "mismatch")]
    fn mismatched_moduli_panic() {
        let _ = Fp::new(1, 5).unwrap() + Fp::new(1, 7).unwrap();
    }
}
