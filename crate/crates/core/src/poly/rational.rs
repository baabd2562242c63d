use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{long_division, CoefficientRing, Coeff, Field};
use crate::{Rational, Result};

impl Coeff for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn ring_of(_: u64) -> CoefficientRing {
        CoefficientRing::Rationals
    }
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
    fn display_parts(&self) -> (bool, String, bool) {
        (self.is_negative(), self.abs().to_string(), false)
    }

    /// Clears denominators and convolves over the integers, so only one
    /// gcd per output coefficient is paid.
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let (ai, da) = to_integers(a);
        let (bi, db) = to_integers(b);
        let den = da * db;
        int_convolve(&ai, &bi)
            .into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect()
    }

    /// Integer long division when the divisor is integral with leading
    /// coefficient ±1 (all dynatomic and cyclotomic divisors); otherwise the
    /// generic field division.
    fn poly_div_rem(num: &[Self], den: &[Self]) -> Result<(Vec<Self>, Vec<Self>)> {
        let integral_unit_lead = den.iter().all(|c| c.is_integer())
            && den.last().is_some_and(|c| c.numer().abs().is_one());
        if !integral_unit_lead || num.len() < den.len() {
            return long_division(num, den);
        }
        let (n_int, n_den) = to_integers(num);
        let d_int: Vec<BigInt> = den.iter().map(|c| c.numer().clone()).collect();
        let (q, r) = int_div_rem_unit(n_int, &d_int);
        let wrap = |v: Vec<BigInt>| -> Vec<Rational> {
            v.into_iter().map(|c| Rational::new(c, n_den.clone())).collect()
        };
        Ok((wrap(q), wrap(r)))
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Scales a rational vector to integers: returns `(ints, L)` with
/// `v[i] = ints[i] / L`.
pub(crate) fn to_integers(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = v
        .iter()
        .map(|c| {
            if c.denom() == &l {
                c.numer().clone()
            } else {
                c.numer() * (&l / c.denom())
            }
        })
        .collect();
    (ints, l)
}

pub(crate) fn int_convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Long division by an integer polynomial whose leading coefficient is ±1.
fn int_div_rem_unit(mut rem: Vec<BigInt>, den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    let negate = den[dd].is_negative();
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        if rem[k + dd].is_zero() {
            continue;
        }
        let q = if negate { -&rem[k + dd] } else { rem[k + dd].clone() };
        for (j, dj) in den.iter().enumerate() {
            if !dj.is_zero() {
                rem[k + j] -= &q * dj;
            }
        }
        quot[k] = q;
    }
    rem.truncate(dd);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ratio, QPoly};

    #[test]
    fn fast_paths_agree_with_generic() {
        let a: Vec<Rational> = vec![ratio(1, 2), ratio(-3, 4), ratio(5, 6), ratio(7, 1)];
        let b: Vec<Rational> = vec![ratio(2, 3), ratio(0, 1), ratio(-1, 5)];
        assert_eq!(Rational::convolve(&a, &b), super::super::schoolbook(&a, &b));

        let den: Vec<Rational> = vec![ratio(3, 1), ratio(-2, 1), ratio(-1, 1)];
        let fast = Rational::poly_div_rem(&a, &den).unwrap();
        let slow = long_division(&a, &den).unwrap();
        assert_eq!(QPoly::new(fast.0), QPoly::new(slow.0));
        assert_eq!(QPoly::new(fast.1), QPoly::new(slow.1));
    }
}
