//! Resultants by the subresultant remainder sequence.

use super::{Coeff, Polynomial};
use crate::{Error, Result};

/// `lc(den)^(deg num - deg den + 1) * num  mod den`, computed without
/// division. Requires `den` nonzero.
pub(crate) fn pseudo_rem<R: Coeff>(num: &Polynomial<R>, den: &Polynomial<R>) -> Polynomial<R> {
    let db = den.deg();
    if num.is_zero() || num.deg() < db {
        return num.clone();
    }
    let lead = den.leading().expect("nonzero divisor").clone();
    let den = den.coeffs();
    let mut r = num.coeffs().to_vec();
    while r.len() > db {
        let top = r.pop().expect("nonempty");
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c = c.mul_ref(&lead);
        }
        if !top.is_zero() {
            for (j, dj) in den[..db].iter().enumerate() {
                if !dj.is_zero() {
                    r[shift + j] = r[shift + j].sub_ref(&top.mul_ref(dj));
                }
            }
        }
    }
    Polynomial::new(r)
}

fn quo<R: Coeff>(a: &R, b: &R) -> Result<R> {
    a.div_exact(b)
        .ok_or_else(|| Error::InexactCoefficient(format!("{a} is not divisible by {b}")))
}

impl<R: Coeff> Polynomial<R> {
    /// `Res(p, q) = lc(p)^(deg q) * prod q(γ)` over the roots γ of p, i.e.
    /// the determinant of the Sylvester matrix.
    pub fn resultant(&self, other: &Self) -> Result<R> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::Domain("resultant of the zero polynomial".into()));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.deg() == 0 {
            return Ok(a.coeff(0).pow_u(b.deg() as u64));
        }
        if b.deg() == 0 {
            return Ok(b.coeff(0).pow_u(a.deg() as u64));
        }
        let mut negate = false;
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
            negate = a.deg() % 2 == 1 && b.deg() % 2 == 1;
        }
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let delta = a.deg() - b.deg();
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                negate = !negate;
            }
            let r = pseudo_rem(&a, &b);
            a = b;
            if r.is_zero() {
                return Ok(R::zero());
            }
            let divisor = g.mul_ref(&h.pow_u(delta as u64));
            b = r.try_map_coeffs(|c| quo(c, &divisor))?;
            g = a.leading().expect("nonzero").clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => quo(&g.pow_u(delta as u64), &h.pow_u(delta as u64 - 1))?,
            };
            if b.deg() == 0 {
                let da = a.deg() as u64;
                let lb = b.coeff(0);
                let res = quo(&lb.pow_u(da), &h.pow_u(da - 1))?;
                return Ok(if negate { -res } else { res });
            }
        }
    }
}

/// Sylvester matrix of `p` (deg a) and `q` (deg b): b shifted rows of p's
/// coefficients followed by a shifted rows of q's, highest degree first.
pub fn sylvester_matrix<R: Coeff>(p: &Polynomial<R>, q: &Polynomial<R>) -> Vec<Vec<R>> {
    let (a, b) = (p.deg(), q.deg());
    let size = a + b;
    let mut rows = Vec::with_capacity(size);
    for (poly, copies) in [(p, b), (q, a)] {
        let desc: Vec<R> = poly.coeffs().iter().rev().cloned().collect();
        for i in 0..copies {
            let mut row = vec![R::zero(); size];
            for (j, c) in desc.iter().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}
