//! Dynatomic polynomials and universal divisibility relations.
//!
//! For a polynomial `f` of degree `k >= 2`,
//! `Phi_{f,d} = prod_{e | d} (f^{d/e}(x) - x)^{mu(e)}` vanishes at points of
//! primitive period `d`, and `Phi_{f,m,n} = Phi_{f,n}(f^m) / Phi_{f,n}(f^{m-1})`
//! at points that land on an `n`-cycle after exactly `m` steps. A tuple
//! `(m, n, c, d)` is admissible when its arithmetic forces
//! `Phi_{f,m,n} | Phi_{f,c,d} - 1` for every `f`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cyclotomic::cyclotomic_poly;
use crate::necklace::{necklace_terms, xn1_divides_factored};
use crate::numtheory::{divisors, factorize};
use crate::{Coeff, Error, Polynomial, QPoly, Rational, Result};

/// Default bound on the degree of any polynomial built by [`verify_relation`].
pub const DEFAULT_DEGREE_CAP: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationTuple {
    pub m: u64,
    pub n: u64,
    pub c: u64,
    pub d: u64,
}

impl RelationTuple {
    pub fn new(m: u64, n: u64, c: u64, d: u64) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Domain(format!("n and d must be positive (n = {n}, d = {d})")));
        }
        Ok(RelationTuple { m, n, c, d })
    }
}

/// Which hypotheses of the divisibility theorem hold for a tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// `m > c` or `n` does not divide `d`.
    pub cond1: bool,
    /// `cocore(d) >= m - max(c - 1, 0)`.
    pub cond2: bool,
    /// `x^n - 1` divides `M_d`.
    pub cond3: bool,
    /// `d > 1`, `c - 1 >= m` and `n = 1`.
    pub alt: bool,
    pub admissible: bool,
}

pub fn theorem1_conditions(t: &RelationTuple) -> Result<ConditionReport> {
    let fd = factorize(t.d as u128)?;
    let (m, c) = (t.m as i128, t.c as i128);
    let cond1 = t.m > t.c || t.d % t.n != 0;
    let cond2 = fd.cocore() as i128 >= m - (c - 1).max(0);
    let cond3 = xn1_divides_factored(&fd, t.n as u128);
    let alt = t.d > 1 && c - 1 >= m && t.n == 1;
    Ok(ConditionReport {
        cond1,
        cond2,
        cond3,
        alt,
        admissible: (cond1 && cond2 && cond3) || alt,
    })
}

fn degree_overflow(cap: usize) -> Error {
    Error::DegreeCap { degree: u128::MAX, cap }
}

/// `deg Phi_{f,d} = sum_{e | d} mu(e) k^{d/e}` for `deg f = k`.
pub fn dynatomic_degree(k: u64, d: u64) -> Option<u128> {
    let mut total: i128 = 0;
    for (exp, mu) in necklace_terms(d as u128).ok()? {
        let term = (k as i128).checked_pow(u32::try_from(exp).ok()?)?;
        total = total.checked_add(mu as i128 * term)?;
    }
    u128::try_from(total).ok()
}

/// `deg Phi_{f,m,n}`: `deg Phi_{f,n}` when `m = 0`, else
/// `k^{m-1} (k - 1) deg Phi_{f,n}`.
pub fn generalized_degree(k: u64, m: u64, n: u64) -> Option<u128> {
    let base = dynatomic_degree(k, n)?;
    if m == 0 {
        return Some(base);
    }
    (k as u128)
        .checked_pow(u32::try_from(m - 1).ok()?)?
        .checked_mul(k as u128 - 1)?
        .checked_mul(base)
}

fn require_degree<R: Coeff>(f: &Polynomial<R>) -> Result<usize> {
    match f.degree() {
        Some(k) if k >= 2 => Ok(k),
        _ => Err(Error::Precondition(format!("f = {f} must have degree at least 2"))),
    }
}

/// `Phi_{f,d}`: the product of the factors with `mu = +1`, divided exactly
/// by the product of those with `mu = -1`.
pub fn dynatomic_poly<R: Coeff>(f: &Polynomial<R>, d: u64) -> Result<Polynomial<R>> {
    require_degree(f)?;
    let terms = necklace_terms(d as u128)?;
    let top = terms.last().map_or(0, |t| t.0) as usize;
    let iterates = f.iterates(top);
    let x = Polynomial::x();
    let mut num = Polynomial::one();
    let mut den = Polynomial::one();
    for (k, mu) in terms {
        let factor = &iterates[k as usize] - &x;
        if mu > 0 {
            num = &num * &factor;
        } else {
            den = &den * &factor;
        }
    }
    num.div_exact(&den)
}

/// `Phi_{f,m,n} = Phi_{f,n}(f^m) / Phi_{f,n}(f^{m-1})`, with
/// `Phi_{f,0,n} = Phi_{f,n}`.
pub fn generalized_dynatomic<R: Coeff>(f: &Polynomial<R>, m: u64, n: u64) -> Result<Polynomial<R>> {
    let phi_n = dynatomic_poly(f, n)?;
    if m == 0 {
        return Ok(phi_n);
    }
    let inner = f.iterate(m as usize - 1);
    let lower = phi_n.compose(&inner);
    let upper = phi_n.compose(&f.compose(&inner));
    upper.div_exact(&lower)
}

/// `f^{m+n} - f^m`.
pub fn dynamic_factor<R: Coeff>(f: &Polynomial<R>, m: u64, n: u64) -> Polynomial<R> {
    let fm = f.iterate(m as usize);
    let mut fmn = fm.clone();
    for _ in 0..n {
        fmn = f.compose(&fmn);
    }
    &fmn - &fm
}

/// `prod_{i <= m, j | n} Phi_{f,i,j} = f^{m+n} - f^m`.
pub fn telescope_check<R: Coeff>(f: &Polynomial<R>, m: u64, n: u64) -> Result<bool> {
    let mut product = Polynomial::one();
    for i in 0..=m {
        for j in divisors(n as u128)? {
            product = &product * &generalized_dynatomic(f, i, j as u64)?;
        }
    }
    Ok(product == dynamic_factor(f, m, n))
}

/// Outcome of dividing `Phi_{f,c,d} - 1` by `Phi_{f,m,n}` for one `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub family: String,
    pub ring: String,
    pub seed: Option<u64>,
    pub divides: bool,
    pub cofactor_degree: Option<usize>,
    pub remainder_degree: Option<usize>,
}

impl Evidence {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "ring": self.ring,
            "seed": self.seed,
            "divides": self.divides,
            "cofactor_degree": self.cofactor_degree,
            "remainder_degree": self.remainder_degree,
        })
    }
}

/// The two sides of a relation together with the division outcome.
#[derive(Clone, Debug)]
pub struct RelationCheck<R> {
    pub divisor: Polynomial<R>,
    pub target: Polynomial<R>,
    pub quotient: Polynomial<R>,
    pub remainder: Polynomial<R>,
}

impl<R: Coeff> RelationCheck<R> {
    pub fn divides(&self) -> bool {
        self.remainder.is_zero()
    }
}

fn check_cap(k: usize, m: u64, n: u64, cap: usize) -> Result<()> {
    let deg = generalized_degree(k as u64, m, n).ok_or_else(|| degree_overflow(cap))?;
    if deg > cap as u128 {
        return Err(Error::DegreeCap { degree: deg, cap });
    }
    Ok(())
}

/// Build `Phi_{f,m,n}` and `Phi_{f,c,d} - 1` and divide, refusing when
/// either degree exceeds `cap`.
pub fn relation_check<R: Coeff>(
    t: &RelationTuple,
    f: &Polynomial<R>,
    cap: usize,
) -> Result<RelationCheck<R>> {
    let k = require_degree(f)?;
    check_cap(k, t.m, t.n, cap)?;
    check_cap(k, t.c, t.d, cap)?;
    let divisor = generalized_dynatomic(f, t.m, t.n)?;
    let target = generalized_dynatomic(f, t.c, t.d)?.add_constant(&-R::one());
    let (quotient, remainder) = target.div_rem(&divisor)?;
    Ok(RelationCheck { divisor, target, quotient, remainder })
}

/// Exact check of `Phi_{f,m,n} | Phi_{f,c,d} - 1` for a single `f`.
pub fn verify_relation<R: Coeff>(t: &RelationTuple, f: &Polynomial<R>, cap: usize) -> Result<Evidence> {
    let check = relation_check(t, f, cap)?;
    let divides = check.divides();
    Ok(Evidence {
        family: f.to_string(),
        ring: f.ring().to_string(),
        seed: None,
        divides,
        cofactor_degree: divides.then(|| check.quotient.deg()),
        remainder_degree: (!divides).then(|| check.remainder.deg()),
    })
}

/// Random monic integer polynomial of degree 2 to 4 with lower
/// coefficients in `[-3, 3]`.
pub fn random_monic_integer<G: Rng>(rng: &mut G) -> QPoly {
    let k = rng.gen_range(2..=4usize);
    let mut coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
    coeffs.push(1);
    QPoly::from_ints(&coeffs)
}

/// The seeded sample of `trials` polynomials used by [`random_leg`].
pub fn random_sample(seed: u64, trials: usize) -> Vec<QPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| random_monic_integer(&mut rng)).collect()
}

/// Verify a tuple for a seeded sample of random monic integer polynomials.
/// The polynomials are drawn in order, then checked in parallel.
pub fn random_leg(t: &RelationTuple, seed: u64, trials: usize, cap: usize) -> Result<Vec<Evidence>> {
    random_sample(seed, trials)
        .par_iter()
        .map(|f| {
            let mut e = verify_relation(t, f, cap)?;
            e.seed = Some(seed);
            Ok(e)
        })
        .collect()
}

/// A tuple, its conditions and the evidence gathered for it.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCertificate {
    pub tuple: RelationTuple,
    pub conditions: ConditionReport,
    pub evidence: Vec<Evidence>,
}

impl RelationCertificate {
    pub fn new(tuple: RelationTuple) -> Result<Self> {
        Ok(RelationCertificate {
            tuple,
            conditions: theorem1_conditions(&tuple)?,
            evidence: Vec::new(),
        })
    }

    pub fn all_divide(&self) -> bool {
        self.evidence.iter().all(|e| e.divides)
    }

    pub fn to_json(&self) -> Value {
        let t = &self.tuple;
        let c = &self.conditions;
        json!({
            "tuple": {"m": t.m, "n": t.n, "c": t.c, "d": t.d},
            "conditions": {
                "cond1": c.cond1,
                "cond2": c.cond2,
                "cond3": c.cond3,
                "alt": c.alt,
                "admissible": c.admissible,
            },
            "evidence": self.evidence.iter().map(Evidence::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `Phi_{f,d}(alpha)` and `Phi_d(f'(alpha))` at a fixed point `alpha`.
pub fn fixed_point_identity(f: &QPoly, alpha: &Rational, d: u64) -> Result<(Rational, Rational, bool)> {
    if d < 2 {
        return Err(Error::Precondition("the multiplier identity needs d >= 2".into()));
    }
    if f.eval(alpha) != *alpha {
        return Err(Error::Precondition(format!("{alpha} is not a fixed point of {f}")));
    }
    let lhs = dynatomic_poly(f, d)?.eval(alpha);
    let lambda = f.derivative().eval(alpha);
    let rhs = cyclotomic_poly(d)?.eval(&lambda);
    let equal = lhs == rhs;
    Ok((lhs, rhs, equal))
}

/// `f = lambda (x - alpha) + alpha + (x - alpha)^2`: fixed point `alpha`
/// with multiplier `lambda`.
pub fn with_fixed_point(alpha: &Rational, lambda: &Rational) -> QPoly {
    let shifted = QPoly::new(vec![-alpha.clone(), Rational::from_integer(1.into())]);
    let linear = shifted.scale(lambda).add_constant(alpha);
    &linear + &(&shifted * &shifted)
}

/// `Res(Phi_{f,m,n}, Phi_{f,c,d})`; equal to 1 whenever the relation holds
/// and both sides are monic.
pub fn unit_relation_resultant<R: Coeff>(f: &Polynomial<R>, t: &RelationTuple) -> Result<R> {
    require_degree(f)?;
    if !f.is_monic() {
        return Err(Error::Precondition(format!("f = {f} must be monic")));
    }
    let a = generalized_dynatomic(f, t.m, t.n)?;
    let b = generalized_dynatomic(f, t.c, t.d)?;
    a.resultant(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::{parse_family, parse_mod_p, parse_rational};
    use crate::{rat, ratio, QaPoly};
    use num_traits::Zero;

    fn q(s: &str) -> QPoly {
        parse_rational(s).unwrap()
    }

    #[test]
    fn dynatomic_examples() {
        let f = q("x^2 + 3x - 1");
        assert_eq!(dynatomic_poly(&f, 1).unwrap(), q("x^2 + 2x - 1"));
        assert_eq!(dynatomic_poly(&q("x^2"), 2).unwrap(), q("x^2 + x + 1"));
        let fam = parse_family("x^2 + a").unwrap();
        assert_eq!(dynatomic_poly(&fam, 2).unwrap(), parse_family("x^2 + x + a + 1").unwrap());
        assert!(dynatomic_poly(&q("x + 1"), 2).is_err());
    }

    #[test]
    fn generalized_examples() {
        let fam = parse_family("x^2 + a").unwrap();
        assert_eq!(generalized_dynatomic(&fam, 0, 3).unwrap(), dynatomic_poly(&fam, 3).unwrap());
        assert_eq!(generalized_dynatomic(&fam, 1, 1).unwrap(), parse_family("x^2 + x + a").unwrap());
        assert_eq!(
            generalized_dynatomic(&q("x^3 + 1"), 1, 1).unwrap(),
            q("x^6 + x^4 + 2x^3 + x^2 + x + 1")
        );
        for (m, n) in [(1, 2), (2, 1), (2, 3), (3, 1)] {
            let g = generalized_dynatomic(&fam, m, n).unwrap();
            assert_eq!(g.deg() as u128, generalized_degree(2, m, n).unwrap());
        }
    }

    #[test]
    fn telescope_examples() {
        assert!(telescope_check(&q("x^2"), 1, 2).unwrap());
        assert_eq!(dynamic_factor(&q("x^2"), 1, 2), q("x^8 - x^2"));
        assert!(telescope_check(&q("x^2 + 1"), 0, 1).unwrap());
        assert!(telescope_check(&q("x^3 + 1"), 0, 2).unwrap());
        assert_eq!(dynamic_factor(&q("x^3 + 1"), 0, 2).deg(), 9);
    }

    #[test]
    fn condition_examples() {
        let r = theorem1_conditions(&RelationTuple::new(1, 2, 1, 3).unwrap()).unwrap();
        assert!(r.cond1 && r.cond2 && r.cond3 && r.admissible);
        let r = theorem1_conditions(&RelationTuple::new(0, 2, 0, 6).unwrap()).unwrap();
        assert!(!r.cond1 && !r.admissible);
        let r = theorem1_conditions(&RelationTuple::new(1, 1, 2, 5).unwrap()).unwrap();
        assert!(r.alt && r.admissible);
        // m - max(c - 1, 0) may be negative
        let r = theorem1_conditions(&RelationTuple::new(0, 1, 5, 7).unwrap()).unwrap();
        assert!(r.cond2);
        assert!(RelationTuple::new(0, 0, 0, 1).is_err());
    }

    #[test]
    fn relation_examples() {
        let f = q("x^2 + 1");
        let e = verify_relation(&RelationTuple::new(0, 2, 0, 3).unwrap(), &f, 5000).unwrap();
        assert!(e.divides);
        let e = verify_relation(&RelationTuple::new(1, 1, 0, 2).unwrap(), &f, 5000).unwrap();
        assert!(e.divides);
        assert_eq!(e.cofactor_degree, Some(0));
        assert_eq!(e.remainder_degree, None);

        let fam = parse_family("x^2 + a").unwrap();
        let e = verify_relation(&RelationTuple::new(0, 2, 0, 6).unwrap(), &fam, 5000).unwrap();
        assert!(!e.divides);
        assert!(e.remainder_degree.is_some() && e.cofactor_degree.is_none());
        assert_eq!(e.ring, "Q[a]");

        let err = verify_relation(&RelationTuple::new(0, 1, 0, 13).unwrap(), &fam, 5000).unwrap_err();
        assert!(matches!(err, Error::DegreeCap { .. }));
    }

    #[test]
    fn fixed_point_examples() {
        let f = q("x^2 - 6");
        assert_eq!(dynatomic_poly(&f, 2).unwrap(), q("x^2 + x - 5"));
        assert_eq!(fixed_point_identity(&f, &rat(3), 2).unwrap(), (rat(7), rat(7), true));
        assert_eq!(fixed_point_identity(&f, &rat(3), 4).unwrap(), (rat(37), rat(37), true));
        assert_eq!(fixed_point_identity(&q("x^2"), &rat(0), 2).unwrap(), (rat(1), rat(1), true));
        assert!(fixed_point_identity(&f, &rat(1), 2).is_err());
        let g = with_fixed_point(&ratio(2, 3), &ratio(-5, 2));
        assert_eq!(g.eval(&ratio(2, 3)), ratio(2, 3));
        assert_eq!(g.derivative().eval(&ratio(2, 3)), ratio(-5, 2));
    }

    #[test]
    fn resultant_examples() {
        let t = RelationTuple::new(1, 1, 0, 2).unwrap();
        assert_eq!(unit_relation_resultant(&q("x^2 + 1"), &t).unwrap(), rat(1));
        assert_eq!(unit_relation_resultant(&q("x^3 + 1"), &t).unwrap(), rat(1));
        let fam = parse_family("x^2 + a").unwrap();
        let r = unit_relation_resultant(&fam, &RelationTuple::new(0, 1, 0, 2).unwrap()).unwrap();
        assert!(r.deg() > 0);
        assert!(unit_relation_resultant(&q("2x^2 + 1"), &t).is_err());
    }

    #[test]
    fn prime_field_common_root() {
        let f = parse_mod_p("x^5 + 2x", 5).unwrap();
        let t = RelationTuple::new(0, 1, 0, 4).unwrap();
        let r = unit_relation_resultant(&f, &t).unwrap();
        assert!(r.is_zero());
        assert_eq!(dynatomic_poly(&f, 4).unwrap().deg(), 600);
    }

    #[test]
    fn random_sample_is_reproducible() {
        assert_eq!(random_sample(0, 5), random_sample(0, 5));
        for f in random_sample(3, 50) {
            assert!(f.is_monic() && (2..=4).contains(&f.deg()));
        }
        let lifted = QaPoly::lift(&q("x^2 + 1"));
        assert_eq!(lifted.to_rational().unwrap(), q("x^2 + 1"));
    }
}
