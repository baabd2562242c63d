use dynlab::necklace::{
    dynamical_necklace, fast_xn1_divides, necklace_operator, necklace_poly, necklace_terms,
    necklace_valuation, psi_reduce, psi_vanishes, PsiElement, PsiQuotient,
};
use dynlab::numtheory::factorize;
use dynlab::poly::parse::{parse_family, parse_rational};
use dynlab::{rat, Polynomial, QPoly};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

/// Trial-division cocore: `d` divided by the product of its distinct primes.
fn cocore_oracle(d: u64) -> u64 {
    let (mut rest, mut core) = (d, 1);
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            core *= p;
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        core *= rest;
    }
    d / core
}

#[test]
fn fast_check_agrees_with_remainder_on_full_grid() {
    for d in 1..=300u64 {
        let md = necklace_poly(d).unwrap();
        for n in 1..=300u64 {
            let slow = md.rem_xn_minus_one(n as usize).is_zero();
            assert_eq!(fast_xn1_divides(d as u128, n as u128).unwrap(), slow, "d = {d}, n = {n}");
        }
    }
}

#[test]
fn vanishing_in_quotient_matches_division() {
    for d in 1..=60u64 {
        let md = necklace_poly(d).unwrap();
        for m in 0..=4u64 {
            for n in 1..=12u64 {
                let modulus = QPoly::xn_minus_one(n as usize).shift(m as usize);
                let (_, r) = md.div_rem(&modulus).unwrap();
                assert_eq!(psi_vanishes(d, m, n).unwrap(), r.is_zero(), "d = {d}, m = {m}, n = {n}");
            }
        }
    }
}

/// Monic polynomials mod q, coefficients ascending, as plain integer vectors.
fn monic_polys(q: u64, deg: usize) -> Vec<Vec<u64>> {
    let count = q.pow(deg as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(idx % q);
                idx /= q;
            }
            c.push(1);
            c
        })
        .collect()
}

fn mul_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    out
}

fn irreducible_count(q: u64, deg: usize) -> u64 {
    let mut reducible = std::collections::HashSet::new();
    for i in 1..=deg / 2 {
        let small = monic_polys(q, i);
        let large = monic_polys(q, deg - i);
        for a in &small {
            for b in &large {
                reducible.insert(mul_mod(a, b, q));
            }
        }
    }
    q.pow(deg as u32) - reducible.len() as u64
}

#[test]
fn necklace_values_count_irreducibles() {
    for q in [2u64, 3] {
        for d in 1..=6u64 {
            let value = necklace_poly(d).unwrap().eval(&rat(q as i64));
            assert_eq!(value, rat(irreducible_count(q, d as usize) as i64), "q = {q}, d = {d}");
        }
    }
}

#[test]
fn valuation_is_cocore() {
    for d in 1..=10_000u64 {
        let cocore = cocore_oracle(d) as u128;
        assert_eq!(necklace_valuation(d as u128).unwrap(), cocore, "d = {d}");
        assert_eq!(factorize(d as u128).unwrap().cocore(), cocore);
    }
    for d in 1..=300u64 {
        let v = necklace_poly(d).unwrap().x_valuation().unwrap() as u64;
        assert_eq!(v, cocore_oracle(d), "d = {d}");
    }
}

#[test]
fn sparse_terms_give_dense_polynomial() {
    for d in 1..=200u64 {
        let terms = necklace_terms(d as u128).unwrap();
        let dense = necklace_poly(d).unwrap().scale(&rat(d as i64));
        let nonzero = dense.coeffs().iter().filter(|c| **c != rat(0)).count();
        assert_eq!(nonzero, terms.len());
        for (k, mu) in terms {
            assert_eq!(dense.coeff(k as usize), rat(mu as i64));
        }
        assert_eq!(necklace_operator(d).unwrap().apply(&QPoly::x()), dense);
    }
}

fn psi_element() -> impl Strategy<Value = PsiElement> {
    prop::collection::vec((0u64..=50, -5i64..=5), 0..8).prop_map(PsiElement::from_terms)
}

fn quotient() -> impl Strategy<Value = PsiQuotient> {
    (0u64..=5, 1u64..=12).prop_map(|(m, n)| PsiQuotient::new(m, n).unwrap())
}

/// `x^m (x^n - 1)`, the polynomial model of the quotient.
fn model(q: &PsiQuotient) -> QPoly {
    QPoly::xn_minus_one(q.n as usize).shift(q.m as usize)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 500,
        rng_seed: RngSeed::Fixed(21),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn reduction_is_additive(a in psi_element(), b in psi_element(), q in quotient()) {
        prop_assert_eq!(psi_reduce(&a.add(&b), q), psi_reduce(&a, q).add(&psi_reduce(&b, q)));
    }

    #[test]
    fn reduction_respects_bracket_product(a in psi_element(), b in psi_element(), q in quotient()) {
        let direct = psi_reduce(&a.mul(&b), q);
        let reduced = q.mul(&psi_reduce(&a, q), &psi_reduce(&b, q));
        prop_assert_eq!(direct, reduced);
    }

    #[test]
    fn reduction_matches_polynomial_model(a in psi_element(), q in quotient()) {
        let x = QPoly::x();
        let lhs = a.apply(&x).rem(&model(&q)).unwrap();
        let rhs = psi_reduce(&a, q).apply(&x).rem(&model(&q)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduced_indices_are_representatives(a in psi_element(), q in quotient()) {
        let r = psi_reduce(&a, q);
        prop_assert!(r.terms().keys().all(|&k| k < q.dimension()));
        prop_assert!(r.terms().values().all(|&c| c != 0));
    }
}

#[test]
fn factored_operator_agrees_where_primes_invert() {
    for m in 0..=1u64 {
        for n in 1..=15u64 {
            let q = PsiQuotient::new(m, n).unwrap();
            for d in 1..=60u64 {
                let phi = psi_reduce(&necklace_operator(d).unwrap(), q);
                match q.factored_operator(d) {
                    Ok(f) => assert_eq!(f, phi, "d = {d}, (m, n) = ({m}, {n})"),
                    Err(_) => {
                        // some prime of d shares a factor with n
                        let p_shared = factorize(d as u128)
                            .unwrap()
                            .primes()
                            .any(|p| n as u128 % p == 0);
                        assert!(p_shared, "d = {d}, (m, n) = ({m}, {n})");
                    }
                }
            }
        }
    }
}

#[test]
fn dynamical_necklace_inherits_divisibility() {
    let maps: Vec<QPoly> = ["x^2 + 1", "x^2 - x", "x^3 - 2x + 1/2"]
        .iter()
        .map(|s| parse_rational(s).unwrap())
        .collect();
    let mut hits = 0;
    for d in 1..=9u64 {
        let cocore = factorize(d as u128).unwrap().cocore() as u64;
        for m in 0..=cocore.min(2) {
            for n in 1..=3u64 {
                if !fast_xn1_divides(d as u128, n as u128).unwrap() {
                    continue;
                }
                for f in &maps {
                    if f.deg() == 3 && d > 6 {
                        continue;
                    }
                    let target = dynamical_necklace(f, d).unwrap();
                    let divisor = &f.iterate((m + n) as usize) - &f.iterate(m as usize);
                    assert!(divisor.divides(&target).unwrap(), "f = {f}, d = {d}, m = {m}, n = {n}");
                    hits += 1;
                }
            }
        }
    }
    assert!(hits > 20);

    let fam = parse_family("x^2 + a").unwrap();
    for (d, m, n) in [(3, 0, 2), (4, 2, 1), (5, 0, 4), (6, 0, 1)] {
        let target = dynamical_necklace(&fam, d).unwrap();
        let divisor = &fam.iterate(m + n) - &fam.iterate(m);
        assert!(divisor.divides(&target).unwrap(), "d = {d}, m = {m}, n = {n}");
    }
}

#[test]
fn dynamical_necklace_of_identity_map_is_necklace() {
    // every iterate of f = x is x, leaving (sum_{e | d} mu(e)) x / d
    for d in 1..=12u64 {
        let f: QPoly = Polynomial::x();
        let expected = if d == 1 { QPoly::x() } else { QPoly::zero() };
        assert_eq!(dynamical_necklace(&f, d).unwrap(), expected);
    }
}
