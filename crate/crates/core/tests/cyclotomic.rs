use dynlab::cyclotomic::{cyclo_factor_scan, cyclotomic_poly, totient_candidates, xn1_divides};
use dynlab::necklace::{fast_xn1_divides, necklace_poly};
use dynlab::{rat, ratio, QPoly, Rational};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn phi_brute(n: u64) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

#[test]
fn product_over_divisors_is_xn_minus_one() {
    for n in 1..=300u64 {
        let mut prod = QPoly::one();
        for m in (1..=n).filter(|m| n % m == 0) {
            prod = &prod * &cyclotomic_poly(m).unwrap();
        }
        assert_eq!(prod, QPoly::xn_minus_one(n as usize), "n = {n}");
    }
}

#[test]
fn cyclotomic_shape() {
    for n in 1..=300u64 {
        let p = cyclotomic_poly(n).unwrap();
        assert_eq!(p.deg(), phi_brute(n), "n = {n}");
        assert!(p.is_monic());
        assert!(p.coeffs().iter().all(|c| c.is_integer()));
        if n >= 2 {
            assert_eq!(p.coeff(0), rat(1), "n = {n}");
        }
    }
}

#[test]
fn cyclotomic_cache_is_shared_across_threads() {
    let handles: Vec<_> = (0..8)
        .map(|t| std::thread::spawn(move || (1..=120u64).map(|n| cyclotomic_poly(n + t).unwrap()).collect::<Vec<_>>()))
        .collect();
    let results: Vec<Vec<QPoly>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (t, polys) in results.iter().enumerate() {
        for (i, p) in polys.iter().enumerate() {
            assert_eq!(*p, cyclotomic_poly(i as u64 + 1 + t as u64).unwrap());
        }
    }
}

#[test]
fn remainder_test_agrees_with_fast_test() {
    for d in 1..=120u64 {
        let md = necklace_poly(d).unwrap();
        for n in 1..=60u64 {
            assert_eq!(
                xn1_divides(&md, n).unwrap(),
                fast_xn1_divides(d as u128, n as u128).unwrap(),
                "d = {d}, n = {n}"
            );
        }
    }
}

#[test]
fn candidates_cover_small_totients() {
    // every k up to the bound with phi(k) <= 30 must be listed
    let listed = totient_candidates(30).unwrap();
    let brute: Vec<u64> = (1..=2 * 30 * 30).filter(|&k| phi_brute(k) <= 30).collect();
    assert_eq!(listed, brute);
}

fn scan_input() -> impl Strategy<Value = QPoly> {
    let cyclo = prop::collection::vec((1u64..=40, 1u32..=2), 0..4);
    let cofactor = prop::collection::vec((-6i64..=6, 1i64..=3), 1..5);
    (0usize..3, cyclo, cofactor).prop_map(|(xm, cyc, co)| {
        let cof: Vec<Rational> = co.iter().map(|&(n, d)| ratio(n, d)).collect();
        let mut p = QPoly::new(cof).shift(xm);
        if p.is_zero() {
            p = QPoly::one();
        }
        for (k, e) in cyc {
            p = &p * &cyclotomic_poly(k).unwrap().pow(e);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 150,
        rng_seed: RngSeed::Fixed(31),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn scan_reconstructs_and_strips(p in scan_input()) {
        let r = cyclo_factor_scan(&p).unwrap();
        prop_assert_eq!(r.reconstruct().unwrap(), p.clone());
        prop_assert_eq!(r.input_degree, p.deg());
        prop_assert!(r.cofactor.coeff(0) != rat(0));
        prop_assert!(r.cyclo_indices.windows(2).all(|w| w[0].0 < w[1].0));
        // no cyclotomic factor of admissible degree remains in the cofactor
        for k in 1..=2 * (r.cofactor_degree * r.cofactor_degree).max(1) as u64 {
            if phi_brute(k) <= r.cofactor_degree {
                let (_, rem) = r.cofactor.div_rem(&cyclotomic_poly(k).unwrap()).unwrap();
                prop_assert!(!rem.is_zero(), "Phi_{} divides the cofactor", k);
            }
        }
    }
}

#[test]
fn necklace_and_shifted_cyclotomic_scans() {
    let m105 = necklace_poly(105).unwrap().scale(&rat(105));
    let r = cyclo_factor_scan(&m105).unwrap();
    assert_eq!(r.x_multiplicity, 1);
    assert_eq!(r.cyclo_indices, vec![(1, 1), (2, 1), (3, 1), (4, 1), (6, 1), (8, 1)]);
    assert_eq!(r.cofactor_degree, 92);

    let shifted = cyclotomic_poly(105).unwrap().add_constant(&rat(-1));
    let s = cyclo_factor_scan(&shifted).unwrap();
    assert_eq!(s.x_multiplicity, 1);
    assert_eq!(s.indices(), vec![1, 2, 3, 4, 6, 8]);
    assert_eq!(s.cofactor_degree, 35);
}
