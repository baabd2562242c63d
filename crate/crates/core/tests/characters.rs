use dynlab::characters::{covers, covers_with, equivalence_sweep, UnitGroup};
use dynlab::necklace::fast_xn1_divides;
use dynlab::numtheory::{factorize, is_prime, mobius};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn order_brute(q: u64, n: u64) -> u64 {
    let mut x = q % n;
    let mut k = 1;
    while x != 1 % n {
        x = x * q % n;
        k += 1;
    }
    k
}

fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|&q| gcd(q, n) == 1).collect()
}

#[test]
fn hyperplane_sizes_follow_orthogonality() {
    for n in 1..=200u64 {
        let g = UnitGroup::new(n).unwrap();
        let us = units(n);
        assert_eq!(g.order() as usize, us.len(), "n = {n}");
        for &q in &us {
            let size = g.characters().filter(|chi| g.value_is_one(chi, q).unwrap()).count() as u64;
            assert_eq!(size * order_brute(q, n), g.order(), "n = {n}, q = {q}");
        }
    }
}

#[test]
fn characters_are_homomorphisms() {
    for n in [5u64, 8, 12, 15, 16, 24, 65, 77] {
        let g = UnitGroup::new(n).unwrap();
        let us = units(n);
        for chi in g.characters() {
            for &a in &us {
                for &b in &us {
                    let ab = g.angle(&chi, a * b % n).unwrap();
                    let sum = g.angle(&chi, a).unwrap() + g.angle(&chi, b).unwrap();
                    assert_eq!(ab, &sum - sum.floor(), "n = {n}");
                }
            }
        }
    }
}

#[test]
fn cover_is_monotone_in_prime_support() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let primes: Vec<u64> = (2..400).filter(|&p| is_prime(p as u128)).collect();
    for _ in 0..300 {
        let n = rng.gen_range(1..=60u64);
        let group = UnitGroup::new(n).unwrap();
        let mut d: u128 = 1;
        let mut was_covered = false;
        for _ in 0..5 {
            d *= primes[rng.gen_range(0..primes.len())] as u128;
            let now = covers_with(&group, &factorize(d).unwrap()).covered;
            assert!(!was_covered || now, "d = {d}, n = {n}");
            was_covered = now;
        }
    }
}

#[test]
fn primes_congruent_to_one_fill_the_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pairs = 0;
    while pairs < 20 {
        let n = rng.gen_range(2..=90u64);
        let p = (1..).map(|k| k * n + 1).find(|&p| is_prime(p as u128) && rng.gen_bool(0.5)).unwrap();
        let g = UnitGroup::new(n).unwrap();
        assert!(g.characters().all(|chi| g.value_is_one(&chi, p).unwrap()));
        let other = rng.gen_range(1..=1000u128);
        assert!(covers(p as u128 * other, n).unwrap().covered, "p = {p}, n = {n}");
        pairs += 1;
    }
}

#[test]
fn arrangement_moduli_from_the_figure() {
    let ds: [u128; 4] = [
        440_512_358_437,
        157 * 181 * 337 * 389,
        79 * 181 * 389,
        47 * 109 * 151 * 157 * 317 * 337,
    ];
    let group = UnitGroup::new(65).unwrap();
    for d in ds {
        let cert = covers(d, 65).unwrap();
        assert!(cert.covered, "d = {d}");
        assert!(cert.recheck(&group).unwrap());
        assert!(fast_xn1_divides(d, 65).unwrap(), "d = {d}");
    }
    let big = covers(ds[0], 65).unwrap();
    assert_eq!(big.usable_primes.len(), 5);
    assert_eq!(factorize(ds[0]).unwrap().cocore(), 47);
}

#[test]
fn failing_certificates_recheck() {
    for (d, n) in [(2u128, 5u64), (1, 1), (4, 7), (30, 31)] {
        let cert = covers(d, n).unwrap();
        assert!(!cert.covered);
        let chi = cert.failing_character.clone().unwrap();
        let g = UnitGroup::new(n).unwrap();
        for &p in &cert.usable_primes {
            assert!(!g.value_is_one(&chi, (p % n as u128) as u64).unwrap());
        }
        assert!(cert.recheck(&g).unwrap());
    }
}

/// Largest factor of `d` coprime to `n`.
fn coprime_part(d: u64, n: u64) -> u64 {
    let mut rest = d;
    loop {
        let g = gcd(rest, n);
        if g == 1 {
            return rest;
        }
        rest /= g;
    }
}

#[test]
fn cover_test_versus_necklace_criterion() {
    // covered always forces divisibility, and the two agree whenever the
    // part of d sharing primes with n is squarefree
    let mut disagreements = 0;
    for n in 1..=60u64 {
        let group = UnitGroup::new(n).unwrap();
        for d in 1..=120u64 {
            let covered = covers_with(&group, &factorize(d as u128).unwrap()).covered;
            let divides = fast_xn1_divides(d as u128, n as u128).unwrap();
            if covered {
                assert!(divides, "d = {d}, n = {n}");
            }
            let shared = d / coprime_part(d, n);
            if mobius(shared as u128).unwrap() != 0 {
                assert_eq!(covered, divides, "d = {d}, n = {n}");
            } else if covered != divides {
                disagreements += 1;
            }
        }
    }
    let sweep = equivalence_sweep(120, 60).unwrap();
    assert_eq!(sweep.len(), disagreements);
    assert!(sweep.contains(&(4, 2)));
    assert!(sweep.iter().all(|&(d, n)| mobius((d / coprime_part(d, n)) as u128).unwrap() == 0));
}

#[test]
fn degenerate_moduli() {
    // trivial character group: covered iff d has a prime not dividing n
    for n in [1u64, 2] {
        for d in 1..=50u128 {
            let has_usable = factorize(d).unwrap().primes().any(|p| n as u128 % p != 0);
            assert_eq!(covers(d, n).unwrap().covered, has_usable, "d = {d}, n = {n}");
        }
    }
}
