//! Elementary multiplicative number theory on `u128` inputs.
//!
//! Factorization uses trial division up to 10^6 followed by Brent's variant
//! of Pollard's rho with a fixed sequence of seeds, so every call is
//! deterministic.

use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::{Error, Result};

const TRIAL_LIMIT: u128 = 1_000_000;

/// Below this bound Miller-Rabin with the twelve prime bases 2..=37 is
/// deterministic.
const MR_DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const SMALL_PRIMES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u128,
    factors: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u128 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Product of the distinct primes.
    pub fn core(&self) -> u128 {
        self.primes().product()
    }

    pub fn cocore(&self) -> u128 {
        self.value / self.core()
    }

    pub fn euler_phi(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<u128> {
        let mut divs = vec![1u128];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u128;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Squarefree divisors `e` together with `mu(e)`; these are the only
    /// divisors contributing to Möbius sums.
    pub fn squarefree_divisors(&self) -> Vec<(u128, i8)> {
        let mut out = vec![(1u128, 1i8)];
        for p in self.primes() {
            let len = out.len();
            for i in 0..len {
                let (e, mu) = out[i];
                out.push((e * p, -mu));
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn require_positive(n: u128, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::Domain(format!("{what} requires a positive integer, got 0")))
    } else {
        Ok(())
    }
}

pub fn factorize(n: u128) -> Result<Factorization> {
    require_positive(n, "factorize")?;
    let mut rest = n;
    let mut factors: Vec<(u128, u32)> = Vec::new();

    let mut push = |p: u128, rest: &mut u128| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };

    for &p in trial_primes() {
        let p = p as u128;
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            push(p, &mut rest);
        }
    }
    if rest > 1 && rest < TRIAL_LIMIT * TRIAL_LIMIT {
        // no factor up to sqrt(rest): prime
        factors.push((rest, 1));
        rest = 1;
    }

    if rest > 1 {
        let mut large = Vec::new();
        split_large(rest, &mut large);
        large.sort_unstable();
        for q in large {
            match factors.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => factors.push((q, 1)),
            }
        }
    }

    Ok(Factorization { value: n, factors })
}

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= limit {
            if sieve[i] {
                (i * i..=limit).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        (0..=limit).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    })
}

fn split_large(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if let Some(r) = isqrt_exact(n) {
        split_large(r, out);
        split_large(r, out);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Finds a nontrivial factor of an odd composite `n`.
fn pollard_brent(n: u128) -> u128 {
    for c in 1u128.. {
        let f = |x: u128| addmod(mulmod(x, x, n), c, n);
        let mut y = 2u128;
        let mut r = 1u64;
        let mut q = 1u128;
        let mut g = 1u128;
        let mut x = y;
        let mut ys = y;
        const M: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted its seeds")
}

fn addmod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

fn submod(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub(crate) fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    let (a, mut b) = (a % m, b % m);
    if m <= u64::MAX as u128 {
        return a * b % m;
    }
    let mut acc = 0u128;
    let mut base = a;
    while b > 0 {
        if b & 1 == 1 {
            acc = addmod(acc, base, m);
        }
        base = addmod(base, base, m);
        b >>= 1;
    }
    acc
}

pub(crate) fn powmod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

fn isqrt_exact(n: u128) -> Option<u128> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

fn miller_rabin(n: u128, base: u128) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = powmod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn jacobi(mut a: i128, n: u128) -> i8 {
    let n_signed = n as i128;
    a = a.rem_euclid(n_signed);
    let mut a = a as u128;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

fn half_mod(x: u128, n: u128) -> u128 {
    if x % 2 == 0 {
        x / 2
    } else {
        x / 2 + n / 2 + 1
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: u128) -> bool {
    if isqrt_exact(n).is_some() {
        return false;
    }
    let mut d: i128 = 5;
    loop {
        match jacobi(d, n) {
            -1 => break,
            0 if d.unsigned_abs() != n => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let dm = if d > 0 {
        d as u128 % n
    } else {
        submod(0, d.unsigned_abs() % n, n)
    };
    let q_signed = (1 - d) / 4;
    let qm = if q_signed >= 0 {
        q_signed as u128 % n
    } else {
        submod(0, q_signed.unsigned_abs() % n, n)
    };

    let s = (n + 1).trailing_zeros();
    let k = (n + 1) >> s;

    // U_1 = 1, V_1 = P = 1, Q^1
    let mut u = 1u128;
    let mut v = 1u128;
    let mut qk = qm;
    let bits = 128 - k.leading_zeros();
    for i in (0..bits - 1).rev() {
        // doubling
        u = mulmod(u, v, n);
        v = submod(mulmod(v, v, n), addmod(qk, qk, n), n);
        qk = mulmod(qk, qk, n);
        if (k >> i) & 1 == 1 {
            // increment with P = 1
            let u_next = half_mod(addmod(u, v, n), n);
            let v_next = half_mod(addmod(mulmod(dm, u, n), v, n), n);
            u = u_next;
            v = v_next;
            qk = mulmod(qk, qm, n);
        }
    }
    if u == 0 || v == 0 {
        return true;
    }
    for _ in 1..s {
        v = submod(mulmod(v, v, n), addmod(qk, qk, n), n);
        if v == 0 {
            return true;
        }
        qk = mulmod(qk, qk, n);
    }
    false
}

pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if !SMALL_PRIMES.iter().all(|&b| miller_rabin(n, b)) {
        return false;
    }
    n < MR_DETERMINISTIC_BOUND || strong_lucas(n)
}

pub fn mobius(n: u128) -> Result<i8> {
    Ok(factorize(n)?.mobius())
}

/// `(core, cocore)` where core is the largest squarefree divisor.
pub fn core_and_cocore(d: u128) -> Result<(u128, u128)> {
    let f = factorize(d)?;
    Ok((f.core(), f.cocore()))
}

pub fn divisors(n: u128) -> Result<Vec<u128>> {
    Ok(factorize(n)?.divisors())
}

pub fn euler_phi(n: u128) -> Result<u128> {
    Ok(factorize(n)?.euler_phi())
}

/// Euler's totient for every integer in `0..=limit` (index 0 holds 0).
pub fn totient_table(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for i in 2..=limit {
        if phi[i] == i as u64 {
            let mut j = i;
            while j <= limit {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

/// Multiplicative order of `q` modulo `n`; `None` when `gcd(q, n) != 1`.
pub fn multiplicative_order(q: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if q.gcd(&n) != 1 {
        return None;
    }
    let mut x = q % n;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * q as u128 % n as u128) as u64;
        k += 1;
    }
    Some(k)
}
