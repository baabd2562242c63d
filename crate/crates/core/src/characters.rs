//! Dirichlet characters mod n and the hyperplane cover test.
//!
//! `(Z/n)^x` is split into cyclic factors of prime-power order. A character
//! is an exponent vector `e` over those factors and
//! `chi(q) = exp(2 pi i sum_j e_j dlog_j(q) / ord_j)`, so `chi(q) = 1` is
//! decided by integer arithmetic. `x^n - 1` divides `M_d` when the
//! hyperplanes `H_p = {chi : chi(p) = 1}` for primes `p | d`, `p` not
//! dividing `n`, cover the whole character group.

use num_integer::Integer;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::necklace::xn1_divides_factored;
use crate::numtheory::{euler_phi, factorize, Factorization};
use crate::{Error, Rational, Result};

/// Largest group order `unit_group` will tabulate.
pub const MAX_GROUP_ORDER: u128 = 1_000_000;

/// Unit group of one prime-power factor `q` of the modulus, with a table
/// of discrete logarithms for its (at most two) cyclic generators.
#[derive(Clone, Debug)]
struct LocalFactor {
    q: u64,
    /// Cyclic generators mod q and their orders.
    cyclic: Vec<(u64, u64)>,
    /// `table[x]` packs the exponents of `x` over `cyclic`; `u32::MAX` for
    /// non-units.
    table: Vec<u32>,
}

impl LocalFactor {
    fn new(p: u64, k: u32) -> Self {
        let q = p.pow(k);
        let mut table = vec![u32::MAX; q as usize];
        let cyclic = if p == 2 {
            match k {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(q - 1, 2), (5, q / 4)],
            }
        } else {
            vec![(primitive_root_prime_power(p, k), q / p * (p - 1))]
        };
        match cyclic.as_slice() {
            [] => table[1 % q as usize] = 0,
            [(g, ord)] => {
                let mut x = 1u64;
                for e in 0..*ord {
                    table[x as usize] = e as u32;
                    x = mulmod(x, *g, q);
                }
            }
            [(minus_one, 2), (five, ord5)] => {
                for a in 0..2u64 {
                    let mut x = if a == 0 { 1 } else { *minus_one };
                    for b in 0..*ord5 {
                        table[x as usize] = (a + 2 * b) as u32;
                        x = mulmod(x, *five, q);
                    }
                }
            }
            _ => unreachable!(),
        }
        LocalFactor { q, cyclic, table }
    }

    /// Exponents of `x` over the cyclic generators.
    fn cyclic_dlog(&self, x: u64) -> Option<Vec<u64>> {
        let packed = self.table[(x % self.q) as usize];
        if packed == u32::MAX {
            return None;
        }
        let packed = packed as u64;
        Some(match self.cyclic.len() {
            0 => vec![],
            1 => vec![packed],
            _ => vec![packed % 2, packed / 2],
        })
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let g = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m as i128) as u64
}

fn primitive_root_prime_power(p: u64, k: u32) -> u64 {
    let prime_factors: Vec<u64> = factorize((p - 1) as u128)
        .expect("p >= 3")
        .primes()
        .map(|r| r as u64)
        .collect();
    let g = (2..p)
        .find(|&g| prime_factors.iter().all(|&r| powmod(g, (p - 1) / r, p) != 1))
        .expect("prime moduli have primitive roots");
    if k >= 2 && powmod(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

/// One cyclic factor of prime-power order in the decomposition.
#[derive(Clone, Debug)]
struct Component {
    /// Index into `locals` and into that factor's cyclic generators.
    local: usize,
    cyclic: usize,
    /// Inverse mod `order` of `ord(cyclic generator) / order`.
    cofactor_inv: u64,
}

/// `(Z/n)^x` as a product of cyclic groups of prime-power order.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    modulus: u64,
    /// `(generator mod n, order)`.
    generators: Vec<(u64, u64)>,
    locals: Vec<LocalFactor>,
    components: Vec<Component>,
}

impl UnitGroup {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        let phi = euler_phi(n as u128)?;
        if phi > MAX_GROUP_ORDER {
            return Err(Error::Resource(format!(
                "(Z/{n})^x has order {phi}, above the limit {MAX_GROUP_ORDER}"
            )));
        }
        let fact = factorize(n as u128)?;
        let mut locals = Vec::new();
        let mut generators = Vec::new();
        let mut components = Vec::new();
        for &(p, k) in fact.factors() {
            let local = LocalFactor::new(p as u64, k);
            for (ci, &(g, ord)) in local.cyclic.iter().enumerate() {
                let ord_fact = factorize(ord as u128)?;
                for &(r, j) in ord_fact.factors() {
                    let order = (r as u64).pow(j);
                    let cofactor = ord / order;
                    let local_gen = powmod(g, cofactor, local.q);
                    generators.push((crt_lift(local_gen, local.q, n), order));
                    components.push(Component {
                        local: locals.len(),
                        cyclic: ci,
                        cofactor_inv: inverse_mod(cofactor % order, order),
                    });
                }
            }
            locals.push(local);
        }
        Ok(UnitGroup { modulus: n, generators, locals, components })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(generator, order)` pairs; the orders are prime powers.
    pub fn generators(&self) -> &[(u64, u64)] {
        &self.generators
    }

    pub fn orders(&self) -> Vec<u64> {
        self.generators.iter().map(|&(_, o)| o).collect()
    }

    pub fn order(&self) -> u64 {
        self.generators.iter().map(|&(_, o)| o).product()
    }

    /// Exponent vector of the unit `q` over the generators.
    pub fn dlog(&self, q: u64) -> Result<Vec<u64>> {
        let x = q % self.modulus;
        if x.gcd(&self.modulus) != 1 {
            return Err(Error::Domain(format!("{q} is not a unit mod {}", self.modulus)));
        }
        let cyclic: Vec<Vec<u64>> = self
            .locals
            .iter()
            .map(|l| l.cyclic_dlog(x).expect("unit"))
            .collect();
        Ok(self
            .components
            .iter()
            .zip(&self.generators)
            .map(|(c, &(_, order))| {
                let e = cyclic[c.local][c.cyclic] % order;
                (e * c.cofactor_inv) % order
            })
            .collect())
    }

    /// `prod g_i^{e_i} mod n`.
    pub fn reconstruct(&self, exps: &[u64]) -> u64 {
        self.generators
            .iter()
            .zip(exps)
            .fold(1 % self.modulus, |acc, (&(g, _), &e)| mulmod(acc, powmod(g, e, self.modulus), self.modulus))
    }

    /// The character with mixed-radix index `idx` (first generator fastest).
    pub fn character(&self, mut idx: u64) -> Character {
        let exponents = self
            .generators
            .iter()
            .map(|&(_, o)| {
                let e = idx % o;
                idx /= o;
                e
            })
            .collect();
        Character { exponents }
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order()).map(|i| self.character(i))
    }

    /// `chi(q)` as an angle in `[0, 1)`: `chi(q) = exp(2 pi i angle)`.
    pub fn angle(&self, chi: &Character, q: u64) -> Result<Rational> {
        let logs = self.dlog(q)?;
        let mut total = Rational::from_integer(0.into());
        for ((&e, &l), &(_, o)) in chi.exponents.iter().zip(&logs).zip(&self.generators) {
            total += Rational::new(((e * l) % o).into(), o.into());
        }
        Ok(&total - total.floor())
    }

    /// `chi(q) = 1`, by exact integer arithmetic.
    pub fn value_is_one(&self, chi: &Character, q: u64) -> Result<bool> {
        let logs = self.dlog(q)?;
        Ok(self.is_one_on(chi, &logs))
    }

    fn is_one_on(&self, chi: &Character, logs: &[u64]) -> bool {
        // sum e_j l_j / o_j over the common denominator lcm(o_j)
        let lcm = self.generators.iter().fold(1u128, |acc, &(_, o)| acc.lcm(&(o as u128)));
        let mut total: u128 = 0;
        for ((&e, &l), &(_, o)) in chi.exponents.iter().zip(logs).zip(&self.generators) {
            total = (total + ((e as u128 * l as u128) % o as u128) * (lcm / o as u128)) % lcm;
        }
        total == 0
    }

    /// For each prime, the coefficients of its hyperplane
    /// `H_p = {e : sum_j e_j dlog_j(p) / ord_j in Z}`.
    pub fn arrangement(&self, primes: &[u128]) -> Vec<(u128, Vec<u64>)> {
        primes
            .iter()
            .filter_map(|&p| {
                let r = (p % self.modulus as u128) as u64;
                self.dlog(r).ok().map(|l| (p, l))
            })
            .collect()
    }
}

fn crt_lift(v: u64, q: u64, n: u64) -> u64 {
    // x = v mod q, x = 1 mod n / q
    let rest = n / q;
    if rest == 1 {
        return v % n;
    }
    let t = mulmod((v + q - 1) % q, inverse_mod(rest % q, q), q);
    ((1 + t as u128 * rest as u128) % n as u128) as u64
}

/// A character as an exponent vector over the generators of a [`UnitGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub exponents: Vec<u64>,
}

/// `chi(q) = 1`; `q` must be a unit mod n.
pub fn char_value_is_one(group: &UnitGroup, chi: &Character, q: u64) -> Result<bool> {
    group.value_is_one(chi, q)
}

/// Record of the hyperplane cover test for `(d, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverCertificate {
    pub d: u128,
    pub n: u64,
    pub usable_primes: Vec<u128>,
    pub covered: bool,
    /// For each character, a prime `p` with `chi(p) = 1` if one exists.
    pub witnesses: Vec<(Character, Option<u128>)>,
    pub failing_character: Option<Character>,
}

fn json_int(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

impl CoverCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d.to_string(),
            "n": self.n,
            "usable_primes": self.usable_primes.iter().map(|&p| json_int(p)).collect::<Vec<_>>(),
            "covered": self.covered,
            "witnesses": self
                .witnesses
                .iter()
                .map(|(chi, p)| json!({"chi": chi.exponents, "p": p.map(json_int)}))
                .collect::<Vec<_>>(),
            "failing_character": self.failing_character.as_ref().map(|c| c.exponents.clone()),
        })
    }

    /// Re-check every witness and the failing character against `group`.
    pub fn recheck(&self, group: &UnitGroup) -> Result<bool> {
        let residue = |p: u128| (p % self.n as u128) as u64;
        for (chi, p) in &self.witnesses {
            match p {
                Some(p) if !group.value_is_one(chi, residue(*p))? => return Ok(false),
                None if self.covered => return Ok(false),
                _ => {}
            }
        }
        if let Some(chi) = &self.failing_character {
            for &p in &self.usable_primes {
                if group.value_is_one(chi, residue(p))? {
                    return Ok(false);
                }
            }
        }
        Ok(self.covered == self.failing_character.is_none())
    }
}

/// Primes of `d` that do not divide `n`.
pub fn usable_primes(d: &Factorization, n: u64) -> Vec<u128> {
    d.primes().filter(|&p| n as u128 % p != 0).collect()
}

/// Hyperplane cover test against a prebuilt unit group.
pub fn covers_with(group: &UnitGroup, d: &Factorization) -> CoverCertificate {
    let n = group.modulus();
    let primes = usable_primes(d, n);
    let logs: Vec<(u128, Vec<u64>)> = group.arrangement(&primes);
    let witnesses: Vec<(Character, Option<u128>)> = (0..group.order())
        .into_par_iter()
        .map(|i| {
            let chi = group.character(i);
            let w = logs.iter().find(|(_, l)| group.is_one_on(&chi, l)).map(|(p, _)| *p);
            (chi, w)
        })
        .collect();
    let failing_character = witnesses.iter().find(|(_, w)| w.is_none()).map(|(c, _)| c.clone());
    CoverCertificate {
        d: d.value(),
        n,
        usable_primes: primes,
        covered: failing_character.is_none(),
        witnesses,
        failing_character,
    }
}

/// Whether the hyperplanes of the usable primes of `d` cover the
/// characters mod `n`.
pub fn covers(d: u128, n: u64) -> Result<CoverCertificate> {
    let group = UnitGroup::new(n)?;
    Ok(covers_with(&group, &factorize(d)?))
}

/// Every `(d, n)` in the grid where the cover test and the residue-sum test
/// for `x^n - 1 | M_d` disagree.
pub fn equivalence_sweep(d_max: u64, n_max: u64) -> Result<Vec<(u64, u64)>> {
    let facts: Vec<Factorization> = (1..=d_max)
        .map(|d| factorize(d as u128))
        .collect::<Result<_>>()?;
    let per_n: Vec<Vec<(u64, u64)>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let group = UnitGroup::new(n)?;
            Ok(facts
                .iter()
                .filter(|f| covers_with(&group, f).covered != xn1_divides_factored(f, n as u128))
                .map(|f| (f.value() as u64, n))
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<(u64, u64)> = per_n.into_iter().flatten().collect();
    out.sort_unstable();
    Ok(out)
}
