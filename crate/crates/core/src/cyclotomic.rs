//! Cyclotomic polynomials and cyclotomic factor scans.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde_json::{json, Value};

use crate::numtheory::{divisors, totient_table};
use crate::{Error, QPoly, Result};

fn cache() -> &'static RwLock<HashMap<u64, QPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, QPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Phi_n`, obtained by dividing `x^n - 1` by `Phi_m` for the proper
/// divisors `m` of `n`. Results are cached for the life of the process.
pub fn cyclotomic_poly(n: u64) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::Domain("cyclotomic polynomial needs n >= 1".into()));
    }
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return Ok(p.clone());
    }
    let mut den = QPoly::one();
    for m in divisors(n as u128)? {
        if m < n as u128 {
            den = &den * &cyclotomic_poly(m as u64)?;
        }
    }
    let phi = QPoly::xn_minus_one(n as usize).div_exact(&den)?;
    let mut w = cache().write().expect("cyclotomic cache poisoned");
    Ok(w.entry(n).or_insert(phi).clone())
}

/// `x^n - 1 | p`, via the remainder obtained by folding exponents mod n.
pub fn xn1_divides(p: &QPoly, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(p.rem_xn_minus_one(n as usize).is_zero())
}

/// Largest totient value served by the precomputed inverse table.
const INVERSE_TOTIENT_LIMIT: usize = 1024;

/// `k` with `phi(k) <= bound`, ascending. Every such `k` satisfies
/// `k <= 2 bound^2` because `phi(k) >= sqrt(k/2)`.
pub fn totient_candidates(bound: usize) -> Result<Vec<u64>> {
    if bound <= INVERSE_TOTIENT_LIMIT {
        static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            let limit = 2 * INVERSE_TOTIENT_LIMIT * INVERSE_TOTIENT_LIMIT;
            let phi = totient_table(limit);
            let mut inv = vec![Vec::new(); INVERSE_TOTIENT_LIMIT + 1];
            for (k, &v) in phi.iter().enumerate().skip(1) {
                if v as usize <= INVERSE_TOTIENT_LIMIT {
                    inv[v as usize].push(k as u64);
                }
            }
            inv
        });
        let mut out: Vec<u64> = table[..=bound].iter().flatten().copied().collect();
        out.sort_unstable();
        return Ok(out);
    }
    let limit = 2 * bound * bound;
    if limit > 200_000_000 {
        return Err(Error::Resource(format!(
            "cyclotomic candidate search up to {limit} is too large"
        )));
    }
    let phi = totient_table(limit);
    Ok((1..=limit as u64).filter(|&k| phi[k as usize] as usize <= bound).collect())
}

/// `input = x^x_multiplicity * prod Phi_n^mult * cofactor`, with the cofactor
/// free of `x` and of every cyclotomic factor.
#[derive(Clone, Debug, PartialEq)]
pub struct CycloFactorReport {
    pub input_degree: usize,
    pub x_multiplicity: usize,
    pub cyclo_indices: Vec<(u64, u32)>,
    pub cofactor_degree: usize,
    pub cofactor: QPoly,
}

impl CycloFactorReport {
    /// Multiply the factors back together.
    pub fn reconstruct(&self) -> Result<QPoly> {
        let mut acc = self.cofactor.shift(self.x_multiplicity);
        for &(n, mult) in &self.cyclo_indices {
            acc = &acc * &cyclotomic_poly(n)?.pow(mult);
        }
        Ok(acc)
    }

    pub fn indices(&self) -> Vec<u64> {
        self.cyclo_indices.iter().map(|&(n, _)| n).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x_multiplicity": self.x_multiplicity,
            "cyclotomic": self
                .cyclo_indices
                .iter()
                .map(|&(n, mult)| json!({"n": n, "mult": mult}))
                .collect::<Vec<_>>(),
            "cofactor_degree": self.cofactor_degree,
            "cofactor_coeffs": self
                .cofactor
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
        })
    }
}

/// Strip every power of `x` and every cyclotomic factor from `p`.
pub fn cyclo_factor_scan(p: &QPoly) -> Result<CycloFactorReport> {
    if p.is_zero() {
        return Err(Error::Domain("cyclotomic scan of the zero polynomial".into()));
    }
    let x_mult = p.x_valuation().expect("nonzero");
    let mut rest = QPoly::new(p.coeffs()[x_mult..].to_vec());
    let mut found = Vec::new();
    for k in totient_candidates(rest.deg())? {
        let phi = cyclotomic_poly(k)?;
        let mut mult = 0;
        while phi.deg() <= rest.deg() {
            let (q, r) = rest.div_rem(&phi)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((k, mult));
        }
    }
    let report = CycloFactorReport {
        input_degree: p.deg(),
        x_multiplicity: x_mult,
        cyclo_indices: found,
        cofactor_degree: rest.deg(),
        cofactor: rest,
    };
    if report.reconstruct()? != *p {
        return Err(Error::Precondition("cyclotomic scan failed to reconstruct its input".into()));
    }
    Ok(report)
}
