//! Level-1 Hecke eigenforms: exact q-expansions, normalized coefficients and
//! the Hecke relations they satisfy.

mod cache;
mod sieve;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::PrimeSieve;
use crate::error::{Error, Result};

pub use cache::{read_cache, write_cache};
pub use sieve::{build_weight16, sieve_delta};

/// The shipped level-1 eigenforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormId {
    /// Ramanujan's `Delta`, weight 12.
    Delta12,
    /// `E4 * Delta`, weight 16.
    E4Delta16,
}

impl FormId {
    pub fn weight(self) -> u32 {
        match self {
            FormId::Delta12 => 12,
            FormId::E4Delta16 => 16,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FormId::Delta12 => "delta12",
            FormId::E4Delta16 => "e4delta16",
        }
    }

    /// Sieves the exact q-expansion of this form up to `n`.
    pub fn sieve(self, n: usize) -> Result<QExpansion> {
        match self {
            FormId::Delta12 => sieve_delta(n),
            FormId::E4Delta16 => build_weight16(n),
        }
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta12" => Ok(FormId::Delta12),
            "e4delta16" => Ok(FormId::E4Delta16),
            other => Err(Error::InvalidArgument(format!("unknown form id `{other}`"))),
        }
    }
}

/// Exact integer q-expansion `a(1..=N)` of a normalized eigenform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    form_id: FormId,
    weight: u32,
    // index 0 is unused and holds zero
    coeffs: Vec<BigInt>,
}

impl QExpansion {
    pub(crate) fn from_coeffs_unchecked(form_id: FormId, coeffs: Vec<BigInt>) -> Self {
        Self { form_id, weight: form_id.weight(), coeffs }
    }

    pub fn form_id(&self) -> FormId {
        self.form_id
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Truncation length `N`.
    pub fn len(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `a(n)` for `1 <= n <= N`.
    pub fn coeff(&self, n: usize) -> &BigInt {
        assert!(n >= 1, "coefficients are indexed from 1");
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs[1..]
    }

    fn hecke_power(&self, p: usize) -> BigInt {
        BigInt::from(p).pow(self.weight - 1)
    }

    /// Checks a single Hecke relation exactly.
    pub fn check_relation(&self, rel: HeckeRelation) -> Option<BigInt> {
        let diff = match rel {
            HeckeRelation::Multiplicative { m, n } => {
                if m * n > self.len() {
                    return None;
                }
                self.coeff(m * n) - self.coeff(m) * self.coeff(n)
            }
            HeckeRelation::PrimePower { p, exponent } => {
                let top = p.checked_pow(exponent)?;
                if exponent < 2 || top > self.len() {
                    return None;
                }
                let prev = top / p;
                let prev2 = prev / p;
                self.coeff(top) - (self.coeff(p) * self.coeff(prev) - self.hecke_power(p) * self.coeff(prev2))
            }
        };
        Some(diff)
    }

    /// Verifies multiplicativity for every `n <= N` (as `n = p^v m` with `p`
    /// the smallest prime factor) and the prime-power recursion at every
    /// `p^{j+1} <= N`. Exact integer comparison.
    pub fn verify_hecke(&self) -> HeckeReport {
        let n_max = self.len();
        let sieve = PrimeSieve::new(n_max.max(1));
        let mut report = HeckeReport::default();
        if n_max >= 1 && !self.coeff(1).is_one() {
            report.record(1, self.coeff(1) - BigInt::one());
        }
        for n in 2..=n_max {
            let (p, v, rest) = sieve.split_smallest(n);
            if rest > 1 {
                let pv = n / rest;
                report.record(n, self.coeff(n) - self.coeff(pv) * self.coeff(rest));
            } else if v >= 2 {
                let diff = self
                    .check_relation(HeckeRelation::PrimePower { p, exponent: v })
                    .expect("prime power within range");
                report.record(n, diff);
            }
        }
        report
    }
}

/// One exact Hecke relation between coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeckeRelation {
    /// `a(mn) = a(m) a(n)`, `gcd(m, n) = 1`.
    Multiplicative { m: usize, n: usize },
    /// `a(p^e) = a(p) a(p^{e-1}) - p^{k-1} a(p^{e-2})`.
    PrimePower { p: usize, exponent: u32 },
}

/// Outcome of an exact Hecke verification.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HeckeReport {
    pub relations_checked: usize,
    pub failures: usize,
    pub first_failure: Option<usize>,
    /// Largest `|lhs - rhs|` over all relations, as a float.
    pub max_abs_error: f64,
}

impl HeckeReport {
    fn record(&mut self, n: usize, diff: BigInt) {
        self.relations_checked += 1;
        if !diff.is_zero() {
            self.failures += 1;
            self.first_failure.get_or_insert(n);
            let err = diff.abs().to_f64().unwrap_or(f64::INFINITY);
            self.max_abs_error = self.max_abs_error.max(err);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Normalized eigenform `lambda(n) = a(n) / n^{(k-1)/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenform {
    form_id: FormId,
    weight: u32,
    lambda: Vec<f64>,
    /// Primes where the local representation is ramified; empty at level 1.
    pub ramified_primes: BTreeSet<u64>,
}

impl Eigenform {
    pub fn form_id(&self) -> FormId {
        self.form_id
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.lambda.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lambda(&self, n: usize) -> f64 {
        assert!(n >= 1, "coefficients are indexed from 1");
        self.lambda[n]
    }

    /// `lambda(1..=N)` as a slice (first element is `lambda(1)`).
    pub fn lambdas(&self) -> &[f64] {
        &self.lambda[1..]
    }

    /// Largest `|lambda(p)| - 2` over primes `p <= N` (negative when the
    /// bound holds with room).
    pub fn deligne_excess(&self) -> f64 {
        let sieve = PrimeSieve::new(self.len());
        sieve
            .primes()
            .iter()
            .map(|&p| self.lambda[p as usize].abs() - 2.0)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest relative defect of `lambda(mn) = lambda(m) lambda(n)` over the
    /// smallest-prime-power splits of `n <= N`.
    pub fn multiplicativity_defect(&self) -> f64 {
        let sieve = PrimeSieve::new(self.len());
        let mut worst = 0.0f64;
        for n in 2..=self.len() {
            let (_, _, rest) = sieve.split_smallest(n);
            if rest > 1 {
                let prod = self.lambda[n / rest] * self.lambda[rest];
                let scale = prod.abs().max(self.lambda[n].abs()).max(1.0);
                worst = worst.max((self.lambda[n] - prod).abs() / scale);
            }
        }
        worst
    }
}

/// Normalizes an exact q-expansion.
pub fn normalize(q: &QExpansion) -> Eigenform {
    let half = (q.weight as f64 - 1.0) / 2.0;
    let mut lambda = Vec::with_capacity(q.len() + 1);
    lambda.push(0.0);
    for n in 1..=q.len() {
        let a = q.coeff(n).to_f64().expect("finite coefficient");
        lambda.push(a / (n as f64).powf(half));
    }
    Eigenform {
        form_id: q.form_id,
        weight: q.weight,
        lambda,
        ramified_primes: BTreeSet::new(),
    }
}

/// `lambda(p^j)` from `lambda(p)` via
/// `lambda(p^{j+1}) = lambda(p) lambda(p^j) - lambda(p^{j-1})`.
pub fn lambda_prime_power(lambda_p: f64, j: usize) -> f64 {
    let (mut prev, mut cur) = (1.0, lambda_p);
    match j {
        0 => 1.0,
        _ => {
            for _ in 1..j {
                let next = lambda_p * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `[lambda(p^0), ..., lambda(p^depth)]`.
pub fn prime_power_table(lambda_p: f64, depth: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(depth + 1);
    t.push(1.0);
    if depth >= 1 {
        t.push(lambda_p);
    }
    for j in 2..=depth {
        let next = lambda_p * t[j - 1] - t[j - 2];
        t.push(next);
    }
    t
}

/// Builds `lambda(1..=n)` from prime-power values `table[p][j] = lambda(p^j)`.
/// The result has a leading zero at index 0.
pub fn extend_multiplicatively(table: &BTreeMap<u64, Vec<f64>>, n: usize) -> Result<Vec<f64>> {
    let sieve = PrimeSieve::new(n.max(1));
    let mut out = vec![0.0; n + 1];
    if n >= 1 {
        out[1] = 1.0;
    }
    for m in 2..=n {
        let (p, v, rest) = sieve.split_smallest(m);
        let row = table.get(&(p as u64)).ok_or(Error::MissingPrime(p as u64))?;
        let value = row.get(v as usize).ok_or(Error::InsufficientDepth {
            p: p as u64,
            need: v as usize,
            have: row.len().saturating_sub(1),
        })?;
        out[m] = value * out[rest];
    }
    Ok(out)
}
