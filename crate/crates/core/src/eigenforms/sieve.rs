//! Exact q-expansions by multimodular transforms.
//!
//! `q * prod (1 - q^n)^24` is the eighth power of the Jacobi series
//! `sum_k (-1)^k (2k+1) q^{k(k+1)/2}`, so three truncated squarings per
//! prime give `tau(n) mod p`; the weight-16 form multiplies once more by
//! `E4`. Residues are lifted back with a Deligne-type bound
//! `|a(n)| <= d(n) n^{(w-1)/2} <= 2 n^{w/2}` deciding how many primes are used.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{FormId, QExpansion};
use crate::error::{Error, Result};
use crate::ntt::{crt_signed, select_primes, NttField};

fn required_bits(weight: u32, n: usize) -> f64 {
    // 2 n^{w/2} bounds |a(n)|; reconstruction needs M > 4 * bound.
    1.0 + (weight as f64 / 2.0) * (n as f64).log2() + 3.0
}

fn transform_len(n: usize) -> usize {
    (2 * n - 1).next_power_of_two()
}

fn primes_for(weight: u32, n: usize) -> Result<Vec<u32>> {
    let bits = required_bits(weight, n);
    select_primes(bits, transform_len(n)).ok_or_else(|| {
        Error::Capacity(format!(
            "weight {weight} coefficients up to n = {n} need {bits:.0} bits at transform length {}",
            transform_len(n)
        ))
    })
}

/// `tau(1..=n) mod p` in Montgomery form; index `i` holds `tau(i + 1)`.
fn delta_mod(field: &NttField, n: usize) -> Vec<u32> {
    let m = field.mont;
    // the Jacobi series has O(sqrt n) terms, so its square is formed directly
    let mut terms = Vec::new();
    let mut k = 0usize;
    loop {
        let e = k * (k + 1) / 2;
        if e >= n {
            break;
        }
        let c = (2 * k + 1) as i64;
        terms.push((e, m.from_i64(if k % 2 == 0 { c } else { -c })));
        k += 1;
    }
    let mut j2 = vec![0u32; n];
    for (i, &(ei, ci)) in terms.iter().enumerate() {
        for &(ej, cj) in &terms[i..] {
            if ei + ej >= n {
                break;
            }
            let mut t = m.mul(ci, cj);
            if ej != ei {
                t = m.add(t, t);
            }
            j2[ei + ej] = m.add(j2[ei + ej], t);
        }
    }
    let j4 = field.square_truncated(&j2, n);
    field.square_truncated(&j4, n)
}

/// `sigma_3(k)` for `k < n`, index 0 unused.
fn sigma3(n: usize) -> Vec<u128> {
    let mut s = vec![0u128; n];
    for d in 1..n {
        let cube = (d as u128).pow(3);
        for m in (d..n).step_by(d) {
            s[m] += cube;
        }
    }
    s
}

fn lift(residues: Vec<Vec<u32>>, primes: &[u32], form_id: FormId) -> QExpansion {
    let values = crt_signed(&residues, primes);
    let mut coeffs = Vec::with_capacity(values.len() + 1);
    coeffs.push(BigInt::zero());
    coeffs.extend(values);
    QExpansion::from_coeffs_unchecked(form_id, coeffs)
}

/// Exact Ramanujan `tau(n)` for `n <= n_max`.
pub fn sieve_delta(n_max: usize) -> Result<QExpansion> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("truncation length must be at least 1".into()));
    }
    let primes = primes_for(FormId::Delta12.weight(), n_max)?;
    let residues = primes
        .iter()
        .map(|&p| {
            let field = NttField::new(p);
            delta_mod(&field, n_max).into_iter().map(|x| field.mont.from_mont(x)).collect()
        })
        .collect();
    Ok(lift(residues, &primes, FormId::Delta12))
}

/// Exact coefficients of `E4 * Delta`, the normalized level-1 weight-16 eigenform.
pub fn build_weight16(n_max: usize) -> Result<QExpansion> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("truncation length must be at least 1".into()));
    }
    let primes = primes_for(FormId::E4Delta16.weight(), n_max)?;
    let s3 = sigma3(n_max);
    let residues = primes
        .iter()
        .map(|&p| {
            let field = NttField::new(p);
            let m = field.mont;
            let delta = delta_mod(&field, n_max);
            let e4: Vec<u32> = (0..n_max)
                .map(|k| {
                    if k == 0 {
                        m.to_mont(1)
                    } else {
                        m.to_mont(((240 * s3[k]) % p as u128) as u32)
                    }
                })
                .collect();
            field
                .mul_truncated(&e4, &delta, n_max)
                .into_iter()
                .map(|x| m.from_mont(x))
                .collect()
        })
        .collect();
    Ok(lift(residues, &primes, FormId::E4Delta16))
}
