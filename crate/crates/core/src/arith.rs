//! Elementary integer arithmetic: a smallest-prime-factor sieve and friends.

/// Smallest-prime-factor table for `1..=limit`.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl PrimeSieve {
    pub fn new(limit: usize) -> Self {
        assert!(limit < u32::MAX as usize, "sieve limit too large");
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        if limit >= 1 {
            spf[1] = 1;
        }
        Self { spf, primes }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    /// Smallest prime factor of `n >= 2`.
    pub fn spf(&self, n: usize) -> usize {
        self.spf[n] as usize
    }

    /// Splits `n >= 2` as `(p, v, rest)` with `n = p^v * rest`, `p` the smallest prime factor.
    pub fn split_smallest(&self, n: usize) -> (usize, u32, usize) {
        let p = self.spf(n);
        let mut rest = n / p;
        let mut v = 1;
        while rest % p == 0 {
            rest /= p;
            v += 1;
        }
        (p, v, rest)
    }

    /// Prime factorization as `(p, exponent)` pairs in increasing `p`.
    pub fn factorize(&self, mut n: usize) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        while n > 1 {
            let (p, v, rest) = self.split_smallest(n);
            out.push((p, v));
            n = rest;
        }
        out
    }
}

/// Largest `j` with `p^j <= n`.
pub fn ilog(p: usize, n: usize) -> usize {
    let mut j = 0;
    let mut q = 1usize;
    while let Some(next) = q.checked_mul(p) {
        if next > n {
            break;
        }
        q = next;
        j += 1;
    }
    j
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % modulus as u128) as u64;
        }
        base = ((base as u128 * base as u128) % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Least primitive root modulo the prime `p`.
pub fn least_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = distinct_prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("a prime modulus always has a primitive root")
}

/// Divisor-counting function `d(n)` for `n <= limit`, index 0 unused.
pub fn divisor_counts(limit: usize) -> Vec<u64> {
    let mut d = vec![0u64; limit + 1];
    for a in 1..=limit {
        for m in (a..=limit).step_by(a) {
            d[m] += 1;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let s = PrimeSieve::new(2000);
        for n in 0..=2000usize {
            assert_eq!(s.is_prime(n), is_prime(n as u64), "n = {n}");
        }
        assert_eq!(s.primes().len(), 303);
    }

    #[test]
    fn factorization_reassembles() {
        let s = PrimeSieve::new(10_000);
        for n in 2..=10_000usize {
            let f = s.factorize(n);
            let back: usize = f.iter().map(|&(p, v)| p.pow(v)).product();
            assert_eq!(back, n);
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn ilog_edges() {
        assert_eq!(ilog(2, 1), 0);
        assert_eq!(ilog(2, 8), 3);
        assert_eq!(ilog(2, 1023), 9);
        assert_eq!(ilog(997, 996), 0);
        assert_eq!(ilog(2, usize::MAX), 63);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(least_primitive_root(3), 2);
        assert_eq!(least_primitive_root(5), 2);
        assert_eq!(least_primitive_root(7), 3);
        assert_eq!(least_primitive_root(23), 5);
        assert_eq!(least_primitive_root(998_244_353), 3);
    }

    #[test]
    fn divisor_count_small() {
        let d = divisor_counts(12);
        assert_eq!(&d[1..], &[1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]);
    }
}
