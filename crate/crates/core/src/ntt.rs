//! Number-theoretic transforms over word-sized primes and Chinese-remainder
//! reconstruction of exact integer convolutions.
//!
//! All field elements are stored in Montgomery form with `R = 2^32`; the
//! primes are below `2^31` so every product and reduction stays in `u64`.

use num_bigint::{BigInt, BigUint, Sign};

use crate::arith::{is_prime, least_primitive_root};

/// Primes `c * 2^k + 1 < 2^31` with `k >= 21`, largest 2-adicity first.
pub const NTT_PRIMES: [u32; 10] = [
    469_762_049,   // 7 * 2^26 + 1
    1_811_939_329, // 27 * 2^26 + 1
    2_013_265_921, // 15 * 2^27 + 1
    167_772_161,   // 5 * 2^25 + 1
    1_711_276_033, // 51 * 2^25 + 1
    1_107_296_257, // 33 * 2^25 + 1
    2_113_929_217, // 63 * 2^25 + 1
    754_974_721,   // 45 * 2^24 + 1
    1_224_736_769, // 73 * 2^24 + 1
    998_244_353,   // 119 * 2^23 + 1
];

/// Arithmetic modulo an odd prime `p < 2^31` in Montgomery representation.
#[derive(Debug, Clone, Copy)]
pub struct Montgomery {
    p: u32,
    neg_inv: u32,
    r2: u32,
}

impl Montgomery {
    pub fn new(p: u32) -> Self {
        assert!(p % 2 == 1 && p < (1 << 31), "modulus must be odd and below 2^31");
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        }
        debug_assert_eq!(p.wrapping_mul(inv), 1);
        let r2 = ((1u128 << 64) % p as u128) as u32;
        Self { p, neg_inv: inv.wrapping_neg(), r2 }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(self.neg_inv);
        let u = ((t + m as u64 * self.p as u64) >> 32) as u32;
        u.min(u.wrapping_sub(self.p))
    }

    #[inline]
    pub fn to_mont(&self, a: u32) -> u32 {
        self.redc(a as u64 * self.r2 as u64)
    }

    #[inline]
    pub fn from_mont(&self, a: u32) -> u32 {
        self.redc(a as u64)
    }

    /// Montgomery form of a signed integer.
    pub fn from_i64(&self, a: i64) -> u32 {
        self.to_mont(a.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.redc(a as u64 * b as u64)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        s.min(s.wrapping_sub(self.p))
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let d = a.wrapping_sub(b);
        d.min(d.wrapping_add(self.p))
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = self.to_mont(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.pow(a, (self.p - 2) as u64)
    }
}

/// Transform engine for one NTT-friendly prime.
#[derive(Debug, Clone)]
pub struct NttField {
    pub mont: Montgomery,
    generator: u32,
    two_adicity: u32,
}

impl NttField {
    pub fn new(p: u32) -> Self {
        debug_assert!(is_prime(p as u64));
        let two_adicity = (p - 1).trailing_zeros();
        let g = least_primitive_root(p as u64) as u32;
        let mont = Montgomery::new(p);
        Self { generator: mont.to_mont(g), mont, two_adicity }
    }

    /// Largest supported transform length.
    pub fn max_len(&self) -> usize {
        1usize << self.two_adicity
    }

    fn root_of_unity(&self, n: usize) -> u32 {
        debug_assert!(n.is_power_of_two() && n <= self.max_len());
        self.mont.pow(self.generator, (self.mont.modulus() as u64 - 1) / n as u64)
    }

    /// In-place cyclic transform of a power-of-two length buffer in Montgomery form.
    pub fn transform(&self, a: &mut [u32], inverse: bool) {
        let n = a.len();
        assert!(n.is_power_of_two() && n <= self.max_len(), "unsupported NTT length {n}");
        if n == 1 {
            return;
        }
        let shift = usize::BITS - n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> shift;
            if i < j {
                a.swap(i, j);
            }
        }
        let m = self.mont;
        let mut w = self.root_of_unity(n);
        if inverse {
            w = m.inv(w);
        }
        // tw[h + j] = w_{2h}^j, one contiguous block per level
        let mut tw = vec![0u32; n];
        let half = n / 2;
        let mut cur = m.to_mont(1);
        for j in 0..half {
            tw[half + j] = cur;
            cur = m.mul(cur, w);
        }
        let mut h = half / 2;
        while h >= 1 {
            for j in 0..h {
                tw[h + j] = tw[2 * h + 2 * j];
            }
            h /= 2;
        }
        let mut h = 1;
        while h < n {
            let level = &tw[h..2 * h];
            for block in a.chunks_exact_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for ((x, y), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(level) {
                    let u = *x;
                    let v = m.mul(*y, t);
                    *x = m.add(u, v);
                    *y = m.sub(u, v);
                }
            }
            h <<= 1;
        }
        if inverse {
            let n_inv = m.inv(m.to_mont(n as u32));
            for x in a.iter_mut() {
                *x = m.mul(*x, n_inv);
            }
        }
    }

    /// Product of two Montgomery-form polynomials truncated to `keep` terms.
    pub fn mul_truncated(&self, a: &[u32], b: &[u32], keep: usize) -> Vec<u32> {
        if a.is_empty() || b.is_empty() || keep == 0 {
            return vec![0; keep];
        }
        let full = a.len() + b.len() - 1;
        let len = full.next_power_of_two();
        let mut fa = a.to_vec();
        fa.resize(len, 0);
        let mut fb = b.to_vec();
        fb.resize(len, 0);
        self.transform(&mut fa, false);
        self.transform(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = self.mont.mul(*x, *y);
        }
        self.transform(&mut fa, true);
        fa.resize(keep, 0);
        fa
    }

    /// Square of a Montgomery-form polynomial truncated to `keep` terms.
    pub fn square_truncated(&self, a: &[u32], keep: usize) -> Vec<u32> {
        if a.is_empty() || keep == 0 {
            return vec![0; keep];
        }
        let len = (2 * a.len() - 1).next_power_of_two();
        let mut fa = a.to_vec();
        fa.resize(len, 0);
        self.transform(&mut fa, false);
        for x in fa.iter_mut() {
            *x = self.mont.mul(*x, *x);
        }
        self.transform(&mut fa, true);
        fa.resize(keep, 0);
        fa
    }
}

/// Picks primes from [`NTT_PRIMES`] whose product exceeds `2^min_bits` and
/// whose 2-adicity admits transforms of length `len`.
pub fn select_primes(min_bits: f64, len: usize) -> Option<Vec<u32>> {
    let mut bits = 0.0;
    let mut out = Vec::new();
    for &p in NTT_PRIMES.iter() {
        if bits > min_bits {
            break;
        }
        if (1usize << (p - 1).trailing_zeros()) >= len {
            bits += (p as f64).log2();
            out.push(p);
        }
    }
    (bits > min_bits).then_some(out)
}

/// Reconstructs signed integers from their residues (plain representation)
/// modulo `primes` by Garner's mixed-radix algorithm. Values are taken in
/// the symmetric range `(-M/2, M/2]`, `M` the product of the primes.
pub fn crt_signed(residues: &[Vec<u32>], primes: &[u32]) -> Vec<BigInt> {
    assert_eq!(residues.len(), primes.len());
    assert!(!primes.is_empty());
    let k = primes.len();
    let len = residues[0].len();
    // inv[i][j] = p_j^{-1} mod p_i for j < i
    let inv: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            (0..i)
                .map(|j| crate::arith::pow_mod(primes[j] as u64 % primes[i] as u64, primes[i] as u64 - 2, primes[i] as u64))
                .collect()
        })
        .collect();
    let modulus = primes.iter().fold(BigUint::from(1u32), |acc, &p| acc * p);
    let top = primes[k - 1] as u64;

    let mut digits = vec![0u64; k];
    (0..len)
        .map(|idx| {
            for i in 0..k {
                let pi = primes[i] as u64;
                let mut v = residues[i][idx] as u64 % pi;
                for j in 0..i {
                    v = (v + pi - digits[j] % pi) % pi * inv[i][j] % pi;
                }
                digits[i] = v;
            }
            // mixed-radix digits, Horner from the top
            let mut value = BigUint::from(digits[k - 1]);
            for i in (0..k - 1).rev() {
                value *= primes[i];
                value += digits[i];
            }
            if 2 * digits[k - 1] >= top {
                BigInt::from_biguint(Sign::Minus, &modulus - value)
            } else {
                BigInt::from_biguint(Sign::Plus, value)
            }
        })
        .collect()
}
