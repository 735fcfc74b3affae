//! Dirichlet characters modulo a prime.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::arith::{gcd, is_prime, least_primitive_root};
use crate::dirichlet::CoeffSeq;
use crate::error::{Error, Result};

/// `chi_k(g^a) = exp(2 pi i k a / (q - 1))` for the least primitive root `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    index: u64,
    generator: u64,
    values: Vec<Complex64>,
    order: u64,
}

// Exact values at multiples of a quarter turn so that real characters stay real.
fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if 4 * num % den == 0 {
        return match 4 * num / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * num as f64 / den as f64)
}

impl DirichletCharacter {
    fn build(modulus: u64, index: u64, generator: u64) -> Self {
        let phi = modulus - 1;
        let index = index % phi;
        let mut values = vec![Complex64::new(0.0, 0.0); modulus as usize];
        let mut x = 1u64;
        for a in 0..phi {
            values[x as usize] = root_of_unity(index * a, phi);
            x = x * generator % modulus;
        }
        let order = phi / gcd(index, phi);
        Self { modulus, index, generator, values, order }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// The primitive root used to label the characters.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    /// `chi^j`, with negative `j` giving powers of the conjugate.
    pub fn pow(&self, j: i64) -> Self {
        let phi = (self.modulus - 1) as i128;
        let k = (self.index as i128 * j as i128).rem_euclid(phi) as u64;
        Self::build(self.modulus, k, self.generator)
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }
}

/// All `q - 1` characters modulo the prime `q`; index 0 is the principal character.
pub fn characters_mod(q: u64) -> Result<Vec<DirichletCharacter>> {
    if !is_prime(q) {
        return Err(Error::NonPrimeModulus(q));
    }
    let g = least_primitive_root(q);
    Ok((0..q - 1).map(|k| DirichletCharacter::build(q, k, g)).collect())
}

/// `b(n) = a(n) chi(n)^j`. The power `chi^0` is the principal character, so
/// multiples of the modulus are sent to zero for every `j`.
pub fn twist(a: &CoeffSeq, chi: &DirichletCharacter, j: i64) -> CoeffSeq {
    let chi_j = chi.pow(j);
    a.scale_by(
        |n| chi_j.value(n as u64),
        format!("{} x chi_{}^{} mod {}", a.meta(), chi.index(), j, chi.modulus()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_moduli() {
        let chars = characters_mod(3).unwrap();
        assert_eq!(chars.len(), 2);
        assert_eq!(chars[1].value(2), Complex64::new(-1.0, 0.0));
        assert_eq!(chars[1].order(), 2);

        let chars = characters_mod(5).unwrap();
        assert_eq!(chars[1].generator(), 2);
        assert_eq!(chars[1].value(2), Complex64::new(0.0, 1.0));
        assert_eq!(chars[1].order(), 4);
        assert_eq!(chars[2].order(), 2);

        assert!(matches!(characters_mod(9), Err(Error::NonPrimeModulus(9))));
        assert!(matches!(characters_mod(1), Err(Error::NonPrimeModulus(1))));
    }

    #[test]
    fn character_axioms() {
        for q in [3u64, 5, 7, 11, 13, 31] {
            for chi in characters_mod(q).unwrap() {
                assert_eq!(chi.value(0), Complex64::new(0.0, 0.0));
                for m in 0..q {
                    assert_eq!(chi.value(m), chi.value(m + q));
                    if m != 0 {
                        assert!((chi.value(m).norm() - 1.0).abs() < 1e-12);
                    }
                    for n in 0..q {
                        assert!((chi.value(m * n) - chi.value(m) * chi.value(n)).norm() < 1e-12);
                    }
                }
                let total: Complex64 = (0..q).map(|n| chi.value(n)).sum();
                if chi.is_principal() {
                    assert!((total.re - (q - 1) as f64).abs() < 1e-12);
                } else {
                    assert!(total.norm() < 1e-12, "q={q} k={}", chi.index());
                }
                let ord = chi.order();
                assert!((1..q).all(|n| (chi.value(n).powu(ord as u32) - 1.0).norm() < 1e-10));
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for q in [5u64, 7, 13] {
            let chars = characters_mod(q).unwrap();
            for n in 1..3 * q {
                let total: Complex64 = chars.iter().map(|c| c.value(n)).sum();
                let expected = if n % q == 1 { (q - 1) as f64 } else { 0.0 };
                assert!((total - expected).norm() < 1e-10, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn powers() {
        let chars = characters_mod(7).unwrap();
        let chi = &chars[1];
        assert_eq!(chi.pow(0).index(), 0);
        assert_eq!(chi.pow(7).index(), 1);
        assert_eq!(chi.pow(-1).index(), 5);
        for n in 1..7 {
            assert!((chi.conj().value(n) - chi.value(n).conj()).norm() < 1e-12);
            assert!((chi.pow(3).value(n) - chi.value(n).powu(3)).norm() < 1e-12);
        }
    }

    #[test]
    fn twisting() {
        let a = CoeffSeq::from_fn(30, "a", |n| n as f64 + 0.5);
        let chi = &characters_mod(3).unwrap()[1];
        let t = twist(&a, chi, 1);
        for n in 1..=30 {
            let expected = match n % 3 {
                0 => 0.0,
                1 => a.re(n),
                _ => -a.re(n),
            };
            assert_eq!(t.get(n), Complex64::new(expected, 0.0));
        }
        let t0 = twist(&a, chi, 0);
        for n in 1..=30 {
            let expected = if n % 3 == 0 { 0.0 } else { a.re(n) };
            assert_eq!(t0.re(n), expected);
        }

        let chi5 = &characters_mod(5).unwrap()[1];
        let back = twist(&twist(&a, chi5, 1), chi5, -1);
        for n in (1..=30).filter(|n| n % 5 != 0) {
            assert!((back.get(n) - a.get(n)).norm() < 1e-12);
        }
    }
}
