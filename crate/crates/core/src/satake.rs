//! Satake parameters at unramified primes and the local parameter multisets
//! of the lifts built from them.

use std::cmp::Ordering;

use num_complex::Complex64;

/// Roots `alpha, beta` of `X^2 - lambda(p) X + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatakePair {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl SatakePair {
    /// `alpha + beta`.
    pub fn trace(&self) -> Complex64 {
        self.alpha + self.beta
    }

    /// `alpha * beta`.
    pub fn det(&self) -> Complex64 {
        self.alpha * self.beta
    }

    pub fn as_param_set(&self) -> ParamSet {
        sym_power_params(self, 1)
    }
}

/// Which construction produced a parameter multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamLabel {
    Zeta,
    SymPower(u32),
    RankinSelberg,
    Tensor,
    ExteriorSquare,
}

/// Multiset of local parameters, kept sorted by (real, imaginary) part.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet {
    params: Vec<Complex64>,
    label: ParamLabel,
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl ParamSet {
    pub fn new(mut params: Vec<Complex64>, label: ParamLabel) -> Self {
        params.sort_by(cmp_complex);
        Self { params, label }
    }

    /// Parameters of the Riemann zeta function.
    pub fn zeta() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0)], ParamLabel::Zeta)
    }

    pub fn params(&self) -> &[Complex64] {
        &self.params
    }

    pub fn degree(&self) -> usize {
        self.params.len()
    }

    pub fn label(&self) -> ParamLabel {
        self.label
    }

    /// Sum of the parameters, the first local coefficient.
    pub fn trace(&self) -> Complex64 {
        self.params.iter().sum()
    }

    /// Entry-wise complex conjugate (the contragredient's parameters).
    pub fn conj(&self) -> Self {
        Self::new(self.params.iter().map(|z| z.conj()).collect(), self.label)
    }

    /// Multiset union (isobaric sum).
    pub fn union(&self, other: &ParamSet, label: ParamLabel) -> Self {
        let mut params = self.params.clone();
        params.extend_from_slice(&other.params);
        Self::new(params, label)
    }

    /// Multiset equality within `tol`, by greedy matching so that near-ties in
    /// the sort order cannot misalign the comparison.
    pub fn approx_eq(&self, other: &ParamSet, tol: f64) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        let mut used = vec![false; other.degree()];
        'outer: for z in &self.params {
            for (i, w) in other.params.iter().enumerate() {
                if !used[i] && (z - w).norm() <= tol {
                    used[i] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// Whether the multiset equals its own conjugate within `tol`.
    pub fn is_self_conjugate(&self, tol: f64) -> bool {
        self.approx_eq(&self.conj(), tol)
    }

    /// Number of parameters within `tol` of 1.
    pub fn count_ones(&self, tol: f64) -> usize {
        self.params.iter().filter(|z| (*z - 1.0).norm() <= tol).count()
    }
}

/// Satake parameters from a normalized Hecke eigenvalue.
///
/// `alpha` is the root with the larger imaginary part (then the larger real
/// part); `lambda = +-2` gives a double root.
pub fn satake_from_lambda(lambda_p: f64) -> SatakePair {
    let disc = lambda_p * lambda_p - 4.0;
    let half = lambda_p / 2.0;
    let (r1, r2) = if disc <= 0.0 {
        let im = (-disc).sqrt() / 2.0;
        (Complex64::new(half, im), Complex64::new(half, -im))
    } else {
        let s = disc.sqrt() / 2.0;
        (Complex64::new(half + s, 0.0), Complex64::new(half - s, 0.0))
    };
    let order = r1.im.total_cmp(&r2.im).then(r1.re.total_cmp(&r2.re));
    if order == Ordering::Less {
        SatakePair { alpha: r2, beta: r1 }
    } else {
        SatakePair { alpha: r1, beta: r2 }
    }
}

/// `{ alpha^{m-i} beta^i : 0 <= i <= m }`.
pub fn sym_power_params(s: &SatakePair, m: u32) -> ParamSet {
    let params = (0..=m)
        .map(|i| s.alpha.powu(m - i) * s.beta.powu(i))
        .collect();
    ParamSet::new(params, ParamLabel::SymPower(m))
}

/// `{ x * conj(y) : x in P, y in Q }`.
pub fn rankin_selberg_params(p: &ParamSet, q: &ParamSet) -> ParamSet {
    let params = p
        .params
        .iter()
        .flat_map(|x| q.params.iter().map(move |y| x * y.conj()))
        .collect();
    ParamSet::new(params, ParamLabel::RankinSelberg)
}

/// `{ x * y : x in P, y in Q }`.
pub fn tensor_params(p: &ParamSet, q: &ParamSet) -> ParamSet {
    let params = p
        .params
        .iter()
        .flat_map(|x| q.params.iter().map(move |y| x * y))
        .collect();
    ParamSet::new(params, ParamLabel::Tensor)
}

/// Exterior square of the GL(4) tensor product of two pairs: the six
/// products of distinct elements of `{ alpha gamma, alpha delta, beta gamma, beta delta }`.
pub fn exterior_square_gl4(s1: &SatakePair, s2: &SatakePair) -> ParamSet {
    let four = [
        s1.alpha * s2.alpha,
        s1.alpha * s2.beta,
        s1.beta * s2.alpha,
        s1.beta * s2.beta,
    ];
    let mut params = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            params.push(four[i] * four[j]);
        }
    }
    ParamSet::new(params, ParamLabel::ExteriorSquare)
}

/// Closed form of [`exterior_square_gl4`] when `alpha beta = gamma delta = 1`:
/// `{ alpha^2, beta^2, gamma^2, delta^2, 1, 1 }`.
pub fn exterior_square_closed_form(s1: &SatakePair, s2: &SatakePair) -> ParamSet {
    let one = Complex64::new(1.0, 0.0);
    ParamSet::new(
        vec![
            s1.alpha * s1.alpha,
            s1.beta * s1.beta,
            s2.alpha * s2.alpha,
            s2.beta * s2.beta,
            one,
            one,
        ],
        ParamLabel::ExteriorSquare,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenforms::lambda_prime_power;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn set(v: &[Complex64]) -> ParamSet {
        ParamSet::new(v.to_vec(), ParamLabel::Tensor)
    }

    #[test]
    fn satake_examples() {
        let s = satake_from_lambda(2.0);
        assert_eq!((s.alpha, s.beta), (c(1.0, 0.0), c(1.0, 0.0)));
        let s = satake_from_lambda(0.0);
        assert_eq!((s.alpha, s.beta), (c(0.0, 1.0), c(0.0, -1.0)));
        let s = satake_from_lambda(-0.5303300859);
        assert!((s.alpha - c(-0.2651650, 0.9642030)).norm() < 1e-7);
        assert_eq!(s.beta, s.alpha.conj());
        assert!((s.alpha.norm() - 1.0).abs() < 1e-12);
        let s = satake_from_lambda(-2.0);
        assert_eq!(s.alpha, s.beta);
    }

    #[test]
    fn satake_outside_deligne_range_is_real() {
        let s = satake_from_lambda(3.0);
        assert!(s.alpha.re > s.beta.re);
        assert!((s.trace() - 3.0).norm() < 1e-12);
        assert!((s.det() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn sym_power_examples() {
        let s = satake_from_lambda(0.7);
        let one = sym_power_params(&s, 1);
        assert!(one.approx_eq(&set(&[s.alpha, s.beta]), 0.0));
        let two = sym_power_params(&satake_from_lambda(2.0), 2);
        assert!(two.approx_eq(&set(&[c(1.0, 0.0); 3]), 1e-15));
        let two = sym_power_params(&satake_from_lambda(0.0), 2);
        assert!(two.approx_eq(&set(&[c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]), 1e-15));
        for m in 1..=4 {
            assert_eq!(sym_power_params(&s, m).degree(), m as usize + 1);
        }
    }

    #[test]
    fn rankin_selberg_examples() {
        let ones = set(&[c(1.0, 0.0); 2]);
        assert!(rankin_selberg_params(&ones, &ones).approx_eq(&set(&[c(1.0, 0.0); 4]), 0.0));
        let s = satake_from_lambda(0.3);
        let p = s.as_param_set();
        let rs = rankin_selberg_params(&p, &p);
        let a2 = s.alpha * s.alpha;
        assert!(rs.approx_eq(&set(&[c(1.0, 0.0), a2, a2.conj(), c(1.0, 0.0)]), 1e-12));
        let p3 = sym_power_params(&s, 2);
        assert_eq!(rankin_selberg_params(&p3, &p3).degree(), 9);
    }

    #[test]
    fn tensor_examples() {
        let s1 = satake_from_lambda(0.4);
        let s2 = satake_from_lambda(-1.1);
        let (g2, d2) = (s2.alpha * s2.alpha, s2.beta * s2.beta);
        let t = tensor_params(&s1.as_param_set(), &sym_power_params(&s2, 2));
        let expected = set(&[
            s1.alpha * g2,
            s1.alpha,
            s1.alpha * d2,
            s1.beta * g2,
            s1.beta,
            s1.beta * d2,
        ]);
        assert!(t.approx_eq(&expected, 1e-12));
        assert_eq!(t.degree(), 6);
        let ones = set(&[c(1.0, 0.0); 2]);
        assert!(tensor_params(&ones, &ones).approx_eq(&set(&[c(1.0, 0.0); 4]), 0.0));
    }

    #[test]
    fn exterior_square_examples() {
        let one = satake_from_lambda(2.0);
        assert!(exterior_square_gl4(&one, &one).approx_eq(&set(&[c(1.0, 0.0); 6]), 1e-15));
        let zero = satake_from_lambda(0.0);
        let e = exterior_square_gl4(&zero, &zero);
        let m1 = c(-1.0, 0.0);
        assert!(e.approx_eq(&set(&[m1, m1, m1, m1, c(1.0, 0.0), c(1.0, 0.0)]), 1e-15));
        assert_eq!(e.degree(), 6);
    }

    #[test]
    fn conj_and_union() {
        let s = satake_from_lambda(1.3);
        let p = sym_power_params(&s, 3);
        assert!(p.is_self_conjugate(1e-12));
        let u = ParamSet::zeta().union(&p, ParamLabel::Tensor);
        assert_eq!(u.degree(), 5);
        assert_eq!(u.count_ones(1e-12), 1);
    }

    proptest! {
        #[test]
        fn satake_pair_invariants(lambda in -2.0f64..=2.0) {
            let s = satake_from_lambda(lambda);
            prop_assert!((s.trace() - lambda).norm() < 1e-12);
            prop_assert!((s.det() - 1.0).norm() < 1e-12);
            prop_assert!((s.alpha.norm() - 1.0).abs() < 1e-9);
            prop_assert!((s.beta.norm() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn sym_power_trace_is_prime_power_coefficient(lambda in -2.0f64..=2.0, m in 1u32..=4) {
            let s = satake_from_lambda(lambda);
            let tr = sym_power_params(&s, m).trace();
            prop_assert!((tr - lambda_prime_power(lambda, m as usize)).norm() < 1e-9);
        }

        #[test]
        fn exterior_square_routes_agree(l1 in -2.0f64..=2.0, l2 in -2.0f64..=2.0) {
            let (s1, s2) = (satake_from_lambda(l1), satake_from_lambda(l2));
            prop_assert!(exterior_square_gl4(&s1, &s2)
                .approx_eq(&exterior_square_closed_form(&s1, &s2), 1e-12));
        }

        #[test]
        fn rankin_selberg_self_has_unit_entries(lambda in -2.0f64..=2.0, m in 1u32..=4) {
            let p = sym_power_params(&satake_from_lambda(lambda), m);
            let rs = rankin_selberg_params(&p, &p);
            prop_assert!(rs.count_ones(1e-9) >= p.degree());
            prop_assert_eq!(rs.degree(), p.degree() * p.degree());
        }
    }
}
