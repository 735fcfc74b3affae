//! Truncated Dirichlet series: local factors from parameter multisets,
//! multiplicative globalization, convolution, division and partial sums.
//!
//! Every loop runs in a fixed order (increasing `n`, divisors in increasing
//! order) so floating-point results are reproducible bit for bit.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use num_traits::{Num, Zero};

use crate::arith::{ilog, PrimeSieve};
use crate::error::{Error, Result};
use crate::satake::ParamSet;

/// Local power series `sum_j h_j t^j = prod_{x in params} (1 - x t)^{-1}` at a prime.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFactor {
    pub prime: u64,
    pub h: Vec<Complex64>,
}

impl LocalFactor {
    pub fn from_real(prime: u64, h: &[f64]) -> Self {
        Self { prime, h: h.iter().map(|&x| Complex64::new(x, 0.0)).collect() }
    }

    /// Truncation depth `J` (the factor holds `h_0..=h_J`).
    pub fn depth(&self) -> usize {
        self.h.len().saturating_sub(1)
    }

    fn is_real(&self) -> bool {
        self.h.iter().all(|z| z.im == 0.0)
    }
}

/// Complete homogeneous symmetric polynomials `h_0..=h_depth` of `params`,
/// by multiplying the geometric series one parameter at a time.
pub fn local_coeffs(prime: u64, params: &ParamSet, depth: usize) -> LocalFactor {
    let mut h = vec![Complex64::zero(); depth + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for &x in params.params() {
        for j in 1..=depth {
            let prev = h[j - 1];
            h[j] += x * prev;
        }
    }
    LocalFactor { prime, h }
}

/// The same coefficients through Newton's identities
/// `j h_j = sum_{k=1}^{j} p_k h_{j-k}` with power sums `p_k`.
pub fn local_coeffs_newton(prime: u64, params: &ParamSet, depth: usize) -> LocalFactor {
    let power_sums: Vec<Complex64> = (0..=depth)
        .map(|k| params.params().iter().map(|x| x.powu(k as u32)).sum())
        .collect();
    let mut h = vec![Complex64::zero(); depth + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for j in 1..=depth {
        let s: Complex64 = (1..=j).map(|k| power_sums[k] * h[j - k]).sum();
        h[j] = s / j as f64;
    }
    LocalFactor { prime, h }
}

#[derive(Debug, Clone, PartialEq)]
enum Values {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Coefficients `a(1..=N)` of a truncated Dirichlet series.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    // index 0 is unused and holds zero
    values: Values,
    meta: String,
}

impl CoeffSeq {
    /// Real sequence from `a(1..=N)`.
    pub fn from_real(values: &[f64], meta: impl Into<String>) -> Self {
        let mut v = Vec::with_capacity(values.len() + 1);
        v.push(0.0);
        v.extend_from_slice(values);
        Self { values: Values::Real(v), meta: meta.into() }
    }

    /// Complex sequence from `a(1..=N)`.
    pub fn from_complex(values: &[Complex64], meta: impl Into<String>) -> Self {
        let mut v = Vec::with_capacity(values.len() + 1);
        v.push(Complex64::zero());
        v.extend_from_slice(values);
        Self { values: Values::Complex(v), meta: meta.into() }
    }

    pub fn from_fn(n: usize, meta: impl Into<String>, f: impl Fn(usize) -> f64) -> Self {
        let v: Vec<f64> = (1..=n).map(f).collect();
        Self::from_real(&v, meta)
    }

    /// Convolution identity `e`: `e(1) = 1`, `e(n) = 0` otherwise.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, "identity", |k| if k == 1 { 1.0 } else { 0.0 })
    }

    /// Coefficients of the Riemann zeta function.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, "zeta", |_| 1.0)
    }

    fn from_raw_real(v: Vec<f64>, meta: String) -> Self {
        Self { values: Values::Real(v), meta }
    }

    fn from_raw_complex(v: Vec<Complex64>, meta: String) -> Self {
        Self { values: Values::Complex(v), meta }
    }

    pub fn len(&self) -> usize {
        match &self.values {
            Values::Real(v) => v.len() - 1,
            Values::Complex(v) => v.len() - 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn meta(&self) -> &str {
        &self.meta
    }

    pub fn with_meta(mut self, meta: impl Into<String>) -> Self {
        self.meta = meta.into();
        self
    }

    /// Whether the sequence uses real storage.
    pub fn is_real(&self) -> bool {
        matches!(self.values, Values::Real(_))
    }

    /// `a(n)` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> Complex64 {
        assert!(n >= 1 && n <= self.len(), "index {n} out of range 1..={}", self.len());
        match &self.values {
            Values::Real(v) => Complex64::new(v[n], 0.0),
            Values::Complex(v) => v[n],
        }
    }

    /// Real part of `a(n)`.
    pub fn re(&self, n: usize) -> f64 {
        self.get(n).re
    }

    /// Real parts of `a(1..=N)`.
    pub fn real_parts(&self) -> Vec<f64> {
        match &self.values {
            Values::Real(v) => v[1..].to_vec(),
            Values::Complex(v) => v[1..].iter().map(|z| z.re).collect(),
        }
    }

    /// Largest `|Im a(n)|`.
    pub fn max_imag(&self) -> f64 {
        match &self.values {
            Values::Real(_) => 0.0,
            Values::Complex(v) => v[1..].iter().map(|z| z.im.abs()).fold(0.0, f64::max),
        }
    }

    /// Switches to real storage after checking the imaginary residue is at most `tol`.
    pub fn into_real(self, tol: f64) -> Result<Self> {
        match self.values {
            Values::Real(_) => Ok(self),
            Values::Complex(ref v) => {
                let resid = v[1..].iter().map(|z| z.im.abs()).fold(0.0, f64::max);
                if resid > tol {
                    return Err(Error::NotReal(resid));
                }
                let re = v.iter().map(|z| z.re).collect();
                Ok(Self::from_raw_real(re, self.meta))
            }
        }
    }

    /// Like [`CoeffSeq::into_real`] with the residue measured against
    /// `max(1, |a(n)|)`, for long Euler products whose coefficients are large.
    pub fn into_real_scaled(self, tol: f64) -> Result<Self> {
        match self.values {
            Values::Real(_) => Ok(self),
            Values::Complex(ref v) => {
                let resid = v[1..].iter().map(|z| z.im.abs() / z.norm().max(1.0)).fold(0.0, f64::max);
                if resid > tol {
                    return Err(Error::NotReal(resid));
                }
                let re = v.iter().map(|z| z.re).collect();
                Ok(Self::from_raw_real(re, self.meta))
            }
        }
    }

    fn to_complex_vec(&self) -> Vec<Complex64> {
        match &self.values {
            Values::Real(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            Values::Complex(v) => v.clone(),
        }
    }

    /// Entry-wise conjugate.
    pub fn conj(&self) -> Self {
        match &self.values {
            Values::Real(_) => self.clone(),
            Values::Complex(v) => {
                Self::from_raw_complex(v.iter().map(|z| z.conj()).collect(), format!("conj({})", self.meta))
            }
        }
    }

    /// Entry-wise product with a scalar sequence `w(n)`.
    pub fn scale_by(&self, w: impl Fn(usize) -> Complex64, meta: impl Into<String>) -> Self {
        let v: Vec<Complex64> = (0..=self.len())
            .map(|n| if n == 0 { Complex64::zero() } else { self.get(n) * w(n) })
            .collect();
        Self::from_raw_complex(v, meta.into())
    }

    /// `max_n |a(n) - b(n)|`.
    pub fn max_abs_diff(&self, other: &CoeffSeq) -> Result<f64> {
        check_len(self, other)?;
        Ok((1..=self.len())
            .map(|n| (self.get(n) - other.get(n)).norm())
            .fold(0.0, f64::max))
    }

    /// `max_n |a(n) - b(n)| / max(1, |b(n)|)`.
    pub fn max_rel_diff(&self, other: &CoeffSeq) -> Result<f64> {
        check_len(self, other)?;
        Ok((1..=self.len())
            .map(|n| (self.get(n) - other.get(n)).norm() / other.get(n).norm().max(1.0))
            .fold(0.0, f64::max))
    }

    /// `max_n |a(n) - b(n)|` over the listed indices.
    pub fn max_abs_diff_at(&self, other: &CoeffSeq, indices: impl IntoIterator<Item = usize>) -> f64 {
        indices
            .into_iter()
            .map(|n| (self.get(n) - other.get(n)).norm())
            .fold(0.0, f64::max)
    }

    /// Truncates to the first `n` coefficients.
    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.len());
        match &self.values {
            Values::Real(v) => Self::from_raw_real(v[..=n].to_vec(), self.meta.clone()),
            Values::Complex(v) => Self::from_raw_complex(v[..=n].to_vec(), self.meta.clone()),
        }
    }

    /// Writes `n,value_re[,value_im]` rows under a `# meta:` line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# meta: {}", self.meta)?;
        match &self.values {
            Values::Real(v) => {
                writeln!(out, "n,value_re")?;
                for (n, x) in v.iter().enumerate().skip(1) {
                    writeln!(out, "{n},{x}")?;
                }
            }
            Values::Complex(v) => {
                writeln!(out, "n,value_re,value_im")?;
                for (n, z) in v.iter().enumerate().skip(1) {
                    writeln!(out, "{n},{},{}", z.re, z.im)?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }
}

fn check_len(a: &CoeffSeq, b: &CoeffSeq) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

/// Builds `a(n) = prod_p h_{v_p(n)}(p)` for `n <= n_max`, asking `local` for
/// the factor at each prime `p <= n_max` with depth `floor(log_p n_max)`.
pub fn expand_with(
    n_max: usize,
    meta: impl Into<String>,
    mut local: impl FnMut(u64, usize) -> Result<LocalFactor>,
) -> Result<CoeffSeq> {
    let sieve = PrimeSieve::new(n_max.max(1));
    let mut tables: Vec<Option<LocalFactor>> = vec![None; n_max + 1];
    let mut all_real = true;
    for &p in sieve.primes() {
        let p = p as usize;
        let need = ilog(p, n_max);
        let f = local(p as u64, need)?;
        if f.depth() < need {
            return Err(Error::InsufficientDepth { p: p as u64, need, have: f.depth() });
        }
        all_real &= f.is_real();
        tables[p] = Some(f);
    }
    let factor = |p: usize, v: u32| tables[p].as_ref().expect("every prime has a factor").h[v as usize];
    let meta = meta.into();
    if all_real {
        let mut a = vec![0.0; n_max + 1];
        if n_max >= 1 {
            a[1] = 1.0;
        }
        for n in 2..=n_max {
            let (p, v, rest) = sieve.split_smallest(n);
            a[n] = factor(p, v).re * a[rest];
        }
        Ok(CoeffSeq::from_raw_real(a, meta))
    } else {
        let mut a = vec![Complex64::zero(); n_max + 1];
        if n_max >= 1 {
            a[1] = Complex64::new(1.0, 0.0);
        }
        for n in 2..=n_max {
            let (p, v, rest) = sieve.split_smallest(n);
            a[n] = factor(p, v) * a[rest];
        }
        Ok(CoeffSeq::from_raw_complex(a, meta))
    }
}

/// Globalizes a table of local factors. Primes above `n_max` are ignored.
pub fn expand_multiplicative(locals: &BTreeMap<u64, LocalFactor>, n_max: usize) -> Result<CoeffSeq> {
    expand_with(n_max, "euler-product", |p, _| {
        locals.get(&p).cloned().ok_or(Error::MissingPrime(p))
    })
}

fn convolve_slices<T: Num + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len() - 1;
    let mut c = vec![T::zero(); n + 1];
    for d in 1..=n {
        let ad = a[d];
        if ad.is_zero() {
            continue;
        }
        for e in 1..=n / d {
            c[d * e] = c[d * e] + ad * b[e];
        }
    }
    c
}

fn divide_slices<T: Num + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len() - 1;
    let b1 = b[1];
    let mut acc = vec![T::zero(); n + 1];
    let mut u = vec![T::zero(); n + 1];
    for m in 1..=n {
        let um = (a[m] - acc[m]) / b1;
        u[m] = um;
        if um.is_zero() {
            continue;
        }
        for k in 2..=n / m {
            acc[m * k] = acc[m * k] + um * b[k];
        }
    }
    u
}

/// Dirichlet convolution `c(n) = sum_{de = n} a(d) b(e)` in `O(N log N)`.
pub fn convolve(a: &CoeffSeq, b: &CoeffSeq) -> Result<CoeffSeq> {
    check_len(a, b)?;
    let meta = format!("({})*({})", a.meta, b.meta);
    Ok(match (&a.values, &b.values) {
        (Values::Real(x), Values::Real(y)) => CoeffSeq::from_raw_real(convolve_slices(x, y), meta),
        _ => CoeffSeq::from_raw_complex(convolve_slices(&a.to_complex_vec(), &b.to_complex_vec()), meta),
    })
}

/// Convolution of several sequences, left to right.
pub fn convolve_all(seqs: &[&CoeffSeq]) -> Result<CoeffSeq> {
    let (first, rest) = seqs
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty convolution product".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, s| convolve(&acc, s))
}

/// `k`-fold convolution power (`k = 0` gives the identity).
pub fn convolve_power(a: &CoeffSeq, k: usize) -> Result<CoeffSeq> {
    let mut acc = CoeffSeq::identity(a.len());
    for _ in 0..k {
        acc = convolve(&acc, a)?;
    }
    Ok(acc.with_meta(format!("({})^{k}", a.meta)))
}

/// The sequence `u` with `b * u = a`, computed sequentially in `n`:
/// `u(n) = (a(n) - sum_{d | n, d < n} u(d) b(n/d)) / b(1)`.
pub fn divide(a: &CoeffSeq, b: &CoeffSeq) -> Result<CoeffSeq> {
    check_len(a, b)?;
    if a.is_empty() {
        return Ok(a.clone());
    }
    if b.get(1).is_zero() {
        return Err(Error::DivisionByZero);
    }
    let meta = format!("({})/({})", a.meta, b.meta);
    Ok(match (&a.values, &b.values) {
        (Values::Real(x), Values::Real(y)) => CoeffSeq::from_raw_real(divide_slices(x, y), meta),
        _ => CoeffSeq::from_raw_complex(divide_slices(&a.to_complex_vec(), &b.to_complex_vec()), meta),
    })
}

/// Truncated Dirichlet series value with a convergence diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialValue {
    /// `sum_{n <= N} a(n) n^{-s}`.
    pub value: Complex64,
    /// `sum_{N/2 < n <= N} |a(n)| n^{-s}`.
    pub tail: f64,
}

pub fn evaluate_partial(a: &CoeffSeq, s: f64) -> Result<PartialValue> {
    if !(s > 0.0) {
        return Err(Error::InvalidArgument(format!("evaluation point s = {s} must be positive")));
    }
    let n = a.len();
    let mut value = Complex64::zero();
    let mut tail = 0.0;
    for k in 1..=n {
        let w = (k as f64).powf(-s);
        let term = a.get(k) * w;
        value += term;
        if 2 * k > n {
            tail += term.norm();
        }
    }
    Ok(PartialValue { value, tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenforms::{lambda_prime_power, normalize, sieve_delta};
    use crate::satake::{satake_from_lambda, sym_power_params, ParamLabel};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn local_coeffs_examples() {
        let z = local_coeffs(2, &ParamSet::zeta(), 6);
        assert!(z.h.iter().all(|&x| x == c(1.0, 0.0)));
        let x = c(0.3, -0.7);
        let single = local_coeffs(3, &ParamSet::new(vec![x], ParamLabel::Tensor), 3);
        for (j, hj) in single.h.iter().enumerate() {
            assert!((hj - x.powu(j as u32)).norm() < 1e-15);
        }
        let lam = -24.0 / 2f64.powf(5.5);
        let f = local_coeffs(2, &satake_from_lambda(lam).as_param_set(), 8);
        for j in 0..=8 {
            assert!((f.h[j] - lambda_prime_power(lam, j)).norm() < 1e-12);
        }
    }

    #[test]
    fn newton_route_matches_series_route() {
        for lam in [-1.9, -0.53, 0.0, 0.8, 2.0] {
            let s = satake_from_lambda(lam);
            for m in 1..=4 {
                let params = sym_power_params(&s, m);
                let a = local_coeffs(5, &params, 3);
                let b = local_coeffs_newton(5, &params, 3);
                for j in 0..=3 {
                    assert!((a.h[j] - b.h[j]).norm() < 1e-10, "lam={lam} m={m} j={j}");
                }
            }
        }
    }

    #[test]
    fn expand_examples() {
        let mut locals = BTreeMap::new();
        for p in [2u64, 3, 5, 7, 11] {
            locals.insert(p, local_coeffs(p, &ParamSet::zeta(), ilog(p as usize, 12)));
        }
        let ones = expand_multiplicative(&locals, 12).unwrap();
        assert!(ones.is_real());
        assert!((1..=12).all(|n| ones.re(n) == 1.0));

        let mut locals = BTreeMap::new();
        locals.insert(2, LocalFactor::from_real(2, &[1.0, 0.5, 0.25, 0.125]));
        locals.insert(3, LocalFactor::from_real(3, &[1.0, -2.0, 4.0]));
        for p in [5u64, 7, 11] {
            locals.insert(p, LocalFactor::from_real(p, &[1.0, 3.0]));
        }
        let a = expand_multiplicative(&locals, 12).unwrap();
        assert_eq!(a.re(12), 0.25 * -2.0);
        assert_eq!(a.re(10), 0.5 * 3.0);
    }

    #[test]
    fn expand_errors() {
        let mut locals = BTreeMap::new();
        locals.insert(2, LocalFactor::from_real(2, &[1.0, 1.0]));
        assert!(matches!(expand_multiplicative(&locals, 3), Err(Error::MissingPrime(3))));
        locals.insert(3, LocalFactor::from_real(3, &[1.0, 1.0]));
        assert!(matches!(
            expand_multiplicative(&locals, 4),
            Err(Error::InsufficientDepth { p: 2, need: 2, have: 1 })
        ));
    }

    #[test]
    fn sym2_of_delta_at_four() {
        // Oracle: expand prod_x (1 - x t)^{-1} for x in {alpha^2, 1, beta^2} by
        // brute-force enumeration of monomials of total degree 2.
        let lam = -24.0 / 2f64.powf(5.5);
        let s = satake_from_lambda(lam);
        let xs = [s.alpha * s.alpha, c(1.0, 0.0), s.beta * s.beta];
        let mut brute = Complex64::zero();
        for i in 0..3 {
            for j in i..3 {
                brute += xs[i] * xs[j];
            }
        }
        let seq = expand_with(4, "sym2", |p, depth| {
            let lp = if p == 2 { lam } else { 0.0 };
            Ok(local_coeffs(p, &sym_power_params(&satake_from_lambda(lp), 2), depth))
        })
        .unwrap();
        assert!((seq.get(4) - brute).norm() < 1e-12);
        // h_2(alpha^2, 1, beta^2) = lambda(p^4) + 1 since alpha beta = 1
        assert!((seq.get(4).re - (lambda_prime_power(lam, 4) + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn convolution_examples() {
        let n = 60;
        let ones = CoeffSeq::ones(n);
        let d = convolve(&ones, &ones).unwrap();
        assert_eq!(d.re(6), 4.0);
        assert_eq!(d.re(60), 12.0);
        let e = CoeffSeq::identity(n);
        let a = CoeffSeq::from_fn(n, "a", |k| (k as f64).sin());
        assert_eq!(convolve(&a, &e).unwrap().real_parts(), a.real_parts());
        assert!(matches!(
            convolve(&a, &CoeffSeq::ones(n + 1)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn division_examples() {
        let n = 50;
        let a = CoeffSeq::from_fn(n, "a", |k| 1.0 + (k as f64).cos());
        let e = divide(&a, &a).unwrap();
        assert!(e.max_abs_diff(&CoeffSeq::identity(n)).unwrap() < 1e-12);
        let ones = CoeffSeq::ones(n);
        let d = convolve(&ones, &ones).unwrap();
        assert!(divide(&d, &ones).unwrap().max_abs_diff(&ones).unwrap() == 0.0);
        let zero_head = CoeffSeq::from_fn(n, "z", |k| if k == 1 { 0.0 } else { 1.0 });
        assert!(matches!(divide(&a, &zero_head), Err(Error::DivisionByZero)));
    }

    #[test]
    fn partial_evaluation() {
        let z = evaluate_partial(&CoeffSeq::ones(1_000_000), 2.0).unwrap();
        assert!((z.value.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-5);
        let e = evaluate_partial(&CoeffSeq::identity(100), 0.7).unwrap();
        assert_eq!(e.value, c(1.0, 0.0));
        assert_eq!(e.tail, 0.0);
        assert!(evaluate_partial(&CoeffSeq::ones(3), 0.0).is_err());
    }

    #[test]
    fn real_storage_downgrade() {
        let v = vec![c(1.0, 1e-12), c(2.0, -1e-11)];
        let s = CoeffSeq::from_complex(&v, "x");
        assert!(s.clone().into_real(1e-9).unwrap().is_real());
        assert!(matches!(s.clone().into_real(1e-13), Err(Error::NotReal(_))));
        let big = CoeffSeq::from_complex(&[c(1.0, 0.0), c(1e8, 1e-5)], "big");
        assert!(big.clone().into_real(1e-9).is_err());
        assert!(big.into_real_scaled(1e-9).unwrap().is_real());
    }

    #[test]
    fn csv_export() {
        let mut buf = Vec::new();
        CoeffSeq::from_real(&[1.0, -0.5], "demo").write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "# meta: demo\nn,value_re\n1,1\n2,-0.5\n");
        let mut buf = Vec::new();
        CoeffSeq::from_complex(&[c(1.0, 0.0), c(0.0, 1.0)], "cx").write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "# meta: cx\nn,value_re,value_im\n1,1,0\n2,0,1\n");
    }

    #[test]
    fn delta_euler_product_matches_sieve() {
        let n = 3000;
        let f = normalize(&sieve_delta(n).unwrap());
        let seq = expand_with(n, "delta", |p, depth| {
            Ok(local_coeffs(p, &satake_from_lambda(f.lambda(p as usize)).as_param_set(), depth))
        })
        .unwrap()
        .into_real(1e-9)
        .unwrap();
        for k in 1..=n {
            assert!((seq.re(k) - f.lambda(k)).abs() < 1e-9, "n = {k}");
        }
    }

    fn random_multiplicative(n: usize, seed: &[f64]) -> CoeffSeq {
        expand_with(n, "rand", |p, depth| {
            let x = seed[(p as usize) % seed.len()] * 2.0 - 1.0;
            let h: Vec<f64> = (0..=depth).map(|j| if j == 0 { 1.0 } else { x * (j as f64).sqrt() }).collect();
            Ok(LocalFactor::from_real(p, &h))
        })
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn divide_then_convolve_round_trips(
            sa in prop::collection::vec(0.0f64..1.0, 7),
            sb in prop::collection::vec(0.0f64..1.0, 5),
        ) {
            let n = 10_000;
            let a = random_multiplicative(n, &sa);
            let b = random_multiplicative(n, &sb);
            let u = divide(&a, &b).unwrap();
            let back = convolve(&b, &u).unwrap();
            let scale = (1..=n).map(|k| a.re(k).abs()).fold(1.0, f64::max);
            prop_assert!(back.max_abs_diff(&a).unwrap() <= 1e-8 * scale);
            // quotient of multiplicative sequences is multiplicative
            for (m, k) in [(2usize, 3usize), (4, 9), (8, 5), (7, 16), (12, 25), (27, 32)] {
                let lhs = u.re(m * k);
                let rhs = u.re(m) * u.re(k);
                prop_assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs().max(1.0));
            }
        }

        #[test]
        fn convolution_commutes(
            xs in prop::collection::vec(-2.0f64..2.0, 200),
            ys in prop::collection::vec(-2.0f64..2.0, 200),
        ) {
            let a = CoeffSeq::from_real(&xs, "a");
            let b = CoeffSeq::from_real(&ys, "b");
            let ab = convolve(&a, &b).unwrap();
            let ba = convolve(&b, &a).unwrap();
            prop_assert!(ab.max_abs_diff(&ba).unwrap() < 1e-12);
        }
    }
}
