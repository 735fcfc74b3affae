//! Coefficient sequences of the lifts: coefficient-square series, their
//! Rankin–Selberg counterparts, correction quotients, the exterior-square
//! product and the cyclic base change.

use std::fmt;

use crate::arith::{is_prime, PrimeSieve};
use crate::characters::{twist, DirichletCharacter};
use crate::dirichlet::{
    convolve, convolve_all, convolve_power, divide, expand_with, local_coeffs, CoeffSeq,
    LocalFactor,
};
use crate::eigenforms::{prime_power_table, Eigenform};
use crate::error::{Error, Result};
use crate::satake::{
    exterior_square_gl4, rankin_selberg_params, satake_from_lambda, sym_power_params,
    tensor_params, ParamSet, SatakePair,
};

/// Imaginary residue tolerated when a sequence is known to be real.
pub const REAL_TOL: f64 = 1e-9;

fn check_m(m: u32) -> Result<()> {
    if !(2..=4).contains(&m) {
        return Err(Error::InvalidArgument(format!("symmetric power m = {m} must be 2, 3 or 4")));
    }
    Ok(())
}

fn check_len(f: &Eigenform, n: usize) -> Result<()> {
    if n == 0 || n > f.len() {
        return Err(Error::InvalidArgument(format!(
            "requested {n} coefficients of {} but {} are available",
            f.form_id(),
            f.len()
        )));
    }
    Ok(())
}

fn check_pair(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<()> {
    check_len(f1, n)?;
    check_len(f2, n)?;
    if f1.form_id() == f2.form_id() {
        return Err(Error::InvalidArgument(format!("the two forms must differ, got {} twice", f1.form_id())));
    }
    Ok(())
}

fn satake(f: &Eigenform, p: u64) -> SatakePair {
    satake_from_lambda(f.lambda(p as usize))
}

/// Sequence built from local parameter sets, checked to be real.
fn from_params(
    n: usize,
    meta: String,
    params: impl Fn(u64) -> ParamSet,
) -> Result<CoeffSeq> {
    expand_with(n, meta, |p, depth| Ok(local_coeffs(p, &params(p), depth)))?.into_real_scaled(REAL_TOL)
}

/// Multiplicative real sequence from `h_j(p)` given by a closure.
fn from_local_values(n: usize, meta: String, h: impl Fn(u64, usize) -> Vec<f64>) -> Result<CoeffSeq> {
    expand_with(n, meta, |p, depth| Ok(LocalFactor::from_real(p, &h(p, depth))))
}

/// `L(s, Sym^m f)`.
pub fn series_sym(f: &Eigenform, m: u32, n: usize) -> Result<CoeffSeq> {
    check_len(f, n)?;
    from_params(n, format!("sym{m}({})", f.form_id()), |p| sym_power_params(&satake(f, p), m))
}

/// `a(n) = lambda(n^m)^2`.
pub fn series_lm(f: &Eigenform, m: u32, n: usize) -> Result<CoeffSeq> {
    check_m(m)?;
    check_len(f, n)?;
    from_local_values(n, format!("L{m}({})", f.form_id()), |p, depth| {
        let t = prime_power_table(f.lambda(p as usize), m as usize * depth);
        (0..=depth).map(|j| t[m as usize * j].powi(2)).collect()
    })
}

/// `L(s, Sym^m f x Sym^m f~)`, degree `(m + 1)^2`.
pub fn series_rs_symm(f: &Eigenform, m: u32, n: usize) -> Result<CoeffSeq> {
    check_m(m)?;
    check_len(f, n)?;
    from_params(n, format!("RS(sym{m}({}))", f.form_id()), |p| {
        let s = sym_power_params(&satake(f, p), m);
        rankin_selberg_params(&s, &s)
    })
}

/// `RS(Sym^i f_a x Sym^j f_b~)` for arbitrary pairs of forms.
pub fn series_rs_sym_pair(f: &Eigenform, mf: u32, g: &Eigenform, mg: u32, n: usize) -> Result<CoeffSeq> {
    check_len(f, n)?;
    check_len(g, n)?;
    from_params(
        n,
        format!("RS(sym{mf}({}), sym{mg}({}))", f.form_id(), g.form_id()),
        |p| rankin_selberg_params(&sym_power_params(&satake(f, p), mf), &sym_power_params(&satake(g, p), mg)),
    )
}

/// `U_m = L_m / RS(Sym^m x Sym^m)`.
pub fn correction_um(f: &Eigenform, m: u32, n: usize) -> Result<CoeffSeq> {
    let u = divide(&series_lm(f, m, n)?, &series_rs_symm(f, m, n)?)?;
    Ok(u.with_meta(format!("U{m}({})", f.form_id())))
}

/// `zeta * Sym^2 * Sym^4`, the factorization of `RS(Sym^2 x Sym^2)`.
pub fn series_zeta_sym2_sym4(f: &Eigenform, n: usize) -> Result<CoeffSeq> {
    let z = CoeffSeq::ones(n);
    let prod = convolve_all(&[&z, &series_sym(f, 2, n)?, &series_sym(f, 4, n)?])?;
    Ok(prod.with_meta(format!("zeta*sym2*sym4({})", f.form_id())))
}

/// `a(n) = lambda_1(n)^2 lambda_2(n^2)^2`.
pub fn series_l12(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<CoeffSeq> {
    check_pair(f1, f2, n)?;
    from_local_values(n, format!("L12({},{})", f1.form_id(), f2.form_id()), |p, depth| {
        let t1 = prime_power_table(f1.lambda(p as usize), depth);
        let t2 = prime_power_table(f2.lambda(p as usize), 2 * depth);
        (0..=depth).map(|j| (t1[j] * t2[2 * j]).powi(2)).collect()
    })
}

/// Rankin–Selberg square of `f1 x Sym^2 f2`, degree 36.
pub fn series_rs12(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<CoeffSeq> {
    check_pair(f1, f2, n)?;
    from_params(n, format!("RS12({},{})", f1.form_id(), f2.form_id()), |p| {
        let t = tensor_params(&satake(f1, p).as_param_set(), &sym_power_params(&satake(f2, p), 2));
        rankin_selberg_params(&t, &t)
    })
}

pub fn correction_v12(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<CoeffSeq> {
    let v = divide(&series_l12(f1, f2, n)?, &series_rs12(f1, f2, n)?)?;
    Ok(v.with_meta(format!("V12({},{})", f1.form_id(), f2.form_id())))
}

/// `a(n) = lambda_1(n)^2 lambda_2(n)^2`.
pub fn series_l11(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<CoeffSeq> {
    check_pair(f1, f2, n)?;
    from_local_values(n, format!("L11({},{})", f1.form_id(), f2.form_id()), |p, depth| {
        let t1 = prime_power_table(f1.lambda(p as usize), depth);
        let t2 = prime_power_table(f2.lambda(p as usize), depth);
        (0..=depth).map(|j| (t1[j] * t2[j]).powi(2)).collect()
    })
}

/// Rankin–Selberg square of `f1 x f2`, degree 16.
pub fn series_rs11(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<CoeffSeq> {
    check_pair(f1, f2, n)?;
    from_params(n, format!("RS11({},{})", f1.form_id(), f2.form_id()), |p| {
        let t = tensor_params(&satake(f1, p).as_param_set(), &satake(f2, p).as_param_set());
        rankin_selberg_params(&t, &t)
    })
}

pub fn correction_v11(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<CoeffSeq> {
    let v = divide(&series_l11(f1, f2, n)?, &series_rs11(f1, f2, n)?)?;
    Ok(v.with_meta(format!("V11({},{})", f1.form_id(), f2.form_id())))
}

/// `a(n) = lambda_i(n^2) conj(lambda_j(n^2))`.
pub fn series_square_pair(fi: &Eigenform, fj: &Eigenform, n: usize) -> Result<CoeffSeq> {
    check_len(fi, n)?;
    check_len(fj, n)?;
    from_local_values(n, format!("L({},{})", fi.form_id(), fj.form_id()), |p, depth| {
        let ti = prime_power_table(fi.lambda(p as usize), 2 * depth);
        let tj = prime_power_table(fj.lambda(p as usize), 2 * depth);
        (0..=depth).map(|k| ti[2 * k] * tj[2 * k]).collect()
    })
}

/// Four-fold convolution of the sequences `lambda_i(n^2) conj(lambda_j(n^2))`,
/// `i, j in {1, 2}`.
pub fn series_wedge(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<CoeffSeq> {
    check_pair(f1, f2, n)?;
    let s11 = series_square_pair(f1, f1, n)?;
    let s12 = series_square_pair(f1, f2, n)?;
    let s21 = series_square_pair(f2, f1, n)?;
    let s22 = series_square_pair(f2, f2, n)?;
    let w = convolve_all(&[&s11, &s12, &s21, &s22])?;
    Ok(w.with_meta(format!("wedge({},{})", f1.form_id(), f2.form_id())))
}

/// Product of the four `RS(Sym^2 f_i x Sym^2 f_j~)`.
pub fn series_wedge_rs_product(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<CoeffSeq> {
    check_pair(f1, f2, n)?;
    let mut factors = Vec::with_capacity(4);
    for fi in [f1, f2] {
        for fj in [f1, f2] {
            factors.push(series_rs_sym_pair(fi, 2, fj, 2, n)?);
        }
    }
    let refs: Vec<&CoeffSeq> = factors.iter().collect();
    Ok(convolve_all(&refs)?.with_meta(format!("RS4({},{})", f1.form_id(), f2.form_id())))
}

/// `RS(wedge^2(f1 x f2) x wedge^2(f1~ x f2~))` from the six exterior-square parameters.
pub fn series_rs_exterior_square(f1: &Eigenform, f2: &Eigenform, n: usize) -> Result<CoeffSeq> {
    check_pair(f1, f2, n)?;
    from_params(n, format!("RS(ext2({},{}))", f1.form_id(), f2.form_id()), |p| {
        let e = exterior_square_gl4(&satake(f1, p), &satake(f2, p));
        rankin_selberg_params(&e, &e)
    })
}

/// The correction `U_{i,j} = L_{i,j} / RS(Sym^2 f_i x Sym^2 f_j~)`.
pub fn correction_uij(fi: &Eigenform, fj: &Eigenform, n: usize) -> Result<CoeffSeq> {
    let u = divide(&series_square_pair(fi, fj, n)?, &series_rs_sym_pair(fi, 2, fj, 2, n)?)?;
    Ok(u.with_meta(format!("U({},{})", fi.form_id(), fj.form_id())))
}

fn check_base_change(f: &Eigenform, ell: u64, chi: &DirichletCharacter, n: usize) -> Result<()> {
    check_len(f, n)?;
    if ell < 3 || !is_prime(ell) {
        return Err(Error::InvalidArgument(format!("degree {ell} must be an odd prime")));
    }
    if chi.modulus() != ell {
        return Err(Error::ModulusMismatch { character: chi.modulus(), expected: ell });
    }
    if chi.is_principal() {
        return Err(Error::TrivialCharacter);
    }
    Ok(())
}

/// `(b_0 * b_1 * ... * b_{l-1})^{*l}` with `b_j(n) = lambda(n)^2 chi^j(n)`.
///
/// `sum lambda(n)^2 chi^j(n) n^{-s}` is `L(s, f x f~ x chi^j) / L(2s, chi^{2j})`, so
/// this sequence differs from [`series_base_change_rs`] from `n = p^2` on and
/// can be negative (the first instance for the discriminant form and `l = 3` is `n = 11^3`).
pub fn series_base_change(f: &Eigenform, ell: u64, chi: &DirichletCharacter, n: usize) -> Result<CoeffSeq> {
    check_base_change(f, ell, chi, n)?;
    let sq = CoeffSeq::from_fn(n, format!("|lambda|^2({})", f.form_id()), |k| f.lambda(k).powi(2));
    let out = base_change_product(&sq, ell, chi)?;
    Ok(out.with_meta(format!("BC{ell}({},chi_{})", f.form_id(), chi.index())))
}

fn base_change_product(a: &CoeffSeq, ell: u64, chi: &DirichletCharacter) -> Result<CoeffSeq> {
    let mut inner = twist(a, chi, 0);
    for j in 1..ell as i64 {
        inner = convolve(&inner, &twist(a, chi, j))?;
    }
    convolve_power(&inner, ell as usize)
}

/// `prod_j L(s, f x f~ x chi^j)^l`: the same convolution pattern as
/// [`series_base_change`] with `lambda(n)^2` replaced by the coefficients of
/// `L(s, f x f~)`.
pub fn series_base_change_rs(f: &Eigenform, ell: u64, chi: &DirichletCharacter, n: usize) -> Result<CoeffSeq> {
    check_base_change(f, ell, chi, n)?;
    let rs = from_params(n, format!("RS({})", f.form_id()), |p| {
        let s = satake(f, p).as_param_set();
        rankin_selberg_params(&s, &s)
    })?;
    let out = base_change_product(&rs, ell, chi)?;
    Ok(out.with_meta(format!("BC{ell}-RS({},chi_{})", f.form_id(), chi.index())))
}

/// Partial Euler products of `prod_p (1 + (|alpha_p|^8 + |beta_p|^8) p^{-sigma})`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentBoundReport {
    pub sigma: f64,
    pub n: usize,
    /// `(x, log prod_{p <= x})` at `x = 2^k` and at `x = n`.
    pub checkpoints: Vec<(usize, f64)>,
    /// `|log P(n) - log P(n / 2)|`.
    pub last_increment: f64,
    /// `max_p |(|alpha_p|^8 + |beta_p|^8) - 2|`, zero under the Deligne bound.
    pub max_term_deviation: f64,
    pub tolerance: f64,
}

impl MomentBoundReport {
    pub fn stabilized(&self) -> bool {
        self.last_increment < self.tolerance
    }
}

pub fn check_sym4_moment_bound(f: &Eigenform, sigma: f64, n: usize) -> Result<MomentBoundReport> {
    check_len(f, n)?;
    if !(sigma > 1.0) {
        return Err(Error::InvalidArgument(format!("sigma = {sigma} must exceed 1")));
    }
    let sieve = PrimeSieve::new(n);
    let mut log_at = vec![0.0; n + 1];
    let mut acc = 0.0;
    let mut deviation: f64 = 0.0;
    let mut primes = sieve.primes().iter().map(|&p| p as usize).peekable();
    for x in 1..=n {
        if primes.peek() == Some(&x) {
            primes.next();
            let s = satake(f, x as u64);
            let moment = s.alpha.norm().powi(8) + s.beta.norm().powi(8);
            deviation = deviation.max((moment - 2.0).abs());
            acc += (moment * (x as f64).powf(-sigma)).ln_1p();
        }
        log_at[x] = acc;
    }
    let mut checkpoints: Vec<(usize, f64)> =
        std::iter::successors(Some(1usize), |&x| x.checked_mul(2).filter(|&y| y <= n))
            .map(|x| (x, log_at[x]))
            .collect();
    if checkpoints.last().map(|c| c.0) != Some(n) {
        checkpoints.push((n, log_at[n]));
    }
    Ok(MomentBoundReport {
        sigma,
        n,
        checkpoints,
        last_increment: (log_at[n] - log_at[n / 2]).abs(),
        max_term_deviation: deviation,
        tolerance: 1e-3,
    })
}

/// Which sequence to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftKind {
    Lm(u32),
    RsSymm(u32),
    Um(u32),
    L12,
    Rs12,
    V12,
    L11,
    Rs11,
    V11,
    Wedge,
    BaseChange { ell: u64, chi_index: u64 },
    BaseChangeRs { ell: u64, chi_index: u64 },
    ZetaSym2Sym4,
}

impl LiftKind {
    pub fn needs_second_form(self) -> bool {
        matches!(
            self,
            LiftKind::L12 | LiftKind::Rs12 | LiftKind::V12 | LiftKind::L11 | LiftKind::Rs11 | LiftKind::V11 | LiftKind::Wedge
        )
    }
}

impl fmt::Display for LiftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftKind::Lm(m) => write!(f, "L{m}"),
            LiftKind::RsSymm(m) => write!(f, "RS{m}"),
            LiftKind::Um(m) => write!(f, "U{m}"),
            LiftKind::L12 => f.write_str("L12"),
            LiftKind::Rs12 => f.write_str("RS12"),
            LiftKind::V12 => f.write_str("V12"),
            LiftKind::L11 => f.write_str("L11"),
            LiftKind::Rs11 => f.write_str("RS11"),
            LiftKind::V11 => f.write_str("V11"),
            LiftKind::Wedge => f.write_str("wedge"),
            LiftKind::BaseChange { ell, chi_index } => write!(f, "basechange(ell={ell},chi={chi_index})"),
            LiftKind::BaseChangeRs { ell, chi_index } => write!(f, "basechange-rs(ell={ell},chi={chi_index})"),
            LiftKind::ZetaSym2Sym4 => f.write_str("zeta-sym2-sym4"),
        }
    }
}

fn character(ell: u64, index: u64) -> Result<DirichletCharacter> {
    let chars = crate::characters::characters_mod(ell)?;
    chars
        .into_iter()
        .nth(index as usize)
        .ok_or_else(|| Error::InvalidArgument(format!("character index {index} out of range mod {ell}")))
}

/// A sequence request: kind, forms and length.
#[derive(Debug, Clone, Copy)]
pub struct LiftSpec<'a> {
    pub kind: LiftKind,
    pub form: &'a Eigenform,
    pub second: Option<&'a Eigenform>,
    pub n: usize,
}

impl LiftSpec<'_> {
    pub fn build(&self) -> Result<CoeffSeq> {
        let second = || {
            self.second
                .ok_or_else(|| Error::InvalidArgument(format!("{} needs a second form", self.kind)))
        };
        let (f, n) = (self.form, self.n);
        match self.kind {
            LiftKind::Lm(m) => series_lm(f, m, n),
            LiftKind::RsSymm(m) => series_rs_symm(f, m, n),
            LiftKind::Um(m) => correction_um(f, m, n),
            LiftKind::L12 => series_l12(f, second()?, n),
            LiftKind::Rs12 => series_rs12(f, second()?, n),
            LiftKind::V12 => correction_v12(f, second()?, n),
            LiftKind::L11 => series_l11(f, second()?, n),
            LiftKind::Rs11 => series_rs11(f, second()?, n),
            LiftKind::V11 => correction_v11(f, second()?, n),
            LiftKind::Wedge => series_wedge(f, second()?, n),
            LiftKind::BaseChange { ell, chi_index } => series_base_change(f, ell, &character(ell, chi_index)?, n),
            LiftKind::BaseChangeRs { ell, chi_index } => {
                series_base_change_rs(f, ell, &character(ell, chi_index)?, n)
            }
            LiftKind::ZetaSym2Sym4 => series_zeta_sym2_sym4(f, n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::characters_mod;
    use crate::dirichlet::evaluate_partial;
    use crate::eigenforms::{build_weight16, normalize, sieve_delta};
    use std::sync::OnceLock;

    const N: usize = 4000;

    fn delta() -> &'static Eigenform {
        static F: OnceLock<Eigenform> = OnceLock::new();
        F.get_or_init(|| normalize(&sieve_delta(N).unwrap()))
    }

    fn e4delta() -> &'static Eigenform {
        static F: OnceLock<Eigenform> = OnceLock::new();
        F.get_or_init(|| normalize(&build_weight16(N).unwrap()))
    }

    fn primes(n: usize) -> Vec<usize> {
        PrimeSieve::new(n).primes().iter().map(|&p| p as usize).collect()
    }

    #[test]
    fn lm_examples() {
        let f = delta();
        let l2 = series_lm(f, 2, N).unwrap();
        assert_eq!(l2.re(1), 1.0);
        assert!((l2.re(2) - 0.5166015625).abs() < 1e-12);
        assert!((l2.re(6) - l2.re(2) * l2.re(3)).abs() < 1e-12);
        assert!(series_lm(f, 5, N).is_err());
        assert!(series_lm(f, 2, N + 1).is_err());
    }

    #[test]
    fn lm_matches_direct_squares() {
        let f = delta();
        let l2 = series_lm(f, 2, 60).unwrap();
        for n in 1..=60 {
            assert!((l2.re(n) - f.lambda(n * n).powi(2)).abs() < 1e-9);
        }
    }

    #[test]
    fn rs_symm_prime_coefficients() {
        let f = delta();
        for m in 2..=4 {
            let rs = series_rs_symm(f, m, N).unwrap();
            let lm = series_lm(f, m, N).unwrap();
            for p in primes(N) {
                assert!((rs.re(p) - lm.re(p)).abs() < 1e-9, "m={m} p={p}");
            }
        }
    }

    #[test]
    fn rs_symm_two_factors() {
        for f in [delta(), e4delta()] {
            let a = series_rs_symm(f, 2, N).unwrap();
            let b = series_zeta_sym2_sym4(f, N).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() < 1e-8);
        }
    }

    #[test]
    fn corrections_vanish_at_primes() {
        let (f, g) = (delta(), e4delta());
        let seqs = [
            correction_um(f, 2, N).unwrap(),
            correction_um(f, 3, N).unwrap(),
            correction_um(f, 4, N).unwrap(),
            correction_v12(f, g, N).unwrap(),
            correction_v12(g, f, N).unwrap(),
            correction_v11(f, g, N).unwrap(),
        ];
        for u in &seqs {
            assert_eq!(u.re(1), 1.0, "{}", u.meta());
            for p in primes(1000) {
                assert!(u.re(p).abs() < 1e-9, "{} at {p}: {}", u.meta(), u.re(p));
            }
        }
        // but not at prime squares
        assert!(seqs[0].re(4).abs() > 1e-3);
    }

    #[test]
    fn correction_tail_decays() {
        let f = normalize(&sieve_delta(100_000).unwrap());
        let runs: Vec<_> = [1_000, 10_000, 100_000]
            .iter()
            .map(|&n| evaluate_partial(&correction_um(&f, 2, n).unwrap(), 1.0).unwrap())
            .collect();
        assert!(runs[0].tail > runs[1].tail && runs[1].tail > runs[2].tail);
        assert!(runs[2].tail < 1e-2);
        assert!((runs[2].value.re - runs[1].value.re).abs() < 1e-3);
        // the local factor of U_2 is a polynomial of degree 8 in p^{-s}
        let u = correction_um(&f, 2, 100_000).unwrap();
        for k in 9..=16 {
            assert!(u.re(1 << k).abs() < 1e-9);
        }
    }

    #[test]
    fn two_form_prime_identities() {
        let (f, g) = (delta(), e4delta());
        let l12 = series_l12(f, g, N).unwrap();
        let rs12 = series_rs12(f, g, N).unwrap();
        let l11 = series_l11(f, g, N).unwrap();
        let rs11 = series_rs11(f, g, N).unwrap();
        for p in primes(N) {
            let direct12 = (f.lambda(p) * prime_power_table(g.lambda(p), 2)[2]).powi(2);
            assert!((direct12 - rs12.re(p)).abs() < 1e-9);
            assert!((l12.re(p) - rs12.re(p)).abs() < 1e-9);
            let direct11 = (f.lambda(p) * g.lambda(p)).powi(2);
            assert!((direct11 - rs11.re(p)).abs() < 1e-9);
            assert!((l11.re(p) - rs11.re(p)).abs() < 1e-9);
        }
        assert!(series_l11(f, f, N).is_err());
    }

    #[test]
    fn wedge_identities() {
        let (f, g) = (delta(), e4delta());
        let n = 2000;
        let w = series_wedge(f, g, n).unwrap();
        assert_eq!(w.re(1), 1.0);
        let g2 = |h: &Eigenform, p: usize| h.lambda(p).powi(2) - 1.0;
        let rs4 = series_wedge_rs_product(f, g, n).unwrap();
        let ext = series_rs_exterior_square(f, g, n).unwrap();
        assert!(rs4.max_abs_diff(&ext).unwrap() < 1e-8);
        for p in primes(n) {
            let expected = (g2(f, p) + g2(g, p)).powi(2);
            assert!((w.re(p) - expected).abs() < 1e-9, "p={p}");
            assert!((rs4.re(p) - expected).abs() < 1e-9);
        }
        let u: Vec<CoeffSeq> = [(f, f), (f, g), (g, f), (g, g)]
            .iter()
            .map(|(a, b)| correction_uij(a, b, n).unwrap())
            .collect();
        let rebuilt = convolve_all(&[&rs4, &u[0], &u[1], &u[2], &u[3]]).unwrap();
        assert!(rebuilt.max_abs_diff(&w).unwrap() < 1e-8);
        // the correction product is not trivial at p^2
        assert!((w.re(4) - rs4.re(4)).abs() > 1e-3);
    }

    #[test]
    fn base_change_examples() {
        let f = delta();
        let n = 3000;
        let chi3 = &characters_mod(3).unwrap()[1];
        let bc = series_base_change(f, 3, chi3, n).unwrap();
        assert_eq!(bc.get(1).re, 1.0);
        assert!(bc.max_imag() <= 1e-9);
        let rs = series_base_change_rs(f, 3, chi3, n).unwrap();
        for k in 1..=n {
            assert!(rs.re(k) >= -1e-9, "n={k}");
        }
        for p in primes(n) {
            assert!((bc.re(p) - rs.re(p)).abs() < 1e-9);
            if p % 3 == 1 {
                assert!((bc.re(p) - 9.0 * f.lambda(p).powi(2)).abs() < 1e-9);
            }
        }
        let chi5 = &characters_mod(5).unwrap()[1];
        let bc5 = series_base_change(f, 5, chi5, n).unwrap();
        assert!(bc5.max_imag() < 1e-8);
        let rs5 = series_base_change_rs(f, 5, chi5, n).unwrap();
        assert!((1..=n).all(|k| rs5.re(k) >= -1e-8));

        assert!(matches!(series_base_change(f, 5, chi3, n), Err(Error::ModulusMismatch { .. })));
        let principal = &characters_mod(3).unwrap()[0];
        assert!(matches!(series_base_change(f, 3, principal, n), Err(Error::TrivialCharacter)));
        assert!(series_base_change(f, 9, chi3, n).is_err());
    }

    // Local series at p = 11 (chi(11) = -1): [B(t)^2 B(-t)]^3 with
    // B(t) = sum_k lambda(11^k)^2 t^k, multiplied out as polynomials.
    #[test]
    fn literal_base_change_is_negative_at_eleven_cubed() {
        let f = delta();
        let t = prime_power_table(f.lambda(11), 3);
        let b: Vec<f64> = t.iter().map(|x| x * x).collect();
        let b_neg: Vec<f64> = b.iter().enumerate().map(|(k, x)| if k % 2 == 1 { -x } else { *x }).collect();
        let mul = |x: &[f64], y: &[f64]| {
            let mut z = vec![0.0; 4];
            for i in 0..4 {
                for j in 0..4 - i {
                    z[i + j] += x[i] * y[j];
                }
            }
            z
        };
        let inner = mul(&mul(&b, &b), &b_neg);
        let cube = mul(&mul(&inner, &inner), &inner);
        let chi3 = &characters_mod(3).unwrap()[1];
        let bc = series_base_change(f, 3, chi3, 1331).unwrap();
        assert!((bc.re(1331) - cube[3]).abs() < 1e-9);
        assert!(cube[3] < -1.0);
        assert!(series_base_change_rs(f, 3, chi3, 1331).unwrap().re(1331) > 0.0);
    }

    #[test]
    fn moment_bound_examples() {
        let f = delta();
        let r = check_sym4_moment_bound(f, 2.0, N).unwrap();
        assert!(r.max_term_deviation < 1e-9);
        assert!(r.stabilized());
        let expected: f64 = primes(N).iter().map(|&p| (2.0 / (p as f64).powi(2)).ln_1p()).sum();
        assert!((r.checkpoints.last().unwrap().1 - expected).abs() < 1e-12);
        assert!(check_sym4_moment_bound(f, 1.0, N).is_err());
    }

    #[test]
    fn spec_dispatch() {
        let spec = LiftSpec { kind: LiftKind::Wedge, form: delta(), second: None, n: 100 };
        assert!(spec.build().is_err());
        let spec = LiftSpec { kind: LiftKind::Wedge, form: delta(), second: Some(e4delta()), n: 100 };
        assert_eq!(spec.build().unwrap().len(), 100);
        let spec = LiftSpec { kind: LiftKind::BaseChange { ell: 3, chi_index: 1 }, form: delta(), second: None, n: 50 };
        assert!(spec.build().is_ok());
    }
}
