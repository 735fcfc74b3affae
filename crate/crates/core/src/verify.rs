//! Verification suites over the two level-one forms.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{gcd, PrimeSieve};
use crate::characters::characters_mod;
use crate::dirichlet::{convolve, convolve_all, CoeffSeq};
use crate::eigenforms::{normalize, Eigenform, FormId, QExpansion};
use crate::error::{Error, Result};
use crate::lifts::{
    correction_uij, correction_um, correction_v11, correction_v12, series_base_change,
    series_base_change_rs, series_l11, series_l12, series_lm, series_rs11, series_rs12,
    series_rs_exterior_square, series_rs_symm, series_wedge, series_wedge_rs_product,
    series_zeta_sym2_sym4,
};

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub max_abs_error: f64,
    pub pass: bool,
}

impl CheckReport {
    pub fn within(check: impl Into<String>, n: usize, max_abs_error: f64, tol: f64) -> Self {
        Self { check: check.into(), n, max_abs_error, pass: max_abs_error <= tol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Hecke,
    Deligne,
    Corrections,
    DualRoute,
    BaseChange,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Hecke, Suite::Deligne, Suite::Corrections, Suite::DualRoute, Suite::BaseChange];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Hecke => "hecke",
            Suite::Deligne => "deligne",
            Suite::Corrections => "corrections",
            Suite::DualRoute => "dual-route",
            Suite::BaseChange => "basechange",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hecke" => Ok(Suite::Hecke),
            "deligne" => Ok(Suite::Deligne),
            "corrections" => Ok(Suite::Corrections),
            "dual-route" => Ok(Suite::DualRoute),
            "basechange" => Ok(Suite::BaseChange),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        }
    }
}

/// Exact and normalized coefficients of the discriminant form and `E_4 Delta`.
#[derive(Debug, Clone)]
pub struct FormSet {
    pub delta_q: QExpansion,
    pub e4delta_q: QExpansion,
    pub delta: Eigenform,
    pub e4delta: Eigenform,
}

impl FormSet {
    pub fn sieve(n: usize) -> Result<Self> {
        Self::from_expansions(FormId::Delta12.sieve(n)?, FormId::E4Delta16.sieve(n)?)
    }

    pub fn from_expansions(delta_q: QExpansion, e4delta_q: QExpansion) -> Result<Self> {
        if delta_q.form_id() != FormId::Delta12 || e4delta_q.form_id() != FormId::E4Delta16 {
            return Err(Error::InvalidArgument("expected delta12 and e4delta16 expansions".into()));
        }
        let delta = normalize(&delta_q);
        let e4delta = normalize(&e4delta_q);
        Ok(Self { delta_q, e4delta_q, delta, e4delta })
    }

    /// Length available from both forms.
    pub fn len(&self) -> usize {
        self.delta.len().min(self.e4delta.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, id: FormId) -> &Eigenform {
        match id {
            FormId::Delta12 => &self.delta,
            FormId::E4Delta16 => &self.e4delta,
        }
    }
}

/// Tolerance for prime-level vanishing and realness.
pub const PRIME_TOL: f64 = 1e-9;
/// Tolerance for coefficient-wise route agreement.
pub const ROUTE_TOL: f64 = 1e-8;

fn primes_upto(n: usize) -> Vec<usize> {
    PrimeSieve::new(n).primes().iter().map(|&p| p as usize).collect()
}

fn max_at_primes(a: &CoeffSeq, n: usize) -> f64 {
    primes_upto(n).into_iter().map(|p| a.get(p).norm()).fold(0.0, f64::max)
}

pub fn hecke_checks(forms: &FormSet, n: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for q in [&forms.delta_q, &forms.e4delta_q] {
        let r = q.verify_hecke();
        let len = q.len().min(n);
        if len < n {
            return Err(Error::InvalidArgument(format!("{} has {} coefficients, {n} requested", q.form_id(), q.len())));
        }
        out.push(CheckReport { check: format!("hecke/{}", q.form_id()), n: len, max_abs_error: r.max_abs_error, pass: r.passed() });
    }
    Ok(out)
}

pub fn deligne_checks(forms: &FormSet, n: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for f in [&forms.delta, &forms.e4delta] {
        let excess = primes_upto(n).into_iter().map(|p| f.lambda(p).abs() - 2.0).fold(0.0, f64::max);
        out.push(CheckReport::within(format!("deligne/{}", f.form_id()), n, excess, PRIME_TOL));
    }
    Ok(out)
}

pub fn correction_checks(forms: &FormSet, n: usize) -> Result<Vec<CheckReport>> {
    let (f, g) = (&forms.delta, &forms.e4delta);
    let mut out = Vec::new();
    for h in [f, g] {
        for m in 2..=4 {
            let u = correction_um(h, m, n)?;
            let err = max_at_primes(&u, n).max((u.re(1) - 1.0).abs());
            out.push(CheckReport::within(format!("corrections/u{m}(p)/{}", h.form_id()), n, err, PRIME_TOL));
        }
    }
    for (a, b) in [(f, g), (g, f)] {
        let v = correction_v12(a, b, n)?;
        out.push(CheckReport::within(
            format!("corrections/v12(p)/{},{}", a.form_id(), b.form_id()),
            n,
            max_at_primes(&v, n).max((v.re(1) - 1.0).abs()),
            PRIME_TOL,
        ));
    }
    let v = correction_v11(f, g, n)?;
    out.push(CheckReport::within(
        "corrections/v11(p)/delta12,e4delta16",
        n,
        max_at_primes(&v, n).max((v.re(1) - 1.0).abs()),
        PRIME_TOL,
    ));
    Ok(out)
}

/// The literal identity "four-fold convolution = product of the four RS series",
/// which holds at `n = 1` and at primes only.
pub fn wedge_literal_check(forms: &FormSet, n: usize) -> Result<CheckReport> {
    let w = series_wedge(&forms.delta, &forms.e4delta, n)?;
    let rs4 = series_wedge_rs_product(&forms.delta, &forms.e4delta, n)?;
    Ok(CheckReport::within("dual-route/wedge=rs-product", n, w.max_abs_diff(&rs4)?, ROUTE_TOL))
}

pub fn dual_route_checks(forms: &FormSet, n: usize) -> Result<Vec<CheckReport>> {
    let (f, g) = (&forms.delta, &forms.e4delta);
    let mut out = Vec::new();
    for h in [f, g] {
        let a = series_rs_symm(h, 2, n)?;
        let b = series_zeta_sym2_sym4(h, n)?;
        out.push(CheckReport::within(format!("dual-route/rs2=zeta*sym2*sym4/{}", h.form_id()), n, a.max_abs_diff(&b)?, ROUTE_TOL));
    }
    for h in [f, g] {
        for m in 2..=4 {
            let rs = series_rs_symm(h, m, n)?;
            let rebuilt = convolve(&rs, &correction_um(h, m, n)?)?;
            let lm = series_lm(h, m, n)?;
            out.push(CheckReport::within(format!("dual-route/rs{m}*u{m}=l{m}/{}", h.form_id()), n, rebuilt.max_abs_diff(&lm)?, ROUTE_TOL));
        }
    }
    let rebuilt = convolve(&series_rs12(f, g, n)?, &correction_v12(f, g, n)?)?;
    out.push(CheckReport::within("dual-route/rs12*v12=l12", n, rebuilt.max_abs_diff(&series_l12(f, g, n)?)?, ROUTE_TOL));
    let rebuilt = convolve(&series_rs11(f, g, n)?, &correction_v11(f, g, n)?)?;
    out.push(CheckReport::within("dual-route/rs11*v11=l11", n, rebuilt.max_abs_diff(&series_l11(f, g, n)?)?, ROUTE_TOL));

    let wedge = series_wedge(f, g, n)?;
    let rs4 = series_wedge_rs_product(f, g, n)?;
    let ext = series_rs_exterior_square(f, g, n)?;
    // both sides are degree-36 Euler products with coefficients of size ~1e8
    // near n = 1e5, so this comparison is relative
    out.push(CheckReport::within("dual-route/rs-ext2=rs-product(relative)", n, ext.max_rel_diff(&rs4)?, ROUTE_TOL));
    let u: Vec<CoeffSeq> = [(f, f), (f, g), (g, f), (g, g)]
        .iter()
        .map(|(a, b)| correction_uij(a, b, n))
        .collect::<Result<_>>()?;
    let rebuilt = convolve_all(&[&rs4, &u[0], &u[1], &u[2], &u[3]])?;
    out.push(CheckReport::within("dual-route/wedge=rs-product*u", n, rebuilt.max_abs_diff(&wedge)?, ROUTE_TOL));
    out.push(CheckReport::within(
        "dual-route/wedge=rs-product(primes)",
        n,
        wedge.max_abs_diff_at(&rs4, std::iter::once(1).chain(primes_upto(n))),
        ROUTE_TOL,
    ));
    Ok(out)
}

/// Worst relative defect of `a(mn) = a(m) a(n)` over coprime `m, n` with `mn <= N`, `m, n > 1`.
pub fn multiplicativity_defect(a: &CoeffSeq) -> f64 {
    let n = a.len();
    let mut worst = 0.0f64;
    for m in 2..=n / 2 {
        for k in 2..=n / m {
            if k < m || gcd(m as u64, k as u64) != 1 {
                continue;
            }
            let prod = a.get(m) * a.get(k);
            let scale = prod.norm().max(a.get(m * k).norm()).max(1.0);
            worst = worst.max((a.get(m * k) - prod).norm() / scale);
        }
    }
    worst
}

/// Worst negative part `max(0, -Re a(n))` together with the imaginary residue.
pub fn negativity(a: &CoeffSeq) -> (f64, f64) {
    let neg = (1..=a.len()).map(|k| (-a.re(k)).max(0.0)).fold(0.0, f64::max);
    (neg, a.max_imag())
}

pub fn base_change_checks(forms: &FormSet, n: usize) -> Result<Vec<CheckReport>> {
    let f = &forms.delta;
    let mut out = Vec::new();
    for (ell, tol) in [(3u64, PRIME_TOL), (5, ROUTE_TOL)] {
        let chi = &characters_mod(ell)?[1];
        let literal = series_base_change(f, ell, chi, n)?;
        let rs = series_base_change_rs(f, ell, chi, n)?;
        out.push(CheckReport::within(format!("basechange/l={ell}/literal-real"), n, literal.max_imag(), tol));
        let (neg, imag) = negativity(&rs);
        out.push(CheckReport::within(format!("basechange/l={ell}/rs-real-nonnegative"), n, neg.max(imag), tol));
        out.push(CheckReport::within(
            format!("basechange/l={ell}/literal=rs(primes)"),
            n,
            literal.max_abs_diff_at(&rs, std::iter::once(1).chain(primes_upto(n))),
            tol,
        ));
        out.push(CheckReport::within(format!("basechange/l={ell}/rs-multiplicative"), n, multiplicativity_defect(&rs), ROUTE_TOL));
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, forms: &FormSet, n: usize) -> Result<Vec<CheckReport>> {
    if n == 0 || n > forms.len() {
        return Err(Error::InvalidArgument(format!("N = {n} outside 1..={}", forms.len())));
    }
    match suite {
        Suite::Hecke => hecke_checks(forms, n),
        Suite::Deligne => deligne_checks(forms, n),
        Suite::Corrections => correction_checks(forms, n),
        Suite::DualRoute => dual_route_checks(forms, n),
        Suite::BaseChange => base_change_checks(forms, n),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::ALL {
                out.extend(run_suite(s, forms, n)?);
            }
            Ok(out)
        }
    }
}
