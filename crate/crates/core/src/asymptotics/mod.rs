//! Partial sums of coefficient sequences, main-term fits and error exponents.

mod exponents;

pub use exponents::{landau_exponent, perron_balance, ExponentResult, PerronBalance};

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::dirichlet::CoeffSeq;
use crate::error::{Error, Result};

/// Running sums `S(x) = sum_{n <= x} Re a(n)` at increasing checkpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSumSeries {
    pub checkpoints: Vec<usize>,
    pub sums: Vec<f64>,
}

impl PartialSumSeries {
    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    /// Multiplies every sum by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self { checkpoints: self.checkpoints.clone(), sums: self.sums.iter().map(|s| s * c).collect() }
    }

    fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self { checkpoints: self.checkpoints[range.clone()].to_vec(), sums: self.sums[range].to_vec() }
    }
}

/// `lo, 2 lo, 4 lo, ...` up to `hi`, with `hi` appended if it is not a power-of-two multiple of `lo`.
pub fn dyadic_checkpoints(lo: usize, hi: usize) -> Vec<usize> {
    let mut out: Vec<usize> =
        std::iter::successors(Some(lo.max(1)), |&x| x.checked_mul(2).filter(|&y| y <= hi)).collect();
    if out.last() != Some(&hi) && hi > lo {
        out.push(hi);
    }
    out
}

/// Neumaier-compensated running sums of the real parts.
pub fn partial_sums(a: &CoeffSeq, checkpoints: &[usize]) -> Result<PartialSumSeries> {
    if checkpoints.is_empty() {
        return Err(Error::InvalidArgument("no checkpoints".into()));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) || checkpoints[0] == 0 {
        return Err(Error::InvalidArgument("checkpoints must be positive and strictly increasing".into()));
    }
    let last = *checkpoints.last().unwrap();
    if last > a.len() {
        return Err(Error::InvalidArgument(format!("checkpoint {last} exceeds series length {}", a.len())));
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut sums = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    for n in 1..=last {
        let x = a.re(n);
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
        if next.peek() == Some(&&n) {
            next.next();
            sums.push(sum + comp);
        }
    }
    Ok(PartialSumSeries { checkpoints: checkpoints.to_vec(), sums })
}

/// Main-term models for `S(x) / x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// `c`
    Cx,
    /// `c_1 log x + c_0`
    CxLogx,
    /// `c_d log^d x + ... + c_0`
    XPoly(u32),
}

impl Model {
    pub fn dimension(self) -> usize {
        match self {
            Model::Cx => 1,
            Model::CxLogx => 2,
            Model::XPoly(d) => d as usize + 1,
        }
    }

    // Basis values at x, highest log power first.
    fn basis(self, x: f64) -> Vec<f64> {
        let d = self.dimension() - 1;
        let l = x.ln();
        (0..=d).rev().map(|k| l.powi(k as i32)).collect()
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Cx => f.write_str("cx"),
            Model::CxLogx => f.write_str("cxlogx"),
            Model::XPoly(d) => write!(f, "xpoly{d}"),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cx" => Ok(Model::Cx),
            "cxlogx" => Ok(Model::CxLogx),
            _ => s
                .strip_prefix("xpoly")
                .and_then(|d| d.parse().ok())
                .map(Model::XPoly)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown model {s:?} (cx, cxlogx, xpoly<d>)"))),
        }
    }
}

/// Least-squares fit of `S(x) / x` with half-range stability.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub model: Model,
    /// Highest log power first.
    pub coefficients: Vec<f64>,
    /// `S(x)/x - model(x)` at each checkpoint.
    pub residuals: Vec<f64>,
    pub residual_norm: f64,
    /// `|c(upper half) - c(lower half)| / |c|` per coefficient.
    pub coefficient_drift: Vec<f64>,
    /// Drift of the leading coefficient.
    pub half_range_drift: f64,
}

impl FitResult {
    /// `x * model(x)`.
    pub fn main(&self, x: f64) -> f64 {
        x * self.model.basis(x).iter().zip(&self.coefficients).map(|(b, c)| b * c).sum::<f64>()
    }
}

fn least_squares(s: &PartialSumSeries, model: Model) -> Result<Vec<f64>> {
    let dim = model.dimension();
    let rows = s.len();
    let a = DMatrix::from_fn(rows, dim, |i, j| model.basis(s.checkpoints[i] as f64)[j]);
    let b = DVector::from_fn(rows, |i, _| s.sums[i] / s.checkpoints[i] as f64);
    let svd = a.svd(true, true);
    let sv = &svd.singular_values;
    let (max, min) = (sv.max(), sv.min());
    if !(min > max * 1e-12) {
        return Err(Error::RankDeficient);
    }
    let x = svd.solve(&b, 0.0).map_err(|_| Error::RankDeficient)?;
    Ok(x.iter().copied().collect())
}

pub fn fit_main(s: &PartialSumSeries, model: Model) -> Result<FitResult> {
    let dim = model.dimension();
    if s.len() < 2 * dim {
        return Err(Error::RankDeficient);
    }
    let coefficients = least_squares(s, model)?;
    let residuals: Vec<f64> = s
        .checkpoints
        .iter()
        .zip(&s.sums)
        .map(|(&x, &sum)| {
            let x = x as f64;
            sum / x - model.basis(x).iter().zip(&coefficients).map(|(b, c)| b * c).sum::<f64>()
        })
        .collect();
    let residual_norm = residuals.iter().map(|r| r * r).sum::<f64>().sqrt();

    let half = s.len().div_ceil(2);
    let lower = least_squares(&s.slice(0..half), model)?;
    let upper = least_squares(&s.slice(s.len() - half..s.len()), model)?;
    let coefficient_drift: Vec<f64> = (0..dim)
        .map(|i| {
            let scale = coefficients[i].abs();
            let diff = (upper[i] - lower[i]).abs();
            if scale > 0.0 {
                diff / scale
            } else if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        })
        .collect();
    Ok(FitResult {
        model,
        half_range_drift: coefficient_drift[0],
        coefficients,
        residuals,
        residual_norm,
        coefficient_drift,
    })
}

/// Slope of `log |S(x) - main(x)|` against `log x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorExponent {
    pub exponent: f64,
    pub points_used: usize,
    /// Set when fewer than two residuals are distinguishable from zero.
    pub degenerate: bool,
}

pub fn error_exponent(s: &PartialSumSeries, main: impl Fn(f64) -> f64) -> Result<ErrorExponent> {
    if s.len() < 8 {
        return Err(Error::InvalidArgument(format!("{} checkpoints given, at least 8 needed", s.len())));
    }
    let points: Vec<(f64, f64)> = s
        .checkpoints
        .iter()
        .zip(&s.sums)
        .filter_map(|(&x, &sum)| {
            let x = x as f64;
            let m = main(x);
            let r = (sum - m).abs();
            (r >= 1e-12 * m.abs() && r > 0.0).then(|| (x.ln(), r.ln()))
        })
        .collect();
    if points.len() < 2 {
        return Ok(ErrorExponent { exponent: 0.0, points_used: points.len(), degenerate: true });
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(ErrorExponent { exponent: sxy / sxx, points_used: points.len(), degenerate: false })
}

/// Machine-readable summary of a fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub model: String,
    pub coefficients: Vec<f64>,
    pub residual_norm: f64,
    pub half_range_drift: f64,
    pub error_exponent: Option<f64>,
}

impl FitReport {
    pub fn new(fit: &FitResult, exponent: Option<&ErrorExponent>) -> Self {
        Self {
            model: fit.model.to_string(),
            coefficients: fit.coefficients.clone(),
            residual_norm: fit.residual_norm,
            half_range_drift: fit.half_range_drift,
            error_exponent: exponent.filter(|e| !e.degenerate).map(|e| e.exponent),
        }
    }
}
