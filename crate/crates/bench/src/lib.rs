//! Fixtures shared by the engine benchmarks.

use functoria::{normalize, CoeffSeq, FormId, LiftKind, LiftSpec, Result};

/// Normalized Ramanujan coefficients `lambda(1..=n)` as a real sequence.
pub fn delta_lambda(n: usize) -> Result<CoeffSeq> {
    let form = normalize(&FormId::Delta12.sieve(n)?);
    Ok(CoeffSeq::from_real(form.lambdas(), "lambda(delta12)"))
}

/// Symmetric-square coefficients of the discriminant form.
pub fn delta_sym2(n: usize) -> Result<CoeffSeq> {
    let form = normalize(&FormId::Delta12.sieve(n)?);
    LiftSpec { kind: LiftKind::Lm(2), form: &form, second: None, n }.build()
}
