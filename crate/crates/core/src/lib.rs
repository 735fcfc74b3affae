//! Coefficient engine for symmetric-power and Rankin–Selberg lifts of level-one
//! Hecke eigenforms.
//!
//! Exact q-expansions of the discriminant form and of `E_4 Delta` are sieved
//! with a multimodular NTT, normalized, lifted through their Satake parameters
//! into truncated Dirichlet series, and compared against direct coefficient
//! formulas. Partial sums of the resulting series are fitted against
//! `x P(log x)` main terms.

pub mod arith;
pub mod asymptotics;
pub mod characters;
pub mod dirichlet;
pub mod eigenforms;
pub mod error;
pub mod lifts;
pub mod ntt;
pub mod satake;
pub mod verify;

pub use asymptotics::{
    error_exponent, fit_main, landau_exponent, partial_sums, perron_balance, ErrorExponent,
    ExponentResult, FitReport, FitResult, Model, PartialSumSeries, PerronBalance,
};
pub use characters::{characters_mod, twist, DirichletCharacter};
pub use dirichlet::{
    convolve, divide, evaluate_partial, expand_multiplicative, local_coeffs, CoeffSeq, LocalFactor,
};
pub use eigenforms::{
    build_weight16, normalize, read_cache, sieve_delta, write_cache, Eigenform, FormId, QExpansion,
};
pub use error::{Error, Result};
pub use lifts::{LiftKind, LiftSpec};
pub use satake::{ParamLabel, ParamSet, SatakePair};
pub use verify::{run_suite, CheckReport, FormSet, Suite};
