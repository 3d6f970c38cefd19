//! Nilpotency series, star-central elements, right-nilpotency certificates
//! and the identity checks around the order-`p^4` nilpotency theorem.

mod bound;
mod certificate;
mod identities;
mod series;
mod theorem;

pub use bound::{pa_bound_check, PaBoundReport};
pub use certificate::{
    annihilator_certificate, certificate_candidates, certify_right_nilpotent, Certificate,
    CertifyStep, RightNilpotencyVerdict,
};
pub use identities::{
    find_g4_generators, identity_suite, Scope, Stage, StageResult, StageStatus, SuiteReport,
    TheoremFocus, Witness,
};
pub use series::{
    center_star, left_fifth_term_vanishes, series, SeriesKind, SeriesResult, SeriesSummary,
};
pub use theorem::{theorem1_check, Hypothesis, Theorem1Input, Theorem1Report};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NilpotencyError {
    #[error("order {order} is not a prime power")]
    NotPrimePower { order: usize },
    #[error("certificate recursion says {certificate}, right series says {series}")]
    ConsistencyFailure { certificate: bool, series: bool },
    #[error("input shape mismatch: {0}")]
    InputShapeMismatch(String),
    #[error("precondition mismatch: {0}")]
    PreconditionMismatch(String),
}

/// `n(n-1)/2`, exact for every integer `n`.
pub(crate) fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `(n-2)(n-1)n/6`, exact for every integer `n`.
pub(crate) fn c1(n: i64) -> i64 {
    (n - 2) * (n - 1) * n / 6
}
