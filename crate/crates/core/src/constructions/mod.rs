//! Brace constructions: named families, nilpotent rings, exhaustive
//! enumeration on a fixed additive group and a built-in corpus.

mod auts;
mod corpus;
mod enumerate;
mod families;
mod holomorph;

use thiserror::Error;

use crate::abelian::AbelianError;
use crate::brace::BraceError;

pub use corpus::{builtin_corpus, CorpusEntry, ENUMERATED_MODULI};
pub use enumerate::{enumerate_braces, EnumOptions, EnumStats, EnumerationResult};
pub use families::{
    diagonal_brace_m1, diagonal_brace_m2, ring_brace, ring_examples, trivial_brace,
    ConstructionSpec, RingProduct, RingSpec,
};
pub use holomorph::{holomorph_count_oracle, HolomorphCount};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("product e{i}*e{j} is not killed by both moduli")]
    NotDistributive { i: usize, j: usize },
    #[error("ring product is not associative on (e{i}, e{j}, e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("ring is not nilpotent")]
    NotNilpotent,
    #[error("enumeration guard: order {order} (max {max_order}), |Aut| = {aut_count} (max {max_aut}); pass force to override")]
    GuardExceeded {
        order: usize,
        max_order: usize,
        aut_count: usize,
        max_aut: usize,
    },
    #[error("enumeration cross-check failed: {0}")]
    Inconsistent(String),
}
