//! Brute-force finite model search for tiny, nominal-free knowledge bases.
//! Used only to cross-check the tableau reasoner.

pub mod agreement;
mod enumerate;
mod eval;
mod generate;

use thiserror::Error;

pub use enumerate::{bound_for, enumerate_models, oracle_consistent, oracle_satisfiable, search_cost, Verdict, MAX_DOMAIN};
pub use eval::{extension, holds, satisfies};
pub use generate::{random_concept, random_concept_with, random_kb, GeneratorConfig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("nominals are outside the oracle fragment")]
    Nominal,
    #[error("data assertions are outside the oracle fragment")]
    DataAssertion,
    #[error("domain size {0} exceeds the supported maximum")]
    DomainTooLarge(usize),
}
