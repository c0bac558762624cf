use thiserror::Error;

use crate::zf::{Incomplete, Key};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("child table does not match the key space")]
    DomainMismatch,
    #[error("key {0} is not in the index space")]
    KeyOutOfRange(Key),
    #[error("set admits no ordered-pair reading")]
    NotAPair,
    #[error("{0} over an infinite index is not supported")]
    InfiniteUnsupported(String),
    #[error("equality undecided within budget (fuel {fuel}, nat bound {nat_bound})")]
    UndecidedEquality { fuel: u64, nat_bound: u64 },
    #[error("ill-formed code: {0}")]
    IllFormedCode(String),
    #[error("construction too large: {0}")]
    TooLarge(String),
    #[error("sets are not equal: {0}")]
    NotEqual(String),
    #[error("premise fails: {0}")]
    PremiseFails(String),
    #[error("scope error: {0}")]
    Scope(String),
}

impl Error {
    pub fn undecided(i: Incomplete) -> Error {
        Error::UndecidedEquality {
            fuel: i.fuel,
            nat_bound: i.nat_bound,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
