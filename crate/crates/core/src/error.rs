use thiserror::Error;

use crate::weyl::Reflection;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("0 is not a letter")]
    InvalidLetter(i32),
    #[error("{0:?} is not the window of a signed permutation")]
    NotSignedPermutation(Vec<i32>),
    #[error("reflection {reflection:?} out of range for n = {n}")]
    ReflectionOutOfRange { reflection: Reflection, n: usize },
    #[error("letter {0} appears twice (up to sign) in a column")]
    RepeatedLetter(usize),
    #[error("invalid pair ({i},{j}) for n = {n}; need 1 <= i <= j <= n")]
    InvalidPair { i: usize, j: usize, n: usize },
    #[error("rank must be positive, got {0}")]
    InvalidRank(usize),
    #[error("rank {n} exceeds the cap {cap}")]
    RankTooLarge { n: usize, cap: usize },
    #[error("index k = {k} out of range 1..={n}")]
    InvalidOmegaIndex { k: usize, n: usize },
    #[error("lambda not regular: {0}")]
    NotRegular(String),
    #[error("weight not dominant: {0}")]
    NotDominant(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("more than {cap} admissible pairs; raise the pair cap to continue")]
    TooManyPairs { cap: usize },
    #[error("invalid filling: {0}")]
    InvalidFilling(String),
    #[error("no legal transition: {0}")]
    IllegalTransition(String),
    #[error("non-integral statistic: {0}")]
    NonIntegral(String),
    #[error("inexact Laurent division")]
    InexactDivision,
    #[error("integer coefficient overflow")]
    Overflow,
    #[error("malformed polynomial: {0}")]
    Malformed(String),
}
