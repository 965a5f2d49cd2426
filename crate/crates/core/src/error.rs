use alloc::string::String;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}, expected p/q or p")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("q must be a positive rational, got {0}")]
    InvalidQ(Rational),
    #[error("q-binomial index k={k} out of range for n={n}")]
    BinomialRange { n: usize, k: usize },
    #[error("series with zero constant term has no reciprocal")]
    NonInvertible,
    #[error("series division leaves a pole at t=0")]
    NotDivisible,
    #[error("truncation order exhausted")]
    OrderExhausted,
    #[error("determining series is zero through order {0}")]
    ZeroSeries(usize),
    #[error("determining series has order {have}, need at least {need}")]
    SeriesTooShort { have: usize, need: usize },
    #[error("a custom family needs an explicit determining series")]
    CustomNeedsSeries,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no recurrence variant supplied")]
    MissingVariant,
}
