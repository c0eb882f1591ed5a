use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alpha must be greater than 1, got {0}")]
    BadAlpha(i64),
    #[error("gcd({0}, {1}) is not 1")]
    NonCoprime(i64, i64),
    #[error("b({0},{1}) is a knot, expected a link")]
    NotALink(i64, i64),
    #[error("b({0},{1}) is a link, expected a knot")]
    NotAKnot(i64, i64),
    #[error("no even representative of beta for b({0},{1})")]
    NoEvenRepresentative(i64, i64),
    #[error("continued fraction has a zero denominator")]
    ZeroDenominator,
    #[error("invalid covering data: {0}")]
    InvalidCovering(String),
    #[error("covering data is not in singly-cyclic normal form: {0}")]
    BadNormalForm(String),
    #[error("b({0},{1}) is toroidal, not hyperbolic")]
    NotHyperbolic(i64, i64),
    #[error("exponent {k} is not a unit mod {n}")]
    NotMeridianCyclic { n: i64, k: i64 },
    #[error("involution {colour} fixes vertex {vertex}")]
    DegenerateInvolution { colour: usize, vertex: usize },
    #[error("invalid coloured graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not a gem")]
    NotAGem,
    #[error("parameters do not yield a manifold")]
    NotAManifold,
    #[error("graph has {0} vertices, more than the supported 200")]
    TooLarge(usize),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("surface Euler characteristic {0} is odd")]
    NonIntegerGenus(i64),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("beta = {beta} is not invertible mod {modulus}")]
    BetaNotInvertible { beta: i64, modulus: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("write failed: {0}")]
    Output(std::io::ErrorKind),
}

pub type Result<T> = std::result::Result<T, Error>;
