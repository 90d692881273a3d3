use thiserror::Error;

/// Errors raised by the IET, PWI and embedding routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("permutation is not a bijection of 1..={d}: {mapping:?}")]
    NonBijective { d: usize, mapping: Vec<usize> },

    #[error("permutations need at least two letters, got {0}")]
    TooShort(usize),

    #[error("permutation {0:?} is reducible")]
    Reducible(Vec<usize>),

    #[error("subinterval {index} has non-positive length {length}")]
    NonPositiveLength { index: usize, length: f64 },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("point {0} lies outside the domain")]
    OutOfDomain(f64),

    #[error("Rauzy step undefined: competing intervals have equal length ({0} vs {1})")]
    DegenerateStep(f64, f64),

    #[error("no return within {cap} steps")]
    CapExceeded { cap: usize },

    #[error("point ({re}, {im}) lies in no atom")]
    NoAtom { re: f64, im: f64 },

    #[error("orbit left the domain at step {step}")]
    Escaped { step: usize },

    #[error("point ({re}, {im}) is not in the section")]
    NotInSection { re: f64, im: f64 },

    #[error("rotation sum {0} is resonant; the connecting map has no unique fixed point")]
    ResonantTheta(f64),

    #[error("atom {0} is never visited by the orbit of 0")]
    AtomNeverVisited(usize),

    #[error("parameter {name} = {value} outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("vertex {vertex} outside 0..={d}")]
    BadVertex { vertex: usize, d: usize },

    #[error("i/o failure: {0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
