use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("gram matrix is not an even lattice: {0}")]
    NotEvenLattice(String),
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("expected {expected} coset representatives, got {got}")]
    WrongCosetCount { expected: usize, got: usize },
    #[error("invalid coset representative: {0}")]
    InvalidCoset(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("minimal conformal weight {weight} is attained by labels {labels:?}")]
    AmbiguousMinimalWeight { weight: String, labels: Vec<usize> },
    #[error("modular data failed validation: {0}")]
    InvalidModularData(String),
    #[error("Verlinde sum N[{i},{j}]^{k} = {value} is not within tolerance of an integer")]
    NonIntegerFusion {
        i: usize,
        j: usize,
        k: usize,
        value: f64,
    },
    #[error("Verlinde sum N[{i},{j}]^{k} = {value} rounds to a negative integer")]
    NegativeFusion {
        i: usize,
        j: usize,
        k: usize,
        value: f64,
    },
    #[error("fusion product of labels {i} and {j} is empty")]
    EmptyFusionProduct { i: usize, j: usize },
    #[error("S-ratio for label {label} has imaginary part {imag}")]
    ComplexRatio { label: usize, imag: f64 },
    #[error("quantum dimension {0} is not positive")]
    NotPositive(f64),
    #[error("quantum dimension {0} is below 1")]
    BelowOne(f64),
    #[error("weight is not dominant integral: {0}")]
    NotDominant(String),
    #[error("weight level {level} exceeds k = {k}")]
    LevelExceeded { level: i64, k: i64 },
    #[error("rank {0} is not supported")]
    RankUnsupported(usize),
    #[error("denominator series has no nonzero coefficient")]
    AllZeroDenominator,
    #[error("no admissible evaluation point: every y fails the truncation tail bound")]
    NoAdmissiblePoints,
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("table has no identity element")]
    NoIdentity,
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("group order {0} exceeds the supported maximum of 64")]
    OrderTooLarge(usize),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotCoprime { .. } => "NotCoprime",
            Error::OutOfRange(_) => "OutOfRange",
            Error::NotEvenLattice(_) => "NotEvenLattice",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::WrongCosetCount { .. } => "WrongCosetCount",
            Error::InvalidCoset(_) => "InvalidCoset",
            Error::InvalidInput(_) => "InvalidInput",
            Error::AmbiguousMinimalWeight { .. } => "AmbiguousMinimalWeight",
            Error::InvalidModularData(_) => "InvalidModularData",
            Error::NonIntegerFusion { .. } => "NonIntegerFusion",
            Error::NegativeFusion { .. } => "NegativeFusion",
            Error::EmptyFusionProduct { .. } => "EmptyFusionProduct",
            Error::ComplexRatio { .. } => "ComplexRatio",
            Error::NotPositive(_) => "NotPositive",
            Error::BelowOne(_) => "BelowOne",
            Error::NotDominant(_) => "NotDominant",
            Error::LevelExceeded { .. } => "LevelExceeded",
            Error::RankUnsupported(_) => "RankUnsupported",
            Error::AllZeroDenominator => "AllZeroDenominator",
            Error::NoAdmissiblePoints => "NoAdmissiblePoints",
            Error::NoConvergence(_) => "NoConvergence",
            Error::NotLatinSquare(_) => "NotLatinSquare",
            Error::NoIdentity => "NoIdentity",
            Error::NotAssociative(..) => "NotAssociative",
            Error::MissingInverse(_) => "MissingInverse",
            Error::OrderTooLarge(_) => "OrderTooLarge",
            Error::NotSubgroup => "NotSubgroup",
            Error::Parse(_) => "Parse",
            Error::Json(_) => "Json",
            Error::Io(_) => "Io",
        }
    }

    /// True for errors caused by malformed or out-of-domain input, as opposed
    /// to a mathematical check failing on well-formed data.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotCoprime { .. }
                | Error::OutOfRange(_)
                | Error::NotEvenLattice(_)
                | Error::NotPositiveDefinite
                | Error::WrongCosetCount { .. }
                | Error::InvalidCoset(_)
                | Error::InvalidInput(_)
                | Error::NotDominant(_)
                | Error::LevelExceeded { .. }
                | Error::RankUnsupported(_)
                | Error::NotLatinSquare(_)
                | Error::NoIdentity
                | Error::NotAssociative(..)
                | Error::MissingInverse(_)
                | Error::OrderTooLarge(_)
                | Error::NotSubgroup
                | Error::Parse(_)
                | Error::Json(_)
                | Error::Io(_)
        )
    }
}
