use thiserror::Error;

/// Errors raised by the group model and the Beauville checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix code {0} is out of range (must be < 512)")]
    InvalidBlock(u32),

    #[error("truncation level must be at least 1")]
    ZeroLevel,

    #[error("truncation level {0} is too small for this operation (need at least {1})")]
    LevelTooSmall(usize, usize),

    #[error("truncation levels differ: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },

    #[error("operation is undefined on the identity element")]
    IdentityInput,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("defining relation x_{index} x_{{{index}+1}} x_{{{index}+3}} = id fails at level {level}")]
    RelationFailure { index: usize, level: usize },

    #[error("enumeration budget of {budget} elements exceeded")]
    BudgetExceeded { budget: usize },

    #[error("element is not a member of the {0}")]
    NotInGroup(&'static str),

    #[error("the conjugating element must lie outside H")]
    ConjugatorInSubgroup,

    #[error("image assignment does not extend to an automorphism")]
    NotAutomorphism,

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("condition (A) fails, so the ramification data is not defined")]
    ConditionAFailed,

    #[error("Riemann-Hurwitz bracket {0} is not positive")]
    DegenerateBracket(String),

    #[error("{name} = {value} is not an integer")]
    NonIntegral { name: &'static str, value: String },

    #[error("the two Euler number formulas disagree: {0} vs {1}")]
    EulerMismatch(String, String),

    #[error("power {n} of {generator} matches no printed form (t(n) = {t})")]
    Classification { generator: String, n: u64, t: u64 },

    #[error("cache file: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
