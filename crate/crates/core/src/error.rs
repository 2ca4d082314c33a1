use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePowerSize(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfCharacteristic { q: u64, p: u64 },
    #[error("degree {sub} does not divide degree {target}")]
    DegreeMismatch { sub: usize, target: usize },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("moduli are not pairwise coprime")]
    NotCoprime,
    #[error("empty input")]
    EmptyInput,
    #[error("the zero skew polynomial has no degree")]
    ZeroSkewPoly,
    #[error("invalid Drinfeld module: {0}")]
    InvalidModule(String),
    #[error("not an endomorphism of the Drinfeld module")]
    NotEndomorphism,
    #[error("relation search exhausted the degree bound {0}")]
    RelationSearchExhausted(usize),
    #[error("torsion level must be a non-unit")]
    UnitLevel,
    #[error("torsion level is not coprime to the characteristic")]
    LevelNotCoprime,
    #[error("torsion level is not a prime power")]
    NotPrimePower,
    #[error("cap exceeded: {what} (limit {reached})")]
    CapExceeded { what: String, reached: usize },
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::FieldTooLarge(_))
    }
}
