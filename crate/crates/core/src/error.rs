use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weight vector entries must be positive (entry {0} is zero)")]
    NonPositiveWeight(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("module element is not a Gröbner basis: {0}")]
    NotAGroebnerBasis(String),
    #[error("basis index {0} is unknown")]
    BasisIndexUnknown(usize),
    #[error("column {0} of the generator matrix is zero")]
    ZeroColumn(usize),
    #[error("not in simplicial normal form: {0}")]
    NotSimplicialNormalForm(String),
    #[error("variables are not in Noether position: {0}")]
    NotNoetherPosition(String),
    #[error("generator is not homogeneous for the weight vector: {0}")]
    NotHomogeneous(String),
    #[error("ideal is not homogeneous for the standard grading")]
    NotStandardGraded,
    #[error("expected Krull dimension 3, found {0}")]
    NotDimension3(usize),
    #[error("reduced Gröbner basis contains a non-binomial: {0}")]
    NotPrimeBinomial(String),
    #[error("ideal is not toric: {0}")]
    NotToric(String),
    #[error("degree {0} is not in the semigroup")]
    NotInSemigroup(String),
    #[error("generator matrix columns do not share a common degree")]
    NotEquigenerated,
}

impl Error {
    /// Failed preconditions of the algorithms (as opposed to malformed input).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotNoetherPosition(_)
                | Error::NotHomogeneous(_)
                | Error::NotStandardGraded
                | Error::NotDimension3(_)
                | Error::NotPrimeBinomial(_)
                | Error::NotToric(_)
                | Error::NotEquigenerated
                | Error::NotSimplicialNormalForm(_)
                | Error::ZeroColumn(_)
                | Error::NotInSemigroup(_)
                | Error::NotAGroebnerBasis(_)
        )
    }
}
