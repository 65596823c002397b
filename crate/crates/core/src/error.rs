use crate::scalar::FieldSpec;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{field} has no primitive root of unity of order {order}")]
    UnsupportedOrder { field: FieldSpec, order: u64 },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid scalar at column {column}: {message}")]
    ScalarParse { column: usize, message: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map is singular")]
    Singular,
    #[error("undefined column at basis element {0}")]
    UndefinedColumn(String),
    #[error("space of dimension {dim} exceeds TWISTLAB_MAX_DIM = {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("pairing is degenerate")]
    DegeneratePairing,
    #[error("pairing is not associative at {0}")]
    NonAssociativePairing(String),
    #[error("left and right composites disagree: {0}")]
    CompositeMismatch(String),

    #[error("algebra has no grading")]
    UngradedAlgebra,
    #[error("inconsistent bicharacter: {0}")]
    InconsistentBicharacter(String),
    #[error("lambda value is not invertible at {0}")]
    NonInvertibleLambda(String),
    #[error("inconsistent extension at {monomial}: {left} != {right}")]
    InconsistentExtension {
        monomial: String,
        left: String,
        right: String,
    },
    #[error("twisting map is not bijective")]
    NotBijective,
    #[error("twisting map has not passed check_twisting")]
    UncheckedTwist,
    #[error("inputs are not bialgebras")]
    NotBialgebraInputs,
    #[error("inputs are not Frobenius algebras")]
    NotFrobeniusInputs,
    #[error("twist does not induce a Frobenius structure")]
    NoInheritedStructure,
    #[error("inputs are not separable with the given sections")]
    NotSeparableInputs,
    #[error("inputs are not special Frobenius algebras")]
    NotSpecialInputs,
    #[error("iterated twist depends on the bracketing: {0}")]
    PathDisagreement(String),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("invalid q matrix: {0}")]
    InvalidQMatrix(String),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("invalid monomial basis: {0}")]
    InvalidMonomialBasis(String),
    #[error("unknown demo {0}")]
    UnknownDemo(String),
    #[error("internal consistency violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
