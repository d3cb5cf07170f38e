use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable context mismatch: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable index {index} out of range for a context of {len} variables")]
    VariableIndex { index: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not {0}")]
    Shape(&'static str),
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("constant term {0} is not the square of a rational")]
    NotASquare(String),
    #[error("operation needs a single-variable context, found {0} variables")]
    NotUnivariate(usize),
    #[error("degenerate branch: dH/dy vanishes at the origin")]
    DegenerateBranch,
    #[error("curve does not pass through the origin (H(0,0) = {0})")]
    NotOnCurve(String),
    #[error("order {0} cannot be solved: leading coefficient series is not invertible")]
    UnsolvableOrder(usize),
    #[error("unsupported ideal shape: {0}")]
    UnsupportedIdeal(String),
    #[error("unpaired variable `{0}` in Weyl representation")]
    UnpairedVariable(String),
    #[error("polynomial degree {found} exceeds supported degree {max}")]
    DegreeTooHigh { found: usize, max: usize },
    #[error("{0} does not reduce to an Airy-type equation in H")]
    NotAiryReducible(String),
    #[error("equations do not Poisson commute: {0}")]
    PoissonClosure(String),
    #[error("not a Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("no extension of the coisotropic subspace within the linear ansatz: {0}")]
    NoExtension(String),
    #[error("singular pivot: {0}")]
    SingularPivot(String),
    #[error("G and L fail to intersect transversally: {0}")]
    NonTransversal(String),
    #[error("matrix is singular")]
    Singular,
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("undeclared identifier `{name}` at byte {offset}")]
    UndeclaredIdentifier { name: String, offset: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
