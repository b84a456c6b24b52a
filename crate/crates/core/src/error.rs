use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive form")]
    ZeroVector,
    #[error("normal not primitive (facet {0})")]
    NotPrimitive(usize),
    #[error("offset not integer (facet {0})")]
    OffsetNotInteger(usize),
    #[error("unbounded")]
    Unbounded,
    #[error("not simple: {0}")]
    NotSimple(String),
    #[error("redundant facet {0}")]
    RedundantFacet(usize),
    #[error("empty polytope")]
    Empty,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("vertex has no tangent lattice")]
    NoTangentLattice,
    #[error("h outside stability region")]
    OutsideStabilityRegion,
    #[error("denominator of {0} does not divide conductor {1}")]
    Conductor(String, u64),
    #[error("undefined for λ = 1")]
    UndefinedAtOne,
    #[error("apex not in the lattice spanned by the edge vectors")]
    ApexNotInLattice,
    #[error("divergent region")]
    DivergentRegion,
    #[error("on hyperplane")]
    OnHyperplane,
    #[error("ill-conditioned ξ")]
    IllConditioned,
    #[error("not polarizing")]
    NotPolarizing,
    #[error("requires non-singular fan")]
    RequiresNonSingularFan,
    #[error("point budget of {0} exceeded")]
    PointBudget(u64),
    #[error("invalid input at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), msg: msg.into() }
    }

    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RequiresNonSingularFan => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}
