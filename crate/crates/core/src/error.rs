use thiserror::Error;

/// Errors raised by construction and engine operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("facet repeats vertex label {0:?}")]
    DuplicateVertexInFacet(String),
    #[error("apex label {0:?} already names a vertex")]
    ApexCollision(String),
    #[error("vertex label {0:?} occurs on both sides of a join")]
    LabelCollision(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("simplex not in complex: {0}")]
    NotInComplex(String),
    #[error("cone transport needs an explicit value for the apex stratum")]
    MissingApexValue,
    #[error("perversity value {value} for stratum of codimension {codim} is outside the Goresky-MacPherson range")]
    OutOfGmRange { value: i64, codim: i64 },
    #[error("simplex does not meet the skeleton in a single face: {0}")]
    NotFiltered(String),
    #[error("map does not preserve the filtration: {0}")]
    NotFilteredMap(String),
    #[error("chain image leaves the allowable subcomplex: {0}")]
    NotAllowable(String),
    #[error("decomposition has depth zero; nothing to blow up")]
    ZeroDepth,
    #[error("action is not regular: {0}")]
    NotRegular(String),
    #[error("action still not regular after two barycentric subdivisions: {0}")]
    NotRegularAfterTwoSubdivisions(String),
    #[error("group too large: order exceeds {0}")]
    GroupTooLarge(usize),
    #[error("perversity is not invariant under the action: {0}")]
    PerversityNotInvariant(String),
    #[error("subcomplexes do not cover the base complex: {0}")]
    NotACover(String),
    #[error("complex is not orientable: {0}")]
    NotOrientable(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("unknown action fixture {0:?}")]
    UnknownAction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
