use alloc::string::String;
use alloc::vec::Vec;

/// Every failure the library reports. Variants name the violated invariant.
/// Ray numbers and cones inside errors are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("MismatchedGroup: {0}")]
    MismatchedGroup(String),
    #[error("InvalidGroup: {0}")]
    InvalidGroup(String),
    #[error("MatrixShape: {0}")]
    MatrixShape(String),
    #[error("InfiniteCokernel: the images do not span the rational vector space")]
    InfiniteCokernel,
    #[error("BadDiagram: {0}")]
    BadDiagram(String),
    #[error("IllDefinedHomomorphism: {0}")]
    IllDefinedHomomorphism(String),
    #[error("IndexOutOfRange: ray index {index} but only {rays} rays")]
    IndexOutOfRange { index: usize, rays: usize },
    #[error("NotOnRay: generator {ray} does not span a ray of the fan")]
    NotOnRay { ray: usize },
    #[error("DependentGenerators: cone {cone:?} has linearly dependent generators")]
    DependentGenerators { cone: Vec<usize> },
    #[error("RaysDoNotSpan: ray generators span a space of dimension {rank} < {dim}")]
    RaysDoNotSpan { rank: usize, dim: usize },
    #[error("NotAFan: cones {first:?} and {second:?} do not meet in a common face")]
    NotAFan { first: Vec<usize>, second: Vec<usize> },
    #[error("OutsideSupport: the point lies in no cone of the fan")]
    OutsideSupport,
    #[error("NotMaximalCone: cone {cone:?} is not full-dimensional")]
    NotMaximalCone { cone: Vec<usize> },
    #[error("NotACone: index set {cone:?} is not a cone of the fan")]
    NotACone { cone: Vec<usize> },
    #[error("ConditionSpanQuotFails: link rays of {cone:?} do not span the quotient")]
    ConditionSpanQuotFails { cone: Vec<usize> },
    #[error("NotComplete: the fan is not complete")]
    NotComplete,
    #[error("NotASubdivision: {0}")]
    NotASubdivision(String),
    #[error("NotAComponent: the triple does not sum into the subgroup of a common cone")]
    NotAComponent,
    #[error("ExponentOutOfRange: ray {ray} has virtual exponent {value}, expected 1 or 2")]
    ExponentOutOfRange { ray: usize, value: String },
}

pub type Result<T> = core::result::Result<T, Error>;
