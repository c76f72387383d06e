use thiserror::Error;

/// Every failure the library can report.
///
/// `code()` gives the stable identifier used by the session transcript
/// (`ERROR <command> <code>: <message>`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not monic in {0}")]
    NotMonic(String),
    #[error("denominator is not invertible modulo the defining polynomial")]
    NonInvertibleDenominator,
    #[error("substitution is singular: {0}")]
    SingularSubstitution(String),

    #[error("point lies outside the chart overlap: {0}")]
    OutOfOverlap(String),
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("variety is singular at the given point")]
    SingularPoint,
    #[error("smoothness cannot be decided by monic elimination: {0}")]
    UndecidableSmoothness(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unknown space: {0}")]
    UnknownSpace(String),

    #[error("forms live on different charts")]
    ChartMismatch,
    #[error("the locus of restriction lies in the pole divisor")]
    PoleOnRestrictionLocus,
    #[error("form is not admissible: {0}")]
    InadmissibleForm(String),

    #[error("component {0} is not a declared pole of the form")]
    ComponentNotDeclared(String),
    #[error("form has degree {degree} but the variety has dimension {dim}")]
    NotTopDegree { degree: usize, dim: usize },
    #[error("components do not meet transversally: {0}")]
    NotTransverseComponents(String),

    #[error("map is constant")]
    ConstantMap,
    #[error("fiber polynomial is not squarefree")]
    InseparableFiber,

    #[error("containment cannot be decided by monic elimination: {0}")]
    UndecidableContainment(String),
    #[error("presentations cannot be compared: {0}")]
    IncomparablePresentations(String),
    #[error("boundary is not presentable in the catalog: {0}")]
    UnpresentableBoundary(String),
    #[error("chain is not a cycle relative to the boundary divisor")]
    NotARelativeCycle,

    #[error("cycles do not meet transversally: {0}")]
    NotTransverse(String),
    #[error("intersection point is not Q(i)-rational: {0}")]
    IrrationalIntersection(String),
    #[error("intersection point lies on the boundary divisor: {0}")]
    BoundaryHit(String),
    #[error("intersection is not a catalog presentation: {0}")]
    UnpresentableIntersection(String),
    #[error("boundary certificate failed: {0}")]
    NotABoundingChain(String),
    #[error("orientation is not admissible: {0}")]
    InvalidOrientation(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polar homology dimension is not determined: {0}")]
    Undetermined(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotMonic(_) => "NotMonic",
            Error::NonInvertibleDenominator => "NonInvertibleDenominator",
            Error::SingularSubstitution(_) => "SingularSubstitution",
            Error::OutOfOverlap(_) => "OutOfOverlap",
            Error::PointNotOnVariety => "PointNotOnVariety",
            Error::SingularPoint => "SingularPoint",
            Error::UndecidableSmoothness(_) => "UndecidableSmoothness",
            Error::InvalidPresentation(_) => "InvalidPresentation",
            Error::UnknownSpace(_) => "UnknownSpace",
            Error::ChartMismatch => "ChartMismatch",
            Error::PoleOnRestrictionLocus => "PoleOnRestrictionLocus",
            Error::InadmissibleForm(_) => "InadmissibleForm",
            Error::ComponentNotDeclared(_) => "ComponentNotDeclared",
            Error::NotTopDegree { .. } => "NotTopDegree",
            Error::NotTransverseComponents(_) => "NotTransverseComponents",
            Error::ConstantMap => "ConstantMap",
            Error::InseparableFiber => "InseparableFiber",
            Error::UndecidableContainment(_) => "UndecidableContainment",
            Error::IncomparablePresentations(_) => "IncomparablePresentations",
            Error::UnpresentableBoundary(_) => "UnpresentableBoundary",
            Error::NotARelativeCycle => "NotARelativeCycle",
            Error::NotTransverse(_) => "NotTransverse",
            Error::IrrationalIntersection(_) => "IrrationalIntersection",
            Error::BoundaryHit(_) => "BoundaryHit",
            Error::UnpresentableIntersection(_) => "UnpresentableIntersection",
            Error::NotABoundingChain(_) => "NotABoundingChain",
            Error::InvalidOrientation(_) => "InvalidOrientation",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Undetermined(_) => "Undetermined",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
