use thiserror::Error;

/// Every failure the library reports. Data-dependent outcomes (an irreducible
/// conic, a polar point) are ordinary variants, not panics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inexact Laurent division, remainder {remainder}")]
    DivisionFailure { remainder: String },
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    #[error("{map}: point on polar locus ({detail})")]
    PolarLocus { map: String, detail: String },
    #[error("chart degenerate: {0}")]
    ChartDegenerate(String),
    #[error("non-generic parameters: {0}")]
    NonGenericParams(String),
    #[error("non-generic point: {0}")]
    NonGenericPoint(String),
    #[error("splitting needs an irrational coefficient: {0}")]
    IrrationalSplitting(String),
    #[error("conic does not split over the rationals")]
    Irreducible,
    #[error("degenerate line configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("singular linear system: {0}")]
    SingularSystem(String),
    #[error("upper-left entry vanishes, no LDU factorization")]
    ZeroCorner,
    #[error("the two matrices share an eigenvector")]
    ReduciblePair,
    #[error("eigen-data not rational: {0}")]
    IrrationalEigenvector(String),
    #[error("representation constraint violated: {0}")]
    InvalidRepresentation(String),
    #[error("point is not on the surface: {0}")]
    NotOnSurface(String),
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("unknown chart {0}")]
    UnknownChart(String),
    #[error("non-generic alpha: {0}")]
    NonGenericAlpha(String),
    #[error("field does not vanish at {0}")]
    NotSingular(String),
    #[error("pole hit: {0}")]
    PoleHit(String),
    #[error("sampler exhausted after {0} attempts")]
    SamplerExhausted(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("floating overflow: {0}")]
    FloatOverflow(String),
}

impl Error {
    /// Stable variant name, used by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionFailure { .. } => "DivisionFailure",
            Error::ZeroDenominator(_) => "ZeroDenominator",
            Error::PolarLocus { .. } => "PolarLocus",
            Error::ChartDegenerate(_) => "ChartDegenerate",
            Error::NonGenericParams(_) => "NonGenericParams",
            Error::NonGenericPoint(_) => "NonGenericPoint",
            Error::IrrationalSplitting(_) => "IrrationalSplitting",
            Error::Irreducible => "Irreducible",
            Error::DegenerateConfiguration(_) => "DegenerateConfiguration",
            Error::SingularSystem(_) => "SingularSystem",
            Error::ZeroCorner => "ZeroCorner",
            Error::ReduciblePair => "ReduciblePair",
            Error::IrrationalEigenvector(_) => "IrrationalEigenvector",
            Error::InvalidRepresentation(_) => "InvalidRepresentation",
            Error::NotOnSurface(_) => "NotOnSurface",
            Error::FamilyMismatch(_) => "FamilyMismatch",
            Error::UnknownChart(_) => "UnknownChart",
            Error::NonGenericAlpha(_) => "NonGenericAlpha",
            Error::NotSingular(_) => "NotSingular",
            Error::PoleHit(_) => "PoleHit",
            Error::SamplerExhausted(_) => "SamplerExhausted",
            Error::Parse(_) => "Parse",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::FloatOverflow(_) => "FloatOverflow",
        }
    }

    pub(crate) fn polar(map: &str, detail: &str) -> Self {
        Error::PolarLocus { map: map.to_string(), detail: detail.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
