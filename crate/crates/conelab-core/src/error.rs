//! Error type shared by the geometric operations.

use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeError {
    /// Vector dimension does not match the cone's ambient dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// An affine subspace passes through the origin where it must not.
    OriginInSpan,
    /// Cone is not full-dimensional (or not pointed) where required.
    Degenerate,
    /// A section required to be linearly bounded contains a ray.
    UnboundedSection,
    /// A section turned out to be empty.
    EmptySection,
    /// Input dual section is unbounded.
    UnboundedInput,
    /// Point is not in the interior of the cone.
    NotInterior,
    /// No bounded proper section exists (dual has empty interior).
    NoBoundedSection,
    /// Body is not centrally symmetric.
    NotSymmetric,
    /// The input section does not have codimension 2.
    NotCodim2,
    /// Extension input section is unbounded.
    SectionUnbounded,
    /// The 2-D quotient image cone contains a line.
    QuotientNotPointed,
    /// The midpoint-chord system has no positive solution.
    ChordInfeasible,
    /// An operation precondition failed (e.g. asymmetric input section).
    PreconditionFailed,
    /// Bad generator parameters.
    BadParams,
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            ConeError::OriginInSpan => write!(f, "affine subspace contains the origin"),
            ConeError::Degenerate => write!(f, "cone is degenerate (not pointed or not full-dimensional)"),
            ConeError::UnboundedSection => write!(f, "section contains a ray"),
            ConeError::EmptySection => write!(f, "section is empty"),
            ConeError::UnboundedInput => write!(f, "input dual section is unbounded"),
            ConeError::NotInterior => write!(f, "point is not in the cone interior"),
            ConeError::NoBoundedSection => write!(f, "cone has no bounded proper section"),
            ConeError::NotSymmetric => write!(f, "body is not centrally symmetric"),
            ConeError::NotCodim2 => write!(f, "section does not have codimension 2"),
            ConeError::SectionUnbounded => write!(f, "input section is unbounded"),
            ConeError::QuotientNotPointed => write!(f, "quotient image cone contains a line"),
            ConeError::ChordInfeasible => write!(f, "midpoint chord system has no positive solution"),
            ConeError::PreconditionFailed => write!(f, "operation precondition failed"),
            ConeError::BadParams => write!(f, "bad generator parameters"),
        }
    }
}

impl core::error::Error for ConeError {}
