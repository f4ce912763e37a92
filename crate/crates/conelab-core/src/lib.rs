//! Convex-cone geometry in low-dimensional Euclidean space.
//!
//! The crate models closed pointed cones in `R^n` (polyhedral and
//! ellipsoidal), their duals, their bounded sections, and the two
//! section-based properties that single out ellipsoidal cones:
//!
//! * **CSS** — every bounded proper section has a center of symmetry;
//! * **FBI** — for every interior point `a`, the boundary intersection
//!   `∂C ∩ ∂(a − C)` lies in a hyperplane.
//!
//! Everything is `no_std + alloc`; IO, file formats and the CLI live in
//! the companion `conelab` crate.

#![no_std]

#[macro_use]
extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cone;
pub mod constructions;
pub mod dd;
pub mod duality;
pub mod error;
pub mod float;
pub mod linalg;
pub mod lp;
pub mod mat;
pub mod nnls;
pub mod properties;
pub mod rng;
pub mod sections;
pub mod vec;

pub use cone::{ConeGeometry, ConeRep, EllipsoidalCone, PolyhedralCone};
pub use error::ConeError;
pub use linalg::{AffineSubspace, LinearSubspace};
pub use sections::{ConvexBody, SectionResult, SymmetryVerdict};

/// Default tolerances used across the crate. Individual operations take
/// explicit tolerance arguments; these are the values the harness pins.
pub mod tol {
    /// Relative membership tolerance for cone predicates.
    pub const MEM: f64 = 1e-9;
    /// Relative rank cutoff for singular-value decisions.
    pub const RANK: f64 = 1e-9;
    /// Rank cutoff for the FBI flatness test (two-band decision).
    pub const RANK_FBI: f64 = 1e-7;
    /// Distance below which an affine subspace counts as containing 0.
    pub const ORIGIN: f64 = 1e-10;
    /// Relative symmetry-defect tolerance (normalized by diameter).
    pub const SYM: f64 = 1e-8;
    /// Relative residual tolerance for ellipsoid certification.
    pub const FIT: f64 = 1e-6;
}
