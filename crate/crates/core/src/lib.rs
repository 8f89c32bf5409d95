//! Exact constructive machinery for mixed Cauchy problems `L(P·q) = f` with
//! data on singular conic divisors.
//!
//! The crate provides, over the field of Gaussian rationals:
//!
//! - homogeneous polynomials, truncated graded series, and exact linear
//!   changes of variables ([`polynomials`]);
//! - the apolar (Fischer) inner product and its Gaussian-weighted real
//!   counterpart, both computed by closed coefficient formulas ([`fischer`]);
//! - the Gauss decomposition into harmonic components and the exact
//!   eigenvalues of `q ↦ Δ^p(|x|^{2p}·q)` ([`harmonic`]);
//! - a degree-by-degree series solver with exact well-posedness
//!   certificates and residual verification ([`solver`]);
//! - certified ellipticity checks for divisors, including complex-orthogonal
//!   changes of variables ([`ellipticity`]).

pub mod ellipticity;
pub mod fischer;
pub mod harmonic;
pub mod linalg;
pub mod numerics;
pub mod polynomials;
pub mod sampling;
pub mod solver;

mod spheregrid;

pub use ellipticity::{EllipticityCertificate, EllipticityError, Verdict, Witness};
pub use fischer::{GridError, RealFischerValue};
pub use harmonic::GaussDecomposition;
pub use numerics::{BigRational, GaussianRational, SqrtPiScaled};
pub use polynomials::{GradedSeries, HomPoly, LinearChange, MultiIndex};
pub use solver::{
    DegreeOperator, KZeroRegime, OperatorSpec, PrincipalPart, Problem, ProblemError,
    SolutionReport, SolveError, WellposednessCertificate,
};

/// Caps the number of worker threads used by sphere-grid scans.
///
/// The default is the available parallelism of the machine. Results are
/// bit-identical for any cap; this only bounds resource usage.
pub fn set_grid_thread_cap(threads: usize) {
    spheregrid::set_thread_cap(threads);
}
