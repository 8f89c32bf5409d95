//! Ellipticity verification for even-degree divisors.
//!
//! A degree-`2p` homogeneous `P` is elliptic when it is real on `ℝⁿ` and
//! `P(x) ≥ δ·|x|^{2p}` for some `δ > 0`; by homogeneity `δ` is the minimum
//! of `P` on the unit sphere. The generalized form replaces the standard
//! quadratic form by `B`: the tool verifies a *supplied* change of variables
//! `A` with `B(Aτ) = Σ(τ)` exactly, transforms `P` by `A^{-t}`, and
//! certifies the transformed polynomial. A failed check for one `A` does
//! not refute the generalized property, which quantifies over all such `A`;
//! certificates are always statements about the supplied transform.

use crate::fischer::GridError;
use crate::linalg::ExactMatrix;
use crate::numerics::{rational_to_f64, GaussianRational};
use crate::polynomials::{HomPoly, LinearChange};
use crate::spheregrid;
use num_traits::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticityError {
    #[error("B(Aτ) does not equal Σ(τ) for the supplied change of variables")]
    TransformInvalid,
    #[error("the quadratic form matrix is not symmetric")]
    AsymmetricForm,
    #[error("polynomial degree {degree} is odd; ellipticity requires even degree")]
    OddDegree { degree: usize },
    #[error("polynomial is not real-valued on ℝⁿ")]
    NotRealOnReals,
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Elliptic,
    NotElliptic,
    Inconclusive,
}

/// Evidence for a `NotElliptic` verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// A monomial whose coefficient has a nonzero imaginary part.
    NonRealCoefficient {
        exponents: Vec<usize>,
        coefficient: GaussianRational,
    },
    /// A sphere point where the (real) polynomial is ≤ 0.
    SpherePoint { point: Vec<f64>, value: f64 },
}

/// Outcome of an ellipticity check on the transformed polynomial.
///
/// `delta_lower` is a certified lower bound for the sphere minimum
/// (`grid minimum - L·h`); the verdict is `Elliptic` only when that bound is
/// strictly positive, and `NotElliptic` only with an explicit witness. When
/// the grid minimum is positive but the certified bound is not, the verdict
/// is `Inconclusive` and `suggested_resolution` estimates the grid size that
/// would decide the question.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticityCertificate {
    pub real_on_reals: bool,
    /// Certified lower bound for `min_{|x|=1} P(x)`; `None` when the sphere
    /// scan was not run (nonreal input).
    pub delta_lower: Option<f64>,
    /// Raw grid minimum.
    pub delta_grid_min: Option<f64>,
    pub resolution: usize,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub suggested_resolution: Option<usize>,
}

/// A polynomial is real-valued on `ℝⁿ` iff every coefficient is real.
pub fn is_real_on_reals(p: &HomPoly) -> bool {
    p.terms().all(|(_, c)| c.im.is_zero())
}

fn first_nonreal_term(p: &HomPoly) -> Option<Witness> {
    p.terms()
        .find(|(_, c)| !c.im.is_zero())
        .map(|(alpha, c)| Witness::NonRealCoefficient {
            exponents: alpha.exponents().to_vec(),
            coefficient: c.clone(),
        })
}

/// Exact check that `Σ(Aτ) = Σ(τ)` as polynomials, i.e. `AᵀA = I`.
pub fn verify_orthogonal_for_sigma(a: &LinearChange) -> bool {
    let t = a.matrix().transpose();
    t.mul(a.matrix()) == ExactMatrix::identity(a.n())
}

/// Exact check that `B(Aτ) = Σ(τ)`, i.e. `AᵀBA = I` for symmetric `B`.
pub fn verify_b_transform(b: &ExactMatrix, a: &LinearChange) -> Result<(), EllipticityError> {
    let n = a.n();
    assert_eq!(b.rows(), n, "form dimension mismatch");
    assert_eq!(b.cols(), n, "form dimension mismatch");
    if *b != b.transpose() {
        return Err(EllipticityError::AsymmetricForm);
    }
    let product = a.matrix().transpose().mul(&b.mul(a.matrix()));
    if product == ExactMatrix::identity(n) {
        Ok(())
    } else {
        Err(EllipticityError::TransformInvalid)
    }
}

/// Grid minimum of a real polynomial over the unit sphere with a certified
/// lower bound `grid_min - L·h` (`L` the coefficient-1-norm gradient bound,
/// `h` the covering radius).
pub fn sphere_min_certified(
    p: &HomPoly,
    resolution: usize,
) -> Result<(f64, f64), EllipticityError> {
    if !is_real_on_reals(p) {
        return Err(EllipticityError::NotRealOnReals);
    }
    let n = p.n();
    if n != 2 && n != 3 {
        return Err(GridError::UnsupportedDimension { n }.into());
    }
    if resolution < 8 {
        return Err(GridError::ResolutionTooCoarse { resolution }.into());
    }
    let scan = spheregrid::scan(p, resolution);
    let lipschitz = rational_to_f64(&p.gradient_sphere_bound());
    Ok((scan.min_re, scan.min_re - lipschitz * scan.mesh))
}

fn certify_real_polynomial(
    p: &HomPoly,
    resolution: usize,
) -> Result<EllipticityCertificate, EllipticityError> {
    let n = p.n();
    if n != 2 && n != 3 {
        return Err(GridError::UnsupportedDimension { n }.into());
    }
    if resolution < 8 {
        return Err(GridError::ResolutionTooCoarse { resolution }.into());
    }
    let scan = spheregrid::scan(p, resolution);
    let lipschitz = rational_to_f64(&p.gradient_sphere_bound());
    let grid_min = scan.min_re;
    let certified = grid_min - lipschitz * scan.mesh;
    let (verdict, witness, suggested) = if grid_min <= 0.0 {
        (
            Verdict::NotElliptic,
            Some(Witness::SpherePoint {
                point: scan.min_re_point.clone(),
                value: grid_min,
            }),
            None,
        )
    } else if certified > 0.0 {
        (Verdict::Elliptic, None, None)
    } else {
        // Need L·h < grid_min, i.e. resolution > L·π/grid_min; double for
        // slack.
        let needed = (2.0 * lipschitz * std::f64::consts::PI / grid_min).ceil();
        let suggested = if needed.is_finite() {
            Some((needed as usize).max(resolution + 1))
        } else {
            None
        };
        (Verdict::Inconclusive, None, suggested)
    };
    Ok(EllipticityCertificate {
        real_on_reals: true,
        delta_lower: Some(certified),
        delta_grid_min: Some(grid_min),
        resolution,
        verdict,
        witness,
        suggested_resolution: suggested,
    })
}

/// Full check of the generalized ellipticity property for a supplied
/// transform: verifies `B(Aτ) = Σ(τ)` exactly, forms `P(A^{-t}x)` exactly,
/// and certifies positivity of the transformed polynomial on the sphere.
pub fn b_elliptic_check(
    p: &HomPoly,
    b: &ExactMatrix,
    a: &LinearChange,
    resolution: usize,
) -> Result<EllipticityCertificate, EllipticityError> {
    if p.degree() % 2 == 1 {
        return Err(EllipticityError::OddDegree { degree: p.degree() });
    }
    verify_b_transform(b, a)?;
    let transformed = p.substitute_linear(&a.inverse_transpose());
    if !is_real_on_reals(&transformed) {
        return Ok(EllipticityCertificate {
            real_on_reals: false,
            delta_lower: None,
            delta_grid_min: None,
            resolution,
            verdict: Verdict::NotElliptic,
            witness: first_nonreal_term(&transformed),
            suggested_resolution: None,
        });
    }
    certify_real_polynomial(&transformed, resolution)
}

/// Substitute `x_j → i·x_j` for each axis in the set, exactly. Transforming
/// a hyperbolic divisor such as `Σ x_j² - t²` over the selected time axis
/// yields `Σ x_j² + t²`, which is elliptic.
pub fn wave_substitution(p: &HomPoly, imaginary_axes: &BTreeSet<usize>) -> HomPoly {
    let axes: Vec<usize> = imaginary_axes.iter().copied().collect();
    p.imaginary_axis_substitution(&axes)
}
