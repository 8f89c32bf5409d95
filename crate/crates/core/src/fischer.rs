//! The two inner products on polynomial space: the apolar (Fischer) product
//! `⟨P,Q⟩_F = Σ_α α!·c_α·conj(d_α)` and the Gaussian-weighted real product
//! `⟨f,g⟩_rF = ∫_{ℝⁿ} f·conj(g)·e^{-|x|²} dx`.
//!
//! Both are computed by closed coefficient formulas, never by quadrature,
//! so every inequality built on them is a decidable exact assertion. Real
//! products carry an implicit uniform factor `π^{n/2}` which cancels in all
//! same-dimension ratios and comparisons.

use crate::numerics::{BigRational, GaussianRational};
use crate::polynomials::{GradedSeries, HomPoly, MultiIndex};
use crate::spheregrid;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("unsupported dimension {n}; sphere grids require n ∈ {{2, 3}}")]
    UnsupportedDimension { n: usize },
    #[error("resolution {resolution} is too coarse; need at least 8")]
    ResolutionTooCoarse { resolution: usize },
}

/// A value of the Gaussian-weighted inner product: the true value is
/// `value · π^{n/2}`. The factor is uniform across one dimension, so ratios
/// and comparisons of same-dimension values drop it; mixing dimensions is a
/// programming error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealFischerValue {
    n: usize,
    value: GaussianRational,
}

impl RealFischerValue {
    pub fn new(n: usize, value: GaussianRational) -> Self {
        RealFischerValue { n, value }
    }

    pub fn zero(n: usize) -> Self {
        RealFischerValue::new(n, GaussianRational::zero())
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// The rational part (the value divided by `π^{n/2}`).
    pub fn rational_part(&self) -> &GaussianRational {
        &self.value
    }

    /// The rational part of a value known to be real (e.g. any `⟨f,f⟩`).
    ///
    /// Panics when the value has a nonzero imaginary part.
    pub fn expect_real(&self) -> BigRational {
        assert!(
            self.value.im.is_zero(),
            "real Fischer value has a nonzero imaginary part"
        );
        self.value.re.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &RealFischerValue) -> RealFischerValue {
        assert_eq!(self.n, other.n, "dimension mismatch");
        RealFischerValue::new(self.n, &self.value + &other.value)
    }

    /// Exact ratio `self / other`; the `π^{n/2}` factors cancel.
    pub fn ratio_to(&self, other: &RealFischerValue) -> Option<GaussianRational> {
        assert_eq!(self.n, other.n, "dimension mismatch");
        if other.value.is_zero() {
            return None;
        }
        Some(&self.value / &other.value)
    }

    /// Floating-point value including the `π^{n/2}` factor; diagnostics only.
    pub fn to_f64(&self) -> f64 {
        assert!(self.value.im.is_zero(), "complex value has no f64 image");
        crate::numerics::rational_to_f64(&self.value.re)
            * std::f64::consts::PI.powf(self.n as f64 / 2.0)
    }
}

/// `∫_ℝ x^e e^{-x²} dx / √π = e!/(4^{e/2}·(e/2)!)` for even `e`, else 0.
fn one_dim_moment(e: usize) -> BigRational {
    if e % 2 == 1 {
        return BigRational::zero();
    }
    let half = e / 2;
    Ratio::new(
        crate::numerics::factorial(e),
        crate::numerics::factorial(half) * BigInt::from(4).pow(half as u32),
    )
}

/// The Gaussian moment of the monomial `x^γ`, divided by `π^{n/2}`: zero if
/// any exponent is odd, otherwise `∏ᵢ γᵢ!/(4^{γᵢ/2}·(γᵢ/2)!)`.
pub fn monomial_moment(gamma: &MultiIndex) -> BigRational {
    let mut acc = BigRational::from(BigInt::from(1));
    for &e in gamma.exponents() {
        if e % 2 == 1 {
            return BigRational::zero();
        }
        acc *= one_dim_moment(e);
    }
    acc
}

/// The apolar inner product `⟨f,g⟩_F = Σ_α α!·c_α·conj(d_α)`; homogeneous
/// parts of different degree are orthogonal. Conjugate-linear in `g`.
pub fn fischer_inner(f: &HomPoly, g: &HomPoly) -> GaussianRational {
    assert_eq!(f.n(), g.n(), "dimension mismatch");
    if f.degree() != g.degree() {
        return GaussianRational::zero();
    }
    let mut acc = GaussianRational::zero();
    for (alpha, c) in f.terms() {
        let d = g.coefficient(alpha);
        if d.is_zero() {
            continue;
        }
        let weight =
            GaussianRational::new(BigRational::from(alpha.factorial()), BigRational::zero());
        acc += c * d.conj() * weight;
    }
    acc
}

pub fn fischer_inner_series(f: &GradedSeries, g: &GradedSeries) -> GaussianRational {
    assert_eq!(f.n(), g.n(), "dimension mismatch");
    let mut acc = GaussianRational::zero();
    for (m, part) in f.iter_parts() {
        if let Some(other) = g.part(m) {
            acc += fischer_inner(part, other);
        }
    }
    acc
}

/// `‖f‖²_F`, real and nonnegative; zero iff `f = 0`.
pub fn norm_sq_f(f: &HomPoly) -> BigRational {
    let mut acc = BigRational::zero();
    for (alpha, c) in f.terms() {
        acc += BigRational::from(alpha.factorial()) * c.norm_sqr();
    }
    acc
}

pub fn norm_sq_f_series(f: &GradedSeries) -> BigRational {
    f.iter_parts().map(|(_, p)| norm_sq_f(p)).sum()
}

/// The Gaussian-weighted inner product, via the closed monomial-moment
/// formula. Conjugate-linear in `g`. Parts of unequal degree are *not*
/// orthogonal in general (only opposite parities force zero).
pub fn real_fischer_inner(f: &HomPoly, g: &HomPoly) -> RealFischerValue {
    assert_eq!(f.n(), g.n(), "dimension mismatch");
    let mut acc = GaussianRational::zero();
    if (f.degree() + g.degree()) % 2 == 1 {
        return RealFischerValue::new(f.n(), acc);
    }
    for (alpha, c) in f.terms() {
        for (beta, d) in g.terms() {
            let moment = monomial_moment(&alpha.add(beta));
            if moment.is_zero() {
                continue;
            }
            acc += c * d.conj() * GaussianRational::new(moment, BigRational::zero());
        }
    }
    RealFischerValue::new(f.n(), acc)
}

pub fn real_fischer_inner_series(f: &GradedSeries, g: &GradedSeries) -> RealFischerValue {
    assert_eq!(f.n(), g.n(), "dimension mismatch");
    let mut acc = RealFischerValue::zero(f.n());
    for (_, p) in f.iter_parts() {
        for (_, q) in g.iter_parts() {
            acc = acc.add(&real_fischer_inner(p, q));
        }
    }
    acc
}

/// `‖f‖²_rF` as a real Fischer value (rational part real, nonnegative).
pub fn norm_sq_rf(f: &HomPoly) -> RealFischerValue {
    real_fischer_inner(f, f)
}

pub fn norm_sq_rf_series(f: &GradedSeries) -> RealFischerValue {
    real_fischer_inner_series(f, f)
}

/// Grid estimate of `max_{|θ|=1} |f(θ)|`.
///
/// Returns `(lower, certified_upper)`: `lower` is the maximum over the grid,
/// and `certified_upper = lower + L·h` where `h` is the covering radius of
/// the grid and `L` the coefficient-1-norm gradient bound, so that
/// `lower ≤ true max ≤ certified_upper`.
pub fn sphere_max_estimate(f: &HomPoly, resolution: usize) -> Result<(f64, f64), GridError> {
    let n = f.n();
    if n != 2 && n != 3 {
        return Err(GridError::UnsupportedDimension { n });
    }
    if resolution < 8 {
        return Err(GridError::ResolutionTooCoarse { resolution });
    }
    let scan = spheregrid::scan(f, resolution);
    let lipschitz = f.gradient_sphere_bound().to_f64().unwrap_or(f64::INFINITY);
    Ok((scan.max_abs, scan.max_abs + lipschitz * scan.mesh))
}
