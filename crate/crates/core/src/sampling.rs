//! Seeded random generators for polynomials, series, and changes of
//! variables. All sampling is reproducible: surveys and test suites derive
//! their streams from a ChaCha8 generator with an explicit seed.

use crate::harmonic;
use crate::numerics::{rational, BigRational, GaussianRational};
use crate::polynomials::{monomial_basis, GradedSeries, HomPoly, LinearChange};
use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

/// Small random rational with numerator in `[-9, 9]` and denominator in
/// `[1, 4]`.
pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    rational(rng.random_range(-9..=9), rng.random_range(1..=4))
}

pub fn random_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    Complex::new(random_rational(rng), random_rational(rng))
}

pub fn random_real_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    Complex::new(random_rational(rng), BigRational::zero())
}

fn random_poly_with<R: Rng>(
    n: usize,
    degree: usize,
    rng: &mut R,
    coeff: fn(&mut R) -> GaussianRational,
) -> HomPoly {
    loop {
        let mut terms = Vec::new();
        for alpha in monomial_basis(n, degree) {
            if rng.random_range(0..10) < 7 {
                terms.push((alpha, coeff(rng)));
            }
        }
        let poly = HomPoly::from_terms(n, degree, terms);
        if !poly.is_zero() {
            return poly;
        }
    }
}

/// Nonzero homogeneous polynomial with small complex rational coefficients.
pub fn random_hompoly<R: Rng>(n: usize, degree: usize, rng: &mut R) -> HomPoly {
    random_poly_with(n, degree, rng, random_gaussian)
}

/// Nonzero homogeneous polynomial with real rational coefficients.
pub fn random_real_hompoly<R: Rng>(n: usize, degree: usize, rng: &mut R) -> HomPoly {
    random_poly_with(n, degree, rng, random_real_gaussian)
}

/// Nonzero harmonic polynomial of the given degree: the top Gauss component
/// of a random polynomial. Requires `n ≥ 2` for degrees `≥ 2` (in one
/// variable only degrees 0 and 1 admit harmonics).
pub fn random_harmonic<R: Rng>(n: usize, degree: usize, rng: &mut R) -> HomPoly {
    assert!(
        n >= 2 || degree <= 1,
        "no nonzero harmonics of degree ≥ 2 in one variable"
    );
    loop {
        let f = random_hompoly(n, degree, rng);
        let h = harmonic::gauss_decompose(&f).harmonic_part(0);
        if !h.is_zero() {
            return h;
        }
    }
}

/// Random invertible change of variables with small rational entries.
pub fn random_invertible_change<R: Rng>(n: usize, rng: &mut R) -> LinearChange {
    loop {
        let entries: Vec<GaussianRational> = (0..n * n).map(|_| random_gaussian(rng)).collect();
        if let Ok(change) = LinearChange::new(n, entries) {
            return change;
        }
    }
}

/// Random series with parts at every degree up to `parts_degree`, carried to
/// the given cutoff.
pub fn random_series<R: Rng>(
    n: usize,
    parts_degree: usize,
    cutoff: usize,
    rng: &mut R,
) -> GradedSeries {
    assert!(parts_degree <= cutoff);
    let mut s = GradedSeries::zero(n, cutoff);
    for m in 0..=parts_degree {
        s.set_part(random_hompoly(n, m, rng));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampling_is_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        assert_eq!(random_hompoly(3, 5, &mut a), random_hompoly(3, 5, &mut b));
        assert_eq!(
            random_invertible_change(2, &mut a),
            random_invertible_change(2, &mut b)
        );
    }

    #[test]
    fn random_harmonics_are_harmonic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for degree in 1..=8 {
            let h = random_harmonic(2, degree, &mut rng);
            assert!(h.laplacian().is_zero());
            assert_eq!(h.degree(), degree);
            let h3 = random_harmonic(3, degree, &mut rng);
            assert!(h3.laplacian().is_zero());
        }
    }
}
