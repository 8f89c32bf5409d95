//! Exact scalar arithmetic: arbitrary-precision rationals, Gaussian
//! rationals, and the radial Gaussian moments `I_m = ∫_0^∞ e^{-r²} r^m dr`.
//!
//! Every quantity here is exact. Values involving `√π` carry the half-power
//! symbolically in [`SqrtPiScaled`] so that same-parity moment ratios reduce
//! to plain rationals.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub use num_rational::BigRational;

/// Exact complex number with rational real and imaginary parts. The
/// coefficient field for every polynomial in this crate.
pub type GaussianRational = Complex<BigRational>;

/// Rational from an integer numerator/denominator pair.
///
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Gaussian rational `re_num/re_den + (im_num/im_den)·i`.
pub fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussianRational {
    Complex::new(rational(re_num, re_den), rational(im_num, im_den))
}

/// Real Gaussian rational `num/den`.
pub fn gaussian_real(num: i64, den: i64) -> GaussianRational {
    Complex::new(rational(num, den), BigRational::zero())
}

/// Gaussian rational from an integer.
pub fn gaussian_int(value: i64) -> GaussianRational {
    gaussian_real(value, 1)
}

/// `n!` as an exact big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)` as an exact big integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Number of monomials of total degree `m` in `n` variables,
/// `C(m + n - 1, n - 1)`.
pub fn monomial_count(n: usize, m: usize) -> usize {
    assert!(n >= 1, "dimension must be at least 1");
    binomial(m + n - 1, n - 1)
        .to_usize()
        .expect("monomial count overflows usize")
}

/// An exact value of the form `rational · π^(sqrt_pi_power/2)`.
///
/// Zero is normalized to `sqrt_pi_power = 0` so that equality is decidable
/// by field comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtPiScaled {
    rational: BigRational,
    sqrt_pi_power: usize,
}

impl SqrtPiScaled {
    pub fn new(rational: BigRational, sqrt_pi_power: usize) -> Self {
        if rational.is_zero() {
            SqrtPiScaled {
                rational,
                sqrt_pi_power: 0,
            }
        } else {
            SqrtPiScaled {
                rational,
                sqrt_pi_power,
            }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn sqrt_pi_power(&self) -> usize {
        self.sqrt_pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn mul(&self, other: &SqrtPiScaled) -> SqrtPiScaled {
        SqrtPiScaled::new(
            &self.rational * &other.rational,
            self.sqrt_pi_power + other.sqrt_pi_power,
        )
    }

    pub fn scale(&self, factor: &BigRational) -> SqrtPiScaled {
        SqrtPiScaled::new(&self.rational * factor, self.sqrt_pi_power)
    }

    /// Exact quotient. `None` when `other` is zero or the `√π` power of the
    /// quotient would be negative.
    pub fn checked_div(&self, other: &SqrtPiScaled) -> Option<SqrtPiScaled> {
        if other.is_zero() || self.sqrt_pi_power < other.sqrt_pi_power {
            return None;
        }
        Some(SqrtPiScaled::new(
            &self.rational / &other.rational,
            self.sqrt_pi_power - other.sqrt_pi_power,
        ))
    }

    /// Exact rational quotient `self / other`; defined only when both carry
    /// the same `√π` power (always the case for same-parity moment indices).
    pub fn ratio_to(&self, other: &SqrtPiScaled) -> Option<BigRational> {
        if other.is_zero() || self.sqrt_pi_power != other.sqrt_pi_power {
            return None;
        }
        Some(&self.rational / &other.rational)
    }

    /// Floating-point value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        r * std::f64::consts::PI.powf(self.sqrt_pi_power as f64 / 2.0)
    }
}

impl fmt::Display for SqrtPiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt_pi_power == 0 {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{}*pi^({}/2)", self.rational, self.sqrt_pi_power)
        }
    }
}

/// The radial Gaussian moment `I_m = ∫_0^∞ e^{-r²} r^m dr`, exactly:
/// `(√π/2)·(2k)!/(k!·4^k)` for `m = 2k` and `k!/2` for `m = 2k + 1`.
pub fn radial_moment(m: usize) -> SqrtPiScaled {
    if m.is_multiple_of(2) {
        let k = m / 2;
        let num = factorial(2 * k);
        let den = factorial(k) * BigInt::from(2) * BigInt::from(4).pow(k as u32);
        SqrtPiScaled::new(BigRational::new(num, den), 1)
    } else {
        let k = (m - 1) / 2;
        SqrtPiScaled::new(BigRational::new(factorial(k), BigInt::from(2)), 0)
    }
}

/// The exact moment ratio `I_{2m+2jk+n-1} / I_{2m+n-1}`, computed through the
/// closed product `(1/2^{jk})·(n+2m)(n+2m+2)···(n+2m+2jk-2)`.
///
/// All four arguments must be positive.
pub fn moment_ratio(m: usize, k: usize, j: usize, n: usize) -> BigRational {
    assert!(
        m >= 1 && k >= 1 && j >= 1 && n >= 1,
        "moment_ratio arguments must be positive"
    );
    let jk = j * k;
    let mut num = BigInt::one();
    for t in 0..jk {
        num *= BigInt::from(n + 2 * m + 2 * t);
    }
    BigRational::new(num, BigInt::from(2).pow(jk as u32))
}

/// Upper bound `|re| + |im|` on the modulus, as an exact rational.
pub fn modulus_bound(value: &GaussianRational) -> BigRational {
    value.re.abs() + value.im.abs()
}

/// Lossy conversion for diagnostics.
pub fn rational_to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Fall back to a log-scaled conversion when numerator or denominator
        // exceeds the f64 range.
        let (num, den) = (value.numer(), value.denom());
        let sign = if num.is_negative() { -1.0 } else { 1.0 };
        sign * (big_ln(&num.abs()) - big_ln(&den.abs())).exp()
    })
}

/// Natural log of a positive big integer, stable for values far beyond the
/// f64 range.
pub fn big_ln(value: &BigInt) -> f64 {
    assert!(value.is_positive(), "big_ln requires a positive argument");
    let bits = value.bits();
    if bits <= 52 {
        return value.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 52;
    let top: BigInt = value >> shift;
    top.to_f64().expect("fits in f64").ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn rational_ln(value: &BigRational) -> f64 {
    assert!(
        value.is_positive(),
        "rational_ln requires a positive argument"
    );
    big_ln(value.numer()) - big_ln(value.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(26, 2), BigInt::from(325));
        assert_eq!(binomial(4, 7), BigInt::zero());
        assert_eq!(monomial_count(3, 24), 325);
        assert_eq!(monomial_count(2, 5), 6);
        assert_eq!(monomial_count(1, 9), 1);
    }

    #[test]
    fn radial_moment_small_values() {
        // I_0 = √π/2
        let i0 = radial_moment(0);
        assert_eq!(i0.rational_part(), &rational(1, 2));
        assert_eq!(i0.sqrt_pi_power(), 1);
        // I_1 = 1/2
        let i1 = radial_moment(1);
        assert_eq!(i1.rational_part(), &rational(1, 2));
        assert_eq!(i1.sqrt_pi_power(), 0);
        // I_4 = (3/8)·√π
        let i4 = radial_moment(4);
        assert_eq!(i4.rational_part(), &rational(3, 8));
        assert_eq!(i4.sqrt_pi_power(), 1);
    }

    #[test]
    fn radial_moment_recurrence() {
        // Integration by parts: I_{m+2} = ((m+1)/2)·I_m.
        for m in 0..=40 {
            let lhs = radial_moment(m + 2);
            let rhs = radial_moment(m).scale(&rational((m + 1) as i64, 2));
            assert_eq!(lhs, rhs, "recurrence fails at m={m}");
        }
    }

    #[test]
    fn moment_ratio_examples() {
        // I_5/I_3 = (2!/2)/(1!/2) = 2.
        assert_eq!(moment_ratio(1, 1, 1, 2), rational(2, 1));
        let quotient = radial_moment(5).ratio_to(&radial_moment(3)).unwrap();
        assert_eq!(quotient, rational(2, 1));

        // I_6/I_4 = (1/2)(3 + 2) = 5/2, confirmed by the brute-force quotient.
        assert_eq!(moment_ratio(1, 1, 1, 3), rational(5, 2));
        let quotient = radial_moment(6).ratio_to(&radial_moment(4)).unwrap();
        assert_eq!(quotient, rational(5, 2));
    }

    #[test]
    fn moment_ratio_matches_quotient_on_grid() {
        for m in 1..=6 {
            for k in 1..=6 {
                for j in 1..=6 {
                    for n in 1..=6 {
                        let closed = moment_ratio(m, k, j, n);
                        let num = radial_moment(2 * m + 2 * j * k + n - 1);
                        let den = radial_moment(2 * m + n - 1);
                        let quotient = num
                            .ratio_to(&den)
                            .expect("same-parity indices share the √π power");
                        assert_eq!(closed, quotient, "mismatch at m={m} k={k} j={j} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn sqrt_pi_scaled_algebra() {
        let a = SqrtPiScaled::new(rational(1, 2), 1);
        let b = SqrtPiScaled::new(rational(3, 4), 1);
        let prod = a.mul(&b);
        assert_eq!(prod.rational_part(), &rational(3, 8));
        assert_eq!(prod.sqrt_pi_power(), 2);
        let quot = prod.checked_div(&b).unwrap();
        assert_eq!(quot, a);
        // Quotient with larger divisor power is not representable.
        assert!(a.checked_div(&prod).is_none());
        // Zero normalizes its power away.
        let zero = SqrtPiScaled::new(BigRational::zero(), 3);
        assert_eq!(zero.sqrt_pi_power(), 0);
        assert!(zero.is_zero());
    }

    #[test]
    fn big_ln_matches_f64_for_moderate_values() {
        let x = BigInt::from(1_000_000_007i64);
        assert!((big_ln(&x) - 1_000_000_007f64.ln()).abs() < 1e-9);
        let huge = BigInt::from(7).pow(700);
        let expected = 700.0 * 7f64.ln();
        assert!((big_ln(&huge) - expected).abs() < 1e-6);
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rational(n, d))
    }

    fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
        (arb_rational(), arb_rational()).prop_map(|(re, im)| Complex::new(re, im))
    }

    proptest! {
        #[test]
        fn gaussian_field_axioms(a in arb_gaussian(), b in arb_gaussian(), c in arb_gaussian()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !b.is_zero() {
                prop_assert_eq!(&a * &b / &b, a.clone());
            }
        }

        #[test]
        fn conjugation_is_involutive_automorphism(a in arb_gaussian(), b in arb_gaussian()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
            prop_assert_eq!((&a + &b).conj(), a.conj() + b.conj());
            let norm = (&a * a.conj()).re;
            prop_assert!(norm >= BigRational::zero());
            prop_assert_eq!(norm, a.norm_sqr());
        }
    }
}
