//! Gauss decomposition of homogeneous polynomials into harmonic components
//! and the exact eigenstructure of the operator `q ↦ Δ^p(|x|^{2p}·q)`.

use crate::numerics::{radial_moment, BigRational};
use crate::polynomials::HomPoly;
use num_bigint::BigInt;
use num_traits::One;

/// The decomposition `f_m = Σ_s |x|^{2s}·h_{m-2s}` with every `h_{m-2s}`
/// harmonic of degree `m - 2s`, for `s = 0..⌊m/2⌋`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussDecomposition {
    n: usize,
    degree: usize,
    components: Vec<(usize, HomPoly)>,
}

impl GaussDecomposition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// All components `(s, h_{m-2s})`, in increasing `s`, zeros included.
    pub fn components(&self) -> &[(usize, HomPoly)] {
        &self.components
    }

    /// The harmonic component at radial power `s` (zero polynomial when the
    /// component vanishes).
    pub fn harmonic_part(&self, s: usize) -> HomPoly {
        self.components
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, h)| h.clone())
            .unwrap_or_else(|| HomPoly::zero(self.n, self.degree.saturating_sub(2 * s)))
    }

    /// `Σ_s |x|^{2s}·h_{m-2s}`, which reproduces the input exactly.
    pub fn reconstruct(&self) -> HomPoly {
        let mut acc = HomPoly::zero(self.n, self.degree);
        for (s, h) in &self.components {
            if h.is_zero() {
                continue;
            }
            acc = acc.add(&HomPoly::radial_power(self.n, *s).multiply(h));
        }
        acc
    }
}

/// The constant in `Δ(|x|^{2s}·h) = 2s·(2s - 2 + 2·deg h + n)·|x|^{2s-2}·h`
/// for harmonic `h`; zero when `s = 0`.
pub fn laplacian_radial_constant(s: usize, deg_h: usize, n: usize) -> BigRational {
    let factor = 2 * (s as i64) - 2 + 2 * (deg_h as i64) + n as i64;
    BigRational::from(BigInt::from(2 * s as i64) * BigInt::from(factor))
}

/// Constant produced by `Δ^j` acting on `|x|^{2s}·h` with `deg h = d`:
/// the product of the radial constants at powers `s, s-1, …, s-j+1`.
fn iterated_laplacian_constant(s: usize, j: usize, d: usize, n: usize) -> BigRational {
    assert!(j <= s);
    (0..j)
        .map(|i| laplacian_radial_constant(s - i, d, n))
        .fold(BigRational::one(), |a, b| a * b)
}

/// Exact Gauss decomposition, computed from the triangular system formed by
/// the iterated Laplacians `Δ^j f` for `j = ⌊m/2⌋` down to `0`: the top
/// power determines `h_{m-2⌊m/2⌋}` directly and each lower component follows
/// by back-substitution. No generic linear solve is involved.
#[allow(clippy::needless_range_loop)]
pub fn gauss_decompose(f: &HomPoly) -> GaussDecomposition {
    let n = f.n();
    let m = f.degree();
    let cap = m / 2;

    let mut lap_powers = Vec::with_capacity(cap + 1);
    lap_powers.push(f.clone());
    for j in 1..=cap {
        let next = lap_powers[j - 1].laplacian();
        lap_powers.push(next);
    }

    let mut harmonics: Vec<Option<HomPoly>> = vec![None; cap + 1];
    for s in (0..=cap).rev() {
        // Δ^s f = c(s,s)·h_{m-2s} + Σ_{t>s} c(t,s)·|x|^{2(t-s)}·h_{m-2t}
        let mut residual = lap_powers[s].clone();
        for t in (s + 1)..=cap {
            let h_t = harmonics[t].as_ref().expect("filled in decreasing order");
            if h_t.is_zero() {
                continue;
            }
            let constant = iterated_laplacian_constant(t, s, m - 2 * t, n);
            let term = HomPoly::radial_power(n, t - s)
                .multiply(h_t)
                .scale_rational(&constant);
            residual = residual.sub(&term);
        }
        let diagonal = iterated_laplacian_constant(s, s, m - 2 * s, n);
        harmonics[s] = Some(residual.scale_rational(&(BigRational::one() / diagonal)));
    }

    GaussDecomposition {
        n,
        degree: m,
        components: harmonics
            .into_iter()
            .enumerate()
            .map(|(s, h)| (s, h.expect("all components filled")))
            .collect(),
    }
}

/// The eigenvalue `d_p(s, m)` of `q ↦ Δ^p(|x|^{2p}·q)` on `|x|^{2s}·h` with
/// `deg h = m`:
/// `2^p·(s+p)···(s+1)·(2s+2p-2+n+2m)···(2s+n+2m)` (p factors in each
/// descending product).
pub fn eigenvalue_d(p: usize, s: usize, m: usize, n: usize) -> BigRational {
    assert!(p >= 1, "p must be at least 1");
    let mut acc = BigInt::from(2).pow(p as u32);
    for i in 1..=p {
        acc *= BigInt::from(s + i);
    }
    for i in 0..p {
        acc *= BigInt::from(2 * s + n + 2 * m + 2 * i);
    }
    BigRational::from(acc)
}

/// The smallest eigenvalue `e_{p,m} = 2^p·p!·(2m+n)(2m+n+2)···(2m+n+2(p-1))`
/// of `q ↦ Δ^p(|x|^{2p}·q)` on degree-`m` polynomials; equals
/// `eigenvalue_d(p, 0, m, n)`.
pub fn min_eigenvalue_e(p: usize, m: usize, n: usize) -> BigRational {
    eigenvalue_d(p, 0, m, n)
}

/// `Δ^p(|x|^{2p}·q)`, exactly; preserves the degree of `q`.
pub fn delta_power_radial(q: &HomPoly, p: usize) -> HomPoly {
    assert!(p >= 1, "p must be at least 1");
    let mut acc = HomPoly::radial_power(q.n(), p).multiply(q);
    for _ in 0..p {
        acc = acc.laplacian();
    }
    acc
}

/// `e_{p,m}` expressed through radial moments:
/// `2^{2p}·p!·I_{2m+2p+n-1}/I_{2m+n-1}`.
pub fn min_eigenvalue_via_moments(p: usize, m: usize, n: usize) -> BigRational {
    let ratio = radial_moment(2 * m + 2 * p + n - 1)
        .ratio_to(&radial_moment(2 * m + n - 1))
        .expect("same-parity moment indices");
    BigRational::from(BigInt::from(2).pow(2 * p as u32) * crate::numerics::factorial(p)) * ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fischer::norm_sq_rf;
    use crate::numerics::{gaussian_int, gaussian_real, rational};
    use crate::polynomials::MultiIndex;
    use crate::sampling;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn laplacian_radial_constant_examples() {
        assert_eq!(laplacian_radial_constant(1, 0, 2), rational(4, 1));
        assert_eq!(laplacian_radial_constant(0, 5, 3), rational(0, 1));
        assert_eq!(laplacian_radial_constant(2, 0, 2), rational(16, 1));
        // Matches Δ|x|⁴ = 16|x|² by direct expansion in n = 2.
        let direct = HomPoly::radial_power(2, 2).laplacian();
        assert_eq!(direct, HomPoly::sigma(2).scale(&gaussian_int(16)));
    }

    #[test]
    fn decompose_x1_squared() {
        // x₁² = (x₁² - x₂²)/2 + |x|²·(1/2) in n = 2.
        let f = HomPoly::monomial(2, MultiIndex::new(vec![2, 0]), gaussian_int(1));
        let d = gauss_decompose(&f);
        let h2 = HomPoly::from_terms(
            2,
            2,
            vec![
                (MultiIndex::new(vec![2, 0]), gaussian_real(1, 2)),
                (MultiIndex::new(vec![0, 2]), gaussian_real(-1, 2)),
            ],
        );
        assert_eq!(d.harmonic_part(0), h2);
        assert_eq!(
            d.harmonic_part(1),
            HomPoly::constant(2, gaussian_real(1, 2))
        );
        assert_eq!(d.reconstruct(), f);
    }

    #[test]
    fn decompose_harmonic_is_single_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let h = sampling::random_harmonic(2, 5, &mut rng);
        let d = gauss_decompose(&h);
        assert_eq!(d.harmonic_part(0), h);
        for (s, comp) in d.components() {
            if *s > 0 {
                assert!(comp.is_zero());
            }
        }
    }

    #[test]
    fn decompose_radial_square() {
        // |x|² = |x|²·1 + 0 in n = 2.
        let f = HomPoly::sigma(2);
        let d = gauss_decompose(&f);
        assert!(d.harmonic_part(0).is_zero());
        assert_eq!(d.harmonic_part(1), HomPoly::one(2));
    }

    #[test]
    fn reconstruction_and_harmonicity_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..40 {
            let n = rng.random_range(2..=3);
            let m = rng.random_range(0..=10);
            let f = sampling::random_hompoly(n, m, &mut rng);
            let d = gauss_decompose(&f);
            assert_eq!(d.reconstruct(), f);
            for (s, h) in d.components() {
                assert!(h.laplacian().is_zero(), "component s={s} not harmonic");
            }
            // Uniqueness: re-decomposing the reconstruction gives identical
            // components.
            let again = gauss_decompose(&d.reconstruct());
            assert_eq!(&again, &d);
        }
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue_d(1, 0, 2, 2), rational(12, 1));
        assert_eq!(eigenvalue_d(1, 0, 0, 2), rational(4, 1));
        assert_eq!(eigenvalue_d(2, 0, 0, 2), rational(64, 1));
        // Direct check: Δ|x|⁴ = 16|x|² in n = 2, so the radial line |x|²·1
        // carries eigenvalue 16.
        assert_eq!(eigenvalue_d(1, 1, 0, 2), rational(16, 1));
        assert_eq!(min_eigenvalue_e(1, 0, 2), rational(4, 1));
        assert_eq!(min_eigenvalue_e(2, 0, 2), rational(64, 1));
        assert_eq!(min_eigenvalue_e(1, 3, 3), rational(18, 1));
        // Cross-check through the radial moments.
        assert_eq!(min_eigenvalue_via_moments(1, 3, 3), rational(18, 1));
    }

    #[test]
    fn operator_examples() {
        let n = 2;
        // q = x₁² - x₂² (harmonic), p = 1 → 12·q.
        let q = HomPoly::from_terms(
            n,
            2,
            vec![
                (MultiIndex::new(vec![2, 0]), gaussian_int(1)),
                (MultiIndex::new(vec![0, 2]), gaussian_int(-1)),
            ],
        );
        assert_eq!(delta_power_radial(&q, 1), q.scale(&gaussian_int(12)));
        // q = 1, p = 2 → 64.
        assert_eq!(
            delta_power_radial(&HomPoly::one(n), 2),
            HomPoly::constant(n, gaussian_int(64))
        );
        // q = 0 → 0.
        assert!(delta_power_radial(&HomPoly::zero(n, 3), 1).is_zero());
    }

    #[test]
    fn eigen_identity_on_random_harmonics() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let n = rng.random_range(2..=3);
            let deg = rng.random_range(0..=6);
            let s = rng.random_range(0..=3);
            let p = rng.random_range(1..=3);
            let y = if deg == 0 {
                HomPoly::one(n)
            } else {
                sampling::random_harmonic(n, deg, &mut rng)
            };
            let input = HomPoly::radial_power(n, s).multiply(&y);
            let expected = input.scale_rational(&eigenvalue_d(p, s, deg, n));
            assert_eq!(delta_power_radial(&input, p), expected);
        }
    }

    #[test]
    fn lowest_eigenvalue_is_attained_at_s_zero() {
        for n in 1..=4 {
            for p in 1..=3 {
                for m in 0..=12 {
                    let e = min_eigenvalue_e(p, m, n);
                    let min_d = (0..=m / 2)
                        .map(|s| eigenvalue_d(p, s, m - 2 * s, n))
                        .min()
                        .unwrap();
                    assert_eq!(e, min_d, "n={n} p={p} m={m}");
                    assert_eq!(e, min_eigenvalue_via_moments(p, m, n));
                }
            }
        }
    }

    #[test]
    fn iterated_laplacian_norm_lower_bound() {
        // ‖Δ^p(|x|^{2p}·f_m)‖²_rF ≥ e_{p,m}²·‖f_m‖²_rF, exactly.
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..30 {
            let n = rng.random_range(2..=3);
            let m = rng.random_range(0..=10);
            let p = rng.random_range(1..=2);
            let f = sampling::random_hompoly(n, m, &mut rng);
            let lhs = norm_sq_rf(&delta_power_radial(&f, p)).expect_real();
            let e = min_eigenvalue_e(p, m, n);
            let rhs = &e * &e * norm_sq_rf(&f).expect_real();
            assert!(lhs >= rhs, "n={n} m={m} p={p}");
        }
    }

    #[test]
    fn distinct_degree_harmonics_are_rf_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..25 {
            let n = rng.random_range(2..=3);
            let a = rng.random_range(1..=6);
            let mut b = rng.random_range(1..=6);
            if a == b {
                b = a + 2;
            }
            let ha = sampling::random_harmonic(n, a, &mut rng);
            let hb = sampling::random_harmonic(n, b, &mut rng);
            assert!(crate::fischer::real_fischer_inner(&ha, &hb).is_zero());
        }
    }
}
