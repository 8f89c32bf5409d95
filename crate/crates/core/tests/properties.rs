//! Cross-module algebraic properties on randomized inputs. Polynomials are
//! generated from proptest-driven seeds through the crate's own sampling
//! streams, so failures shrink to a reproducible (seed, shape) pair.

use fischer_cauchy::fischer::{fischer_inner, norm_sq_rf, real_fischer_inner};
use fischer_cauchy::numerics::gaussian_int;
use fischer_cauchy::polynomials::HomPoly;
use fischer_cauchy::sampling;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(seed: u64, n: usize, degree: usize) -> HomPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sampling::random_hompoly(n, degree, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_commutative_and_associative(
        seed in any::<u64>(),
        n in 2usize..=3,
        (da, db, dc) in (0usize..=4, 0usize..=4, 0usize..=3),
    ) {
        let f = poly(seed, n, da);
        let g = poly(seed.wrapping_add(1), n, db);
        let h = poly(seed.wrapping_add(2), n, dc);
        prop_assert_eq!(f.multiply(&g), g.multiply(&f));
        prop_assert_eq!(f.multiply(&g).multiply(&h), f.multiply(&g.multiply(&h)));
    }

    #[test]
    fn differentiation_is_additive(
        seed in any::<u64>(),
        n in 2usize..=3,
        degree in 1usize..=6,
        var in 0usize..=2,
    ) {
        let var = var % n;
        let f = poly(seed, n, degree);
        let g = poly(seed.wrapping_add(7), n, degree);
        prop_assert_eq!(
            f.add(&g).partial(var),
            f.partial(var).add(&g.partial(var))
        );
    }

    #[test]
    fn symbol_application_is_bilinear(
        seed in any::<u64>(),
        n in 2usize..=3,
        qdeg in 0usize..=2,
        extra in 0usize..=4,
    ) {
        let fdeg = qdeg + extra;
        let q1 = poly(seed, n, qdeg);
        let q2 = poly(seed.wrapping_add(11), n, qdeg);
        let f = poly(seed.wrapping_add(13), n, fdeg);
        let g = poly(seed.wrapping_add(17), n, fdeg);
        // Linear in the symbol.
        prop_assert_eq!(
            HomPoly::apply_symbol(&q1.add(&q2), &f),
            HomPoly::apply_symbol(&q1, &f).add(&HomPoly::apply_symbol(&q2, &f))
        );
        // Linear in the argument.
        prop_assert_eq!(
            HomPoly::apply_symbol(&q1, &f.add(&g)),
            HomPoly::apply_symbol(&q1, &f).add(&HomPoly::apply_symbol(&q1, &g))
        );
        // Scalars pass through.
        let c = gaussian_int(3);
        prop_assert_eq!(
            HomPoly::apply_symbol(&q1, &f.scale(&c)),
            HomPoly::apply_symbol(&q1, &f).scale(&c)
        );
    }

    #[test]
    fn inner_products_are_hermitian(
        seed in any::<u64>(),
        n in 2usize..=3,
        degree in 0usize..=5,
    ) {
        let f = poly(seed, n, degree);
        let g = poly(seed.wrapping_add(23), n, degree);
        prop_assert_eq!(fischer_inner(&f, &g), fischer_inner(&g, &f).conj());
        prop_assert_eq!(
            real_fischer_inner(&f, &g).rational_part().clone(),
            real_fischer_inner(&g, &f).rational_part().conj()
        );
        prop_assert!(!norm_sq_rf(&f).is_zero());
    }

    #[test]
    fn zero_polynomials_absorb(
        seed in any::<u64>(),
        n in 2usize..=3,
        degree in 0usize..=5,
    ) {
        let f = poly(seed, n, degree);
        let zero = HomPoly::zero(n, degree);
        prop_assert_eq!(f.add(&zero), f.clone());
        prop_assert!(f.multiply(&HomPoly::zero(n, 2)).is_zero());
        prop_assert!(f.sub(&f).is_zero());
    }
}
