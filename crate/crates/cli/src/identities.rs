//! Built-in exact identity suites. Every check is a decidable rational
//! assertion; a failing case is reported with the concrete instance so it
//! can be replayed.

use fischer_cauchy::fischer::{fischer_inner, norm_sq_f, norm_sq_rf, real_fischer_inner};
use fischer_cauchy::harmonic::{delta_power_radial, eigenvalue_d, min_eigenvalue_e};
use fischer_cauchy::numerics::{moment_ratio, radial_moment, rational, BigRational};
use fischer_cauchy::polynomials::{HomPoly, MultiIndex};
use fischer_cauchy::sampling;
use num_traits::Zero;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSize {
    Small,
    Default,
    Large,
}

impl GridSize {
    pub fn parse(name: &str) -> Option<GridSize> {
        match name {
            "small" => Some(GridSize::Small),
            "default" => Some(GridSize::Default),
            "large" => Some(GridSize::Large),
            _ => None,
        }
    }

    fn params(self) -> GridParams {
        match self {
            GridSize::Small => GridParams {
                moment_limit: 4,
                samples: 6,
                max_degree: 5,
                p_max: 2,
                s_max: 2,
            },
            GridSize::Default => GridParams {
                moment_limit: 6,
                samples: 20,
                max_degree: 8,
                p_max: 3,
                s_max: 3,
            },
            GridSize::Large => GridParams {
                moment_limit: 8,
                samples: 50,
                max_degree: 10,
                p_max: 3,
                s_max: 3,
            },
        }
    }
}

struct GridParams {
    moment_limit: usize,
    samples: usize,
    max_degree: usize,
    p_max: usize,
    s_max: usize,
}

pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Moment-ratio identity: the closed product equals the exact quotient of
/// radial moments on the whole grid.
fn moment_ratio_suite(limit: usize) -> SuiteResult {
    let mut suite = SuiteResult::new("moment-ratio-identity");
    for m in 1..=limit {
        for k in 1..=limit {
            for j in 1..=limit {
                for n in 1..=limit {
                    let closed = moment_ratio(m, k, j, n);
                    let quotient = radial_moment(2 * m + 2 * j * k + n - 1)
                        .ratio_to(&radial_moment(2 * m + n - 1));
                    suite.check(quotient.as_ref() == Some(&closed), || {
                        format!(
                            "m={m} k={k} j={j} n={n}: product {closed} vs quotient {quotient:?}"
                        )
                    });
                }
            }
        }
    }
    suite
}

/// `⟨Δf, f⟩_F = 0` and `⟨Δf, f⟩_rF ≥ 0`.
fn laplacian_orthogonality_suite(params: &GridParams, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut suite = SuiteResult::new("laplacian-fischer-orthogonality");
    for n in 2..=3usize {
        for degree in 2..=params.max_degree {
            for _ in 0..params.samples {
                let f = sampling::random_hompoly(n, degree, rng);
                let apolar = fischer_inner(&f.laplacian(), &f);
                let gaussian = real_fischer_inner(&f.laplacian(), &f).expect_real();
                suite.check(apolar.is_zero() && gaussian >= BigRational::zero(), || {
                    format!("n={n} deg={degree} f={f}: apolar={apolar} gaussian={gaussian}")
                });
            }
        }
    }
    suite
}

/// `‖D^α f‖² ≤ m^{|α|}·‖f‖²` (apolar) and `≤ (2m)^{|α|}·‖f‖²` (Gaussian).
fn derivative_bound_suite(params: &GridParams, rng: &mut ChaCha8Rng) -> SuiteResult {
    use rand::Rng;
    let mut suite = SuiteResult::new("derivative-norm-bounds");
    for n in 2..=3usize {
        for degree in 1..=params.max_degree {
            for _ in 0..params.samples {
                let f = sampling::random_hompoly(n, degree, rng);
                let order = rng.random_range(1..=2usize.min(degree));
                let mut exps = vec![0usize; n];
                for _ in 0..order {
                    exps[rng.random_range(0..n)] += 1;
                }
                let alpha = MultiIndex::new(exps);
                let df = f.differentiate(&alpha);
                let e = order as i32;
                let apolar_ok = norm_sq_f(&df) <= rational(degree as i64, 1).pow(e) * norm_sq_f(&f);
                let gaussian_ok = norm_sq_rf(&df).expect_real()
                    <= rational(2 * degree as i64, 1).pow(e) * norm_sq_rf(&f).expect_real();
                suite.check(apolar_ok && gaussian_ok, || {
                    format!("n={n} deg={degree} alpha={alpha:?} f={f}")
                });
            }
        }
    }
    suite
}

/// Equality case of the radial multiplier bound:
/// `‖|x|^{2k}·f‖²_rF = (I_{2m+4k+n-1}/I_{2m+n-1})·‖f‖²_rF`.
fn radial_multiplier_suite(params: &GridParams, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut suite = SuiteResult::new("radial-multiplier-norm-ratio");
    for n in 2..=3usize {
        for degree in 0..=params.max_degree.min(6) {
            for k in 1..=2usize {
                for _ in 0..params.samples.div_ceil(2) {
                    let f = sampling::random_hompoly(n, degree, rng);
                    let lhs = norm_sq_rf(&HomPoly::radial_power(n, k).multiply(&f)).expect_real();
                    let ratio = radial_moment(2 * degree + 4 * k + n - 1)
                        .ratio_to(&radial_moment(2 * degree + n - 1))
                        .expect("same parity");
                    let rhs = ratio * norm_sq_rf(&f).expect_real();
                    suite.check(lhs == rhs, || {
                        format!("n={n} deg={degree} k={k} f={f}: lhs={lhs} rhs={rhs}")
                    });
                }
            }
        }
    }
    suite
}

/// `‖Δ^p(|x|^{2p}·f_m)‖²_rF ≥ e_{p,m}²·‖f_m‖²_rF`.
fn iterated_laplacian_suite(params: &GridParams, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut suite = SuiteResult::new("iterated-laplacian-lower-bound");
    for n in 2..=3usize {
        for degree in 0..=params.max_degree {
            for p in 1..=params.p_max.min(2) {
                for _ in 0..params.samples.div_ceil(2) {
                    let f = sampling::random_hompoly(n, degree, rng);
                    let lhs = norm_sq_rf(&delta_power_radial(&f, p)).expect_real();
                    let e = min_eigenvalue_e(p, degree, n);
                    let rhs = &e * &e * norm_sq_rf(&f).expect_real();
                    suite.check(lhs >= rhs, || {
                        format!("n={n} deg={degree} p={p} f={f}: lhs={lhs} rhs={rhs}")
                    });
                }
            }
        }
    }
    suite
}

/// `Δ^p(|x|^{2s+2p}·Y) = d_p(s, deg Y)·|x|^{2s}·Y` on random harmonics.
fn radial_eigen_suite(params: &GridParams, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut suite = SuiteResult::new("radial-eigen-identity");
    for n in 2..=3usize {
        for degree in 0..=params.max_degree.min(6) {
            for s in 0..=params.s_max {
                for p in 1..=params.p_max {
                    let y = if degree == 0 {
                        HomPoly::one(n)
                    } else {
                        sampling::random_harmonic(n, degree, rng)
                    };
                    let input = HomPoly::radial_power(n, s).multiply(&y);
                    let expected = input.scale_rational(&eigenvalue_d(p, s, degree, n));
                    let actual = delta_power_radial(&input, p);
                    suite.check(actual == expected, || {
                        format!("n={n} deg={degree} s={s} p={p} Y={y}")
                    });
                }
            }
        }
    }
    suite
}

pub fn run_all(grid: GridSize, seed: u64) -> Vec<SuiteResult> {
    let params = grid.params();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        moment_ratio_suite(params.moment_limit),
        laplacian_orthogonality_suite(&params, &mut rng),
        derivative_bound_suite(&params, &mut rng),
        radial_multiplier_suite(&params, &mut rng),
        iterated_laplacian_suite(&params, &mut rng),
        radial_eigen_suite(&params, &mut rng),
    ]
}
