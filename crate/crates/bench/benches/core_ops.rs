use criterion::{criterion_group, criterion_main, Criterion};
use fischer_cauchy::fischer::{norm_sq_rf, sphere_max_estimate};
use fischer_cauchy::harmonic::gauss_decompose;
use fischer_cauchy::numerics::gaussian_int;
use fischer_cauchy::polynomials::{GradedSeries, HomPoly, MultiIndex};
use fischer_cauchy::sampling;
use fischer_cauchy::solver::{assemble_degree_map, solve_series, OperatorSpec, Problem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn quartic_divisor() -> HomPoly {
    HomPoly::from_terms(
        2,
        4,
        vec![
            (MultiIndex::new(vec![4, 0]), gaussian_int(1)),
            (MultiIndex::new(vec![0, 4]), gaussian_int(1)),
        ],
    )
}

fn bench_gauss_decompose(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = sampling::random_hompoly(3, 12, &mut rng);
    c.bench_function("gauss_decompose n=3 deg=12", |b| {
        b.iter(|| gauss_decompose(black_box(&f)))
    });
}

fn bench_rf_norm(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = sampling::random_hompoly(3, 10, &mut rng);
    c.bench_function("norm_sq_rf n=3 deg=10", |b| {
        b.iter(|| norm_sq_rf(black_box(&f)))
    });
}

fn bench_assemble(c: &mut Criterion) {
    let operator = OperatorSpec::laplacian_power(2, 2, vec![]).unwrap();
    let problem = Problem::new(
        operator,
        quartic_divisor(),
        GradedSeries::constant(2, 12, gaussian_int(1)),
        12,
    )
    .unwrap();
    c.bench_function("assemble_degree_map m=10 (biharmonic/quartic)", |b| {
        b.iter(|| assemble_degree_map(black_box(&problem), 10))
    });
}

fn bench_solve(c: &mut Criterion) {
    let operator = OperatorSpec::laplacian_power(
        2,
        1,
        vec![(
            MultiIndex::zero(2),
            GradedSeries::constant(2, 12, gaussian_int(1)),
        )],
    )
    .unwrap();
    let problem = Problem::new(
        operator,
        HomPoly::sigma(2),
        GradedSeries::constant(2, 12, gaussian_int(1)),
        12,
    )
    .unwrap();
    c.bench_function("solve_series zero-order perturbation N=12", |b| {
        b.iter(|| solve_series(black_box(&problem)).unwrap())
    });
}

fn bench_sphere_scan(c: &mut Criterion) {
    let f = quartic_divisor();
    c.bench_function("sphere_max_estimate res=100000", |b| {
        b.iter(|| sphere_max_estimate(black_box(&f), 100_000).unwrap())
    });
}

criterion_group!(
    benches,
    bench_gauss_decompose,
    bench_rf_norm,
    bench_assemble,
    bench_solve,
    bench_sphere_scan
);
criterion_main!(benches);
