//! Deterministic angular grids on the unit sphere for `n ∈ {2, 3}`.
//!
//! A scan evaluates a polynomial on every grid point and reports the grid
//! extrema together with the covering radius `h = π/resolution`: every point
//! of the sphere lies within geodesic distance `h` of some grid point. With
//! the gradient bound `L`, the extrema are certified to within `L·h`.
//!
//! Scans may be chunked across threads; the reduction is exact (true max /
//! min over the same point set), so results are bit-identical for any
//! thread count.

use crate::polynomials::HomPoly;
use num_complex::Complex64;
use std::sync::atomic::{AtomicUsize, Ordering};

static THREAD_CAP: AtomicUsize = AtomicUsize::new(0);

pub(crate) fn set_thread_cap(threads: usize) {
    THREAD_CAP.store(threads.max(1), Ordering::Relaxed);
}

fn effective_threads(points: usize) -> usize {
    let cap = match THREAD_CAP.load(Ordering::Relaxed) {
        0 => std::thread::available_parallelism().map_or(1, |v| v.get()),
        v => v,
    };
    // Below ~64k points the spawn overhead dominates.
    if points < 65_536 {
        1
    } else {
        cap.min(points / 16_384).max(1)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct GridScan {
    pub max_abs: f64,
    pub min_re: f64,
    pub min_re_point: Vec<f64>,
    /// Covering radius of the grid in geodesic distance.
    pub mesh: f64,
}

fn point_on_sphere(n: usize, resolution: usize, index: usize) -> Vec<f64> {
    match n {
        2 => {
            let theta = 2.0 * std::f64::consts::PI * (index as f64) / (resolution as f64);
            vec![theta.cos(), theta.sin()]
        }
        3 => {
            let azimuths = 2 * resolution;
            let a = index / azimuths;
            let b = index % azimuths;
            let theta = std::f64::consts::PI * (a as f64) / (resolution as f64);
            let phi = std::f64::consts::PI * (b as f64) / (resolution as f64);
            vec![
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ]
        }
        _ => unreachable!("grid scans are restricted to n ∈ {{2, 3}}"),
    }
}

fn point_count(n: usize, resolution: usize) -> usize {
    match n {
        2 => resolution,
        3 => (resolution + 1) * 2 * resolution,
        _ => unreachable!(),
    }
}

struct ChunkResult {
    max_abs: f64,
    max_abs_index: usize,
    min_re: f64,
    min_re_index: usize,
}

fn scan_chunk(
    terms: &[(Vec<usize>, Complex64)],
    n: usize,
    resolution: usize,
    range: std::ops::Range<usize>,
) -> ChunkResult {
    let mut out = ChunkResult {
        max_abs: f64::NEG_INFINITY,
        max_abs_index: range.start,
        min_re: f64::INFINITY,
        min_re_index: range.start,
    };
    for index in range {
        let point = point_on_sphere(n, resolution, index);
        let mut value = Complex64::new(0.0, 0.0);
        for (exps, c) in terms {
            let mut mono = 1.0;
            for (x, &e) in point.iter().zip(exps) {
                mono *= x.powi(e as i32);
            }
            value += c * mono;
        }
        let abs = value.norm();
        if abs > out.max_abs {
            out.max_abs = abs;
            out.max_abs_index = index;
        }
        if value.re < out.min_re {
            out.min_re = value.re;
            out.min_re_index = index;
        }
    }
    out
}

/// Requires `poly.n() ∈ {2, 3}` and `resolution ≥ 8`; callers validate.
pub(crate) fn scan(poly: &HomPoly, resolution: usize) -> GridScan {
    let n = poly.n();
    assert!(
        n == 2 || n == 3,
        "grid scans are restricted to n ∈ {{2, 3}}"
    );
    assert!(resolution >= 8, "resolution must be at least 8");
    let terms = poly.float_terms();
    let total = point_count(n, resolution);
    let threads = effective_threads(total);

    let results: Vec<ChunkResult> = if threads <= 1 {
        vec![scan_chunk(&terms, n, resolution, 0..total)]
    } else {
        let chunk = total.div_ceil(threads);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let terms = &terms;
                    let lo = t * chunk;
                    let hi = ((t + 1) * chunk).min(total);
                    scope.spawn(move || scan_chunk(terms, n, resolution, lo..hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };

    // Merge in chunk order; on exact ties the earliest index wins, so the
    // outcome does not depend on the chunking.
    let mut best = ChunkResult {
        max_abs: f64::NEG_INFINITY,
        max_abs_index: 0,
        min_re: f64::INFINITY,
        min_re_index: 0,
    };
    for r in results {
        if r.max_abs > best.max_abs
            || (r.max_abs == best.max_abs && r.max_abs_index < best.max_abs_index)
        {
            best.max_abs = r.max_abs;
            best.max_abs_index = r.max_abs_index;
        }
        if r.min_re < best.min_re || (r.min_re == best.min_re && r.min_re_index < best.min_re_index)
        {
            best.min_re = r.min_re;
            best.min_re_index = r.min_re_index;
        }
    }

    GridScan {
        max_abs: best.max_abs,
        min_re: best.min_re,
        min_re_point: point_on_sphere(n, resolution, best.min_re_index),
        mesh: std::f64::consts::PI / resolution as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gaussian_int;
    use crate::polynomials::MultiIndex;

    #[test]
    fn scan_is_thread_count_invariant() {
        let f = HomPoly::from_terms(
            2,
            4,
            vec![
                (MultiIndex::new(vec![4, 0]), gaussian_int(1)),
                (MultiIndex::new(vec![2, 2]), gaussian_int(-3)),
                (MultiIndex::new(vec![0, 4]), gaussian_int(2)),
            ],
        );
        set_thread_cap(1);
        let a = scan(&f, 100_000);
        set_thread_cap(4);
        let b = scan(&f, 100_000);
        set_thread_cap(1);
        assert_eq!(a.max_abs.to_bits(), b.max_abs.to_bits());
        assert_eq!(a.min_re.to_bits(), b.min_re.to_bits());
        assert_eq!(a.min_re_point, b.min_re_point);
    }

    #[test]
    fn covering_radius_matches_definition() {
        let f = HomPoly::sigma(2);
        let s = scan(&f, 128);
        assert!((s.mesh - std::f64::consts::PI / 128.0).abs() < 1e-15);
        // |x|² is identically 1 on the sphere.
        assert!((s.max_abs - 1.0).abs() < 1e-12);
        assert!((s.min_re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn three_dimensional_grid_touches_poles_and_equator() {
        // x3² attains max 1 at the poles and min 0 on the equator.
        let f = HomPoly::from_terms(
            3,
            2,
            vec![(MultiIndex::new(vec![0, 0, 2]), gaussian_int(1))],
        );
        let s = scan(&f, 64);
        assert!((s.max_abs - 1.0).abs() < 1e-12);
        assert!(s.min_re.abs() < 1e-12);
    }
}
