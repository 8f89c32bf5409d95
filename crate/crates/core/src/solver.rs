//! Degree-by-degree solution of mixed Cauchy problems `L(P·q) = f`.
//!
//! For `L = Q_k(D) + Σ_{|α|≤k₀} a_α(x)·D^α` with `k₀ < k` and a divisor `P`
//! of degree `k`, the homogeneous degree-`m` part of the equation reads
//!
//! `Q_k(D)(P·q_m) = f_m - Σ_{l≤k₀} Σ_{|α|=l} Σ_{i≤m+l-k} a_{α,i}·D^α(P·q_{m+l-k-i})`
//!
//! so each `q_m` is the unique preimage of a right-hand side assembled from
//! strictly lower-degree parts. Every linear solve is exact; invertibility
//! of the per-degree map is the well-posedness certificate, and the residual
//! of the reassembled equation is verified to be exactly zero.

use crate::fischer::{monomial_moment, norm_sq_rf};
use crate::harmonic::{eigenvalue_d, min_eigenvalue_e};
use crate::linalg::{min_generalized_rayleigh, ExactMatrix};
use crate::numerics::{
    big_ln, factorial, radial_moment, rational_ln, rational_to_f64, BigRational, GaussianRational,
};
use crate::polynomials::{monomial_basis, GradedSeries, HomPoly, MultiIndex};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("principal symbol is the zero polynomial")]
    ZeroPrincipal,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lower-order term of order {k0} is not below the principal order {k}")]
    LowerOrderNotBelowPrincipal { k0: usize, k: usize },
    #[error("duplicate lower-order multi-index {alpha:?}")]
    DuplicateLowerOrderIndex { alpha: Vec<usize> },
    #[error("divisor degree {divisor} does not match the principal order {principal}")]
    DivisorDegreeMismatch { divisor: usize, principal: usize },
    #[error("right-hand side cutoff {found} is below the solve degree {required}")]
    RhsCutoffTooSmall { required: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    /// The degree-`m` map `q_m ↦ Q_k(D)(P·q_m)` has determinant zero. This
    /// is an ill-posedness certificate, not a crash.
    #[error("the degree-{degree} map q ↦ Q(D)(P·q) is singular")]
    SingularDegree { degree: usize },
    /// A coefficient or right-hand-side series does not reach the solve
    /// degree; solving would silently truncate the recursion.
    #[error("series cutoff {found} is below the solve degree {required}")]
    CutoffTooSmall { required: usize, found: usize },
}

/// Principal part of the operator, as declared by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrincipalPart {
    /// `Δ^p` (symbol `(x₁²+…+xₙ²)^p`).
    LaplacianPower(usize),
    /// An arbitrary nonzero homogeneous constant-coefficient symbol.
    GeneralSymbol,
}

/// Interpretation of the `k₀` bound for the solution's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KZeroRegime {
    /// `k₀ < p`: the solution map is a bijection on the full ball scale.
    Bijection,
    /// `k₀ = p`: a solution exists on some smaller ball; its radius is not
    /// produced by the computation, only estimated empirically.
    PositiveRadius,
    /// `k₀ > p` (still `< k`): outside the guaranteed regimes.
    OutsideGuarantee,
    /// The principal part is not a declared Laplacian power, so `p` is
    /// unknown.
    UnknownPrincipal,
}

/// The operator `L = Q_k(D) + Σ_{|α| ≤ k₀} a_α(x)·D^α`, with `k₀ < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSpec {
    n: usize,
    principal: HomPoly,
    principal_part: PrincipalPart,
    lower_order: Vec<(MultiIndex, GradedSeries)>,
    k0: usize,
}

impl OperatorSpec {
    /// Operator with principal part `Δ^p`.
    pub fn laplacian_power(
        n: usize,
        p: usize,
        lower_order: Vec<(MultiIndex, GradedSeries)>,
    ) -> Result<Self, ProblemError> {
        assert!(p >= 1, "p must be at least 1");
        Self::build(
            HomPoly::radial_power(n, p),
            PrincipalPart::LaplacianPower(p),
            lower_order,
        )
    }

    /// Operator with an arbitrary principal symbol. A symbol that equals
    /// `(x₁²+…+xₙ²)^p` exactly is recognized as a Laplacian power.
    pub fn from_symbol(
        principal: HomPoly,
        lower_order: Vec<(MultiIndex, GradedSeries)>,
    ) -> Result<Self, ProblemError> {
        let part = if principal.degree().is_multiple_of(2)
            && principal.degree() >= 2
            && principal == HomPoly::radial_power(principal.n(), principal.degree() / 2)
        {
            PrincipalPart::LaplacianPower(principal.degree() / 2)
        } else {
            PrincipalPart::GeneralSymbol
        };
        Self::build(principal, part, lower_order)
    }

    fn build(
        principal: HomPoly,
        principal_part: PrincipalPart,
        lower_order: Vec<(MultiIndex, GradedSeries)>,
    ) -> Result<Self, ProblemError> {
        if principal.is_zero() {
            return Err(ProblemError::ZeroPrincipal);
        }
        let n = principal.n();
        let k = principal.degree();
        let mut k0 = 0usize;
        for (idx, (alpha, series)) in lower_order.iter().enumerate() {
            if alpha.n() != n {
                return Err(ProblemError::DimensionMismatch {
                    expected: n,
                    found: alpha.n(),
                });
            }
            if series.n() != n {
                return Err(ProblemError::DimensionMismatch {
                    expected: n,
                    found: series.n(),
                });
            }
            if lower_order[..idx].iter().any(|(a, _)| a == alpha) {
                return Err(ProblemError::DuplicateLowerOrderIndex {
                    alpha: alpha.exponents().to_vec(),
                });
            }
            k0 = k0.max(alpha.total_degree());
        }
        if k0 >= k {
            return Err(ProblemError::LowerOrderNotBelowPrincipal { k0, k });
        }
        Ok(OperatorSpec {
            n,
            principal,
            principal_part,
            lower_order,
            k0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The order `k` of the operator (degree of the principal symbol).
    pub fn order(&self) -> usize {
        self.principal.degree()
    }

    pub fn k0(&self) -> usize {
        self.k0
    }

    pub fn principal(&self) -> &HomPoly {
        &self.principal
    }

    pub fn principal_part(&self) -> PrincipalPart {
        self.principal_part
    }

    pub fn lower_order(&self) -> &[(MultiIndex, GradedSeries)] {
        &self.lower_order
    }

    pub fn k_zero_regime(&self) -> KZeroRegime {
        match self.principal_part {
            PrincipalPart::LaplacianPower(p) => {
                if self.k0 < p {
                    KZeroRegime::Bijection
                } else if self.k0 == p {
                    KZeroRegime::PositiveRadius
                } else {
                    KZeroRegime::OutsideGuarantee
                }
            }
            PrincipalPart::GeneralSymbol => KZeroRegime::UnknownPrincipal,
        }
    }
}

/// A mixed Cauchy problem `L(P·q) = f`, to be solved through `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    operator: OperatorSpec,
    divisor: HomPoly,
    rhs: GradedSeries,
    max_degree: usize,
}

impl Problem {
    pub fn new(
        operator: OperatorSpec,
        divisor: HomPoly,
        rhs: GradedSeries,
        max_degree: usize,
    ) -> Result<Self, ProblemError> {
        if divisor.n() != operator.n() {
            return Err(ProblemError::DimensionMismatch {
                expected: operator.n(),
                found: divisor.n(),
            });
        }
        if rhs.n() != operator.n() {
            return Err(ProblemError::DimensionMismatch {
                expected: operator.n(),
                found: rhs.n(),
            });
        }
        if divisor.degree() != operator.order() {
            return Err(ProblemError::DivisorDegreeMismatch {
                divisor: divisor.degree(),
                principal: operator.order(),
            });
        }
        if rhs.cutoff() < max_degree {
            return Err(ProblemError::RhsCutoffTooSmall {
                required: max_degree,
                found: rhs.cutoff(),
            });
        }
        Ok(Problem {
            operator,
            divisor,
            rhs,
            max_degree,
        })
    }

    pub fn operator(&self) -> &OperatorSpec {
        &self.operator
    }

    pub fn divisor(&self) -> &HomPoly {
        &self.divisor
    }

    pub fn rhs(&self) -> &GradedSeries {
        &self.rhs
    }

    pub fn n(&self) -> usize {
        self.operator.n()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Same problem with a different solve degree.
    pub fn with_max_degree(&self, max_degree: usize) -> Result<Problem, ProblemError> {
        Problem::new(
            self.operator.clone(),
            self.divisor.clone(),
            self.rhs.clone(),
            max_degree,
        )
    }
}

/// Exact matrix of the linear map `q_m ↦ Q_k(D)(P_k·q_m)` on the canonical
/// monomial basis of degree-`m` polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeOperator {
    m: usize,
    basis: Vec<MultiIndex>,
    matrix: ExactMatrix,
}

impl DegreeOperator {
    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// The image `Q_k(D)(P_k·q)` computed through the assembled matrix.
    pub fn apply(&self, q: &HomPoly) -> HomPoly {
        assert_eq!(q.degree(), self.m, "degree mismatch");
        let v = q.coefficient_vector(&self.basis);
        let image = self.matrix.mul_vec(&v);
        HomPoly::from_coefficient_vector(q.n(), self.m, &self.basis, &image)
    }
}

/// Assembles the degree-`m` map column by column: column `j` is the
/// coefficient vector of `Q_k(D)(P_k·basis_j)`.
pub fn assemble_degree_map(problem: &Problem, m: usize) -> DegreeOperator {
    let n = problem.n();
    let basis = monomial_basis(n, m);
    let dim = basis.len();
    let mut matrix = ExactMatrix::zeros(dim, dim);
    for (j, alpha) in basis.iter().enumerate() {
        let monomial = HomPoly::monomial(n, alpha.clone(), GaussianRational::one());
        let image = HomPoly::apply_symbol(
            problem.operator().principal(),
            &problem.divisor().multiply(&monomial),
        );
        matrix.set_column(j, &image.coefficient_vector(&basis));
    }
    DegreeOperator { m, basis, matrix }
}

/// Per-degree well-posedness certificate: exact invertibility plus a
/// floating-point estimate of `min_q ‖T_m q‖_rF / ‖q‖_rF` (diagnostic only;
/// never gates correctness).
#[derive(Debug, Clone, PartialEq)]
pub struct WellposednessCertificate {
    pub m: usize,
    pub dim: usize,
    pub invertible: bool,
    pub det: GaussianRational,
    pub lower_ratio: f64,
}

/// The rF Gram matrix of the degree-`m` monomial basis (rational part), in
/// f64.
fn gram_f64(basis: &[MultiIndex]) -> Vec<f64> {
    let dim = basis.len();
    let mut g = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let value = rational_to_f64(&monomial_moment(&basis[i].add(&basis[j])));
            g[i * dim + j] = value;
            g[j * dim + i] = value;
        }
    }
    g
}

/// The apolar Gram matrix of the degree-`m` monomial basis (diagonal
/// `α!`), in f64.
fn gram_apolar_f64(basis: &[MultiIndex]) -> Vec<f64> {
    let dim = basis.len();
    let mut g = vec![0.0; dim * dim];
    for (i, alpha) in basis.iter().enumerate() {
        g[i * dim + i] = rational_to_f64(&BigRational::from(alpha.factorial()));
    }
    g
}

/// Inverse-power estimate of `min_q ‖T_m·q‖_rF/‖q‖_rF` (diagnostic only).
pub fn min_gaussian_ratio(op: &DegreeOperator) -> f64 {
    min_ratio_with_gram(op, gram_f64(op.basis()))
}

/// Inverse-power estimate of `min_q ‖T_m·q‖_F/‖q‖_F` in the apolar norm.
pub fn min_apolar_ratio(op: &DegreeOperator) -> f64 {
    min_ratio_with_gram(op, gram_apolar_f64(op.basis()))
}

fn min_ratio_with_gram(op: &DegreeOperator, g: Vec<f64>) -> f64 {
    let dim = op.dimension();
    let mut a = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let entry = op.matrix().at(i, j);
            a[i * dim + j] = Complex64::new(
                entry.re.to_f64().unwrap_or(f64::NAN),
                entry.im.to_f64().unwrap_or(f64::NAN),
            );
        }
    }
    // B = A^H G A, Hermitian positive semidefinite.
    let mut ga = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..dim {
                acc += g[i * dim + t] * a[t * dim + j];
            }
            ga[i * dim + j] = acc;
        }
    }
    let mut b = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..dim {
                acc += a[t * dim + i].conj() * ga[t * dim + j];
            }
            b[i * dim + j] = acc;
        }
    }
    min_generalized_rayleigh(&b, &g, dim).sqrt()
}

fn lower_ratio_estimate(op: &DegreeOperator) -> f64 {
    min_gaussian_ratio(op)
}

/// Exact invertibility certificates for every degree `m ≤ max_degree`.
pub fn check_wellposed(problem: &Problem) -> Vec<WellposednessCertificate> {
    (0..=problem.max_degree())
        .map(|m| {
            let op = assemble_degree_map(problem, m);
            let det = op.matrix().determinant();
            let invertible = !det.is_zero();
            let lower_ratio = if invertible {
                lower_ratio_estimate(&op)
            } else {
                0.0
            };
            WellposednessCertificate {
                m,
                dim: op.dimension(),
                invertible,
                det,
                lower_ratio,
            }
        })
        .collect()
}

/// Per-degree record in a successful solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionDegreeRecord {
    pub m: usize,
    pub dim: usize,
    pub invertible: bool,
    pub det: GaussianRational,
    /// Rational part of `‖q_m‖²_rF`.
    pub rf_norm_sq: BigRational,
    pub lower_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionReport {
    pub solution: GradedSeries,
    pub per_degree: Vec<SolutionDegreeRecord>,
    /// True iff the degree-≤N part of `L(P·q) - f` is exactly zero.
    pub residual_ok: bool,
    pub radius_estimate: Option<f64>,
    pub regime: KZeroRegime,
}

/// Right-hand side of the degree-`m` recursion; `pq[j]` caches `P·q_j`.
fn recursion_rhs(problem: &Problem, m: usize, pq: &[HomPoly]) -> HomPoly {
    let k = problem.operator().order();
    let mut rhs = problem.rhs().part_or_zero(m);
    for (alpha, series) in problem.operator().lower_order() {
        let l = alpha.total_degree();
        if m + l < k {
            continue;
        }
        let top = m + l - k;
        for i in 0..=top {
            let j = top - i;
            let Some(a_i) = series.part(i) else { continue };
            let derived = pq[j].differentiate(alpha);
            if derived.is_zero() {
                continue;
            }
            rhs = rhs.sub(&a_i.multiply(&derived));
        }
    }
    rhs
}

/// `L(P·q)` truncated to the cutoff of `q`, recomputed from scratch through
/// the public polynomial operations (independent of the solve recursion).
pub fn apply_operator(problem: &Problem, q: &GradedSeries) -> GradedSeries {
    let n = problem.n();
    assert_eq!(q.n(), n, "dimension mismatch");
    let k = problem.operator().order();
    let cutoff = q.cutoff();
    let mut u = GradedSeries::zero(n, cutoff + k);
    for (_, qj) in q.iter_parts() {
        u.set_part(problem.divisor().multiply(qj));
    }
    let mut out = u
        .apply_symbol(problem.operator().principal())
        .truncate(cutoff);
    for (alpha, series) in problem.operator().lower_order() {
        assert!(
            series.cutoff() >= cutoff.saturating_sub(k - alpha.total_degree()),
            "coefficient series too short for the requested cutoff"
        );
        let derived = u.differentiate(alpha);
        out = out.add(&series.multiply_truncated(&derived, cutoff));
    }
    out
}

/// Solves `L(P·q) = f` degree by degree through `max_degree`.
///
/// Each `q_m` is the unique preimage under the exact degree map, so
/// uniqueness is structural. After the recursion the full residual
/// `L(P·q) - f` is recomputed and asserted to vanish exactly through the
/// cutoff.
pub fn solve_series(problem: &Problem) -> Result<SolutionReport, SolveError> {
    let n = problem.n();
    let max_degree = problem.max_degree();
    if problem.rhs().cutoff() < max_degree {
        return Err(SolveError::CutoffTooSmall {
            required: max_degree,
            found: problem.rhs().cutoff(),
        });
    }
    for (_, series) in problem.operator().lower_order() {
        if series.cutoff() < max_degree {
            return Err(SolveError::CutoffTooSmall {
                required: max_degree,
                found: series.cutoff(),
            });
        }
    }

    let mut q = GradedSeries::zero(n, max_degree);
    let mut pq: Vec<HomPoly> = Vec::with_capacity(max_degree + 1);
    let mut per_degree = Vec::with_capacity(max_degree + 1);
    for m in 0..=max_degree {
        let op = assemble_degree_map(problem, m);
        let rhs = recursion_rhs(problem, m, &pq);
        let b = rhs.coefficient_vector(op.basis());
        let outcome = op
            .matrix()
            .solve(&b)
            .map_err(|_| SolveError::SingularDegree { degree: m })?;
        let qm = HomPoly::from_coefficient_vector(n, m, op.basis(), &outcome.solution);
        per_degree.push(SolutionDegreeRecord {
            m,
            dim: op.dimension(),
            invertible: true,
            det: outcome.det,
            rf_norm_sq: norm_sq_rf(&qm).expect_real(),
            lower_ratio: lower_ratio_estimate(&op),
        });
        pq.push(problem.divisor().multiply(&qm));
        q.set_part(qm);
    }

    let residual = apply_operator(problem, &q).sub(&problem.rhs().truncate(max_degree));
    let residual_ok = residual.is_zero();
    let radius_estimate = convergence_diagnostics(&q);
    Ok(SolutionReport {
        solution: q,
        per_degree,
        residual_ok,
        radius_estimate,
        regime: problem.operator().k_zero_regime(),
    })
}

/// Empirical convergence radius in the Gaussian-norm sense: the sequence
/// `r_m = (m!/‖q_m‖²_rF)^{1/(2m)}` over nonzero degrees, summarized by the
/// median of its last third. Returns `None` with fewer than 6 nonzero
/// degrees.
pub fn convergence_diagnostics(q: &GradedSeries) -> Option<f64> {
    let radii: Vec<f64> = q
        .iter_parts()
        .filter(|(m, p)| *m >= 1 && !p.is_zero())
        .map(|(m, p)| {
            let norm_sq = norm_sq_rf(p).expect_real();
            let ln_r = (big_ln(&factorial(m)) - rational_ln(&norm_sq)) / (2.0 * m as f64);
            ln_r.exp()
        })
        .collect();
    if radii.len() < 6 {
        return None;
    }
    let tail_len = radii.len().div_ceil(3);
    let mut tail = radii[radii.len() - tail_len..].to_vec();
    tail.sort_by(f64::total_cmp);
    let mid = tail.len() / 2;
    Some(if tail.len() % 2 == 1 {
        tail[mid]
    } else {
        0.5 * (tail[mid - 1] + tail[mid])
    })
}

/// One row of the lower-bound survey: the minimum observed ratio
/// `‖Δ^p(P·f_m)‖_rF / (e_{p,m}·‖f_m‖_rF)` over random samples at degree `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurveyRow {
    pub m: usize,
    pub min_ratio: f64,
}

/// Empirical survey of the constant in the lower bound
/// `‖Δ^p(P·f_m)‖_rF ≥ C·e_{p,m}·‖f_m‖_rF` for a degree-`2p` divisor `P`.
/// Callers are expected to have verified ellipticity of `P`; for divisors
/// that are not elliptic the ratios may reach zero.
pub fn lower_bound_constant_survey<R: Rng>(
    divisor: &HomPoly,
    p: usize,
    m_max: usize,
    samples: usize,
    rng: &mut R,
) -> Vec<SurveyRow> {
    assert_eq!(divisor.degree(), 2 * p, "divisor must have degree 2p");
    let n = divisor.n();
    (0..=m_max)
        .map(|m| {
            let e = min_eigenvalue_e(p, m, n);
            let mut min_ratio = f64::INFINITY;
            for _ in 0..samples.max(1) {
                let f = crate::sampling::random_hompoly(n, m, rng);
                let mut image = divisor.multiply(&f);
                for _ in 0..p {
                    image = image.laplacian();
                }
                let num = norm_sq_rf(&image).expect_real();
                let den = &e * &e * norm_sq_rf(&f).expect_real();
                let ratio_sq = num / den;
                min_ratio = min_ratio.min(rational_to_f64(&ratio_sq).sqrt());
            }
            SurveyRow { m, min_ratio }
        })
        .collect()
}

/// The sequence `d_p(p,m)/√(I_{4p+2m+n-1}/I_{2m+n-1})` for `n ≥ 2`, exact up
/// to the final float conversion. It stays bounded in `m`, in contrast with
/// the one-variable analogue, which grows like `m^p`: a degree-growth
/// improvement of the radial lower bound measured in the Gaussian norm
/// against `‖|x|^{2p}·f_m‖_rF` would need ratios of this kind to grow.
pub fn eigen_to_radial_norm_ratios(p: usize, n: usize, m_max: usize) -> Vec<f64> {
    assert!(n >= 2, "the bounded-ratio sequence requires n ≥ 2");
    assert!(p >= 1);
    (0..=m_max)
        .map(|m| {
            let d = eigenvalue_d(p, p, m, n);
            let ratio = radial_moment(4 * p + 2 * m + n - 1)
                .ratio_to(&radial_moment(2 * m + n - 1))
                .expect("same parity");
            let value_sq = &d * &d / ratio;
            rational_to_f64(&value_sq).sqrt()
        })
        .collect()
}

/// The one-variable contrast sequence `((m+2p)!/m!)/√(I_{2m+4p}/I_{2m})`,
/// which grows like `m^p`. Reported for comparison, never asserted bounded.
pub fn eigen_to_radial_norm_ratios_one_var(p: usize, m_max: usize) -> Vec<f64> {
    assert!(p >= 1);
    (0..=m_max)
        .map(|m| {
            let mut d = BigInt::from(1);
            for t in (m + 1)..=(m + 2 * p) {
                d *= BigInt::from(t);
            }
            let d = BigRational::from(d);
            let ratio = radial_moment(2 * m + 4 * p)
                .ratio_to(&radial_moment(2 * m))
                .expect("same parity");
            let value_sq = &d * &d / ratio;
            rational_to_f64(&value_sq).sqrt()
        })
        .collect()
}
