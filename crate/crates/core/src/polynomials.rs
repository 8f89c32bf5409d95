//! Homogeneous polynomials and truncated graded series over the Gaussian
//! rationals.
//!
//! Polynomials are stored sparsely as maps from exponent multi-indices to
//! coefficients; dense coefficient vectors against the graded-lex monomial
//! basis are produced on demand for matrix assembly. All operations are
//! exact and pure; mixed-dimension operations are programming errors and
//! panic.

use crate::linalg::{ExactMatrix, SingularMatrix};
use crate::numerics::{monomial_count, BigRational, GaussianRational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a monomial; ordered graded-lexicographically
/// (total degree first, then lexicographic on the exponents).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(exponents: Vec<usize>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit index for variable `j` (0-based).
    pub fn unit(n: usize, j: usize) -> Self {
        assert!(j < n, "variable index out of range");
        let mut e = vec![0; n];
        e[j] = 1;
        MultiIndex(e)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[usize] {
        &self.0
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.n(), other.n(), "dimension mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        assert_eq!(self.n(), other.n(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `α! = α₁!·…·αₙ!`
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .map(|&e| crate::numerics::factorial(e))
            .product()
    }

    /// `∏ᵢ βᵢ(βᵢ-1)···(βᵢ-αᵢ+1)` — the exact coefficient produced by `D^α`
    /// acting on `x^β` (with `β = self`).
    fn derivative_factor(&self, alpha: &MultiIndex) -> BigInt {
        let mut acc = BigInt::one();
        for (&b, &a) in self.0.iter().zip(&alpha.0) {
            for t in 0..a {
                acc *= BigInt::from(b - t);
            }
        }
        acc
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// All multi-indices of total degree `m` in `n` variables, in descending
/// graded-lex order (so `x₁^m` comes first). This is the canonical monomial
/// basis order used for matrix assembly and rendering.
pub fn monomial_basis(n: usize, m: usize) -> Vec<MultiIndex> {
    assert!(n >= 1, "dimension must be at least 1");
    let mut out = Vec::with_capacity(monomial_count(n, m));
    let mut current = vec![0usize; n];
    fn rec(out: &mut Vec<MultiIndex>, current: &mut Vec<usize>, pos: usize, rest: usize) {
        if pos + 1 == current.len() {
            current[pos] = rest;
            out.push(MultiIndex::new(current.clone()));
            return;
        }
        for e in (0..=rest).rev() {
            current[pos] = e;
            rec(out, current, pos + 1, rest - e);
        }
    }
    rec(&mut out, &mut current, 0, m);
    out
}

/// Homogeneous polynomial of a fixed degree in `n` variables.
///
/// The zero polynomial of any degree is representable (empty term map); no
/// zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    n: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl HomPoly {
    pub fn zero(n: usize, degree: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        HomPoly {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Single term `coeff·x^alpha`.
    pub fn monomial(n: usize, alpha: MultiIndex, coeff: GaussianRational) -> Self {
        assert_eq!(alpha.n(), n, "dimension mismatch");
        let degree = alpha.total_degree();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(alpha, coeff);
        }
        HomPoly { n, degree, terms }
    }

    /// Degree-0 constant.
    pub fn constant(n: usize, value: GaussianRational) -> Self {
        HomPoly::monomial(n, MultiIndex::zero(n), value)
    }

    pub fn one(n: usize) -> Self {
        HomPoly::constant(n, GaussianRational::one())
    }

    /// The variable `x_j` (0-based).
    pub fn variable(n: usize, j: usize) -> Self {
        HomPoly::monomial(n, MultiIndex::unit(n, j), GaussianRational::one())
    }

    /// `Σ x_j²`, the symbol of the Laplacian.
    pub fn sigma(n: usize) -> Self {
        let mut f = HomPoly::zero(n, 2);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 2;
            f.terms.insert(MultiIndex::new(e), GaussianRational::one());
        }
        f
    }

    /// `|x|^{2s}`.
    pub fn radial_power(n: usize, s: usize) -> Self {
        let mut acc = HomPoly::one(n);
        let sigma = HomPoly::sigma(n);
        for _ in 0..s {
            acc = acc.multiply(&sigma);
        }
        acc
    }

    pub fn from_terms<I>(n: usize, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, GaussianRational)>,
    {
        let mut poly = HomPoly::zero(n, degree);
        for (alpha, coeff) in terms {
            assert_eq!(alpha.n(), n, "dimension mismatch");
            assert_eq!(alpha.total_degree(), degree, "degree mismatch in term");
            poly.add_term(alpha, coeff);
        }
        poly
    }

    fn add_term(&mut self, alpha: MultiIndex, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> GaussianRational {
        self.terms.get(alpha).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn add(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (alpha, coeff) in &other.terms {
            out.add_term(alpha.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &HomPoly) -> HomPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomPoly {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, factor: &GaussianRational) -> HomPoly {
        let mut out = HomPoly::zero(self.n, self.degree);
        if factor.is_zero() {
            return out;
        }
        for (alpha, coeff) in &self.terms {
            out.terms.insert(alpha.clone(), coeff * factor);
        }
        out
    }

    pub fn scale_rational(&self, factor: &BigRational) -> HomPoly {
        self.scale(&GaussianRational::new(factor.clone(), BigRational::zero()))
    }

    /// Exact product; degrees add.
    pub fn multiply(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = HomPoly::zero(self.n, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }

    /// `D^α f`, exactly. The result has degree `deg f - |α|`, or is the zero
    /// polynomial of degree 0 when `|α| > deg f`.
    pub fn differentiate(&self, alpha: &MultiIndex) -> HomPoly {
        assert_eq!(alpha.n(), self.n, "dimension mismatch");
        let order = alpha.total_degree();
        let degree = self.degree.saturating_sub(order);
        let mut out = HomPoly::zero(self.n, degree);
        if order > self.degree {
            return out;
        }
        for (beta, coeff) in &self.terms {
            if let Some(gamma) = beta.checked_sub(alpha) {
                let factor = beta.derivative_factor(alpha);
                if factor.is_zero() {
                    continue;
                }
                let factor = GaussianRational::new(BigRational::from(factor), BigRational::zero());
                out.add_term(gamma, coeff * factor);
            }
        }
        out
    }

    /// `∂f/∂x_j`.
    pub fn partial(&self, j: usize) -> HomPoly {
        self.differentiate(&MultiIndex::unit(self.n, j))
    }

    /// `Δf = Σ_j ∂²f/∂x_j²`.
    pub fn laplacian(&self) -> HomPoly {
        let degree = self.degree.saturating_sub(2);
        let mut out = HomPoly::zero(self.n, degree);
        for j in 0..self.n {
            let mut e = vec![0; self.n];
            e[j] = 2;
            out = out.add(&self.differentiate(&MultiIndex::new(e)));
        }
        out
    }

    /// `Q(D)f = Σ_α q_α D^α f` for a constant-coefficient symbol `Q`.
    pub fn apply_symbol(symbol: &HomPoly, f: &HomPoly) -> HomPoly {
        assert_eq!(symbol.n, f.n, "dimension mismatch");
        let degree = f.degree.saturating_sub(symbol.degree);
        let mut out = HomPoly::zero(f.n, degree);
        if symbol.degree > f.degree {
            return out;
        }
        for (alpha, q) in &symbol.terms {
            out = out.add(&f.differentiate(alpha).scale(q));
        }
        out
    }

    /// Exact composition `f(A·x)`; the degree is preserved. Callers supply
    /// `A^{-t}` when that is the intended substitution.
    pub fn substitute_linear(&self, change: &LinearChange) -> HomPoly {
        assert_eq!(self.n, change.n(), "dimension mismatch");
        let forms: Vec<HomPoly> = (0..self.n)
            .map(|i| {
                let mut row = HomPoly::zero(self.n, 1);
                for j in 0..self.n {
                    row.add_term(MultiIndex::unit(self.n, j), change.entry(i, j).clone());
                }
                row
            })
            .collect();
        let mut out = HomPoly::zero(self.n, self.degree);
        for (alpha, coeff) in &self.terms {
            let mut prod = HomPoly::constant(self.n, coeff.clone());
            for (i, &e) in alpha.exponents().iter().enumerate() {
                for _ in 0..e {
                    prod = prod.multiply(&forms[i]);
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// Coefficient-wise complex conjugate (`Q ↦ Q*`).
    pub fn conjugate_coefficients(&self) -> HomPoly {
        let mut out = HomPoly::zero(self.n, self.degree);
        for (alpha, coeff) in &self.terms {
            out.terms.insert(alpha.clone(), coeff.conj());
        }
        out
    }

    /// Substitute `x_j → i·x_j` for each selected axis, exactly.
    pub fn imaginary_axis_substitution(&self, axes: &[usize]) -> HomPoly {
        for &axis in axes {
            assert!(axis < self.n, "axis index out of range");
        }
        let i_unit = GaussianRational::new(BigRational::zero(), BigRational::one());
        let mut out = HomPoly::zero(self.n, self.degree);
        for (alpha, coeff) in &self.terms {
            let total: usize = axes.iter().map(|&j| alpha.exponents()[j]).sum();
            let mut factor = GaussianRational::one();
            for _ in 0..(total % 4) {
                factor *= &i_unit;
            }
            out.add_term(alpha.clone(), coeff * factor);
        }
        out
    }

    /// Exact evaluation at a point with Gaussian-rational coordinates.
    pub fn evaluate(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.n, "point length mismatch");
        let mut acc = GaussianRational::zero();
        for (alpha, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (p, &e) in point.iter().zip(alpha.exponents()) {
                for _ in 0..e {
                    term *= p;
                }
            }
            acc += term;
        }
        acc
    }

    /// Double-precision evaluation, for diagnostics and grid scans.
    pub fn evaluate_float(&self, point: &[f64]) -> Complex64 {
        assert_eq!(point.len(), self.n, "point length mismatch");
        self.float_terms()
            .iter()
            .map(|(exps, c)| {
                let mono: f64 = point
                    .iter()
                    .zip(exps)
                    .map(|(x, &e)| x.powi(e as i32))
                    .product();
                c * mono
            })
            .sum()
    }

    /// Terms converted to f64 once, for repeated float evaluation.
    pub fn float_terms(&self) -> Vec<(Vec<usize>, Complex64)> {
        self.terms
            .iter()
            .map(|(alpha, c)| {
                let cf = Complex64::new(
                    c.re.to_f64().unwrap_or(f64::NAN),
                    c.im.to_f64().unwrap_or(f64::NAN),
                );
                (alpha.exponents().to_vec(), cf)
            })
            .collect()
    }

    /// Upper bound for `|∇f|` on the unit sphere: `deg f · Σ |coefficients|`
    /// with `|c| ≤ |Re c| + |Im c|`.
    pub fn gradient_sphere_bound(&self) -> BigRational {
        let sum: BigRational = self
            .terms
            .values()
            .map(|c| c.re.abs() + c.im.abs())
            .fold(BigRational::zero(), |a, b| a + b);
        sum * BigRational::from(BigInt::from(self.degree))
    }

    /// Dense coefficient vector against `basis` (zero-filled).
    pub fn coefficient_vector(&self, basis: &[MultiIndex]) -> Vec<GaussianRational> {
        basis.iter().map(|alpha| self.coefficient(alpha)).collect()
    }

    pub fn from_coefficient_vector(
        n: usize,
        degree: usize,
        basis: &[MultiIndex],
        values: &[GaussianRational],
    ) -> HomPoly {
        assert_eq!(basis.len(), values.len(), "basis/vector length mismatch");
        HomPoly::from_terms(
            n,
            degree,
            basis
                .iter()
                .cloned()
                .zip(values.iter().cloned())
                .filter(|(_, v)| !v.is_zero()),
        )
    }
}

fn render_rational(r: &BigRational) -> String {
    format!("{r}")
}

/// Canonical text form of a coefficient: `a`, `bi`, or `(a+bi)`.
pub fn render_gaussian(c: &GaussianRational) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    if c.im.is_zero() {
        return render_rational(&c.re);
    }
    if c.re.is_zero() {
        return format!("{}i", render_rational(&c.im));
    }
    if c.im.is_negative() {
        format!(
            "({}-{}i)",
            render_rational(&c.re),
            render_rational(&c.im.abs())
        )
    } else {
        format!("({}+{}i)", render_rational(&c.re), render_rational(&c.im))
    }
}

fn render_monomial(alpha: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (j, &e) in alpha.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", j + 1)),
            _ => parts.push(format!("x{}^{}", j + 1, e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for HomPoly {
    /// Canonical rendering: monomials in descending graded-lex order,
    /// coefficients as `a+bi` rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, coeff) in self.terms.iter().rev() {
            let negative = coeff.im.is_zero() && coeff.re.is_negative();
            let body_coeff = if negative { -coeff } else { coeff.clone() };
            let mono = render_monomial(alpha);
            let body = if mono.is_empty() {
                render_gaussian(&body_coeff)
            } else if body_coeff.is_one() {
                mono
            } else {
                format!("{}*{}", render_gaussian(&body_coeff), mono)
            };
            if first {
                if negative {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if negative {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Truncated formal power series: homogeneous parts per degree up to a
/// cutoff. Absent degrees are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSeries {
    n: usize,
    cutoff: usize,
    parts: BTreeMap<usize, HomPoly>,
}

impl GradedSeries {
    pub fn zero(n: usize, cutoff: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        GradedSeries {
            n,
            cutoff,
            parts: BTreeMap::new(),
        }
    }

    /// Series with a single degree-0 part.
    pub fn constant(n: usize, cutoff: usize, value: GaussianRational) -> Self {
        let mut s = GradedSeries::zero(n, cutoff);
        s.set_part(HomPoly::constant(n, value));
        s
    }

    pub fn from_parts<I>(n: usize, cutoff: usize, parts: I) -> Self
    where
        I: IntoIterator<Item = HomPoly>,
    {
        let mut s = GradedSeries::zero(n, cutoff);
        for p in parts {
            assert!(
                s.parts.insert(p.degree(), p.clone()).is_none(),
                "duplicate degree {} in series parts",
                p.degree()
            );
            assert_eq!(p.n(), n, "dimension mismatch");
            assert!(p.degree() <= cutoff, "part degree exceeds cutoff");
        }
        s.parts.retain(|_, p| !p.is_zero());
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// The degree-`m` part; `None` means zero.
    pub fn part(&self, m: usize) -> Option<&HomPoly> {
        self.parts.get(&m)
    }

    /// The degree-`m` part, materializing zero when absent.
    pub fn part_or_zero(&self, m: usize) -> HomPoly {
        self.parts
            .get(&m)
            .cloned()
            .unwrap_or_else(|| HomPoly::zero(self.n, m))
    }

    /// Insert or replace the part of the polynomial's degree.
    pub fn set_part(&mut self, poly: HomPoly) {
        assert_eq!(poly.n(), self.n, "dimension mismatch");
        assert!(poly.degree() <= self.cutoff, "part degree exceeds cutoff");
        if poly.is_zero() {
            self.parts.remove(&poly.degree());
        } else {
            self.parts.insert(poly.degree(), poly);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn nonzero_degrees(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    /// Iterate nonzero parts in ascending degree.
    pub fn iter_parts(&self) -> impl Iterator<Item = (usize, &HomPoly)> {
        self.parts.iter().map(|(&m, p)| (m, p))
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = GradedSeries::zero(self.n, cutoff);
        for m in 0..=cutoff {
            match (self.part(m), other.part(m)) {
                (Some(a), Some(b)) => out.set_part(a.add(b)),
                (Some(a), None) => out.set_part(a.clone()),
                (None, Some(b)) => out.set_part(b.clone()),
                (None, None) => {}
            }
        }
        out
    }

    pub fn neg(&self) -> GradedSeries {
        let mut out = GradedSeries::zero(self.n, self.cutoff);
        for (_, p) in self.iter_parts() {
            out.set_part(p.neg());
        }
        out
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        self.add(&other.neg())
    }

    /// Product with a homogeneous polynomial; parts beyond `cutoff` are
    /// dropped.
    pub fn multiply_poly(&self, g: &HomPoly, cutoff: usize) -> GradedSeries {
        assert_eq!(self.n, g.n(), "dimension mismatch");
        let mut out = GradedSeries::zero(self.n, cutoff);
        for (m, p) in self.iter_parts() {
            if m + g.degree() <= cutoff {
                out.set_part(p.multiply(g));
            }
        }
        out
    }

    /// Truncated series product.
    pub fn multiply_truncated(&self, other: &GradedSeries, cutoff: usize) -> GradedSeries {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut acc: BTreeMap<usize, HomPoly> = BTreeMap::new();
        for (a, p) in self.iter_parts() {
            for (b, q) in other.iter_parts() {
                if a + b > cutoff {
                    continue;
                }
                let prod = p.multiply(q);
                acc.entry(a + b)
                    .and_modify(|acc_p| *acc_p = acc_p.add(&prod))
                    .or_insert(prod);
            }
        }
        let mut out = GradedSeries::zero(self.n, cutoff);
        for (_, p) in acc {
            out.set_part(p);
        }
        out
    }

    /// `Q(D)` applied part by part.
    pub fn apply_symbol(&self, symbol: &HomPoly) -> GradedSeries {
        assert_eq!(self.n, symbol.n(), "dimension mismatch");
        let mut out = GradedSeries::zero(self.n, self.cutoff);
        for (m, p) in self.iter_parts() {
            if m >= symbol.degree() {
                out.set_part(HomPoly::apply_symbol(symbol, p));
            }
        }
        out
    }

    /// `D^α` applied part by part.
    pub fn differentiate(&self, alpha: &MultiIndex) -> GradedSeries {
        let order = alpha.total_degree();
        let mut out = GradedSeries::zero(self.n, self.cutoff);
        for (m, p) in self.iter_parts() {
            if m >= order {
                out.set_part(p.differentiate(alpha));
            }
        }
        out
    }

    /// Restrict to degrees `≤ cutoff`.
    pub fn truncate(&self, cutoff: usize) -> GradedSeries {
        let mut out = GradedSeries::zero(self.n, cutoff);
        for (m, p) in self.iter_parts() {
            if m <= cutoff {
                out.set_part(p.clone());
            }
        }
        out
    }

    /// Same parts, larger cutoff (implicit zero tail).
    pub fn with_cutoff(&self, cutoff: usize) -> GradedSeries {
        assert!(cutoff >= self.max_nonzero_degree().unwrap_or(0));
        let mut out = GradedSeries::zero(self.n, cutoff);
        for (_, p) in self.iter_parts() {
            out.set_part(p.clone());
        }
        out
    }

    pub fn max_nonzero_degree(&self) -> Option<usize> {
        self.parts.keys().next_back().copied()
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .iter_parts()
            .map(|(m, p)| format!("[{m}] {p}"))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Invertible linear change of variables, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChange {
    matrix: ExactMatrix,
}

impl LinearChange {
    /// Builds the change of variables; fails when the matrix is singular.
    pub fn new(n: usize, entries: Vec<GaussianRational>) -> Result<Self, SingularMatrix> {
        assert_eq!(entries.len(), n * n, "entry count mismatch");
        let matrix = ExactMatrix::from_rows(
            entries
                .chunks(n)
                .map(|row| row.to_vec())
                .collect::<Vec<_>>(),
        );
        if matrix.determinant().is_zero() {
            return Err(SingularMatrix);
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearChange {
            matrix: ExactMatrix::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &GaussianRational {
        self.matrix.at(i, j)
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn transpose(&self) -> LinearChange {
        LinearChange {
            matrix: self.matrix.transpose(),
        }
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            matrix: self
                .matrix
                .inverse()
                .expect("construction guarantees invertibility"),
        }
    }

    /// `A^{-t}`, the transpose of the inverse.
    pub fn inverse_transpose(&self) -> LinearChange {
        self.inverse().transpose()
    }

    /// Matrix-vector product `A·x`.
    pub fn apply(&self, point: &[GaussianRational]) -> Vec<GaussianRational> {
        self.matrix.mul_vec(point)
    }
}
