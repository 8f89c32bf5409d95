//! Input file schemas and their validated conversion into core values.
//!
//! Polynomials are exponent/coefficient arrays with explicit rational
//! pairs, so input is lossless and trivially generated by other tools.
//! Unknown keys are rejected; every validation error names the offending
//! key.

use anyhow::{bail, Context, Result};
use fischer_cauchy::linalg::ExactMatrix;
use fischer_cauchy::numerics::{gaussian, GaussianRational};
use fischer_cauchy::polynomials::{GradedSeries, HomPoly, LinearChange, MultiIndex};
use fischer_cauchy::solver::{OperatorSpec, Problem};
use serde::{Deserialize, Serialize};

/// `[numerator, denominator]`.
pub type RationalPair = (i64, i64);

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffSpec {
    pub re: RationalPair,
    pub im: RationalPair,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub exps: Vec<usize>,
    pub coeff: CoeffSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesPartSpec {
    pub degree: usize,
    pub polynomial: Vec<TermSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LowerOrderSpec {
    pub alpha: Vec<usize>,
    pub series: Vec<SeriesPartSpec>,
}

/// Principal part: exactly one of `laplacian_power` or `symbol`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrincipalSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laplacian_power: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<Vec<TermSpec>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub principal: PrincipalSpec,
    #[serde(default)]
    pub lower_order: Vec<LowerOrderSpec>,
    pub divisor: Vec<TermSpec>,
    pub rhs: Vec<SeriesPartSpec>,
    pub max_degree: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticityFile {
    pub n: usize,
    pub polynomial: Vec<TermSpec>,
    pub b_matrix: Vec<Vec<CoeffSpec>>,
    pub a_matrix: Vec<Vec<CoeffSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurveyFile {
    pub n: usize,
    pub p: usize,
    pub divisor: Vec<TermSpec>,
}

/// Deserializes with full key paths in error messages.
pub fn decode<T: for<'de> Deserialize<'de>>(bytes: &[u8]) -> Result<T> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(&mut de)
        .map_err(|e| anyhow::anyhow!("{}: {}", e.path(), e.inner()))
}

fn coeff_value(c: &CoeffSpec, ctx: &str) -> Result<GaussianRational> {
    let (rn, rd) = c.re;
    let (in_, id) = c.im;
    if rd == 0 {
        bail!("{ctx}.coeff.re: zero denominator");
    }
    if id == 0 {
        bail!("{ctx}.coeff.im: zero denominator");
    }
    Ok(gaussian(rn, rd, in_, id))
}

/// Builds a homogeneous polynomial from a term list. With
/// `expected_degree = None` the common total degree of the terms is used
/// (the list must be nonempty).
pub fn terms_to_poly(
    n: usize,
    expected_degree: Option<usize>,
    terms: &[TermSpec],
    ctx: &str,
) -> Result<HomPoly> {
    let degree = match expected_degree {
        Some(d) => d,
        None => match terms.first() {
            Some(t) => t.exps.iter().sum(),
            None => bail!("{ctx}: empty polynomial (at least one term required)"),
        },
    };
    let mut collected = Vec::with_capacity(terms.len());
    for (i, term) in terms.iter().enumerate() {
        let label = format!("{ctx}[{i}]");
        if term.exps.len() != n {
            bail!(
                "{label}.exps: expected {} exponents for dimension {}, found {}",
                n,
                n,
                term.exps.len()
            );
        }
        let total: usize = term.exps.iter().sum();
        if total != degree {
            bail!("{label}.exps: total degree {total} does not match degree {degree}");
        }
        let coeff = coeff_value(&term.coeff, &label)?;
        collected.push((MultiIndex::new(term.exps.clone()), coeff));
    }
    Ok(HomPoly::from_terms(n, degree, collected))
}

/// Builds a series from degree parts; cutoff is at least `min_cutoff` and
/// covers every listed part.
pub fn parts_to_series(
    n: usize,
    parts: &[SeriesPartSpec],
    min_cutoff: usize,
    ctx: &str,
) -> Result<GradedSeries> {
    let cutoff = parts
        .iter()
        .map(|p| p.degree)
        .max()
        .unwrap_or(0)
        .max(min_cutoff);
    let mut series = GradedSeries::zero(n, cutoff);
    for (i, part) in parts.iter().enumerate() {
        let label = format!("{ctx}[{i}].polynomial");
        if series.part(part.degree).is_some() {
            bail!("{ctx}[{i}].degree: duplicate degree {}", part.degree);
        }
        let poly = terms_to_poly(n, Some(part.degree), &part.polynomial, &label)?;
        series.set_part(poly);
    }
    Ok(series)
}

/// Validated conversion of a problem file, with an optional override of the
/// solve degree.
pub fn build_problem(file: &ProblemFile, max_degree_override: Option<usize>) -> Result<Problem> {
    let n = file.n;
    if n == 0 {
        bail!("n: dimension must be at least 1");
    }
    let max_degree = max_degree_override.unwrap_or(file.max_degree);

    let mut lower = Vec::with_capacity(file.lower_order.len());
    for (i, entry) in file.lower_order.iter().enumerate() {
        let ctx = format!("lower_order[{i}]");
        if entry.alpha.len() != n {
            bail!(
                "{ctx}.alpha: expected {} entries for dimension {}, found {}",
                n,
                n,
                entry.alpha.len()
            );
        }
        let series = parts_to_series(n, &entry.series, max_degree, &format!("{ctx}.series"))?;
        lower.push((MultiIndex::new(entry.alpha.clone()), series));
    }

    let operator = match (&file.principal.laplacian_power, &file.principal.symbol) {
        (Some(p), None) => {
            if *p == 0 {
                bail!("principal.laplacian_power: must be at least 1");
            }
            OperatorSpec::laplacian_power(n, *p, lower)
        }
        (None, Some(terms)) => {
            let symbol = terms_to_poly(n, None, terms, "principal.symbol")?;
            OperatorSpec::from_symbol(symbol, lower)
        }
        (Some(_), Some(_)) => {
            bail!("principal: give exactly one of laplacian_power or symbol, not both")
        }
        (None, None) => bail!("principal: give one of laplacian_power or symbol"),
    }
    .context("principal/lower_order")?;

    let divisor = terms_to_poly(n, None, &file.divisor, "divisor")?;
    let rhs = parts_to_series(n, &file.rhs, max_degree, "rhs")?;
    Problem::new(operator, divisor, rhs, max_degree).context("problem")
}

fn matrix_from_rows(n: usize, rows: &[Vec<CoeffSpec>], ctx: &str) -> Result<ExactMatrix> {
    if rows.len() != n {
        bail!("{ctx}: expected {} rows, found {}", n, rows.len());
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            bail!("{ctx}[{i}]: expected {} entries, found {}", n, row.len());
        }
        let mut converted = Vec::with_capacity(n);
        for (j, c) in row.iter().enumerate() {
            converted.push(coeff_value(c, &format!("{ctx}[{i}][{j}]"))?);
        }
        out.push(converted);
    }
    Ok(ExactMatrix::from_rows(out))
}

pub struct EllipticityInput {
    pub polynomial: HomPoly,
    pub b_matrix: ExactMatrix,
    pub a_matrix: LinearChange,
    pub resolution: usize,
}

pub fn build_ellipticity_input(
    file: &EllipticityFile,
    resolution_override: Option<usize>,
) -> Result<EllipticityInput> {
    let n = file.n;
    if n == 0 {
        bail!("n: dimension must be at least 1");
    }
    let polynomial = terms_to_poly(n, None, &file.polynomial, "polynomial")?;
    let b_matrix = matrix_from_rows(n, &file.b_matrix, "b_matrix")?;
    let a_rows = matrix_from_rows(n, &file.a_matrix, "a_matrix")?;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(a_rows.at(i, j).clone());
        }
    }
    let a_matrix = LinearChange::new(n, entries)
        .map_err(|_| anyhow::anyhow!("a_matrix: matrix is singular"))?;
    let resolution = resolution_override.or(file.resolution).unwrap_or(65_536);
    Ok(EllipticityInput {
        polynomial,
        b_matrix,
        a_matrix,
        resolution,
    })
}

pub struct SurveyInput {
    pub p: usize,
    pub divisor: HomPoly,
}

pub fn build_survey_input(file: &SurveyFile) -> Result<SurveyInput> {
    let n = file.n;
    if n == 0 {
        bail!("n: dimension must be at least 1");
    }
    if file.p == 0 {
        bail!("p: must be at least 1");
    }
    let divisor = terms_to_poly(n, None, &file.divisor, "divisor")?;
    if divisor.degree() != 2 * file.p {
        bail!(
            "divisor: degree {} does not equal 2p = {}",
            divisor.degree(),
            2 * file.p
        );
    }
    Ok(SurveyInput { p: file.p, divisor })
}

fn rational_to_pair(
    value: &fischer_cauchy::numerics::BigRational,
    ctx: &str,
) -> Result<RationalPair> {
    use num_traits::ToPrimitive;
    let num = value
        .numer()
        .to_i64()
        .with_context(|| format!("{ctx}: numerator exceeds the i64 file range"))?;
    let den = value
        .denom()
        .to_i64()
        .with_context(|| format!("{ctx}: denominator exceeds the i64 file range"))?;
    Ok((num, den))
}

fn coeff_to_spec(value: &GaussianRational, ctx: &str) -> Result<CoeffSpec> {
    Ok(CoeffSpec {
        re: rational_to_pair(&value.re, &format!("{ctx}.re"))?,
        im: rational_to_pair(&value.im, &format!("{ctx}.im"))?,
    })
}

fn poly_to_terms(poly: &HomPoly, ctx: &str) -> Result<Vec<TermSpec>> {
    poly.terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(alpha, coeff)| {
            Ok(TermSpec {
                exps: alpha.exponents().to_vec(),
                coeff: coeff_to_spec(coeff, ctx)?,
            })
        })
        .collect()
}

fn series_to_parts(series: &GradedSeries, ctx: &str) -> Result<Vec<SeriesPartSpec>> {
    series
        .iter_parts()
        .map(|(degree, poly)| {
            Ok(SeriesPartSpec {
                degree,
                polynomial: poly_to_terms(poly, ctx)?,
            })
        })
        .collect()
}

/// Lossless encoding of a problem back into the file schema (coefficients
/// must fit i64 rational pairs).
pub fn problem_to_file(problem: &Problem) -> Result<ProblemFile> {
    use fischer_cauchy::solver::PrincipalPart;
    let principal = match problem.operator().principal_part() {
        PrincipalPart::LaplacianPower(p) => PrincipalSpec {
            laplacian_power: Some(p),
            symbol: None,
        },
        PrincipalPart::GeneralSymbol => PrincipalSpec {
            laplacian_power: None,
            symbol: Some(poly_to_terms(
                problem.operator().principal(),
                "principal.symbol",
            )?),
        },
    };
    let lower_order = problem
        .operator()
        .lower_order()
        .iter()
        .map(|(alpha, series)| {
            Ok(LowerOrderSpec {
                alpha: alpha.exponents().to_vec(),
                series: series_to_parts(series, "lower_order.series")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProblemFile {
        n: problem.n(),
        principal,
        lower_order,
        divisor: poly_to_terms(problem.divisor(), "divisor")?,
        rhs: series_to_parts(problem.rhs(), "rhs")?,
        max_degree: problem.max_degree(),
    })
}
