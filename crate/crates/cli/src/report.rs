//! Report encoding. Reports are deterministic byte-for-byte: struct fields
//! serialize in declaration order, exact rationals render as `"num/den"`
//! strings, and floats render with 17 significant digits through a raw JSON
//! token (`null` when not finite).

use fischer_cauchy::ellipticity::{EllipticityCertificate, Verdict, Witness};
use fischer_cauchy::numerics::{BigRational, GaussianRational};
use fischer_cauchy::polynomials::{GradedSeries, HomPoly};
use fischer_cauchy::solver::{KZeroRegime, SolutionReport, SurveyRow, WellposednessCertificate};
use serde::Serialize;
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn input_digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// f64 rendered as a JSON number with 17 significant digits.
#[derive(Debug, Clone, Copy)]
pub struct Float17(pub f64);

impl Serialize for Float17 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let token = format!("{:.16e}", self.0);
            let raw = RawValue::from_string(token).map_err(serde::ser::Error::custom)?;
            raw.serialize(serializer)
        } else {
            serializer.serialize_none()
        }
    }
}

pub fn rational_string(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

#[derive(Debug, Clone, Serialize)]
pub struct GaussianOut {
    pub re: String,
    pub im: String,
}

impl GaussianOut {
    pub fn from_value(value: &GaussianRational) -> Self {
        GaussianOut {
            re: rational_string(&value.re),
            im: rational_string(&value.im),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TermOut {
    pub exps: Vec<usize>,
    pub coeff: GaussianOut,
}

/// Terms in descending graded-lex order, matching the canonical text form.
pub fn poly_terms(poly: &HomPoly) -> Vec<TermOut> {
    poly.terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(alpha, coeff)| TermOut {
            exps: alpha.exponents().to_vec(),
            coeff: GaussianOut::from_value(coeff),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesPartOut {
    pub degree: usize,
    pub polynomial: Vec<TermOut>,
}

pub fn series_parts(series: &GradedSeries) -> Vec<SeriesPartOut> {
    series
        .iter_parts()
        .map(|(degree, poly)| SeriesPartOut {
            degree,
            polynomial: poly_terms(poly),
        })
        .collect()
}

pub fn regime_label(regime: KZeroRegime) -> &'static str {
    match regime {
        KZeroRegime::Bijection => "bijection",
        KZeroRegime::PositiveRadius => "positive-radius",
        KZeroRegime::OutsideGuarantee => "outside-guarantee",
        KZeroRegime::UnknownPrincipal => "unknown-principal",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeRecordOut {
    pub m: usize,
    pub dim: usize,
    pub invertible: bool,
    pub det: GaussianOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rf_norm_sq: Option<String>,
    pub lower_ratio: Float17,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReportOut {
    pub tool_version: &'static str,
    pub input_digest: String,
    pub command: &'static str,
    pub n: usize,
    pub max_degree: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_degree: Option<usize>,
    pub regime: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<SeriesPartOut>>,
    pub per_degree: Vec<DegreeRecordOut>,
    pub residual_ok: bool,
    pub radius_estimate: Option<Float17>,
}

impl SolveReportOut {
    pub fn solved(digest: String, n: usize, max_degree: usize, report: &SolutionReport) -> Self {
        SolveReportOut {
            tool_version: TOOL_VERSION,
            input_digest: digest,
            command: "solve",
            n,
            max_degree,
            status: "ok",
            singular_degree: None,
            regime: regime_label(report.regime),
            solution: Some(series_parts(&report.solution)),
            per_degree: report
                .per_degree
                .iter()
                .map(|r| DegreeRecordOut {
                    m: r.m,
                    dim: r.dim,
                    invertible: r.invertible,
                    det: GaussianOut::from_value(&r.det),
                    rf_norm_sq: Some(rational_string(&r.rf_norm_sq)),
                    lower_ratio: Float17(r.lower_ratio),
                })
                .collect(),
            residual_ok: report.residual_ok,
            radius_estimate: report.radius_estimate.map(Float17),
        }
    }

    pub fn singular(
        digest: String,
        n: usize,
        max_degree: usize,
        degree: usize,
        regime: KZeroRegime,
        certificates: &[WellposednessCertificate],
    ) -> Self {
        SolveReportOut {
            tool_version: TOOL_VERSION,
            input_digest: digest,
            command: "solve",
            n,
            max_degree,
            status: "singular-degree",
            singular_degree: Some(degree),
            regime: regime_label(regime),
            solution: None,
            per_degree: certificates.iter().map(certificate_out).collect(),
            residual_ok: false,
            radius_estimate: None,
        }
    }
}

pub fn certificate_out(cert: &WellposednessCertificate) -> DegreeRecordOut {
    DegreeRecordOut {
        m: cert.m,
        dim: cert.dim,
        invertible: cert.invertible,
        det: GaussianOut::from_value(&cert.det),
        rf_norm_sq: None,
        lower_ratio: Float17(cert.lower_ratio),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WellposedReportOut {
    pub tool_version: &'static str,
    pub input_digest: String,
    pub command: &'static str,
    pub n: usize,
    pub max_degree: usize,
    pub all_invertible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_singular_degree: Option<usize>,
    pub certificates: Vec<DegreeRecordOut>,
}

impl WellposedReportOut {
    pub fn new(
        digest: String,
        n: usize,
        max_degree: usize,
        certs: &[WellposednessCertificate],
    ) -> Self {
        let first_singular = certs.iter().find(|c| !c.invertible).map(|c| c.m);
        WellposedReportOut {
            tool_version: TOOL_VERSION,
            input_digest: digest,
            command: "wellposed",
            n,
            max_degree,
            all_invertible: first_singular.is_none(),
            first_singular_degree: first_singular,
            certificates: certs.iter().map(certificate_out).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessOut {
    NonrealCoefficient {
        exps: Vec<usize>,
        coeff: GaussianOut,
    },
    SpherePoint {
        point: Vec<Float17>,
        value: Float17,
    },
}

pub fn verdict_label(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Elliptic => "elliptic",
        Verdict::NotElliptic => "not-elliptic",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EllipticityReportOut {
    pub tool_version: &'static str,
    pub input_digest: String,
    pub command: &'static str,
    pub n: usize,
    pub resolution: usize,
    pub verdict: &'static str,
    pub real_on_reals: bool,
    pub delta_grid_min: Option<Float17>,
    pub delta_lower: Option<Float17>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suggested_resolution: Option<usize>,
    pub transformed: Vec<TermOut>,
    /// The check quantifies over the *supplied* change of variables only; a
    /// negative verdict does not refute the existential property.
    pub scope: &'static str,
}

impl EllipticityReportOut {
    pub fn new(
        digest: String,
        n: usize,
        cert: &EllipticityCertificate,
        transformed: &HomPoly,
    ) -> Self {
        EllipticityReportOut {
            tool_version: TOOL_VERSION,
            input_digest: digest,
            command: "ellipticity",
            n,
            resolution: cert.resolution,
            verdict: verdict_label(cert.verdict),
            real_on_reals: cert.real_on_reals,
            delta_grid_min: cert.delta_grid_min.map(Float17),
            delta_lower: cert.delta_lower.map(Float17),
            witness: cert.witness.as_ref().map(|w| match w {
                Witness::NonRealCoefficient {
                    exponents,
                    coefficient,
                } => WitnessOut::NonrealCoefficient {
                    exps: exponents.clone(),
                    coeff: GaussianOut::from_value(coefficient),
                },
                Witness::SpherePoint { point, value } => WitnessOut::SpherePoint {
                    point: point.iter().copied().map(Float17).collect(),
                    value: Float17(*value),
                },
            }),
            suggested_resolution: cert.suggested_resolution,
            transformed: poly_terms(transformed),
            scope: "supplied-transform-only",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyRowOut {
    pub m: usize,
    pub min_ratio: Float17,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyReportOut {
    pub tool_version: &'static str,
    pub input_digest: String,
    pub command: &'static str,
    pub n: usize,
    pub p: usize,
    pub m_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub prng: &'static str,
    pub divisor_elliptic: bool,
    pub lower_bound_ratios: Vec<SurveyRowOut>,
    pub bounded_ratio_sequence: Vec<Float17>,
    pub one_var_ratio_sequence: Vec<Float17>,
}

impl SurveyReportOut {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        digest: String,
        n: usize,
        p: usize,
        m_max: usize,
        samples: usize,
        seed: u64,
        divisor_elliptic: bool,
        rows: &[SurveyRow],
        bounded_ratios: &[f64],
        one_var_ratios: &[f64],
    ) -> Self {
        SurveyReportOut {
            tool_version: TOOL_VERSION,
            input_digest: digest,
            command: "survey",
            n,
            p,
            m_max,
            samples,
            seed,
            prng: "chacha8",
            divisor_elliptic,
            lower_bound_ratios: rows
                .iter()
                .map(|r| SurveyRowOut {
                    m: r.m,
                    min_ratio: Float17(r.min_ratio),
                })
                .collect(),
            bounded_ratio_sequence: bounded_ratios.iter().copied().map(Float17).collect(),
            one_var_ratio_sequence: one_var_ratios.iter().copied().map(Float17).collect(),
        }
    }
}

/// Canonical bytes of a report: pretty JSON with a trailing newline.
pub fn to_bytes<T: Serialize>(report: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(report).expect("report serialization cannot fail");
    bytes.push(b'\n');
    bytes
}
