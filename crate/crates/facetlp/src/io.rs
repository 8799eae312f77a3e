//! Problem, result, and trace serialization. All row and variable indices in
//! external files are 1-based; the in-memory representation is 0-based.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{CanonicalLp, InitialCertificate, InstanceMetadata, RowOrigin, StandardLp};
use crate::linalg::DenseMatrix;
use crate::solver::{AuditReport, SolveOptions, SolveOutcome, Status};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension error: field `{field}` has length {got}, expected {expected}")]
    Dimension {
        field: String,
        got: usize,
        expected: usize,
    },
    #[error("index error: {0}")]
    Index(String),
    #[error("non-finite number in field `{0}`")]
    NonFinite(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct ConstraintFile {
    coeffs: Vec<f64>,
    rhs: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct CanonicalRowFile {
    coeffs: Vec<f64>,
    rhs: f64,
    origin: OriginFile,
}

/// Row provenance tag; `index` is 1-based.
#[derive(Debug, Serialize, Deserialize)]
struct OriginFile {
    kind: String,
    index: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct CertificateFile {
    base: Vec<usize>,
    y0: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ProblemFile {
    name: String,
    #[serde(default)]
    canonical: bool,
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    objective: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constraints: Option<Vec<ConstraintFile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<CanonicalRowFile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<InstanceMetadata>,
}

#[derive(Debug)]
pub enum ParsedProblem {
    Standard(StandardLp),
    Canonical(CanonicalLp, InitialCertificate),
}

fn check_len(field: &str, got: usize, expected: usize) -> Result<(), IoError> {
    if got != expected {
        Err(IoError::Dimension {
            field: field.to_string(),
            got,
            expected,
        })
    } else {
        Ok(())
    }
}

fn check_finite(field: &str, values: &[f64]) -> Result<(), IoError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(IoError::NonFinite(field.to_string()))
    }
}

fn origin_to_file(o: &RowOrigin) -> OriginFile {
    match *o {
        RowOrigin::General(i) => OriginFile {
            kind: "general".into(),
            index: i + 1,
        },
        RowOrigin::LowerBound(j) => OriginFile {
            kind: "lower_bound".into(),
            index: j + 1,
        },
        RowOrigin::UpperBound(j) => OriginFile {
            kind: "upper_bound".into(),
            index: j + 1,
        },
    }
}

fn origin_from_file(o: &OriginFile) -> Result<RowOrigin, IoError> {
    if o.index == 0 {
        return Err(IoError::Index("origin index must be 1-based".into()));
    }
    match o.kind.as_str() {
        "general" => Ok(RowOrigin::General(o.index - 1)),
        "lower_bound" => Ok(RowOrigin::LowerBound(o.index - 1)),
        "upper_bound" => Ok(RowOrigin::UpperBound(o.index - 1)),
        other => Err(IoError::Parse(format!("unknown origin kind `{other}`"))),
    }
}

pub fn parse_problem(text: &str) -> Result<ParsedProblem, IoError> {
    let file: ProblemFile =
        serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    let d = file.d;
    check_len("objective", file.objective.len(), d)?;
    check_finite("objective", &file.objective)?;

    if file.canonical {
        let rows = file
            .rows
            .ok_or_else(|| IoError::Parse("canonical file missing `rows`".into()))?;
        let cert = file
            .certificate
            .ok_or_else(|| IoError::Parse("canonical file missing `certificate`".into()))?;
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * d);
        let mut b = Vec::with_capacity(n);
        let mut row_origin = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            check_len(&format!("rows[{}].coeffs", i + 1), row.coeffs.len(), d)?;
            check_finite(&format!("rows[{}].coeffs", i + 1), &row.coeffs)?;
            if !row.rhs.is_finite() {
                return Err(IoError::NonFinite(format!("rows[{}].rhs", i + 1)));
            }
            entries.extend_from_slice(&row.coeffs);
            b.push(row.rhs);
            row_origin.push(origin_from_file(&row.origin)?);
        }
        check_len("certificate.base", cert.base.len(), d)?;
        check_len("certificate.y0", cert.y0.len(), d)?;
        check_finite("certificate.y0", &cert.y0)?;
        let mut base = Vec::with_capacity(d);
        for &i in &cert.base {
            if i == 0 || i > n {
                return Err(IoError::Index(format!(
                    "certificate base index {i} out of 1..={n}"
                )));
            }
            base.push(i - 1);
        }
        let a = DenseMatrix::new(n, d, entries).map_err(|e| IoError::Parse(e.to_string()))?;
        Ok(ParsedProblem::Canonical(
            CanonicalLp {
                name: file.name,
                c: file.objective,
                a,
                b,
                row_origin,
            },
            InitialCertificate { base, y0: cert.y0 },
        ))
    } else {
        let constraints = file.constraints.unwrap_or_default();
        let m = file.m.unwrap_or(constraints.len());
        check_len("constraints", constraints.len(), m)?;
        let lower = file
            .lower
            .ok_or_else(|| IoError::Parse("missing `lower`".into()))?;
        let upper = file
            .upper
            .ok_or_else(|| IoError::Parse("missing `upper`".into()))?;
        check_len("lower", lower.len(), d)?;
        check_len("upper", upper.len(), d)?;
        check_finite("lower", &lower)?;
        check_finite("upper", &upper)?;
        let mut entries = Vec::with_capacity(m * d);
        let mut b_bar = Vec::with_capacity(m);
        for (i, c) in constraints.iter().enumerate() {
            check_len(&format!("constraints[{}].coeffs", i + 1), c.coeffs.len(), d)?;
            check_finite(&format!("constraints[{}].coeffs", i + 1), &c.coeffs)?;
            if !c.rhs.is_finite() {
                return Err(IoError::NonFinite(format!("constraints[{}].rhs", i + 1)));
            }
            entries.extend_from_slice(&c.coeffs);
            b_bar.push(c.rhs);
        }
        let a_bar = DenseMatrix::new(m, d, entries).map_err(|e| IoError::Parse(e.to_string()))?;
        Ok(ParsedProblem::Standard(StandardLp {
            name: file.name,
            c_bar: file.objective,
            a_bar,
            b_bar,
            lower,
            upper,
            metadata: file.metadata,
        }))
    }
}

pub fn write_standard(p: &StandardLp) -> String {
    let file = ProblemFile {
        name: p.name.clone(),
        canonical: false,
        d: p.c_bar.len(),
        m: Some(p.b_bar.len()),
        objective: p.c_bar.clone(),
        constraints: Some(
            (0..p.b_bar.len())
                .map(|i| ConstraintFile {
                    coeffs: p.a_bar.row(i).to_vec(),
                    rhs: p.b_bar[i],
                })
                .collect(),
        ),
        lower: Some(p.lower.clone()),
        upper: Some(p.upper.clone()),
        rows: None,
        certificate: None,
        metadata: p.metadata.clone(),
    };
    serde_json::to_string_pretty(&file).expect("problem serialization cannot fail")
}

pub fn write_canonical(p: &CanonicalLp, cert: &InitialCertificate) -> String {
    let file = ProblemFile {
        name: p.name.clone(),
        canonical: true,
        d: p.dim(),
        m: None,
        objective: p.c.clone(),
        constraints: None,
        lower: None,
        upper: None,
        rows: Some(
            (0..p.num_rows())
                .map(|i| CanonicalRowFile {
                    coeffs: p.a.row(i).to_vec(),
                    rhs: p.b[i],
                    origin: origin_to_file(&p.row_origin[i]),
                })
                .collect(),
        ),
        certificate: Some(CertificateFile {
            base: cert.base.iter().map(|&i| i + 1).collect(),
            y0: cert.y0.clone(),
        }),
        metadata: None,
    };
    serde_json::to_string_pretty(&file).expect("problem serialization cannot fail")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PivotRecordFile {
    pub k: usize,
    /// Entering row, 1-based.
    pub p: usize,
    /// Leaving row, 1-based.
    pub q: usize,
    pub ratio: f64,
    pub sigma_p: f64,
    pub obj_before: f64,
    pub obj_after: f64,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub redundant_removed: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ResultFile {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
    pub iterations: usize,
    pub bound: usize,
    pub pivots: Vec<PivotRecordFile>,
    pub audit: AuditReport,
    pub tolerances: SolveOptions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<String>,
}

pub fn result_file(o: &SolveOutcome) -> ResultFile {
    ResultFile {
        status: o.status,
        x: o.x_opt.clone(),
        objective: o.objective,
        iterations: o.iterations,
        bound: o.bound,
        pivots: o
            .pivots
            .iter()
            .map(|r| PivotRecordFile {
                k: r.iteration,
                p: r.entering + 1,
                q: r.leaving + 1,
                ratio: r.ratio,
                sigma_p: r.sigma_p,
                obj_before: r.objective_before,
                obj_after: r.objective_after,
                degenerate: r.degenerate,
                redundant_removed: r.redundancy_removed.map(|i| i + 1),
            })
            .collect(),
        audit: o.audit.clone(),
        tolerances: o.options.clone(),
        breakdown: o.breakdown.clone(),
    }
}

pub fn write_result(o: &SolveOutcome) -> String {
    serde_json::to_string_pretty(&result_file(o)).expect("result serialization cannot fail")
}

pub fn parse_result(text: &str) -> Result<ResultFile, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))
}

/// One CSV line per pivot: k, p, q, ratio, sigma_p, obj_before, obj_after,
/// degenerate, redundant_removed. Indices 1-based, empty field when no row
/// was removed.
pub fn write_trace_csv(o: &SolveOutcome) -> String {
    let mut out =
        String::from("k,p,q,ratio,sigma_p,obj_before,obj_after,degenerate,redundant_removed\n");
    for r in &o.pivots {
        let removed = r
            .redundancy_removed
            .map(|i| (i + 1).to_string())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.iteration,
            r.entering + 1,
            r.leaving + 1,
            r.ratio,
            r.sigma_p,
            r.objective_before,
            r.objective_after,
            r.degenerate,
            removed
        ));
    }
    out
}
