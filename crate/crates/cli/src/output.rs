//! Report records and writers. Every JSON record carries the schema version
//! and the tolerance that was actually used; field order is fixed by struct
//! declaration so identical runs emit identical bytes.

use braidform_core::{ClosedFormComparison, ProjectionComparison, SupertraceReport};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct ResidualRecord {
    pub schema: u32,
    pub command: &'static str,
    pub matrix: String,
    pub check: &'static str,
    pub frobenius_residual: f64,
    pub tolerance: f64,
    pub passes: bool,
}

#[derive(Serialize)]
pub struct InvariantDimRecord {
    pub schema: u32,
    pub n: usize,
    pub dimension: usize,
    pub method: &'static str,
    pub residual_max: f64,
    pub tolerance: f64,
}

#[derive(Serialize)]
pub struct BasisEntry {
    /// One-based basis index.
    pub index: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct InvariantBasisRecord {
    pub schema: u32,
    pub n: usize,
    pub dimension: usize,
    pub method: &'static str,
    pub residual_max: f64,
    pub tolerance: f64,
    pub basis: Vec<Vec<BasisEntry>>,
}

#[derive(Serialize)]
pub struct ProjectionRecord {
    pub schema: u32,
    pub matrix: String,
    pub h0: usize,
    pub n: usize,
    #[serde(flatten)]
    pub comparison: ProjectionComparison,
    pub tolerance: f64,
    pub passes: bool,
}

#[derive(Serialize)]
pub struct BettiRecord {
    pub schema: u32,
    pub matrix: String,
    pub n: usize,
    pub invariant_dimension: usize,
    pub method: &'static str,
    /// Exact coefficient as a p/q string.
    pub c_n_pi: String,
    pub c_n_pi_float: f64,
    pub values: Vec<f64>,
    pub chi: f64,
    pub tolerance: f64,
}

#[derive(Serialize)]
pub struct SupertraceRecord {
    pub schema: u32,
    pub matrix: String,
    pub chi: f64,
    pub n_max: usize,
    pub sign: &'static str,
    pub c0: &'static str,
    pub constant_value: f64,
    pub coefficients: Vec<String>,
    pub partial_sums: Vec<f64>,
    pub limit_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormRecord>,
    pub tolerance: f64,
}

#[derive(Serialize)]
pub struct ClosedFormRecord {
    pub displayed_expression: &'static str,
    pub displayed_value: f64,
    pub derived_expression: &'static str,
    pub derived_value: f64,
    pub values_agree: bool,
    /// Set when the displayed expression deviates from the resummed series.
    pub deviation_from_displayed_form: Option<f64>,
}

impl ClosedFormRecord {
    pub fn from_comparison(c: &ClosedFormComparison) -> Self {
        Self {
            displayed_expression: c.displayed_expression,
            displayed_value: c.displayed_value,
            derived_expression: c.derived_expression,
            derived_value: c.derived_value,
            values_agree: c.values_agree,
            deviation_from_displayed_form: (!c.values_agree)
                .then_some(c.displayed_value - c.derived_value),
        }
    }
}

#[derive(Serialize)]
pub struct SweepRecord {
    pub schema: u32,
    pub tag: String,
    pub theta: f64,
    pub epsilon: i8,
    pub n: usize,
    pub dimension: usize,
    pub method: &'static str,
    pub residual_max: f64,
    pub tolerance: f64,
}

impl SweepRecord {
    pub fn csv_header() -> &'static str {
        "tag,theta,epsilon,n,dimension,method,residual_max"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:e}",
            self.tag,
            self.theta,
            self.epsilon,
            self.n,
            self.dimension,
            self.method,
            self.residual_max
        )
    }
}

#[derive(Serialize)]
pub struct CatalogEntryRecord {
    pub tag: &'static str,
    pub description: &'static str,
    pub involutive: bool,
    pub invariant_dimension_formula: &'static str,
    pub coefficient_formula: &'static str,
    pub theta_constraint: &'static str,
    pub uses_epsilon: bool,
}

#[derive(Serialize)]
pub struct CatalogRecord {
    pub schema: u32,
    pub entries: Vec<CatalogEntryRecord>,
}

pub fn print_json<T: Serialize>(record: &T) {
    println!("{}", serde_json::to_string(record).expect("serializable"));
}

pub fn supertrace_record(
    matrix: String,
    report: &SupertraceReport,
    coefficients: Vec<String>,
    tolerance: f64,
) -> SupertraceRecord {
    SupertraceRecord {
        schema: SCHEMA_VERSION,
        matrix,
        chi: report.chi,
        n_max: report.n_max,
        sign: report.sign_convention.name(),
        c0: report.constant_term.name(),
        constant_value: report.constant_value,
        coefficients,
        partial_sums: report.partial_sums.clone(),
        limit_estimate: report.limit_estimate,
        closed_form: report
            .closed_form_reference
            .as_ref()
            .map(ClosedFormRecord::from_comparison),
        tolerance,
    }
}
