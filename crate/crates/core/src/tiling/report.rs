//! Runs every analysis on a tiling and collects theorem-level failures.

use serde::Serialize;

use super::{
    components, extract_d_matrix, find_special_vertices, segments, two_color, validate, vertex_census, Census,
    ComponentDecomposition, DMatrix, SegmentRecord, SignAssignment, SpecialVertices, Tiling, TilingError,
    ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantFailure {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub validation: ValidationReport,
    pub census: Option<Census>,
    pub signs: Option<SignAssignment>,
    pub d_matrix: Option<DMatrix>,
    pub components: Option<ComponentDecomposition>,
    pub segments: Vec<SegmentRecord>,
    pub special: Option<SpecialVertices>,
    /// Violations of properties that every valid tiling must have.
    pub invariant_failures: Vec<InvariantFailure>,
}

impl AnalysisReport {
    pub fn ok(&self) -> bool {
        self.validation.passed && self.invariant_failures.is_empty()
    }
}

fn record<T>(fails: &mut Vec<InvariantFailure>, r: Result<T, TilingError>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(TilingError::Invariant { check, detail }) => {
            fails.push(InvariantFailure { check: check.into(), detail });
            None
        }
        Err(e) => {
            fails.push(InvariantFailure { check: "analysis".into(), detail: e.to_string() });
            None
        }
    }
}

/// Validation first; the structural analyses run only on tilings that pass it.
pub fn analyze(t: &Tiling) -> AnalysisReport {
    let validation = validate(t);
    let mut report = AnalysisReport {
        validation,
        census: None,
        signs: None,
        d_matrix: None,
        components: None,
        segments: Vec::new(),
        special: None,
        invariant_failures: Vec::new(),
    };
    if !report.validation.passed {
        return report;
    }
    let fails = &mut report.invariant_failures;
    report.components = record(fails, components(t));
    report.special = Some(find_special_vertices(t, report.components.as_ref()));
    if t.partial {
        return report;
    }
    report.census = record(fails, vertex_census(t));
    if let Some(c) = &report.census {
        if !c.corners_ok {
            fails.push(InvariantFailure { check: "corner angles".into(), detail: "angles at A, B, C".into() });
        }
        if !c.center_identity_holds() {
            fails.push(InvariantFailure {
                check: "center count N_C = 1 + N_1 + 2N_2".into(),
                detail: format!("N_C = {}, N_1 = {}, N_2 = {}, (4,3,1) = {}", c.n_centers, c.n_320, c.n_640, c.n_431),
            });
        }
    }
    report.signs = record(fails, two_color(t));
    if let Some(s) = &report.signs {
        if !s.perimeter_identity_holds(t) {
            fails.push(InvariantFailure {
                check: "M(a+b+c) = X - Y + Z".into(),
                detail: format!("signed count {}", s.m_signed),
            });
        }
    }
    report.d_matrix = record(fails, extract_d_matrix(t));
    report.segments = segments(t);
    for s in &report.segments {
        if s.b_multiple_ok == Some(false) {
            fails.push(InvariantFailure { check: "K divides j in jb = ua + vc".into(), detail: s.relation_text() });
        }
        if s.b_length_ok == Some(false) {
            fails.push(InvariantFailure { check: "all-b segment length at least Kb".into(), detail: s.relation_text() });
        }
    }
    report
}
