//! Text and JSON reports of Lefschetz dimensions and predicate verdicts.

use lefschetz_core::lefschetz::{
    check_hard_lefschetz, check_poincare_duality, check_symmetry, lefschetz_subalgebra, primitive_dims,
    LefschetzData, LefschetzError, PredicateVerdict, Witness,
};
use lefschetz_core::scalar::format_scalar;
use lefschetz_core::{Element, GradedAlgebra};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub kind: &'static str,
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub k: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub predicate: String,
    pub passed: bool,
    pub degrees: Vec<DegreeReport>,
}

impl From<&PredicateVerdict> for VerdictReport {
    fn from(v: &PredicateVerdict) -> Self {
        VerdictReport {
            predicate: v.predicate.to_string(),
            passed: v.passed(),
            degrees: v
                .degrees
                .iter()
                .map(|d| DegreeReport {
                    k: d.k,
                    passed: d.passed,
                    witness: d.witness.as_ref().map(|w| WitnessReport {
                        kind: match w {
                            Witness::DimensionMismatch { .. } => "dimension-mismatch",
                            Witness::Kernel { .. } => "kernel",
                        },
                        text: w.to_string(),
                        coords: match w {
                            Witness::Kernel { coords, .. } => Some(coords.iter().map(format_scalar).collect()),
                            Witness::DimensionMismatch { .. } => None,
                        },
                    }),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub top_degree: usize,
    pub ambient_dims: Vec<usize>,
    pub lefschetz_dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive_dims: Option<Vec<usize>>,
    pub verdicts: Vec<VerdictReport>,
}

/// Builds the full report; hard Lefschetz and primitive dimensions are
/// included only when `omega` is given.
pub fn build_report(
    a: &GradedAlgebra,
    l: &LefschetzData<'_>,
    omega: Option<&Element<'_>>,
) -> Result<Report, LefschetzError> {
    let mut verdicts = vec![
        VerdictReport::from(&check_symmetry(l)),
        VerdictReport::from(&check_poincare_duality(l)),
    ];
    let mut primitive = None;
    if let Some(w) = omega {
        verdicts.push(VerdictReport::from(&check_hard_lefschetz(l, w)?));
        primitive = Some(primitive_dims(l, w)?.dims);
    }
    Ok(Report {
        name: a.name().to_string(),
        top_degree: a.top_degree(),
        ambient_dims: a.dims(),
        lefschetz_dims: l.dims(),
        omega: omega.map(ToString::to_string),
        primitive_dims: primitive,
        verdicts,
    })
}

/// Convenience wrapper using the full degree-one component as generators.
pub fn report_for(a: &GradedAlgebra, omega: Option<&Element<'_>>) -> Result<Report, LefschetzError> {
    let l = lefschetz_subalgebra(a, None)?;
    build_report(a, &l, omega)
}

pub fn join_counts(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("algebra: {}\n", self.name));
        out.push_str(&format!("top degree: {}\n", self.top_degree));
        out.push_str(&format!("ambient dims: {}\n", join_counts(&self.ambient_dims)));
        out.push_str(&format!("lefschetz dims: {}\n", join_counts(&self.lefschetz_dims)));
        if let Some(w) = &self.omega {
            out.push_str(&format!("omega: {w}\n"));
        }
        if let Some(p) = &self.primitive_dims {
            out.push_str(&format!("primitive dims: {}\n", join_counts(p)));
        }
        for v in &self.verdicts {
            out.push_str(&verdict_text(v));
        }
        out
    }
}

pub fn verdict_text(v: &VerdictReport) -> String {
    let mut out = format!("{}: {}\n", v.predicate, if v.passed { "pass" } else { "fail" });
    for d in &v.degrees {
        match &d.witness {
            None => out.push_str(&format!("  k={}: pass\n", d.k)),
            Some(w) => out.push_str(&format!("  k={}: {}\n", d.k, w.text)),
        }
    }
    out
}
