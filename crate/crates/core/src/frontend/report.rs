//! JSON reports and DOT export.
//!
//! Reports refer to elements and points by label. Field order is fixed by the
//! struct definitions, so equal inputs give byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;

use crate::action::ContractionVerdict;
use crate::criteria::{PropertyReport, VerdictPair};
use crate::error::Error;
use crate::germs::GermGroupoid;
use crate::semigroup::InverseSemigroup;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceInfo {
    pub name: String,
    pub order: usize,
    pub idempotents: usize,
    pub spectrum_size: usize,
    pub arrows: usize,
    pub units: usize,
    pub e_star_unitary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Properties {
    pub hausdorff: VerdictPair,
    pub essentially_principal: VerdictPair,
    pub minimal: VerdictPair,
    pub locally_contracting: VerdictPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionLevelDoc {
    pub topologically_free: bool,
    pub irreducible: bool,
    pub locally_contracting: ContractionVerdict,
    pub groupoid_locally_contracting: ContractionVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverDoc {
    pub s: String,
    pub cover: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairDoc {
    pub s: String,
    pub e: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyDoc {
    pub e: String,
    pub f: String,
    pub conjugators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalDoc {
    pub failure: Option<(String, String)>,
    pub families: Vec<FamilyDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionDoc {
    pub e: String,
    pub s: String,
    pub family: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocContrDoc {
    pub vacuous: bool,
    pub failure: Option<String>,
    pub witnesses: Vec<ContractionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub hausdorff_covers: Vec<CoverDoc>,
    pub top_free: Option<PairDoc>,
    pub minimal: MinimalDoc,
    pub locally_contracting: LocContrDoc,
    pub easier_locally_contracting: LocContrDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CstarDoc {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub conclusions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub instance: InstanceInfo,
    pub properties: Properties,
    pub action_level: ActionLevelDoc,
    pub witnesses: Witnesses,
    pub cstar_flags: CstarDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorDocument {
    pub schema_version: u32,
    pub name: String,
    pub error: ErrorInfo,
}

impl ReportDocument {
    pub fn new(name: &str, s: &InverseSemigroup, r: &PropertyReport) -> Self {
        let l = |i: usize| s.label(i).to_string();
        let labels = |xs: &[usize]| xs.iter().map(|&i| l(i)).collect::<Vec<_>>();
        let w = Witnesses {
            hausdorff_covers: r
                .hausdorff_witness
                .covers
                .iter()
                .map(|c| CoverDoc { s: l(c.s), cover: labels(&c.cover) })
                .collect(),
            top_free: r.top_free_witness.witness.map(|w| PairDoc { s: l(w.s), e: l(w.e) }),
            minimal: MinimalDoc {
                failure: r.minimal_witness.failure.map(|(e, f)| (l(e), l(f))),
                families: r
                    .minimal_witness
                    .families
                    .iter()
                    .map(|f| FamilyDoc { e: l(f.e), f: l(f.f), conjugators: labels(&f.conjugators) })
                    .collect(),
            },
            locally_contracting: LocContrDoc {
                vacuous: r.locally_contracting_witness.vacuous,
                failure: r.locally_contracting_witness.failure.map(l),
                witnesses: r
                    .locally_contracting_witness
                    .witnesses
                    .iter()
                    .map(|w| ContractionDoc { e: l(w.e), s: l(w.s), family: labels(&w.family) })
                    .collect(),
            },
            easier_locally_contracting: LocContrDoc {
                vacuous: r.easier_locally_contracting.vacuous,
                failure: r.easier_locally_contracting.failure.map(l),
                witnesses: r
                    .easier_locally_contracting
                    .witnesses
                    .iter()
                    .map(|w| ContractionDoc { e: l(w.e), s: l(w.s), family: labels(&[w.f0, w.f1]) })
                    .collect(),
            },
        };
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            instance: InstanceInfo {
                name: name.to_string(),
                order: s.len(),
                idempotents: s.idempotents().len(),
                spectrum_size: r.spectrum_size,
                arrows: r.arrows,
                units: r.units,
                e_star_unitary: r.e_star_unitary,
            },
            properties: Properties {
                hausdorff: r.hausdorff,
                essentially_principal: r.essentially_principal,
                minimal: r.minimal,
                locally_contracting: r.locally_contracting,
            },
            action_level: ActionLevelDoc {
                topologically_free: r.action_level.topologically_free,
                irreducible: r.action_level.irreducible,
                locally_contracting: r.action_level.locally_contracting,
                groupoid_locally_contracting: r.groupoid_contraction,
            },
            witnesses: w,
            cstar_flags: CstarDoc {
                a: r.cstar_flags.a,
                b: r.cstar_flags.b,
                c: r.cstar_flags.c,
                d: r.cstar_flags.d,
                conclusions: r.cstar_flags.conclusions.clone(),
            },
            timing_ms: None,
        }
    }
}

impl ErrorDocument {
    pub fn new(name: &str, err: &Error) -> Self {
        ErrorDocument {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            error: ErrorInfo { code: error_code(err), message: err.to_string() },
        }
    }
}

/// Stable machine-readable name of an error variant.
pub fn error_code(err: &Error) -> &'static str {
    match err {
        Error::EmptyTable => "EmptyTable",
        Error::RaggedTable { .. } => "RaggedTable",
        Error::EntryOutOfRange { .. } => "EntryOutOfRange",
        Error::ZeroOutOfRange { .. } => "ZeroOutOfRange",
        Error::NotAssociative { .. } => "NotAssociative",
        Error::NoZero => "NoZero",
        Error::ZeroNotAbsorbing(_) => "ZeroNotAbsorbing",
        Error::InverseNotUnique(_) => "InverseNotUnique",
        Error::InverseMissing(_) => "InverseMissing",
        Error::NotIdempotent(_) => "NotIdempotent",
        Error::NotAnIdeal => "NotAnIdeal",
        Error::NotInjective(_) => "NotInjective",
        Error::DegreeMismatch { .. } => "DegreeMismatch",
        Error::ImageOutOfRange { .. } => "ImageOutOfRange",
        Error::ClosureTooLarge { .. } => "ClosureTooLarge",
        Error::BadLabels(_) => "BadLabels",
        Error::ZeroGeneratesNoFilter => "ZeroGeneratesNoFilter",
        Error::InvalidFilter(_) => "InvalidFilter",
        Error::InvalidCharacter(_) => "InvalidCharacter",
        Error::EmptySpectrum => "EmptySpectrum",
        Error::NotInDomain(_) => "NotInDomain",
        Error::InvalidAction(_) => "InvalidAction",
        Error::DomainViolation { .. } => "DomainViolation",
        Error::PreconditionViolated(_) => "PreconditionViolated",
        Error::TheoremViolation { .. } => "TheoremViolation",
        Error::CapExceeded { .. } => "CapExceeded",
        Error::UnknownFixture(_) => "UnknownFixture",
        Error::Parse(_) => "ParseError",
    }
}

pub fn emit_report<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("report documents serialize");
    out.push('\n');
    out
}

fn quoted(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per unit and one edge, source to range, per non-unit arrow.
pub fn emit_dot(g: &GermGroupoid<'_>) -> String {
    let theta = g.action();
    let mut out = String::from("digraph germs {\n");
    for x in theta.points() {
        writeln!(out, "  u{x} [label={}];", quoted(theta.point_label(x))).unwrap();
    }
    for a in (0..g.len()).filter(|&a| !g.is_unit(a)) {
        writeln!(out, "  u{} -> u{} [label={}];", g.src(a), g.rng(a), quoted(&g.arrow_label(a))).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::standard_action;
    use crate::criteria::full_report;
    use crate::frontend::fixtures::{b2, i2};
    use crate::germs::build_germ_groupoid;

    #[test]
    fn i2_report_fields() {
        let s = i2();
        let doc = ReportDocument::new("I2", &s, &full_report(&s).unwrap());
        assert_eq!(doc.instance.spectrum_size, 2);
        assert_eq!(doc.instance.arrows, 4);
        assert_eq!(doc.properties.hausdorff, VerdictPair { criterion: true, direct: true });
        let json = emit_report(&doc);
        assert!(json.contains("\"schema_version\": 1"));
        assert!(!json.contains("timing_ms"));
        assert_eq!(json, emit_report(&ReportDocument::new("I2", &s, &full_report(&s).unwrap())));
    }

    #[test]
    fn empty_spectrum_document() {
        let zero = InverseSemigroup::from_table(&[vec![0]], 0).unwrap();
        let err = full_report(&zero).unwrap_err();
        let json = emit_report(&ErrorDocument::new("zero", &err));
        assert!(json.contains("\"code\": \"EmptySpectrum\""));
    }

    #[test]
    fn b2_dot() {
        let s = b2();
        let spec = s.tight_spectrum().unwrap();
        let theta = standard_action(&s, &spec).unwrap();
        let g = build_germ_groupoid(&theta).unwrap();
        let dot = emit_dot(&g);
        assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 2);
        let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
        assert_eq!(edges.len(), 2);
        assert!(edges.iter().any(|e| e.contains("e12")));
        assert!(edges.iter().any(|e| e.contains("e21")));
    }
}
