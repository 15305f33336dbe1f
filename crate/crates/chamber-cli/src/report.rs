//! Versioned JSON document externalizing an index report.

use serde::{Deserialize, Serialize};

use chamber_index::engine::{CertificateRule, GeometricIndex, IndexReport, Refusal};

pub const SCHEMA_VERSION: &str = "1";

/// Machine-readable index report, schema version 1. Field order is the
/// serialization order, which keeps output byte-stable for a given link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub link_name: String,
    pub disc_counts: Vec<usize>,
    pub components: Vec<ComponentDocument>,
    pub algebraic_total: u64,
    pub geometric: GeometricDocument,
    pub certificates: Vec<CertificateDocument>,
    pub refusals: Vec<RefusalDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDocument {
    pub id: usize,
    pub winding: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GeometricDocument {
    Exact { value: u64, parity: u8 },
    Bounds { lower: u64, upper: u64, parity: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub chamber: usize,
    pub rule: String,
    pub k: usize,
    pub l: usize,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefusalDocument {
    NonUniformDiscCounts,
    UncertifiedChamber { chamber: usize },
    IndexZeroUncertified,
}

impl ReportDocument {
    pub fn from_report(link_name: &str, report: &IndexReport) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            link_name: link_name.to_string(),
            disc_counts: report.disc_counts.clone(),
            components: report
                .windings
                .iter()
                .enumerate()
                .map(|(id, &winding)| ComponentDocument { id, winding })
                .collect(),
            algebraic_total: report.algebraic_total_signed.unsigned_abs(),
            geometric: match report.geometric {
                GeometricIndex::Exact { value } => GeometricDocument::Exact {
                    value,
                    parity: (value % 2) as u8,
                },
                GeometricIndex::Bounds {
                    lower,
                    upper,
                    parity,
                } => GeometricDocument::Bounds {
                    lower,
                    upper,
                    parity,
                },
            },
            certificates: report
                .certificates
                .iter()
                .map(|c| CertificateDocument {
                    chamber: c.chamber,
                    rule: match c.rule {
                        CertificateRule::ClaspCorollary => "Clasp Corollary".to_string(),
                        CertificateRule::ChamberCorollary => "Chamber Corollary".to_string(),
                    },
                    k: c.clasps,
                    l: c.spanning_arcs,
                    n: c.disc_intersections,
                })
                .collect(),
            refusals: report
                .refusals
                .iter()
                .map(|r| match r {
                    Refusal::NonUniformDiscCounts => RefusalDocument::NonUniformDiscCounts,
                    Refusal::UncertifiedChamber { chamber } => {
                        RefusalDocument::UncertifiedChamber { chamber: *chamber }
                    }
                    Refusal::IndexZeroUncertified => RefusalDocument::IndexZeroUncertified,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents always serialize")
    }
}
