//! Index computation and certification: algebraic index from traced
//! windings, per-chamber index bounds, certified geometric index with
//! per-chamber certificates, and the boundary-parallelism conclusions
//! that follow from index factorizations.

use std::fmt;

use thiserror::Error;

use crate::catalog::ChamberContent;
use crate::link::{ChamberLink, InvalidLink};

/// Certified bounds on the geometric index of one chamber's content.
///
/// The lower bound is the sum of certified piece contributions
/// (`2k + l`); the upper bound is realized by an interior disc parallel
/// to the nearer end, so it is the smaller of the two profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChamberIndexBound {
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
}

/// Bounds for a single chamber.
pub fn chamber_index_bounds(content: &ChamberContent) -> ChamberIndexBound {
    let lower = content.certified_lower_bound();
    let (bottom, top) = content.endpoint_profile();
    let upper = bottom.min(top) as u64;
    ChamberIndexBound {
        lower,
        upper,
        exact: lower == upper,
    }
}

/// Which result licensed an exact per-chamber conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateRule {
    /// Contents are clasps and spanning arcs only, with `2k + l = n`.
    ClaspCorollary,
    /// Chamber bounds pin the chamber index to `n` directly.
    ChamberCorollary,
}

impl fmt::Display for CertificateRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateRule::ClaspCorollary => "Clasp Corollary",
            CertificateRule::ChamberCorollary => "Chamber Corollary",
        })
    }
}

/// One line of the per-chamber certification ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberCertificate {
    pub chamber: usize,
    pub rule: CertificateRule,
    pub clasps: usize,
    pub spanning_arcs: usize,
    pub disc_intersections: u64,
}

/// Why exact certification was withheld.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refusal {
    /// The meridional discs do not all meet the link in the same number
    /// of points, so no chamber conclusion transfers to the whole link.
    NonUniformDiscCounts,
    /// This chamber's certified lower bound falls short of its upper
    /// bound; nothing pins its index.
    UncertifiedChamber { chamber: usize },
    /// A disc missing the link witnesses index 0, but the calculus never
    /// claims exactness for 0; only the `[0, 0]` interval is reported.
    IndexZeroUncertified,
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::NonUniformDiscCounts => f.write_str("non-uniform disc crossing counts"),
            Refusal::UncertifiedChamber { chamber } => {
                write!(f, "chamber {chamber} has no exact index certificate")
            }
            Refusal::IndexZeroUncertified => {
                f.write_str("index 0 is bounded but never certified exact")
            }
        }
    }
}

/// The certified conclusion: an exact value, or sound interval bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometricIndex {
    Exact { value: u64 },
    Bounds { lower: u64, upper: u64, parity: u8 },
}

impl GeometricIndex {
    pub fn certified_value(&self) -> Option<u64> {
        match *self {
            GeometricIndex::Exact { value } => Some(value),
            GeometricIndex::Bounds { .. } => None,
        }
    }

    /// The exact value, or the interval's lower endpoint.
    pub fn lower(&self) -> u64 {
        match *self {
            GeometricIndex::Exact { value } => value,
            GeometricIndex::Bounds { lower, .. } => lower,
        }
    }

    pub fn parity(&self) -> u8 {
        match *self {
            GeometricIndex::Exact { value } => (value % 2) as u8,
            GeometricIndex::Bounds { parity, .. } => parity,
        }
    }
}

/// Full output record for one link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    pub disc_counts: Vec<usize>,
    /// Per-component winding numbers in trace order (all nonnegative
    /// under the canonical component orientation).
    pub windings: Vec<i64>,
    /// Signed crossing total at any one disc; the algebraic content of
    /// the whole link.
    pub algebraic_total_signed: i64,
    pub geometric: GeometricIndex,
    pub certificates: Vec<ChamberCertificate>,
    pub refusals: Vec<Refusal>,
}

impl IndexReport {
    /// Absolute algebraic index of each component.
    pub fn algebraic_per_component(&self) -> Vec<u64> {
        self.windings.iter().map(|w| w.unsigned_abs()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Invalid(#[from] InvalidLink),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
}

/// Absolute winding of one traced component.
pub fn algebraic_index(link: &ChamberLink, component: usize) -> Result<u64, EngineError> {
    let traces = link.trace_components()?;
    traces
        .get(component)
        .map(|t| t.winding.unsigned_abs())
        .ok_or(EngineError::UnknownComponent(component))
}

/// Compute the certified geometric index of a link.
///
/// Exactness requires uniform disc counts `n` and an exact chamber bound
/// equal to `n` in every chamber; each chamber then receives a
/// certificate naming the rule that pinned it. Otherwise the report
/// carries sound bounds: the total algebraic index below, the smallest
/// disc count above, and the shared parity.
pub fn geometric_index(link: &ChamberLink) -> Result<IndexReport, InvalidLink> {
    let traces = link.trace_components()?;
    let disc_counts = link.disc_counts()?;
    let windings: Vec<i64> = traces.iter().map(|t| t.winding).collect();
    let signed_total: i64 = traces.iter().map(|t| t.signed_sum_at(0)).sum();

    let bounds: Vec<ChamberIndexBound> = link
        .chambers()
        .iter()
        .map(chamber_index_bounds)
        .collect();

    let uniform = disc_counts.windows(2).all(|w| w[0] == w[1]);
    let n = disc_counts[0] as u64;

    let mut refusals = Vec::new();
    if !uniform {
        refusals.push(Refusal::NonUniformDiscCounts);
    }
    for (chamber, bound) in bounds.iter().enumerate() {
        if !bound.exact {
            refusals.push(Refusal::UncertifiedChamber { chamber });
        }
    }
    if uniform && refusals.is_empty() && n == 0 {
        refusals.push(Refusal::IndexZeroUncertified);
    }

    let (geometric, certificates) = if refusals.is_empty() {
        // Uniform counts and every chamber exact; exactness forces each
        // chamber's bound to equal n because its upper bound is n.
        let certificates = link
            .chambers()
            .iter()
            .enumerate()
            .map(|(chamber, content)| ChamberCertificate {
                chamber,
                rule: if content.clasps_and_spans_only() {
                    CertificateRule::ClaspCorollary
                } else {
                    CertificateRule::ChamberCorollary
                },
                clasps: content.clasp_count(),
                spanning_arcs: content.span_count(),
                disc_intersections: n,
            })
            .collect();
        (GeometricIndex::Exact { value: n }, certificates)
    } else {
        let lower = signed_total.unsigned_abs();
        let upper = disc_counts.iter().copied().min().unwrap_or(0) as u64;
        let parity = (signed_total.rem_euclid(2)) as u8;
        (
            GeometricIndex::Bounds {
                lower,
                upper,
                parity,
            },
            Vec::new(),
        )
    };

    Ok(IndexReport {
        disc_counts,
        windings,
        algebraic_total_signed: signed_total,
        geometric,
        certificates,
        refusals,
    })
}

/// Self-audit: any certified value or lower bound must dominate the
/// absolute total algebraic index. False only on an inconsistent report.
pub fn check_geq_algebraic(report: &IndexReport) -> bool {
    report.geometric.lower() >= report.algebraic_total_signed.unsigned_abs()
}

/// Self-audit of the evenness conclusion: when every component has
/// winding 0, an exact value must be even. Vacuously true otherwise.
pub fn even_index_audit(link: &ChamberLink, report: &IndexReport) -> Result<bool, InvalidLink> {
    let traces = link.trace_components()?;
    if traces.iter().any(|t| t.winding != 0) {
        return Ok(true);
    }
    Ok(match report.geometric {
        GeometricIndex::Exact { value } => value % 2 == 0,
        GeometricIndex::Bounds { .. } => true,
    })
}

/// How an index factor of 1 pins a separating torus boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorPair {
    /// Index of the link in the separating torus.
    pub inner: u64,
    /// Index of the separating torus in the ambient one.
    pub outer: u64,
    pub parallel_to_inner: bool,
    pub parallel_to_outer: bool,
}

/// Everything index multiplicativity says about a torus separating a
/// link of the given total index from the ambient boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationConclusions {
    pub total: u64,
    pub pairs: Vec<FactorPair>,
    /// Total 0 admits every factor pair with a zero, so no constraint.
    pub unconstrained: bool,
}

/// Enumerate the ordered factorizations `inner * outer = total` and mark
/// the boundary-parallel conclusions forced by factors of 1.
pub fn separating_torus_conclusions(total: u64) -> SeparationConclusions {
    if total == 0 {
        return SeparationConclusions {
            total,
            pairs: Vec::new(),
            unconstrained: true,
        };
    }
    let pairs = (1..=total)
        .filter(|inner| total.is_multiple_of(*inner))
        .map(|inner| {
            let outer = total / inner;
            FactorPair {
                inner,
                outer,
                parallel_to_inner: inner == 1,
                parallel_to_outer: outer == 1,
            }
        })
        .collect();
    SeparationConclusions {
        total,
        pairs,
        unconstrained: false,
    }
}
