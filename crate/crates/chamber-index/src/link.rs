//! Links in a solid torus as cyclic chamber sequences: structural
//! validation, disc crossing counts, and component tracing with signed
//! crossings.
//!
//! Disc `i` separates chamber `i` (below) from chamber `i + 1 mod m`
//! (above); chamber `i` has top disc `i` and bottom disc `i - 1 mod m`.
//! A crossing sign of `+1` means the component passes from chamber `i`
//! into chamber `i + 1`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::catalog::{ChamberContent, ClaspKind, Piece, Side, SplitError};

/// A link in a solid torus, cut into chambers by `m >= 1` meridional discs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberLink {
    chambers: Vec<ChamberContent>,
}

/// One transversal intersection of a component with a meridional disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiscCrossing {
    pub disc: usize,
    pub slot: usize,
    pub sign: i8,
}

/// One link component as a cyclic walk through pieces.
///
/// Components with nonzero winding are oriented so the winding is
/// positive; zero-winding components are oriented so their first
/// traversed crossing is positive. Either way the trace is a pure
/// function of the link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTrace {
    pub id: usize,
    pub crossings: Vec<DiscCrossing>,
    pub winding: i64,
}

impl ComponentTrace {
    /// Net signed crossings through the given disc.
    pub fn signed_sum_at(&self, disc: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| c.disc == disc)
            .map(|c| i64::from(c.sign))
            .sum()
    }
}

/// Structural defects that make a chamber sequence meaningless as a link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Adjacent chambers disagree on the shared disc's crossing count.
    ProfileMismatch {
        disc: usize,
        below_top: usize,
        above_bottom: usize,
    },
    /// A clasp or turn pair uses the same slot twice.
    DegeneratePair { chamber: usize, side: Side, slot: usize },
    /// Two pieces claim the same slot on one side of a chamber.
    SlotReused { chamber: usize, side: Side, slot: usize },
    /// Slots on a side are not exactly 0..p-1.
    SlotGap { chamber: usize, side: Side, missing: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ProfileMismatch {
                disc,
                below_top,
                above_bottom,
            } => write!(
                f,
                "disc {disc}: chamber below uses {below_top} slots but chamber above uses {above_bottom}"
            ),
            Violation::DegeneratePair { chamber, side, slot } => write!(
                f,
                "chamber {chamber}: {side:?} pair uses slot {slot} twice"
            ),
            Violation::SlotReused { chamber, side, slot } => write!(
                f,
                "chamber {chamber}: {side:?} slot {slot} is used by more than one endpoint"
            ),
            Violation::SlotGap { chamber, side, missing } => write!(
                f,
                "chamber {chamber}: {side:?} slots are not dense, {missing} is unused"
            ),
        }
    }
}

/// Outcome of structural validation. Non-uniform disc counts are legal
/// (they only block certification) and are reported through `uniform`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub disc_counts: Vec<usize>,
    pub uniform: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("structurally invalid link: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct InvalidLink {
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitChamberError {
    #[error("chamber {chamber} out of range for a link with {len} chambers")]
    OutOfRange { chamber: usize, len: usize },
    #[error(transparent)]
    Split(#[from] SplitError),
}

impl ChamberLink {
    /// Build a link from its cyclically ordered chambers.
    ///
    /// # Panics
    /// Panics when `chambers` is empty; one disc (one chamber) is the
    /// minimum decomposition.
    pub fn new(chambers: Vec<ChamberContent>) -> Self {
        assert!(!chambers.is_empty(), "a chamber link needs at least one chamber");
        ChamberLink { chambers }
    }

    pub fn chambers(&self) -> &[ChamberContent] {
        &self.chambers
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers.len()
    }

    fn bottom_disc(&self, chamber: usize) -> usize {
        (chamber + self.chambers.len() - 1) % self.chambers.len()
    }

    /// Check invariants: per-chamber slot discipline and matching
    /// crossing counts across every disc.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, chamber) in self.chambers.iter().enumerate() {
            for side in [Side::Bottom, Side::Top] {
                check_side(i, chamber, side, &mut violations);
            }
        }

        let m = self.chambers.len();
        let disc_counts: Vec<usize> = (0..m).map(|d| self.chambers[d].top_count()).collect();
        for disc in 0..m {
            let below_top = self.chambers[disc].top_count();
            let above_bottom = self.chambers[(disc + 1) % m].bottom_count();
            if below_top != above_bottom {
                violations.push(Violation::ProfileMismatch {
                    disc,
                    below_top,
                    above_bottom,
                });
            }
        }

        let uniform = disc_counts.windows(2).all(|w| w[0] == w[1]);
        ValidationReport {
            disc_counts,
            uniform,
            violations,
        }
    }

    pub fn ensure_valid(&self) -> Result<(), InvalidLink> {
        let report = self.validate();
        if report.accepted() {
            Ok(())
        } else {
            Err(InvalidLink {
                violations: report.violations,
            })
        }
    }

    /// Crossing counts `n_0..n_{m-1}`, one per disc.
    pub fn disc_counts(&self) -> Result<Vec<usize>, InvalidLink> {
        self.ensure_valid()?;
        Ok((0..self.chambers.len())
            .map(|d| self.chambers[d].top_count())
            .collect())
    }

    /// Walk endpoint identifications and split the link into components.
    ///
    /// Every arc piece lands in exactly one trace and every disc slot is
    /// crossed exactly once; circles (free ones, and the interior circle
    /// of each Antoine clasp) become zero-crossing traces. Discovery
    /// scans (chamber, side, slot) lexicographically.
    pub fn trace_components(&self) -> Result<Vec<ComponentTrace>, InvalidLink> {
        self.ensure_valid()?;
        let m = self.chambers.len();
        let counts: Vec<usize> = (0..m).map(|d| self.chambers[d].top_count()).collect();

        let (arcs, circles) = self.build_arcs();
        let mut below: Vec<Vec<Option<ArcEnd>>> = counts.iter().map(|&n| vec![None; n]).collect();
        let mut above: Vec<Vec<Option<ArcEnd>>> = counts.iter().map(|&n| vec![None; n]).collect();
        for (index, arc) in arcs.iter().enumerate() {
            for (end, attach) in arc.ends.iter().enumerate() {
                let table = match attach.side {
                    DiscSide::Below => &mut below,
                    DiscSide::Above => &mut above,
                };
                table[attach.disc][attach.slot] = Some(ArcEnd { index, end });
            }
        }

        let mut visited: Vec<Vec<bool>> = counts.iter().map(|&n| vec![false; n]).collect();
        let mut traces = Vec::new();
        for chamber in 0..m {
            for side in [Side::Bottom, Side::Top] {
                let disc = match side {
                    Side::Bottom => self.bottom_disc(chamber),
                    Side::Top => chamber,
                };
                for slot in 0..counts[disc] {
                    if visited[disc][slot] {
                        continue;
                    }
                    let crossings =
                        walk(disc, slot, &arcs, &below, &above, &mut visited);
                    let start_disc = crossings[0].disc;
                    let winding: i64 = crossings
                        .iter()
                        .filter(|c| c.disc == start_disc)
                        .map(|c| i64::from(c.sign))
                        .sum();
                    let (crossings, winding) = if winding < 0 {
                        (reverse_orientation(crossings), -winding)
                    } else {
                        (crossings, winding)
                    };
                    traces.push(ComponentTrace {
                        id: traces.len(),
                        crossings,
                        winding,
                    });
                }
            }
        }
        for _ in 0..circles {
            traces.push(ComponentTrace {
                id: traces.len(),
                crossings: Vec::new(),
                winding: 0,
            });
        }
        Ok(traces)
    }

    /// Signed crossing sum over all components at disc 0. The same sum is
    /// obtained at every other disc.
    pub fn total_signed_sum(&self) -> Result<i64, InvalidLink> {
        let traces = self.trace_components()?;
        Ok(traces.iter().map(|t| t.signed_sum_at(0)).sum())
    }

    /// The same link with chambers cyclically rotated so that the old
    /// chamber `r` becomes chamber 0.
    pub fn rotated(&self, r: usize) -> ChamberLink {
        let m = self.chambers.len();
        let r = r % m;
        let mut chambers = Vec::with_capacity(m);
        chambers.extend_from_slice(&self.chambers[r..]);
        chambers.extend_from_slice(&self.chambers[..r]);
        ChamberLink { chambers }
    }

    /// Replace chamber `i` by the two halves of its Antoine split,
    /// inserting a new disc between them.
    pub fn split_antoine_chamber(&self, chamber: usize) -> Result<ChamberLink, SplitChamberError> {
        if chamber >= self.chambers.len() {
            return Err(SplitChamberError::OutOfRange {
                chamber,
                len: self.chambers.len(),
            });
        }
        let split = self.chambers[chamber].split_antoine()?;
        let mut chambers = Vec::with_capacity(self.chambers.len() + 1);
        chambers.extend_from_slice(&self.chambers[..chamber]);
        chambers.push(split.lower);
        chambers.push(split.upper);
        chambers.extend_from_slice(&self.chambers[chamber + 1..]);
        Ok(ChamberLink { chambers })
    }

    /// Arcs with their disc attachments, plus the number of circle
    /// components (free circles and Antoine interior circles).
    fn build_arcs(&self) -> (Vec<TangleArc>, usize) {
        let mut arcs = Vec::new();
        let mut circles = 0usize;
        for (chamber, content) in self.chambers.iter().enumerate() {
            let bottom = self.bottom_disc(chamber);
            let top = chamber;
            for piece in content.pieces() {
                match *piece {
                    Piece::Span { bottom: b, top: t } => arcs.push(TangleArc {
                        ends: [
                            Attachment::above(bottom, b),
                            Attachment::below(top, t),
                        ],
                    }),
                    Piece::Turn { side, pair } => {
                        let ends = match side {
                            Side::Bottom => [
                                Attachment::above(bottom, pair.0),
                                Attachment::above(bottom, pair.1),
                            ],
                            Side::Top => [
                                Attachment::below(top, pair.0),
                                Attachment::below(top, pair.1),
                            ],
                        };
                        arcs.push(TangleArc { ends });
                    }
                    Piece::Clasp {
                        kind,
                        top_pair,
                        bottom_pair,
                    } => {
                        arcs.push(TangleArc {
                            ends: [
                                Attachment::below(top, top_pair.0),
                                Attachment::below(top, top_pair.1),
                            ],
                        });
                        arcs.push(TangleArc {
                            ends: [
                                Attachment::above(bottom, bottom_pair.0),
                                Attachment::above(bottom, bottom_pair.1),
                            ],
                        });
                        if kind == ClaspKind::Antoine {
                            circles += 1;
                        }
                    }
                    Piece::Circle => circles += 1,
                }
            }
        }
        (arcs, circles)
    }
}

fn check_side(chamber: usize, content: &ChamberContent, side: Side, out: &mut Vec<Violation>) {
    let mut used = BTreeSet::new();
    let mut reused = BTreeSet::new();
    for piece in content.pieces() {
        if let Piece::Turn { side: s, pair } = piece {
            if *s == side && pair.0 == pair.1 {
                out.push(Violation::DegeneratePair {
                    chamber,
                    side,
                    slot: pair.0,
                });
            }
        }
        if let Piece::Clasp {
            top_pair,
            bottom_pair,
            ..
        } = piece
        {
            let pair = match side {
                Side::Bottom => bottom_pair,
                Side::Top => top_pair,
            };
            if pair.0 == pair.1 {
                out.push(Violation::DegeneratePair {
                    chamber,
                    side,
                    slot: pair.0,
                });
            }
        }
        for slot in piece.slots_on(side) {
            if !used.insert(slot) {
                reused.insert(slot);
            }
        }
    }
    for slot in reused {
        out.push(Violation::SlotReused {
            chamber,
            side,
            slot,
        });
    }
    let p = used.len();
    for missing in (0..p).filter(|slot| !used.contains(slot)) {
        out.push(Violation::SlotGap {
            chamber,
            side,
            missing,
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DiscSide {
    Below,
    Above,
}

#[derive(Debug, Clone, Copy)]
struct Attachment {
    disc: usize,
    slot: usize,
    side: DiscSide,
}

impl Attachment {
    fn below(disc: usize, slot: usize) -> Self {
        Attachment {
            disc,
            slot,
            side: DiscSide::Below,
        }
    }

    fn above(disc: usize, slot: usize) -> Self {
        Attachment {
            disc,
            slot,
            side: DiscSide::Above,
        }
    }
}

struct TangleArc {
    ends: [Attachment; 2],
}

#[derive(Debug, Clone, Copy)]
struct ArcEnd {
    index: usize,
    end: usize,
}

/// Walk one component starting with an upward crossing at (disc, slot).
/// Arriving at a node through the arc below it means crossing upward;
/// through the arc above it, downward. The walk closes when it returns
/// to the start node from below, which would repeat the initial crossing.
fn walk(
    start_disc: usize,
    start_slot: usize,
    arcs: &[TangleArc],
    below: &[Vec<Option<ArcEnd>>],
    above: &[Vec<Option<ArcEnd>>],
    visited: &mut [Vec<bool>],
) -> Vec<DiscCrossing> {
    let mut crossings = Vec::new();
    let mut disc = start_disc;
    let mut slot = start_slot;
    let mut from_below = true;
    loop {
        visited[disc][slot] = true;
        crossings.push(DiscCrossing {
            disc,
            slot,
            sign: if from_below { 1 } else { -1 },
        });
        let table = if from_below { above } else { below };
        let end = table[disc][slot].expect("validated link has both attachments per slot");
        let other = arcs[end.index].ends[1 - end.end];
        let arriving_below = other.side == DiscSide::Below;
        if other.disc == start_disc && other.slot == start_slot && arriving_below {
            return crossings;
        }
        debug_assert!(
            !visited[other.disc][other.slot],
            "component walk revisited a crossing"
        );
        disc = other.disc;
        slot = other.slot;
        from_below = arriving_below;
    }
}

/// Reverse a component's orientation, keeping the discovered crossing
/// first in the cyclic list.
fn reverse_orientation(mut crossings: Vec<DiscCrossing>) -> Vec<DiscCrossing> {
    for c in &mut crossings {
        c.sign = -c.sign;
    }
    if crossings.len() > 1 {
        crossings[1..].reverse();
    }
    crossings
}
