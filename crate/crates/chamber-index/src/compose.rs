//! Satellite index algebra (indices multiply under nesting) and
//! canonical builders for the catalog of example links, including the
//! eight-chamber family with replaceable strand patterns.

use std::fmt;

use thiserror::Error;

use crate::catalog::{ChamberContent, ClaspKind, Piece};
use crate::engine::{GeometricIndex, IndexReport};
use crate::link::ChamberLink;

/// An index value that is either pinned or known within sound bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexValue {
    Exact(u64),
    Interval { lower: u64, upper: u64 },
}

impl IndexValue {
    /// Product of two values; intervals multiply endpoint-wise.
    pub fn product(self, other: IndexValue) -> IndexValue {
        use IndexValue::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a * b),
            (a, b) => {
                let (al, ah) = a.endpoints();
                let (bl, bh) = b.endpoints();
                Interval {
                    lower: al * bl,
                    upper: ah * bh,
                }
            }
        }
    }

    pub fn endpoints(self) -> (u64, u64) {
        match self {
            IndexValue::Exact(v) => (v, v),
            IndexValue::Interval { lower, upper } => (lower, upper),
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Exact(v) => write!(f, "{v}"),
            IndexValue::Interval { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

/// Evaluated index facts for one link, or one nesting of links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFacts {
    pub geometric: IndexValue,
    pub algebraic_total: u64,
    /// Component count; nesting requires a single-component companion.
    pub components: usize,
    pub source: String,
}

impl IndexFacts {
    pub fn new(
        geometric: IndexValue,
        algebraic_total: u64,
        components: usize,
        source: impl Into<String>,
    ) -> Self {
        IndexFacts {
            geometric,
            algebraic_total,
            components,
            source: source.into(),
        }
    }

    /// Facts of a core circle: the identity of the nesting product.
    pub fn core() -> Self {
        IndexFacts::new(IndexValue::Exact(1), 1, 1, "core")
    }

    pub fn from_report(source: impl Into<String>, report: &IndexReport) -> Self {
        let geometric = match report.geometric {
            GeometricIndex::Exact { value } => IndexValue::Exact(value),
            GeometricIndex::Bounds { lower, upper, .. } => IndexValue::Interval { lower, upper },
        };
        IndexFacts::new(
            geometric,
            report.algebraic_total_signed.unsigned_abs(),
            report.windings.len(),
            source,
        )
    }

    /// Equality of the numeric facts, ignoring provenance labels.
    pub fn same_values(&self, other: &IndexFacts) -> bool {
        self.geometric == other.geometric
            && self.algebraic_total == other.algebraic_total
            && self.components == other.components
    }
}

/// Expression tree of nested index facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexExpr {
    Leaf(IndexFacts),
    Nest {
        inner: Box<IndexExpr>,
        outer: Box<IndexExpr>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("companion torus must have one component, got {components}")]
    MultiComponentCompanion { components: usize },
    #[error("unknown link name: {0}")]
    UnknownName(String),
    #[error("pattern choices must cover slots 0..7 exactly once")]
    BadPatternSlots,
}

impl IndexExpr {
    pub fn leaf(facts: IndexFacts) -> Self {
        IndexExpr::Leaf(facts)
    }

    /// Nest `inner` inside the solid torus whose core is described by
    /// `outer`. The companion must be a single closed curve.
    pub fn nest(inner: IndexExpr, outer: IndexExpr) -> Result<IndexExpr, ComposeError> {
        let outer_facts = outer.evaluate()?;
        if outer_facts.components != 1 {
            return Err(ComposeError::MultiComponentCompanion {
                components: outer_facts.components,
            });
        }
        Ok(IndexExpr::Nest {
            inner: Box::new(inner),
            outer: Box::new(outer),
        })
    }

    /// Fold the tree bottom-up: leaf facts pass through, nesting
    /// multiplies both indices.
    pub fn evaluate(&self) -> Result<IndexFacts, ComposeError> {
        match self {
            IndexExpr::Leaf(facts) => Ok(facts.clone()),
            IndexExpr::Nest { inner, outer } => {
                let inner = inner.evaluate()?;
                let outer = outer.evaluate()?;
                if outer.components != 1 {
                    return Err(ComposeError::MultiComponentCompanion {
                        components: outer.components,
                    });
                }
                Ok(IndexFacts::new(
                    inner.geometric.product(outer.geometric),
                    inner.algebraic_total * outer.algebraic_total,
                    inner.components,
                    format!("{} in {}", inner.source, outer.source),
                ))
            }
        }
    }
}

/// Strand pattern for one slot of the eight-chamber family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    SpansOnly,
    WhiteheadPlusSpans,
    SquareKnotPlusSpans,
    AntoinePlusSpans,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [
        Pattern::SpansOnly,
        Pattern::WhiteheadPlusSpans,
        Pattern::SquareKnotPlusSpans,
        Pattern::AntoinePlusSpans,
    ];

    pub fn from_name(name: &str) -> Option<Pattern> {
        match name {
            "spans" => Some(Pattern::SpansOnly),
            "whitehead" => Some(Pattern::WhiteheadPlusSpans),
            "squareknot" => Some(Pattern::SquareKnotPlusSpans),
            "antoine" => Some(Pattern::AntoinePlusSpans),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::SpansOnly => "spans",
            Pattern::WhiteheadPlusSpans => "whitehead",
            Pattern::SquareKnotPlusSpans => "squareknot",
            Pattern::AntoinePlusSpans => "antoine",
        }
    }

    fn clasp_kind(self) -> Option<ClaspKind> {
        match self {
            Pattern::SpansOnly => None,
            Pattern::WhiteheadPlusSpans => Some(ClaspKind::Whitehead),
            Pattern::SquareKnotPlusSpans => Some(ClaspKind::SquareKnot),
            Pattern::AntoinePlusSpans => Some(ClaspKind::Antoine),
        }
    }
}

/// One pattern choice for one of the eight chamber slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternChoice {
    pub slot: usize,
    pub pattern: Pattern,
}

impl PatternChoice {
    /// Order eight choices into the per-chamber pattern array, requiring
    /// each slot 0..7 exactly once.
    pub fn arrange(choices: &[PatternChoice]) -> Result<[Pattern; 8], ComposeError> {
        if choices.len() != 8 {
            return Err(ComposeError::BadPatternSlots);
        }
        let mut patterns = [None; 8];
        for choice in choices {
            let cell = patterns
                .get_mut(choice.slot)
                .ok_or(ComposeError::BadPatternSlots)?;
            if cell.replace(choice.pattern).is_some() {
                return Err(ComposeError::BadPatternSlots);
            }
        }
        Ok(patterns.map(|p| p.expect("all slots filled")))
    }
}

const FAMILY_STRANDS: usize = 8;

/// Chamber content for one pattern of the eight-strand family.
///
/// Strands shift two slots per chamber; a clasp caps the shifted-out pair
/// at the high slots with its bottom arc and restarts the low pair with
/// its top arc, so a fully clasped assignment closes every strand into
/// null-winding lobes.
fn family_chamber(pattern: Pattern) -> ChamberContent {
    let n = FAMILY_STRANDS;
    let mut pieces = Vec::new();
    match pattern.clasp_kind() {
        None => {
            for j in 0..n {
                pieces.push(Piece::span(j, (j + 2) % n));
            }
        }
        Some(kind) => {
            pieces.push(Piece::clasp(kind, (0, 1), (n - 2, n - 1)));
            for j in 0..n - 2 {
                pieces.push(Piece::span(j, j + 2));
            }
        }
    }
    ChamberContent::new(pieces)
}

/// Build the eight-chamber family link for one assignment of patterns.
/// Every assignment yields a valid link with uniform disc count 8 whose
/// chambers all certify exactly.
pub fn generate_complicated(patterns: &[Pattern; 8]) -> ChamberLink {
    ChamberLink::new(patterns.iter().map(|&p| family_chamber(p)).collect())
}

/// Pattern assignment of the shipped `complicated` corpus entry.
pub const CANONICAL_COMPLICATED: [Pattern; 8] = [
    Pattern::WhiteheadPlusSpans,
    Pattern::SquareKnotPlusSpans,
    Pattern::AntoinePlusSpans,
    Pattern::WhiteheadPlusSpans,
    Pattern::SquareKnotPlusSpans,
    Pattern::AntoinePlusSpans,
    Pattern::WhiteheadPlusSpans,
    Pattern::SquareKnotPlusSpans,
];

/// Stable, CLI-visible names of the shipped link corpus.
pub const CORPUS_NAMES: [&str; 8] = [
    "whitehead",
    "bing",
    "antoine",
    "algebraic2",
    "mcmillan4",
    "knotted3",
    "gabai",
    "complicated",
];

fn whitehead_clasp_chamber() -> ChamberContent {
    ChamberContent::new(vec![Piece::clasp(ClaspKind::Whitehead, (0, 1), (0, 1))])
}

fn straight_spans(n: usize) -> ChamberContent {
    ChamberContent::new((0..n).map(|j| Piece::span(j, j)).collect())
}

fn whitehead() -> ChamberLink {
    ChamberLink::new(vec![whitehead_clasp_chamber(), straight_spans(2)])
}

fn bing() -> ChamberLink {
    ChamberLink::new(vec![whitehead_clasp_chamber(), whitehead_clasp_chamber()])
}

fn antoine() -> ChamberLink {
    ChamberLink::new(vec![whitehead_clasp_chamber(); 4])
}

fn algebraic2() -> ChamberLink {
    ChamberLink::new(vec![ChamberContent::new(vec![
        Piece::span(0, 1),
        Piece::span(1, 0),
    ])])
}

fn mcmillan4() -> ChamberLink {
    let clasped = ChamberContent::new(vec![
        Piece::clasp(ClaspKind::Whitehead, (0, 1), (0, 1)),
        Piece::span(2, 2),
        Piece::span(3, 3),
    ]);
    // The far chamber swaps the strand pairs so the doubled curve closes
    // into a single null-winding component.
    let crossed = ChamberContent::new(vec![
        Piece::span(0, 2),
        Piece::span(1, 3),
        Piece::span(2, 0),
        Piece::span(3, 1),
    ]);
    ChamberLink::new(vec![clasped, crossed])
}

fn knotted3() -> ChamberLink {
    let whitehead_side = ChamberContent::new(vec![
        Piece::clasp(ClaspKind::Whitehead, (0, 1), (0, 1)),
        Piece::span(2, 2),
    ]);
    let square_knot_side = ChamberContent::new(vec![
        Piece::clasp(ClaspKind::SquareKnot, (0, 1), (0, 1)),
        Piece::span(2, 2),
    ]);
    ChamberLink::new(vec![whitehead_side, square_knot_side])
}

/// Five chambers, each a Whitehead clasp and four spanning arcs. The
/// clasp slots are shifted so each strand climbs two slots per chamber,
/// caps at a clasp three discs later, and descends back: five lobes,
/// all of winding zero.
fn gabai() -> ChamberLink {
    let chamber = ChamberContent::new(vec![
        Piece::clasp(ClaspKind::Whitehead, (0, 1), (4, 5)),
        Piece::span(0, 2),
        Piece::span(1, 3),
        Piece::span(2, 4),
        Piece::span(3, 5),
    ]);
    ChamberLink::new(vec![chamber; 5])
}

/// Canonical builder for one corpus name.
pub fn corpus_link(name: &str) -> Result<ChamberLink, ComposeError> {
    match name {
        "whitehead" => Ok(whitehead()),
        "bing" => Ok(bing()),
        "antoine" => Ok(antoine()),
        "algebraic2" => Ok(algebraic2()),
        "mcmillan4" => Ok(mcmillan4()),
        "knotted3" => Ok(knotted3()),
        "gabai" => Ok(gabai()),
        "complicated" => Ok(generate_complicated(&CANONICAL_COMPLICATED)),
        _ => Err(ComposeError::UnknownName(name.to_string())),
    }
}
