//! Catalog of chamber contents: spanning arcs, turn-backs, named clasps and
//! free circles, together with their endpoint profiles and certified
//! per-chamber index contributions.

use thiserror::Error;

/// The three clasp configurations with a certified chamber index of 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaspKind {
    Whitehead,
    SquareKnot,
    Antoine,
}

impl ClaspKind {
    pub fn label(self) -> char {
        match self {
            ClaspKind::Whitehead => 'W',
            ClaspKind::SquareKnot => 'S',
            ClaspKind::Antoine => 'A',
        }
    }
}

/// One end of a chamber: the bottom disc or the top disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Bottom,
    Top,
}

/// A single tangle element inside a chamber, with explicit disc-endpoint
/// slots. Slots are dense 0-based indices per side; a slot is identified
/// with the equal slot of the adjacent chamber across the shared disc.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Piece {
    /// Arc from a bottom-disc slot to a top-disc slot.
    Span { bottom: usize, top: usize },
    /// Trivial unknotted, unlinked arc with both endpoints on one disc.
    /// Carries no certified index contribution.
    Turn { side: Side, pair: (usize, usize) },
    /// A named clasp: one arc with both endpoints on the top disc and one
    /// with both endpoints on the bottom disc. The Antoine variant also
    /// bundles an interior circle linking both arcs.
    Clasp {
        kind: ClaspKind,
        top_pair: (usize, usize),
        bottom_pair: (usize, usize),
    },
    /// Closed curve in the chamber interior, touching neither disc.
    Circle,
}

fn sorted_pair(pair: (usize, usize)) -> (usize, usize) {
    if pair.0 <= pair.1 {
        pair
    } else {
        (pair.1, pair.0)
    }
}

impl Piece {
    pub fn span(bottom: usize, top: usize) -> Self {
        Piece::Span { bottom, top }
    }

    pub fn turn(side: Side, pair: (usize, usize)) -> Self {
        Piece::Turn {
            side,
            pair: sorted_pair(pair),
        }
    }

    pub fn clasp(kind: ClaspKind, top_pair: (usize, usize), bottom_pair: (usize, usize)) -> Self {
        Piece::Clasp {
            kind,
            top_pair: sorted_pair(top_pair),
            bottom_pair: sorted_pair(bottom_pair),
        }
    }

    /// Slots this piece occupies on the given side.
    pub fn slots_on(&self, side: Side) -> Vec<usize> {
        match *self {
            Piece::Span { bottom, top } => match side {
                Side::Bottom => vec![bottom],
                Side::Top => vec![top],
            },
            Piece::Turn { side: s, pair } if s == side => vec![pair.0, pair.1],
            Piece::Turn { .. } => Vec::new(),
            Piece::Clasp {
                top_pair,
                bottom_pair,
                ..
            } => match side {
                Side::Bottom => vec![bottom_pair.0, bottom_pair.1],
                Side::Top => vec![top_pair.0, top_pair.1],
            },
            Piece::Circle => Vec::new(),
        }
    }

    /// Certified lower-bound contribution of this piece to the geometric
    /// index of its chamber: 1 for a spanning arc, 2 for any named clasp,
    /// 0 for turn-backs and circles (nothing is certified for them).
    pub fn index_contribution(&self) -> u64 {
        match self {
            Piece::Span { .. } => 1,
            Piece::Clasp { .. } => 2,
            Piece::Turn { .. } | Piece::Circle => 0,
        }
    }

    fn sort_key(&self) -> (u8, usize, usize, usize, usize) {
        match *self {
            Piece::Clasp {
                top_pair,
                bottom_pair,
                ..
            } => (0, top_pair.0, top_pair.1, bottom_pair.0, bottom_pair.1),
            Piece::Span { bottom, top } => (1, bottom, top, 0, 0),
            Piece::Turn { side, pair } => {
                (2, if side == Side::Bottom { 0 } else { 1 }, pair.0, pair.1, 0)
            }
            Piece::Circle => (3, 0, 0, 0, 0),
        }
    }
}

/// The contents of one chamber. Pieces are kept in canonical order
/// (clasps, then spans by bottom slot, then turn-backs, then circles) and
/// pairs are stored with the smaller slot first, so that structurally
/// equal contents compare equal and serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ChamberContent {
    pieces: Vec<Piece>,
}

impl ChamberContent {
    pub fn new(mut pieces: Vec<Piece>) -> Self {
        for piece in &mut pieces {
            match piece {
                Piece::Turn { pair, .. } => *pair = sorted_pair(*pair),
                Piece::Clasp {
                    top_pair,
                    bottom_pair,
                    ..
                } => {
                    *top_pair = sorted_pair(*top_pair);
                    *bottom_pair = sorted_pair(*bottom_pair);
                }
                _ => {}
            }
        }
        pieces.sort_by_key(|p| p.sort_key());
        ChamberContent { pieces }
    }

    pub fn empty() -> Self {
        ChamberContent::default()
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Number of distinct endpoint slots used on (bottom, top).
    pub fn endpoint_profile(&self) -> (usize, usize) {
        (self.side_count(Side::Bottom), self.side_count(Side::Top))
    }

    pub fn side_count(&self, side: Side) -> usize {
        let mut slots: Vec<usize> = self
            .pieces
            .iter()
            .flat_map(|p| p.slots_on(side))
            .collect();
        slots.sort_unstable();
        slots.dedup();
        slots.len()
    }

    pub fn bottom_count(&self) -> usize {
        self.side_count(Side::Bottom)
    }

    pub fn top_count(&self) -> usize {
        self.side_count(Side::Top)
    }

    /// Sum of the certified per-piece contributions, the `2k + l` of the
    /// chamber's certificate.
    pub fn certified_lower_bound(&self) -> u64 {
        self.pieces.iter().map(Piece::index_contribution).sum()
    }

    pub fn clasp_count(&self) -> usize {
        self.pieces
            .iter()
            .filter(|p| matches!(p, Piece::Clasp { .. }))
            .count()
    }

    pub fn span_count(&self) -> usize {
        self.pieces
            .iter()
            .filter(|p| matches!(p, Piece::Span { .. }))
            .count()
    }

    /// True when the content consists solely of clasps and spanning arcs.
    pub fn clasps_and_spans_only(&self) -> bool {
        self.pieces
            .iter()
            .all(|p| matches!(p, Piece::Clasp { .. } | Piece::Span { .. }))
    }

    /// Divide a chamber holding one Antoine clasp (plus spanning arcs) in
    /// two by a middle disc. The Antoine clasp becomes a Whitehead clasp
    /// on each side: its interior circle is cut into the lower chamber's
    /// top arc and the upper chamber's bottom arc. The clasp takes middle
    /// slots 0 and 1; each spanning arc crosses the middle disc once, at
    /// slots 2, 3, ... in bottom-slot order.
    pub fn split_antoine(&self) -> Result<AntoineSplit, SplitError> {
        let mut antoine = None;
        let mut clasp_count = 0usize;
        let mut spans = Vec::new();
        for piece in &self.pieces {
            match piece {
                Piece::Clasp {
                    kind,
                    top_pair,
                    bottom_pair,
                } => {
                    clasp_count += 1;
                    if *kind == ClaspKind::Antoine {
                        antoine = Some((*top_pair, *bottom_pair));
                    }
                }
                Piece::Span { bottom, top } => spans.push((*bottom, *top)),
                Piece::Turn { .. } | Piece::Circle => return Err(SplitError::UnsupportedPiece),
            }
        }
        let (top_pair, bottom_pair) = antoine.ok_or(SplitError::NoAntoineClasp)?;
        if clasp_count > 1 {
            return Err(SplitError::ExtraClasp);
        }

        let mut lower = vec![Piece::clasp(ClaspKind::Whitehead, (0, 1), bottom_pair)];
        let mut upper = vec![Piece::clasp(ClaspKind::Whitehead, top_pair, (0, 1))];
        for (j, &(bottom, top)) in spans.iter().enumerate() {
            let middle = 2 + j;
            lower.push(Piece::span(bottom, middle));
            upper.push(Piece::span(middle, top));
        }
        Ok(AntoineSplit {
            lower: ChamberContent::new(lower),
            upper: ChamberContent::new(upper),
            middle_disc_count: 2 + spans.len(),
        })
    }
}

/// Result of cutting an Antoine chamber by a middle disc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntoineSplit {
    pub lower: ChamberContent,
    pub upper: ChamberContent,
    pub middle_disc_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("not splittable: chamber holds no Antoine clasp")]
    NoAntoineClasp,
    #[error("not splittable: chamber holds more than one clasp")]
    ExtraClasp,
    #[error("not splittable: chamber holds a turn-back or circle")]
    UnsupportedPiece,
}
