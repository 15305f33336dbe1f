//! Shared test machinery: a generator of random structurally valid
//! links, the property predicates used by both the property suite and
//! the acceptance suite, and hand-built fixtures.

#![allow(dead_code)]

use proptest::prelude::*;

use chamber_index::catalog::{ChamberContent, ClaspKind, Piece, Side};
use chamber_index::dsl::{self, SourceDocument};
use chamber_index::engine::{self, GeometricIndex, IndexReport, Refusal};
use chamber_index::link::ChamberLink;

const MAX_CHAMBERS: usize = 5;
const MAX_HALF_STRANDS: usize = 3;

fn clasp_kind(choice: usize) -> ClaspKind {
    match choice % 3 {
        0 => ClaspKind::Whitehead,
        1 => ClaspKind::SquareKnot,
        _ => ClaspKind::Antoine,
    }
}

/// Assemble one chamber from a plan: `clasps` clasp kinds, `spans`
/// spanning arcs, the remaining slots paired into turn-backs, plus some
/// circles. Slot orders come shuffled so the wiring is arbitrary.
fn build_content(
    clasps: &[usize],
    spans: usize,
    bottom_slots: Vec<usize>,
    top_slots: Vec<usize>,
    circles: usize,
) -> ChamberContent {
    let k = clasps.len();
    let mut pieces = Vec::new();
    for (i, &kind) in clasps.iter().enumerate() {
        pieces.push(Piece::clasp(
            clasp_kind(kind),
            (top_slots[2 * i], top_slots[2 * i + 1]),
            (bottom_slots[2 * i], bottom_slots[2 * i + 1]),
        ));
    }
    for j in 0..spans {
        pieces.push(Piece::span(bottom_slots[2 * k + j], top_slots[2 * k + j]));
    }
    let mut rest = bottom_slots[2 * k + spans..].chunks_exact(2);
    for pair in &mut rest {
        pieces.push(Piece::turn(Side::Bottom, (pair[0], pair[1])));
    }
    let mut rest = top_slots[2 * k + spans..].chunks_exact(2);
    for pair in &mut rest {
        pieces.push(Piece::turn(Side::Top, (pair[0], pair[1])));
    }
    for _ in 0..circles {
        pieces.push(Piece::Circle);
    }
    ChamberContent::new(pieces)
}

/// Random content for a chamber with the given endpoint profile. The
/// profile parities must agree, which adjacent discs guarantee.
fn content_strategy(bottom: usize, top: usize) -> BoxedStrategy<ChamberContent> {
    assert_eq!(bottom % 2, top % 2);
    let max_clasps = bottom.min(top) / 2;
    (0..=max_clasps)
        .prop_flat_map(move |k| {
            let budget = bottom.min(top) - 2 * k;
            let parity = (bottom - 2 * k) % 2;
            let span_choices: Vec<usize> = (0..=budget).filter(|l| l % 2 == parity).collect();
            (
                prop::collection::vec(0..3usize, k),
                prop::sample::select(span_choices),
                Just((0..bottom).collect::<Vec<_>>()).prop_shuffle(),
                Just((0..top).collect::<Vec<_>>()).prop_shuffle(),
                0..=2usize,
            )
        })
        .prop_map(move |(clasps, spans, bottom_slots, top_slots, circles)| {
            build_content(&clasps, spans, bottom_slots, top_slots, circles)
        })
        .boxed()
}

/// Random structurally valid link: 1 to 5 chambers, disc counts up to 7,
/// arbitrary catalog pieces and wiring.
pub fn link_strategy() -> impl Strategy<Value = ChamberLink> {
    (1usize..=MAX_CHAMBERS, 0usize..=1)
        .prop_flat_map(|(m, parity)| {
            prop::collection::vec(0usize..=MAX_HALF_STRANDS, m).prop_map(move |halves| {
                halves.into_iter().map(|h| 2 * h + parity).collect::<Vec<_>>()
            })
        })
        .prop_flat_map(|counts| {
            let m = counts.len();
            let chambers: Vec<BoxedStrategy<ChamberContent>> = (0..m)
                .map(|i| content_strategy(counts[(i + m - 1) % m], counts[i]))
                .collect();
            chambers
        })
        .prop_map(ChamberLink::new)
}

/// Random chamber eligible for the Antoine split: one Antoine clasp plus
/// spanning arcs.
pub fn antoine_chamber_strategy() -> impl Strategy<Value = ChamberContent> {
    (0usize..=4)
        .prop_flat_map(|spans| {
            let slots = 2 + spans;
            (
                Just(spans),
                Just((0..slots).collect::<Vec<_>>()).prop_shuffle(),
                Just((0..slots).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(spans, bottom_slots, top_slots)| {
            let mut pieces = vec![Piece::clasp(
                ClaspKind::Antoine,
                (top_slots[0], top_slots[1]),
                (bottom_slots[0], bottom_slots[1]),
            )];
            for j in 0..spans {
                pieces.push(Piece::span(bottom_slots[2 + j], top_slots[2 + j]));
            }
            ChamberContent::new(pieces)
        })
}

// ── Property predicates ─────────────────────────────────────────────────
// Shared by the property suite and the acceptance suite; they assert on
// violation so both proptest! and TestRunner report them as failures.

/// (a) The signed crossing sum is the same at every disc.
pub fn check_signed_sum_uniform(link: &ChamberLink) {
    let traces = link.trace_components().unwrap();
    let m = link.chamber_count();
    let totals: Vec<i64> = (0..m)
        .map(|disc| traces.iter().map(|t| t.signed_sum_at(disc)).sum())
        .collect();
    assert!(
        totals.windows(2).all(|w| w[0] == w[1]),
        "signed sums differ across discs: {totals:?}"
    );
    assert_eq!(totals[0], link.total_signed_sum().unwrap());
}

/// (b) Every disc count shares parity with the signed sum.
pub fn check_count_parity(link: &ChamberLink) {
    let counts = link.disc_counts().unwrap();
    let s = link.total_signed_sum().unwrap();
    for (disc, &n) in counts.iter().enumerate() {
        assert_eq!(
            (n as i64) % 2,
            s.rem_euclid(2),
            "disc {disc} count {n} disagrees with signed sum {s}"
        );
    }
}

/// (c) Traces partition the disc crossings: every slot of every disc is
/// crossed exactly once, and per-disc totals match the counts.
pub fn check_partition(link: &ChamberLink) {
    let traces = link.trace_components().unwrap();
    let counts = link.disc_counts().unwrap();
    let mut seen: Vec<Vec<bool>> = counts.iter().map(|&n| vec![false; n]).collect();
    for trace in &traces {
        for crossing in &trace.crossings {
            assert!(
                !seen[crossing.disc][crossing.slot],
                "slot ({}, {}) crossed twice",
                crossing.disc,
                crossing.slot
            );
            seen[crossing.disc][crossing.slot] = true;
        }
    }
    for (disc, slots) in seen.iter().enumerate() {
        assert!(
            slots.iter().all(|&s| s),
            "disc {disc} has uncrossed slots"
        );
    }
}

/// (d) Canonical text round-trips to the same link.
pub fn check_round_trip(link: &ChamberLink) {
    let text = dsl::emit("rt", link).unwrap();
    let document = dsl::parse(&SourceDocument::from_text(text.clone()))
        .into_result()
        .unwrap_or_else(|diagnostics| panic!("round trip failed: {diagnostics:?}\n{text}"));
    assert_eq!(&document.link, link);
    assert_eq!(document.name, "rt");
}

fn rotate_left<T: Clone>(values: &[T], r: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(values.len());
    out.extend_from_slice(&values[r..]);
    out.extend_from_slice(&values[..r]);
    out
}

/// (e) Rotating the chamber cycle relabels discs in the report but
/// changes nothing else.
pub fn check_rotation_invariance(link: &ChamberLink, r: usize) {
    let m = link.chamber_count();
    let r = r % m;
    let base = engine::geometric_index(link).unwrap();
    let rotated = engine::geometric_index(&link.rotated(r)).unwrap();

    assert_eq!(base.geometric, rotated.geometric, "rotation changed the verdict");
    assert_eq!(
        base.algebraic_total_signed,
        rotated.algebraic_total_signed
    );
    assert_eq!(rotated.disc_counts, rotate_left(&base.disc_counts, r));

    let mut base_windings = base.windings.clone();
    let mut rotated_windings = rotated.windings.clone();
    base_windings.sort_unstable();
    rotated_windings.sort_unstable();
    assert_eq!(base_windings, rotated_windings);

    // Certificates and refusals agree after mapping chamber labels back.
    let mut mapped: Vec<_> = rotated
        .certificates
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.chamber = (c.chamber + r) % m;
            c
        })
        .collect();
    mapped.sort_by_key(|c| c.chamber);
    assert_eq!(base.certificates, mapped);

    let map_refusal = |refusal: &Refusal| match refusal {
        Refusal::UncertifiedChamber { chamber } => Refusal::UncertifiedChamber {
            chamber: (chamber + r) % m,
        },
        other => other.clone(),
    };
    let mut base_refusals = base.refusals.clone();
    let mut mapped_refusals: Vec<_> = rotated.refusals.iter().map(map_refusal).collect();
    let sort_key = |refusal: &Refusal| match refusal {
        Refusal::NonUniformDiscCounts => (0, 0),
        Refusal::UncertifiedChamber { chamber } => (1, *chamber),
        Refusal::IndexZeroUncertified => (2, 0),
    };
    base_refusals.sort_by_key(sort_key);
    mapped_refusals.sort_by_key(sort_key);
    assert_eq!(base_refusals, mapped_refusals);
}

/// (f) Chamber-wise equal contents produce equal reports.
pub fn check_complement_equality(link: &ChamberLink) {
    let rebuilt = ChamberLink::new(link.chambers().to_vec());
    assert_eq!(
        engine::geometric_index(link).unwrap(),
        engine::geometric_index(&rebuilt).unwrap()
    );
}

/// (g) Any certified value or lower bound dominates the absolute signed
/// sum and shares its parity.
pub fn check_soundness(link: &ChamberLink) {
    let report = engine::geometric_index(link).unwrap();
    let s = report.algebraic_total_signed;
    let lower = report.geometric.lower();
    assert!(lower >= s.unsigned_abs(), "lower {lower} < |{s}|");
    assert_eq!((lower % 2) as i64, s.rem_euclid(2), "parity mismatch");
    if let GeometricIndex::Bounds { lower, upper, .. } = report.geometric {
        assert!(lower <= upper);
        assert_eq!(
            upper,
            *report.disc_counts.iter().min().unwrap() as u64,
            "upper bound must be the smallest disc count"
        );
    }
    assert!(engine::check_geq_algebraic(&report));
}

// ── Fixtures ────────────────────────────────────────────────────────────

/// Non-uniform three-chamber configuration with chamber bounds
/// (4, 2, 2): one chamber of four parallel strands, and two chambers
/// that fold the extra pair away in turn-backs. A single null-winding
/// component; disc counts [4, 2, 4].
pub fn mismatch_fixture() -> ChamberLink {
    let full = ChamberContent::new(vec![
        Piece::span(0, 0),
        Piece::span(1, 1),
        Piece::span(2, 2),
        Piece::span(3, 3),
    ]);
    let fold_down = ChamberContent::new(vec![
        Piece::span(0, 0),
        Piece::span(3, 1),
        Piece::turn(Side::Bottom, (1, 2)),
    ]);
    let fold_up = ChamberContent::new(vec![
        Piece::span(0, 1),
        Piece::span(1, 2),
        Piece::turn(Side::Top, (0, 3)),
    ]);
    ChamberLink::new(vec![full, fold_down, fold_up])
}

/// Expected report shape for the mismatch fixture.
pub fn assert_mismatch_report(report: &IndexReport) {
    assert_eq!(
        report.geometric,
        GeometricIndex::Bounds {
            lower: 0,
            upper: 2,
            parity: 0
        }
    );
    assert!(report.refusals.contains(&Refusal::NonUniformDiscCounts));
    assert!(report.certificates.is_empty());
}
