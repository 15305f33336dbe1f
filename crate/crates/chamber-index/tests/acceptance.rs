//! Acceptance suite: one test per shipped guarantee, each printing a
//! pass line. Values are exact; no tolerances apply anywhere.

mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chamber_index::catalog::{ClaspKind, Piece};
use chamber_index::compose::{
    corpus_link, generate_complicated, IndexExpr, IndexFacts, IndexValue, Pattern,
    CANONICAL_COMPLICATED,
};
use chamber_index::engine::{
    self, even_index_audit, geometric_index, separating_torus_conclusions, GeometricIndex,
};
use chamber_index::link::ChamberLink;

use common::{
    assert_mismatch_report, check_complement_equality, check_count_parity, check_partition,
    check_rotation_invariance, check_round_trip, check_signed_sum_uniform, check_soundness,
    link_strategy, mismatch_fixture,
};

const PROPERTY_CASES: u32 = 1000;
const FAMILY_SAMPLES: usize = 120;

fn certified_value(link: &ChamberLink) -> u64 {
    match geometric_index(link).unwrap().geometric {
        GeometricIndex::Exact { value } => value,
        GeometricIndex::Bounds { lower, upper, .. } => {
            panic!("expected exact certification, got bounds [{lower}, {upper}]")
        }
    }
}

fn run_property<S, F>(name: &str, strategy: S, check: F)
where
    S: Strategy,
    F: Fn(&S::Value),
{
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, |value| {
            check(&value);
            Ok(())
        })
        .unwrap_or_else(|failure| panic!("property {name} failed: {failure}"));
}

#[test]
fn criterion_1_corpus_reproduction() {
    let expected = [
        ("whitehead", 2),
        ("bing", 2),
        ("antoine", 2),
        ("algebraic2", 2),
        ("knotted3", 3),
        ("mcmillan4", 4),
        ("gabai", 6),
    ];
    for (name, value) in expected {
        assert_eq!(certified_value(&corpus_link(name).unwrap()), value, "{name}");
    }

    // Eight-chamber family: the four uniform assignments and a seeded
    // sample of the 4^8 mixed assignments all certify at exactly 8.
    for pattern in Pattern::ALL {
        assert_eq!(certified_value(&generate_complicated(&[pattern; 8])), 8);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0CA1_C0DE);
    for _ in 0..FAMILY_SAMPLES {
        let patterns: [Pattern; 8] =
            std::array::from_fn(|_| Pattern::ALL[rng.gen_range(0..Pattern::ALL.len())]);
        assert_eq!(
            certified_value(&generate_complicated(&patterns)),
            8,
            "assignment {patterns:?}"
        );
    }
    assert_eq!(certified_value(&corpus_link("complicated").unwrap()), 8);
    println!(
        "PASS criterion 1: corpus certifies exactly (2,2,2,2,3,4,6) and {} family assignments at 8",
        4 + FAMILY_SAMPLES + 1
    );
}

#[test]
fn criterion_2_algebraic_indices() {
    let whitehead = geometric_index(&corpus_link("whitehead").unwrap()).unwrap();
    assert_eq!(whitehead.algebraic_total_signed, 0);

    let bing = geometric_index(&corpus_link("bing").unwrap()).unwrap();
    assert_eq!(bing.algebraic_per_component(), vec![0, 0]);

    let algebraic2 = geometric_index(&corpus_link("algebraic2").unwrap()).unwrap();
    assert_eq!(algebraic2.algebraic_total_signed, 2);
    assert_eq!(algebraic2.algebraic_per_component(), vec![2]);

    let knotted3 = geometric_index(&corpus_link("knotted3").unwrap()).unwrap();
    let odd = knotted3.windings.iter().filter(|w| *w % 2 != 0).count();
    assert_eq!(odd, 1, "knotted3 windings: {:?}", knotted3.windings);
    assert_eq!(knotted3.geometric, GeometricIndex::Exact { value: 3 });

    println!("PASS criterion 2: algebraic indices 0, (0,0), 2 and one odd component in knotted3");
}

#[test]
fn criterion_3_mismatch_discipline() {
    let link = mismatch_fixture();

    let report = link.validate();
    assert!(report.accepted());
    assert!(!report.uniform);
    assert_eq!(report.disc_counts, vec![4, 2, 4]);

    let bounds: Vec<u64> = link
        .chambers()
        .iter()
        .map(|c| {
            let b = engine::chamber_index_bounds(c);
            assert!(b.exact);
            b.lower
        })
        .collect();
    assert_eq!(bounds, vec![4, 2, 2]);

    assert_mismatch_report(&geometric_index(&link).unwrap());
    println!("PASS criterion 3: non-uniform (4,2,2) configuration refused with bounds [0, 2]");
}

#[test]
fn criterion_4_multiplicativity() {
    let leaf = |name: &str| {
        let report = geometric_index(&corpus_link(name).unwrap()).unwrap();
        IndexExpr::leaf(IndexFacts::from_report(name, &report))
    };

    let double = IndexExpr::nest(leaf("whitehead"), leaf("whitehead")).unwrap();
    assert_eq!(double.evaluate().unwrap().geometric, IndexValue::Exact(4));

    let mut chain = leaf("whitehead");
    for _ in 0..3 {
        chain = IndexExpr::nest(chain, leaf("whitehead")).unwrap();
    }
    let facts = chain.evaluate().unwrap();
    assert_eq!(facts.geometric, IndexValue::Exact(16));
    assert_eq!(facts.algebraic_total, 0);

    let base = leaf("whitehead").evaluate().unwrap();
    let padded = IndexExpr::nest(leaf("whitehead"), IndexExpr::leaf(IndexFacts::core()))
        .unwrap()
        .evaluate()
        .unwrap();
    assert!(padded.same_values(&base), "identity companion must be a no-op");

    println!("PASS criterion 4: nesting multiplies (2*2=4, 2^4=16) and the core leaf is neutral");
}

#[test]
fn criterion_5_antoine_split_metamorphic() {
    let link = generate_complicated(&[Pattern::AntoinePlusSpans; 8]);
    let before = geometric_index(&link).unwrap();
    assert_eq!(before.geometric, GeometricIndex::Exact { value: 8 });
    let components_before = link.trace_components().unwrap().len();

    let mut split = link;
    loop {
        let antoine_at = split.chambers().iter().position(|c| {
            c.pieces()
                .iter()
                .any(|p| matches!(p, Piece::Clasp { kind: ClaspKind::Antoine, .. }))
        });
        match antoine_at {
            Some(chamber) => split = split.split_antoine_chamber(chamber).unwrap(),
            None => break,
        }
    }

    assert_eq!(split.chamber_count(), 16, "every Antoine chamber doubles");
    let after = geometric_index(&split).unwrap();
    assert_eq!(after.geometric, GeometricIndex::Exact { value: 8 });
    assert_eq!(split.trace_components().unwrap().len(), components_before);
    println!("PASS criterion 5: splitting all Antoine chambers gives m=16 and keeps the index at 8");
}

#[test]
fn criterion_6a_signed_sum_disc_independence() {
    run_property("signed sum", link_strategy(), check_signed_sum_uniform);
    println!("PASS criterion 6a: signed sum identical at every disc ({PROPERTY_CASES} links)");
}

#[test]
fn criterion_6b_count_parity() {
    run_property("count parity", link_strategy(), check_count_parity);
    println!("PASS criterion 6b: disc counts share parity with the signed sum ({PROPERTY_CASES} links)");
}

#[test]
fn criterion_6c_trace_partition() {
    run_property("partition", link_strategy(), check_partition);
    println!("PASS criterion 6c: traces partition disc crossings ({PROPERTY_CASES} links)");
}

#[test]
fn criterion_6d_round_trip() {
    run_property("round trip", link_strategy(), check_round_trip);
    println!("PASS criterion 6d: parse(emit(link)) is the identity ({PROPERTY_CASES} links)");
}

#[test]
fn criterion_6e_rotation_invariance() {
    run_property(
        "rotation",
        (link_strategy(), any::<prop::sample::Index>()),
        |(link, r)| check_rotation_invariance(link, r.index(link.chamber_count())),
    );
    println!("PASS criterion 6e: reports are rotation invariant ({PROPERTY_CASES} links)");
}

#[test]
fn criterion_6f_complement_equality() {
    run_property("complement", link_strategy(), check_complement_equality);
    println!("PASS criterion 6f: chamber-wise equal links report equally ({PROPERTY_CASES} links)");
}

#[test]
fn criterion_6g_sound_lower_bounds() {
    run_property("soundness", link_strategy(), check_soundness);
    println!("PASS criterion 6g: certified values dominate |signed sum| with matching parity ({PROPERTY_CASES} links)");
}

#[test]
fn criterion_7_separation_conclusions() {
    let divisor_pairs = |total: u64| -> Vec<(u64, u64)> {
        (1..=total)
            .filter(|d| total.is_multiple_of(*d))
            .map(|d| (d, total / d))
            .collect()
    };

    for total in [1u64, 2, 6] {
        let conclusions = separating_torus_conclusions(total);
        let pairs: Vec<(u64, u64)> = conclusions.pairs.iter().map(|p| (p.inner, p.outer)).collect();
        assert_eq!(pairs, divisor_pairs(total), "factor pairs for {total}");
        for pair in &conclusions.pairs {
            assert_eq!(pair.parallel_to_inner, pair.inner == 1);
            assert_eq!(pair.parallel_to_outer, pair.outer == 1);
        }
    }

    let two = separating_torus_conclusions(2);
    assert_eq!(two.pairs.len(), 2);
    assert!(two.pairs[0].parallel_to_inner && !two.pairs[0].parallel_to_outer);
    assert!(!two.pairs[1].parallel_to_inner && two.pairs[1].parallel_to_outer);

    let one = separating_torus_conclusions(1);
    assert!(one.pairs[0].parallel_to_inner && one.pairs[0].parallel_to_outer);

    let six = separating_torus_conclusions(6);
    assert_eq!(six.pairs.len(), 4);
    assert_eq!(
        six.pairs
            .iter()
            .filter(|p| p.parallel_to_inner || p.parallel_to_outer)
            .count(),
        2
    );

    println!("PASS criterion 7: separation conclusions match the divisor oracle for 1, 2, 6");
}

#[test]
fn criterion_8_even_index_audit() {
    let names = ["whitehead", "bing", "mcmillan4", "gabai", "complicated"];
    for name in names {
        let link = corpus_link(name).unwrap();
        let report = geometric_index(&link).unwrap();
        assert!(
            report.windings.iter().all(|&w| w == 0),
            "{name} windings: {:?}",
            report.windings
        );
        let value = report
            .geometric
            .certified_value()
            .unwrap_or_else(|| panic!("{name} must certify"));
        assert_eq!(value % 2, 0, "{name} certified value {value} must be even");
        assert!(even_index_audit(&link, &report).unwrap(), "{name} audit");
    }

    // The canonical family link keeps the audit non-vacuous.
    let family = generate_complicated(&CANONICAL_COMPLICATED);
    let report = geometric_index(&family).unwrap();
    assert!(report.windings.iter().all(|&w| w == 0));
    assert!(even_index_audit(&family, &report).unwrap());

    println!("PASS criterion 8: even-index audit holds non-vacuously on all null-winding corpus links");
}
