use electodist::analysis::{count_equivalence_classes, enumerate_anecs};
use electodist::metrics::{distance, MetricKind};

#[test]
fn class_counts_match_table() {
    let expected = [
        (3, 3, 10, 10, 8, 8),
        (3, 4, 24, 23, 17, 13),
        (3, 5, 42, 40, 25, 18),
        (4, 3, 111, 93, 50, 37),
        (4, 4, 762, 465, 200, 76),
        (4, 5, 4095, 1746, 513, 131),
    ];
    for (m, n, anecs, pos, pair, borda) in expected {
        let r = count_equivalence_classes(m, n).unwrap();
        assert_eq!(
            (r.anec_count, r.positionwise_classes, r.pairwise_classes, r.bordawise_classes),
            (anecs, pos, pair, borda),
            "m={m} n={n}"
        );
        assert!(r.anec_count >= r.positionwise_classes && r.positionwise_classes >= r.bordawise_classes);
        assert!(r.anec_count >= r.pairwise_classes && r.pairwise_classes >= r.bordawise_classes);
    }
}

#[test]
fn smallest_nonzero_distances_on_3x3() {
    let anecs = enumerate_anecs(3, 3).unwrap();
    let expected = [
        (MetricKind::IsoSwap, 1),
        (MetricKind::IsoDiscrete, 1),
        (MetricKind::Bordawise, 1),
        (MetricKind::EmdPositionwise, 2),
        (MetricKind::Pairwise, 2),
        (MetricKind::L1Positionwise, 4),
    ];
    for (kind, smallest) in expected {
        let mut min = i64::MAX;
        for i in 0..anecs.len() {
            for j in i + 1..anecs.len() {
                let d = distance(&anecs[i], &anecs[j], kind).unwrap().value;
                if d > 0 {
                    min = min.min(d);
                }
            }
        }
        assert_eq!(min, smallest, "{kind}");
    }
}

#[test]
fn fineness_chain_on_small_censuses() {
    for (m, n) in [(3, 3), (3, 4)] {
        let anecs = enumerate_anecs(m, n).unwrap();
        for i in 0..anecs.len() {
            for j in i + 1..anecs.len() {
                let (a, b) = (&anecs[i], &anecs[j]);
                assert!(distance(a, b, MetricKind::IsoDiscrete).unwrap().value > 0);
                assert!(distance(a, b, MetricKind::IsoSwap).unwrap().value > 0);
                let borda = distance(a, b, MetricKind::Bordawise).unwrap().value;
                for k in [MetricKind::EmdPositionwise, MetricKind::L1Positionwise, MetricKind::Pairwise] {
                    if distance(a, b, k).unwrap().value == 0 {
                        assert_eq!(borda, 0, "{k} zero but Bordawise {borda}");
                    }
                }
            }
        }
    }
}
