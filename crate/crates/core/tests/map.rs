use electodist::analysis::{correlation_from_distances, pair_distances};
use electodist::cultures::{sample_dataset, CultureEntry, CultureSpec};
use electodist::map::{distance_matrix, embed, render_svg, LayoutConfig, LayoutMethod, COMPASS_CLASS};
use electodist::metrics::{DistanceOptions, MetricKind};

fn dataset() -> (Vec<String>, Vec<String>, Vec<electodist::Election>) {
    let entries: Vec<CultureEntry> = CultureSpec::standard_thirteen()
        .into_iter()
        .map(|spec| CultureEntry { spec, count: 5 })
        .collect();
    let sampled = sample_dataset(&entries, 6, 12, 2024).unwrap();
    let labels = (0..sampled.len()).map(|i| format!("e{i}")).collect();
    let classes = sampled.iter().map(|(s, _)| s.label()).collect();
    (labels, classes, sampled.into_iter().map(|(_, e)| e).collect())
}

fn well_formed(svg: &str) -> bool {
    let mut reader = quick_xml::Reader::from_str(svg);
    let mut depth = 0i64;
    loop {
        match reader.read_event() {
            Ok(quick_xml::events::Event::Start(_)) => depth += 1,
            Ok(quick_xml::events::Event::End(_)) => depth -= 1,
            Ok(quick_xml::events::Event::Eof) => return depth == 0,
            Ok(_) => {}
            Err(_) => return false,
        }
    }
}

#[test]
fn thirteen_culture_map() {
    let (labels, classes, data) = dataset();
    let opts = DistanceOptions::default();
    let d = distance_matrix(labels, &data, MetricKind::EmdPositionwise, &opts).unwrap();
    for method in [LayoutMethod::Force, LayoutMethod::Mds] {
        let e = embed(&d, &LayoutConfig { method, seed: 1, ..Default::default() });
        eprintln!("{method:?} stress {:.4}", e.stress);
        assert!(e.stress < 0.25);
        let svg = render_svg(&e, &classes).unwrap();
        assert!(well_formed(&svg));
    }
}

#[test]
fn swap_tracks_emd_better_than_discrete() {
    let (_, _, data) = dataset();
    let opts = DistanceOptions::default();
    let swap = pair_distances(&data, MetricKind::IsoSwap, &opts).unwrap();
    let emd = pair_distances(&data, MetricKind::EmdPositionwise, &opts).unwrap();
    let disc = pair_distances(&data, MetricKind::IsoDiscrete, &opts).unwrap();
    let a = correlation_from_distances(MetricKind::IsoSwap, &swap, MetricKind::EmdPositionwise, &emd).unwrap();
    let b = correlation_from_distances(MetricKind::IsoSwap, &swap, MetricKind::IsoDiscrete, &disc).unwrap();
    eprintln!("emd {:.3} discrete {:.3}", a.pearson, b.pearson);
    assert!(a.pearson > b.pearson);
}

#[test]
fn compass_points_are_marked() {
    let (mut labels, mut classes, mut data) = dataset();
    for kind in electodist::election::CompassKind::ALL {
        if let Ok(e) = electodist::election::compass_election(kind, 6, 12) {
            labels.push(kind.label().to_string());
            classes.push(COMPASS_CLASS.to_string());
            data.push(e);
        }
    }
    let d = distance_matrix(labels, &data, MetricKind::Pairwise, &DistanceOptions::default()).unwrap();
    let svg = render_svg(&embed(&d, &LayoutConfig::default()), &classes).unwrap();
    assert!(well_formed(&svg));
    assert!(svg.contains(">ID</text>") && svg.contains(">AN</text>"));
    assert!(!svg.contains(">ST</text>"));
}
