mod common;

use common::{all_dendrograms, random_signed, subdendrogram_distances};
use hcc_core::{agglomerate, dendrogram_distances, validate_ultrametric, Criterion, Error, LevelKind};
use proptest::prelude::*;

fn valid_kinds(c: Criterion) -> &'static [LevelKind] {
    match c {
        Criterion::Hcc => &[LevelKind::TreeLevel],
        _ => &LevelKind::ALL,
    }
}

#[test]
fn lca_distances_match_subdendrogram_minimum_exhaustively() {
    for n in 2..=6 {
        let trees = all_dendrograms(n);
        for d in &trees {
            for kind in LevelKind::ALL {
                let fast = dendrogram_distances(d, kind).unwrap();
                let slow = subdendrogram_distances(d, kind);
                assert_eq!(fast.values(), &slow, "n {n} kind {kind}");
            }
        }
    }
}

#[test]
fn tree_levels_are_small_positive_integers() {
    for seed in 0..30u64 {
        let n = 2 + seed as usize;
        let m = random_signed(n, seed);
        for c in Criterion::ALL {
            let d = agglomerate(&m, c).unwrap();
            let u = dendrogram_distances(&d, LevelKind::TreeLevel).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let v = u.get(i, j);
                    assert_eq!(v, v.round());
                    assert!(v <= (n - 1) as f64);
                    assert_eq!(v == 0.0, i == j);
                }
            }
        }
    }
}

#[test]
fn linkage_kind_refused_for_hcc() {
    let d = agglomerate(&random_signed(6, 3), Criterion::Hcc).unwrap();
    assert!(matches!(
        dendrogram_distances(&d, LevelKind::LinkageValue),
        Err(Error::InvalidLevelKind(_))
    ));
}

#[test]
fn negative_linkages_are_shifted_positive() {
    let m = random_signed(20, 11);
    for c in [Criterion::Single, Criterion::Complete, Criterion::Average] {
        let d = agglomerate(&m, c).unwrap();
        assert!(d.merges()[0].linkage < 0.0);
        let u = dendrogram_distances(&d, LevelKind::LinkageValue).unwrap();
        let report = validate_ultrametric(u.values(), 1e-9);
        assert!(report.is_strict(), "{c}: {report}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_valid_level_kind_gives_an_ultrametric(seed in any::<u64>(), n in 2usize..24) {
        let m = random_signed(n, seed);
        for c in Criterion::ALL {
            let d = agglomerate(&m, c).unwrap();
            for &kind in valid_kinds(c) {
                let u = dendrogram_distances(&d, kind).unwrap();
                let report = validate_ultrametric(u.values(), 1e-9);
                prop_assert!(report.is_ultrametric(), "{} {}: {}", c, kind, report);
            }
        }
    }
}
