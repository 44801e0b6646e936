mod common;

use common::{fingerprint, invariance_matrices, random_moves};
use knottab::DowkerSet;

#[test]
fn random_moves_keep_invariants() {
    for seed in [7, 8, 9, 10] {
        let run = random_moves(1500, 8, seed);
        assert!(run.failures.is_empty(), "{:#?}", &run.failures[..run.failures.len().min(5)]);
        assert!(run.by_kind.iter().all(|&k| k > 100), "{:?}", run.by_kind);
    }
}

#[test]
fn the_fingerprint_sees_a_crossing_change() {
    let mats = invariance_matrices();
    let trefoil = DowkerSet::parse("1,4 3,6 5,2").unwrap();
    let changed = DowkerSet::parse("4,1 3,6 5,2").unwrap();
    assert_ne!(fingerprint(&trefoil, &mats), fingerprint(&changed, &mats));
}
