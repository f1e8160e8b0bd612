//! Each criterion must fail, and name itself, when its fixture is corrupted.

use realexp::selftest::{run_criterion, Depth, SelfTestOptions, CRITERIA};

#[test]
fn corrupted_fixtures_are_reported() {
    for &(id, _) in CRITERIA.iter() {
        let opts = SelfTestOptions {
            depth: Depth::Small,
            seed: 7,
            corrupt: Some(id),
        };
        let r = run_criterion(id, &opts);
        assert_eq!(r.id, id);
        assert!(
            !r.passed,
            "criterion {id} passed on a corrupted fixture: {}",
            r.detail
        );
    }
}

#[test]
fn small_depth_passes() {
    let opts = SelfTestOptions {
        depth: Depth::Small,
        ..SelfTestOptions::default()
    };
    for &(id, _) in CRITERIA.iter() {
        let r = run_criterion(id, &opts);
        assert!(r.passed, "criterion {id}: {}", r.detail);
    }
}
