//! Recovering ordered sums of line bundles from computed cohomology tables.

mod common;

use common::checks::{chain, default_table as table, split_chain};
use proptest::prelude::*;
use tate_core::catalog::rank_three_bundle_module;
use tate_core::multigraded::{Multidegree, RingSpec};
use tate_core::smodule::line_bundle_sum;
use tate_core::tate::{detect_split, SplitOutcome};

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn ordered_sums_are_recovered(cs in chain()) {
        split_chain(&cs);
    }
}

#[test]
fn small_examples() {
    let spec = RingSpec::product(&[1, 1]);
    let o = Multidegree::from([0, 0]);
    let o10 = Multidegree::from([-1, 0]);
    assert_eq!(
        detect_split(&spec, &table(&line_bundle_sum(&spec, &[o.clone(), o10.clone()]))).unwrap(),
        SplitOutcome::Split { summands: vec![(o, 1), (o10, 1)] }
    );
    let c = Multidegree::from([2, 1]);
    assert_eq!(
        detect_split(&spec, &table(&line_bundle_sum(&spec, &[c.clone(), c.clone(), c.clone()]))).unwrap(),
        SplitOutcome::Split { summands: vec![(c, 3)] }
    );
}

#[test]
fn unordered_sum_is_inconclusive() {
    let spec = RingSpec::product(&[1, 1]);
    let m = line_bundle_sum(&spec, &[Multidegree::from([1, 0]), Multidegree::from([0, 1])]);
    assert!(matches!(detect_split(&spec, &table(&m)).unwrap(), SplitOutcome::Inconclusive { .. }));
}

#[test]
fn rank_three_bundle_does_not_split() {
    let spec = RingSpec::product(&[1, 1]);
    let m = rank_three_bundle_module().unwrap();
    assert!(matches!(detect_split(&spec, &table(&m)).unwrap(), SplitOutcome::NotSplit { .. }));
}
