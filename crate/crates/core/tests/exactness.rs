//! Strands, proper region complexes and corner complexes of computed
//! windows are exact in every degree whose slice lies inside the box.

mod common;

use common::checks::{exactness, exactness_boxes};
use common::{any_input, Input};
use proptest::prelude::*;
use tate_core::multigraded::{Ring, RingSpec};
use tate_core::tate::{region, tate_window_module, RegionSpec, WindowOptions};

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn exact_on_certified_interior(input in any_input(), c in prop::collection::vec(any::<i64>(), 2)) {
        exactness(&input, &c);
    }
}

#[test]
fn rank_three_bundle_is_exact_on_interior() {
    let m = tate_core::catalog::rank_three_bundle_module().unwrap();
    exactness(&Input { label: "rank three bundle".into(), module: m }, &[3, 3]);
}

#[test]
fn quadrant_complexes_are_not_exact_in_general() {
    let spec = RingSpec::product(&[1, 1]);
    let ring = Ring::new(spec.clone()).unwrap();
    let (lo, hi, ys) = exactness_boxes(&spec);
    let w = tate_window_module(&tate_core::catalog::structure_sheaf(&spec), &lo, &hi, &WindowOptions::default()).unwrap();
    let q = region(&w.complex, &RegionSpec::quadrant(spec.zero(), &[]).unwrap()).unwrap();
    let broken = ys.iter().any(|y| q.slice_homology(&ring, y).values().any(|&v| v > 0));
    assert!(broken, "T_{{≥0}} of O should carry the cohomology of O");
}

#[test]
fn extra_summand_is_detected() {
    // Adding a copy of ω_E in position 0 with zero maps leaves homology in
    // every slice that sees it.
    let spec = RingSpec::product(&[1, 1]);
    let ring = Ring::new(spec.clone()).unwrap();
    let (lo, hi, ys) = exactness_boxes(&spec);
    let w = tate_window_module(&tate_core::catalog::structure_sheaf(&spec), &lo, &hi, &WindowOptions::default()).unwrap();
    let mut t = w.complex.clone();
    t.terms.get_mut(&0).unwrap().twists.push(spec.zero());
    t.diffs.get_mut(&0).unwrap().push_column(spec.zero(), vec![]);
    t.diffs.get_mut(&-1).unwrap().push_row(spec.zero(), vec![]);
    t.check_complex(&ring).unwrap();
    let broken = ys.iter().filter(|y| t.slice_homology(&ring, y).values().any(|&v| v > 0)).count();
    assert_eq!(broken, ys.iter().filter(|&y| y.ge(&spec.zero()) && y.le(&spec.top_deg())).count());
}
