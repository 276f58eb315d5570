//! The cohomology table computed from the module agrees with the one
//! rebuilt from the Beilinson window alone.

mod common;

use common::any_input;
use common::checks::reconstruction;
use proptest::prelude::*;
use tate_core::multigraded::{Multidegree, Ring};
use tate_core::resolutions::ExtendOptions;
use tate_core::tate::{beilinson_window, cohomology_table_bw, tate_window_module, CohomologyTable, WindowOptions};

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn tables_agree(input in any_input()) {
        reconstruction(&input.module);
    }
}

#[test]
fn rank_three_bundle() {
    reconstruction(&tate_core::catalog::rank_three_bundle_module().unwrap());
}

#[test]
fn rank_three_bundle_full_table() {
    let m = tate_core::catalog::rank_three_bundle_module().unwrap();
    let spec = m.ring.clone();
    let ring = Ring::new(spec.clone()).unwrap();
    let lo = Multidegree::from([-3, -3]);
    let hi = Multidegree::from([3, 3]);
    let w = tate_window_module(&m, &lo, &hi, &WindowOptions::default()).unwrap();
    let bw = beilinson_window(&w.complex);
    let t = cohomology_table_bw(&ring, &bw, &lo, &hi, &ExtendOptions::default()).unwrap();
    assert_eq!(t, CohomologyTable::from_window(&w.complex, &lo, &hi));
}
