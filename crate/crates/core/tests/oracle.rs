//! Cohomology tables of line bundle sums against the Künneth formula, and
//! the Euler characteristic read two ways.

mod common;

use common::checks::{default_box, euler, kunneth_tables, table};
use common::{any_input, line_bundles, spec_strategy};
use proptest::prelude::*;
use tate_core::multigraded::{box_points, Multidegree, RingSpec};

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn line_bundle_tables_match_kunneth(input in spec_strategy().prop_flat_map(|s| line_bundles(s, 4, 3))) {
        kunneth_tables(&input);
    }

    #[test]
    fn euler_characteristic_two_ways(input in any_input()) {
        euler(&input);
    }
}

/// `χ(O(c)) = Π_i C(c_i + n_i, n_i)` as a polynomial in `c`.
fn chi(n: &[usize], c: &[i64]) -> i64 {
    n.iter()
        .zip(c)
        .map(|(&ni, &ci)| (1..=ni as i64).map(|k| ci + k).product::<i64>() / (1..=ni as i64).product::<i64>())
        .product()
}

#[test]
fn euler_characteristic_of_line_bundles_is_the_hilbert_polynomial() {
    let spec = RingSpec::product(&[1, 2]);
    let (lo, hi) = default_box(&spec);
    let twists = [Multidegree::from([1, -2]), Multidegree::from([-3, 0])];
    let m = tate_core::smodule::line_bundle_sum(&spec, &twists);
    let table = table(&m, &lo, &hi);
    for c in box_points(&lo, &hi) {
        let want: i64 = twists.iter().map(|t| chi(&spec.n, &(&c + t).0)).sum();
        assert_eq!(table.euler(&c), Some(want), "at {c}");
    }
}
