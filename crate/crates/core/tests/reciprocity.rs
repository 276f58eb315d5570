//! `L(P)` resolves `M_{≥c}` exactly when `R(M_{≥c})` resolves `P`, for the
//! cycles `P` at a sufficiently positive `c`.

mod common;

use common::any_input;
use common::checks::reciprocity;
use proptest::prelude::*;
use tate_core::bgg::{presentation_from_image, reciprocity_check, EModulePresentation};
use tate_core::catalog::{rank_three_bundle_matrix, rank_three_bundle_module, structure_sheaf};
use tate_core::multigraded::{Multidegree, Ring, RingSpec};
use tate_core::smodule::monomial_quotient;
use tate_core::tate::cycles_p;

fn box_above(spec: &RingSpec, c: &Multidegree) -> Multidegree {
    &(c + &spec.n_deg()) + &spec.ones()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn cycles_satisfy_reciprocity(input in any_input()) {
        reciprocity(&input);
    }
}

#[test]
fn structure_sheaf_at_one() {
    let spec = RingSpec::product(&[1, 1]);
    let s = structure_sheaf(&spec);
    let c = spec.ones();
    let rep = reciprocity_check(&s, &cycles_p(&s, &c).unwrap(), &c, &box_above(&spec, &c)).unwrap();
    assert!(rep.holds());
}

#[test]
fn rank_three_bundle_and_its_defining_image() {
    let spec = RingSpec::product(&[1, 1]);
    let ring = Ring::new(spec.clone()).unwrap();
    let m = rank_three_bundle_module().unwrap();
    let p = EModulePresentation::Image(rank_three_bundle_matrix(&ring));
    let lo = spec.zero();
    assert_eq!(presentation_from_image(&ring, &rank_three_bundle_matrix(&ring)).unwrap(), m);
    assert!(reciprocity_check(&m, &p, &lo, &box_above(&spec, &lo)).unwrap().holds());
}

#[test]
fn residue_fields_on_both_sides() {
    use tate_core::complexes::{EMatrix, FreeEModule};
    use tate_core::multigraded::ExteriorElement;
    let spec = RingSpec::product(&[1, 1]);
    let ring = Ring::new(spec.clone()).unwrap();
    let k = monomial_quotient(&spec, &(0..4).map(|v| (0..4).map(|w| (v == w) as u32).collect()).collect::<Vec<_>>());
    let omega = FreeEModule::new(vec![spec.zero()]);
    // L(ω_E) is the Koszul complex, which resolves K
    let p = EModulePresentation::Coker(EMatrix::zero(FreeEModule::empty(), omega.clone()));
    assert!(reciprocity_check(&k, &p, &spec.zero(), &spec.ones()).unwrap().holds());
    // the residue field of E is not resolved by R(K)
    let mut vars = EMatrix::zero(FreeEModule::empty(), omega);
    for i in 0..2 {
        for j in 0..2 {
            vars.push_column(spec.unit(i), vec![(0, ExteriorElement::var(&ring, i, j))]);
        }
    }
    let k_e = EModulePresentation::Coker(vars);
    let rep = reciprocity_check(&k, &k_e, &spec.zero(), &spec.ones()).unwrap();
    assert!(!rep.l_resolves_m && !rep.r_resolves_p, "{rep:?}");
}
