//! `U` respects composition: the fibre matrix of `g ∘ f` is the product of
//! the fibre matrices.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tate_core::complexes::{EMatrix, FreeEModule};
use tate_core::multigraded::{ExteriorElement, Multidegree, Ring, RingSpec};
use tate_core::tate::fiber_matrix;

fn random_twists(rng: &mut StdRng, spec: &RingSpec, k: usize) -> FreeEModule {
    FreeEModule::new((0..k).map(|_| Multidegree(spec.n.iter().map(|&n| rng.gen_range(-1..=n as i64 + 1)).collect())).collect())
}

/// A random homogeneous map: each entry is a random combination of the
/// monomials of the required degree.
fn random_map(rng: &mut StdRng, ring: &Ring, src: &FreeEModule, tgt: &FreeEModule) -> EMatrix {
    let fp = ring.fp();
    let mut m = EMatrix::zero(src.clone(), tgt.clone());
    for (l, bs) in src.twists.iter().enumerate() {
        for (k, bt) in tgt.twists.iter().enumerate() {
            let counts: Vec<i64> = bs.0.iter().zip(&bt.0).map(|(s, t)| s - t).collect();
            if counts.iter().zip(&ring.spec().n).any(|(&c, &n)| c < 0 || c > n as i64 + 1) {
                continue;
            }
            let terms: Vec<(u32, u32)> =
                ring.monomials_with_counts(&counts).iter().map(|&w| (w, rng.gen_range(0..fp.p()))).collect();
            m.set(k, l, ExteriorElement::from_terms(terms, fp));
        }
    }
    m
}

proptest! {
    #[test]
    fn fibre_matrices_compose(seed in any::<u64>(), which in 0usize..3) {
        let spec = RingSpec::product([&[1usize, 1][..], &[1, 2], &[3]][which]);
        let ring = Ring::new(spec.clone()).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (a, b, c) = (rng.gen_range(1..4), rng.gen_range(1..4), rng.gen_range(1..4));
        let ma = random_twists(&mut rng, &spec, a);
        let mb = random_twists(&mut rng, &spec, b);
        let mc = random_twists(&mut rng, &spec, c);
        let f = random_map(&mut rng, &ring, &ma, &mb);
        let g = random_map(&mut rng, &ring, &mb, &mc);
        let lhs = fiber_matrix(&ring, &g.compose(&f, ring.fp()));
        let rhs = fiber_matrix(&ring, &g).mul(&fiber_matrix(&ring, &f));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn random_composites_are_often_nonzero() {
    let spec = RingSpec::product(&[1, 1]);
    let ring = Ring::new(spec.clone()).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let mut nonzero = 0;
    for _ in 0..200 {
        let ma = random_twists(&mut rng, &spec, 3);
        let mb = random_twists(&mut rng, &spec, 3);
        let mc = random_twists(&mut rng, &spec, 3);
        let f = random_map(&mut rng, &ring, &ma, &mb);
        let g = random_map(&mut rng, &ring, &mb, &mc);
        if !fiber_matrix(&ring, &g.compose(&f, ring.fp())).is_zero() {
            nonzero += 1;
        }
    }
    assert!(nonzero >= 40, "only {nonzero} nonzero composites");
}
