//! One check per property, shared by the property suites and the
//! acceptance run.  Each panics with a description on failure.

use super::{kunneth, Input};
use std::collections::BTreeMap;
use tate_core::bgg::reciprocity_check;
use tate_core::complexes::{twist_and_shift, FreeEComplex};
use tate_core::multigraded::{box_points, Multidegree, Ring, RingSpec};
use tate_core::resolutions::ExtendOptions;
use tate_core::smodule::SPresentation;
use tate_core::tate::{
    beilinson_window, cohomology_table_bw, corner, cycles_p, region, sufficiently_positive, tate_window_bw, tate_window_module,
    CohomologyTable, RegionSpec, WindowOptions,
};

pub fn window(m: &SPresentation, lo: &Multidegree, hi: &Multidegree) -> FreeEComplex {
    tate_window_module(m, lo, hi, &WindowOptions::default()).unwrap().complex
}

/// `[-(n + 2·1^t), n + 2·1^t]`.
pub fn default_box(spec: &RingSpec) -> (Multidegree, Multidegree) {
    let r = &spec.n_deg() + &Multidegree::splat(spec.t(), 2);
    (-&r, r)
}

pub fn table(m: &SPresentation, lo: &Multidegree, hi: &Multidegree) -> CohomologyTable {
    CohomologyTable::from_window(&window(m, lo, hi), lo, hi)
}

/// Box for the window and the degrees `y` with `[y - n - 1, y]` inside it.
pub fn exactness_boxes(spec: &RingSpec) -> (Multidegree, Multidegree, Vec<Multidegree>) {
    let lo = -&(&spec.n_deg() + &spec.ones());
    let hi = &spec.n_deg() + &spec.ones();
    let interior = box_points(&(&lo + &(&spec.n_deg() + &spec.ones())), &hi);
    (lo, hi, interior)
}

fn assert_exact(ring: &Ring, c: &FreeEComplex, ys: &[Multidegree], what: &str) {
    for y in ys {
        let h = c.slice_homology(ring, y);
        assert!(h.values().all(|&v| v == 0), "{what}: slice {y} has homology {h:?}");
    }
}

/// Every assignment of the indices to `I`, `J`, `K` or none that leaves at
/// least one index out.
pub fn proper_regions(c: &Multidegree) -> Vec<RegionSpec> {
    let t = c.len();
    let mut out = Vec::new();
    for code in 0..4usize.pow(t as u32) {
        let (mut i, mut j, mut k) = (vec![], vec![], vec![]);
        let mut free = false;
        let mut x = code;
        for idx in 0..t {
            match x % 4 {
                0 => free = true,
                1 => i.push(idx),
                2 => j.push(idx),
                _ => k.push(idx),
            }
            x /= 4;
        }
        if free {
            out.push(RegionSpec::new(c.clone(), &i, &j, &k).unwrap());
        }
    }
    out
}

/// Strands, proper regions and the corner at a degree picked from `c_off`
/// inside the box are exact on every interior slice.
pub fn exactness(input: &Input, c_off: &[i64]) {
    let spec = input.module.ring.clone();
    let ring = Ring::new(spec.clone()).unwrap();
    let (lo, hi, ys) = exactness_boxes(&spec);
    let t = window(&input.module, &lo, &hi);
    let c = Multidegree(c_off.iter().zip(&lo.0).zip(&hi.0).map(|((o, l), h)| l + o.rem_euclid(h - l + 1)).collect());
    let tag = &input.label;

    assert_exact(&ring, &t, &ys, &format!("{tag}: whole window"));
    for j in 0..spec.t() {
        let s = region(&t, &RegionSpec::strand(c.clone(), &[j]).unwrap()).unwrap();
        assert_exact(&ring, &s, &ys, &format!("{tag}: strand J={{{j}}} through {c}"));
    }
    for r in proper_regions(&c) {
        let s = region(&t, &r).unwrap();
        assert_exact(&ring, &s, &ys, &format!("{tag}: region {r:?}"));
    }
    let k = corner(&ring, &t, &c).unwrap();
    assert_exact(&ring, &k, &ys, &format!("{tag}: corner at {c}"));
}

/// `T(F(c))` equals `T(F)` twisted by `c` and moved left by `|c|`.
pub fn twist_shift(m: &SPresentation, c: &Multidegree) {
    let spec = &m.ring;
    let lo = -&spec.n_deg();
    let hi = spec.n_deg();
    let twisted = window(&m.twisted(c), &lo, &hi);
    let moved = twist_and_shift(&window(m, &(&lo + c), &(&hi + c)), c, c.total());
    assert_eq!(twisted.terms, moved.terms, "terms differ for c = {c}");
    assert_eq!(twisted.diffs, moved.diffs, "differentials differ for c = {c}");
    assert_eq!(twisted.window, moved.window);
}

/// Reciprocity for `M` and its cycles at the first sufficiently positive
/// degree.  Returns `false` when the sheaf is zero and there is no pair.
pub fn reciprocity(input: &Input) -> bool {
    let m = &input.module;
    let Ok(c) = sufficiently_positive(m) else {
        return false;
    };
    let p = cycles_p(m, &c).unwrap();
    let hi = &(&c + &m.ring.n_deg()) + &m.ring.ones();
    let rep = reciprocity_check(m, &p, &c, &hi).unwrap();
    assert!(rep.holds(), "{}: {rep:?}", input.label);
    true
}

/// The table of a line bundle sum is the sum of Künneth tables.
pub fn kunneth_tables(input: &Input) {
    let m = &input.module;
    let spec = &m.ring;
    let (lo, hi) = default_box(spec);
    let t = table(m, &lo, &hi);
    for c in box_points(&lo, &hi) {
        let mut want = BTreeMap::new();
        for g in &m.generators {
            // the summand generated in degree g is O(-g)
            for (k, v) in kunneth(&spec.n, &(&c - g).0) {
                *want.entry(k).or_insert(0u64) += v;
            }
        }
        assert_eq!(t.get(&c), Some(&want), "{} at {c}", input.label);
    }
}

/// `Σ (-1)^k h^k` from the table equals the alternating Betti sum.
pub fn euler(input: &Input) {
    let spec = input.module.ring.clone();
    let (lo, hi) = default_box(&spec);
    let w = window(&input.module, &lo, &hi);
    let t = CohomologyTable::from_window(&w, &lo, &hi);
    let betti = w.betti();
    for c in box_points(&lo, &hi) {
        let from_betti: i64 = betti
            .entries
            .iter()
            .filter(|((_, a), _)| *a == c)
            .map(|((d, _), &m)| if (d - c.total()).rem_euclid(2) == 0 { m as i64 } else { -(m as i64) })
            .sum();
        assert_eq!(t.euler(&c), Some(from_betti), "{} at {c}", input.label);
    }
}

/// Module side and Beilinson-window side agree, as tables on
/// `[-n - 1, 1]` and as windows on `[-n, 0]`.
pub fn reconstruction(m: &SPresentation) {
    let spec = &m.ring;
    let ring = Ring::new(spec.clone()).unwrap();
    let a = -&(&spec.n_deg() + &spec.ones());
    let b = spec.ones();
    let w = window(m, &a, &b);
    let module_side = CohomologyTable::from_window(&w, &a, &b);
    let bw = beilinson_window(&w);
    let opts = ExtendOptions::default();
    assert_eq!(cohomology_table_bw(&ring, &bw, &a, &b, &opts).unwrap(), module_side);
    let lo = -&spec.n_deg();
    let hi = spec.zero();
    let from_bw = tate_window_bw(&ring, &bw, &lo, &hi, &opts).unwrap();
    assert_eq!(from_bw.betti(), window(m, &lo, &hi).betti());
}

/// A chain `c_1 ≥ c_2 ≥ …` of one to five twists in `[-2, 2]^2`.
pub fn chain() -> impl proptest::strategy::Strategy<Value = Vec<Multidegree>> {
    use proptest::prelude::*;
    (prop::collection::vec(0i64..=2, 2), prop::collection::vec(prop::collection::vec(0i64..=1, 2), 0..=4)).prop_map(
        |(start, steps)| {
            let mut c = Multidegree(start);
            let mut out = vec![c.clone()];
            for s in steps {
                c = Multidegree(c.0.iter().zip(&s).map(|(x, d)| (x - d).max(-2)).collect());
                out.push(c.clone());
            }
            out
        },
    )
}

pub fn grouped(cs: &[Multidegree]) -> Vec<(Multidegree, usize)> {
    let mut out: Vec<(Multidegree, usize)> = Vec::new();
    for c in cs {
        match out.last_mut() {
            Some((d, m)) if d == c => *m += 1,
            _ => out.push((c.clone(), 1)),
        }
    }
    out
}

pub fn default_table(m: &SPresentation) -> CohomologyTable {
    let (lo, hi) = default_box(&m.ring);
    table(m, &lo, &hi)
}

/// The summands of `⊕ O(c_i)` come back from its table.
pub fn split_chain(cs: &[Multidegree]) {
    let spec = RingSpec::product(&[1, 1]);
    let got = tate_core::tate::detect_split(&spec, &default_table(&tate_core::smodule::line_bundle_sum(&spec, cs))).unwrap();
    assert_eq!(got, tate_core::tate::SplitOutcome::Split { summands: grouped(cs) }, "chain {cs:?}");
}
