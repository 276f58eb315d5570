//! Recovering pieces of a Tate resolution from its Beilinson window using
//! only computations over `E`.

use super::regions::corner;
use super::table::CohomologyTable;
use crate::complexes::FreeEComplex;
use crate::error::{Result, TateError};
use crate::multigraded::{Multidegree, Ring};
use crate::resolutions::{extend_complex_left, extend_complex_right, ExtendOptions};

/// Positions `r ≤ s` of the first and last nonzero terms.
fn span(bw: &FreeEComplex) -> Option<(i64, i64)> {
    let ds: Vec<i64> = bw.terms.iter().filter(|(_, m)| !m.is_empty()).map(|(&d, _)| d).collect();
    Some((*ds.first()?, *ds.last()?))
}

fn check_bw(ring: &Ring, bw: &FreeEComplex) -> Result<()> {
    let spec = ring.spec();
    if &bw.ring != spec {
        return Err(TateError::BadInput("Beilinson window over a different ring".into()));
    }
    let n = spec.n_deg();
    let zero = spec.zero();
    for (d, m) in &bw.terms {
        if let Some(b) = m.twists.iter().find(|&b| !(b.ge(&zero) && b.le(&n))) {
            return Err(TateError::BadInput(format!("term ω_E({b}) in position {d} lies outside the Beilinson window")));
        }
    }
    for (d, m) in &bw.diffs {
        if m.has_unit_entry() {
            return Err(TateError::NonMinimal(format!("differential at position {d} has a unit entry")));
        }
    }
    bw.check_complex(ring)
}

/// Lower quadrant `qT = [F → BW]` in positions `d, …, s`: the summands of
/// the Tate resolution with twist `a ≤ 0`.  With a `floor`, only summands
/// with `a ≥ floor` are produced; the ones dropped never feed back into
/// those kept.
pub fn lower_quadrant_extension_bounded(
    ring: &Ring,
    bw: &FreeEComplex,
    d: i64,
    floor: Option<&Multidegree>,
    opts: &ExtendOptions,
) -> Result<FreeEComplex> {
    check_bw(ring, bw)?;
    let Some((r, s)) = span(bw) else {
        return Ok(FreeEComplex::new(ring.spec().clone()));
    };
    if d >= r {
        return Err(TateError::BadInput(format!("target position {d} must lie below the first term at {r}")));
    }
    let spec = ring.spec();
    let ones = spec.ones();
    let gen_floor = floor.map(|f| f + &spec.top_deg());
    let mut q = bw.clone();
    q.prune();
    q.window = (r, s);
    let allow = |_: i64, x: &Multidegree| !x.ge(&ones) && gen_floor.as_ref().is_none_or(|g| x.ge(g));
    extend_complex_left(ring, &mut q, s, d, &allow, opts)?;
    q.window = (d, s);
    Ok(q)
}

pub fn lower_quadrant_extension(ring: &Ring, bw: &FreeEComplex, d: i64, opts: &ExtendOptions) -> Result<FreeEComplex> {
    lower_quadrant_extension_bounded(ring, bw, d, None, opts)
}

/// A piece of the corner complex at `a` with the position `e = r + |a|`
/// of its first correct differential target.
#[derive(Clone, Debug)]
pub struct CornerPiece {
    pub complex: FreeEComplex,
    pub e: i64,
}

/// Positions `e - 1` and `e` of the corner complex at `a < -n`, followed
/// by `steps` minimal injective hulls.
pub fn corner_from_bw(
    ring: &Ring,
    bw: &FreeEComplex,
    a: &Multidegree,
    steps: usize,
    opts: &ExtendOptions,
) -> Result<CornerPiece> {
    corner_piece(ring, bw, a, opts).and_then(|mut p| {
        if steps > 0 {
            extend_complex_right(ring, &mut p.complex, p.e, p.e + steps as i64, &|_, _| true, opts)?;
            p.complex.window = (p.e - 1, p.e + steps as i64);
        }
        Ok(p)
    })
}

fn corner_piece(ring: &Ring, bw: &FreeEComplex, a: &Multidegree, opts: &ExtendOptions) -> Result<CornerPiece> {
    let spec = ring.spec();
    spec.check(a)?;
    let neg_n = -&spec.n_deg();
    if !a.lt_all(&neg_n) {
        return Err(TateError::BadInput(format!("corner degree {a} must be < {neg_n} in every coordinate")));
    }
    check_bw(ring, bw)?;
    let Some((r, s)) = span(bw) else {
        return Ok(CornerPiece { complex: FreeEComplex::new(spec.clone()), e: a.total() });
    };
    let t = spec.t() as i64;
    let nn = spec.n_total();
    let e = r + a.total();
    let d = e - nn - t;
    let l2 = s + nn;
    let floor = a + &Multidegree::splat(spec.t(), r - 1 - l2);
    let q = lower_quadrant_extension_bounded(ring, bw, d, Some(&floor), opts)?;
    let full = corner(ring, &q, a)?;
    let mut piece = full.select(|k, _| k == e - 1 || k == e);
    piece.window = (e - 1, e);
    piece.prune();
    Ok(CornerPiece { complex: piece, e })
}

/// The corner complex at `a` from position `e - 1` on, extended by hulls
/// whose socle degrees stay `≤ b`, until nothing more appears.
fn upper_part(
    ring: &Ring,
    bw: &FreeEComplex,
    a: &Multidegree,
    b: &Multidegree,
    opts: &ExtendOptions,
) -> Result<(FreeEComplex, i64)> {
    let spec = ring.spec();
    spec.check(b)?;
    if !b.ge(&spec.ones()) {
        return Err(TateError::BadInput(format!("upper corner {b} must be > 0 in every coordinate")));
    }
    let mut p = corner_piece(ring, bw, a, opts)?;
    let Some((_, s)) = span(bw) else {
        return Ok((p.complex, p.e));
    };
    let last = b.total() + s + spec.n_total();
    extend_complex_right(ring, &mut p.complex, p.e, last + 1, &|_, y| y.le(b), opts)?;
    p.complex.window = (p.e - 1, last + 1);
    Ok((p.complex, p.e))
}

/// `c ↦ Σ_k dim ℍ^k(F(c)) h^k` on `[a, b]` for `F = U(BW)`, with `a < -n`
/// and `b > 0`.
pub fn cohomology_table_bw(
    ring: &Ring,
    bw: &FreeEComplex,
    a: &Multidegree,
    b: &Multidegree,
    opts: &ExtendOptions,
) -> Result<CohomologyTable> {
    let (u, e) = upper_part(ring, bw, a, b, opts)?;
    let betti = u.betti().restrict(|d, _| d >= e);
    Ok(CohomologyTable::from_betti(&betti, a, b))
}

/// The window of `T(U(BW))` on the box `[lo, hi]`, built from a corner at
/// or below `lo`.
pub fn tate_window_bw(
    ring: &Ring,
    bw: &FreeEComplex,
    lo: &Multidegree,
    hi: &Multidegree,
    opts: &ExtendOptions,
) -> Result<FreeEComplex> {
    let spec = ring.spec();
    spec.check(lo)?;
    spec.check(hi)?;
    if !lo.le(hi) {
        return Err(TateError::BadInput(format!("empty box [{lo}, {hi}]")));
    }
    let a = lo.meet(&(-&spec.top_deg()));
    let b = hi.join(&spec.ones());
    let (u, e) = upper_part(ring, bw, &a, &b, opts)?;
    let mut w = u.select(|k, tw| {
        let c = -tw;
        k >= e && c.ge(lo) && c.le(hi)
    });
    w.prune();
    w.window = (e, u.window.1);
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::FreeEModule;
    use crate::multigraded::RingSpec;

    fn omega_bw(spec: &RingSpec) -> FreeEComplex {
        FreeEComplex::single(spec.clone(), 0, FreeEModule::new(vec![spec.zero()]))
    }

    #[test]
    fn zero_window_gives_zero() {
        let spec = RingSpec::product(&[1, 1]);
        let ring = Ring::new(spec.clone()).unwrap();
        let q = lower_quadrant_extension(&ring, &FreeEComplex::new(spec), -3, &ExtendOptions::default()).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn twists_outside_the_window_are_rejected() {
        let spec = RingSpec::product(&[1]);
        let ring = Ring::new(spec.clone()).unwrap();
        let bad = FreeEComplex::single(spec, 0, FreeEModule::new(vec![Multidegree::from([2])]));
        assert!(lower_quadrant_extension(&ring, &bad, -1, &ExtendOptions::default()).is_err());
    }

    #[test]
    fn structure_sheaf_table_on_p1() {
        let spec = RingSpec::product(&[1]);
        let ring = Ring::new(spec.clone()).unwrap();
        let t = cohomology_table_bw(
            &ring,
            &omega_bw(&spec),
            &Multidegree::from([-4]),
            &Multidegree::from([3]),
            &ExtendOptions::default(),
        )
        .unwrap();
        for c in -4i64..=3 {
            let k = if c >= -1 { 0 } else { 1 };
            let h = (c + 1).unsigned_abs();
            assert_eq!(t.h(&Multidegree::from([c]), k), Some(h), "c = {c}");
        }
    }
}
