//! Finite windows of the Tate resolution of a module or of a bounded
//! complex of modules.
//!
//! For a truncation degree `c` above the box, the complex
//! `C = Tot R(M^•_{≥c})` models `T_{≥c}`.  Extending `C` to the left until
//! it is exact produces the corner complex at `c`, whose new summands are
//! `T_{<c}` shifted by `t - 1`; the box is read off from those.

use super::positivity::{check_sufficiently_positive, sufficiently_positive, truncation_vanishes};
use crate::bgg::total_r_truncated;
use crate::complexes::{minimize, FreeEComplex};
use crate::error::{Result, TateError};
use crate::multigraded::{Multidegree, Ring};
use crate::resolutions::{extend_complex_left, ExtendOptions};
use crate::smodule::{SComplex, SPresentation};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Default)]
pub struct WindowOptions {
    pub extend: ExtendOptions,
    /// Truncation degree to use instead of searching for one.
    pub c: Option<Multidegree>,
}

/// A computed window together with the data that certify it.
#[derive(Clone, Debug)]
pub struct TateWindow {
    pub complex: FreeEComplex,
    pub lo: Multidegree,
    pub hi: Multidegree,
    pub c: Multidegree,
    /// Hypercohomological degrees `[ℓ1, ℓ2]` that can occur.
    pub amplitude: (i64, i64),
}

/// Truncation degree for a complex: above the box and at or above a
/// validated degree for every module.  Sufficient positivity holds for
/// all degrees above a sufficiently positive one, so only a degree given
/// by the caller is validated again.
fn choose_c(mc: &SComplex, hi: &Multidegree, opts: &WindowOptions) -> Result<Multidegree> {
    let spec = &mc.ring;
    let c = hi + &spec.ones();
    if let Some(given) = &opts.c {
        if !given.ge(&c) {
            return Err(TateError::WindowTooSmall(format!("truncation degree {given} must be ≥ {c}")));
        }
        for m in mc.modules.values() {
            let rep = check_sufficiently_positive(m, given)?;
            if !rep.accepted() && !truncation_vanishes(m, given) {
                return Err(TateError::NotSufficientlyPositive(format!("{given} fails: {rep:?}")));
            }
        }
        return Ok(given.clone());
    }
    let mut c = c;
    for m in mc.modules.values() {
        match sufficiently_positive(m) {
            Ok(cm) => c = c.join(&cm),
            // a module whose sheaf is zero contributes nothing once its
            // truncation vanishes
            Err(e) => match vanishing_degree(m) {
                Some(z) => c = c.join(&z),
                None => return Err(e),
            },
        }
    }
    Ok(c)
}

/// A degree `z` with `M_{≥z} = 0`, if one exists near the generators.
fn vanishing_degree(m: &SPresentation) -> Option<Multidegree> {
    let spec = &m.ring;
    let gmax = m.generators.iter().cloned().reduce(|a, b| a.join(&b)).unwrap_or_else(|| spec.zero());
    let z = &gmax + &Multidegree::splat(spec.t(), spec.n_total() + 3);
    truncation_vanishes(m, &z).then_some(z)
}

/// The subquotient of `T(F)` with twists in `[lo, hi]`, for `F` the sheaf
/// of a module.
pub fn tate_window_module(m: &SPresentation, lo: &Multidegree, hi: &Multidegree, opts: &WindowOptions) -> Result<TateWindow> {
    tate_window_complex(&SComplex::single(m.clone(), 0), lo, hi, opts)
}

/// The subquotient of `T(F^•)` with twists in `[lo, hi]` for a bounded
/// complex of modules.
pub fn tate_window_complex(mc: &SComplex, lo: &Multidegree, hi: &Multidegree, opts: &WindowOptions) -> Result<TateWindow> {
    mc.validate()?;
    let spec = mc.ring.clone();
    spec.check(lo)?;
    spec.check(hi)?;
    if !lo.le(hi) {
        return Err(TateError::BadInput(format!("empty box [{lo}, {hi}]")));
    }
    let ring = Ring::new(spec.clone())?;
    let t = spec.t() as i64;
    let nn = spec.n_total();
    let (pmin, pmax) = mc.range();
    let amp = (pmin, pmax + nn);
    let c = choose_c(mc, hi, opts)?;

    let top = c.total() + pmax;
    let mut g = total_r_truncated(&ring, mc, &c, top + 1);
    if !mc.is_single() {
        g = minimize(&ring, &g);
    }
    g.window = (top, top + 1);

    // T-position d sits in corner position e = d + t - 1.
    let d_min = lo.total() + amp.0;
    let d_max = hi.total() + amp.1;
    let e_min = d_min + t - 1;
    let gen_lo = lo + &spec.top_deg();
    let allow = |e: i64, x: &Multidegree| {
        let d = e - t + 1;
        x.ge(&gen_lo) && x.total() >= d - amp.1 + nn + t
    };
    let original = extend_complex_left(&ring, &mut g, top, e_min, &allow, &opts.extend)?;

    let mut lower = FreeEComplex::new(spec.clone());
    let mut keep: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (&e, m) in &g.terms {
        let start = original.get(&e).copied().unwrap_or(0);
        let idx: Vec<usize> = (start..m.rank())
            .filter(|&k| {
                let a = -&m.twists[k];
                a.ge(lo) && a.le(hi)
            })
            .collect();
        if !idx.is_empty() {
            keep.insert(e, idx);
        }
    }
    let fp = ring.fp();
    for (&e, idx) in &keep {
        let m = &g.terms[&e];
        lower.terms.insert(e - t + 1, crate::complexes::FreeEModule::new(idx.iter().map(|&k| m.twists[k].clone()).collect()));
        if let (Some(next), Some(dm)) = (keep.get(&(e + 1)), g.diffs.get(&e)) {
            let mut sub = dm.submatrix(next, idx);
            if t % 2 == 0 {
                sub = sub.neg(fp);
            }
            lower.diffs.insert(e - t + 1, sub);
        }
    }
    lower.window = (d_min, d_max);
    Ok(TateWindow { complex: lower, lo: lo.clone(), hi: hi.clone(), c, amplitude: amp })
}
