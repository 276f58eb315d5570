//! Region complexes, strands, the corner complex and the Beilinson window,
//! all cut out of a computed window by conditions on the twists.
//!
//! Throughout, a summand `ω_E(b)` of `T^d` is indexed by `a = -b`, the
//! degree whose cohomology it records.

use crate::complexes::{cone, twist_and_shift, ChainMap, EMatrix, FreeEComplex, FreeEModule};
use crate::error::{Result, TateError};
use crate::multigraded::{ExteriorElement, Multidegree, Ring, RingSpec};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// `T_c(I, J, K)`: summands with `a_i < c_i` for `i ∈ I`, `a_j = c_j` for
/// `j ∈ J` and `a_k ≥ c_k` for `k ∈ K`.  Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub c: Multidegree,
    pub less: BTreeSet<usize>,
    pub equal: BTreeSet<usize>,
    pub geq: BTreeSet<usize>,
}

impl RegionSpec {
    pub fn new(c: Multidegree, less: &[usize], equal: &[usize], geq: &[usize]) -> Result<Self> {
        let s = RegionSpec {
            c,
            less: less.iter().copied().collect(),
            equal: equal.iter().copied().collect(),
            geq: geq.iter().copied().collect(),
        };
        s.validate()?;
        Ok(s)
    }

    /// The `J`-strand through `c`.
    pub fn strand(c: Multidegree, j: &[usize]) -> Result<Self> {
        Self::new(c, &[], j, &[])
    }

    /// The quadrant `qT_{c,I}`: `a_i < c_i` on `I`, `a_k ≥ c_k` elsewhere.
    pub fn quadrant(c: Multidegree, i: &[usize]) -> Result<Self> {
        let t = c.len();
        let rest: Vec<usize> = (0..t).filter(|k| !i.contains(k)).collect();
        Self::new(c, i, &[], &rest)
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.c.len();
        let mut seen = BTreeSet::new();
        for &i in self.less.iter().chain(&self.equal).chain(&self.geq) {
            if i >= t {
                return Err(TateError::BadInput(format!("index {i} out of range for t = {t}")));
            }
            if !seen.insert(i) {
                return Err(TateError::BadInput(format!("index {i} appears in two of I, J, K")));
            }
        }
        Ok(())
    }

    pub fn contains(&self, a: &Multidegree) -> bool {
        self.less.iter().all(|&i| a[i] < self.c[i])
            && self.equal.iter().all(|&i| a[i] == self.c[i])
            && self.geq.iter().all(|&i| a[i] >= self.c[i])
    }
}

pub fn region(t: &FreeEComplex, spec: &RegionSpec) -> Result<FreeEComplex> {
    spec.validate()?;
    t.ring.check(&spec.c)?;
    Ok(t.select(|_, b| spec.contains(&-b)))
}

/// Summands `ω_E(-a)` with `-n ≤ a ≤ 0`.
pub fn beilinson_window(t: &FreeEComplex) -> FreeEComplex {
    let n = t.ring.n_deg();
    let zero = t.ring.zero();
    let mut w = t.select(|_, b| b.ge(&zero) && b.le(&n));
    w.prune();
    w
}

/// `[min, max]` of `d - |a|` over the nonzero Betti entries, or `None` for
/// the zero complex.
pub fn amplitude(t: &FreeEComplex) -> Option<(i64, i64)> {
    let vals: Vec<i64> = t.terms.iter().flat_map(|(&d, m)| m.twists.iter().map(move |b| d + b.total())).collect();
    Some((*vals.iter().min()?, *vals.iter().max()?))
}

/// The part of the `I`-strand through `c` (with `I` the complement of `J`),
/// rewritten over the exterior algebra of the factors in `J` and shifted
/// so that it is the Tate resolution of `Rπ_{J*}(F(c_I))`.
pub fn pushforward_strand(t: &FreeEComplex, j: &[usize], c: &Multidegree) -> Result<FreeEComplex> {
    let spec = &t.ring;
    spec.check(c)?;
    let tt = spec.t();
    let js: BTreeSet<usize> = j.iter().copied().collect();
    if js.is_empty() || js.iter().any(|&k| k >= tt) {
        return Err(TateError::BadInput(format!("J = {j:?} must be a nonempty subset of 0..{tt}")));
    }
    let is: Vec<usize> = (0..tt).filter(|k| !js.contains(k)).collect();
    let strand = t.select(|_, b| is.iter().all(|&i| -b[i] == c[i]));
    let shift: i64 = is.iter().map(|&i| c[i]).sum();
    let jv: Vec<usize> = js.iter().copied().collect();
    let sub = RingSpec::new(jv.iter().map(|&k| spec.n[k]).collect(), spec.p)?;
    let big = Ring::new(spec.clone())?;
    let small = Ring::new(sub.clone())?;
    let restrict = |b: &Multidegree| Multidegree(jv.iter().map(|&k| b[k]).collect());
    // bit position of each variable of the big ring inside the small ring
    let mut remap = vec![None; big.nvars()];
    for (kk, &k) in jv.iter().enumerate() {
        for jj in 0..=spec.n[k] {
            remap[big.var(k, jj)] = Some(small.var(kk, jj));
        }
    }
    let mut out = FreeEComplex::new(sub);
    for (&d, m) in &strand.terms {
        out.terms.insert(d - shift, FreeEModule::new(m.twists.iter().map(restrict).collect()));
    }
    for (&d, m) in &strand.diffs {
        let mut nm = EMatrix::zero(out.term(d - shift), out.term(d - shift + 1));
        for (r, col, e) in m.entries() {
            let mut terms = Vec::new();
            for &(mask, coef) in e.terms() {
                let mut nmask = 0u32;
                for (v, slot) in remap.iter().enumerate() {
                    if mask >> v & 1 == 1 {
                        let Some(w) = *slot else {
                            return Err(TateError::BadInput("strand entry involves a variable outside J".into()));
                        };
                        nmask |= 1 << w;
                    }
                }
                terms.push((nmask, coef));
            }
            nm.set(r, col, ExteriorElement::from_terms(terms, small.fp()));
        }
        out.diffs.insert(d - shift, nm);
    }
    out.window = (strand.window.0 - shift, strand.window.1 - shift);
    out.prune();
    Ok(out)
}

/// The complex `A` of summands with `a_i < c_i` for `i < k` and
/// `a_i ≥ c_i` for `i ≥ k`, i.e. `R_k`.  `R_0 = T_{≥c}`, `R_t = T_{<c}`.
fn staircase_index(t: &FreeEComplex, c: &Multidegree, k: usize) -> BTreeMap<i64, Vec<usize>> {
    let mut out = BTreeMap::new();
    for (&d, m) in &t.terms {
        let ks: Vec<usize> = (0..m.rank())
            .filter(|&s| {
                let a = -&m.twists[s];
                (0..c.len()).all(|i| if i < k { a[i] < c[i] } else { a[i] >= c[i] })
            })
            .collect();
        if !ks.is_empty() {
            out.insert(d, ks);
        }
    }
    out
}

/// Corner complex at `c` of a window: the cone of
/// `φ_c: T_{<c}[-t] → T_{≥c}`, where `φ_c = δ_1 ∘ … ∘ δ_t` and `δ_k` is
/// the component of the differential from `a_k < c_k` to `a_k ≥ c_k`.
/// The source uses the differential of `T` times `(-1)^t` so that `φ_c`
/// commutes with it.  `T_{<c}` sits in positions `d + t - 1` of the
/// result.
///
/// Only the positions where every term of `T` feeding the composite lies
/// in the window are meaningful; `certified_range` reports them.
pub fn corner(ring: &Ring, t: &FreeEComplex, c: &Multidegree) -> Result<FreeEComplex> {
    let spec = ring.spec();
    spec.check(c)?;
    let tt = spec.t();
    let fp = ring.fp();
    let stairs: Vec<BTreeMap<i64, Vec<usize>>> = (0..=tt).map(|k| staircase_index(t, c, k)).collect();
    let sub = |k: usize, d: i64| -> FreeEModule {
        match stairs[k].get(&d) {
            Some(ks) => FreeEModule::new(ks.iter().map(|&s| t.terms[&d].twists[s].clone()).collect()),
            None => FreeEModule::empty(),
        }
    };
    // δ_k: R_k^d → R_{k-1}^{d+1}
    let delta = |k: usize, d: i64| -> EMatrix {
        let src = stairs[k].get(&d).cloned().unwrap_or_default();
        let tgt = stairs[k - 1].get(&(d + 1)).cloned().unwrap_or_default();
        match t.diffs.get(&d) {
            Some(m) if !src.is_empty() && !tgt.is_empty() => m.submatrix(&tgt, &src),
            _ => EMatrix::zero(sub(k, d), sub(k - 1, d + 1)),
        }
    };
    let upper = t.select(|_, b| (-b).ge(c));
    let lower = t.select(|_, b| (-b).lt_all(c));
    let sign_t = tt % 2 == 1;
    let mut shifted = twist_and_shift(&lower, &spec.zero(), -(tt as i64));
    if sign_t {
        for m in shifted.diffs.values_mut() {
            *m = m.neg(fp);
        }
    }
    let mut maps = BTreeMap::new();
    for &d in lower.terms.keys() {
        let mut phi = delta(tt, d);
        for k in (1..tt).rev() {
            phi = delta(k, d + (tt - k) as i64).compose(&phi, fp);
        }
        if !phi.is_zero() {
            maps.insert(d + tt as i64, phi);
        }
    }
    let chain = ChainMap { source: shifted, target: upper, maps };
    let mut out = cone(ring, &chain)?;
    out.window = (t.window.0 + tt as i64 - 1, t.window.1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tate::{tate_window_module, WindowOptions};

    fn p1p1_o() -> (Ring, FreeEComplex) {
        let spec = RingSpec::product(&[1, 1]);
        let ring = Ring::new(spec.clone()).unwrap();
        let m = crate::catalog::structure_sheaf(&spec);
        let w =
            tate_window_module(&m, &Multidegree::from([-3, -3]), &Multidegree::from([3, 3]), &WindowOptions::default()).unwrap();
        (ring, w.complex)
    }

    #[test]
    fn empty_region_spec_is_everything() {
        let (_, t) = p1p1_o();
        let r = region(&t, &RegionSpec::new(Multidegree::from([0, 0]), &[], &[], &[]).unwrap()).unwrap();
        assert_eq!(r.betti(), t.betti());
    }

    #[test]
    fn overlapping_index_sets_are_rejected() {
        assert!(RegionSpec::new(Multidegree::from([0, 0]), &[0], &[0], &[]).is_err());
        assert!(RegionSpec::new(Multidegree::from([0, 0]), &[], &[2], &[]).is_err());
    }

    #[test]
    fn beilinson_window_of_structure_sheaf() {
        let (_, t) = p1p1_o();
        let bw = beilinson_window(&t);
        assert_eq!(bw.terms.len(), 1);
        assert_eq!(bw.term(0).twists, vec![Multidegree::from([0, 0])]);
    }

    #[test]
    fn amplitude_of_sheaf_window() {
        let (_, t) = p1p1_o();
        assert_eq!(amplitude(&t), Some((0, 2)));
        assert_eq!(amplitude(&twist_and_shift(&t, &Multidegree::from([0, 0]), 1)), Some((-1, 1)));
        assert_eq!(amplitude(&FreeEComplex::new(RingSpec::product(&[1]))), None);
    }
}
