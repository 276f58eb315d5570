//! Reading structural information off cohomology tables: splitting into
//! line bundles, being a vector bundle, multigraded regularity.

use super::bw::cohomology_table_bw;
use super::positivity::sufficiently_positive;
use super::table::{CohomologyTable, HPoly};
use super::window::{tate_window_module, WindowOptions};
use crate::complexes::FreeEComplex;
use crate::error::{Result, TateError};
use crate::multigraded::{box_points, Multidegree, Ring, RingSpec};
use crate::resolutions::ExtendOptions;
use crate::smodule::{binomial, SModule, SPresentation};
use serde::Serialize;

/// `Σ_k h^k(O(c)) h^k`, by the Künneth formula.
pub fn line_bundle_poly(spec: &RingSpec, c: &Multidegree) -> HPoly {
    let mut k = 0i64;
    let mut dim = 1u64;
    for (i, &n) in spec.n.iter().enumerate() {
        let d = c[i];
        let n64 = n as i64;
        if d >= 0 {
            dim *= binomial((d + n64) as u64, n as u64);
        } else if d < -n64 {
            dim *= binomial((-d - 1) as u64, n as u64);
            k += n64;
        } else {
            return HPoly::new();
        }
    }
    HPoly::from([(k, dim)])
}

/// Table of `O(c)` on the box `[lo, hi]`.
pub fn line_bundle_table(spec: &RingSpec, c: &Multidegree, lo: &Multidegree, hi: &Multidegree) -> CohomologyTable {
    let entries = box_points(lo, hi).into_iter().map(|x| (x.clone(), line_bundle_poly(spec, &(c + &x)))).collect();
    CohomologyTable { entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SplitOutcome {
    /// Summands `O(c)^m`, largest `c` first.
    Split { summands: Vec<(Multidegree, usize)> },
    /// The table is not a sum of line-bundle tables, so the bundle does
    /// not split.
    NotSplit { reason: String },
    /// The table could not be decided by the ordered-chain criterion.
    Inconclusive { reason: String },
}

/// Greedy peeling: the unique minimal degree with `h^0 ≠ 0` names the
/// largest summand `O(c)`, its multiplicity is read off there, and its
/// table is subtracted.  The box must contain `-c` strictly inside its
/// lower boundary for every summand, and the window `U^{-1}` of the
/// remainder must vanish after twisting by `-c`.
pub fn detect_split(spec: &RingSpec, table: &CohomologyTable) -> Result<SplitOutcome> {
    let (lo, hi) = table.bounds().ok_or_else(|| TateError::BadInput("empty table".into()))?;
    spec.check(&lo)?;
    let expected = box_points(&lo, &hi).len();
    if table.entries.len() != expected {
        return Err(TateError::BadInput("table must cover a full box".into()));
    }
    let mut rest: std::collections::BTreeMap<Multidegree, HPoly> = table.entries.clone();
    let mut summands: Vec<(Multidegree, usize)> = Vec::new();
    loop {
        if rest.values().all(|p| p.is_empty()) {
            break;
        }
        let with_h0: Vec<&Multidegree> =
            rest.iter().filter(|(_, p)| p.get(&0).copied().unwrap_or(0) > 0).map(|(x, _)| x).collect();
        let minimal: Vec<&Multidegree> = with_h0.iter().copied().filter(|x| !with_h0.iter().any(|y| y != x && y.le(x))).collect();
        let x0 = match minimal.as_slice() {
            [] => {
                let x = rest.iter().find(|(_, p)| !p.is_empty()).map(|(x, _)| x.clone()).unwrap();
                return Ok(SplitOutcome::NotSplit {
                    reason: format!("remaining table has no global sections but is nonzero at {x}"),
                });
            }
            [x] => (*x).clone(),
            many => {
                return Ok(SplitOutcome::Inconclusive {
                    reason: format!("several minimal degrees with sections: {many:?}; no chain-ordered decomposition"),
                })
            }
        };
        if (0..spec.t()).any(|i| x0[i] == lo[i]) {
            return Ok(SplitOutcome::Inconclusive { reason: format!("first section at {x0} lies on the boundary of the box") });
        }
        let c = -&x0;
        let m = rest[&x0][&0] as usize;
        for (x, p) in rest.iter_mut() {
            let lb = line_bundle_poly(spec, &(&c + x));
            for (k, v) in lb {
                let have = p.get(&k).copied().unwrap_or(0);
                let need = v * m as u64;
                if have < need {
                    return Ok(SplitOutcome::NotSplit {
                        reason: format!("after removing O{c}^{m}, h^{k} at {x} would be negative"),
                    });
                }
                if have == need {
                    p.remove(&k);
                } else {
                    p.insert(k, have - need);
                }
            }
        }
        // U^{-1} of the remainder twisted by -c: H^p at x0 + a with
        // p + |a| = -1, -n ≤ a ≤ 0.
        let neg_n = -&spec.n_deg();
        for a in box_points(&neg_n, &spec.zero()) {
            let p = -1 - a.total();
            let x = &x0 + &a;
            match rest.get(&x) {
                None => {
                    return Ok(SplitOutcome::Inconclusive {
                        reason: format!("box does not contain {x}, needed for the splitting test"),
                    })
                }
                Some(poly) if poly.get(&p).copied().unwrap_or(0) > 0 => {
                    return Ok(SplitOutcome::Inconclusive { reason: format!("U^-1 of the remainder is nonzero: h^{p} at {x}") })
                }
                _ => {}
            }
        }
        if let Some((prev, _)) = summands.last() {
            if !prev.ge(&c) {
                return Ok(SplitOutcome::Inconclusive { reason: format!("summands {prev} and {c} are not ordered") });
            }
        }
        summands.push((c, m));
    }
    Ok(SplitOutcome::Split { summands })
}

fn line_points(a: &Multidegree, b: &Multidegree, from: i64, to: i64) -> Vec<Multidegree> {
    (from..=to).map(|s| a + &b.scale(s)).collect()
}

/// `ℍ^* F(a + b s) = ℍ^{|n|}` for `s ∈ [t0, t0 + |n|]` and `= ℍ^0` for
/// `s ∈ [t1 - |n|, t1]`, read from a table that covers those points.
pub fn detect_bundle_table(
    spec: &RingSpec,
    table: &CohomologyTable,
    a: &Multidegree,
    b: &Multidegree,
    t0: i64,
    t1: i64,
) -> Result<bool> {
    check_line(spec, a, b, t0, t1)?;
    let nn = spec.n_total();
    let only = |x: &Multidegree, k: i64| -> Result<bool> {
        let p = table.get(x).ok_or_else(|| TateError::WindowTooSmall(format!("table does not contain {x}")))?;
        Ok(p.keys().all(|&j| j == k))
    };
    for x in line_points(a, b, t0, t0 + nn) {
        if !only(&x, nn)? {
            return Ok(false);
        }
    }
    for x in line_points(a, b, t1 - nn, t1) {
        if !only(&x, 0)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_line(spec: &RingSpec, a: &Multidegree, b: &Multidegree, t0: i64, t1: i64) -> Result<()> {
    spec.check(a)?;
    spec.check(b)?;
    if !b.ge(&spec.ones()) {
        return Err(TateError::BadInput(format!("direction {b} must be positive")));
    }
    if t0 >= t1 {
        return Err(TateError::BadInput(format!("need t0 < t1, got {t0} ≥ {t1}")));
    }
    Ok(())
}

/// Box spanned by the two test segments of [`detect_bundle_table`].
pub fn bundle_test_box(a: &Multidegree, b: &Multidegree, t0: i64, t1: i64) -> (Multidegree, Multidegree) {
    (a + &b.scale(t0), a + &b.scale(t1))
}

/// The vector-bundle test with the table computed from a Beilinson window.
pub fn detect_bundle(
    ring: &Ring,
    bw: &FreeEComplex,
    a: &Multidegree,
    b: &Multidegree,
    t0: i64,
    t1: i64,
    opts: &ExtendOptions,
) -> Result<bool> {
    let spec = ring.spec();
    check_line(spec, a, b, t0, t1)?;
    let (lo, hi) = bundle_test_box(a, b, t0, t1);
    let lo = lo.meet(&(-&spec.top_deg()));
    let hi = hi.join(&spec.ones());
    let table = cohomology_table_bw(ring, bw, &lo, &hi, opts)?;
    detect_bundle_table(spec, &table, a, b, t0, t1)
}

/// Result of the regularity test together with the box it was checked on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub regular: bool,
    pub lo: Multidegree,
    pub hi: Multidegree,
    /// First failing condition, if any.
    pub failure: Option<String>,
}

/// Whether `b` lies in the multigraded regularity of `M`: `M_p ≅ H^0(F(p))`
/// for `p ≥ b`, and `H^k(F(p)) = 0` for `k ≥ 1` and `p ≥ b - λ` with
/// `λ ≥ 0`, `|λ| = k`.  Checked on the box from `b - |n|·1^t` up to a
/// sufficiently positive degree plus `n + 1^t`; beyond that box higher
/// cohomology vanishes in every direction that is large in all
/// coordinates.
pub fn regularity_report(m: &SPresentation, b: &Multidegree) -> Result<RegularityReport> {
    let spec = m.ring.clone();
    spec.check(b)?;
    let sp = sufficiently_positive(m)?;
    let nn = spec.n_total();
    let lo = b - &Multidegree::splat(spec.t(), nn);
    let hi = &sp.join(b) + &spec.top_deg();
    let sm = SModule::new(m);
    let gmin = m.generators.iter().fold(lo.clone(), |acc, g| acc.meet(g));
    for x in box_points(&gmin, &hi) {
        if sm.socle_dim(&x) > 0 {
            return Err(TateError::BadInput(format!(
                "the module has socle in degree {x}; its torsion is supported on the irrelevant ideal"
            )));
        }
    }
    let w = tate_window_module(m, &lo, &hi, &WindowOptions::default())?;
    let table = CohomologyTable::from_window(&w.complex, &lo, &hi);
    let mut report = RegularityReport { regular: true, lo: lo.clone(), hi: hi.clone(), failure: None };
    for (x, p) in &table.entries {
        if x.ge(b) {
            let h0 = p.get(&0).copied().unwrap_or(0) as usize;
            if sm.dim(x) != h0 {
                report.regular = false;
                report.failure = Some(format!("dim M_{x} = {} but h^0 = {h0}", sm.dim(x)));
                return Ok(report);
            }
        }
        for (&k, &v) in p {
            if k < 1 || v == 0 {
                continue;
            }
            // p ≥ b - λ for some λ ≥ 0 with |λ| = k, i.e. the shortfall
            // Σ max(b_i - x_i, 0) is at most k.
            let short: i64 = (0..spec.t()).map(|i| (b[i] - x[i]).max(0)).sum();
            if short <= k {
                report.regular = false;
                report.failure = Some(format!("h^{k} at {x} is {v}"));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

pub fn in_multigraded_regularity(m: &SPresentation, b: &Multidegree) -> Result<bool> {
    Ok(regularity_report(m, b)?.regular)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1p1() -> RingSpec {
        RingSpec::product(&[1, 1])
    }

    fn sum_table(spec: &RingSpec, parts: &[(Multidegree, u64)], lo: &Multidegree, hi: &Multidegree) -> CohomologyTable {
        let mut t = CohomologyTable::from_betti(&Default::default(), lo, hi);
        for (c, m) in parts {
            for _ in 0..*m {
                t = t.add(&line_bundle_table(spec, c, lo, hi));
            }
        }
        t
    }

    #[test]
    fn line_bundle_values() {
        let s = p1p1();
        assert_eq!(line_bundle_poly(&s, &Multidegree::from([2, 3])), HPoly::from([(0, 12)]));
        assert_eq!(line_bundle_poly(&s, &Multidegree::from([1, -2])), HPoly::from([(1, 2)]));
        assert_eq!(line_bundle_poly(&s, &Multidegree::from([-2, -2])), HPoly::from([(2, 1)]));
        assert!(line_bundle_poly(&s, &Multidegree::from([-1, 5])).is_empty());
    }

    #[test]
    fn split_sum_is_recovered() {
        let s = p1p1();
        let (lo, hi) = (Multidegree::from([-4, -4]), Multidegree::from([4, 4]));
        let t = sum_table(&s, &[(Multidegree::from([0, 0]), 1), (Multidegree::from([-1, 0]), 1)], &lo, &hi);
        assert_eq!(
            detect_split(&s, &t).unwrap(),
            SplitOutcome::Split { summands: vec![(Multidegree::from([0, 0]), 1), (Multidegree::from([-1, 0]), 1)] }
        );
        let t = sum_table(&s, &[(Multidegree::from([2, 1]), 3)], &lo, &hi);
        assert_eq!(detect_split(&s, &t).unwrap(), SplitOutcome::Split { summands: vec![(Multidegree::from([2, 1]), 3)] });
    }

    #[test]
    fn unordered_sum_is_inconclusive() {
        let s = p1p1();
        let (lo, hi) = (Multidegree::from([-4, -4]), Multidegree::from([4, 4]));
        let t = sum_table(&s, &[(Multidegree::from([1, 0]), 1), (Multidegree::from([0, 1]), 1)], &lo, &hi);
        assert!(matches!(detect_split(&s, &t).unwrap(), SplitOutcome::Inconclusive { .. }));
    }

    #[test]
    fn bundle_test_on_tables() {
        let s = p1p1();
        let (lo, hi) = (Multidegree::from([-5, -5]), Multidegree::from([5, 5]));
        let t = line_bundle_table(&s, &s.zero(), &lo, &hi);
        assert!(detect_bundle_table(&s, &t, &s.zero(), &s.ones(), -4, 4).unwrap());
        assert!(detect_bundle_table(&s, &t, &s.zero(), &s.ones(), -9, 4).is_err());
    }
}
