//! Choosing a truncation degree `c` for which `M_{≥c}` is a good model of
//! the sheaf, with checks made after the fact.

use crate::bgg::{r_of_pieces, EModulePresentation, Piece};
use crate::error::{Result, TateError};
use crate::linalg::MatrixFp;
use crate::multigraded::{box_points, Multidegree, Ring};
use crate::smodule::{SModule, SPresentation};
use std::collections::BTreeMap;

/// Result of the three validators at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub c: Multidegree,
    /// `M_c ≠ 0`.
    pub nonzero: bool,
    /// No element of `M_a` is killed by every variable, for `a` in the
    /// checked box.
    pub socle_free: bool,
    /// `M_{≥c}` is generated by `M_c`.
    pub generated: bool,
    /// The cycles at the start of `R(M_{≥c})` live in degrees `[c, c+n]`.
    pub cycles_boxed: bool,
    /// `R(M_{≥c})` is exact past its first term on the checked degrees.
    pub linear: bool,
}

impl PositivityReport {
    pub fn accepted(&self) -> bool {
        self.nonzero && self.generated && self.socle_free && self.cycles_boxed && self.linear
    }
}

/// Runs the validators for `c` on the degrees from `c` up to `n + 1 + 1^t`
/// past the generators and relations.
pub fn check_sufficiently_positive(m: &SPresentation, c: &Multidegree) -> Result<PositivityReport> {
    m.validate()?;
    m.ring.check(c)?;
    let ring = Ring::new(m.ring.clone())?;
    let spec = ring.spec();
    let sm = SModule::new(m);
    let mut rep = PositivityReport {
        c: c.clone(),
        nonzero: sm.dim(c) > 0,
        generated: true,
        socle_free: true,
        cycles_boxed: true,
        linear: true,
    };
    if !rep.nonzero {
        rep.generated = false;
        rep.socle_free = false;
        rep.cycles_boxed = false;
        rep.linear = false;
        return Ok(rep);
    }
    // The box reaches past every generator and relation so that a
    // generator or syzygy of the truncation outside degree `c` shows up as
    // homology.
    let mut top = c.clone();
    for g in &m.generators {
        top = top.join(g);
    }
    for r in &m.relations {
        if let Some(d) = m.relation_degree(r)? {
            top = top.join(&d);
        }
    }
    let hi = &(&top + &spec.top_deg()) + &spec.ones();
    if !generated_in(&sm, c, &c.join(&top)) {
        rep.generated = false;
        return Ok(rep);
    }
    for a in box_points(c, &hi) {
        if sm.socle_dim(&a) > 0 {
            rep.socle_free = false;
            return Ok(rep);
        }
    }
    let mut mods = BTreeMap::new();
    mods.insert(0, sm);
    let pieces: Vec<Piece> = box_points(c, &hi).into_iter().map(|a| Piece { p: 0, a }).collect();
    let r = r_of_pieces(&ring, &mods, &BTreeMap::new(), &pieces);
    let first = c.total();
    let cn = c + &spec.n_deg();
    for x in box_points(c, &hi) {
        for (d, h) in r.slice_homology(&ring, &x) {
            if h == 0 {
                continue;
            }
            if d == first {
                if !x.le(&cn) {
                    rep.cycles_boxed = false;
                }
            } else {
                rep.linear = false;
            }
        }
    }
    Ok(rep)
}

/// Every `M_a` with `c < a ≤ top` is spanned by the products of
/// variables with the pieces just below it.
fn generated_in(sm: &SModule, c: &Multidegree, top: &Multidegree) -> bool {
    let spec = sm.spec();
    box_points(c, top).iter().filter(|&a| a != c).all(|a| {
        let d = sm.dim(a);
        if d == 0 {
            return true;
        }
        let mut image: Option<MatrixFp> = None;
        for i in (0..spec.t()).filter(|&i| a[i] > c[i]) {
            let below = a - &spec.unit(i);
            for j in 0..=spec.n[i] {
                let m = sm.mult(&below, i, j);
                image = Some(match image {
                    None => (*m).clone(),
                    Some(x) => x.hcat(&m),
                });
            }
        }
        image.is_some_and(|m| m.rank() == d)
    })
}

/// `M_{≥c} = 0`.  The truncation is generated in degrees between `c` and
/// `c ∨ gmax`, so it is enough to look there.
pub fn truncation_vanishes(m: &SPresentation, c: &Multidegree) -> bool {
    let Some(gmax) = m.generators.iter().cloned().reduce(|a, b| a.join(&b)) else {
        return true;
    };
    let sm = SModule::new(m);
    box_points(c, &c.join(&gmax)).iter().all(|a| sm.dim(a) == 0)
}

/// Smallest `c` (by total degree, then lexicographically) above the
/// componentwise minimum of the generator degrees that passes every
/// validator, searching up to `cap` beyond the largest generator degree.
pub fn sufficiently_positive_with_cap(m: &SPresentation, cap: i64) -> Result<Multidegree> {
    m.validate()?;
    let spec = &m.ring;
    if m.generators.is_empty() {
        return Err(TateError::NotSufficientlyPositive("the module has no generators".into()));
    }
    let t = spec.t();
    let gmin = Multidegree((0..t).map(|i| m.generators.iter().map(|g| g[i]).min().unwrap()).collect());
    let gmax = Multidegree((0..t).map(|i| m.generators.iter().map(|g| g[i]).max().unwrap()).collect());
    let top = &gmax + &Multidegree::splat(t, cap);
    let mut cands = box_points(&gmin, &top);
    cands.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
    let mut tried = Vec::new();
    for c in cands {
        let rep = check_sufficiently_positive(m, &c)?;
        if rep.accepted() {
            return Ok(c);
        }
        if tried.len() < 6 {
            tried.push(format!("{c}: {rep:?}"));
        }
    }
    Err(TateError::NotSufficientlyPositive(format!("no degree in [{gmin}, {top}] passed; first failures: {}", tried.join("; "))))
}

pub fn sufficiently_positive(m: &SPresentation) -> Result<Multidegree> {
    sufficiently_positive_with_cap(m, m.ring.n_total() + 3)
}

/// `P = ker(ω_E ⊗ M_c → ⊕_i ω_E ⊗ M_{c+1_i})`, the cycles at the start of
/// `R(M_{≥c})`.
pub fn cycles_p(m: &SPresentation, c: &Multidegree) -> Result<EModulePresentation> {
    let rep = check_sufficiently_positive(m, c)?;
    if !rep.accepted() {
        return Err(TateError::NotSufficientlyPositive(format!("{c} fails: {rep:?}")));
    }
    let ring = Ring::new(m.ring.clone())?;
    Ok(EModulePresentation::Kernel(first_r_differential(&ring, m, c)))
}

/// The differential `R(M_{≥c})^{|c|} → R(M_{≥c})^{|c|+1}`.
pub fn first_r_differential(ring: &Ring, m: &SPresentation, c: &Multidegree) -> crate::complexes::EMatrix {
    let spec = ring.spec();
    let mut mods = BTreeMap::new();
    mods.insert(0, SModule::new(m));
    let mut pieces = vec![Piece { p: 0, a: c.clone() }];
    for i in 0..spec.t() {
        pieces.push(Piece { p: 0, a: c + &spec.unit(i) });
    }
    let r = r_of_pieces(ring, &mods, &BTreeMap::new(), &pieces);
    r.diff(c.total())
}
