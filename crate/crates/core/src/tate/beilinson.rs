//! The functor `U`, which sends `ω_E(a)` to `U^a = ⊠_i Λ^{a_i} U_i` for
//! `0 ≤ a ≤ n` and to zero otherwise, with `E`-linear maps acting on
//! fibres by contraction.

use super::regions::beilinson_window;
use crate::complexes::{EMatrix, FreeEComplex, FreeEModule};
use crate::linalg::MatrixFp;
use crate::multigraded::{contract, Multidegree, Ring, RingSpec};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct BeilinsonComplex {
    pub ring: RingSpec,
    /// Per position, the exponent `a` of each summand `U^a`, in order.
    pub summands: BTreeMap<i64, Vec<Multidegree>>,
    /// `maps[d]` goes from position `d` to `d + 1`.
    pub maps: BTreeMap<i64, EMatrix>,
}

/// `U(T)`: the summands of `T` with twist in `[0, n]`.
pub fn apply_u(t: &FreeEComplex) -> BeilinsonComplex {
    let w = beilinson_window(t);
    BeilinsonComplex {
        ring: t.ring.clone(),
        summands: w.terms.iter().map(|(&d, m)| (d, m.twists.clone())).collect(),
        maps: w.diffs,
    }
}

impl BeilinsonComplex {
    /// Grouped terms: per position, each distinct `a` with its multiplicity.
    pub fn terms(&self) -> BTreeMap<i64, Vec<(Multidegree, usize)>> {
        self.summands
            .iter()
            .map(|(&d, v)| {
                let mut g: BTreeMap<Multidegree, usize> = BTreeMap::new();
                for a in v {
                    *g.entry(a.clone()).or_default() += 1;
                }
                (d, g.into_iter().collect())
            })
            .collect()
    }

    pub fn is_minimal(&self) -> bool {
        !self.maps.values().any(|m| m.has_unit_entry())
    }

    pub fn is_zero(&self) -> bool {
        self.summands.values().all(|v| v.is_empty())
    }

    /// Name of `U^a`.  With `rewrite`, factors with `n_i = 1` are written
    /// as line bundles, using `Λ^1 U_i = O(-1)`.
    pub fn label(&self, a: &Multidegree, rewrite: bool) -> String {
        label(&self.ring, a, rewrite)
    }

    /// `0 → … → ⊕ U^a → … → 0`, in the form `O^6(-1,-1)` for rewritten
    /// line bundles.  Within a term, larger `a` comes first.
    pub fn format(&self, rewrite: bool) -> String {
        let mut out = String::from("0");
        for v in self.terms().values() {
            let parts: Vec<String> = v
                .iter()
                .rev()
                .map(|(a, m)| {
                    let l = label(&self.ring, a, rewrite);
                    match (l.strip_prefix('O'), *m) {
                        (_, 1) => l,
                        (Some(rest), m) if rest.is_empty() || rest.starts_with('(') => format!("O^{m}{rest}"),
                        (_, m) => format!("({l})^{m}"),
                    }
                })
                .collect();
            let _ = write!(out, " → {}", parts.join(" ⊕ "));
        }
        out.push_str(" → 0");
        out
    }

    /// Matrix of `U(f)` on fibres, on the exterior-power bases of each
    /// summand.
    pub fn fiber_matrix(ring: &Ring, f: &EMatrix) -> MatrixFp {
        fiber_matrix(ring, f)
    }
}

fn label(spec: &RingSpec, a: &Multidegree, rewrite: bool) -> String {
    if !rewrite {
        return format!("U^{a}");
    }
    let mut line = vec![0i64; spec.t()];
    let mut other = Vec::new();
    for i in 0..spec.t() {
        match (spec.n[i], a[i]) {
            (_, 0) => {}
            (1, k) => line[i] = -k,
            (_, 1) if spec.t() == 1 => other.push("U".to_string()),
            (_, 1) => other.push(format!("U_{}", i + 1)),
            (_, k) if spec.t() == 1 => other.push(format!("Λ^{k}U")),
            (_, k) => other.push(format!("Λ^{k}U_{}", i + 1)),
        }
    }
    let has_line = line.iter().any(|&x| x != 0);
    let o = if has_line || other.is_empty() {
        if has_line {
            format!("O({})", line.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        } else {
            "O".to_string()
        }
    } else {
        String::new()
    };
    match (o.is_empty(), other.is_empty()) {
        (_, true) => o,
        (true, false) => other.join("⊗"),
        (false, false) => format!("{o}⊗{}", other.join("⊗")),
    }
}

fn fiber_basis(ring: &Ring, m: &FreeEModule) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(m.rank());
    let mut n = 0;
    for b in &m.twists {
        offsets.push(n);
        n += ring.monomials_with_counts(&b.0).len();
    }
    (offsets, n)
}

pub fn fiber_matrix(ring: &Ring, f: &EMatrix) -> MatrixFp {
    let fp = ring.fp();
    let (so, sn) = fiber_basis(ring, &f.source);
    let (to, tn) = fiber_basis(ring, &f.target);
    let mut out = MatrixFp::zeros(tn, sn, fp);
    for (k, l, e) in f.entries() {
        for (wi, &w) in ring.monomials_with_counts(&f.source.twists[l].0).iter().enumerate() {
            for (r, c) in contract(e, w, fp) {
                if ring.mask_counts(r) != f.target.twists[k].0 {
                    continue;
                }
                let row = to[k] + ring.index_of(r);
                let col = so[l] + wi;
                out.add_to(row, col, c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraded::ExteriorElement;

    #[test]
    fn labels() {
        let s = RingSpec::product(&[1, 1]);
        assert_eq!(label(&s, &Multidegree::from([1, 1]), true), "O(-1,-1)");
        assert_eq!(label(&s, &Multidegree::from([0, 0]), true), "O");
        assert_eq!(label(&s, &Multidegree::from([1, 0]), false), "U^(1,0)");
        let s = RingSpec::product(&[1, 2]);
        assert_eq!(label(&s, &Multidegree::from([1, 2]), true), "O(-1,0)⊗Λ^2U_2");
        let s = RingSpec::product(&[3]);
        assert_eq!(label(&s, &Multidegree::from([1]), true), "U");
    }

    #[test]
    fn twist_outside_window_maps_to_zero() {
        let spec = RingSpec::product(&[1, 1]);
        let t = FreeEComplex::single(spec, 0, FreeEModule::new(vec![Multidegree::from([2, 0])]));
        assert!(apply_u(&t).is_zero());
    }

    #[test]
    fn contraction_by_a_variable_on_p1() {
        // e_0: ω_E(1) → ω_E(0) sends the fibre Λ^1 W = ⟨w0, w1⟩ to Λ^0 W,
        // w0 ↦ 1 and w1 ↦ 0.
        let ring = Ring::new(RingSpec::product(&[1])).unwrap();
        let mut f = EMatrix::zero(FreeEModule::new(vec![Multidegree::from([1])]), FreeEModule::new(vec![Multidegree::from([0])]));
        f.set(0, 0, ExteriorElement::var(&ring, 0, 0));
        let m = fiber_matrix(&ring, &f);
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!((m.get(0, 0), m.get(0, 1)), (1, 0));
    }
}
