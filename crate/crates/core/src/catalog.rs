//! Small ready-made inputs used by the command line, the demo and tests.

use crate::bgg::presentation_from_image;
use crate::complexes::{EMatrix, FreeEModule};
use crate::error::Result;
use crate::multigraded::{ExteriorElement, Multidegree, Ring, RingSpec};
use crate::smodule::{line_bundle_sum, monomial_quotient, var_index, SPresentation};

/// The Cox ring itself, whose sheaf is the structure sheaf.
pub fn structure_sheaf(spec: &RingSpec) -> SPresentation {
    line_bundle_sum(spec, &[spec.zero()])
}

/// `S / (x_{i,1}, …, x_{i,n_i})_i`, the coordinate point where only
/// `x_{i,0}` survives in each factor.
pub fn point_module(spec: &RingSpec) -> SPresentation {
    let mut gens = Vec::new();
    for (i, &k) in spec.n.iter().enumerate() {
        for j in 1..=k {
            let mut e = vec![0u32; spec.nvars()];
            e[var_index(spec, i, j)] = 1;
            gens.push(e);
        }
    }
    monomial_quotient(spec, &gens)
}

/// On `P¹ × P¹`: the map `ω_E → ω_E(-2,0) ⊕ ω_E(-1,-1)^4 ⊕ ω_E(0,-2)`
/// given by all six products of two distinct variables, ordered
/// `e0e1, e0f0, e1f0, e0f1, e1f1, f0f1`.
pub fn rank_three_bundle_matrix(ring: &Ring) -> EMatrix {
    let pairs: [((usize, usize), (usize, usize)); 6] =
        [((0, 0), (0, 1)), ((0, 0), (1, 0)), ((0, 1), (1, 0)), ((0, 0), (1, 1)), ((0, 1), (1, 1)), ((1, 0), (1, 1))];
    let mut target = Vec::new();
    let mut m = EMatrix::zero(FreeEModule::new(vec![Multidegree::from([0, 0])]), FreeEModule::empty());
    for (u, v) in pairs {
        let tw = Multidegree::from([-((u.0 == 0) as i64) - ((v.0 == 0) as i64), -((u.0 == 1) as i64) - ((v.0 == 1) as i64)]);
        target.push(tw.clone());
        let e = ExteriorElement::var(ring, u.0, u.1).mul(&ExteriorElement::var(ring, v.0, v.1), ring.fp());
        m.push_row(tw, vec![(0, e)]);
    }
    m
}

/// The module of twisted global sections of the rank three bundle whose
/// Tate resolution contains [`rank_three_bundle_matrix`].
pub fn rank_three_bundle_module() -> Result<SPresentation> {
    let ring = Ring::new(RingSpec::product(&[1, 1]))?;
    presentation_from_image(&ring, &rank_three_bundle_matrix(&ring))
}

/// On `P³`: `ω_E(1) → ω_E(-1)^6` given by the six quadratic monomials.
pub fn p3_quadrics_matrix(ring: &Ring) -> EMatrix {
    let mut m = EMatrix::zero(FreeEModule::new(vec![Multidegree::from([1])]), FreeEModule::empty());
    for a in 0..4 {
        for b in (a + 1)..4 {
            let e = ExteriorElement::var(ring, 0, a).mul(&ExteriorElement::var(ring, 0, b), ring.fp());
            m.push_row(Multidegree::from([-1]), vec![(0, e)]);
        }
    }
    m
}
