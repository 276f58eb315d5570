//! The functors `R` and `L`, finitely generated `E`-modules given by
//! presentations, duality and the reciprocity check.

use crate::complexes::{slice_with, EMatrix, FreeEComplex, FreeEModule, ModuleIndex, SliceBasis};
use crate::error::{Result, TateError};
use crate::linalg::{MatrixFp, RowSpace};
use crate::multigraded::{box_points, mono_mul, ExteriorElement, Multidegree, Ring, RingSpec};
use crate::smodule::{s_monomials, var_index, Polynomial, SComplex, SModule, SPresentation, SRelation};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Column of an `E`-matrix under construction: `(row, [(monomial, coefficient)])`.
type SparseColumn = Vec<(usize, Vec<(u32, u32)>)>;

/// `(row, col, block, var, coeff)`: the entry `coeff · x_{block,var}`.
pub type LinearEntry = (usize, usize, usize, usize, u32);

/// One graded piece `M^p_a` placed in a total complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    pub p: i64,
    pub a: Multidegree,
}

/// Total complex of `R` applied to the chosen pieces of a complex of
/// modules.  The piece `M^p_a` contributes `M^p_a ⊗ ω_E(-a)` in position
/// `p + |a|`; its differential is `(-1)^p` times the Koszul part plus the
/// map induced by `M^p → M^{p+1}`.
pub fn r_of_pieces(
    ring: &Ring,
    mods: &BTreeMap<i64, SModule>,
    maps: &BTreeMap<i64, crate::smodule::SMap>,
    pieces: &[Piece],
) -> FreeEComplex {
    let spec = ring.spec();
    let fp = ring.fp();
    let mut sorted: Vec<Piece> = pieces.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = FreeEComplex::new(spec.clone());
    let mut place: HashMap<Piece, (i64, usize, usize)> = HashMap::new();
    for pc in &sorted {
        let Some(m) = mods.get(&pc.p) else { continue };
        let dim = m.dim(&pc.a);
        if dim == 0 {
            continue;
        }
        let pos = pc.p + pc.a.total();
        let term = out.terms.entry(pos).or_default();
        place.insert(pc.clone(), (pos, term.rank(), dim));
        for _ in 0..dim {
            term.twists.push(-&pc.a);
        }
    }
    let positions: Vec<i64> = out.terms.keys().copied().collect();
    for &pos in &positions {
        if !out.terms.contains_key(&(pos + 1)) {
            continue;
        }
        let mut d = EMatrix::zero(out.term(pos), out.term(pos + 1));
        for pc in &sorted {
            let Some(&(ps, off, dim)) = place.get(pc) else { continue };
            if ps != pos {
                continue;
            }
            let mut cols: Vec<SparseColumn> = vec![Vec::new(); dim];
            let sign_neg = pc.p.rem_euclid(2) == 1;
            for i in 0..spec.t() {
                let tgt = Piece { p: pc.p, a: &pc.a + &spec.unit(i) };
                let Some(&(_, toff, tdim)) = place.get(&tgt) else { continue };
                let m = &mods[&pc.p];
                for j in 0..=spec.n[i] {
                    let x = m.mult(&pc.a, i, j);
                    let mask = 1u32 << ring.var(i, j);
                    for (l, col) in cols.iter_mut().enumerate() {
                        for k in 0..tdim {
                            let mut c = x.get(k, l);
                            if c == 0 {
                                continue;
                            }
                            if sign_neg {
                                c = fp.neg(c);
                            }
                            col.push((toff + k, vec![(mask, c)]));
                        }
                    }
                }
            }
            let vt = Piece { p: pc.p + 1, a: pc.a.clone() };
            if let (Some(&(_, toff, _)), Some(f)) = (place.get(&vt), maps.get(&pc.p)) {
                let mat = f.graded_matrix(&mods[&pc.p], &mods[&(pc.p + 1)], &pc.a);
                for (l, col) in cols.iter_mut().enumerate() {
                    for k in 0..mat.rows() {
                        let c = mat.get(k, l);
                        if c != 0 {
                            col.push((toff + k, vec![(0, c)]));
                        }
                    }
                }
            }
            for (l, col) in cols.into_iter().enumerate() {
                let mut merged: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
                for (r, terms) in col {
                    merged.entry(r).or_default().extend(terms);
                }
                for (r, terms) in merged {
                    d.set(r, off + l, ExteriorElement::from_terms(terms, fp));
                }
            }
        }
        out.diffs.insert(pos, d);
    }
    let lo = positions.first().copied().unwrap_or(0);
    let hi = positions.last().copied().unwrap_or(0);
    out.window = (lo, hi);
    out
}

/// `R(M)` restricted to the degrees `a` of the box `[lo, hi]`.
pub fn r_window(m: &SPresentation, lo: &Multidegree, hi: &Multidegree) -> Result<FreeEComplex> {
    m.validate()?;
    m.ring.check(lo)?;
    m.ring.check(hi)?;
    let ring = Ring::new(m.ring.clone())?;
    let mut mods = BTreeMap::new();
    mods.insert(0, SModule::new(m));
    let pieces: Vec<Piece> = box_points(lo, hi).into_iter().map(|a| Piece { p: 0, a }).collect();
    Ok(r_of_pieces(&ring, &mods, &BTreeMap::new(), &pieces))
}

/// Total complex of `R(M^•_{≥c})` in positions `≤ kmax`.
pub fn total_r_truncated(ring: &Ring, mc: &SComplex, c: &Multidegree, kmax: i64) -> FreeEComplex {
    let mods: BTreeMap<i64, SModule> = mc.modules.iter().map(|(p, m)| (*p, SModule::new(m))).collect();
    let mut pieces = Vec::new();
    for &p in mc.modules.keys() {
        let extra = kmax - p - c.total();
        for a in degrees_above_with_excess(c, extra) {
            pieces.push(Piece { p, a });
        }
    }
    r_of_pieces(ring, &mods, &mc.maps, &pieces)
}

/// All `a ≥ c` with `|a| - |c| ≤ extra`.
pub fn degrees_above_with_excess(c: &Multidegree, extra: i64) -> Vec<Multidegree> {
    if extra < 0 {
        return Vec::new();
    }
    let hi = c + &Multidegree::splat(c.len(), extra);
    box_points(c, &hi).into_iter().filter(|a| a.total() - c.total() <= extra).collect()
}

// ---------------------------------------------------------------------------
// E-modules

/// A finitely generated graded `E`-module as a subquotient of a free one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EModulePresentation {
    /// `coker(f)`.
    Coker(EMatrix),
    /// `im(f)` inside the target of `f`.
    Image(EMatrix),
    /// `ker(f)` inside the source of `f`.
    Kernel(EMatrix),
}

impl EModulePresentation {
    /// The free module containing the subquotient.
    pub fn ambient(&self) -> &FreeEModule {
        match self {
            EModulePresentation::Coker(f) | EModulePresentation::Image(f) => &f.target,
            EModulePresentation::Kernel(f) => &f.source,
        }
    }

    /// Degrees where the ambient module is nonzero.
    pub fn ambient_support(&self, ring: &Ring) -> Vec<Multidegree> {
        module_support(ring, self.ambient())
    }
}

pub fn module_support(ring: &Ring, m: &FreeEModule) -> Vec<Multidegree> {
    let top = ring.spec().top_deg();
    let mut set = BTreeSet::new();
    let twists: BTreeSet<&Multidegree> = m.twists.iter().collect();
    for b in twists {
        let socle = -b;
        for x in box_points(&socle, &(&socle + &top)) {
            set.insert(x);
        }
    }
    set.into_iter().collect()
}

/// `Hom_K(P, K)` with degrees negated.
pub fn e_dual(ring: &Ring, p: &EModulePresentation) -> EModulePresentation {
    match p {
        EModulePresentation::Coker(f) => EModulePresentation::Kernel(f.dual(ring)),
        EModulePresentation::Image(f) => EModulePresentation::Image(f.dual(ring)),
        EModulePresentation::Kernel(f) => EModulePresentation::Coker(f.dual(ring)),
    }
}

/// The degree-`x` part of a subquotient: a basis of `U_x / Q_x` inside the
/// ambient slice and a matrix reading off coordinates of elements of `U_x`.
#[derive(Clone, Debug)]
pub struct EPiece {
    pub ambient: SliceBasis,
    pub basis: Vec<Vec<u32>>,
    coords: MatrixFp,
    quotient_dim: usize,
}

impl EPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an ambient vector lying in `U_x`.
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        let all = self.coords.mul_vec(v);
        all[self.quotient_dim..].to_vec()
    }
}

/// Graded pieces and the right action of the variables for a presented
/// `E`-module, on a set of degrees.
pub struct EModuleSlices {
    pub pieces: BTreeMap<Multidegree, EPiece>,
}

fn columns_of(m: &MatrixFp) -> Vec<Vec<u32>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

fn independent(vs: Vec<Vec<u32>>, n: usize, ring: &Ring) -> Vec<Vec<u32>> {
    let mut rs = RowSpace::new(n, ring.fp());
    vs.into_iter().filter(|v| rs.insert(v)).collect()
}

impl EModuleSlices {
    pub fn new(ring: &Ring, p: &EModulePresentation, degrees: &[Multidegree]) -> Self {
        let amb = p.ambient();
        let idx = ModuleIndex::new(ring, amb);
        let fp = ring.fp();
        let mut pieces = BTreeMap::new();
        for x in degrees {
            let basis_x = idx.basis_at(ring, x);
            let n = basis_x.dim;
            let (q, u): (Vec<Vec<u32>>, Vec<Vec<u32>>) = match p {
                EModulePresentation::Coker(f) => {
                    let src = ModuleIndex::new(ring, &f.source).basis_at(ring, x);
                    let im = slice_with(ring, f, &src, &basis_x);
                    let ident: Vec<Vec<u32>> = columns_of(&MatrixFp::identity(n, fp));
                    (columns_of(&im), ident)
                }
                EModulePresentation::Image(f) => {
                    let src = ModuleIndex::new(ring, &f.source).basis_at(ring, x);
                    (Vec::new(), columns_of(&slice_with(ring, f, &src, &basis_x)))
                }
                EModulePresentation::Kernel(f) => {
                    let tgt = ModuleIndex::new(ring, &f.target).basis_at(ring, x);
                    (Vec::new(), columns_of(&slice_with(ring, f, &basis_x, &tgt).kernel_basis()))
                }
            };
            let q = independent(q, n, ring);
            let mut rs = RowSpace::new(n, fp);
            for v in &q {
                rs.insert(v);
            }
            let basis: Vec<Vec<u32>> = u.into_iter().filter(|v| rs.insert(v)).collect();
            let mut stacked = q.clone();
            stacked.extend(basis.iter().cloned());
            let coords = if stacked.is_empty() {
                MatrixFp::zeros(0, n, fp)
            } else {
                MatrixFp::from_columns(&stacked, n, fp).left_inverse().expect("independent columns")
            };
            pieces.insert(x.clone(), EPiece { ambient: basis_x, basis, coords, quotient_dim: q.len() });
        }
        EModuleSlices { pieces }
    }

    pub fn dim(&self, x: &Multidegree) -> usize {
        self.pieces.get(x).map(|p| p.dim()).unwrap_or(0)
    }

    /// Matrix of right multiplication by `e_{i,j}` from degree `x` to
    /// `x - 1_i`, in the chosen bases.
    pub fn action(&self, ring: &Ring, x: &Multidegree, i: usize, j: usize) -> MatrixFp {
        let fp = ring.fp();
        let y = x - &ring.spec().unit(i);
        let (Some(px), Some(py)) = (self.pieces.get(x), self.pieces.get(&y)) else {
            let r = self.dim(&y);
            return MatrixFp::zeros(r, self.dim(x), fp);
        };
        let e = 1u32 << ring.var(i, j);
        let rank = px.ambient.parts.iter().chain(&py.ambient.parts).map(|p| p.summand + 1).max().unwrap_or(0);
        let look = py.ambient.lookup(rank);
        let mut out = MatrixFp::zeros(py.dim(), px.dim(), fp);
        for (col, v) in px.basis.iter().enumerate() {
            let mut w = vec![0u32; py.ambient.dim];
            for part in &px.ambient.parts {
                let Some(tp) = look[part.summand] else { continue };
                for (idx, &m) in ring.monomials_by_code(part.code).iter().enumerate() {
                    let c = v[part.offset + idx];
                    if c == 0 {
                        continue;
                    }
                    if let Some((mm, neg)) = mono_mul(m, e) {
                        let r = tp.offset + ring.index_of(mm);
                        w[r] = fp.add(w[r], if neg { fp.neg(c) } else { c });
                    }
                }
            }
            for (row, c) in py.coordinates(&w).into_iter().enumerate() {
                out.set(row, col, c);
            }
        }
        out
    }
}

/// Hilbert function of a presented `E`-module on its support.
pub fn e_hilbert_function(ring: &Ring, p: &EModulePresentation) -> BTreeMap<Multidegree, usize> {
    let degs = p.ambient_support(ring);
    let sl = EModuleSlices::new(ring, p, &degs);
    sl.pieces.iter().filter(|(_, v)| v.dim() > 0).map(|(k, v)| (k.clone(), v.dim())).collect()
}

// ---------------------------------------------------------------------------
// L

/// Linear complex of free `S`-modules.  Term `d` is a list of generator
/// degrees `a` with `|a| = -d`, one per copy of `S(-a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSComplex {
    pub ring: Option<RingSpec>,
    pub terms: BTreeMap<i64, Vec<Multidegree>>,
    /// `diffs[d]: L^d → L^{d+1}` as entries `(row, col, block, var, coeff)`.
    pub diffs: BTreeMap<i64, Vec<LinearEntry>>,
}

impl LinearSComplex {
    /// `d ↦ a ↦ multiplicity`.
    pub fn multiplicities(&self) -> BTreeMap<i64, BTreeMap<Multidegree, usize>> {
        self.terms
            .iter()
            .map(|(d, v)| {
                let mut m = BTreeMap::new();
                for a in v {
                    *m.entry(a.clone()).or_insert(0) += 1;
                }
                (*d, m)
            })
            .collect()
    }

    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.terms.iter().map(|(d, v)| (*d, v.len())).collect()
    }
}

/// `L(P)` on the degrees of `P` inside the box.
pub fn l_of(ring: &Ring, p: &EModulePresentation, lo: &Multidegree, hi: &Multidegree) -> LinearSComplex {
    let degs: Vec<Multidegree> = box_points(lo, hi);
    let sl = EModuleSlices::new(ring, p, &degs);
    let mut out = LinearSComplex { ring: Some(ring.spec().clone()), ..Default::default() };
    let mut offset: HashMap<Multidegree, usize> = HashMap::new();
    for x in &degs {
        let dim = sl.dim(x);
        if dim == 0 {
            continue;
        }
        let term = out.terms.entry(-x.total()).or_default();
        offset.insert(x.clone(), term.len());
        term.extend(std::iter::repeat_n(x.clone(), dim));
    }
    let spec = ring.spec();
    for x in &degs {
        let Some(&off) = offset.get(x) else { continue };
        let d = -x.total();
        for i in 0..spec.t() {
            let y = x - &spec.unit(i);
            let Some(&toff) = offset.get(&y) else { continue };
            for j in 0..=spec.n[i] {
                let act = sl.action(ring, x, i, j);
                for col in 0..act.cols() {
                    for row in 0..act.rows() {
                        let c = act.get(row, col);
                        if c != 0 {
                            out.diffs.entry(d).or_default().push((toff + row, off + col, i, j, c));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Ranks of the degree-`a` strand of `L(P)`, position by position, with
/// the field matrices of its maps.
fn l_strand(ring: &Ring, sl: &EModuleSlices, a: &Multidegree) -> (BTreeMap<i64, usize>, BTreeMap<i64, MatrixFp>) {
    let spec = ring.spec();
    let fp = ring.fp();
    // basis: (x, monomial, p-index), grouped by position -|x|
    let mut bases: BTreeMap<i64, Vec<(Multidegree, Vec<u32>, usize)>> = BTreeMap::new();
    for (x, piece) in &sl.pieces {
        if piece.dim() == 0 {
            continue;
        }
        for mono in s_monomials(spec, &(a - x)) {
            for k in 0..piece.dim() {
                bases.entry(-x.total()).or_default().push((x.clone(), mono.clone(), k));
            }
        }
    }
    let mut dims = BTreeMap::new();
    let mut mats = BTreeMap::new();
    let mut act_cache: HashMap<(Multidegree, usize, usize), MatrixFp> = HashMap::new();
    for (&d, src) in &bases {
        dims.insert(d, src.len());
        let Some(tgt) = bases.get(&(d + 1)) else { continue };
        let index: HashMap<(Multidegree, Vec<u32>, usize), usize> =
            tgt.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = MatrixFp::zeros(tgt.len(), src.len(), fp);
        for (col, (x, mono, k)) in src.iter().enumerate() {
            for i in 0..spec.t() {
                let y = x - &spec.unit(i);
                for j in 0..=spec.n[i] {
                    let act = act_cache.entry((x.clone(), i, j)).or_insert_with(|| sl.action(ring, x, i, j));
                    let mut mm = mono.clone();
                    mm[var_index(spec, i, j)] += 1;
                    for row_k in 0..act.rows() {
                        let c = act.get(row_k, *k);
                        if c == 0 {
                            continue;
                        }
                        if let Some(&r) = index.get(&(y.clone(), mm.clone(), row_k)) {
                            m.add_to(r, col, c);
                        }
                    }
                }
            }
        }
        mats.insert(d, m);
    }
    (dims, mats)
}

/// Outcome of [`reciprocity_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    /// `L(P)` has homology only at its lowest position and that homology
    /// has the Hilbert function of `M` on the box.
    pub l_resolves_m: bool,
    /// `R(M_{≥lo})` is exact past its first nonzero position and the kernel
    /// there has the Hilbert function of `P`.
    pub r_resolves_p: bool,
}

impl ReciprocityReport {
    pub fn holds(&self) -> bool {
        self.l_resolves_m && self.r_resolves_p
    }
}

/// Checks both sides of reciprocity for `M` truncated at `lo` and `P`, on
/// the degrees of the box `[lo, hi]`.
pub fn reciprocity_check(
    m: &SPresentation,
    p: &EModulePresentation,
    lo: &Multidegree,
    hi: &Multidegree,
) -> Result<ReciprocityReport> {
    let ring = Ring::new(m.ring.clone())?;
    let sm = SModule::new(m);
    let psupp = p.ambient_support(&ring);
    let sl = EModuleSlices::new(&ring, p, &psupp);

    // L side.
    let start = sl.pieces.iter().filter(|(_, v)| v.dim() > 0).map(|(x, _)| -x.total()).max();
    let mut l_ok = start.is_some();
    if let Some(start) = start {
        for a in box_points(lo, hi) {
            let (dims, mats) = l_strand(&ring, &sl, &a);
            for (&d, &n) in &dims {
                let out_rank = mats.get(&d).map(|m| m.rank()).unwrap_or(0);
                let in_rank = mats.get(&(d - 1)).map(|m| m.rank()).unwrap_or(0);
                let h = n - out_rank - in_rank;
                let want = if d == start { sm.dim(&a) } else { 0 };
                if h != want {
                    l_ok = false;
                }
            }
            if !dims.contains_key(&start) && sm.dim(&a) != 0 {
                l_ok = false;
            }
            if !l_ok {
                break;
            }
        }
    }

    // R side.
    let mut mods = BTreeMap::new();
    mods.insert(0, SModule::new(m));
    let pieces: Vec<Piece> = box_points(lo, hi).into_iter().map(|a| Piece { p: 0, a }).collect();
    let r = r_of_pieces(&ring, &mods, &BTreeMap::new(), &pieces);
    let mut r_ok = true;
    let Some(first) = box_points(lo, hi).iter().filter(|&a| mods[&0].dim(a) > 0).map(|a| a.total()).min() else {
        return Ok(ReciprocityReport { l_resolves_m: l_ok, r_resolves_p: psupp.iter().all(|x| sl.dim(x) == 0) });
    };
    for x in box_points(lo, hi) {
        let h = r.slice_homology(&ring, &x);
        for (&d, &v) in &h {
            let want = if d == first { sl.dim(&x) } else { 0 };
            if v != want {
                r_ok = false;
            }
        }
        if !h.contains_key(&first) && sl.dim(&x) != 0 {
            r_ok = false;
        }
    }
    if psupp.iter().any(|x| sl.dim(x) != 0 && !x.ge(lo)) {
        r_ok = false;
    }
    Ok(ReciprocityReport { l_resolves_m: l_ok, r_resolves_p: r_ok })
}

/// The module `M` with `L(P)` as linear presentation, for `P` the image of
/// `m`: generators are a basis of `P` in its lowest total degree, and each
/// element `q` one degree up gives the relation `Σ x_{ij} ⊗ q·e_{ij}`.
pub fn presentation_from_image(ring: &Ring, m: &EMatrix) -> Result<SPresentation> {
    let p = EModulePresentation::Image(m.clone());
    let supp = p.ambient_support(ring);
    let sl = EModuleSlices::new(ring, &p, &supp);
    let nonzero: Vec<&Multidegree> = sl.pieces.iter().filter(|(_, v)| v.dim() > 0).map(|(x, _)| x).collect();
    let Some(kmin) = nonzero.iter().map(|x| x.total()).min() else {
        return Err(TateError::BadInput("image of the matrix is zero".into()));
    };
    let spec = ring.spec().clone();
    let mut gens = Vec::new();
    let mut gen_off: HashMap<Multidegree, usize> = HashMap::new();
    for x in nonzero.iter().filter(|x| x.total() == kmin) {
        gen_off.insert((*x).clone(), gens.len());
        for _ in 0..sl.dim(x) {
            gens.push((*x).clone());
        }
    }
    let mut relations = Vec::new();
    for x in nonzero.iter().filter(|x| x.total() == kmin + 1) {
        for k in 0..sl.dim(x) {
            let mut rel: BTreeMap<usize, Vec<(i64, Vec<u32>)>> = BTreeMap::new();
            for i in 0..spec.t() {
                let y = *x - &spec.unit(i);
                let Some(&off) = gen_off.get(&y) else { continue };
                for j in 0..=spec.n[i] {
                    let act = sl.action(ring, x, i, j);
                    for r in 0..act.rows() {
                        let c = act.get(r, k);
                        if c != 0 {
                            let mut e = vec![0u32; spec.nvars()];
                            e[var_index(&spec, i, j)] = 1;
                            rel.entry(off + r).or_default().push((ring.fp().to_i64(c), e));
                        }
                    }
                }
            }
            if !rel.is_empty() {
                relations.push(SRelation(rel.into_iter().map(|(g, t)| (g, Polynomial(t))).collect()));
            }
        }
    }
    SPresentation::new(spec, gens, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smodule::line_bundle_sum;

    #[test]
    fn r_window_of_s_is_a_complex() {
        let spec = RingSpec::product(&[1, 1]);
        let ring = Ring::new(spec.clone()).unwrap();
        let s = line_bundle_sum(&spec, &[spec.zero()]);
        let r = r_window(&s, &Multidegree::from([0, 0]), &Multidegree::from([2, 2])).unwrap();
        r.check_complex(&ring).unwrap();
        assert_eq!(r.term(0).rank(), 1);
        assert_eq!(r.term(1).rank(), 4);
    }

    #[test]
    fn dual_of_omega_is_free_of_rank_one() {
        let spec = RingSpec::product(&[1]);
        let ring = Ring::new(spec.clone()).unwrap();
        let f = EMatrix::identity(&FreeEModule::new(vec![Multidegree::from([0])]), ring.fp());
        let hf = e_hilbert_function(&ring, &EModulePresentation::Image(f.clone()));
        let hd = e_hilbert_function(&ring, &e_dual(&ring, &EModulePresentation::Image(f)));
        for (x, v) in hf {
            assert_eq!(hd.get(&-&x).copied().unwrap_or(0), v);
        }
    }
}
