//! Minimal free and injective resolutions over `E`, computed degree by
//! degree, and the left extension of a complex that underlies every Tate
//! computation.

use crate::bgg::{e_dual, module_support, EModulePresentation};
use crate::complexes::{minimize, slice_with, vector_to_column, EMatrix, FreeEComplex, FreeEModule, ModuleIndex};
use crate::error::{Result, TateError};
use crate::linalg::{MatrixFp, RowSpace};
use crate::multigraded::{Multidegree, Ring, RingSpec};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Limits for one extension step.
#[derive(Clone, Debug)]
pub struct ExtendOptions {
    /// Largest admissible dimension of a single degree slice.
    pub budget: usize,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions { budget: 60_000 }
    }
}

/// The subspace of a free module `F` to be covered, degree by degree.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    /// Kernel of a map out of `F`.
    Kernel(&'a EMatrix),
    /// Image of a map into `F`.
    Image(&'a EMatrix),
}

/// Degree predicate for the generators of a new summand.
pub type Allow<'a> = dyn Fn(&Multidegree) -> bool + Sync + 'a;

/// New free summands `N → F` whose images, together with the image of
/// `seed`, minimally generate the target subspace in all allowed degrees.
///
/// Degrees are visited by descending total degree.  The allowed set must
/// be closed upwards inside the support of `F`, or at least contain with
/// each degree every degree above it where a new generator could be
/// needed; then each visited slice sees the complete image of the
/// generators chosen so far.
pub fn left_extend(
    ring: &Ring,
    f: &FreeEModule,
    target: Target,
    seed: Option<&EMatrix>,
    allow: &Allow,
    opts: &ExtendOptions,
) -> Result<EMatrix> {
    let idx_other = match target {
        Target::Kernel(d) => ModuleIndex::new(ring, &d.target),
        Target::Image(g) => ModuleIndex::new(ring, &g.source),
    };
    let wanted = |x: &Multidegree, bf: &crate::complexes::SliceBasis| -> Result<Vec<Vec<u32>>> {
        let bo = idx_other.basis_at(ring, x);
        Ok(match target {
            Target::Kernel(d) => {
                if bo.dim > opts.budget {
                    return Err(TateError::BudgetExceeded { dim: bo.dim, budget: opts.budget });
                }
                let k = slice_with(ring, d, bf, &bo).kernel_basis();
                (0..k.cols()).map(|j| k.column(j)).collect()
            }
            Target::Image(g) => {
                let m = slice_with(ring, g, &bo, bf);
                (0..m.cols()).map(|j| m.column(j)).collect()
            }
        })
    };
    let seeds: Vec<&EMatrix> = seed.into_iter().collect();
    left_extend_with(ring, f, &wanted, &seeds, allow, opts)
}

/// Vectors to cover in one degree slice of `F`, given its basis.
pub type Wanted<'a> = dyn Fn(&Multidegree, &crate::complexes::SliceBasis) -> Result<Vec<Vec<u32>>> + Sync + 'a;

/// The general form of [`left_extend`]: the subspace to cover is given
/// slice by slice, and any number of maps into `F` may be taken as
/// already covering part of it.
pub fn left_extend_with(
    ring: &Ring,
    f: &FreeEModule,
    wanted: &Wanted,
    seeds: &[&EMatrix],
    allow: &Allow,
    opts: &ExtendOptions,
) -> Result<EMatrix> {
    let top = ring.spec().top_deg();
    let idx_f = ModuleIndex::new(ring, f);
    let idx_seeds: Vec<ModuleIndex> = seeds.iter().map(|s| ModuleIndex::new(ring, &s.source)).collect();
    let mut levels: BTreeMap<i64, Vec<Multidegree>> = BTreeMap::new();
    for x in module_support(ring, f) {
        if allow(&x) {
            levels.entry(x.total()).or_default().push(x);
        }
    }
    let mut new = EMatrix::zero(FreeEModule::empty(), f.clone());
    for xs in levels.values().rev() {
        let idx_new = ModuleIndex::new(ring, &new.source);
        #[cfg(feature = "parallel")]
        let xs_iter = xs.par_iter();
        #[cfg(not(feature = "parallel"))]
        let xs_iter = xs.iter();
        let found: Vec<(Multidegree, crate::complexes::SliceBasis, Vec<Vec<u32>>)> = xs_iter
            .map(|x| -> Result<_> {
                let bf = idx_f.basis_at(ring, x);
                if bf.dim == 0 {
                    return Ok(None);
                }
                if bf.dim > opts.budget {
                    return Err(TateError::BudgetExceeded { dim: bf.dim, budget: opts.budget });
                }
                let want = wanted(x, &bf)?;
                if want.is_empty() {
                    return Ok(None);
                }
                let mut rs = RowSpace::new(bf.dim, ring.fp());
                let mut push_all = |m: &MatrixFp| {
                    for j in 0..m.cols() {
                        rs.insert(&m.column(j));
                    }
                };
                for (s, is) in seeds.iter().zip(&idx_seeds) {
                    push_all(&slice_with(ring, s, &is.basis_at(ring, x), &bf));
                }
                if new.ncols() > 0 {
                    push_all(&slice_with(ring, &new, &idx_new.basis_at(ring, x), &bf));
                }
                let picks: Vec<Vec<u32>> = want.into_iter().filter(|v| rs.insert(v)).collect();
                Ok(if picks.is_empty() { None } else { Some((x.clone(), bf, picks)) })
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        for (x, bf, picks) in found {
            for v in picks {
                new.push_column(&top - &x, vector_to_column(ring, &bf, &v));
            }
        }
    }
    Ok(new)
}

/// Extends `c` to the left: for `k` from `top` down to `bottom + 1`, new
/// summands in position `k - 1` cover `ker d^k` modulo `im d^{k-1}`.  The
/// new summands are appended after the existing ones.  Returns, per
/// position, the number of summands that were present before.
pub fn extend_complex_left(
    ring: &Ring,
    c: &mut FreeEComplex,
    top: i64,
    bottom: i64,
    allow: &(dyn Fn(i64, &Multidegree) -> bool + Sync),
    opts: &ExtendOptions,
) -> Result<BTreeMap<i64, usize>> {
    let mut original: BTreeMap<i64, usize> = c.terms.iter().map(|(d, m)| (*d, m.rank())).collect();
    for k in ((bottom + 1)..=top).rev() {
        let fk = c.term(k);
        original.entry(k - 1).or_insert_with(|| c.term(k - 1).rank());
        if fk.is_empty() {
            continue;
        }
        let dk = c.diff(k);
        let seed = c.diffs.get(&(k - 1)).cloned();
        let new = left_extend(ring, &fk, Target::Kernel(&dk), seed.as_ref(), &|x| allow(k - 1, x), opts)?;
        if new.ncols() == 0 {
            continue;
        }
        let old = seed.unwrap_or_else(|| EMatrix::zero(c.term(k - 1), fk.clone()));
        let combined = old.hstack(&new);
        if let Some(prev) = c.diffs.get_mut(&(k - 2)) {
            for tw in &new.source.twists {
                prev.push_row(tw.clone(), Vec::new());
            }
        }
        c.terms.insert(k - 1, combined.source.clone());
        c.diffs.insert(k - 1, combined);
    }
    c.window = (c.window.0.min(bottom), c.window.1);
    Ok(original)
}

/// Minimal free resolution `F^0 ← F^{-1} ← … ← F^{-steps}` of `P`, with
/// `F^0` covering `P`.
pub fn min_free_res(ring: &Ring, p: &EModulePresentation, steps: usize, opts: &ExtendOptions) -> Result<FreeEComplex> {
    let all = |_: &Multidegree| true;
    let mut c = FreeEComplex::new(ring.spec().clone());
    let bottom = -(steps as i64);
    match p {
        EModulePresentation::Kernel(_) | EModulePresentation::Image(_) => {
            let cover = match p {
                EModulePresentation::Kernel(h) => left_extend(ring, &h.source, Target::Kernel(h), None, &all, opts)?,
                EModulePresentation::Image(g) => left_extend(ring, &g.target, Target::Image(g), None, &all, opts)?,
                EModulePresentation::Coker(_) => unreachable!(),
            };
            c.terms.insert(0, cover.source.clone());
            c.terms.insert(1, cover.target.clone());
            c.diffs.insert(0, cover);
            c.window = (0, 1);
            extend_complex_left(ring, &mut c, 0, bottom, &|_, _| true, opts)?;
            c.terms.remove(&1);
            c.diffs.remove(&0);
        }
        EModulePresentation::Coker(f) => {
            let cover = left_extend(ring, &f.target, Target::Image(f), None, &all, opts)?;
            c.terms.insert(0, f.target.clone());
            c.terms.insert(-1, cover.source.clone());
            c.diffs.insert(-1, cover);
            c.window = (-1, 0);
            extend_complex_left(ring, &mut c, -1, bottom - 1, &|_, _| true, opts)?;
            c = minimize(ring, &c);
            c.terms.remove(&(bottom - 1));
            c.diffs.remove(&(bottom - 1));
        }
    }
    c.window = (bottom, 0);
    c.prune();
    Ok(c)
}

/// Minimal injective resolution `Q → I^0 → … → I^{steps}`, the dual of a
/// free resolution of the dual module.
pub fn min_inj_res(ring: &Ring, q: &EModulePresentation, steps: usize, opts: &ExtendOptions) -> Result<FreeEComplex> {
    Ok(min_free_res(ring, &e_dual(ring, q), steps, opts)?.dual(ring))
}

/// New summands `C → I` extending `∂: A → B` on the right: the injective
/// hull of `coker ∂` restricted to socle degrees accepted by `allow`.  The
/// returned matrix goes from the target of `∂` to the new summands.
pub fn right_extend(ring: &Ring, d: &EMatrix, allow: &Allow, opts: &ExtendOptions) -> Result<EMatrix> {
    let dual = d.dual(ring);
    let dual_allow = |x: &Multidegree| allow(&-x);
    let cover = left_extend(ring, &dual.source, Target::Kernel(&dual), None, &dual_allow, opts)?;
    Ok(cover.dual(ring))
}

/// Right extension of a complex: for `k` from `from` to `to - 1`, new
/// summands in position `k + 1` make the complex exact at `k`, using the
/// injective hull of the cokernel of `d^{k-1}` modulo what `d^k` already
/// sees.  `allow` receives the position of the new summand and its socle
/// degree.
pub fn extend_complex_right(
    ring: &Ring,
    c: &mut FreeEComplex,
    from: i64,
    to: i64,
    allow: &(dyn Fn(i64, &Multidegree) -> bool + Sync),
    opts: &ExtendOptions,
) -> Result<()> {
    let mut dual = c.dual(ring);
    extend_complex_left(ring, &mut dual, -from, -to, &|k, x| allow(-k, &-x), opts)?;
    *c = dual.dual(ring);
    Ok(())
}

/// A bounded complex of `E`-modules `M^i = B^i / im(f_i)`, with the maps
/// given on the free modules `B^i` and sending relations to relations.
#[derive(Clone, Debug)]
pub struct EModuleComplex {
    pub ring: RingSpec,
    /// `f_i: G_i → B^i`, presenting `M^i` as its cokernel.
    pub modules: BTreeMap<i64, EMatrix>,
    /// `B^i → B^{i+1}`.
    pub maps: BTreeMap<i64, EMatrix>,
}

impl EModuleComplex {
    /// Accepts cokernel presentations only.
    pub fn new(ring: &Ring, modules: BTreeMap<i64, EModulePresentation>, maps: BTreeMap<i64, EMatrix>) -> Result<Self> {
        let mut pres = BTreeMap::new();
        for (d, p) in modules {
            match p {
                EModulePresentation::Coker(f) => {
                    pres.insert(d, f);
                }
                _ => return Err(TateError::BadInput(format!("module in position {d} must be given as a cokernel"))),
            }
        }
        let c = EModuleComplex { ring: ring.spec().clone(), modules: pres, maps };
        c.validate(ring)?;
        Ok(c)
    }

    pub fn ambient(&self, d: i64) -> FreeEModule {
        self.modules.get(&d).map(|f| f.target.clone()).unwrap_or_else(FreeEModule::empty)
    }

    pub fn relations(&self, d: i64) -> EMatrix {
        self.modules.get(&d).cloned().unwrap_or_else(|| EMatrix::zero(FreeEModule::empty(), FreeEModule::empty()))
    }

    pub fn map(&self, d: i64) -> EMatrix {
        self.maps.get(&d).cloned().unwrap_or_else(|| EMatrix::zero(self.ambient(d), self.ambient(d + 1)))
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        Some((*self.modules.keys().next()?, *self.modules.keys().next_back()?))
    }

    /// Relations map to relations and consecutive maps compose into the
    /// relations, checked on every degree slice.
    pub fn validate(&self, ring: &Ring) -> Result<()> {
        for (&d, m) in &self.maps {
            if m.source != self.ambient(d) || m.target != self.ambient(d + 1) {
                return Err(TateError::BadInput(format!("map at position {d} does not match the ambient modules")));
            }
            m.check_degrees(ring)?;
            let fp = ring.fp();
            let rel_image = m.compose(&self.relations(d), fp);
            self.check_in_relations(ring, d + 1, &rel_image, "relations are not mapped to relations")?;
            let square = self.map(d + 1).compose(m, fp);
            self.check_in_relations(ring, d + 2, &square, "consecutive maps do not compose to zero")?;
        }
        Ok(())
    }

    fn check_in_relations(&self, ring: &Ring, d: i64, g: &EMatrix, what: &str) -> Result<()> {
        if g.is_zero() {
            return Ok(());
        }
        let rel = self.relations(d);
        let idx_src = ModuleIndex::new(ring, &g.source);
        let idx_rel = ModuleIndex::new(ring, &rel.source);
        let idx_tgt = ModuleIndex::new(ring, &g.target);
        for y in module_support(ring, &g.target) {
            let bt = idx_tgt.basis_at(ring, &y);
            let gm = slice_with(ring, g, &idx_src.basis_at(ring, &y), &bt);
            let rm = slice_with(ring, &rel, &idx_rel.basis_at(ring, &y), &bt);
            if rm.hcat(&gm).rank() != rm.rank() {
                return Err(TateError::BadInput(format!("{what} (position {d}, degree {y})")));
            }
        }
        Ok(())
    }

    /// `dim H^k` of the degree-`y` slice, for every position.
    pub fn slice_homology(&self, ring: &Ring, y: &Multidegree) -> BTreeMap<i64, usize> {
        let Some((lo, hi)) = self.range() else { return BTreeMap::new() };
        let mut dims = BTreeMap::new();
        let mut ranks = BTreeMap::new();
        let slice = |g: &EMatrix| {
            slice_with(
                ring,
                g,
                &ModuleIndex::new(ring, &g.source).basis_at(ring, y),
                &ModuleIndex::new(ring, &g.target).basis_at(ring, y),
            )
        };
        for d in lo..=hi {
            let q = slice(&self.relations(d));
            let q_rank = q.rank();
            dims.insert(d, ModuleIndex::new(ring, &self.ambient(d)).basis_at(ring, y).dim - q_rank);
            let q1 = slice(&self.relations(d + 1));
            let m = slice(&self.map(d));
            ranks.insert(d, q1.hcat(&m).rank() - q1.rank());
        }
        dims.iter()
            .map(|(&d, &n)| (d, n - ranks.get(&d).copied().unwrap_or(0) - ranks.get(&(d - 1)).copied().unwrap_or(0)))
            .collect()
    }
}

/// Free complex `F` with a quasi-isomorphism `F → M^•`, built from the
/// top position down so that the mapping cone is exact at each position
/// in turn, then minimized.  `F` reaches `steps` positions below the
/// lowest module.
pub fn res_of_complex(ring: &Ring, mc: &EModuleComplex, steps: usize, opts: &ExtendOptions) -> Result<FreeEComplex> {
    let fp = ring.fp();
    let mut f = FreeEComplex::new(ring.spec().clone());
    let Some((pmin, pmax)) = mc.range() else { return Ok(f) };
    let bottom = pmin - steps as i64;
    // components of F^k → B^k
    let mut aug: BTreeMap<i64, EMatrix> = BTreeMap::new();
    let all = |_: &Multidegree| true;
    for k in (bottom..=pmax).rev() {
        let a = mc.ambient(k);
        let fk1 = f.term(k + 1);
        let v = a.direct_sum(&fk1);
        let a1 = mc.ambient(k + 1);
        let w = a1.direct_sum(&f.term(k + 2));
        let aug1 = aug.get(&(k + 1)).cloned().unwrap_or_else(|| EMatrix::zero(fk1.clone(), a1.clone()));
        // cone differential V = B^k ⊕ F^{k+1} → B^{k+1} ⊕ F^{k+2}
        let dv = mc.map(k).hstack(&aug1).vstack(&EMatrix::zero(a.clone(), f.term(k + 2)).hstack(&f.diff(k + 1).neg(fp)));
        let rel1 = mc.relations(k + 1).vstack(&EMatrix::zero(mc.relations(k + 1).source.clone(), f.term(k + 2)));
        let seed_m = mc.map(k - 1).vstack(&EMatrix::zero(mc.ambient(k - 1), fk1.clone()));
        let seed_q = mc.relations(k).vstack(&EMatrix::zero(mc.relations(k).source.clone(), fk1.clone()));
        let idx_w = ModuleIndex::new(ring, &w);
        let idx_rel = ModuleIndex::new(ring, &rel1.source);
        let wanted = |y: &Multidegree, bv: &crate::complexes::SliceBasis| -> Result<Vec<Vec<u32>>> {
            let bw = idx_w.basis_at(ring, y);
            if bw.dim > opts.budget {
                return Err(TateError::BudgetExceeded { dim: bw.dim, budget: opts.budget });
            }
            let m = slice_with(ring, &dv, bv, &bw).hcat(&slice_with(ring, &rel1, &idx_rel.basis_at(ring, y), &bw));
            let k = m.kernel_basis();
            Ok((0..k.cols()).map(|j| k.column(j)[..bv.dim].to_vec()).filter(|c| c.iter().any(|&x| x != 0)).collect())
        };
        let new = left_extend_with(ring, &v, &wanted, &[&seed_m, &seed_q], &all, opts)?;
        let na = a.rank();
        let rows_a: Vec<usize> = (0..na).collect();
        let rows_f: Vec<usize> = (na..v.rank()).collect();
        let cols: Vec<usize> = (0..new.ncols()).collect();
        aug.insert(k, new.submatrix(&rows_a, &cols));
        f.terms.insert(k, new.source.clone());
        f.diffs.insert(k, new.submatrix(&rows_f, &cols).neg(fp));
    }
    f.window = (bottom, pmax);
    let mut out = minimize(ring, &f);
    out.window = (bottom, pmax);
    Ok(out)
}

/// `rank d^k + rank d^{k-1} = dim` at every interior position of the slice
/// complex in degree `x`.
pub fn slice_exact_at(ring: &Ring, c: &FreeEComplex, x: &Multidegree, k: i64) -> bool {
    c.slice_homology(ring, x).get(&k).copied().unwrap_or(0) == 0
}
