//! Free right `E`-modules, homogeneous matrices between them, and
//! cohomologically indexed complexes.
//!
//! A summand stored with twist `b` is `ω_E(b)`.  Its generator sits in
//! degree `n + 1 - b`, its socle in degree `-b`, and the basis of its degree
//! `x` part is the set of monomials `g·m` with `m` of block counts
//! `n + 1 - b - x`.  A matrix entry `A_{kl}` acts by
//! `g_l·m ↦ Σ_k g_k·(A_{kl}·m)`, so composition `B∘A` multiplies entries as
//! `Σ_j B_{kj}·A_{jl}`.

use crate::error::{Result, TateError};
use crate::linalg::{Fp, MatrixFp};
use crate::multigraded::{box_points, mono_mul, ExteriorElement, Multidegree, Ring, RingSpec};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeEModule {
    pub twists: Vec<Multidegree>,
}

impl FreeEModule {
    pub fn new(twists: Vec<Multidegree>) -> Self {
        FreeEModule { twists }
    }

    pub fn empty() -> Self {
        FreeEModule { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    /// Degree of the generator of summand `k`.
    pub fn gen_degree(&self, ring: &Ring, k: usize) -> Multidegree {
        &ring.spec().top_deg() - &self.twists[k]
    }

    pub fn direct_sum(&self, other: &FreeEModule) -> FreeEModule {
        let mut t = self.twists.clone();
        t.extend(other.twists.iter().cloned());
        FreeEModule { twists: t }
    }

    pub fn twisted(&self, c: &Multidegree) -> FreeEModule {
        FreeEModule { twists: self.twists.iter().map(|b| b + c).collect() }
    }
}

/// `Σ_k ∏_i C(n_i+1, a_i + b_{k,i})`.
pub fn e_dim_in_degree(ring: &Ring, f: &FreeEModule, a: &Multidegree) -> usize {
    let top = ring.spec().top_deg();
    f.twists
        .iter()
        .map(|b| {
            let counts: Vec<i64> = (0..ring.t()).map(|i| top[i] - b[i] - a[i]).collect();
            ring.monomials_with_counts(&counts).len()
        })
        .sum()
}

/// Homogeneous matrix of a map of free modules, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMatrix {
    pub source: FreeEModule,
    pub target: FreeEModule,
    cols: Vec<Vec<(usize, ExteriorElement)>>,
}

impl EMatrix {
    pub fn zero(source: FreeEModule, target: FreeEModule) -> Self {
        let cols = vec![Vec::new(); source.rank()];
        EMatrix { source, target, cols }
    }

    pub fn identity(m: &FreeEModule, fp: Fp) -> Self {
        let mut e = EMatrix::zero(m.clone(), m.clone());
        for k in 0..m.rank() {
            e.cols[k].push((k, ExteriorElement::scalar(1, fp)));
        }
        e
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn column(&self, l: usize) -> &[(usize, ExteriorElement)] {
        &self.cols[l]
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&ExteriorElement> {
        self.cols[col].iter().find(|e| e.0 == row).map(|e| &e.1)
    }

    /// Sets an entry, replacing any previous value; zero removes it.
    pub fn set(&mut self, row: usize, col: usize, e: ExteriorElement) {
        let c = &mut self.cols[col];
        match c.binary_search_by_key(&row, |x| x.0) {
            Ok(i) => {
                if e.is_zero() {
                    c.remove(i);
                } else {
                    c[i].1 = e;
                }
            }
            Err(i) => {
                if !e.is_zero() {
                    c.insert(i, (row, e));
                }
            }
        }
    }

    /// Appends a source summand with the given sparse column.
    pub fn push_column(&mut self, twist: Multidegree, mut entries: Vec<(usize, ExteriorElement)>) {
        entries.retain(|e| !e.1.is_zero());
        entries.sort_by_key(|e| e.0);
        self.source.twists.push(twist);
        self.cols.push(entries);
    }

    /// Appends a target summand with entries `(column, element)`.
    pub fn push_row(&mut self, twist: Multidegree, entries: Vec<(usize, ExteriorElement)>) {
        let r = self.target.rank();
        self.target.twists.push(twist);
        for (c, e) in entries {
            if !e.is_zero() {
                self.cols[c].push((r, e));
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ExteriorElement)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, e)| (*r, c, e)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Checks that each entry has degree `twist_target - twist_source`.
    pub fn check_degrees(&self, ring: &Ring) -> Result<()> {
        for (r, c, e) in self.entries() {
            let want = &self.target.twists[r] - &self.source.twists[c];
            match e.degree(ring) {
                Some(d) if d == want => {}
                other => return Err(TateError::BadInput(format!("entry ({r},{c}) has degree {other:?}, expected {want}"))),
            }
        }
        Ok(())
    }

    pub fn has_unit_entry(&self) -> bool {
        self.entries().any(|(_, _, e)| e.constant() != 0)
    }

    pub fn neg(&self, fp: Fp) -> EMatrix {
        let mut m = self.clone();
        for col in m.cols.iter_mut() {
            for e in col.iter_mut() {
                e.1 = e.1.neg(fp);
            }
        }
        m
    }

    /// `self ∘ a`: first `a`, then `self`.
    pub fn compose(&self, a: &EMatrix, fp: Fp) -> EMatrix {
        assert_eq!(self.source.rank(), a.target.rank(), "composition shape mismatch");
        let mut out = EMatrix::zero(a.source.clone(), self.target.clone());
        for l in 0..a.ncols() {
            let mut acc: BTreeMap<usize, ExteriorElement> = BTreeMap::new();
            for (j, ajl) in &a.cols[l] {
                for (k, bkj) in &self.cols[*j] {
                    let prod = bkj.mul(ajl, fp);
                    if prod.is_zero() {
                        continue;
                    }
                    let slot = acc.entry(*k).or_default();
                    *slot = slot.add(&prod, fp);
                }
            }
            out.cols[l] = acc.into_iter().filter(|e| !e.1.is_zero()).collect();
        }
        out
    }

    pub fn add(&self, o: &EMatrix, fp: Fp) -> EMatrix {
        assert_eq!(self.source, o.source);
        assert_eq!(self.target, o.target);
        let mut out = self.clone();
        for (r, c, e) in o.entries() {
            let cur = out.get(r, c).cloned().unwrap_or_default();
            out.set(r, c, cur.add(e, fp));
        }
        out
    }

    /// Restriction to the chosen target rows and source columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> EMatrix {
        let mut rmap = vec![usize::MAX; self.rows()];
        for (i, &r) in rows.iter().enumerate() {
            rmap[r] = i;
        }
        let source = FreeEModule::new(cols.iter().map(|&c| self.source.twists[c].clone()).collect());
        let target = FreeEModule::new(rows.iter().map(|&r| self.target.twists[r].clone()).collect());
        let mut out = EMatrix::zero(source, target);
        for (i, &c) in cols.iter().enumerate() {
            let mut col: Vec<(usize, ExteriorElement)> =
                self.cols[c].iter().filter(|(r, _)| rmap[*r] != usize::MAX).map(|(r, e)| (rmap[*r], e.clone())).collect();
            col.sort_by_key(|e| e.0);
            out.cols[i] = col;
        }
        out
    }

    /// `[self | other]` for maps with a common target.
    pub fn hstack(&self, other: &EMatrix) -> EMatrix {
        assert_eq!(self.target, other.target);
        let mut out = self.clone();
        out.source = self.source.direct_sum(&other.source);
        out.cols.extend(other.cols.iter().cloned());
        out
    }

    /// `[self ; other]` for maps with a common source.
    pub fn vstack(&self, other: &EMatrix) -> EMatrix {
        assert_eq!(self.source, other.source);
        let shift = self.rows();
        let mut out = self.clone();
        out.target = self.target.direct_sum(&other.target);
        for (l, col) in other.cols.iter().enumerate() {
            out.cols[l].extend(col.iter().map(|(r, e)| (r + shift, e.clone())));
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &EMatrix) -> EMatrix {
        let left = self.vstack(&EMatrix::zero(self.source.clone(), other.target.clone()));
        let right = EMatrix::zero(other.source.clone(), self.target.clone()).vstack(other);
        left.hstack(&right)
    }

    /// Transpose with every entry reversed; realizes the duality
    /// `ω_E(b) ↦ ω_E(n+1-b)` that reverses composition order.
    pub fn dual(&self, ring: &Ring) -> EMatrix {
        let top = ring.spec().top_deg();
        let flip = |m: &FreeEModule| FreeEModule::new(m.twists.iter().map(|b| &top - b).collect());
        let mut out = EMatrix::zero(flip(&self.target), flip(&self.source));
        for (r, c, e) in self.entries() {
            out.cols[r].push((c, e.reversed(ring.fp())));
        }
        for col in out.cols.iter_mut() {
            col.sort_by_key(|e| e.0);
        }
        out
    }

    pub fn twisted(&self, c: &Multidegree) -> EMatrix {
        EMatrix { source: self.source.twisted(c), target: self.target.twisted(c), cols: self.cols.clone() }
    }
}

/// Basis of the degree `x` part of a free module: per present summand its
/// offset and monomial class.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub parts: Vec<SlicePart>,
    pub dim: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct SlicePart {
    pub summand: usize,
    pub offset: usize,
    pub code: usize,
}

impl SliceBasis {
    /// Lookup table summand → part, sized for a module of `rank` summands.
    pub fn lookup(&self, rank: usize) -> Vec<Option<SlicePart>> {
        let mut v = vec![None; rank];
        for p in &self.parts {
            v[p.summand] = Some(*p);
        }
        v
    }
}

/// Summands grouped by generator degree, for fast slice enumeration.
#[derive(Clone, Debug)]
pub struct ModuleIndex {
    by_gen: HashMap<Multidegree, Vec<usize>>,
    rank: usize,
}

impl ModuleIndex {
    pub fn new(ring: &Ring, m: &FreeEModule) -> Self {
        let mut by_gen: HashMap<Multidegree, Vec<usize>> = HashMap::new();
        for k in 0..m.rank() {
            by_gen.entry(m.gen_degree(ring, k)).or_default().push(k);
        }
        ModuleIndex { by_gen, rank: m.rank() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gen_degrees(&self) -> impl Iterator<Item = &Multidegree> {
        self.by_gen.keys()
    }

    pub fn basis_at(&self, ring: &Ring, x: &Multidegree) -> SliceBasis {
        let top = ring.spec().top_deg();
        let mut found: Vec<(usize, usize)> = Vec::new();
        for g in box_points(x, &(x + &top)) {
            if let Some(ks) = self.by_gen.get(&g) {
                let counts: Vec<i64> = (0..ring.t()).map(|i| g[i] - x[i]).collect();
                let code = ring.counts_code(&counts).expect("counts in range");
                found.extend(ks.iter().map(|&k| (k, code)));
            }
        }
        found.sort_unstable();
        let mut parts = Vec::with_capacity(found.len());
        let mut off = 0;
        for (k, code) in found {
            parts.push(SlicePart { summand: k, offset: off, code });
            off += ring.monomials_by_code(code).len();
        }
        SliceBasis { parts, dim: off }
    }
}

/// Field matrix of `f` between prepared slice bases of source and target.
pub fn slice_with(ring: &Ring, f: &EMatrix, src: &SliceBasis, tgt: &SliceBasis) -> MatrixFp {
    let fp = ring.fp();
    let mut m = MatrixFp::zeros(tgt.dim, src.dim, fp);
    if src.dim == 0 || tgt.dim == 0 {
        return m;
    }
    let look = tgt.lookup(f.rows());
    for part in &src.parts {
        let monos = ring.monomials_by_code(part.code);
        for (k, elem) in f.column(part.summand) {
            let Some(tp) = look[*k] else { continue };
            for (idx, &mm) in monos.iter().enumerate() {
                let col = part.offset + idx;
                for &(mu, c) in elem.terms() {
                    if let Some((w, neg)) = mono_mul(mu, mm) {
                        let row = tp.offset + ring.index_of(w);
                        m.add_to(row, col, if neg { fp.neg(c) } else { c });
                    }
                }
            }
        }
    }
    m
}

/// The linear map `(source)_a → (target)_a` induced by `f`.
pub fn degree_slice(ring: &Ring, f: &EMatrix, a: &Multidegree) -> MatrixFp {
    let src = ModuleIndex::new(ring, &f.source).basis_at(ring, a);
    let tgt = ModuleIndex::new(ring, &f.target).basis_at(ring, a);
    slice_with(ring, f, &src, &tgt)
}

/// Element of a free module in degree `x`, given by slice coordinates,
/// converted to a sparse column `(summand, element)`.
pub fn vector_to_column(ring: &Ring, basis: &SliceBasis, v: &[u32]) -> Vec<(usize, ExteriorElement)> {
    let fp = ring.fp();
    let mut out = Vec::new();
    for part in &basis.parts {
        let monos = ring.monomials_by_code(part.code);
        let terms: Vec<(u32, u32)> = monos
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| {
                let c = v[part.offset + i];
                (c != 0).then_some((m, c))
            })
            .collect();
        if !terms.is_empty() {
            out.push((part.summand, ExteriorElement::from_terms(terms, fp)));
        }
    }
    out
}

/// Multiplicity table `(d, a) ↦ #ω_E(-a)` in `T^d`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(i64, Multidegree), usize>,
}

impl BettiTable {
    pub fn get(&self, d: i64, a: &Multidegree) -> usize {
        self.entries.get(&(d, a.clone())).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn restrict(&self, keep: impl Fn(i64, &Multidegree) -> bool) -> BettiTable {
        BettiTable { entries: self.entries.iter().filter(|((d, a), _)| keep(*d, a)).map(|(k, v)| (k.clone(), *v)).collect() }
    }

    /// Coarse table `(row, column) ↦ count` with column `d + shift` and row `d - |a|`.
    pub fn coarse(&self, shift: i64) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for ((d, a), m) in &self.entries {
            *out.entry((d - a.total(), d + shift)).or_insert(0) += m;
        }
        out
    }

    /// Entrywise `self ≤ other`.
    pub fn dominated_by(&self, other: &BettiTable) -> bool {
        self.entries.iter().all(|((d, a), m)| *m <= other.get(*d, a))
    }
}

/// Renders a coarse table with the highest row first.
pub fn format_coarse(table: &BTreeMap<(i64, i64), usize>) -> String {
    use std::fmt::Write;
    if table.is_empty() {
        return "(zero)\n".to_string();
    }
    let cmin = table.keys().map(|k| k.1).min().unwrap();
    let cmax = table.keys().map(|k| k.1).max().unwrap();
    let rmin = table.keys().map(|k| k.0).min().unwrap();
    let rmax = table.keys().map(|k| k.0).max().unwrap();
    let width = table.values().map(|v| v.to_string().len()).max().unwrap_or(1).max(3);
    let mut s = String::new();
    let _ = write!(s, "{:>5} |", "");
    for c in cmin..=cmax {
        let _ = write!(s, " {:>width$}", c);
    }
    s.push('\n');
    for r in (rmin..=rmax).rev() {
        let _ = write!(s, "{:>5} |", r);
        for c in cmin..=cmax {
            match table.get(&(r, c)) {
                Some(v) => {
                    let _ = write!(s, " {:>width$}", v);
                }
                None => {
                    let _ = write!(s, " {:>width$}", ".");
                }
            }
        }
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEComplex {
    pub ring: RingSpec,
    pub terms: BTreeMap<i64, FreeEModule>,
    /// `diffs[d]: T^d → T^{d+1}`.
    pub diffs: BTreeMap<i64, EMatrix>,
    /// Cohomological range on which the differentials are certified.
    pub window: (i64, i64),
}

impl FreeEComplex {
    pub fn new(ring: RingSpec) -> Self {
        FreeEComplex { ring, terms: BTreeMap::new(), diffs: BTreeMap::new(), window: (0, 0) }
    }

    /// Single module in degree `d`.
    pub fn single(ring: RingSpec, d: i64, m: FreeEModule) -> Self {
        let mut c = FreeEComplex::new(ring);
        c.terms.insert(d, m);
        c.window = (d, d);
        c
    }

    pub fn term(&self, d: i64) -> FreeEModule {
        self.terms.get(&d).cloned().unwrap_or_default()
    }

    pub fn term_ref(&self, d: i64) -> Option<&FreeEModule> {
        self.terms.get(&d)
    }

    /// The differential out of `T^d`, zero when not stored.
    pub fn diff(&self, d: i64) -> EMatrix {
        match self.diffs.get(&d) {
            Some(m) => m.clone(),
            None => EMatrix::zero(self.term(d), self.term(d + 1)),
        }
    }

    pub fn set_diff(&mut self, d: i64, m: EMatrix) {
        debug_assert_eq!(m.source, self.term(d));
        debug_assert_eq!(m.target, self.term(d + 1));
        self.diffs.insert(d, m);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|m| m.is_empty())
    }

    /// Removes empty terms and their zero maps.
    pub fn prune(&mut self) {
        let empty: Vec<i64> = self.terms.iter().filter(|(_, m)| m.is_empty()).map(|(d, _)| *d).collect();
        for d in empty {
            self.terms.remove(&d);
            self.diffs.remove(&d);
            self.diffs.remove(&(d - 1));
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn betti(&self) -> BettiTable {
        let mut b = BettiTable::default();
        for (d, m) in &self.terms {
            for tw in &m.twists {
                *b.entries.entry((*d, -tw)).or_insert(0) += 1;
            }
        }
        b
    }

    /// Checks `d^{k+1} ∘ d^k = 0` symbolically on every stored pair.
    pub fn check_complex(&self, ring: &Ring) -> Result<()> {
        for (&d, m) in &self.diffs {
            if let Some(next) = self.diffs.get(&(d + 1)) {
                if !next.compose(m, ring.fp()).is_zero() {
                    return Err(TateError::NotChainMap(format!("d^{} ∘ d^{} ≠ 0", d + 1, d)));
                }
            }
        }
        Ok(())
    }

    /// All degrees where some term is nonzero.
    pub fn support_degrees(&self, ring: &Ring) -> Vec<Multidegree> {
        let top = ring.spec().top_deg();
        let mut set = std::collections::BTreeSet::new();
        for m in self.terms.values() {
            for b in &m.twists {
                let socle = -b;
                for x in box_points(&socle, &(&socle + &top)) {
                    set.insert(x);
                }
            }
        }
        set.into_iter().collect()
    }

    /// `dim H^k` of the degree-`x` slice complex for each `k` with a term.
    pub fn slice_homology(&self, ring: &Ring, x: &Multidegree) -> BTreeMap<i64, usize> {
        let mut dims = BTreeMap::new();
        let mut ranks = BTreeMap::new();
        for (&d, m) in &self.terms {
            dims.insert(d, e_dim_in_degree(ring, m, x));
            if self.terms.contains_key(&(d + 1)) {
                ranks.insert(d, degree_slice(ring, &self.diff(d), x).rank());
            }
        }
        dims.iter()
            .map(|(&d, &n)| {
                let out = ranks.get(&d).copied().unwrap_or(0);
                let inc = ranks.get(&(d - 1)).copied().unwrap_or(0);
                (d, n - out - inc)
            })
            .collect()
    }

    /// Keeps the summands selected by `keep(d, twist)`; the result is a
    /// complex whenever the selection is a subquotient.
    pub fn select(&self, keep: impl Fn(i64, &Multidegree) -> bool) -> FreeEComplex {
        let mut idx: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut out = FreeEComplex::new(self.ring.clone());
        out.window = self.window;
        for (&d, m) in &self.terms {
            let ks: Vec<usize> = (0..m.rank()).filter(|&k| keep(d, &m.twists[k])).collect();
            if !ks.is_empty() {
                out.terms.insert(d, FreeEModule::new(ks.iter().map(|&k| m.twists[k].clone()).collect()));
                idx.insert(d, ks);
            }
        }
        for (&d, m) in &self.diffs {
            if let (Some(src), Some(tgt)) = (idx.get(&d), idx.get(&(d + 1))) {
                out.diffs.insert(d, m.submatrix(tgt, src));
            }
        }
        out
    }

    pub fn twisted(&self, c: &Multidegree) -> FreeEComplex {
        twist_and_shift(self, c, 0)
    }

    /// Termwise dual: `ω_E(b)` in position `d` becomes `ω_E(n+1-b)` in
    /// position `-d`, and each differential is transposed.
    pub fn dual(&self, ring: &Ring) -> FreeEComplex {
        let top = ring.spec().top_deg();
        let mut out = FreeEComplex::new(self.ring.clone());
        for (&d, m) in &self.terms {
            out.terms.insert(-d, FreeEModule::new(m.twists.iter().map(|b| &top - b).collect()));
        }
        for (&d, m) in &self.diffs {
            out.diffs.insert(-d - 1, m.dual(ring));
        }
        out.window = (-self.window.1, -self.window.0);
        out
    }
}

/// `T(c)[k]` with `T(c)[k]^d = T^{k+d}(c)`; the differential is kept as is.
pub fn twist_and_shift(t: &FreeEComplex, c: &Multidegree, k: i64) -> FreeEComplex {
    let mut out = FreeEComplex::new(t.ring.clone());
    for (&d, m) in &t.terms {
        out.terms.insert(d - k, m.twisted(c));
    }
    for (&d, m) in &t.diffs {
        out.diffs.insert(d - k, m.twisted(c));
    }
    out.window = (t.window.0 - k, t.window.1 - k);
    out
}

/// Degreewise maps `A^d → B^d` between two complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: FreeEComplex,
    pub target: FreeEComplex,
    pub maps: BTreeMap<i64, EMatrix>,
}

impl ChainMap {
    pub fn component(&self, d: i64) -> EMatrix {
        self.maps.get(&d).cloned().unwrap_or_else(|| EMatrix::zero(self.source.term(d), self.target.term(d)))
    }

    /// `φ^{d+1} ∘ d_A^d = d_B^d ∘ φ^d` for every degree with data.
    pub fn check(&self, ring: &Ring) -> Result<()> {
        let fp = ring.fp();
        let mut ds: Vec<i64> = self.source.terms.keys().chain(self.target.terms.keys()).copied().collect();
        ds.sort_unstable();
        ds.dedup();
        for d in ds {
            let lhs = self.component(d + 1).compose(&self.source.diff(d), fp);
            let rhs = self.target.diff(d).compose(&self.component(d), fp);
            if lhs != rhs {
                let diff = lhs.add(&rhs.neg(fp), fp);
                if !diff.is_zero() {
                    return Err(TateError::NotChainMap(format!("square at degree {d} does not commute")));
                }
            }
        }
        Ok(())
    }
}

/// Mapping cone `[A → B]`: term `B^d ⊕ A^{d+1}`, differential
/// `[[d_B, φ], [0, -d_A]]`.
pub fn cone(ring: &Ring, phi: &ChainMap) -> Result<FreeEComplex> {
    phi.check(ring)?;
    let fp = ring.fp();
    let (a, b) = (&phi.source, &phi.target);
    let mut ds: Vec<i64> = b.terms.keys().copied().chain(a.terms.keys().map(|d| d - 1)).collect();
    ds.sort_unstable();
    ds.dedup();
    let mut out = FreeEComplex::new(b.ring.clone());
    for &d in &ds {
        out.terms.insert(d, b.term(d).direct_sum(&a.term(d + 1)));
    }
    for &d in &ds {
        if !out.terms.contains_key(&(d + 1)) {
            continue;
        }
        let top = b.diff(d).hstack(&phi.component(d + 1));
        let bottom = EMatrix::zero(b.term(d), a.term(d + 2)).hstack(&a.diff(d + 1).neg(fp));
        out.diffs.insert(d, top.vstack(&bottom));
    }
    out.window = (b.window.0.min(a.window.0 - 1), b.window.1.max(a.window.1 - 1));
    out.prune();
    Ok(out)
}

/// Cancels unit entries until the differential has none left.
pub fn minimize(ring: &Ring, t: &FreeEComplex) -> FreeEComplex {
    let fp = ring.fp();
    let mut c = t.clone();
    let degrees: Vec<i64> = c.terms.keys().copied().collect();
    for d in degrees {
        while let Some((r, col, u)) =
            c.diffs.get(&d).and_then(|m| m.entries().find(|(_, _, e)| e.constant() != 0).map(|(r, c, e)| (r, c, e.constant())))
        {
            cancel_unit(&mut c, d, r, col, u, fp);
        }
    }
    c.prune();
    c
}

fn cancel_unit(c: &mut FreeEComplex, d: i64, r: usize, col: usize, u: u32, fp: Fp) {
    let m = c.diffs.remove(&d).expect("differential present");
    let uinv = fp.inv(u);
    let delta: Vec<(usize, ExteriorElement)> =
        m.column(col).iter().filter(|(i, _)| *i != r).map(|(i, e)| (*i, e.scale(uinv, fp))).collect();
    let mut updated = m.clone();
    for j in 0..m.ncols() {
        if j == col {
            continue;
        }
        let Some(gamma) = m.get(r, j) else { continue };
        for (i, di) in &delta {
            let corr = di.mul(gamma, fp);
            if corr.is_zero() {
                continue;
            }
            let cur = updated.get(*i, j).cloned().unwrap_or_default();
            updated.set(*i, j, cur.add(&corr.neg(fp), fp));
        }
    }
    let rows: Vec<usize> = (0..m.rows()).filter(|&i| i != r).collect();
    let cols: Vec<usize> = (0..m.ncols()).filter(|&j| j != col).collect();
    c.diffs.insert(d, updated.submatrix(&rows, &cols));
    if let Some(prev) = c.diffs.remove(&(d - 1)) {
        let rr: Vec<usize> = (0..prev.rows()).filter(|&i| i != col).collect();
        let cc: Vec<usize> = (0..prev.ncols()).collect();
        c.diffs.insert(d - 1, prev.submatrix(&rr, &cc));
    }
    if let Some(next) = c.diffs.remove(&(d + 1)) {
        let rr: Vec<usize> = (0..next.rows()).collect();
        let cc: Vec<usize> = (0..next.ncols()).filter(|&j| j != r).collect();
        c.diffs.insert(d + 1, next.submatrix(&rr, &cc));
    }
    if let Some(t) = c.terms.get_mut(&d) {
        t.twists.remove(col);
    }
    if let Some(t) = c.terms.get_mut(&(d + 1)) {
        t.twists.remove(r);
    }
}

// ---------------------------------------------------------------------------
// JSON

pub type ElementJson = Vec<(i64, Vec<(usize, usize)>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub d: i64,
    pub twists: Vec<Multidegree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub element: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffJson {
    pub d: i64,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ring: RingSpec,
    #[serde(default)]
    pub window: Option<(i64, i64)>,
    pub terms: Vec<TermJson>,
    #[serde(default)]
    pub differentials: Vec<DiffJson>,
}

pub fn entries_to_json(ring: &Ring, m: &EMatrix) -> Vec<EntryJson> {
    m.entries().map(|(row, col, e)| EntryJson { row, col, element: e.to_pairs(ring) }).collect()
}

pub fn matrix_from_json(ring: &Ring, source: FreeEModule, target: FreeEModule, entries: &[EntryJson]) -> Result<EMatrix> {
    let mut m = EMatrix::zero(source, target);
    for e in entries {
        if e.row >= m.rows() || e.col >= m.ncols() {
            return Err(TateError::BadInput(format!("entry ({},{}) outside the matrix", e.row, e.col)));
        }
        m.set(e.row, e.col, ExteriorElement::from_pairs(ring, &e.element)?);
    }
    m.check_degrees(ring)?;
    Ok(m)
}

impl FreeEComplex {
    pub fn to_json(&self, ring: &Ring) -> ComplexJson {
        ComplexJson {
            ring: self.ring.clone(),
            window: Some(self.window),
            terms: self.terms.iter().map(|(&d, m)| TermJson { d, twists: m.twists.clone() }).collect(),
            differentials: self
                .diffs
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(&d, m)| DiffJson { d, entries: entries_to_json(ring, m) })
                .collect(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<FreeEComplex> {
        let ring = Ring::new(j.ring.clone())?;
        let mut c = FreeEComplex::new(j.ring.clone());
        for t in &j.terms {
            for tw in &t.twists {
                j.ring.check(tw)?;
            }
            c.terms.entry(t.d).or_default().twists.extend(t.twists.iter().cloned());
        }
        for dj in &j.differentials {
            let m = matrix_from_json(&ring, c.term(dj.d), c.term(dj.d + 1), &dj.entries)?;
            c.diffs.insert(dj.d, m);
        }
        let lo = c.terms.keys().next().copied().unwrap_or(0);
        let hi = c.terms.keys().last().copied().unwrap_or(0);
        c.window = j.window.unwrap_or((lo, hi));
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraded::RingSpec;

    fn p1() -> Ring {
        Ring::new(RingSpec::product(&[1])).unwrap()
    }

    #[test]
    fn dims_of_omega() {
        let r = p1();
        let w = FreeEModule::new(vec![Multidegree::from([0])]);
        let dims: Vec<usize> = (0..3).map(|a| e_dim_in_degree(&r, &w, &Multidegree::from([a]))).collect();
        assert_eq!(dims, vec![1, 2, 1]);
        let r2 = Ring::new(RingSpec::product(&[1, 1])).unwrap();
        let w0 = FreeEModule::new(vec![Multidegree::from([0, 0])]);
        assert_eq!(e_dim_in_degree(&r2, &w0, &Multidegree::from([2, 2])), 1);
        let w1 = FreeEModule::new(vec![Multidegree::from([-1, 0])]);
        assert_eq!(e_dim_in_degree(&r2, &w1, &Multidegree::from([3, 0])), 1);
    }

    #[test]
    fn slice_of_top_monomial_map() {
        let r = p1();
        let fp = r.fp();
        let src = FreeEModule::new(vec![Multidegree::from([2])]);
        let tgt = FreeEModule::new(vec![Multidegree::from([0])]);
        let mut f = EMatrix::zero(src, tgt);
        f.set(0, 0, ExteriorElement::monomial(0b11, 1, fp));
        f.check_degrees(&r).unwrap();
        let s = degree_slice(&r, &f, &Multidegree::from([0]));
        assert_eq!((s.rows(), s.cols(), s.rank()), (1, 1, 1));
    }

    #[test]
    fn minimize_cancels_identity() {
        let r = p1();
        let m = FreeEModule::new(vec![Multidegree::from([0])]);
        let mut c = FreeEComplex::new(r.spec().clone());
        c.terms.insert(0, m.clone());
        c.terms.insert(1, m.clone());
        c.diffs.insert(0, EMatrix::identity(&m, r.fp()));
        assert!(minimize(&r, &c).is_zero());
    }

    #[test]
    fn twist_shift_moves_degree() {
        let r = Ring::new(RingSpec::product(&[1, 1])).unwrap();
        let c = FreeEComplex::single(r.spec().clone(), 0, FreeEModule::new(vec![Multidegree::from([0, 0])]));
        let s = twist_and_shift(&c, &Multidegree::from([1, 0]), -1);
        assert_eq!(s.term(1).twists, vec![Multidegree::from([1, 0])]);
        assert_eq!(twist_and_shift(&c, &Multidegree::from([0, 0]), 0), c);
    }
}
