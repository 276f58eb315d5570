//! Finitely presented multigraded modules over the Cox ring `S`, with graded
//! pieces computed by linear algebra on monomial bases.

use crate::error::{Result, TateError};
use crate::linalg::{Fp, MatrixFp, RowSpace};
use crate::multigraded::{Multidegree, RingSpec};
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// Exponent vector over all variables, block-major.
pub type SMonomial = Vec<u32>;

/// A polynomial as `(coefficient, exponents)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial(pub Vec<(i64, SMonomial)>);

impl Polynomial {
    pub fn monomial(coeff: i64, exps: SMonomial) -> Self {
        Polynomial(vec![(coeff, exps)])
    }

    pub fn one(spec: &RingSpec) -> Self {
        Polynomial(vec![(1, vec![0; spec.nvars()])])
    }

    /// Single variable `x_{i,j}`.
    pub fn var(spec: &RingSpec, i: usize, j: usize) -> Self {
        let mut e = vec![0; spec.nvars()];
        e[var_index(spec, i, j)] = 1;
        Polynomial(vec![(1, e)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|t| t.0 == 0)
    }

    /// Common multidegree of the terms, or an error for mixed degrees.
    pub fn degree(&self, spec: &RingSpec) -> Result<Option<Multidegree>> {
        let mut deg: Option<Multidegree> = None;
        for (c, e) in &self.0 {
            if *c == 0 {
                continue;
            }
            if e.len() != spec.nvars() {
                return Err(TateError::LengthMismatch { expected: spec.nvars(), found: e.len() });
            }
            let d = monomial_degree(spec, e);
            match &deg {
                None => deg = Some(d),
                Some(d0) if *d0 == d => {}
                Some(d0) => return Err(TateError::BadInput(format!("inhomogeneous polynomial: degrees {d0} and {d}"))),
            }
        }
        Ok(deg)
    }
}

pub fn var_index(spec: &RingSpec, i: usize, j: usize) -> usize {
    spec.n[..i].iter().map(|k| k + 1).sum::<usize>() + j
}

pub fn monomial_degree(spec: &RingSpec, e: &[u32]) -> Multidegree {
    let mut out = Vec::with_capacity(spec.t());
    let mut pos = 0;
    for &k in &spec.n {
        out.push(e[pos..pos + k + 1].iter().map(|&x| x as i64).sum());
        pos += k + 1;
    }
    Multidegree(out)
}

fn mono_mul(a: &[u32], b: &[u32]) -> SMonomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All monomials of multidegree `v` in a fixed deterministic order.
pub fn s_monomials(spec: &RingSpec, v: &Multidegree) -> Vec<SMonomial> {
    if v.0.iter().any(|&x| x < 0) {
        return Vec::new();
    }
    let blocks: Vec<Vec<Vec<u32>>> = spec.n.iter().zip(&v.0).map(|(&k, &d)| compositions(d as u32, k + 1)).collect();
    let mut out: Vec<SMonomial> = vec![Vec::new()];
    for b in blocks {
        let mut next = Vec::with_capacity(out.len() * b.len());
        for prefix in &out {
            for c in &b {
                let mut m = prefix.clone();
                m.extend_from_slice(c);
                next.push(m);
            }
        }
        out = next;
    }
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// `dim S_v = ∏ C(v_i + n_i, n_i)`.
pub fn s_dim(spec: &RingSpec, v: &Multidegree) -> usize {
    if v.0.iter().any(|&x| x < 0) {
        return 0;
    }
    spec.n.iter().zip(&v.0).map(|(&k, &d)| binomial(d as u64 + k as u64, k as u64) as usize).product()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// One relation: `Σ_k f_k · g_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SRelation(pub Vec<(usize, Polynomial)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SPresentation {
    pub ring: RingSpec,
    pub generators: Vec<Multidegree>,
    #[serde(default)]
    pub relations: Vec<SRelation>,
}

impl SPresentation {
    pub fn new(ring: RingSpec, generators: Vec<Multidegree>, relations: Vec<SRelation>) -> Result<Self> {
        let p = SPresentation { ring, generators, relations };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.ring.validate()?;
        for g in &self.generators {
            self.ring.check(g)?;
        }
        for r in &self.relations {
            self.relation_degree(r)?;
        }
        Ok(())
    }

    /// Degree of a relation; all of its terms must agree.
    pub fn relation_degree(&self, r: &SRelation) -> Result<Option<Multidegree>> {
        let mut deg: Option<Multidegree> = None;
        for (k, f) in &r.0 {
            let g = self.generators.get(*k).ok_or_else(|| TateError::BadInput(format!("relation refers to generator {k}")))?;
            if let Some(d) = f.degree(&self.ring)? {
                let total = &d + g;
                match &deg {
                    None => deg = Some(total),
                    Some(d0) if *d0 == total => {}
                    Some(d0) => return Err(TateError::BadInput(format!("inhomogeneous relation: degrees {d0} and {total}"))),
                }
            }
        }
        Ok(deg)
    }

    pub fn fp(&self) -> Fp {
        Fp::new(self.ring.p)
    }

    /// Twist `M(b)`, i.e. `M(b)_a = M_{a+b}`.
    pub fn twisted(&self, b: &Multidegree) -> SPresentation {
        SPresentation {
            ring: self.ring.clone(),
            generators: self.generators.iter().map(|g| g - b).collect(),
            relations: self.relations.clone(),
        }
    }

    /// Direct sum of two presentations over the same ring.
    pub fn direct_sum(&self, other: &SPresentation) -> SPresentation {
        let shift = self.generators.len();
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        let mut rels = self.relations.clone();
        rels.extend(other.relations.iter().map(|r| SRelation(r.0.iter().map(|(k, f)| (k + shift, f.clone())).collect())));
        SPresentation { ring: self.ring.clone(), generators: gens, relations: rels }
    }
}

/// `⊕ S(c_k)`: free module with generators in degrees `-c_k`.
pub fn line_bundle_sum(ring: &RingSpec, twists: &[Multidegree]) -> SPresentation {
    SPresentation { ring: ring.clone(), generators: twists.iter().map(|c| -c).collect(), relations: Vec::new() }
}

/// `S / (m_1, …, m_r)` for monomials given by exponent vectors.
pub fn monomial_quotient(ring: &RingSpec, monomials: &[SMonomial]) -> SPresentation {
    SPresentation {
        ring: ring.clone(),
        generators: vec![ring.zero()],
        relations: monomials.iter().map(|m| SRelation(vec![(0, Polynomial::monomial(1, m.clone()))])).collect(),
    }
}

/// Basis of `M_a` as cosets of ambient monomials `m·g_k`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: Multidegree,
    /// Ambient basis: generator index and monomial.
    pub ambient: Vec<(usize, SMonomial)>,
    index: HashMap<(usize, SMonomial), usize>,
    relations: RowSpace,
    /// Ambient positions whose cosets form the chosen basis.
    pub basis: Vec<usize>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn ambient_index(&self, gen: usize, mono: &SMonomial) -> Option<usize> {
        self.index.get(&(gen, mono.clone())).copied()
    }

    /// Coordinates in the chosen basis of an ambient vector.
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        let r = self.relations.reduce(v);
        self.basis.iter().map(|&i| r[i]).collect()
    }

    /// The basis elements as `(generator, monomial)` pairs.
    pub fn basis_elements(&self) -> Vec<(usize, SMonomial)> {
        self.basis.iter().map(|&i| self.ambient[i].clone()).collect()
    }
}

pub fn s_graded_piece(m: &SPresentation, a: &Multidegree) -> GradedPiece {
    let spec = &m.ring;
    let fp = m.fp();
    let mut ambient = Vec::new();
    for (k, g) in m.generators.iter().enumerate() {
        for mono in s_monomials(spec, &(a - g)) {
            ambient.push((k, mono));
        }
    }
    let index: HashMap<(usize, SMonomial), usize> = ambient.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut rs = RowSpace::new(ambient.len(), fp);
    for r in &m.relations {
        let Ok(Some(d)) = m.relation_degree(r) else { continue };
        for u in s_monomials(spec, &(a - &d)) {
            let mut v = vec![0u32; ambient.len()];
            for (k, f) in &r.0 {
                for (c, e) in &f.0 {
                    if *c == 0 {
                        continue;
                    }
                    let key = (*k, mono_mul(&u, e));
                    if let Some(&i) = index.get(&key) {
                        v[i] = fp.add(v[i], fp.from_i64(*c));
                    }
                }
            }
            rs.insert(&v);
            if rs.dim() == ambient.len() {
                break;
            }
        }
        if rs.dim() == ambient.len() {
            break;
        }
    }
    let mut is_piv = vec![false; ambient.len()];
    for p in rs.pivots() {
        is_piv[*p] = true;
    }
    let basis = (0..ambient.len()).filter(|&i| !is_piv[i]).collect();
    GradedPiece { degree: a.clone(), ambient, index, relations: rs, basis }
}

/// Matrix of `·x_{i,j}: M_a → M_{a+1_i}` in the chosen bases.
pub fn s_mult_map(m: &SPresentation, a: &Multidegree, i: usize, j: usize) -> MatrixFp {
    let src = s_graded_piece(m, a);
    let tgt = s_graded_piece(m, &(a + &m.ring.unit(i)));
    mult_between(m, &src, &tgt, i, j)
}

fn mult_between(m: &SPresentation, src: &GradedPiece, tgt: &GradedPiece, i: usize, j: usize) -> MatrixFp {
    let fp = m.fp();
    let v = var_index(&m.ring, i, j);
    let mut out = MatrixFp::zeros(tgt.dim(), src.dim(), fp);
    for (col, (k, mono)) in src.basis_elements().into_iter().enumerate() {
        let mut mm = mono.clone();
        mm[v] += 1;
        let mut vec = vec![0u32; tgt.ambient_dim()];
        if let Some(idx) = tgt.ambient_index(k, &mm) {
            vec[idx] = 1;
        }
        for (row, c) in tgt.coordinates(&vec).into_iter().enumerate() {
            out.set(row, col, c);
        }
    }
    out
}

/// Graded pieces and multiplication maps of one module, computed on demand
/// and memoized.
pub struct SModule<'a> {
    pub pres: &'a SPresentation,
    pieces: RefCell<HashMap<Multidegree, Rc<GradedPiece>>>,
    mults: RefCell<HashMap<(Multidegree, usize, usize), Rc<MatrixFp>>>,
}

impl<'a> SModule<'a> {
    pub fn new(pres: &'a SPresentation) -> Self {
        SModule { pres, pieces: RefCell::new(HashMap::new()), mults: RefCell::new(HashMap::new()) }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.pres.ring
    }

    pub fn piece(&self, a: &Multidegree) -> Rc<GradedPiece> {
        if let Some(p) = self.pieces.borrow().get(a) {
            return p.clone();
        }
        let p = Rc::new(s_graded_piece(self.pres, a));
        self.pieces.borrow_mut().insert(a.clone(), p.clone());
        p
    }

    pub fn dim(&self, a: &Multidegree) -> usize {
        self.piece(a).dim()
    }

    pub fn mult(&self, a: &Multidegree, i: usize, j: usize) -> Rc<MatrixFp> {
        let key = (a.clone(), i, j);
        if let Some(m) = self.mults.borrow().get(&key) {
            return m.clone();
        }
        let src = self.piece(a);
        let tgt = self.piece(&(a + &self.pres.ring.unit(i)));
        let m = Rc::new(mult_between(self.pres, &src, &tgt, i, j));
        self.mults.borrow_mut().insert(key, m.clone());
        m
    }

    /// Elements of `M_a` killed by every variable.
    pub fn socle_dim(&self, a: &Multidegree) -> usize {
        let spec = self.spec();
        let d = self.dim(a);
        if d == 0 {
            return 0;
        }
        let mut stacked: Vec<Vec<u32>> = Vec::new();
        for i in 0..spec.t() {
            for j in 0..=spec.n[i] {
                let m = self.mult(a, i, j);
                for r in 0..m.rows() {
                    stacked.push(m.row(r).to_vec());
                }
            }
        }
        if stacked.is_empty() {
            return d;
        }
        let rows: Vec<Vec<i64>> = stacked.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        d - MatrixFp::from_rows(&rows, self.pres.fp()).rank()
    }
}

/// Degree-preserving map between presented modules: the image of each
/// source generator as an element of the target's ambient free module.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SMap {
    pub images: Vec<SRelation>,
}

impl SMap {
    /// Matrix of the induced map `M_a → N_a`.
    pub fn graded_matrix(&self, src: &SModule, tgt: &SModule, a: &Multidegree) -> MatrixFp {
        let fp = src.pres.fp();
        let ps = src.piece(a);
        let pt = tgt.piece(a);
        let mut out = MatrixFp::zeros(pt.dim(), ps.dim(), fp);
        for (col, (k, mono)) in ps.basis_elements().into_iter().enumerate() {
            let mut v = vec![0u32; pt.ambient_dim()];
            if let Some(img) = self.images.get(k) {
                for (l, f) in &img.0 {
                    for (c, e) in &f.0 {
                        if let Some(idx) = pt.ambient_index(*l, &mono_mul(&mono, e)) {
                            v[idx] = fp.add(v[idx], fp.from_i64(*c));
                        }
                    }
                }
            }
            for (row, c) in pt.coordinates(&v).into_iter().enumerate() {
                out.set(row, col, c);
            }
        }
        out
    }

    /// Each image must have the degree of its source generator.
    pub fn check(&self, src: &SPresentation, tgt: &SPresentation) -> Result<()> {
        if self.images.len() != src.generators.len() {
            return Err(TateError::LengthMismatch { expected: src.generators.len(), found: self.images.len() });
        }
        for (k, img) in self.images.iter().enumerate() {
            if let Some(d) = tgt.relation_degree(img)? {
                if d != src.generators[k] {
                    return Err(TateError::BadInput(format!(
                        "map sends generator {k} of degree {} to degree {d}",
                        src.generators[k]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Bounded complex of presented modules, `M^p → M^{p+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SComplex {
    pub ring: RingSpec,
    pub modules: BTreeMap<i64, SPresentation>,
    #[serde(default)]
    pub maps: BTreeMap<i64, SMap>,
}

impl SComplex {
    pub fn single(m: SPresentation, p: i64) -> SComplex {
        let ring = m.ring.clone();
        let mut modules = BTreeMap::new();
        modules.insert(p, m);
        SComplex { ring, modules, maps: BTreeMap::new() }
    }

    pub fn validate(&self) -> Result<()> {
        for m in self.modules.values() {
            if m.ring != self.ring {
                return Err(TateError::InvalidRing("modules of a complex must share the ring".into()));
            }
            m.validate()?;
        }
        for (p, f) in &self.maps {
            let (Some(a), Some(b)) = (self.modules.get(p), self.modules.get(&(p + 1))) else {
                return Err(TateError::BadInput(format!("map at {p} has no source or target")));
            };
            f.check(a, b)?;
        }
        Ok(())
    }

    pub fn is_single(&self) -> bool {
        self.modules.len() == 1 && self.maps.is_empty()
    }

    pub fn range(&self) -> (i64, i64) {
        let lo = self.modules.keys().next().copied().unwrap_or(0);
        let hi = self.modules.keys().last().copied().unwrap_or(0);
        (lo, hi)
    }

    /// `d^{p+1} ∘ d^p = 0` on the graded pieces of one degree.
    pub fn check_at(&self, a: &Multidegree) -> Result<()> {
        let mods: BTreeMap<i64, SModule> = self.modules.iter().map(|(p, m)| (*p, SModule::new(m))).collect();
        for (p, f) in &self.maps {
            if let Some(g) = self.maps.get(&(p + 1)) {
                let m1 = f.graded_matrix(&mods[p], &mods[&(p + 1)], a);
                let m2 = g.graded_matrix(&mods[&(p + 1)], &mods[&(p + 2)], a);
                if !m2.mul(&m1).is_zero() {
                    return Err(TateError::NotChainMap(format!("module maps at {p} compose to nonzero in degree {a}")));
                }
            }
        }
        Ok(())
    }
}
