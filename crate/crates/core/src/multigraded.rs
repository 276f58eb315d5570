//! Multidegrees, the product of projective spaces, and exterior monomials.
//!
//! Exterior variables `e_{i,j}` are numbered block-major: block `i` (0-based)
//! owns the bit positions `start_i .. start_i + n_i + 1`.  A squarefree
//! monomial is the bitmask of its variables, always read in increasing bit
//! order.  The same bitmasks index the basis tensors of `⊗ Λ W_i` used by
//! contraction.

use crate::error::{Result, TateError};
use crate::linalg::{is_prime, Fp};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

pub const DEFAULT_PRIME: u32 = 32003;

/// Largest number of exterior variables supported by the mask tables.
pub const MAX_VARS: usize = 20;

fn default_prime() -> u32 {
    DEFAULT_PRIME
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub n: Vec<usize>,
    #[serde(default = "default_prime")]
    pub p: u32,
}

impl RingSpec {
    pub fn new(n: Vec<usize>, p: u32) -> Result<Self> {
        let spec = RingSpec { n, p };
        spec.validate()?;
        Ok(spec)
    }

    /// `P^{n_1} x ... x P^{n_t}` over the default prime.
    pub fn product(n: &[usize]) -> Self {
        RingSpec::new(n.to_vec(), DEFAULT_PRIME).expect("valid ring")
    }

    pub fn validate(&self) -> Result<()> {
        if self.n.is_empty() {
            return Err(TateError::InvalidRing("at least one factor is required".into()));
        }
        if self.n.contains(&0) {
            return Err(TateError::InvalidRing("every n_i must be positive".into()));
        }
        if !is_prime(self.p) {
            return Err(TateError::InvalidRing(format!("{} is not prime", self.p)));
        }
        if self.nvars() > MAX_VARS {
            return Err(TateError::InvalidRing(format!("{} exterior variables exceed the supported {}", self.nvars(), MAX_VARS)));
        }
        Ok(())
    }

    pub fn t(&self) -> usize {
        self.n.len()
    }

    pub fn nvars(&self) -> usize {
        self.n.iter().map(|k| k + 1).sum()
    }

    /// `|n|`.
    pub fn n_total(&self) -> i64 {
        self.n.iter().map(|&k| k as i64).sum()
    }

    pub fn n_deg(&self) -> Multidegree {
        Multidegree(self.n.iter().map(|&k| k as i64).collect())
    }

    /// `n + 1^t`, the degree of the generator of `ω_E`.
    pub fn top_deg(&self) -> Multidegree {
        Multidegree(self.n.iter().map(|&k| k as i64 + 1).collect())
    }

    pub fn zero(&self) -> Multidegree {
        Multidegree::zero(self.t())
    }

    pub fn ones(&self) -> Multidegree {
        Multidegree::ones(self.t())
    }

    pub fn unit(&self, i: usize) -> Multidegree {
        Multidegree::unit(self.t(), i)
    }

    pub fn check(&self, a: &Multidegree) -> Result<()> {
        if a.len() != self.t() {
            return Err(TateError::LengthMismatch { expected: self.t(), found: a.len() });
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(pub Vec<i64>);

impl Multidegree {
    pub fn new(v: Vec<i64>) -> Self {
        Multidegree(v)
    }

    pub fn zero(t: usize) -> Self {
        Multidegree(vec![0; t])
    }

    pub fn ones(t: usize) -> Self {
        Multidegree(vec![1; t])
    }

    pub fn unit(t: usize, i: usize) -> Self {
        let mut v = vec![0; t];
        v[i] = 1;
        Multidegree(v)
    }

    pub fn splat(t: usize, k: i64) -> Self {
        Multidegree(vec![k; t])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Termwise `self ≤ other`; lengths must agree.
    pub fn le(&self, other: &Multidegree) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Termwise `self < other` in every coordinate.
    pub fn lt_all(&self, other: &Multidegree) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a < b)
    }

    pub fn ge(&self, other: &Multidegree) -> bool {
        other.le(self)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn scale(&self, k: i64) -> Multidegree {
        Multidegree(self.0.iter().map(|a| a * k).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Index<usize> for Multidegree {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<Vec<i64>> for Multidegree {
    fn from(v: Vec<i64>) -> Self {
        Multidegree(v)
    }
}

impl<const N: usize> From<[i64; N]> for Multidegree {
    fn from(v: [i64; N]) -> Self {
        Multidegree(v.to_vec())
    }
}

impl Add for &Multidegree {
    type Output = Multidegree;
    fn add(self, o: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.len(), o.len());
        Multidegree(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Multidegree {
    type Output = Multidegree;
    fn sub(self, o: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.len(), o.len());
        Multidegree(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Multidegree {
    type Output = Multidegree;
    fn add(self, o: Multidegree) -> Multidegree {
        &self + &o
    }
}

impl Sub for Multidegree {
    type Output = Multidegree;
    fn sub(self, o: Multidegree) -> Multidegree {
        &self - &o
    }
}

impl Neg for &Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        Multidegree(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        -&self
    }
}

pub fn md_total(a: &Multidegree) -> i64 {
    a.total()
}

pub fn md_leq(a: &Multidegree, b: &Multidegree) -> Result<bool> {
    if a.len() != b.len() {
        return Err(TateError::LengthMismatch { expected: a.len(), found: b.len() });
    }
    Ok(a.le(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBox {
    pub lo: Multidegree,
    pub hi: Multidegree,
}

impl DegreeBox {
    pub fn new(lo: Multidegree, hi: Multidegree) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(TateError::LengthMismatch { expected: lo.len(), found: hi.len() });
        }
        if !lo.le(&hi) {
            return Err(TateError::BadInput(format!("box lower corner {lo} exceeds {hi}")));
        }
        Ok(DegreeBox { lo, hi })
    }

    pub fn contains(&self, a: &Multidegree) -> bool {
        self.lo.le(a) && a.le(&self.hi)
    }

    /// Every point of the box in lexicographic order.
    pub fn points(&self) -> Vec<Multidegree> {
        box_points(&self.lo, &self.hi)
    }
}

/// All integer points `lo ≤ x ≤ hi`, lexicographically ordered.
pub fn box_points(lo: &Multidegree, hi: &Multidegree) -> Vec<Multidegree> {
    if !lo.le(hi) {
        return Vec::new();
    }
    let t = lo.len();
    let mut out = Vec::new();
    let mut cur = lo.0.clone();
    loop {
        out.push(Multidegree(cur.clone()));
        let mut i = t;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                for j in i + 1..t {
                    cur[j] = lo[j];
                }
                break;
            }
        }
    }
}

/// Precomputed exterior-algebra tables for one [`RingSpec`].
#[derive(Clone, Debug)]
pub struct Ring {
    spec: RingSpec,
    fp: Fp,
    var_block: Vec<usize>,
    block_start: Vec<usize>,
    block_mask: Vec<u32>,
    radix: Vec<usize>,
    monos: Vec<Vec<u32>>,
    pos: Vec<u32>,
    top: u32,
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Self> {
        spec.validate()?;
        let nv = spec.nvars();
        let mut var_block = Vec::with_capacity(nv);
        let mut block_start = Vec::with_capacity(spec.t());
        let mut block_mask = Vec::with_capacity(spec.t());
        for (i, &k) in spec.n.iter().enumerate() {
            let start = var_block.len();
            block_start.push(start);
            block_mask.push((((1u64 << (k + 1)) - 1) << start) as u32);
            var_block.extend(std::iter::repeat_n(i, k + 1));
        }
        let radix: Vec<usize> = spec.n.iter().map(|k| k + 2).collect();
        let ncodes: usize = radix.iter().product();
        let mut monos = vec![Vec::new(); ncodes];
        let mut pos = vec![0u32; 1usize << nv];
        for mask in 0u32..(1u32 << nv) {
            let code = Self::code_of(&radix, &block_mask, mask);
            pos[mask as usize] = monos[code].len() as u32;
            monos[code].push(mask);
        }
        let top = ((1u64 << nv) - 1) as u32;
        Ok(Ring { fp: Fp::new(spec.p), spec, var_block, block_start, block_mask, radix, monos, pos, top })
    }

    fn code_of(radix: &[usize], block_mask: &[u32], mask: u32) -> usize {
        let mut code = 0;
        for (r, bm) in radix.iter().zip(block_mask) {
            code = code * r + (mask & bm).count_ones() as usize;
        }
        code
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn t(&self) -> usize {
        self.spec.t()
    }

    pub fn nvars(&self) -> usize {
        self.var_block.len()
    }

    /// The product of all exterior variables.
    pub fn top_mask(&self) -> u32 {
        self.top
    }

    pub fn block_mask(&self, i: usize) -> u32 {
        self.block_mask[i]
    }

    /// Bit position of `e_{i,j}`.
    pub fn var(&self, i: usize, j: usize) -> usize {
        debug_assert!(j <= self.spec.n[i]);
        self.block_start[i] + j
    }

    /// `(block, index)` of the variable at bit position `v`.
    pub fn var_pair(&self, v: usize) -> (usize, usize) {
        let i = self.var_block[v];
        (i, v - self.block_start[i])
    }

    /// Index into the monomial tables for block counts `k`, if `0 ≤ k ≤ n+1`.
    pub fn counts_code(&self, k: &[i64]) -> Option<usize> {
        let mut code = 0usize;
        for (i, &c) in k.iter().enumerate() {
            if c < 0 || c > self.spec.n[i] as i64 + 1 {
                return None;
            }
            code = code * self.radix[i] + c as usize;
        }
        Some(code)
    }

    /// Monomials with the given block counts, i.e. a basis of `E_{-k}`.
    pub fn monomials_with_counts(&self, k: &[i64]) -> &[u32] {
        match self.counts_code(k) {
            Some(c) => &self.monos[c],
            None => &[],
        }
    }

    pub fn monomials_by_code(&self, code: usize) -> &[u32] {
        &self.monos[code]
    }

    /// Monomials of multidegree `d` (so block counts `-d`).
    pub fn monomials_of_degree(&self, d: &Multidegree) -> &[u32] {
        let k: Vec<i64> = d.0.iter().map(|x| -x).collect();
        self.monomials_with_counts(&k)
    }

    /// Position of a monomial inside its block-count class.
    #[inline]
    pub fn index_of(&self, mask: u32) -> usize {
        self.pos[mask as usize] as usize
    }

    pub fn mask_counts(&self, mask: u32) -> Vec<i64> {
        self.block_mask.iter().map(|bm| (mask & bm).count_ones() as i64).collect()
    }

    pub fn mask_degree(&self, mask: u32) -> Multidegree {
        Multidegree(self.block_mask.iter().map(|bm| -((mask & bm).count_ones() as i64)).collect())
    }

    /// `dim E_d`.
    pub fn e_dim(&self, d: &Multidegree) -> usize {
        self.monomials_of_degree(d).len()
    }
}

/// Product of two monomials: `None` if they share a variable, else the
/// union together with the sign `true` for `-1`.
#[inline]
pub fn mono_mul(u: u32, v: u32) -> Option<(u32, bool)> {
    if u & v != 0 {
        return None;
    }
    let mut parity = 0u32;
    let mut w = v;
    while w != 0 {
        let y = w.trailing_zeros();
        let above = if y >= 31 { 0 } else { u >> (y + 1) };
        parity ^= above.count_ones() & 1;
        w &= w - 1;
    }
    Some((u | v, parity == 1))
}

/// Reversal sign `(-1)^{k(k-1)/2}` of a monomial of length `k`.
#[inline]
pub fn reversal_negative(mask: u32) -> bool {
    let k = mask.count_ones();
    (k * (k.saturating_sub(1)) / 2) % 2 == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExteriorMonomial(pub u32);

impl ExteriorMonomial {
    pub fn one() -> Self {
        ExteriorMonomial(0)
    }

    /// Builds `e_{i1,j1} ... e_{ik,jk}` in the given order; returns the sign
    /// needed to sort it, or `None` when a variable repeats.
    pub fn from_pairs(ring: &Ring, pairs: &[(usize, usize)]) -> Result<Option<(Self, bool)>> {
        let mut mask = 0u32;
        let mut neg = false;
        for &(i, j) in pairs {
            if i >= ring.t() || j > ring.spec().n[i] {
                return Err(TateError::BadInput(format!("no exterior variable e_({i},{j})")));
            }
            match mono_mul(mask, 1 << ring.var(i, j)) {
                None => return Ok(None),
                Some((m, s)) => {
                    mask = m;
                    neg ^= s;
                }
            }
        }
        Ok(Some((ExteriorMonomial(mask), neg)))
    }

    pub fn pairs(self, ring: &Ring) -> Vec<(usize, usize)> {
        (0..ring.nvars()).filter(|v| self.0 >> v & 1 == 1).map(|v| ring.var_pair(v)).collect()
    }

    pub fn degree(self, ring: &Ring) -> Multidegree {
        ring.mask_degree(self.0)
    }
}

/// A homogeneous element of `E`, terms sorted by monomial mask.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    terms: Vec<(u32, u32)>,
}

impl ExteriorElement {
    pub fn zero() -> Self {
        ExteriorElement { terms: Vec::new() }
    }

    pub fn scalar(c: u32, fp: Fp) -> Self {
        Self::monomial(0, c, fp)
    }

    pub fn monomial(mask: u32, c: u32, fp: Fp) -> Self {
        let c = c % fp.p();
        if c == 0 {
            Self::zero()
        } else {
            ExteriorElement { terms: vec![(mask, c)] }
        }
    }

    /// Collects `(mask, coefficient)` pairs, merging repeats and dropping zeros.
    pub fn from_terms(mut terms: Vec<(u32, u32)>, fp: Fp) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = fp.add(last.1, c),
                _ => out.push((m, c % fp.p())),
            }
        }
        out.retain(|t| t.1 != 0);
        ExteriorElement { terms: out }
    }

    /// Element from signed coefficients and variable-pair lists.
    pub fn from_pairs(ring: &Ring, terms: &[(i64, Vec<(usize, usize)>)]) -> Result<Self> {
        let fp = ring.fp();
        let mut out = Vec::new();
        for (c, pairs) in terms {
            if let Some((m, neg)) = ExteriorMonomial::from_pairs(ring, pairs)? {
                let c = fp.from_i64(*c);
                out.push((m.0, if neg { fp.neg(c) } else { c }));
            }
        }
        let e = Self::from_terms(out, fp);
        if e.degree(ring).is_none() && !e.is_zero() {
            return Err(TateError::BadInput("exterior element is not homogeneous".into()));
        }
        Ok(e)
    }

    /// Single variable `e_{i,j}`.
    pub fn var(ring: &Ring, i: usize, j: usize) -> Self {
        Self::monomial(1 << ring.var(i, j), 1, ring.fp())
    }

    pub fn terms(&self) -> &[(u32, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multidegree, or `None` for zero and for inhomogeneous input.
    pub fn degree(&self, ring: &Ring) -> Option<Multidegree> {
        let first = ring.mask_degree(self.terms.first()?.0);
        for (m, _) in &self.terms[1..] {
            if ring.mask_degree(*m) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Number of variables in each term (equal for homogeneous elements).
    pub fn total_length(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.count_ones())
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0
    }

    /// Coefficient of the empty monomial.
    pub fn constant(&self) -> u32 {
        match self.terms.first() {
            Some(&(0, c)) => c,
            _ => 0,
        }
    }

    pub fn add(&self, o: &ExteriorElement, fp: Fp) -> ExteriorElement {
        let mut v = self.terms.clone();
        v.extend_from_slice(&o.terms);
        Self::from_terms(v, fp)
    }

    pub fn scale(&self, c: u32, fp: Fp) -> ExteriorElement {
        let c = c % fp.p();
        if c == 0 {
            return Self::zero();
        }
        ExteriorElement { terms: self.terms.iter().map(|&(m, a)| (m, fp.mul(a, c))).collect() }
    }

    pub fn neg(&self, fp: Fp) -> ExteriorElement {
        ExteriorElement { terms: self.terms.iter().map(|&(m, a)| (m, fp.neg(a))).collect() }
    }

    pub fn mul(&self, o: &ExteriorElement, fp: Fp) -> ExteriorElement {
        let mut out = Vec::new();
        for &(u, a) in &self.terms {
            for &(v, b) in &o.terms {
                if let Some((w, neg)) = mono_mul(u, v) {
                    let c = fp.mul(a, b);
                    out.push((w, if neg { fp.neg(c) } else { c }));
                }
            }
        }
        Self::from_terms(out, fp)
    }

    /// Image under the reversal anti-automorphism.
    pub fn reversed(&self, fp: Fp) -> ExteriorElement {
        ExteriorElement {
            terms: self.terms.iter().map(|&(m, c)| (m, if reversal_negative(m) { fp.neg(c) } else { c })).collect(),
        }
    }

    /// Signed integer form `[(coeff, [(i,j),..]),..]` for serialization.
    pub fn to_pairs(&self, ring: &Ring) -> Vec<(i64, Vec<(usize, usize)>)> {
        self.terms.iter().map(|&(m, c)| (ring.fp().to_i64(c), ExteriorMonomial(m).pairs(ring))).collect()
    }
}

pub fn ext_mul(u: &ExteriorElement, v: &ExteriorElement, fp: Fp) -> ExteriorElement {
    u.mul(v, fp)
}

/// `e_v ⌟ w` for one variable: removes `v` from the basis tensor `w` with
/// the sign of the number of tensor factors in front of it.
#[inline]
pub fn contract_var(v: usize, w: u32) -> Option<(u32, bool)> {
    if w >> v & 1 == 0 {
        return None;
    }
    let below = w & ((1u32 << v) - 1);
    Some((w & !(1 << v), below.count_ones() % 2 == 1))
}

/// Contraction of a basis tensor by a monomial, rightmost variable first.
pub fn contract_monomial(m: u32, w: u32) -> Option<(u32, bool)> {
    let mut cur = w;
    let mut neg = false;
    let mut rest = m;
    while rest != 0 {
        let v = 31 - rest.leading_zeros() as usize;
        let (nw, s) = contract_var(v, cur)?;
        cur = nw;
        neg ^= s;
        rest &= !(1 << v);
    }
    Some((cur, neg))
}

/// `e ⌟ w`, expanded on basis tensors `(mask, coefficient)`.
pub fn contract(e: &ExteriorElement, w: u32, fp: Fp) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for &(m, c) in e.terms() {
        if let Some((r, neg)) = contract_monomial(m, w) {
            out.push((r, if neg { fp.neg(c) } else { c }));
        }
    }
    ExteriorElement::from_terms(out, fp).terms
}
