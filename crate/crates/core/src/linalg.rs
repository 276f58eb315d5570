//! Dense matrices over a prime field.
//!
//! Elimination keeps the working copy in `u64` and postpones the modular
//! reduction of a row until it becomes a pivot row.  Every update adds a
//! product of two reduced residues, so a row can absorb billions of
//! updates before it could overflow.

use crate::error::{Result, TateError};
use serde::{Deserialize, Serialize};

/// Scalars of the prime field `F_p`, stored as residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        Fp { p }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + (self.p - b % self.p) as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse by Fermat; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn to_i64(self, a: u32) -> i64 {
        let a = (a % self.p) as i64;
        if a > self.p as i64 / 2 {
            a - self.p as i64
        } else {
            a
        }
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }
}

/// Trial division primality check for the modulus.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFp {
    rows: usize,
    cols: usize,
    fp: Fp,
    data: Vec<u32>,
}

impl MatrixFp {
    pub fn zeros(rows: usize, cols: usize, fp: Fp) -> Self {
        MatrixFp { rows, cols, fp, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, fp: Fp) -> Self {
        let mut m = Self::zeros(n, n, fp);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>], fp: Fp) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c, fp);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = fp.from_i64(v);
            }
        }
        m
    }

    pub fn from_columns(cols: &[Vec<u32>], nrows: usize, fp: Fp) -> Self {
        let mut m = Self::zeros(nrows, cols.len(), fp);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.data[i * cols.len() + j] = v % fp.p();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.fp.p();
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = self.fp.add(self.data[k], v);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut t = MatrixFp::zeros(self.cols, self.rows, self.fp);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.fp.p() as u64;
        let mut acc = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let out = &mut acc[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out.iter_mut().zip(brow) {
                    *o += a * b as u64;
                }
                if k % 1024 == 1023 {
                    out.iter_mut().for_each(|x| *x %= p);
                }
            }
        }
        MatrixFp { rows: self.rows, cols: other.cols, fp: self.fp, data: acc.into_iter().map(|x| (x % p) as u32).collect() }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.fp.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s = self.row(i).iter().zip(v).fold(0u64, |s, (&a, &b)| (s + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut m = MatrixFp::zeros(self.rows, cols, self.fp);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut work = self.widen();
        eliminate(&mut work, self.rows, self.cols, self.fp, false).len()
    }

    /// Reduced row echelon form and the strictly increasing pivot columns.
    pub fn rref(&self) -> (MatrixFp, Vec<usize>) {
        let mut work = self.widen();
        let piv = eliminate(&mut work, self.rows, self.cols, self.fp, true);
        let data = work.into_iter().map(|x| self.fp.reduce(x)).collect();
        (MatrixFp { rows: self.rows, cols: self.cols, fp: self.fp, data }, piv)
    }

    /// Columns spanning the null space, one per free column of the echelon form.
    pub fn kernel_basis(&self) -> MatrixFp {
        let (r, piv) = self.rref();
        let free: Vec<usize> = {
            let mut is_piv = vec![false; self.cols];
            piv.iter().for_each(|&j| is_piv[j] = true);
            (0..self.cols).filter(|&j| !is_piv[j]).collect()
        };
        let mut k = MatrixFp::zeros(self.cols, free.len(), self.fp);
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, 1);
            for (row, &pc) in piv.iter().enumerate() {
                let v = r.get(row, f);
                if v != 0 {
                    k.set(pc, col, self.fp.neg(v));
                }
            }
        }
        k
    }

    /// `L` with `L * self = I`, for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<MatrixFp> {
        let aug = self.hcat(&MatrixFp::identity(self.rows, self.fp));
        let (r, piv) = aug.rref();
        if piv.len() < self.cols || piv[..self.cols].iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        let mut out = MatrixFp::zeros(self.cols, self.rows, self.fp);
        for i in 0..self.cols {
            for j in 0..self.rows {
                out.set(i, j, r.get(i, self.cols + j));
            }
        }
        Some(out)
    }

    /// A solution of `self * x = b`, or `NoSolution`.
    pub fn solve(&self, b: &[u32]) -> Result<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hcat(&MatrixFp::from_columns(&[b.to_vec()], self.rows, self.fp));
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return Err(TateError::NoSolution);
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in piv.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Ok(x)
    }

    fn widen(&self) -> Vec<u64> {
        self.data.iter().map(|&x| x as u64).collect()
    }
}

/// In-place Gaussian elimination on a lazily reduced `u64` buffer.
///
/// Pivot rows are moved to the top, reduced, and scaled to a leading one.
/// With `full` the entries above each pivot are cleared as well.
fn eliminate(m: &mut [u64], rows: usize, cols: usize, fp: Fp, full: bool) -> Vec<usize> {
    let p = fp.p() as u64;
    let mut pivots = Vec::new();
    let mut r = 0usize;
    let mut pivot_row = vec![0u32; cols];
    for j in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| !m[i * cols + j].is_multiple_of(p)) else {
            continue;
        };
        if i != r {
            for k in j..cols {
                m.swap(i * cols + k, r * cols + k);
            }
        }
        let inv = fp.inv((m[r * cols + j] % p) as u32) as u64;
        for k in j..cols {
            let v = (m[r * cols + k] % p) * inv % p;
            m[r * cols + k] = v;
            pivot_row[k] = v as u32;
        }
        let src = &pivot_row[j..cols];
        let targets = if full { 0..rows } else { r + 1..rows };
        for i in targets {
            if i == r {
                continue;
            }
            let f = m[i * cols + j] % p;
            if f == 0 {
                continue;
            }
            let g = (p - f) as u32 as u64;
            let dst = &mut m[i * cols + j..(i + 1) * cols];
            for (d, &s) in dst.iter_mut().zip(src) {
                *d += g * s as u64;
            }
        }
        pivots.push(j);
        r += 1;
    }
    pivots
}

/// Incrementally maintained row space in semi-echelon form.
///
/// Stored rows are reduced, have a leading one at their pivot, and vanish
/// at the pivots of every earlier row, so a vector is reduced by a single
/// pass over the rows in insertion order.
#[derive(Clone, Debug)]
pub struct RowSpace {
    fp: Fp,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(cols: usize, fp: Fp) -> Self {
        RowSpace { fp, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Remainder of `v` after reduction against the stored rows.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.fp.p() as u64;
        let mut acc: Vec<u64> = v.iter().map(|&x| x as u64).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = acc[pc] % p;
            if f == 0 {
                continue;
            }
            let g = (p - f) as u32 as u64;
            for (a, &s) in acc[pc..].iter_mut().zip(&row[pc..]) {
                *a += g * s as u64;
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether it enlarged the space.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.fp.inv(r[pc]);
        r.iter_mut().for_each(|x| *x = self.fp.mul(*x, inv));
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    /// Pivot column of each stored row, in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_rank_one_matrix_over_f5() {
        let fp = Fp::new(5);
        let m = MatrixFp::from_rows(&[vec![1, 2], vec![2, 4]], fp);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(r, MatrixFp::from_rows(&[vec![1, 2], vec![0, 0]], fp));
    }

    #[test]
    fn identity_and_zero_rref() {
        let fp = Fp::new(7);
        let (r, piv) = MatrixFp::identity(2, fp).rref();
        assert_eq!(r, MatrixFp::identity(2, fp));
        assert_eq!(piv, vec![0, 1]);
        let z = MatrixFp::zeros(3, 2, fp);
        let (r, piv) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());
    }

    #[test]
    fn kernel_of_sum_functional() {
        let fp = Fp::new(7);
        let k = MatrixFp::from_rows(&[vec![1, 1]], fp).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![6, 1]);
        assert_eq!(MatrixFp::identity(3, fp).kernel_basis().cols(), 0);
        assert_eq!(MatrixFp::zeros(1, 3, fp).kernel_basis().cols(), 3);
    }

    #[test]
    fn solve_examples() {
        let fp = Fp::new(5);
        let m = MatrixFp::from_rows(&[vec![2]], fp);
        assert_eq!(m.solve(&[3]).unwrap(), vec![4]);
        let z = MatrixFp::zeros(1, 1, fp);
        assert_eq!(z.solve(&[1]), Err(TateError::NoSolution));
        let id = MatrixFp::identity(3, fp);
        assert_eq!(id.solve(&[1, 2, 3]).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn row_space_tracks_rank() {
        let fp = Fp::new(32003);
        let mut rs = RowSpace::new(3, fp);
        assert!(rs.insert(&[1, 2, 3]));
        assert!(rs.insert(&[0, 1, 1]));
        assert!(!rs.insert(&[1, 3, 4]));
        assert_eq!(rs.dim(), 2);
        assert!(rs.contains(&[2, 5, 7]));
    }
}
