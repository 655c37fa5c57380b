//! Exact arithmetic over prime fields `F_p` (p < 2^16).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// An element of `F_p` together with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u32,
    modulus: u32,
}

impl Residue {
    pub fn new(value: u64, modulus: u32) -> Self {
        assert!(modulus >= 2);
        Self {
            value: (value % modulus as u64) as u32,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u32) -> Self {
        Self::new(value.rem_euclid(modulus as i64) as u64, modulus)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Self {
        let m = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Self::new(acc, self.modulus)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| Self::new(inv_mod(self.value, self.modulus) as u64, self.modulus))
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl core::ops::Add for Residue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self::new(self.value as u64 + rhs.value as u64, self.modulus)
    }
}

impl core::ops::Mul for Residue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self::new(self.value as u64 * rhs.value as u64, self.modulus)
    }
}

impl core::ops::Neg for Residue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new((self.modulus - self.value) as u64, self.modulus)
    }
}

/// Inverse of a nonzero `a` modulo prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible modulo {p}");
    t.rem_euclid(p as i64) as u32
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn reduce_i64(a: i64, p: u32) -> u32 {
    a.rem_euclid(p as i64) as u32
}

/// Dense vector of reduced residues.
pub type FpVector = Vec<u32>;

/// `dst += scale * src` coordinatewise.
pub fn axpy(dst: &mut [u32], scale: u32, src: &[u32], p: u32) {
    if scale == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = ((*d as u64 + scale as u64 * s as u64) % p as u64) as u32;
        }
    }
}

/// Dense matrix over `F_p`, stored as rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    p: u32,
    cols: usize,
    rows: Vec<FpVector>,
}

impl FpMatrix {
    pub fn new(p: u32, cols: usize) -> Self {
        Self {
            p,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(p: u32, cols: usize, rows: Vec<FpVector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        assert!(rows.iter().flatten().all(|&x| x < p));
        Self { p, cols, rows }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Self { p, cols: n, rows }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[FpVector] {
        &self.rows
    }

    pub fn push_row(&mut self, row: FpVector) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    /// Brings the matrix to reduced row echelon form (leftmost pivots,
    /// pivots scaled to 1, zero rows dropped) and returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(pr) = (r..self.rows.len()).find(|&i| self.rows[i][c] != 0) else {
                continue;
            };
            self.rows.swap(r, pr);
            let inv = inv_mod(self.rows[r][c], p);
            for x in self.rows[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = neg_mod(row[c], p);
                    axpy(row, f, &pivot_row, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Reduces `v` modulo the row space, assuming `self` is in RREF.
    pub fn reduce(&self, v: &mut [u32]) {
        for row in &self.rows {
            let c = row.iter().position(|&x| x != 0).expect("rref has no zero rows");
            if v[c] != 0 {
                let f = neg_mod(v[c], self.p);
                axpy(v, f, row, self.p);
            }
        }
    }

    /// Membership in the row space, assuming `self` is in RREF.
    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Basis of `{λ : λ·A = 0}`, in RREF.
    pub fn left_kernel(&self) -> FpMatrix {
        let n = self.rows.len();
        let width = self.cols + n;
        let mut aug = FpMatrix::new(self.p, width);
        for (i, row) in self.rows.iter().enumerate() {
            let mut r = row.clone();
            r.resize(width, 0);
            r[self.cols + i] = 1;
            aug.push_row(r);
        }
        aug.rref();
        let mut ker = FpMatrix::new(self.p, n);
        for row in aug.rows {
            if row[..self.cols].iter().all(|&x| x == 0) {
                ker.push_row(row[self.cols..].to_vec());
            }
        }
        ker.rref();
        ker
    }

    /// Row space equality (both sides row-reduced first).
    pub fn same_row_space(&self, other: &FpMatrix) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.rref();
        b.rref();
        a.cols == b.cols && a.rows == b.rows
    }

    /// Sum of the two row spaces.
    pub fn stack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut m = self.clone();
        m.rows.extend(other.rows.iter().cloned());
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_ops() {
        let a = Residue::new(3, 7);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert_eq!((-a).value(), 4);
        assert_eq!(Residue::from_i64(-1, 5).value(), 4);
        assert_eq!(a.pow(6).value(), 1);
        assert!(Residue::new(0, 7).inv().is_none());
    }

    #[test]
    fn rref_is_canonical() {
        let mut a = FpMatrix::from_rows(5, 3, vec![vec![0, 2, 4], vec![1, 1, 1], vec![1, 3, 0]]);
        let piv = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(a.rows(), &[vec![1, 0, 4], vec![0, 1, 2]]);
        let b = FpMatrix::from_rows(5, 3, vec![vec![1, 2, 3], vec![2, 1, 0]]);
        assert!(a.same_row_space(&b));
        assert!(a.contains(&[2, 1, 0]));
        assert!(!a.contains(&[0, 0, 1]));
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = FpMatrix::from_rows(7, 2, vec![vec![1, 2], vec![2, 4], vec![3, 1], vec![4, 3]]);
        let k = a.left_kernel();
        assert_eq!(k.nrows(), 2);
        for lam in k.rows() {
            for c in 0..2 {
                let s: u64 = lam.iter().zip(a.rows()).map(|(&l, r)| l as u64 * r[c] as u64).sum();
                assert_eq!(s % 7, 0);
            }
        }
    }
}
