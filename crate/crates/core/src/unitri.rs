//! Upper unitriangular matrices over `F_p`.
//!
//! Indices in the public API are 1-based to match the usual `E_ij`
//! notation. `UT(m, p)^{[k]}` is the set of matrices whose first `k - 1`
//! superdiagonals vanish.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fp::{inv_mod, mul_mod, neg_mod};
use crate::freenil::{FreeNilpotent, GroupLike, LcsGroup};
use crate::group::{check_bound, ClosureLaw, ConcreteGroup};
use crate::number::is_prime;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitriMatrix {
    m: usize,
    p: u32,
    /// Row-major `m × m`.
    entries: Vec<u32>,
}

/// Dense `m × m` product over `F_p`.
fn mat_mul(m: usize, p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; m * m];
    for i in 0..m {
        for k in 0..m {
            let x = a[i * m + k];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                let y = b[k * m + j];
                if y != 0 {
                    let slot = &mut out[i * m + j];
                    *slot = ((*slot as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
        }
    }
    out
}

impl UnitriMatrix {
    pub fn identity(m: usize, p: u32) -> Self {
        let mut entries = vec![0; m * m];
        for i in 0..m {
            entries[i * m + i] = 1;
        }
        Self { m, p, entries }
    }

    /// Checks shape and reduces entries.
    pub fn from_entries(m: usize, p: u32, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::Shape("entry count must be m²".into()));
        }
        let entries: Vec<u32> = entries.into_iter().map(|x| x % p).collect();
        for i in 0..m {
            for j in 0..=i {
                let expect = u32::from(i == j);
                if entries[i * m + j] != expect {
                    return Err(Error::Shape("matrix is not upper unitriangular".into()));
                }
            }
        }
        Ok(Self { m, p, entries })
    }

    /// `E_ij`: identity plus a unit entry at `(i, j)`, `1 ≤ i < j ≤ m`.
    pub fn e(m: usize, p: u32, i: usize, j: usize) -> Result<Self> {
        if !(1 <= i && i < j && j <= m) {
            return Err(Error::Precondition(alloc::format!(
                "E_{{{i},{j}}} needs 1 ≤ i < j ≤ {m}"
            )));
        }
        let mut x = Self::identity(m, p);
        x.entries[(i - 1) * m + (j - 1)] = 1 % p;
        Ok(x)
    }

    pub fn random<R: Rng + ?Sized>(m: usize, p: u32, rng: &mut R) -> Self {
        let mut x = Self::identity(m, p);
        for i in 0..m {
            for j in i + 1..m {
                x.entries[i * m + j] = rng.random_range(0..p);
            }
        }
        x
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.m + (j - 1)]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.m, self.p), (other.m, other.p), "matrix shape mismatch");
        Self {
            m: self.m,
            p: self.p,
            entries: mat_mul(self.m, self.p, &self.entries, &other.entries),
        }
    }

    /// Inverse by back substitution.
    pub fn inverse(&self) -> Self {
        let (m, p) = (self.m, self.p);
        let mut inv = Self::identity(m, p);
        for j in 0..m {
            for i in (0..j).rev() {
                // row i of self times column j of inv is zero
                let mut s = 0u64;
                for k in i + 1..=j {
                    s += self.entries[i * m + k] as u64 * inv.entries[k * m + j] as u64;
                }
                inv.entries[i * m + j] = neg_mod((s % p as u64) as u32, p);
            }
        }
        inv
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.m, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.m, self.p)
    }

    /// `x y x⁻¹ y⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    /// Whether the first `k - 1` superdiagonals vanish.
    pub fn in_lcs_term(&self, k: usize) -> bool {
        let m = self.m;
        (0..m).all(|i| (i + 1..m.min(i + k)).all(|j| self.entries[i * m + j] == 0))
    }

    /// `log(x) = Σ_{k≥1} (-1)^{k+1} (x-1)^k / k`; needs `p ≥ m`.
    pub fn log(&self) -> Vec<u32> {
        let (m, p) = (self.m, self.p);
        let mut u = self.entries.clone();
        for i in 0..m {
            u[i * m + i] = 0;
        }
        let mut acc = vec![0u32; m * m];
        let mut power = Self::identity(m, p).entries;
        for k in 1..m {
            power = mat_mul(m, p, &power, &u);
            let mut coef = inv_mod(k as u32, p);
            if k % 2 == 0 {
                coef = neg_mod(coef, p);
            }
            for (a, &x) in acc.iter_mut().zip(&power) {
                *a = (*a + mul_mod(x, coef, p)) % p;
            }
        }
        acc
    }

    /// Multi-line display with 1-based rows.
    pub fn format(&self) -> String {
        let mut s = String::new();
        for i in 0..self.m {
            for j in 0..self.m {
                let _ = write!(s, "{}{}", if j > 0 { " " } else { "" }, self.entries[i * self.m + j]);
            }
            s.push('\n');
        }
        s
    }
}

/// The group `UT(m, p)` as an [`LcsGroup`].
#[derive(Clone, Copy, Debug)]
pub struct UnitriGroup {
    pub m: usize,
    pub p: u32,
}

impl LcsGroup for UnitriGroup {
    type Elem = UnitriMatrix;

    fn one(&self) -> UnitriMatrix {
        UnitriMatrix::identity(self.m, self.p)
    }

    fn op(&self, a: &UnitriMatrix, b: &UnitriMatrix) -> UnitriMatrix {
        a.mul(b)
    }

    fn invert(&self, a: &UnitriMatrix) -> UnitriMatrix {
        a.inverse()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> UnitriMatrix {
        UnitriMatrix::random(self.m, self.p, rng)
    }

    fn in_lcs_term(&self, g: &UnitriMatrix, k: usize) -> bool {
        g.in_lcs_term(k)
    }
}

/// `{E_ij : j - i ≥ k}`, generators of `UT(m, p)^{[k]}`.
pub fn lcs_generators(m: usize, p: u32, k: usize) -> Vec<UnitriMatrix> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + k.max(1)..=m {
            out.push(UnitriMatrix::e(m, p, i, j).expect("valid indices"));
        }
    }
    out
}

/// `UT(m, p)` enumerated from the `E_{i,i+1}`, which are its generators.
pub fn unitriangular_group(m: usize, p: u32, bound: usize) -> Result<ConcreteGroup> {
    if m < 2 || !is_prime(p) {
        return Err(Error::Precondition(alloc::format!(
            "need m ≥ 2 and p prime (m = {m}, p = {p})"
        )));
    }
    let exponent = (m * (m - 1) / 2) as u32;
    check_bound((p as u128).saturating_pow(exponent), bound)?;
    let gens: Vec<UnitriMatrix> = (1..m).map(|i| UnitriMatrix::e(m, p, i, i + 1)).collect::<Result<_>>()?;
    let (law, idx) = ClosureLaw::generate(
        UnitriMatrix::identity(m, p),
        &gens,
        |a, b| a.mul(b),
        UnitriMatrix::inverse,
        UnitriMatrix::format,
        bound,
    )?;
    Ok(ConcreteGroup::new(Arc::new(law), idx, alloc::format!("UT({m}, {p})")))
}

/// `[x_1, ..., x_k] = [x_1, [x_2, ..., x_k]]`.
pub fn nested_commutator(xs: &[UnitriMatrix]) -> UnitriMatrix {
    let mut acc = xs[xs.len() - 1].clone();
    for x in xs[..xs.len() - 1].iter().rev() {
        acc = x.commutator(&acc);
    }
    acc
}

/// The commutator `[x_{π(1)}, ..., x_{π(n−1)}, x_{π(1)}]` whose first entry
/// is repeated at the end. `pi` holds 0-based images.
pub fn wrapped_commutator<T: Clone>(xs: &[T], pi: &[u32], comm: impl Fn(&T, &T) -> T) -> T {
    let mut entries: Vec<T> = pi.iter().map(|&i| xs[i as usize].clone()).collect();
    entries.push(xs[pi[0] as usize].clone());
    let mut acc = entries[entries.len() - 1].clone();
    for x in entries[..entries.len() - 1].iter().rev() {
        acc = comm(x, &acc);
    }
    acc
}

/// The two generator assignments in `UT(n+1, p)` used to separate wrapped
/// commutators: `[x_1 = E_12 E_{n,n+1}, x_i = E_{i,i+1}]` and
/// `[x_i = E_12 E_23 ⋯ E_{n−1,n} (i ≤ n−2), x_{n−1} = E_{n,n+1}]`.
pub fn witness_assignments(n: usize, p: u32) -> Result<[Vec<UnitriMatrix>; 2]> {
    if n < 3 || p as usize <= n || !is_prime(p) {
        return Err(Error::Precondition(alloc::format!(
            "need a prime p > n ≥ 3 (n = {n}, p = {p})"
        )));
    }
    let m = n + 1;
    let e = |i, j| UnitriMatrix::e(m, p, i, j).expect("valid indices");
    let mut first = vec![e(1, 2).mul(&e(n, n + 1))];
    first.extend((2..n).map(|i| e(i, i + 1)));
    let chain = (1..n).fold(UnitriMatrix::identity(m, p), |acc, i| acc.mul(&e(i, i + 1)));
    let mut second = vec![chain; n - 2];
    second.push(e(n, n + 1));
    Ok([first, second])
}

/// For each assignment, whether `[x_1,…,x_{n−1},x_1] = c_π^a` holds, where
/// `c_π` is the wrapped commutator permuted by `pi`.
pub fn wrapped_commutator_witness(n: usize, p: u32, pi: &[u32], a: u32) -> Result<[bool; 2]> {
    if pi.len() != n - 1 {
        return Err(Error::Precondition("π must permute 1..n−1".into()));
    }
    let assignments = witness_assignments(n, p)?;
    let id: Vec<u32> = (0..n as u32 - 1).collect();
    let check = |xs: &[UnitriMatrix]| {
        let lhs = wrapped_commutator(xs, &id, UnitriMatrix::commutator);
        let rhs = wrapped_commutator(xs, pi, UnitriMatrix::commutator).pow(a as i64);
        lhs == rhs
    };
    Ok([check(&assignments[0]), check(&assignments[1])])
}

/// The homomorphism `F̄(n, c, p) → UT(m, p)` sending `x_i` to `images[i]`,
/// evaluated through `X_i ↦ log(images[i])`. Words longer than `m − 1`
/// vanish, so it is well defined whenever `c ≥ m − 1`.
pub struct UnitriEvaluation {
    m: usize,
    p: u32,
    logs: Vec<Vec<u32>>,
}

impl UnitriEvaluation {
    pub fn new(images: &[UnitriMatrix]) -> Self {
        let m = images[0].m;
        let p = images[0].p;
        Self {
            m,
            p,
            logs: images.iter().map(UnitriMatrix::log).collect(),
        }
    }

    pub fn apply(&self, f: &FreeNilpotent, g: &GroupLike) -> UnitriMatrix {
        let (m, p, n) = (self.m, self.p, f.rank());
        let coeffs = g.coefficients();
        let mut total = UnitriMatrix::identity(m, p).entries;
        // products of logs for every word of the current degree
        let mut layer: Vec<Vec<u32>> = vec![UnitriMatrix::identity(m, p).entries];
        for k in 1..=f.class().min(m - 1) {
            let mut next = Vec::with_capacity(layer.len() * n);
            for prefix in &layer {
                for l in &self.logs {
                    next.push(mat_mul(m, p, prefix, l));
                }
            }
            let off = f.offset(k);
            for (w, prod) in next.iter().enumerate() {
                let c = coeffs[off + w];
                if c != 0 {
                    for (t, &x) in total.iter_mut().zip(prod) {
                        *t = (*t + mul_mod(x, c, p)) % p;
                    }
                }
            }
            layer = next;
        }
        UnitriMatrix { m, p, entries: total }
    }
}
