//! The free group of rank `n`, exponent `p` and class `c` (with `p > c`),
//! realized as group-like elements of the truncated free associative algebra
//! `F_p<X_1..X_n> / (words of length > c)`.
//!
//! A series is a dense coefficient vector over all words of length `0..=c`.
//! Words of length `k` start at `offset(k)` and are numbered in base `n`
//! with the first letter most significant.

mod hall;
mod ideal;
mod multilinear;
mod wrapped;

pub use hall::{lyndon_words, HallBasis, HallElement};
pub use ideal::{fixed_subspace, group_order_exponent, CentralIdeal};
pub use multilinear::{multilinearity_check, LcsGroup, MultilinearWitness};
pub use wrapped::{wrapped_commutator, wrapped_commutator_cases, WrappedCase};

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fp::{inv_mod, mul_mod, neg_mod};
use crate::number::is_prime;

/// Default cap on the number of non-constant word coordinates (`n = c = 4`).
pub const DEFAULT_MAX_COORDINATES: usize = 340;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series(Vec<u32>);

impl Series {
    pub fn coefficients(&self) -> &[u32] {
        &self.0
    }

    pub fn constant(&self) -> u32 {
        self.0[0]
    }
}

/// A series with constant term 1 whose logarithm is a Lie element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupLike(Series);

impl GroupLike {
    pub fn series(&self) -> &Series {
        &self.0
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.0 .0
    }
}

#[derive(Clone, Debug)]
pub struct FreeNilpotent {
    n: usize,
    c: usize,
    p: u32,
    offsets: Vec<usize>,
    hall: Arc<HallBasis>,
}

impl FreeNilpotent {
    pub fn new(n: usize, c: usize, p: u32) -> Result<Self> {
        Self::with_max_coordinates(n, c, p, DEFAULT_MAX_COORDINATES)
    }

    pub fn with_max_coordinates(n: usize, c: usize, p: u32, max: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || c == 0 {
            return Err(Error::Precondition("rank and class must be at least 1".into()));
        }
        if p as usize <= c {
            return Err(Error::Precondition(alloc::format!(
                "exp/log need p > c (p = {p}, c = {c})"
            )));
        }
        let mut offsets = vec![0usize; c + 2];
        let mut width = 1u128;
        let mut total = 0u128;
        for offset in offsets.iter_mut().take(c + 1) {
            *offset = total as usize;
            total += width;
            width *= n as u128;
        }
        if total - 1 > max as u128 {
            return Err(Error::BoundExceeded {
                order: total - 1,
                bound: max,
            });
        }
        offsets[c + 1] = total as usize;
        Ok(Self {
            n,
            c,
            p,
            offsets,
            hall: Arc::new(HallBasis::new(n, c, p)),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> usize {
        self.c
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn hall(&self) -> &HallBasis {
        &self.hall
    }

    /// Number of word coordinates including the constant.
    pub fn dimension(&self) -> usize {
        self.offsets[self.c + 1]
    }

    pub fn degree_width(&self, k: usize) -> usize {
        self.offsets[k + 1] - self.offsets[k]
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    /// `exponent` of `|F̄| = p^exponent`.
    pub fn order_exponent(&self) -> usize {
        self.hall.len()
    }

    pub fn degree<'a>(&self, s: &'a Series, k: usize) -> &'a [u32] {
        &s.0[self.offsets[k]..self.offsets[k + 1]]
    }

    fn degree_mut<'a>(&self, s: &'a mut Series, k: usize) -> &'a mut [u32] {
        &mut s.0[self.offsets[k]..self.offsets[k + 1]]
    }

    pub fn zero(&self) -> Series {
        Series(vec![0; self.dimension()])
    }

    pub fn one(&self) -> Series {
        let mut s = self.zero();
        s.0[0] = 1;
        s
    }

    /// The letter `X_i` (0-based).
    pub fn letter(&self, i: usize) -> Series {
        assert!(i < self.n, "letter index out of range");
        let mut s = self.zero();
        s.0[self.offsets[1] + i] = 1;
        s
    }

    /// Series with the given degree-`k` word vector and zeros elsewhere.
    pub fn homogeneous(&self, k: usize, words: &[u32]) -> Series {
        let mut s = self.zero();
        self.degree_mut(&mut s, k).copy_from_slice(words);
        s
    }

    /// Lie element `Σ coords_i · P_i` of degree `k` in Hall coordinates.
    pub fn lie_element(&self, k: usize, coords: &[u32]) -> Series {
        self.homogeneous(k, &self.hall.to_words(k, coords))
    }

    pub fn add(&self, a: &Series, b: &Series) -> Series {
        let p = self.p;
        Series(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &Series, b: &Series) -> Series {
        let p = self.p;
        Series(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + p - y) % p).collect())
    }

    pub fn scale(&self, a: &Series, s: u32) -> Series {
        let p = self.p;
        Series(a.0.iter().map(|&x| mul_mod(x, s % p, p)).collect())
    }

    /// Truncated product.
    pub fn mul(&self, a: &Series, b: &Series) -> Series {
        let (n, c, p) = (self.n, self.c, self.p as u64);
        let mut acc = vec![0u64; self.dimension()];
        for da in 0..=c {
            let off_a = self.offsets[da];
            for (wa, &xa) in a.0[off_a..self.offsets[da + 1]].iter().enumerate() {
                if xa == 0 {
                    continue;
                }
                let xa = xa as u64;
                let mut nb = 1usize;
                for db in 0..=c - da {
                    let off_b = self.offsets[db];
                    let base = self.offsets[da + db] + wa * nb;
                    let src = &b.0[off_b..off_b + nb];
                    for (slot, &y) in acc[base..base + nb].iter_mut().zip(src) {
                        *slot += xa * y as u64;
                    }
                    nb *= n;
                }
            }
            // keep partial sums well below u64 overflow
            if da % 8 == 7 {
                acc.iter_mut().for_each(|v| *v %= p);
            }
        }
        Series(acc.into_iter().map(|v| (v % p) as u32).collect())
    }

    /// Truncated exponential of a series without constant term.
    pub fn exp(&self, l: &Series) -> Result<GroupLike> {
        if l.0[0] != 0 {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        let mut acc = self.one();
        let mut term = self.one();
        for k in 1..=self.c {
            term = self.scale(&self.mul(&term, l), inv_mod(k as u32, self.p));
            acc = self.add(&acc, &term);
        }
        Ok(GroupLike(acc))
    }

    /// Truncated logarithm.
    pub fn log(&self, g: &GroupLike) -> Series {
        let mut u = g.0.clone();
        u.0[0] = 0;
        let mut acc = self.zero();
        let mut power = self.one();
        for k in 1..=self.c {
            power = self.mul(&power, &u);
            let mut coef = inv_mod(k as u32, self.p);
            if k % 2 == 0 {
                coef = neg_mod(coef, self.p);
            }
            acc = self.add(&acc, &self.scale(&power, coef));
        }
        acc
    }

    /// Reinterprets a series as group-like after checking that its
    /// logarithm is a Lie element.
    pub fn group_like(&self, s: Series) -> Result<GroupLike> {
        if s.0[0] != 1 {
            return Err(Error::Precondition("constant term must be 1".into()));
        }
        let g = GroupLike(s);
        self.lie_coordinates(&self.log(&g))?;
        Ok(g)
    }

    /// Hall coordinates of every homogeneous component (index 0 unused).
    pub fn lie_coordinates(&self, l: &Series) -> Result<Vec<Vec<u32>>> {
        if l.0[0] != 0 {
            return Err(Error::NotLie { degree: 0 });
        }
        let mut out = vec![Vec::new()];
        for k in 1..=self.c {
            out.push(self.hall.coordinates(k, self.degree(l, k))?);
        }
        Ok(out)
    }

    pub fn identity(&self) -> GroupLike {
        GroupLike(self.one())
    }

    /// `x_i = exp(X_i)` (0-based).
    pub fn generator(&self, i: usize) -> GroupLike {
        self.exp(&self.letter(i)).expect("letters have no constant term")
    }

    /// Product of `x_i^e` over a word of `(letter, exponent)` pairs.
    pub fn word(&self, letters: &[(usize, i64)]) -> GroupLike {
        let mut acc = self.identity();
        for &(i, e) in letters {
            let l = self.scale(&self.letter(i), crate::fp::reduce_i64(e, self.p));
            let x = self.exp(&l).expect("scaled letter");
            acc = self.multiply(&acc, &x);
        }
        acc
    }

    pub fn multiply(&self, a: &GroupLike, b: &GroupLike) -> GroupLike {
        GroupLike(self.mul(&a.0, &b.0))
    }

    /// Inverse via the geometric series `Σ (-u)^k` with `u = g - 1`.
    pub fn inverse(&self, g: &GroupLike) -> GroupLike {
        let mut u = g.0.clone();
        u.0[0] = 0;
        let neg_u = self.scale(&u, self.p - 1);
        let mut acc = self.one();
        let mut power = self.one();
        for _ in 1..=self.c {
            power = self.mul(&power, &neg_u);
            acc = self.add(&acc, &power);
        }
        GroupLike(acc)
    }

    /// `g^m` by square-and-multiply.
    pub fn power(&self, g: &GroupLike, m: i64) -> GroupLike {
        let mut base = if m < 0 { self.inverse(g) } else { g.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    pub fn is_identity(&self, g: &GroupLike) -> bool {
        g.0 .0[0] == 1 && g.0 .0[1..].iter().all(|&x| x == 0)
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: &GroupLike, b: &GroupLike) -> GroupLike {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        self.multiply(&ab, &self.inverse(&ba))
    }

    /// `[g_1, ..., g_k] = [g_1, [g_2, ..., g_k]]`.
    pub fn left_normed_commutator(&self, gs: &[GroupLike]) -> GroupLike {
        assert!(gs.len() >= 2, "a commutator needs at least two entries");
        let mut acc = gs[gs.len() - 1].clone();
        for g in gs[..gs.len() - 1].iter().rev() {
            acc = self.commutator(g, &acc);
        }
        acc
    }

    /// Whether `g` lies in the `k`-th lower central term.
    pub fn in_lcs_term(&self, g: &GroupLike, k: usize) -> bool {
        let l = self.log(g);
        (1..k.min(self.c + 1)).all(|d| self.degree(&l, d).iter().all(|&x| x == 0))
    }

    /// Hall coordinates of `g` in `F̄^{[k]} / F̄^{[k+1]}`.
    pub fn lcs_component(&self, g: &GroupLike, k: usize) -> Result<Vec<u32>> {
        assert!(k >= 1 && k <= self.c, "degree out of range");
        let l = self.log(g);
        if let Some(d) = (1..k).find(|&d| self.degree(&l, d).iter().any(|&x| x != 0)) {
            return Err(Error::NotInLcsTerm { degree: d });
        }
        self.hall.coordinates(k, self.degree(&l, k))
    }

    /// A product of random generator powers, `len` factors long.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> GroupLike {
        let letters: Vec<(usize, i64)> = (0..len)
            .map(|_| (rng.random_range(0..self.n), rng.random_range(1..self.p as i64)))
            .collect();
        self.word(&letters)
    }
}

/// The algebra endomorphism `X_i ↦ s_i · X_{σ(i)}`; `s_i = 0` kills a letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<(u32, usize)>,
}

impl Substitution {
    pub fn new(images: Vec<(u32, usize)>) -> Self {
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|i| (1, i)).collect())
    }

    /// `X_j ↦ ζ^{δ_ij} X_j`.
    pub fn scaling(n: usize, i: usize, zeta: u32) -> Self {
        Self::new((0..n).map(|j| (if j == i { zeta } else { 1 }, j)).collect())
    }

    pub fn permutation(images: &[usize]) -> Self {
        Self::new(images.iter().map(|&j| (1, j)).collect())
    }

    /// Kills every letter outside `keep`.
    pub fn restriction(n: usize, keep: &[usize]) -> Self {
        Self::new((0..n).map(|j| (u32::from(keep.contains(&j)), j)).collect())
    }

    pub fn images(&self) -> &[(u32, usize)] {
        &self.images
    }

    /// Target index and scalar of every word of degree `k`.
    fn degree_map(&self, f: &FreeNilpotent, k: usize) -> (Vec<usize>, Vec<u32>) {
        let mut target = vec![0usize];
        let mut scalar = vec![1u32];
        for _ in 0..k {
            let mut t2 = Vec::with_capacity(target.len() * f.n);
            let mut s2 = Vec::with_capacity(target.len() * f.n);
            for (&t, &s) in target.iter().zip(&scalar) {
                for &(a, j) in &self.images {
                    t2.push(t * f.n + j);
                    s2.push(mul_mod(s, a, f.p));
                }
            }
            target = t2;
            scalar = s2;
        }
        (target, scalar)
    }

    pub fn apply_homogeneous(&self, f: &FreeNilpotent, k: usize, words: &[u32]) -> Vec<u32> {
        let (target, scalar) = self.degree_map(f, k);
        let mut out = vec![0u32; words.len()];
        for (w, &x) in words.iter().enumerate() {
            if x != 0 && scalar[w] != 0 {
                let slot = &mut out[target[w]];
                *slot = (*slot + mul_mod(x, scalar[w], f.p)) % f.p;
            }
        }
        out
    }

    pub fn apply_series(&self, f: &FreeNilpotent, s: &Series) -> Series {
        assert_eq!(self.images.len(), f.n, "substitution rank mismatch");
        let mut out = f.zero();
        for k in 0..=f.c {
            let img = self.apply_homogeneous(f, k, f.degree(s, k));
            f.degree_mut(&mut out, k).copy_from_slice(&img);
        }
        out
    }

    pub fn apply(&self, f: &FreeNilpotent, g: &GroupLike) -> GroupLike {
        GroupLike(self.apply_series(f, &g.0))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self, p: u32) -> Self {
        Self::new(
            other
                .images
                .iter()
                .map(|&(a, j)| {
                    let (b, k) = self.images[j];
                    (mul_mod(a, b, p), k)
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exp_of_letter() {
        let f = FreeNilpotent::new(2, 3, 5).unwrap();
        let x = f.generator(0);
        let s = x.coefficients();
        // words 1, 11, 111
        assert_eq!(s[0], 1);
        assert_eq!(s[f.offset(1)], 1);
        assert_eq!(s[f.offset(2)], 3);
        assert_eq!(s[f.offset(3)], 1);
        assert!(f.is_identity(&f.exp(&f.zero()).unwrap()));
    }

    #[test]
    fn bch_half_bracket() {
        let f = FreeNilpotent::new(2, 2, 5).unwrap();
        let g = f.multiply(&f.generator(0), &f.generator(1));
        let coords = f.lie_coordinates(&f.log(&g)).unwrap();
        assert_eq!(coords[2], vec![3]);
    }

    #[test]
    fn exponent_and_inverse() {
        let f = FreeNilpotent::new(3, 3, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = f.random_word(&mut rng, 6);
            assert!(f.is_identity(&f.power(&g, 5)));
            assert!(f.is_identity(&f.multiply(&g, &f.inverse(&g))));
            assert_eq!(f.exp(&f.log(&g)).unwrap(), g);
        }
    }

    #[test]
    fn commutator_in_degree_two() {
        let f = FreeNilpotent::new(2, 3, 5).unwrap();
        let c = f.commutator(&f.generator(0), &f.generator(1));
        assert!(f.in_lcs_term(&c, 2));
        assert_eq!(f.lcs_component(&c, 2).unwrap(), vec![1]);
        assert!(matches!(
            f.lcs_component(&f.generator(0), 2),
            Err(Error::NotInLcsTerm { degree: 1 })
        ));
    }

    #[test]
    fn coordinate_cap() {
        assert!(FreeNilpotent::new(4, 4, 5).is_ok());
        assert!(matches!(FreeNilpotent::new(5, 4, 7), Err(Error::BoundExceeded { .. })));
        assert!(FreeNilpotent::new(2, 5, 5).is_err());
    }

    #[test]
    fn substitution_scales_generator() {
        let f = FreeNilpotent::new(3, 3, 5).unwrap();
        let q = Substitution::scaling(3, 0, 2);
        assert_eq!(q.apply(&f, &f.generator(0)), f.power(&f.generator(0), 2));
        assert_eq!(q.apply(&f, &f.generator(1)), f.generator(1));
        let id = Substitution::identity(3);
        let g = f.word(&[(0, 1), (2, -1), (1, 3)]);
        assert_eq!(id.apply(&f, &g), g);
    }
}
