//! Collected normal forms for class-2 groups given by generators `x_1..x_n`
//! with relations `x_i^p = c_i` (each `c_i` a product of basic commutators)
//! and all triple commutators trivial.
//!
//! An element is stored as `x_1^{a_1}···x_n^{a_n}·Π_{j<k}[x_j,x_k]^{b_jk}`
//! with exponents in `0..p`. The pair basis is ordered lexicographically and
//! `e_jk` stands for `[x_j, x_k]` with `j < k`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp::{add_mod, mul_mod, neg_mod, sub_mod, FpVector};
use crate::group::{check_bound, ConcreteGroup, Elem, GroupLaw};
use crate::number::is_prime;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class2Presentation {
    n: usize,
    p: u32,
    /// `c[i]` is the power word of `x_i`, over the pair basis.
    c: Vec<FpVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Class2Element {
    pub a: FpVector,
    pub b: FpVector,
}

pub fn num_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `[x_j, x_k]` (0-based, `j < k`) in the pair basis.
pub fn pair_index(n: usize, j: usize, k: usize) -> usize {
    debug_assert!(j < k && k < n);
    j * n - j * (j + 1) / 2 + (k - j - 1)
}

impl Class2Presentation {
    pub fn new(n: usize, p: u32, c: Vec<FpVector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("rank must be at least 1".into()));
        }
        if p == 2 || !is_prime(p) {
            return Err(Error::Precondition(format!("collection needs an odd prime, got {p}")));
        }
        if c.len() != n || c.iter().any(|v| v.len() != num_pairs(n)) {
            return Err(Error::Shape("power words must be n vectors over the pair basis".into()));
        }
        let c = c.into_iter().map(|v| v.into_iter().map(|x| x % p).collect()).collect();
        Ok(Self { n, p, c })
    }

    /// All power words trivial.
    pub fn free(n: usize, p: u32) -> Result<Self> {
        Self::new(n, p, vec![vec![0; num_pairs(n)]; n])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn power_words(&self) -> &[FpVector] {
        &self.c
    }

    pub fn pairs(&self) -> usize {
        num_pairs(self.n)
    }

    /// `n(n+1)/2`, the exponent of the group order.
    pub fn order_exponent(&self) -> usize {
        self.n + self.pairs()
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.order_exponent() as u32)
    }

    pub fn identity(&self) -> Class2Element {
        Class2Element {
            a: vec![0; self.n],
            b: vec![0; self.pairs()],
        }
    }

    pub fn generator(&self, i: usize) -> Class2Element {
        let mut x = self.identity();
        x.a[i] = 1;
        x
    }

    /// `[x_j, x_k]` for `j < k`.
    pub fn basic_commutator(&self, j: usize, k: usize) -> Class2Element {
        let mut x = self.identity();
        x.b[pair_index(self.n, j, k)] = 1;
        x
    }

    fn check(&self, x: &Class2Element) -> Result<()> {
        if x.a.len() != self.n || x.b.len() != self.pairs() {
            Err(Error::PresentationMismatch)
        } else {
            Ok(())
        }
    }

    /// Collected product.
    pub fn multiply(&self, x: &Class2Element, y: &Class2Element) -> Result<Class2Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    fn mul_unchecked(&self, x: &Class2Element, y: &Class2Element) -> Class2Element {
        let (n, p) = (self.n, self.p);
        let mut b: Vec<u32> = x.b.iter().zip(&y.b).map(|(&u, &v)| add_mod(u, v, p)).collect();
        // moving x_k^{a_k} to the right of x_j^{a'_j} (j < k) leaves [x_j, x_k]^{-a_k a'_j}
        for j in 0..n {
            if y.a[j] == 0 {
                continue;
            }
            for k in j + 1..n {
                if x.a[k] != 0 {
                    let idx = pair_index(n, j, k);
                    b[idx] = sub_mod(b[idx], mul_mod(x.a[k], y.a[j], p), p);
                }
            }
        }
        let mut a = Vec::with_capacity(n);
        for i in 0..n {
            let s = x.a[i] + y.a[i];
            if s >= p {
                a.push(s - p);
                for (bi, &ci) in b.iter_mut().zip(&self.c[i]) {
                    *bi = add_mod(*bi, ci, p);
                }
            } else {
                a.push(s);
            }
        }
        Class2Element { a, b }
    }

    pub fn inverse(&self, x: &Class2Element) -> Result<Class2Element> {
        self.check(x)?;
        Ok(self.inv_unchecked(x))
    }

    fn inv_unchecked(&self, x: &Class2Element) -> Class2Element {
        let p = self.p;
        let head = Class2Element {
            a: x.a.iter().map(|&v| neg_mod(v, p)).collect(),
            b: vec![0; self.pairs()],
        };
        // x · head is central, so cancelling its b-part gives the inverse
        let t = self.mul_unchecked(x, &head);
        debug_assert!(t.a.iter().all(|&v| v == 0));
        Class2Element {
            a: head.a,
            b: t.b.iter().map(|&v| neg_mod(v, p)).collect(),
        }
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`, which only depends on the generator exponents.
    pub fn commutator(&self, x: &Class2Element, y: &Class2Element) -> Result<Class2Element> {
        self.check(x)?;
        self.check(y)?;
        let (n, p) = (self.n, self.p);
        let mut out = self.identity();
        for j in 0..n {
            for k in j + 1..n {
                let v = sub_mod(mul_mod(x.a[j], y.a[k], p), mul_mod(x.a[k], y.a[j], p), p);
                out.b[pair_index(n, j, k)] = v;
            }
        }
        Ok(out)
    }

    /// `x^m` by square-and-multiply.
    pub fn power(&self, x: &Class2Element, m: i64) -> Result<Class2Element> {
        self.check(x)?;
        let base = if m < 0 { self.inv_unchecked(x) } else { x.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = self.identity();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(&acc, &b);
            }
            b = self.mul_unchecked(&b, &b);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_identity(&self, x: &Class2Element) -> bool {
        x.a.iter().chain(&x.b).all(|&v| v == 0)
    }

    /// Element order by repeated multiplication.
    pub fn element_order(&self, x: &Class2Element) -> u64 {
        let mut y = x.clone();
        let mut k = 1;
        while !self.is_identity(&y) {
            y = self.mul_unchecked(&y, x);
            k += 1;
        }
        k
    }

    /// The power word `c_i` evaluated at elements `ys` in place of the generators.
    fn power_word_at(&self, i: usize, ys: &[Class2Element]) -> Class2Element {
        let mut acc = self.identity();
        for j in 0..self.n {
            for k in j + 1..self.n {
                let e = self.c[i][pair_index(self.n, j, k)];
                if e != 0 {
                    let c = self.commutator(&ys[j], &ys[k]).expect("shape checked");
                    acc = self.mul_unchecked(&acc, &self.power(&c, e as i64).expect("shape checked"));
                }
            }
        }
        acc
    }

    /// Whether `ys` (one element per generator) satisfy the power relations.
    /// The triple-commutator relations hold automatically inside the group.
    pub fn relations_hold(&self, ys: &[Class2Element]) -> bool {
        ys.len() == self.n
            && ys.iter().all(|y| self.check(y).is_ok())
            && (0..self.n)
                .all(|i| self.power(&ys[i], self.p as i64).expect("shape checked") == self.power_word_at(i, ys))
    }

    /// Image of `x` under the endomorphism sending `x_i ↦ ys[i]`; only
    /// meaningful when [`relations_hold`](Self::relations_hold) is true.
    pub fn substitute(&self, ys: &[Class2Element], x: &Class2Element) -> Result<Class2Element> {
        self.check(x)?;
        let mut acc = self.identity();
        for (y, &e) in ys.iter().zip(&x.a) {
            if e != 0 {
                acc = self.mul_unchecked(&acc, &self.power(y, e as i64)?);
            }
        }
        for j in 0..self.n {
            for k in j + 1..self.n {
                let e = x.b[pair_index(self.n, j, k)];
                if e != 0 {
                    let c = self.commutator(&ys[j], &ys[k])?;
                    acc = self.mul_unchecked(&acc, &self.power(&c, e as i64)?);
                }
            }
        }
        Ok(acc)
    }

    pub fn encode(&self, x: &Class2Element) -> Elem {
        let p = self.p as u64;
        x.a.iter().chain(&x.b).fold(0u64, |acc, &v| acc * p + v as u64) as Elem
    }

    pub fn decode(&self, mut idx: Elem) -> Class2Element {
        let len = self.n + self.pairs();
        let mut digits = vec![0u32; len];
        for d in digits.iter_mut().rev() {
            *d = idx % self.p;
            idx /= self.p;
        }
        let b = digits.split_off(self.n);
        Class2Element { a: digits, b }
    }

    pub fn format(&self, x: &Class2Element) -> String {
        let mut parts = Vec::new();
        for (i, &e) in x.a.iter().enumerate() {
            if e != 0 {
                parts.push(format!("x{}^{e}", i + 1));
            }
        }
        for j in 0..self.n {
            for k in j + 1..self.n {
                let e = x.b[pair_index(self.n, j, k)];
                if e != 0 {
                    parts.push(format!("[x{},x{}]^{e}", j + 1, k + 1));
                }
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Enumerable realization with generators `x_1..x_n`.
    pub fn to_group(&self, bound: usize) -> Result<ConcreteGroup> {
        check_bound(self.order(), bound)?;
        let gens = (0..self.n).map(|i| self.encode(&self.generator(i))).collect();
        Ok(ConcreteGroup::new(
            Arc::new(Class2Law { pres: self.clone() }),
            gens,
            format!("class2(n={}, p={})", self.n, self.p),
        ))
    }
}

struct Class2Law {
    pres: Class2Presentation,
}

impl GroupLaw for Class2Law {
    fn order(&self) -> usize {
        self.pres.order() as usize
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let x = self.pres.decode(a);
        let y = self.pres.decode(b);
        self.pres.encode(&self.pres.mul_unchecked(&x, &y))
    }
    fn inv(&self, a: Elem) -> Elem {
        self.pres.encode(&self.pres.inv_unchecked(&self.pres.decode(a)))
    }
    fn label(&self, a: Elem) -> String {
        self.pres.format(&self.pres.decode(a))
    }
}

/// The group on `x_1..x_n` with `x_i^p = c_i` and class 2; order `p^{n(n+1)/2}`.
pub fn generator_relation_group(
    n: usize,
    p: u32,
    power_words: Vec<FpVector>,
    bound: usize,
) -> Result<(Class2Presentation, ConcreteGroup)> {
    let pres = Class2Presentation::new(n, p, power_words)?;
    let g = pres.to_group(bound)?;
    Ok((pres, g))
}

/// Isomorphism type of `⟨x, y | class 2, x^p = [x,y]^a, y^p = [x,y]^b⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum P3Type {
    Dihedral8,
    Quaternion8,
    /// Extraspecial of exponent `p` (odd `p`).
    ExtraspecialExponentP,
    /// `C_{p²} ⋊ C_p` (odd `p`).
    CyclicExtension,
}

impl P3Type {
    pub fn name(self) -> &'static str {
        match self {
            Self::Dihedral8 => "D8",
            Self::Quaternion8 => "Q8",
            Self::ExtraspecialExponentP => "extraspecial-exponent-p",
            Self::CyclicExtension => "C_{p^2}:C_p",
        }
    }
}

/// The order-`p³` group presented by `x^p = [x,y]^a`, `y^p = [x,y]^b` and
/// class 2, with designated generators `x, y`. For `p = 2` the group is found
/// inside `D8` or `Q8` as a generating pair satisfying the relations.
pub fn order_p3_group(p: u32, a: u32, b: u32) -> Result<(ConcreteGroup, P3Type)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        let (a, b) = (a % 2, b % 2);
        let (spec, ty) = if a * b % 2 == 0 {
            (crate::group::GroupSpec::Dihedral(8), P3Type::Dihedral8)
        } else {
            (crate::group::GroupSpec::Quaternion8, P3Type::Quaternion8)
        };
        let g = crate::group::realize(&spec)?;
        let pair = find_p3_generators(&g, 2, a, b)
            .ok_or_else(|| Error::Precondition("no generating pair satisfies the relations".into()))?;
        return Ok((g.with_generators(vec![pair.0, pair.1]), ty));
    }
    let pres = Class2Presentation::new(2, p, vec![vec![a % p], vec![b % p]])?;
    let ty = if a.is_multiple_of(p) && b.is_multiple_of(p) {
        P3Type::ExtraspecialExponentP
    } else {
        P3Type::CyclicExtension
    };
    Ok((
        pres.to_group(usize::MAX)?.with_name(format!("P3(p={p}, a={a}, b={b})")),
        ty,
    ))
}

/// A pair `(x, y)` generating `g` with class-2 relations, `x^p = [x,y]^a`
/// and `y^p = [x,y]^b`.
pub fn find_p3_generators(g: &ConcreteGroup, p: u32, a: u32, b: u32) -> Option<(Elem, Elem)> {
    for x in g.elements() {
        for y in g.elements() {
            let c = g.commutator(x, y);
            let ok = g.commutator(x, c) == 0
                && g.commutator(y, c) == 0
                && g.pow(x, p as i64) == g.pow(c, a as i64)
                && g.pow(y, p as i64) == g.pow(c, b as i64)
                && crate::group::subgroup_closure(g, &[x, y]).len() == g.order();
            if ok {
                return Some((x, y));
            }
        }
    }
    None
}

/// The class-2 group on generators `v_g` (one per element of `g`, indexed by
/// the enumeration of `g`) with `v_g^p = Π_i [v_g, v_{g·x_i}]^i`, where
/// `x_1..x_n` is the supplied generating set.
#[derive(Clone, Debug)]
pub struct CayleyPowerGroup {
    pub presentation: Class2Presentation,
    /// The generating set `x_1..x_n` of the indexing group.
    pub generating_set: Vec<Elem>,
}

pub fn cayley_power_group(g: &ConcreteGroup, p: u32, generating_set: &[Elem]) -> Result<CayleyPowerGroup> {
    let m = g.order();
    if !is_prime(p) || p as usize <= m {
        return Err(Error::Precondition(format!("need a prime p > |G| = {m}, got {p}")));
    }
    if generating_set.contains(&g.identity()) {
        return Err(Error::Precondition("generating set contains the identity".into()));
    }
    if crate::group::subgroup_closure(g, generating_set).len() != m {
        return Err(Error::Precondition("generating set does not generate".into()));
    }
    if generating_set.len() >= p as usize {
        return Err(Error::Precondition("more generators than p - 1".into()));
    }
    let mut c = vec![vec![0u32; num_pairs(m)]; m];
    for h in g.elements() {
        for (i, &x) in generating_set.iter().enumerate() {
            let k = g.mul(h, x);
            let weight = (i as u32 + 1) % p;
            let (lo, hi, w) = if h < k {
                (h, k, weight)
            } else {
                // [v_h, v_k] = [v_k, v_h]^{-1}
                (k, h, neg_mod(weight, p))
            };
            let idx = pair_index(m, lo as usize, hi as usize);
            let slot = &mut c[h as usize][idx];
            *slot = add_mod(*slot, w, p);
        }
    }
    Ok(CayleyPowerGroup {
        presentation: Class2Presentation::new(m, p, c)?,
        generating_set: generating_set.to_vec(),
    })
}

impl CayleyPowerGroup {
    /// Images of the generators under `v_k ↦ v_{h·k}`.
    pub fn translation_images(&self, g: &ConcreteGroup, h: Elem) -> Vec<Class2Element> {
        g.elements()
            .map(|k| self.presentation.generator(g.mul(h, k) as usize))
            .collect()
    }
}

/// Checks that sending the normal form `x_1^{a_1}···x_n^{a_n}·Π[x_j,x_k]^{b_jk}`
/// to the same word in `F̄(n, 2, p)` is a bijective homomorphism from the
/// free class-2 group. Exhaustive over all pairs; returns the first failure.
pub fn compare_with_free_nilpotent(n: usize, p: u32, bound: usize) -> Result<Option<String>> {
    let pres = Class2Presentation::free(n, p)?;
    let order = check_bound(pres.order(), bound)?;
    let f = crate::freenil::FreeNilpotent::new(n, 2, p)?;
    let gens: Vec<_> = (0..n).map(|i| f.generator(i)).collect();
    let mut comms = Vec::with_capacity(pres.pairs());
    for j in 0..n {
        for k in j + 1..n {
            comms.push(f.commutator(&gens[j], &gens[k]));
        }
    }
    let image = |x: &Class2Element| {
        let mut acc = f.identity();
        for (g, &e) in gens.iter().chain(&comms).zip(x.a.iter().chain(&x.b)) {
            acc = f.multiply(&acc, &f.power(g, e as i64));
        }
        acc
    };
    let images: Vec<_> = (0..order as Elem).map(|i| image(&pres.decode(i))).collect();
    let mut seen = hashbrown::HashMap::with_capacity(order);
    for (i, img) in images.iter().enumerate() {
        if let Some(j) = seen.insert(img, i) {
            return Ok(Some(format!(
                "{} and {} have the same image",
                pres.format(&pres.decode(j as Elem)),
                pres.format(&pres.decode(i as Elem))
            )));
        }
    }
    for a in 0..order as Elem {
        let x = pres.decode(a);
        for b in 0..order as Elem {
            let y = pres.decode(b);
            let xy = pres.encode(&pres.mul_unchecked(&x, &y));
            if images[xy as usize] != f.multiply(&images[a as usize], &images[b as usize]) {
                return Ok(Some(format!(
                    "product of {} and {} is not preserved",
                    pres.format(&x),
                    pres.format(&y)
                )));
            }
        }
    }
    Ok(None)
}
