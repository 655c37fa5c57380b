//! `H = P ⋊ Q` where `P = F̄(n, n, p) / I`, `I` is spanned by the wrapped
//! commutators `[x_{hg_1},…,x_{hg_{n−1}},x_{hg_1}]` (`h ∈ G`), and
//! `Q ≅ C_{p−1}ⁿ` scales the letters by powers of a primitive root.
//!
//! Letter `x_i` corresponds to the `i`-th element of the enumeration of `G`
//! (so `x_1` is the identity). `α_h` permutes letters by left translation.

use alloc::boxed::Box;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{holomorph_power, Check};
use crate::error::{Error, Result};
use crate::fp::{FpMatrix, Residue};
use crate::freenil::{fixed_subspace, group_order_exponent, CentralIdeal, FreeNilpotent, GroupLike, Substitution};
use crate::group::{extend_homomorphism, ClosureLaw, ConcreteGroup, Elem, DEFAULT_ENUMERATION_BOUND};
use crate::number::{factorize, is_prime, next_prime, primitive_root};

/// An element `(u, s)` of `H`: `u` a reduced representative in `P`,
/// `s ∈ Z_{p−1}ⁿ` the exponents of `q_1..q_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HElement {
    pub u: GroupLike,
    pub s: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct CornulierGroup {
    /// The input group (tabulated); its enumeration indexes the letters.
    pub g: ConcreteGroup,
    pub n: usize,
    pub p: u32,
    /// Primitive root of `F_p`.
    pub zeta: u32,
    pub f: FreeNilpotent,
    pub ideal: CentralIdeal,
    /// The wrapped commutators spanning the ideal, one per `h`.
    pub spanning: Vec<GroupLike>,
}

/// What the construction returns for each input order.
#[derive(Clone, Debug)]
pub enum CornulierOutcome {
    /// `|G| = 1`: the trivial group already has trivial Out.
    Trivial(ConcreteGroup),
    /// `|G| = 2`: `C_3` has `Out ≅ C_2`.
    CyclicThree(ConcreteGroup),
    Constructed(Box<CornulierGroup>),
}

/// Letter indices of the wrapped commutator for `h`:
/// `(h·g_1, …, h·g_{n−1}, h·g_1)`.
pub fn spanning_letters(g: &ConcreteGroup, h: Elem) -> Vec<usize> {
    let n = g.order();
    let mut letters: Vec<usize> = (0..n - 1).map(|j| g.mul(h, j as Elem) as usize).collect();
    letters.push(letters[0]);
    letters
}

/// The ideal in `F̄(n, n, p)` and its spanning commutators.
pub fn cornulier_ideal(g: &ConcreteGroup, f: &FreeNilpotent) -> Result<(CentralIdeal, Vec<GroupLike>)> {
    let n = g.order();
    if n < 3 {
        return Err(Error::Precondition("the construction needs |G| ≥ 3".into()));
    }
    if f.rank() != n || f.class() != n {
        return Err(Error::Shape("free group must have rank and class |G|".into()));
    }
    let spanning: Vec<GroupLike> = g
        .elements()
        .map(|h| {
            let entries: Vec<GroupLike> = spanning_letters(g, h).into_iter().map(|i| f.generator(i)).collect();
            f.left_normed_commutator(&entries)
        })
        .collect();
    let ideal = CentralIdeal::from_elements(f, &spanning)?;
    Ok((ideal, spanning))
}

/// Builds `H` for `|G| ≥ 3`. `max_coordinates` caps the free group's
/// dimension (see [`FreeNilpotent::with_max_coordinates`]).
pub fn cornulier_construct(g: &ConcreteGroup, p: Option<u32>, max_coordinates: usize) -> Result<CornulierGroup> {
    let n = g.order();
    if n < 3 {
        return Err(Error::Precondition(format!("the construction needs |G| ≥ 3, got {n}")));
    }
    let p = p.unwrap_or_else(|| next_prime(n as u32));
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p as usize <= n {
        return Err(Error::Precondition(format!("need a prime p > |G| = {n}, got {p}")));
    }
    let g = g.tabulate();
    let f = FreeNilpotent::with_max_coordinates(n, n, p, max_coordinates)?;
    let (ideal, spanning) = cornulier_ideal(&g, &f)?;
    Ok(CornulierGroup {
        g,
        n,
        p,
        zeta: primitive_root(p)?.value(),
        f,
        ideal,
        spanning,
    })
}

/// Dispatches on `|G|`: the reductions for orders 1 and 2, the construction otherwise.
pub fn cornulier_or_reduction(g: &ConcreteGroup, p: Option<u32>, max_coordinates: usize) -> Result<CornulierOutcome> {
    match g.order() {
        1 => Ok(CornulierOutcome::Trivial(ConcreteGroup::trivial())),
        2 => Ok(CornulierOutcome::CyclicThree(ConcreteGroup::cyclic(3))),
        _ => Ok(CornulierOutcome::Constructed(Box::new(cornulier_construct(
            g,
            p,
            max_coordinates,
        )?))),
    }
}

impl CornulierGroup {
    /// `e` with `|F̄(n, n, p)| = p^e`.
    pub fn free_exponent(&self) -> u64 {
        group_order_exponent(self.n, self.n, 0)
    }

    /// `e` with `|P| = p^e`.
    pub fn p_exponent(&self) -> u64 {
        group_order_exponent(self.n, self.n, self.ideal.rank())
    }

    /// `|H|` as prime powers, ascending.
    pub fn order_factors(&self) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = factorize(self.p as u64 - 1)
            .into_iter()
            .map(|(r, e)| (r, e * self.n as u32))
            .collect();
        out.push((self.p as u64, self.p_exponent() as u32));
        out.sort_unstable();
        out
    }

    fn zeta_pow(&self, e: u32) -> u32 {
        Residue::new(self.zeta as u64, self.p).pow(e as u64).value()
    }

    /// `q^s`: letter `x_i` scaled by `ζ^{s_i}`.
    pub fn q_substitution(&self, s: &[u32]) -> Substitution {
        Substitution::new(s.iter().enumerate().map(|(i, &e)| (self.zeta_pow(e), i)).collect())
    }

    /// `α_h` on letters: `x_i ↦ x_{h·g_i}`.
    pub fn alpha_substitution(&self, h: Elem) -> Substitution {
        let images: Vec<usize> = self.g.elements().map(|i| self.g.mul(h, i) as usize).collect();
        Substitution::permutation(&images)
    }

    fn reduce(&self, u: &GroupLike) -> GroupLike {
        self.ideal
            .reduce_unchecked(&self.f, u)
            .expect("ideal belongs to this group")
    }

    pub fn identity(&self) -> HElement {
        HElement {
            u: self.f.identity(),
            s: vec![0; self.n],
        }
    }

    pub fn x(&self, i: usize) -> HElement {
        HElement {
            u: self.f.generator(i),
            s: vec![0; self.n],
        }
    }

    pub fn q(&self, i: usize) -> HElement {
        let mut s = vec![0; self.n];
        s[i] = 1;
        HElement {
            u: self.f.identity(),
            s,
        }
    }

    /// `x_1..x_n` then `q_1..q_n`.
    pub fn generators(&self) -> Vec<HElement> {
        (0..self.n)
            .map(|i| self.x(i))
            .chain((0..self.n).map(|i| self.q(i)))
            .collect()
    }

    /// `(u, s)(v, t) = (u·q^s(v), s + t)`.
    pub fn multiply(&self, a: &HElement, b: &HElement) -> HElement {
        let v = self.q_substitution(&a.s).apply(&self.f, &b.u);
        let m = self.p - 1;
        HElement {
            u: self.reduce(&self.f.multiply(&a.u, &v)),
            s: a.s.iter().zip(&b.s).map(|(x, y)| (x + y) % m).collect(),
        }
    }

    /// `(q^{−s}(u⁻¹), −s)`.
    pub fn inverse(&self, a: &HElement) -> HElement {
        let m = self.p - 1;
        let neg: Vec<u32> = a.s.iter().map(|&x| (m - x) % m).collect();
        let u = self.q_substitution(&neg).apply(&self.f, &self.f.inverse(&a.u));
        HElement {
            u: self.reduce(&u),
            s: neg,
        }
    }

    pub fn conjugate(&self, g: &HElement, x: &HElement) -> HElement {
        self.multiply(&self.multiply(g, x), &self.inverse(g))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> HElement {
        let len = 2 * self.n + 2;
        HElement {
            u: self.reduce(&self.f.random_word(rng, len)),
            s: (0..self.n).map(|_| rng.random_range(0..self.p - 1)).collect(),
        }
    }

    /// `β_h` on `Q`-exponents: `s′_{σ(i)} = s_i` with `σ` left translation by `h`.
    pub fn beta(&self, h: Elem, s: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for (i, &e) in s.iter().enumerate() {
            out[self.g.mul(h, i as Elem) as usize] = e;
        }
        out
    }

    /// `α_h` on `H`.
    pub fn alpha(&self, h: Elem, x: &HElement) -> HElement {
        HElement {
            u: self.reduce(&self.alpha_substitution(h).apply(&self.f, &x.u)),
            s: self.beta(h, &x.s),
        }
    }

    pub fn is_identity(&self, x: &HElement) -> bool {
        self.f.is_identity(&x.u) && x.s.iter().all(|&e| e == 0)
    }

    /// Checks that each `α_h` is an automorphism of `H`: it preserves the
    /// ideal, kills the spanning relations, is compatible with the `Q`
    /// action, and preserves products of generator pairs and of `samples`
    /// random pairs; also `α_{hh′} = α_h ∘ α_{h′}` on generators.
    pub fn check_alpha_automorphisms<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Check {
        let gens = self.generators();
        for h in self.g.elements() {
            let sigma = self.alpha_substitution(h);
            if !self.ideal.is_invariant(&self.f, &sigma) {
                return Check::new("α_h automorphisms", false, format!("α_{h} does not preserve the ideal"));
            }
            for (k, r) in self.spanning.iter().enumerate() {
                if !self.f.is_identity(&self.reduce(&sigma.apply(&self.f, r))) {
                    return Check::new(
                        "α_h automorphisms",
                        false,
                        format!("α_{h} of relation {k} is nontrivial"),
                    );
                }
            }
            let hom = |a: &HElement, b: &HElement| {
                self.alpha(h, &self.multiply(a, b)) == self.multiply(&self.alpha(h, a), &self.alpha(h, b))
            };
            for a in &gens {
                for b in &gens {
                    if !hom(a, b) {
                        return Check::new("α_h automorphisms", false, format!("α_{h} fails on a generator pair"));
                    }
                }
            }
            for j in 0..self.n {
                let qj = self.q(j);
                for i in 0..self.n {
                    let x = self.x(i);
                    let lhs = self.alpha(h, &self.conjugate(&qj, &x));
                    let rhs = self.conjugate(&self.alpha(h, &qj), &self.alpha(h, &x));
                    if lhs != rhs {
                        return Check::new(
                            "α_h automorphisms",
                            false,
                            format!("α_{h} incompatible with q_{} on x_{}", j + 1, i + 1),
                        );
                    }
                }
            }
            for _ in 0..samples {
                let (a, b) = (self.random(rng), self.random(rng));
                if !hom(&a, &b) {
                    return Check::new("α_h automorphisms", false, format!("α_{h} fails on a random pair"));
                }
            }
            for h2 in self.g.elements() {
                let hh = self.g.mul(h, h2);
                if gens
                    .iter()
                    .any(|x| self.alpha(hh, x) != self.alpha(h, &self.alpha(h2, x)))
                {
                    return Check::new("α_h automorphisms", false, format!("α_{hh} ≠ α_{h} ∘ α_{h2}"));
                }
            }
        }
        Check::new(
            "α_h automorphisms",
            true,
            format!("{} maps, {} random pairs each", self.n, samples),
        )
    }

    /// `α` is injective and meets `Inn(H)` trivially: for `h ≠ 1`, `β_h`
    /// moves some `Q`-coordinate, so `α_h` acts nontrivially on the
    /// abelian quotient `H/P ≅ Q`, where inner automorphisms act trivially.
    pub fn verify_alpha_outer(&self) -> Check {
        let gens = self.generators();
        for h in self.g.elements().skip(1) {
            let moved = (0..self.n).any(|i| self.g.mul(h, i as Elem) as usize != i);
            if !moved {
                return Check::new("α outer and injective", false, format!("β_{h} fixes every coordinate"));
            }
            if gens.iter().all(|x| self.alpha(h, x) == *x) {
                return Check::new("α outer and injective", false, format!("α_{h} is the identity"));
            }
        }
        Check::new(
            "α outer and injective",
            true,
            format!("{} nontrivial h act nontrivially on H/P", self.n - 1),
        )
    }

    /// Per degree `1..=n` (index 0 unused), whether the `q_j`-fixed Lie
    /// subspace of `P` equals the Lie span of `{x_i : i ≠ j}` (modulo the
    /// ideal in the top degree).
    pub fn centralizer_of_qj(&self, j: usize) -> Result<Vec<bool>> {
        let mut s = vec![0u32; self.n];
        s[j] = 1;
        let fixed = fixed_subspace(&self.f, &self.q_substitution(&s), &self.ideal)?;
        let span = self.lie_span_without(j)?;
        Ok((0..=self.n)
            .map(|k| k == 0 || fixed[k].same_row_space(&span[k]))
            .collect())
    }

    /// Hall-coordinate spans of the Lie subalgebra generated by the
    /// letters other than `j`, via `V_k = [X_S, V_{k−1}]`.
    fn lie_span_without(&self, j: usize) -> Result<Vec<FpMatrix>> {
        let (n, p, c) = (self.n, self.p, self.n);
        let hall = self.f.hall();
        let mut out = vec![FpMatrix::new(p, 0)];
        let mut first = FpMatrix::new(p, n);
        for i in (0..n).filter(|&i| i != j) {
            let mut row = vec![0u32; n];
            row[i] = 1;
            first.push_row(row);
        }
        first.rref();
        out.push(first);
        for k in 2..=c {
            let prev = &out[k - 1];
            let width = n.pow(k as u32);
            let low = n.pow(k as u32 - 1);
            let mut m = FpMatrix::new(p, hall.count(k));
            for r in prev.rows() {
                let words = hall.to_words(k - 1, r);
                for i in (0..n).filter(|&i| i != j) {
                    // X_i·w − w·X_i
                    let mut v = vec![0u32; width];
                    for (w, &a) in words.iter().enumerate() {
                        if a == 0 {
                            continue;
                        }
                        let left = i * low + w;
                        let right = w * n + i;
                        v[left] = (v[left] + a) % p;
                        v[right] = (v[right] + p - a) % p;
                    }
                    m.push_row(hall.coordinates(k, &v)?);
                }
            }
            if k == c {
                m = m.stack(self.ideal.hall_basis());
            }
            m.rref();
            out.push(m);
        }
        Ok(out)
    }

    /// Compares `H/P′` with `(C_p ⋊ C_{p−1})ⁿ`: the quotient is enumerated
    /// from `x_iP′, q_iP′` with products computed in `H` through lifts, and
    /// `x_i ↦ x_iP′`, `y_i ↦ q_iP′` must extend to a bijective homomorphism.
    pub fn check_abelianized_quotient(&self, bound: usize) -> Result<Check> {
        let hol = holomorph_power(self.p, self.n, bound)?;
        let me = Arc::new(self.clone());
        let lift = {
            let me = me.clone();
            move |x: &(Vec<u32>, Vec<u32>)| {
                let letters: Vec<(usize, i64)> = x.0.iter().enumerate().map(|(i, &a)| (i, a as i64)).collect();
                HElement {
                    u: me.f.word(&letters),
                    s: x.1.clone(),
                }
            }
        };
        let project = {
            let me = me.clone();
            move |h: &HElement| (me.f.degree(h.u.series(), 1).to_vec(), h.s.clone())
        };
        let (mul_me, lift_m, proj_m) = (me.clone(), lift.clone(), project.clone());
        let mul =
            move |a: &(Vec<u32>, Vec<u32>), b: &(Vec<u32>, Vec<u32>)| proj_m(&mul_me.multiply(&lift_m(a), &lift_m(b)));
        let inv_me = me.clone();
        let inv = move |a: &(Vec<u32>, Vec<u32>)| project(&inv_me.inverse(&lift(a)));
        let zero = vec![0u32; self.n];
        let mut gens = Vec::new();
        for i in 0..self.n {
            let mut e = zero.clone();
            e[i] = 1;
            gens.push((e.clone(), zero.clone()));
            gens.push((zero.clone(), e));
        }
        let (law, idx) = ClosureLaw::generate((zero.clone(), zero), &gens, mul, inv, |x| format!("{:?}", x), bound)?;
        let quotient = ConcreteGroup::new(Arc::new(law), idx.clone(), "H/P′");
        let expected = (self.p as usize * (self.p as usize - 1)).pow(self.n as u32);
        if quotient.order() != expected {
            return Ok(Check::new(
                "H/P′ ≅ holomorph power",
                false,
                format!("|H/P′| = {}, expected {expected}", quotient.order()),
            ));
        }
        // holomorph generators are x_1, y_1, x_2, y_2, ...
        let images: Vec<Elem> = idx;
        let map = extend_homomorphism(&hol.group, &quotient, &images);
        let bijective = map.as_ref().is_some_and(|m| {
            let mut seen = vec![false; m.len()];
            m.iter().all(|&y| !core::mem::replace(&mut seen[y as usize], true))
        });
        Ok(Check::new(
            "H/P′ ≅ holomorph power",
            bijective,
            if bijective {
                format!("order {expected}, x_i ↦ x_iP′ and y_i ↦ q_iP′ is an isomorphism")
            } else if map.is_none() {
                "generator correspondence is not a homomorphism".into()
            } else {
                "generator correspondence is not injective".into()
            },
        ))
    }

    /// Ideal checks only: rank, `q_i`-invariance, `α_h`-invariance.
    pub fn ideal_checks(&self) -> Vec<Check> {
        let rank = self.ideal.rank();
        let mut out = vec![Check::new("ideal rank = |G|", rank == self.n, format!("rank {rank}"))];
        let bad_q = (0..self.n).find(|&i| {
            let mut s = vec![0u32; self.n];
            s[i] = 1;
            !self.ideal.is_invariant(&self.f, &self.q_substitution(&s))
        });
        out.push(Check::new(
            "q_i-invariance of the ideal",
            bad_q.is_none(),
            match bad_q {
                Some(i) => format!("q_{} moves the ideal", i + 1),
                None => format!("all {} q_i", self.n),
            },
        ));
        let bad_a = self
            .g
            .elements()
            .find(|&h| !self.ideal.is_invariant(&self.f, &self.alpha_substitution(h)));
        out.push(Check::new(
            "α_h-invariance of the ideal",
            bad_a.is_none(),
            match bad_a {
                Some(h) => format!("α_{h} moves the ideal"),
                None => format!("all {} α_h", self.n),
            },
        ));
        out
    }

    /// The full structural suite.
    pub fn structural_checks<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> Result<Vec<Check>> {
        let mut out = self.ideal_checks();
        out.push(self.check_alpha_automorphisms(rng, samples));
        out.push(self.verify_alpha_outer());
        let mut failures = Vec::new();
        for j in 0..self.n {
            let per_degree = self.centralizer_of_qj(j)?;
            for (k, ok) in per_degree.iter().enumerate().skip(1) {
                if !ok {
                    failures.push(format!("q_{} degree {k}", j + 1));
                }
            }
        }
        out.push(Check::new(
            "C_P(q_j) = ⟨x_i : i ≠ j⟩",
            failures.is_empty(),
            if failures.is_empty() {
                format!("equal in degrees 1..={} for all j", self.n)
            } else {
                failures.join(", ")
            },
        ));
        out.push(self.check_abelianized_quotient(DEFAULT_ENUMERATION_BOUND)?);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freenil::DEFAULT_MAX_COORDINATES;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c3() -> CornulierGroup {
        cornulier_construct(&ConcreteGroup::cyclic(3), None, DEFAULT_MAX_COORDINATES).unwrap()
    }

    #[test]
    fn sizes_for_order_three() {
        let h = c3();
        assert_eq!(h.p, 5);
        assert_eq!(h.free_exponent(), 14);
        assert_eq!(h.p_exponent(), 11);
        assert_eq!(h.order_factors(), vec![(2, 6), (5, 11)]);
    }

    #[test]
    fn spanning_letters_unrolled() {
        let g = ConcreteGroup::cyclic(3);
        let all: Vec<Vec<usize>> = g.elements().map(|h| spanning_letters(&g, h)).collect();
        assert_eq!(all, vec![vec![0, 1, 0], vec![1, 2, 1], vec![2, 0, 2]]);
    }

    #[test]
    fn h_inverse_and_conjugation() {
        let h = c3();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = h.random(&mut rng);
            assert!(h.is_identity(&h.multiply(&a, &h.inverse(&a))));
        }
        // q_i x_i q_i⁻¹ = x_i^ζ
        let c = h.conjugate(&h.q(0), &h.x(0));
        assert_eq!(c.u, h.f.power(&h.f.generator(0), h.zeta as i64));
    }

    #[test]
    fn small_orders_reduce() {
        assert!(matches!(
            cornulier_or_reduction(&ConcreteGroup::cyclic(2), None, 340).unwrap(),
            CornulierOutcome::CyclicThree(g) if g.order() == 3
        ));
        assert!(cornulier_construct(&ConcreteGroup::cyclic(2), None, 340).is_err());
    }
}
