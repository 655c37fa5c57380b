//! Randomized check that `(g_1, ..., g_k) ↦ [g_1, ..., g_k] G^{[k+1]}` is
//! multilinear in each slot modulo `G'`, for any group with a computable
//! lower central series.

use alloc::vec::Vec;

use rand::Rng;

use super::{FreeNilpotent, GroupLike};

/// A group whose lower central terms can be tested for membership.
pub trait LcsGroup {
    type Elem: Clone + core::fmt::Debug;

    fn one(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Whether `g ∈ G^{[k]}`.
    fn in_lcs_term(&self, g: &Self::Elem, k: usize) -> bool;

    fn comm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.op(a, b);
        let ba = self.op(b, a);
        self.op(&ab, &self.invert(&ba))
    }

    /// `[g_1, [g_2, ..., g_k]]`.
    fn nested_comm(&self, gs: &[Self::Elem]) -> Self::Elem {
        let mut acc = gs[gs.len() - 1].clone();
        for g in gs[..gs.len() - 1].iter().rev() {
            acc = self.comm(g, &acc);
        }
        acc
    }
}

/// A failing instance: replacing slot `position` of `entries` by
/// `entries[position]·h·h_prime` broke the congruence.
#[derive(Clone, Debug)]
pub struct MultilinearWitness<E> {
    pub entries: Vec<E>,
    pub position: usize,
    pub h: E,
    pub h_prime: E,
}

/// Tests `[g_1,…,g_i h h',…,g_k] ≡ [g_1,…,g_k][g_1,…,h,…,g_k]` modulo
/// `G^{[k+1]}` on `samples` random instances with `h' ∈ G'`.
pub fn multilinearity_check<G: LcsGroup, R: Rng + ?Sized>(
    group: &G,
    k: usize,
    samples: usize,
    rng: &mut R,
) -> Result<(), MultilinearWitness<G::Elem>> {
    assert!(k >= 2, "multilinearity concerns k ≥ 2");
    for _ in 0..samples {
        let entries: Vec<G::Elem> = (0..k).map(|_| group.sample(rng)).collect();
        let position = rng.random_range(0..k);
        let h = group.sample(rng);
        let h_prime = group.comm(&group.sample(rng), &group.sample(rng));
        if !congruence_holds(group, &entries, position, &h, &h_prime) {
            return Err(MultilinearWitness {
                entries,
                position,
                h,
                h_prime,
            });
        }
    }
    Ok(())
}

pub(crate) fn congruence_holds<G: LcsGroup>(
    group: &G,
    entries: &[G::Elem],
    position: usize,
    h: &G::Elem,
    h_prime: &G::Elem,
) -> bool {
    let k = entries.len();
    let mut modified = entries.to_vec();
    modified[position] = group.op(&group.op(&entries[position], h), h_prime);
    let mut with_h = entries.to_vec();
    with_h[position] = h.clone();
    let lhs = group.nested_comm(&modified);
    let rhs = group.op(&group.nested_comm(entries), &group.nested_comm(&with_h));
    group.in_lcs_term(&group.op(&lhs, &group.invert(&rhs)), k + 1)
}

impl LcsGroup for FreeNilpotent {
    type Elem = GroupLike;

    fn one(&self) -> GroupLike {
        self.identity()
    }

    fn op(&self, a: &GroupLike, b: &GroupLike) -> GroupLike {
        self.multiply(a, b)
    }

    fn invert(&self, a: &GroupLike) -> GroupLike {
        self.inverse(a)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupLike {
        self.random_word(rng, 2 * self.class() + 2)
    }

    fn in_lcs_term(&self, g: &GroupLike, k: usize) -> bool {
        FreeNilpotent::in_lcs_term(self, g, k)
    }
}
