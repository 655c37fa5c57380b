//! Exhaustive solutions of `[x_1,…,x_{n−1},x_1] ≡ [x_{π(1)},…,x_{π(n−1)},x_{π(1)}]^a`
//! modulo `F̄^{[n+1]}`, evaluated in the free group of rank `n`, class `n`.

use alloc::vec::Vec;

use super::{FreeNilpotent, GroupLike};
use crate::error::{Error, Result};
use crate::group::all_permutations;

/// `[x_{π(1)},…,x_{π(n−1)},x_{π(1)}]` with 0-based `pi` over `0..n−1`.
pub fn wrapped_commutator(f: &FreeNilpotent, pi: &[u32]) -> GroupLike {
    let mut entries: Vec<GroupLike> = pi.iter().map(|&i| f.generator(i as usize)).collect();
    entries.push(f.generator(pi[0] as usize));
    f.left_normed_commutator(&entries)
}

/// One `(π, a)` pair and whether the congruence holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrappedCase {
    pub pi: Vec<u32>,
    pub a: u32,
    pub holds: bool,
}

/// Every `π ∈ S_{n−1}` and `a ∈ 0..p`, in lexicographic order of `π`.
pub fn wrapped_commutator_cases(n: usize, p: u32) -> Result<Vec<WrappedCase>> {
    if n < 3 {
        return Err(Error::Precondition("the wrapped commutator needs n ≥ 3".into()));
    }
    let f = FreeNilpotent::new(n, n, p)?;
    let id: Vec<u32> = (0..n as u32 - 1).collect();
    let lhs = wrapped_commutator(&f, &id);
    let mut out = Vec::new();
    for pi in all_permutations(n - 1) {
        let c = wrapped_commutator(&f, &pi);
        let mut power = f.identity();
        for a in 0..p {
            out.push(WrappedCase {
                pi: pi.clone(),
                a,
                holds: power == lhs,
            });
            power = f.multiply(&power, &c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_identity_and_one_for_n3() {
        let cases = wrapped_commutator_cases(3, 5).unwrap();
        assert_eq!(cases.len(), 10);
        let hits: Vec<_> = cases.iter().filter(|c| c.holds).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!((hits[0].pi.as_slice(), hits[0].a), (&[0u32, 1][..], 1));
    }

    #[test]
    fn swapped_entries_lie_in_top_term() {
        let f = FreeNilpotent::new(3, 3, 5).unwrap();
        let c = wrapped_commutator(&f, &[1, 0]);
        assert!(f.in_lcs_term(&c, 3));
        assert!(!f.is_identity(&c));
    }
}
