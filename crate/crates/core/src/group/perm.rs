//! Permutations on `0..degree`, composed as functions: `(a * b)(x) = a(b(x))`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u32).collect())
    }

    /// Builds a permutation from its image list; `None` if not a bijection.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let mut seen = alloc::vec![false; images.len()];
        for &x in &images {
            let slot = seen.get_mut(x as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Self(images))
    }

    /// Builds from disjoint cycles over 0-based points. Returns `None` when
    /// a point occurs twice or exceeds the degree.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Option<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = alloc::vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let slot = used.get_mut(x as usize)?;
                if *slot {
                    return None;
                }
                *slot = true;
                images[x as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Some(Self(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Disjoint cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`.
    pub fn cycle_string(&self) -> String {
        let mut seen = alloc::vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{}", x + 1);
                x = self.0[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// All permutations of `0..k` as image lists, in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Vec<u32>> {
    let mut current: Vec<u32> = (0..k as u32).collect();
    let mut out = alloc::vec![current.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..k)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn compose_is_function_composition() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let ab = a.compose(&b);
        // b sends 1 -> 2, a fixes 2
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.apply(2), 0);
        assert_eq!(ab.cycle_string(), "(1 2 3)");
        assert!(ab.compose(&ab.inverse()).is_identity());
    }

    #[test]
    fn overlapping_cycles_rejected() {
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_none());
        assert!(Permutation::from_images(vec![0, 0]).is_none());
    }

    #[test]
    fn permutations_enumerated() {
        assert_eq!(all_permutations(0), vec![Vec::<u32>::new()]);
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(3)[1], vec![0, 2, 1]);
        let mut all = all_permutations(4);
        all.dedup();
        assert_eq!(all.len(), 24);
    }
}
