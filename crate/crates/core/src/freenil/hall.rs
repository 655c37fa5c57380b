//! Hall basis of the free Lie algebra built from Lyndon words.
//!
//! Each Lyndon word `w` of length ≥ 2 has a standard factorization `w = uv`
//! (`v` the longest proper Lyndon suffix) and bracket `P_w = [P_u, P_v]`.
//! The word expansion of `P_w` is `w` plus lexicographically larger words of
//! the same length, so Hall coordinates are read off by a triangular sweep.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::fp::{mul_mod, neg_mod, sub_mod};

/// One basis element.
#[derive(Clone, Debug)]
pub struct HallElement {
    /// Letters (0-based).
    pub word: Vec<u8>,
    /// Basis indices of the standard factors, `None` for letters.
    pub factors: Option<(usize, usize)>,
    /// Sparse expansion `(word index within degree, coefficient)`, sorted.
    pub expansion: Vec<(u32, u32)>,
}

impl HallElement {
    pub fn degree(&self) -> usize {
        self.word.len()
    }

    /// Number of occurrences of `letter`.
    pub fn multiplicity(&self, letter: usize) -> usize {
        self.word.iter().filter(|&&l| l as usize == letter).count()
    }
}

#[derive(Clone, Debug)]
pub struct HallBasis {
    n: usize,
    c: usize,
    p: u32,
    elements: Vec<HallElement>,
    /// `degree_ranges[k]` is the index range of degree-`k` elements.
    degree_ranges: Vec<core::ops::Range<usize>>,
    by_word: HashMap<Vec<u8>, usize>,
}

/// All Lyndon words of length `1..=max_len` over `n` letters, in
/// lexicographic order (Duval's generation algorithm).
pub fn lyndon_words(n: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if n == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let next = w[w.len() - m];
            w.push(next);
        }
        while let Some(&last) = w.last() {
            if last as usize == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

fn is_lyndon(w: &[u8]) -> bool {
    (1..w.len()).all(|i| w[i..] > *w && w[..] < w[i..])
}

pub(crate) fn word_index(word: &[u8], n: usize) -> u32 {
    word.iter().fold(0u64, |acc, &l| acc * n as u64 + l as u64) as u32
}

impl HallBasis {
    pub fn new(n: usize, c: usize, p: u32) -> Self {
        let mut words = lyndon_words(n, c);
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut by_word: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut elements: Vec<HallElement> = Vec::with_capacity(words.len());
        let mut degree_ranges = vec![0..0; c + 1];
        for w in words {
            let k = w.len();
            let idx = elements.len();
            if degree_ranges[k].is_empty() {
                degree_ranges[k] = idx..idx;
            }
            degree_ranges[k].end = idx + 1;
            let (factors, expansion) = if k == 1 {
                (None, vec![(w[0] as u32, 1)])
            } else {
                let split = (1..k)
                    .find(|&i| is_lyndon(&w[i..]))
                    .expect("a Lyndon word of length ≥ 2 has a proper Lyndon suffix");
                let u = by_word[&w[..split]];
                let v = by_word[&w[split..]];
                let eu = &elements[u];
                let ev = &elements[v];
                let exp = bracket_expansion(&eu.expansion, eu.degree(), &ev.expansion, ev.degree(), n, p);
                (Some((u, v)), exp)
            };
            by_word.insert(w.clone(), idx);
            elements.push(HallElement {
                word: w,
                factors,
                expansion,
            });
        }
        Self {
            n,
            c,
            p,
            elements,
            degree_ranges,
            by_word,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> usize {
        self.c
    }

    pub fn elements(&self) -> &[HallElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree_range(&self, k: usize) -> core::ops::Range<usize> {
        self.degree_ranges.get(k).cloned().unwrap_or(0..0)
    }

    /// Number of basis elements in degree `k`.
    pub fn count(&self, k: usize) -> usize {
        self.degree_range(k).len()
    }

    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        self.by_word.get(word).copied()
    }

    /// Bracket notation, e.g. `[x1,[x1,x2]]` (1-based letters).
    pub fn format(&self, idx: usize) -> String {
        let e = &self.elements[idx];
        match e.factors {
            None => format!("x{}", e.word[0] + 1),
            Some((u, v)) => format!("[{},{}]", self.format(u), self.format(v)),
        }
    }

    /// Dense degree-`k` word vector of a Hall-coordinate vector.
    pub fn to_words(&self, k: usize, coords: &[u32]) -> Vec<u32> {
        let range = self.degree_range(k);
        assert_eq!(coords.len(), range.len());
        let mut out = vec![0u32; self.n.pow(k as u32)];
        for (e, &a) in self.elements[range].iter().zip(coords) {
            if a == 0 {
                continue;
            }
            for &(w, coef) in &e.expansion {
                let slot = &mut out[w as usize];
                *slot = ((*slot as u64 + a as u64 * coef as u64) % self.p as u64) as u32;
            }
        }
        out
    }

    /// Hall coordinates of a homogeneous degree-`k` element given by its
    /// dense word vector; fails when the element is not a Lie element.
    pub fn coordinates(&self, k: usize, words: &[u32]) -> Result<Vec<u32>> {
        let p = self.p;
        let mut rest = words.to_vec();
        let range = self.degree_range(k);
        let mut coords = Vec::with_capacity(range.len());
        for e in &self.elements[range] {
            let lead = word_index(&e.word, self.n) as usize;
            let a = rest[lead];
            coords.push(a);
            if a != 0 {
                for &(w, coef) in &e.expansion {
                    let slot = &mut rest[w as usize];
                    *slot = sub_mod(*slot, mul_mod(a, coef, p), p);
                }
            }
        }
        if rest.iter().any(|&x| x != 0) {
            return Err(Error::NotLie { degree: k });
        }
        Ok(coords)
    }
}

/// Word expansion of `[A, B] = AB - BA` for homogeneous sparse `A`, `B`.
fn bracket_expansion(a: &[(u32, u32)], da: usize, b: &[(u32, u32)], db: usize, n: usize, p: u32) -> Vec<(u32, u32)> {
    let na = (n as u64).pow(da as u32);
    let nb = (n as u64).pow(db as u32);
    let mut acc: HashMap<u32, u32> = HashMap::new();
    for &(wa, ca) in a {
        for &(wb, cb) in b {
            let c = mul_mod(ca, cb, p);
            let ab = (wa as u64 * nb + wb as u64) as u32;
            let ba = (wb as u64 * na + wa as u64) as u32;
            let e = acc.entry(ab).or_insert(0);
            *e = (*e + c) % p;
            let e = acc.entry(ba).or_insert(0);
            *e = (*e + neg_mod(c, p)) % p;
        }
    }
    let mut out: Vec<(u32, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::witt_dim;

    #[test]
    fn counts_match_witt() {
        for (n, c) in [(2, 2), (2, 3), (3, 3), (4, 4), (1, 3), (3, 5)] {
            let h = HallBasis::new(n, c, 7);
            for k in 1..=c {
                assert_eq!(h.count(k) as u64, witt_dim(n as u64, k as u32), "n={n} c={c} k={k}");
            }
        }
    }

    #[test]
    fn small_bases() {
        let h = HallBasis::new(2, 2, 5);
        assert_eq!(h.count(2), 1);
        assert_eq!(h.format(h.degree_range(2).start), "[x1,x2]");
        let h = HallBasis::new(1, 3, 5);
        assert_eq!((h.count(1), h.count(2), h.count(3)), (1, 0, 0));
        let h = HallBasis::new(2, 3, 5);
        let names: Vec<String> = h.degree_range(3).map(|i| h.format(i)).collect();
        assert_eq!(names, ["[x1,[x1,x2]]", "[[x1,x2],x2]"]);
    }

    #[test]
    fn leading_word_is_triangular() {
        let h = HallBasis::new(3, 4, 5);
        for e in h.elements() {
            let lead = word_index(&e.word, 3);
            assert_eq!(e.expansion.iter().find(|t| t.0 == lead).map(|t| t.1), Some(1));
            assert!(e.expansion.iter().all(|t| t.0 >= lead));
        }
    }

    #[test]
    fn non_lie_rejected() {
        let h = HallBasis::new(2, 2, 5);
        // x1 x2 alone is not a Lie element
        let mut v = vec![0; 4];
        v[1] = 1;
        assert!(matches!(h.coordinates(2, &v), Err(Error::NotLie { degree: 2 })));
    }
}
